"""The preLie algebra of polynomial time-dependent matrices,

    M ↶ N = ∫_0^t [N(u), M'(u)] du,

and the numerical Magnus integrator for X' = A(t) X, X(0) = 1 obtained by
evaluating the universal Magnus element under a -> ∫_0^t A.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np
import scipy.linalg

from .magnus import magnus_via_log
from .prelie import Element, PreLieCarrier, evaluate_tree


def _zeros(d: int) -> np.ndarray:
    z = np.empty((d, d), dtype=object)
    z.fill(Fraction(0))
    return z


class PolyMatrix:
    """d x d matrix of polynomials in t, stored as Σ_k C_k t^k with exact
    Fraction coefficient matrices C_k."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, coeffs: Sequence, dim: int | None = None):
        mats = [np.array(c, dtype=object) for c in coeffs]
        if dim is None:
            if not mats:
                raise ValueError("dimension required for the zero matrix")
            dim = mats[0].shape[0]
        cleaned = []
        for m in mats:
            if m.shape != (dim, dim):
                raise ValueError("coefficient matrices must be square and of equal size")
            cleaned.append(np.vectorize(Fraction, otypes=[object])(m))
        while cleaned and not any(cleaned[-1].flat):
            cleaned.pop()
        self.dim = dim
        self.coeffs = cleaned

    @classmethod
    def zero(cls, dim: int) -> PolyMatrix:
        return cls([], dim)

    @classmethod
    def constant(cls, m) -> PolyMatrix:
        return cls([m])

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence]) -> PolyMatrix:
        """From a d x d grid of polynomials, each a coefficient list [c0, c1, ...]
        (or anything accepted by :func:`parse_poly`)."""
        d = len(entries)
        polys = [[parse_poly(e) for e in row] for row in entries]
        if any(len(row) != d for row in polys):
            raise ValueError("matrix entries must form a square grid")
        deg = max((len(p) for row in polys for p in row), default=0)
        coeffs = []
        for k in range(deg):
            m = _zeros(d)
            for i in range(d):
                for j in range(d):
                    if k < len(polys[i][j]):
                        m[i, j] = polys[i][j][k]
            coeffs.append(m)
        return cls(coeffs, d)

    def _check(self, other: PolyMatrix):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(n):
            a = self.coeffs[k] if k < len(self.coeffs) else _zeros(self.dim)
            b = other.coeffs[k] if k < len(other.coeffs) else _zeros(self.dim)
            out.append(a + b)
        return PolyMatrix(out, self.dim)

    def __neg__(self):
        return PolyMatrix([-c for c in self.coeffs], self.dim)

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        return self + (-other)

    def __mul__(self, s) -> PolyMatrix:
        s = Fraction(s)
        return PolyMatrix([c * s for c in self.coeffs], self.dim)

    __rmul__ = __mul__

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return PolyMatrix.zero(self.dim)
        out = [_zeros(self.dim) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a.dot(b)
        return PolyMatrix(out, self.dim)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.dim == other.dim and len(self.coeffs) == len(other.coeffs) and all(
            (a == b).all() for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self) -> PolyMatrix:
        return PolyMatrix([c * k for k, c in enumerate(self.coeffs)][1:], self.dim)

    def integral(self) -> PolyMatrix:
        """∫_0^t."""
        return PolyMatrix([_zeros(self.dim)] + [c / (k + 1) for k, c in enumerate(self.coeffs)], self.dim)

    def commutator(self, other: PolyMatrix) -> PolyMatrix:
        return self @ other - other @ self

    def entry(self, i: int, j: int) -> list[Fraction]:
        return [c[i, j] for c in self.coeffs]

    def at(self, t) -> np.ndarray:
        """Float evaluation (Horner)."""
        out = np.zeros((self.dim, self.dim))
        tf = float(t)
        for c in reversed(self.coeffs):
            out = out * tf + c.astype(float)
        return out

    def at_exact(self, t) -> np.ndarray:
        t = Fraction(t)
        out = _zeros(self.dim)
        for c in reversed(self.coeffs):
            out = out * t + c
        return out

    def __repr__(self):
        rows = [[format_poly(self.entry(i, j)) for j in range(self.dim)] for i in range(self.dim)]
        return f"PolyMatrix({rows})"


_TERM_RE = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?(?:\.\d+)?)?\s*\*?\s*(t(?:\s*\^\s*(\d+))?)?\s*")


def parse_poly(p) -> list[Fraction]:
    """Polynomial in t as a coefficient list.

    Accepts a list of rationals/strings ``[c0, c1, ...]``, a number, or text
    such as ``"1/2 + 3 t - t^2"``.
    """
    if isinstance(p, (list, tuple)):
        return [Fraction(c) for c in p]
    if isinstance(p, (int, Fraction)):
        return [Fraction(p)]
    if isinstance(p, float):
        return [Fraction(p).limit_denominator(10**12)]
    text = str(p).strip()
    if not text:
        raise ValueError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"bad polynomial {text!r} at offset {pos}")
        if not first and not m.group(1):
            raise ValueError(f"bad polynomial {text!r} at offset {pos}: missing operator")
        first = False
        sign = -1 if m.group(1) == "-" else 1
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        k = 0 if not m.group(3) else int(m.group(4) or 1)
        coeffs[k] = coeffs.get(k, 0) + sign * c
        pos = m.end()
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return out


def format_poly(cs: Sequence[Fraction]) -> str:
    parts = []
    for k, c in enumerate(cs):
        if not c:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        coef = str(abs(c))
        body = coef if not mono else (mono if abs(c) == 1 else f"{coef} {mono}")
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        text += f" {s} {b}"
    return text


def load_matrix(path) -> PolyMatrix:
    """Read ``{"dim": d, "entries": [[poly, ...], ...]}``."""
    data = json.loads(Path(path).read_text())
    return matrix_from_json(data)


def matrix_from_json(data: dict) -> PolyMatrix:
    m = PolyMatrix.from_entries(data["entries"])
    if "dim" in data and data["dim"] != m.dim:
        raise ValueError(f"declared dim {data['dim']} does not match entries ({m.dim})")
    return m


# preLie structure ---------------------------------------------------------

def prelie_matrix(M: PolyMatrix, N: PolyMatrix) -> PolyMatrix:
    """M ↶ N = ∫_0^t [N(u), M'(u)] du."""
    M._check(N)
    return N.commutator(M.derivative()).integral()


def matrix_carrier(dim: int) -> PreLieCarrier:
    return PreLieCarrier(curly=prelie_matrix, zero=PolyMatrix.zero(dim), name=f"polymatrix{dim}")


def evaluate_magnus_tree(t, A: PolyMatrix, cache: dict | None = None) -> PolyMatrix:
    """Image of a one-generator tree under the preLie morphism a -> ∫_0^t A."""
    Atilde = A.integral()
    return evaluate_tree(t, lambda _label: Atilde, matrix_carrier(A.dim), cache)


def omega_matrix(A: PolyMatrix, order: int, omega: Element | None = None) -> PolyMatrix:
    """Ω_N(t) as an exact polynomial matrix."""
    if omega is None:
        omega = magnus_via_log(order).omega
    Atilde = A.integral()
    alg = matrix_carrier(A.dim)
    cache: dict = {}
    out = PolyMatrix.zero(A.dim)
    for f, c in omega.sorted_terms():
        out = out + evaluate_tree(f.trees[0], lambda _label: Atilde, alg, cache) * c
    return out


def expm(X: np.ndarray) -> np.ndarray:
    out = scipy.linalg.expm(X)
    if not np.all(np.isfinite(out)):
        raise FloatingPointError("nonfinite matrix exponential")
    return out


def magnus_matrix(A: PolyMatrix, order: int, t_eval) -> np.ndarray:
    """exp(Ω_N(t_eval)) for the truncated universal Magnus element."""
    if order < 1:
        raise ValueError("truncation order must be >= 1")
    W = omega_matrix(A, order).at(t_eval)
    if not np.all(np.isfinite(W)):
        raise FloatingPointError("nonfinite Magnus exponent")
    return expm(W)


def rk_reference(A: PolyMatrix, t_eval, step) -> np.ndarray:
    """Classical RK4 for X' = A(t) X, X(0) = 1, on a uniform grid.

    The last step is shortened so the grid ends exactly at t_eval.
    """
    step = float(step)
    if step <= 0:
        raise ValueError("step must be positive")
    T = float(t_eval)
    X = np.eye(A.dim)
    if T == 0:
        return X
    n = max(1, math.ceil(abs(T) / step - 1e-12))
    h = T / n
    t = 0.0
    for _ in range(n):
        k1 = A.at(t) @ X
        k2 = A.at(t + h / 2) @ (X + h / 2 * k1)
        k3 = A.at(t + h / 2) @ (X + h / 2 * k2)
        k4 = A.at(t + h) @ (X + h * k3)
        X = X + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    if not np.all(np.isfinite(X)):
        raise FloatingPointError("nonfinite values in reference integration")
    return X


@dataclass
class OdeReport:
    order: int
    times: list[float]
    deviations: list[float]
    estimated_order: float | None
    step: float
    pairwise_orders: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "times": self.times,
            "deviations": self.deviations,
            "estimated_order": self.estimated_order,
            "pairwise_orders": self.pairwise_orders,
            "step": self.step,
        }

    def __str__(self):
        lines = [f"truncation order: {self.order}", f"reference step: {self.step:g}"]
        for t, d in zip(self.times, self.deviations):
            lines.append(f"t = {t:g}  max deviation = {d:.3e}")
        if self.estimated_order is not None:
            lines.append(f"estimated convergence order: {self.estimated_order:.3f}")
        return "\n".join(lines)


def error_report(A: PolyMatrix, order: int, times: Sequence, step) -> OdeReport:
    """Max-abs deviation of exp(Ω_N) from RK4 at each time, and the slope of
    log(deviation) against log(t).

    With a single time, t/2 and t/4 are added so the estimate always rests on
    at least two halvings.
    """
    ts = sorted({float(t) for t in times}, reverse=True)
    if not ts or any(t <= 0 for t in ts):
        raise ValueError("times must be positive")
    if len(ts) == 1:
        ts = [ts[0], ts[0] / 2, ts[0] / 4]
    W = omega_matrix(A, order)
    devs = []
    for t in ts:
        X = expm(W.at(t))
        devs.append(float(np.max(np.abs(X - rk_reference(A, t, step)))))
    pair = []
    for (t1, d1), (t2, d2) in zip(zip(ts, devs), zip(ts[1:], devs[1:])):
        if d1 > 0 and d2 > 0:
            pair.append(math.log(d1 / d2) / math.log(t1 / t2))
    est = None
    if len(ts) >= 2 and all(d > 0 for d in devs):
        x, y = np.log(ts), np.log(devs)
        est = float(np.polyfit(x, y, 1)[0])
    return OdeReport(order, ts, devs, est, float(step), pair)


AIRY = PolyMatrix.from_entries([[[0], [1]], [[0, 1], [0]]])
