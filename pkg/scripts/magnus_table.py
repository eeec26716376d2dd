"""Print the Magnus element degree by degree, computed by both routes,
alongside the corolla and ladder coefficient checks."""
import argparse
import math
import time
from dataclasses import dataclass
from fractions import Fraction

from prelie_pbw.combinat import bernoulli
from prelie_pbw.magnus import magnus_fixed_point, magnus_via_log
from prelie_pbw.prelie import format_element
from prelie_pbw.trees import Tree


@dataclass
class Config:
    order: int = 6
    show_terms: bool = True


def corolla(n):
    return Tree("a", [Tree("a")] * (n - 1))


def ladder(n):
    t = Tree("a")
    for _ in range(n - 1):
        t = Tree("a", [t])
    return t


def main(cfg: Config) -> None:
    t0 = time.perf_counter()
    fp = magnus_fixed_point(cfg.order)
    t1 = time.perf_counter()
    lg = magnus_via_log(cfg.order)
    t2 = time.perf_counter()
    print(f"fixed point: {fp.iterations} iterations, {t1 - t0:.2f}s")
    print(f"log route:   {t2 - t1:.2f}s")
    print(f"routes agree: {fp.omega == lg.omega}")
    print()
    print(f"{'n':>2} {'terms':>6} {'corolla':>12} {'B_(n-1)/(n-1)!':>16} {'ladder':>8}")
    for n in range(1, cfg.order + 1):
        part = fp.omega.homogeneous(n)
        c = fp.omega.coeff(corolla(n))
        expect = bernoulli(n - 1) / math.factorial(n - 1)
        lad = fp.omega.coeff(ladder(n)) if n > 1 else Fraction(1)
        print(f"{n:>2} {len(part):>6} {str(c):>12} {str(expect):>16} {str(lad):>8}")
    if cfg.show_terms:
        print()
        for n in range(1, cfg.order + 1):
            print(f"deg {n}: {format_element(fp.omega.homogeneous(n))}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=Config.order)
    ap.add_argument("--quiet", action="store_true", help="skip the per-degree terms")
    args = ap.parse_args()
    main(Config(order=args.order, show_terms=not args.quiet))
