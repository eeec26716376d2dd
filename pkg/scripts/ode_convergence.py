"""Convergence study: deviation of exp(Omega_N(t)) from an RK4 reference
for the Airy-type system, as t shrinks, for several truncation orders."""
import argparse
from dataclasses import dataclass, field

import numpy as np

from prelie_pbw.odemagnus import AIRY, error_report


@dataclass
class Config:
    orders: list[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])
    times: list[float] = field(default_factory=lambda: [0.4, 0.2, 0.1, 0.05])
    step: float = 1e-3


def main(cfg: Config) -> None:
    header = "N  " + "".join(f"t={t:<10g}" for t in cfg.times) + "slope  halving exponents"
    print(header)
    for n in cfg.orders:
        rep = error_report(AIRY, n, cfg.times, cfg.step)
        devs = "".join(f"{d:<12.3e}" for d in rep.deviations)
        pair = " ".join(f"{p:.2f}" for p in rep.pairwise_orders)
        print(f"{n}  {devs}{rep.estimated_order:5.2f}  {pair}")
    print()
    print("pairwise exponent = log2(dev(t) / dev(t/2)); compare against N+1 and N+3")
    print(f"(numpy {np.__version__})")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", type=int, nargs="+", default=Config().orders)
    ap.add_argument("--times", type=float, nargs="+", default=Config().times)
    ap.add_argument("--step", type=float, default=Config.step)
    args = ap.parse_args()
    main(Config(orders=args.orders, times=args.times, step=args.step))
