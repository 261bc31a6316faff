"""Fraction of QPP interleaves not reachable from a plain ZC sequence by basic operations."""

import argparse
from dataclasses import dataclass

from ppzc.equiv import uniqueness_fraction


@dataclass
class UniquenessConfig:
    n_min: int = 2
    n_max: int = 128
    u: int = 1
    workers: int = 1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=UniquenessConfig.n_min)
    ap.add_argument("--n-max", type=int, default=UniquenessConfig.n_max)
    ap.add_argument("--u", type=int, default=UniquenessConfig.u)
    ap.add_argument("--workers", type=int, default=UniquenessConfig.workers)
    cfg = UniquenessConfig(**vars(ap.parse_args()))

    print("N,qpps,unique,fraction,distinct,distinct_unique")
    for N in range(cfg.n_min, cfg.n_max + 1):
        s = uniqueness_fraction(N, cfg.u, cfg.workers)
        if s.qpp_total:
            print(f"{N},{s.qpp_total},{s.unique_count},{float(s.fraction):.4f},"
                  f"{s.distinct_total},{s.distinct_unique}")


if __name__ == "__main__":
    main()
