"""Reproduce the permutation-polynomial census table and print it with timings."""

import argparse
import time
from dataclasses import dataclass

from ppzc.census import table1_row


@dataclass
class Table1Config:
    n_min: int = 3
    n_max: int = 12
    u: int = 1
    workers: int = 1
    method: str = "multiset"
    budget: float | None = None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=Table1Config.n_min)
    ap.add_argument("--n-max", type=int, default=Table1Config.n_max)
    ap.add_argument("--workers", type=int, default=Table1Config.workers)
    ap.add_argument("--method", choices=["multiset", "bruteforce"], default=Table1Config.method)
    ap.add_argument("--budget", type=float, default=None)
    cfg = Table1Config(**{k: v for k, v in vars(ap.parse_args()).items()})

    print(f"{'N':>3} {'#CPPs':>7} {'#perms':>7} {'#CAZAC':>7} {'#all CAZAC':>11} {'secs':>7}")
    for N in range(cfg.n_min, cfg.n_max + 1):
        t0 = time.perf_counter()
        r = table1_row(N, cfg.u, cfg.budget, cfg.workers, None, N <= 12, cfg.method)
        full = "-" if r.all_cazac_perms is None else r.all_cazac_perms
        print(f"{N:>3} {r.total_cpps:>7} {r.unique_cpp_perms:>7} {r.cpp_cazac_perms:>7} "
              f"{full:>11} {time.perf_counter() - t0:>7.2f}")


if __name__ == "__main__":
    main()
