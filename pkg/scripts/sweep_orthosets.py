"""Largest sets of mutually orthogonal QPP-interleaved ZC sequences for each N."""

import argparse
import time
from dataclasses import dataclass

from ppzc.orthoset import BudgetExceeded, build_ortho_graph, max_orthogonal_set
from ppzc.permpoly import format_poly


@dataclass
class OrthoConfig:
    n_min: int = 2
    n_max: int = 128
    u: int = 1
    mode: str = "exact"
    seconds: float | None = None
    show_sets: bool = False


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=OrthoConfig.n_min)
    ap.add_argument("--n-max", type=int, default=OrthoConfig.n_max)
    ap.add_argument("--u", type=int, default=OrthoConfig.u)
    ap.add_argument("--mode", choices=["exact", "greedy"], default=OrthoConfig.mode)
    ap.add_argument("--seconds", type=float, default=None, help="per-N search budget")
    ap.add_argument("--show-sets", action="store_true")
    cfg = OrthoConfig(**vars(ap.parse_args()))

    worst = 0.0
    for N in range(cfg.n_min, cfg.n_max + 1):
        t0 = time.perf_counter()
        g = build_ortho_graph(N, cfg.u)
        if not g.size:
            continue
        budget = {"seconds": cfg.seconds} if cfg.seconds else None
        try:
            res = max_orthogonal_set(g, cfg.mode, budget)
        except BudgetExceeded as exc:
            res = exc.partial
        worst = max(worst, res.size / N)
        flag = "" if res.complete else " (budget)"
        print(f"N={N:>3} vertices={g.size:>5} edges={len(g.edges()):>7} I={res.size:>3}"
              f" cert={res.certificate:.1e} {time.perf_counter() - t0:6.2f}s{flag}")
        if cfg.show_sets:
            print("      " + ", ".join(format_poly((0, f1, f2)) for f2, f1 in res.qpps))
    print(f"max I/N = {worst:.3f}")


if __name__ == "__main__":
    main()
