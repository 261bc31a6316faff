"""
Command-line entry point.

Exit codes: 0 success, 1 usage, 2 precondition violation, 3 verification
failure, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .census import BudgetExceeded as CensusBudgetExceeded
from .census import cazac_permutation_census, table1_row
from .corr import DEFAULT_TOL, pacf
from .equiv import find_witness, max_unique_counts, reachable_by_basic_ops, uniqueness_fraction
from .numth import units
from .orthoset import BudgetExceeded as OrthoBudgetExceeded
from .orthoset import build_ortho_graph, crosscorr_values, max_orthogonal_set
from .parallel import default_workers, pmap
from .permpoly import (
    NotBijective,
    PermPoly,
    format_poly,
    invert_permutation,
    is_qpp_valid,
    permutation_of,
    polynomial_inverses,
    qpp_pairs,
)
from .theory import check_lemma1, check_lemma2, check_lemma3, check_lemma4, theorem1_tc
from .zcseq import BadRoot, PhaseSeq, interleave, zc_phases

log = logging.getLogger("ppzc")

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3, 4


class Precondition(Exception):
    pass


# -- argument helpers --------------------------------------------------------


def parse_n_spec(text: str) -> list[int]:
    """``"8"``, ``"3,5,7"``, ``"4..128"`` or mixtures like ``"3..5,9"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"bad N specification {text!r}")
    return sorted(set(out))


def int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _common(p: argparse.ArgumentParser, n_required=True):
    p.add_argument("--N", type=parse_n_spec, required=n_required, help="length: 8, 3,5,7 or 4..128")
    p.add_argument("--u", type=int, default=1, help="root index (default 1)")
    p.add_argument("--q", type=int, default=0, help="linear-FM offset q (default 0)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="normalised zero tolerance")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: cores)")
    p.add_argument("--budget", type=float, default=None, help="time budget in seconds")
    p.add_argument("--out", type=Path, default=None, help="output file or directory")


# -- records and files -------------------------------------------------------


def catalog_record(N, u, q, kind, coeffs, seq: PhaseSeq, tol) -> dict:
    _, rep = pacf(seq, tol)
    witness = find_witness(seq, N) if q == 0 else None
    return {
        "N": N,
        "u": u,
        "q": q,
        "interleaver": kind,
        "coefficients": list(coeffs) if coeffs is not None else None,
        "phases": list(seq.phases),
        "cazac": rep.is_cazac,
        "max_sidelobe": rep.max_sidelobe,
        "unique": None if q else witness is None,
        "ortho_set": None,
    }


def verify_record(rec: dict, tol: float = DEFAULT_TOL) -> bool:
    """Re-derive cazac and max_sidelobe from the stored phases."""
    N = rec["N"]
    if len(rec["phases"]) != N or any(not 0 <= p < 2 * N for p in rec["phases"]):
        return False
    _, rep = pacf(PhaseSeq(N, tuple(rec["phases"])), tol)
    return rep.is_cazac == rec["cazac"] and rep.max_sidelobe == rec["max_sidelobe"]


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def write_csv(path: Path, header, rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    data = buf.getvalue().encode()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    return data


def write_manifest(path: Path, command: str, params: dict, outputs: dict, started: str,
                   complete: bool = True):
    manifest = {
        "command": command,
        "parameters": params,
        "version": __version__,
        "started": started,
        "finished": _now(),
        "complete": complete,
        "outputs": {name: {"sha256": d} for name, d in outputs.items()},
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _fmt(x) -> str:
    return repr(float(x))


# -- generate -----------------------------------------------------------------


def _interleavers(args, N):
    """(kind, coeffs, permutation) triples requested on the command line."""
    if args.qpp_all:
        for f2, f1 in qpp_pairs(N):
            yield "qpp", (0, f1, f2), permutation_of(N, (0, f1, f2))
        return
    if args.qpp:
        f2, f1, *rest = args.qpp
        f0 = rest[0] if rest else 0
        if not is_qpp_valid(N, f2 % N, f1 % N) or f2 % N == 0:
            raise Precondition(f"{f2}k^2+{f1}k is not a valid QPP for N={N}")
        coeffs = (f0, f1, f2)
        perm = permutation_of(N, coeffs)
        if args.inverse:
            yield "inverse-of-qpp", coeffs, invert_permutation(perm)
        else:
            yield "qpp", coeffs, perm
        return
    if args.lpp:
        f1, *rest = args.lpp
        coeffs = (rest[0] if rest else 0, f1)
        yield "lpp", coeffs, permutation_of(N, coeffs)
        return
    if args.poly:
        coeffs = tuple(reversed(args.poly))
        perm = permutation_of(N, coeffs)
        kind = {3: "cpp", 2: "qpp", 1: "lpp"}.get(PermPoly(N, coeffs).degree, "explicit")
        yield kind, coeffs, perm
        return
    if args.perm:
        yield "explicit", None, args.perm
        return
    yield "none", None, None


def cmd_generate(args) -> int:
    out = open(args.out, "w") if args.out else sys.stdout
    status = EXIT_OK
    try:
        for N in args.N:
            x = zc_phases(N, args.u, args.q)
            count = 0
            for kind, coeffs, perm in _interleavers(args, N):
                seq = x if perm is None else interleave(x, perm)
                rec = catalog_record(N, args.u, args.q, kind, coeffs, seq, args.tol)
                out.write(json.dumps(rec) + "\n")
                count += 1
                # QPPs, their inverses and LPPs are guaranteed CAZAC
                if kind in ("none", "lpp", "qpp", "inverse-of-qpp") and not rec["cazac"]:
                    log.error("verification failed for N=%d %s %s", N, kind, coeffs)
                    status = EXIT_VERIFY
            if count == 0:
                log.warning("N=%d: no valid QPP", N)
    finally:
        if args.out:
            out.close()
    return status


# -- report -------------------------------------------------------------------


def _fig1_row(args):
    N, u = args
    s = uniqueness_fraction(N, u)
    if not s.qpp_total:
        return None
    return [N, _fmt(s.fraction), _fmt(s.fraction_dedup)]


def _fig2_row(args):
    N, u = args
    c = max_unique_counts(N, u)
    return [N, c.by_qpp, c.by_root, c.totient]


def _fig3_row(args):
    N, u, tol = args
    s = crosscorr_values(build_ortho_graph(N, u, tol))
    if s.minimum is None:
        return [N, "", ""]
    return [N, _fmt(s.minimum), ";".join(_fmt(v) for v in s.values)]


def cmd_report(args) -> int:
    started = _now()
    workers = args.workers or default_workers()
    which = args.which
    out_dir = args.out or Path(".")
    if out_dir.suffix == ".csv":
        csv_path = out_dir
    else:
        csv_path = out_dir / f"{which}.csv"
    complete = True
    if which == "fig1":
        header = ["N", "fraction", "fraction_dedup"]
        rows = [r for r in pmap(_fig1_row, [(N, args.u) for N in args.N], workers) if r]
    elif which == "fig2":
        header = ["N", "by_qpp", "by_root", "totient"]
        rows = pmap(_fig2_row, [(N, args.u) for N in args.N], workers)
    elif which == "fig3":
        header = ["N", "min", "values"]
        rows = pmap(_fig3_row, [(N, args.u, args.tol) for N in args.N], workers)
    else:
        header = ["N", "total_cpps", "unique_cpp_perms", "cpp_cazac_perms", "cazac_perms"]
        rows = []
        bad = [N for N in args.N if N < 2 or N > 64]
        if bad:
            raise Precondition(f"table1 supports 2 <= N <= 64, got {bad}")
        for N in args.N:
            r = table1_row(N, args.u, args.budget, workers, args.checkpoint, N <= 12, args.method)
            complete &= r.complete
            rows.append([N, r.total_cpps, r.unique_cpp_perms, r.cpp_cazac_perms,
                         "" if r.all_cazac_perms is None else r.all_cazac_perms])
    data = write_csv(csv_path, header, rows)
    params = {"which": which, "N": args.N, "u": args.u, "q": args.q, "tol": args.tol,
              "workers": workers, "budget": args.budget}
    write_manifest(csv_path.with_suffix(".manifest.json"), "report", params,
                   {csv_path.name: _digest(data)}, started, complete)
    print(csv_path)
    return EXIT_OK if complete else EXIT_BUDGET


# -- orthoset / equiv / invert / theory / census ------------------------------


def _orthoset_job(args):
    N, u, tol, mode, seconds = args
    g = build_ortho_graph(N, u, tol)
    budget = {"seconds": seconds} if seconds else None
    try:
        return max_orthogonal_set(g, mode, budget)
    except OrthoBudgetExceeded as exc:
        return exc.partial


def cmd_orthoset(args) -> int:
    started = _now()
    workers = args.workers or default_workers()
    mode = "greedy" if args.greedy else "exact"
    jobs = [(N, args.u, args.tol, mode, args.budget) for N in args.N]
    results = pmap(_orthoset_job, jobs, workers)
    status = EXIT_OK
    rows = []
    for res in results:
        qpps = " ".join(format_poly((0, f1, f2)) for f2, f1 in res.qpps)
        tag = "" if res.complete else " (incomplete)"
        print(f"N={res.N} I={res.size} certificate={res.certificate:.3e} mode={mode}{tag}")
        print(f"  {qpps}")
        if not res.complete:
            status = max(status, EXIT_BUDGET)
        if res.certificate > args.tol:
            status = EXIT_VERIFY
        rows.append([res.N, res.size, int(res.complete), f"{res.certificate:.3e}",
                     ";".join(f"{f2},{f1}" for f2, f1 in res.qpps)])
    if args.out:
        csv_path = args.out if args.out.suffix == ".csv" else args.out / "orthoset.csv"
        data = write_csv(csv_path, ["N", "I", "complete", "certificate", "qpps"], rows)
        params = {"N": args.N, "u": args.u, "tol": args.tol, "mode": mode,
                  "workers": workers, "budget": args.budget}
        write_manifest(csv_path.with_suffix(".manifest.json"), "orthoset", params,
                       {csv_path.name: _digest(data)}, started, status != EXIT_BUDGET)
    return status


def cmd_equiv(args) -> int:
    for N in args.N:
        pairs = [tuple(args.qpp[:2])] if args.qpp else qpp_pairs(N)
        for f2, f1 in pairs:
            if not is_qpp_valid(N, f2 % N, f1 % N) or f2 % N == 0:
                raise Precondition(f"{f2}k^2+{f1}k is not a valid QPP for N={N}")
            w = reachable_by_basic_ops(N, args.u, (f2 % N, f1 % N))
            name = format_poly((0, f1, f2))
            if w is None:
                print(f"N={N} {name}: unique")
            else:
                print(f"N={N} {name}: witness u2={w.u2} d={w.d} a={w.a} v={w.v} s={w.s}")
    return EXIT_OK


def cmd_invert(args) -> int:
    coeffs = tuple(reversed(args.poly))
    for N in args.N:
        p = PermPoly(N, coeffs)
        inv = polynomial_inverses(p, args.max_degree)
        print(f"N={N} inverses of {format_poly(p.coeffs)} up to degree {args.max_degree}: {len(inv)}")
        for q in inv:
            print(f"  {format_poly(q.coeffs)}")
    return EXIT_OK


def _theory_job(N):
    """Counterexamples found for one N across all lemma sweeps."""
    bad = []
    for f2, f1 in qpp_pairs(N):
        special = N % 4 == 2 and f2 % 2 == 1
        for d in range(1, N):
            try:
                theorem1_tc(N, 1, f2, f1, d)
            except AssertionError:
                bad.append(("theorem1", N, f2, f1, d))
            if special:
                if not check_lemma3(N, f2, f1, d):
                    bad.append(("lemma3", N, f2, f1, d))
                if d % 2 == 0 and not all(check_lemma1(N, f2, f1, d, a) for a in range(1, 7)):
                    bad.append(("lemma1", N, f2, f1, d))
            else:
                if not check_lemma2(N, f2, f1, d):
                    bad.append(("lemma2", N, f2, f1, d))
                if not all(check_lemma1(N, f2, f1, d, a) for a in range(1, 7)):
                    bad.append(("lemma1", N, f2, f1, d))
        for u in units(N):
            if not check_lemma4(N, u, f2):
                bad.append(("lemma4", N, u, f2))
    return bad


def cmd_theory(args) -> int:
    workers = args.workers or default_workers()
    results = pmap(_theory_job, args.N, workers)
    bad = [b for r in results for b in r]
    for b in bad:
        print("counterexample:", *b)
    print(f"theory sweep over N={args.N[0]}..{args.N[-1]}: {len(bad)} counterexamples")
    return EXIT_VERIFY if bad else EXIT_OK


def cmd_census(args) -> int:
    status = EXIT_OK
    for N in args.N:
        try:
            r = cazac_permutation_census(N, args.u, args.budget, args.workers or default_workers(),
                                         args.checkpoint, args.method)
            print(f"N={N} u={args.u} cazac_permutations={r.count}")
        except CensusBudgetExceeded as exc:
            r = exc.partial
            print(f"N={N} u={args.u} partial={r.count} units={r.units_done}/{r.units_total}")
            status = EXIT_BUDGET
    return status


# -- main -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ppzc", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit catalog records (JSON lines)")
    _common(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--qpp", type=int_list, help="F2,F1[,F0]")
    g.add_argument("--qpp-all", action="store_true", help="every valid QPP with f0=0")
    g.add_argument("--lpp", type=int_list, help="F1[,F0]")
    g.add_argument("--poly", type=int_list, help="coefficients, highest degree first")
    g.add_argument("--perm", type=int_list, help="explicit permutation table")
    p.add_argument("--inverse", action="store_true", help="interleave by the inverse of --qpp")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("report", help="figure/table data as CSV plus manifest")
    p.add_argument("which", choices=["fig1", "fig2", "fig3", "table1"])
    _common(p)
    p.add_argument("--checkpoint", type=Path, default=None, help="census checkpoint file (table1)")
    p.add_argument("--method", choices=["multiset", "bruteforce"], default="multiset")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("orthoset", help="largest orthogonal set of QPP interleaves")
    _common(p)
    m = p.add_mutually_exclusive_group()
    m.add_argument("--exact", action="store_true", default=True)
    m.add_argument("--greedy", action="store_true")
    p.set_defaults(func=cmd_orthoset)

    p = sub.add_parser("equiv", help="basic-operation witness or 'unique'")
    _common(p)
    p.add_argument("--qpp", type=int_list, help="F2,F1 (default: every QPP)")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("invert", help="polynomial inverses of a permutation polynomial")
    _common(p)
    p.add_argument("--poly", type=int_list, required=True, help="coefficients, highest degree first")
    p.add_argument("--max-degree", type=int, default=2, choices=[1, 2, 3, 4])
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("theory", help="lemma and CAZAC-shift congruence sweeps")
    _common(p, n_required=False)
    p.set_defaults(func=cmd_theory, N=list(range(2, 65)))

    p = sub.add_parser("census", help="count CAZAC-preserving permutations of Z_N")
    _common(p)
    p.add_argument("--checkpoint", type=Path, default=None)
    p.add_argument("--method", choices=["multiset", "bruteforce"], default="multiset")
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (BadRoot, NotBijective, Precondition) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
