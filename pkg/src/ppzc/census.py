"""
Exhaustive censuses: cubic permutation polynomials and all N! interleavers.

The N! column counts permutations sigma of Z_N for which zc(N, u)[sigma] is
CAZAC. Two methods are available:

``bruteforce``
    every permutation in lexicographic order, one PACF test each.
``multiset`` (default)
    the count only depends on the interleaved *sequence*, and repeated
    Zadoff-Chu values make many permutations give the same sequence. We
    enumerate distinct arrangements of the phase multiset and weight each
    CAZAC arrangement by prod(c_v!). Cyclic shifts preserve the CAZAC
    property, so position 0 is pinned to a value of multiplicity m and the
    arrangement count is scaled by N/m.

Both stream candidates in lexicographic rank order through fixed-size
work units, so runs can be split across workers and resumed from a
checkpoint file of ``N,u,range_start,range_end,count`` lines. ``count`` is
the weighted number of CAZAC permutations contributed by that rank range.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corr import DEFAULT_TOL, batch_max_sidelobe
from .numth import root_table
from .parallel import pimap
from .permpoly import dedup_permutations, enumerate_cpps
from .zcseq import zc_phases

UNIT_SIZE = 10**6
BATCH = 8192
MAX_FULL_N = 12


class BudgetExceeded(RuntimeError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


# -- multiset permutations -------------------------------------------------


def multiset_count(counts: dict) -> int:
    total = math.factorial(sum(counts.values()))
    for c in counts.values():
        total //= math.factorial(c)
    return total


def unrank_multiset(symbols, rank: int) -> list:
    """The arrangement of rank ``rank`` in lexicographic order of a multiset."""
    counts = Counter(symbols)
    n = len(symbols)
    out = []
    for _ in range(n):
        for s in sorted(counts):
            if not counts[s]:
                continue
            counts[s] -= 1
            block = multiset_count(counts)
            if rank < block:
                out.append(s)
                break
            rank -= block
            counts[s] += 1
        else:
            raise IndexError("rank out of range")
    return out


def next_arrangement(a: list) -> bool:
    """Advance ``a`` in place to its lexicographic successor; False at the end."""
    i = len(a) - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(a) - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    a[i + 1 :] = reversed(a[i + 1 :])
    return True


# -- CAZAC testing with early exit -----------------------------------------


def cazac_mask(phases: np.ndarray, N: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Boolean CAZAC verdict per row, rejecting rows at the first failing delay.

    Delays are scanned upward from 1; theta(N-d) = conj(theta(d)) so delays
    beyond N/2 add nothing.
    """
    roots = root_table(2 * N)
    alive = np.arange(len(phases))
    rows = phases
    for d in range(1, N // 2 + 1):
        if not len(alive):
            break
        diff = (rows - np.roll(rows, -d, axis=1)) % (2 * N)
        ok = np.abs(roots[diff].sum(axis=1)) <= tol * N
        alive, rows = alive[ok], rows[ok]
    mask = np.zeros(len(phases), dtype=bool)
    mask[alive] = True
    return mask


@dataclass(frozen=True)
class CensusPlan:
    """Symbol space, symbol->phase map and per-hit weight for one census."""

    N: int
    u: int
    method: str
    prefix: tuple
    symbols: tuple  # multiset arranged after the prefix
    phase_of: tuple  # phase of each symbol value
    weight: int
    total: int  # number of arrangements

    @classmethod
    def build(cls, N: int, u: int = 1, method: str = "multiset") -> CensusPlan:
        x = zc_phases(N, u, 0).phases
        if method == "bruteforce":
            return cls(N, u, method, (), tuple(range(N)), tuple(x), 1, math.factorial(N))
        if method != "multiset":
            raise ValueError(f"unknown census method {method!r}")
        counts = Counter(x)
        pin = min(counts, key=lambda v: (counts[v], v))
        rest = list(x)
        rest.remove(pin)
        # integral because counts[pin] divides counts[pin]!
        weight = N * math.prod(math.factorial(c) for c in counts.values()) // counts[pin]
        phase_of = tuple(range(2 * N))
        return cls(N, u, method, (pin,), tuple(sorted(rest)), phase_of, weight,
                   multiset_count(Counter(rest)))

    def units(self, unit_size: int = UNIT_SIZE) -> list[tuple[int, int]]:
        return [(s, min(s + unit_size, self.total)) for s in range(0, self.total, unit_size)]


def count_range(plan: CensusPlan, start: int, end: int, tol: float = DEFAULT_TOL,
                deadline: float | None = None, full_pacf: bool = False) -> tuple[int, int]:
    """(weighted CAZAC count, arrangements tested) over ranks [start, end)."""
    if start >= end:
        return 0, 0
    N = plan.N
    lut = np.asarray(plan.phase_of, dtype=np.int64)
    arr = unrank_multiset(list(plan.symbols), start)
    prefix = list(plan.prefix)
    hits = tested = 0
    remaining = end - start
    while remaining:
        take = min(BATCH, remaining)
        block = np.empty((take, N), dtype=np.int64)
        for i in range(take):
            block[i] = prefix + arr
            if i + 1 < take or remaining > take:
                next_arrangement(arr)
        rows = lut[block]
        if full_pacf:
            mask = batch_max_sidelobe(rows, N) <= tol
        else:
            mask = cazac_mask(rows, N, tol)
        hits += int(mask.sum())
        tested += take
        remaining -= take
        if deadline is not None and remaining and time.time() > deadline:
            raise BudgetExceeded("census deadline reached", (hits * plan.weight, tested))
    return hits * plan.weight, tested


def _unit_job(args):
    plan, start, end, tol, deadline = args
    try:
        count, _ = count_range(plan, start, end, tol, deadline)
    except BudgetExceeded:
        return start, end, None
    return start, end, count


def read_checkpoint(path, N: int, u: int) -> dict[tuple[int, int], int]:
    done = {}
    p = Path(path)
    if not p.exists():
        return done
    for line in p.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        n, uu, s, e, c = (int(v) for v in line.split(","))
        if n == N and uu == u:
            done[(s, e)] = c
    return done


def append_checkpoint(path, N: int, u: int, start: int, end: int, count: int):
    with open(path, "a", newline="\n") as fh:
        fh.write(f"{N},{u},{start},{end},{count}\n")


@dataclass
class CensusResult:
    N: int
    u: int
    count: int
    complete: bool
    method: str
    units_done: int
    units_total: int


def cazac_permutation_census(N: int, u: int = 1, budget: float | None = None, workers: int = 1,
                             checkpoint=None, method: str = "multiset", tol: float = DEFAULT_TOL,
                             unit_size: int = UNIT_SIZE) -> CensusResult:
    """Number of permutations of Z_N that keep zc(N, u) CAZAC.

    ``budget`` is a wall-clock limit in seconds. Completed work units are
    appended to ``checkpoint`` (if given) and skipped on the next call. On
    budget exhaustion :class:`BudgetExceeded` carries the partial result.
    """
    if N > MAX_FULL_N:
        raise ValueError(f"N! census is limited to N <= {MAX_FULL_N}")
    plan = CensusPlan.build(N, u, method)
    units = plan.units(unit_size)
    done = read_checkpoint(checkpoint, N, u) if checkpoint else {}
    todo = [r for r in units if r not in done]
    total = sum(done[r] for r in units if r in done)
    finished = len(units) - len(todo)
    deadline = None if budget is None else time.time() + budget
    incomplete = False
    jobs = [(plan, s, e, tol, deadline) for s, e in todo]
    for s, e, c in pimap(_unit_job, jobs, workers):
        if c is None:
            incomplete = True
            continue
        total += c
        finished += 1
        if checkpoint:
            append_checkpoint(checkpoint, N, u, s, e, c)
    result = CensusResult(N, u, total, not incomplete, method, finished, len(units))
    if incomplete:
        raise BudgetExceeded(f"N={N} census stopped after {finished}/{len(units)} units", result)
    return result


# -- census table rows --------------------------------------------------------


@dataclass
class CensusRow:
    N: int
    total_cpps: int
    unique_cpp_perms: int
    cpp_cazac_perms: int
    all_cazac_perms: int | None
    u_used: int
    complete: bool = True
    elapsed: dict = field(default_factory=dict)


def cpp_columns(N: int, u: int = 1, tol: float = DEFAULT_TOL) -> tuple[int, int, int]:
    cpps = enumerate_cpps(N, include_f0=True)
    perms = dedup_permutations(cpps)
    if not perms:
        return len(cpps), 0, 0
    x = zc_phases(N, u, 0).as_array()
    rows = x[np.asarray([p.table for p in perms], dtype=np.int64)]
    ok = batch_max_sidelobe(rows, N) <= tol
    return len(cpps), len(perms), int(ok.sum())


def table1_row(N: int, u: int = 1, budget: float | None = None, workers: int = 1,
               checkpoint=None, full_column: bool = True, method: str = "multiset") -> CensusRow:
    t0 = time.perf_counter()
    total, unique, cazac = cpp_columns(N, u)
    t1 = time.perf_counter()
    row = CensusRow(N, total, unique, cazac, None, u, True, {"cpp": t1 - t0})
    if full_column and N <= MAX_FULL_N:
        try:
            row.all_cazac_perms = cazac_permutation_census(
                N, u, budget, workers, checkpoint, method
            ).count
        except BudgetExceeded:
            row.complete = False
        row.elapsed["all"] = time.perf_counter() - t1
    return row
