"""
Uniqueness of QPP-interleaved Zadoff-Chu sequences.

An interleaved sequence is *reachable* when some combination of root change,
translation, conjugation, linear frequency modulation and rotation maps the
plain Zadoff-Chu sequence onto it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .corr import BasicOp, apply_basic_ops
from .numth import totient, units
from .parallel import pmap
from .permpoly import PermArray, is_qpp_valid, qpp_pairs
from .zcseq import LengthMismatch, PhaseSeq, interleave, qpp_interleave_batch, zc_exponent, zc_phases

# +1 first: a witness without conjugation is preferred when both exist
SIGNS = (1, -1)


@dataclass(frozen=True)
class EquivWitness:
    u2: int
    d: int
    a: int
    v: int
    s: int

    def ops(self) -> list[BasicOp]:
        """Basic operations that carry zc(N, u2, 0) onto the matched sequence."""
        chain = [BasicOp.translation(self.d)]
        if self.s == -1:
            chain.append(BasicOp.conjugation())
        chain += [BasicOp.linear_fm(self.v), BasicOp.rotation(self.a)]
        return chain

    def replay(self, N: int) -> PhaseSeq:
        return apply_basic_ops(zc_phases(N, self.u2, 0), self.ops())


@dataclass
class UniquenessSummary:
    N: int
    u1: int
    qpp_total: int
    unique_count: int
    distinct_total: int
    distinct_unique: int
    per_qpp: list = field(default_factory=list)

    @property
    def fraction(self) -> Fraction:
        if not self.qpp_total:
            return Fraction(0)
        return Fraction(self.unique_count, self.qpp_total)

    @property
    def fraction_dedup(self) -> Fraction:
        if not self.distinct_total:
            return Fraction(0)
        return Fraction(self.distinct_unique, self.distinct_total)


def sequences_equal(x: PhaseSeq, y: PhaseSeq) -> bool:
    if x.N != y.N:
        raise LengthMismatch(f"lengths differ: {x.N} != {y.N}")
    return x.phases == y.phases


def squares_congruent(p0: PermArray, p1: PermArray) -> bool:
    if p0.modulus != p1.modulus:
        raise LengthMismatch("moduli differ")
    n = p0.modulus
    return all(a * a % n == b * b % n for a, b in zip(p0.table, p1.table))


def find_witness(target, N: int) -> EquivWitness | None:
    """First (s, u2, d, v) in scan order matching ``target`` phases exactly.

    For fixed (s, u2, d) the rotation a is forced by k = 0 and the frequency
    index v by k = 1 (no solution if the k = 1 residual is odd), so scanning
    (s, u2, d) with those forced values visits the same witnesses, in the
    same order, as a full scan over (s, u2, d, v, a).

    The right-hand side is a quadratic in k with second difference
    2*s*u2 (mod 2N), so a target whose second difference is not constant
    has no witness, and otherwise u2 is pinned for each s.
    """
    t = np.asarray(target.phases if isinstance(target, PhaseSeq) else target, dtype=np.int64)
    mod = 2 * N
    if N == 1:
        return EquivWitness(0, 0, int(t[0]) % mod, 0, 1)
    unit_set = units(N)
    pinned = None
    if N >= 3:
        dd = (t[2:] - 2 * t[1:-1] + t[:-2]) % mod
        if np.any(dd != dd[0]) or dd[0] % 2:
            return None
        pinned = int(dd[0]) // 2
    k = np.arange(N, dtype=np.int64)
    d = np.arange(N, dtype=np.int64)
    # plain[d, k]: phase of zc(N, 1) translated by d
    plain = zc_exponent(N, 1, 0, (d[:, None] + k[None, :]) % N)
    for s in SIGNS:
        if pinned is None:
            cand = unit_set
        else:
            cand = [u for u in unit_set if (s * u - pinned) % N == 0]
        if not cand:
            continue
        roots = np.asarray(cand, dtype=np.int64)
        base = (s * roots[:, None, None] * plain[None, :, :]) % mod
        a = (t[0] - base[:, :, 0]) % mod
        r1 = (t[1] - base[:, :, 1] - a) % mod
        v = (r1 // 2) % N
        resid = (t[None, None, :] - base - a[..., None] - 2 * v[..., None] * k) % mod
        ok = (r1 % 2 == 0) & ~resid.any(axis=2)
        hits = np.argwhere(ok)
        if len(hits):
            j, dd = hits[0]
            return EquivWitness(int(roots[j]), int(dd), int(a[j, dd]), int(v[j, dd]), s)
    return None


def reachable_by_basic_ops(N: int, u1: int, qpp) -> EquivWitness | None:
    """Search for a basic-operation witness for zc(N, u1) interleaved by ``qpp``.

    ``qpp`` may be a PermPoly/PermArray or an (f2, f1) pair with f0 = 0.
    """
    if isinstance(qpp, tuple) and len(qpp) == 2:
        f2, f1 = qpp
        if f2 and not is_qpp_valid(N, f2, f1):
            raise ValueError(f"({f2}, {f1}) is not a valid QPP for N={N}")
        row = qpp_interleave_batch(N, u1, 0, [qpp])[0]
        return find_witness(row, N)
    return find_witness(interleave(zc_phases(N, u1, 0), qpp), N)


def brute_force_witness(target: PhaseSeq) -> EquivWitness | None:
    """Unaccelerated scan over every (s, u2, d, v, a); for small N only."""
    N, mod = target.N, 2 * target.N
    t = target.phases
    eps = N % 2
    for s in SIGNS:
        for u2 in units(N):
            for d in range(N):
                for v in range(N):
                    for a in range(mod):
                        if all(
                            (s * u2 * (k + d) * (k + d + eps) + 2 * v * k + a - t[k]) % mod == 0
                            for k in range(N)
                        ):
                            return EquivWitness(u2, d, a, v, s)
    return None


def distinct_interleaves(N: int, u1: int) -> tuple[list, np.ndarray, np.ndarray]:
    """QPP pairs, the distinct interleaved phase rows, and each pair's row index.

    Distinct rows keep the order of their first generating QPP.
    """
    pairs = qpp_pairs(N)
    rows = qpp_interleave_batch(N, u1, 0, pairs)
    if not pairs:
        return pairs, rows, np.zeros(0, dtype=np.int64)
    _, first, inverse = np.unique(rows, axis=0, return_index=True, return_inverse=True)
    order = np.argsort(first)
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    return pairs, rows[np.sort(first)], rank[inverse.reshape(-1)]


def _witness_job(args):
    row, N = args
    return find_witness(row, N)


def uniqueness_fraction(N: int, u1: int = 1, workers: int = 1) -> UniquenessSummary:
    """Fraction of QPPs (f0 = 0) whose interleave is not reachable by basic operations."""
    pairs, distinct, which = distinct_interleaves(N, u1)
    witnesses = pmap(_witness_job, [(row, N) for row in distinct], workers)
    per_qpp = []
    unique = 0
    for pair, idx in zip(pairs, which):
        w = witnesses[idx]
        unique += w is None
        per_qpp.append((pair, w is None, w))
    distinct_unique = sum(w is None for w in witnesses)
    return UniquenessSummary(N, u1, len(pairs), unique, len(distinct), distinct_unique, per_qpp)


@dataclass(frozen=True)
class UniqueCounts:
    by_qpp: int
    by_root: int
    totient: int


def max_unique_counts(N: int, u1: int = 1) -> UniqueCounts:
    _, distinct, _ = distinct_interleaves(N, u1)
    roots = {zc_phases(N, u, 0).phases for u in units(N)}
    return UniqueCounts(len(distinct), len(roots), totient(N) if N > 1 else 0)
