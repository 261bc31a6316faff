"""
Sets of mutually orthogonal QPP-interleaved Zadoff-Chu sequences.

All sequences share one root sequence, so two interleaves y_i = w_i x and
y_j = w_j x have the same zero-lag cross-correlation as their modulation
sequences w_i, w_j. Orthogonality is a zero-lag property only.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .corr import DEFAULT_TOL
from .equiv import distinct_interleaves
from .numth import root_table
from .zcseq import LengthMismatch, PhaseSeq

DEFAULT_CAP = 128
VALUE_DECIMALS = 9


class BudgetExceeded(RuntimeError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


def zero_lag_crosscorr(wi: PhaseSeq, wj: PhaseSeq) -> float:
    """|theta_ij(0)| / N from exact phase differences."""
    if wi.N != wj.N:
        raise LengthMismatch(f"lengths differ: {wi.N} != {wj.N}")
    diff = (wi.as_array() - wj.as_array()) % (2 * wi.N)
    return float(abs(root_table(2 * wi.N)[diff].sum()) / wi.N)


def zero_lag_matrix(rows: np.ndarray, N: int) -> np.ndarray:
    """Symmetric matrix of |theta_ij(0)|/N over the rows of a phase array."""
    rows = np.asarray(rows, dtype=np.int64)
    n = len(rows)
    roots = root_table(2 * N)
    out = np.zeros((n, n))
    for i in range(n):
        diff = (rows[i] - rows[i + 1 :]) % (2 * N)
        vals = np.abs(roots[diff].sum(axis=1)) / N
        out[i, i + 1 :] = vals
        out[i + 1 :, i] = vals
        out[i, i] = 1.0
    return out


@dataclass
class OrthoGraph:
    N: int
    u: int
    tol: float
    qpps: list  # canonical (f2, f1) generator per vertex
    phases: np.ndarray  # (V, N) distinct interleaved sequences
    corr: np.ndarray  # (V, V) zero-lag magnitudes

    @property
    def size(self) -> int:
        return len(self.qpps)

    @property
    def adjacency(self) -> np.ndarray:
        adj = self.corr <= self.tol
        np.fill_diagonal(adj, False)
        return adj

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))

    def vertex(self, i: int) -> PhaseSeq:
        return PhaseSeq(self.N, tuple(self.phases[i].tolist()), {"qpp": self.qpps[i]})


def build_ortho_graph(N: int, u: int = 1, tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP) -> OrthoGraph:
    if N > cap:
        raise ValueError(f"N={N} exceeds orthogonal-set cap {cap}")
    pairs, distinct, which = distinct_interleaves(N, u)
    # a distinct row's canonical generator is the first QPP producing it
    canon = {}
    for pair, idx in zip(pairs, which.tolist()):
        canon.setdefault(idx, pair)
    qpps = [canon[i] for i in range(len(distinct))]
    return OrthoGraph(N, u, tol, qpps, distinct, zero_lag_matrix(distinct, N))


@dataclass
class OrthoSetResult:
    N: int
    qpps: list
    certificate: float
    mode: str
    complete: bool = True

    @property
    def size(self) -> int:
        return len(self.qpps)


def _bitsets(adj: np.ndarray) -> list[int]:
    out = []
    for row in adj:
        bits = 0
        for j in np.nonzero(row)[0].tolist():
            bits |= 1 << j
        out.append(bits)
    return out


def _iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def greedy_clique(adj: np.ndarray) -> list[int]:
    """Maximal clique grown by repeatedly taking the candidate of largest degree."""
    nbr = _bitsets(adj)
    cand = (1 << len(nbr)) - 1
    clique = []
    while cand:
        best = max(_iter_bits(cand), key=lambda v: ((nbr[v] & cand).bit_count(), -v))
        clique.append(best)
        cand &= nbr[best]
    return sorted(clique)


def degeneracy_order(nbr: list[int]) -> list[int]:
    """Vertices in reverse smallest-last order (high-core vertices first)."""
    n = len(nbr)
    alive = (1 << n) - 1
    deg = [b.bit_count() for b in nbr]
    order = []
    for _ in range(n):
        v = min(_iter_bits(alive), key=lambda x: (deg[x], x))
        order.append(v)
        alive &= ~(1 << v)
        for w in _iter_bits(nbr[v] & alive):
            deg[w] -= 1
    return order[::-1]


def max_clique(adj: np.ndarray, max_nodes: int | None = None, max_seconds: float | None = None) -> tuple[list[int], bool]:
    """Maximum clique by branch and bound with greedy-colouring bounds.

    Vertices are renumbered in degeneracy order so the lowest set bit of a
    candidate bitset is always the earliest vertex in that order. Returns
    (clique, complete); ``complete`` is False when a node or time budget
    stopped the search, and the clique is then the best one found.
    """
    n = len(adj)
    if n == 0:
        return [], True
    # vertices with identical neighbourhoods are never adjacent, so a clique
    # holds at most one of them: solve on one representative per class
    _, reps = np.unique(adj, axis=0, return_index=True)
    reps = np.sort(reps)
    if len(reps) < n:
        sub, complete = max_clique(adj[np.ix_(reps, reps)], max_nodes, max_seconds)
        return sorted(int(reps[v]) for v in sub), complete
    order = degeneracy_order(_bitsets(adj))
    relabel = np.asarray(order)
    nbr = _bitsets(adj[np.ix_(relabel, relabel)])
    best = [order.index(v) for v in greedy_clique(adj)]
    nodes = 0
    deadline = None if max_seconds is None else time.monotonic() + max_seconds

    class _Stop(Exception):
        pass

    def colour_classes(cand: int):
        verts, cols = [], []
        colour = 0
        while cand:
            colour += 1
            avail = cand
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~nbr[v] & ~low
                cand &= ~low
                verts.append(v)
                cols.append(colour)
        return verts, cols

    def expand(clique: list[int], cand: int):
        nonlocal best, nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise _Stop
        if deadline is not None and nodes % 256 == 0 and time.monotonic() > deadline:
            raise _Stop
        verts, cols = colour_classes(cand)
        for i in range(len(verts) - 1, -1, -1):
            if len(clique) + cols[i] <= len(best):
                return
            v = verts[i]
            clique.append(v)
            new = cand & nbr[v]
            if new:
                expand(clique, new)
            elif len(clique) > len(best):
                best = list(clique)
            clique.pop()
            cand &= ~(1 << v)

    try:
        expand([], (1 << n) - 1)
        complete = True
    except _Stop:
        complete = False
    return sorted(order[v] for v in best), complete


def certify(phases: np.ndarray, N: int) -> float:
    """Largest pairwise |theta(0)|/N, recomputed from the phase rows."""
    if len(phases) < 2:
        return 0.0
    m = zero_lag_matrix(phases, N)
    np.fill_diagonal(m, 0.0)
    return float(m.max())


def max_orthogonal_set(g: OrthoGraph, mode: str = "exact", budget: dict | None = None) -> OrthoSetResult:
    """Largest (exact) or a maximal (greedy) set of pairwise orthogonal vertices.

    ``budget`` may carry ``nodes`` and/or ``seconds`` for the exact search.
    When exhausted, :class:`BudgetExceeded` is raised with the best set so
    far attached as ``partial``.
    """
    if mode not in ("exact", "greedy"):
        raise ValueError("mode must be 'exact' or 'greedy'")
    adj = g.adjacency
    budget = budget or {}
    if mode == "greedy":
        clique, complete = greedy_clique(adj), True
    else:
        clique, complete = max_clique(adj, budget.get("nodes"), budget.get("seconds"))
    result = OrthoSetResult(
        g.N, [g.qpps[i] for i in clique], certify(g.phases[clique], g.N), mode, complete
    )
    if not complete:
        raise BudgetExceeded(f"exact clique search for N={g.N} ran out of budget", result)
    return result


@dataclass(frozen=True)
class CrossCorrSummary:
    N: int
    minimum: float | None
    values: tuple[float, ...]


def crosscorr_values(g: OrthoGraph) -> CrossCorrSummary:
    """Distinct |theta_ij(0)|/N over vertex pairs with value below 1.

    Values are rounded to 9 decimals; anything within tol of zero is 0.
    """
    if g.size < 2:
        return CrossCorrSummary(g.N, None, ())
    iu = np.triu_indices(g.size, 1)
    vals = g.corr[iu]
    vals = vals[vals < 1 - g.tol]
    vals = np.where(vals <= g.tol, 0.0, np.round(vals, VALUE_DECIMALS))
    distinct = tuple(sorted(set(vals.tolist())))
    return CrossCorrSummary(g.N, distinct[0] if distinct else None, distinct)


def min_nonzero_crosscorr(N: int, u: int = 1, tol: float = DEFAULT_TOL) -> CrossCorrSummary:
    return crosscorr_values(build_ortho_graph(N, u, tol))
