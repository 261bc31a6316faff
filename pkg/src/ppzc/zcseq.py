"""
Zadoff-Chu, interleaved Zadoff-Chu and Frank sequences in exact phase form.

A :class:`PhaseSeq` of length N stores ``phases[k]`` in [0, 2N); element k is
``exp(-j*pi*phases[k]/N)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numth import gcd, root_table, square_decompositions
from .permpoly import PermArray, PermPoly


class BadRoot(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PhaseSeq:
    N: int
    phases: tuple[int, ...]
    meta: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("sequence length must be positive")
        mod = 2 * self.N
        ph = tuple(int(p) % mod for p in self.phases)
        if len(ph) != self.N:
            raise LengthMismatch(f"expected {self.N} phases, got {len(ph)}")
        object.__setattr__(self, "phases", ph)

    @property
    def modulus(self) -> int:
        return 2 * self.N

    def __len__(self):
        return self.N

    def as_array(self) -> np.ndarray:
        return np.asarray(self.phases, dtype=np.int64)

    def values(self) -> np.ndarray:
        return root_table(self.modulus)[self.as_array()]


def zc_exponent(N: int, u: int, q: int, k):
    """Phase exponent (mod 2N) of element k of the root-u Zadoff-Chu sequence.

    Works elementwise on integer arrays. The result is N-periodic in k.
    """
    return u * k * (k + N % 2 + 2 * q) % (2 * N)


def zc_phases(N: int, u: int = 1, q: int = 0) -> PhaseSeq:
    if N < 1:
        raise ValueError("N must be positive")
    if gcd(u, N) != 1:
        raise BadRoot(f"root index u={u} is not coprime to N={N}")
    k = np.arange(N, dtype=np.int64)
    return PhaseSeq(N, tuple(zc_exponent(N, u, q, k).tolist()), {"u": u, "q": q})


def _perm_table(p) -> tuple[int, ...]:
    if isinstance(p, PermPoly):
        return p.table
    if isinstance(p, PermArray):
        return p.table
    return tuple(p)


def interleave(x: PhaseSeq, p) -> PhaseSeq:
    """``y[k] = x[p[k]]``."""
    table = _perm_table(p)
    if len(table) != x.N:
        raise LengthMismatch(f"sequence length {x.N} != permutation length {len(table)}")
    meta = dict(x.meta)
    coeffs = getattr(p, "coeffs", None)
    if coeffs is not None:
        meta["interleaver"] = tuple(coeffs)
    return PhaseSeq(x.N, tuple(x.phases[i] for i in table), meta)


def interleaved_zc(N: int, u: int, q: int, p) -> PhaseSeq:
    return interleave(zc_phases(N, u, q), p)


def gcl_modulation(N: int, u: int, q: int, p) -> PhaseSeq:
    """Modulation sequence ``w[k] = x[p[k]] * conj(x[k])`` of the interleaved ZC."""
    x = zc_phases(N, u, q)
    table = _perm_table(p)
    if len(table) != N:
        raise LengthMismatch(f"N={N} != permutation length {len(table)}")
    return PhaseSeq(N, tuple(x.phases[t] - x.phases[k] for k, t in enumerate(table)), dict(x.meta))


@dataclass(frozen=True)
class PeriodReport:
    period: int
    is_full_period_N: bool
    square_decompositions: tuple[tuple[int, int], ...]


def modulation_period(w: PhaseSeq) -> PeriodReport:
    """Smallest T >= 1 with w[(k+T) mod N] == w[k] exactly, for every k."""
    ph = w.phases
    n = w.N
    for t in range(1, n + 1):
        if all(ph[(k + t) % n] == ph[k] for k in range(n)):
            break
    return PeriodReport(t, t == n, tuple(square_decompositions(n)))


def central_symmetry_check(x: PhaseSeq) -> bool:
    n, ph = x.N, x.phases
    if n % 2 == 0:
        return all(ph[k] == ph[(n - k) % n] for k in range(n))
    return all(ph[k] == ph[n - 1 - k] for k in range(n))


def frank_phases(m: int) -> PhaseSeq:
    """Frank sequence of length m**2, element a*m + b equal to W_m^(a*b)."""
    if m < 2:
        raise ValueError("Frank sequences need m >= 2")
    n = m * m
    return PhaseSeq(n, tuple(2 * m * a * b for a in range(m) for b in range(m)), {"frank_m": m})


def qpp_interleave_batch(N: int, u: int, q: int, pairs) -> np.ndarray:
    """Phase rows of zc(N, u, q) interleaved by each (f2, f1) QPP, f0 = 0.

    Returns an int64 array of shape (len(pairs), N).
    """
    x = zc_phases(N, u, q).as_array()
    if not len(pairs):
        return np.zeros((0, N), dtype=np.int64)
    f = np.asarray(pairs, dtype=np.int64)
    k = np.arange(N, dtype=np.int64)
    table = (f[:, :1] * (k * k % N)[None, :] + f[:, 1:2] * k[None, :]) % N
    return x[table]
