"""
Periodic correlation and CAZAC verification.

Correlation terms are formed from exact integer phase differences and only
then mapped to complex roots of unity, so each summand is exact to one
rounding and the sum error stays near 1e-15 * N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numth import gcd, root_table
from .zcseq import LengthMismatch, PhaseSeq

DEFAULT_TOL = 1e-9


class BadDecimation(ValueError):
    pass


@dataclass(frozen=True)
class CorrReport:
    N: int
    peak: float
    max_sidelobe: float
    sidelobe_argmax: int
    is_cazac: bool
    tol: float


@dataclass(frozen=True)
class SpectrumVector:
    N: int
    magnitudes: tuple[float, ...]


def _check_same_length(x: PhaseSeq, y: PhaseSeq):
    if x.N != y.N:
        raise LengthMismatch(f"lengths differ: {x.N} != {y.N}")


def correlation(xph: np.ndarray, yph: np.ndarray, N: int) -> np.ndarray:
    """theta[d] = sum_k x[k] conj(y[(k+d) mod N]) from integer phase arrays."""
    roots = root_table(2 * N)
    out = np.empty(N, dtype=complex)
    for d in range(N):
        out[d] = roots[(xph - np.roll(yph, -d)) % (2 * N)].sum()
    return out


def report_from_theta(theta: np.ndarray, tol: float = DEFAULT_TOL) -> CorrReport:
    n = len(theta)
    mags = np.abs(theta) / n
    if n > 1:
        arg = int(np.argmax(mags[1:])) + 1
        side = float(mags[arg])
    else:
        arg, side = 0, 0.0
    return CorrReport(n, float(theta[0].real), side, arg, side <= tol, tol)


def pacf(x: PhaseSeq, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, CorrReport]:
    ph = x.as_array()
    theta = correlation(ph, ph, x.N)
    return theta, report_from_theta(theta, tol)


def is_cazac(x: PhaseSeq, tol: float = DEFAULT_TOL) -> bool:
    return pacf(x, tol)[1].is_cazac


def max_sidelobe(x: PhaseSeq) -> float:
    return pacf(x)[1].max_sidelobe


def pccf(x: PhaseSeq, y: PhaseSeq) -> np.ndarray:
    _check_same_length(x, y)
    return correlation(x.as_array(), y.as_array(), x.N)


def batch_max_sidelobe(phases: np.ndarray, N: int) -> np.ndarray:
    """Max normalised PACF sidelobe for every row of a (B, N) phase array.

    Same direct sum as :func:`pacf`, evaluated for many sequences at once.
    """
    phases = np.asarray(phases, dtype=np.int64)
    if phases.ndim != 2 or phases.shape[1] != N:
        raise LengthMismatch("phase batch must have shape (B, N)")
    roots = root_table(2 * N)
    worst = np.zeros(phases.shape[0])
    for d in range(1, N):
        diff = (phases - np.roll(phases, -d, axis=1)) % (2 * N)
        mag = np.abs(roots[diff].sum(axis=1)) / N
        np.maximum(worst, mag, out=worst)
    return worst


def dft_spectrum(x: PhaseSeq) -> np.ndarray:
    """X[k] = N**-0.5 * sum_m x[m] W_N^(m*k), evaluated directly."""
    n = x.N
    roots = root_table(2 * n)
    m = np.arange(n, dtype=np.int64)
    # W_N^(mk) is exponent 2mk on the 2N-th root grid
    expo = (x.as_array()[None, :] + 2 * np.outer(m, m)) % (2 * n)
    return roots[expo].sum(axis=1) / np.sqrt(n)


def zac_via_dft(x: PhaseSeq, tol: float = DEFAULT_TOL) -> tuple[bool, SpectrumVector]:
    """Zero autocorrelation holds iff the unitary DFT has constant modulus 1."""
    mags = np.abs(dft_spectrum(x))
    ok = bool(np.all(np.abs(mags - 1.0) <= tol))
    return ok, SpectrumVector(x.N, tuple(mags.tolist()))


@dataclass(frozen=True)
class BasicOp:
    """One of the five CAZAC-preserving transforms.

    kind is "rotation", "translation", "decimation", "linear_fm" or
    "conjugation"; ``arg`` is the rotation exponent (mod 2N), shift f0,
    decimation factor f1 or frequency index n respectively.
    """

    kind: str
    arg: int = 0

    KINDS = ("rotation", "translation", "decimation", "linear_fm", "conjugation")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown basic operation {self.kind!r}")

    @classmethod
    def rotation(cls, a):
        return cls("rotation", a)

    @classmethod
    def translation(cls, f0):
        return cls("translation", f0)

    @classmethod
    def decimation(cls, f1):
        return cls("decimation", f1)

    @classmethod
    def linear_fm(cls, n):
        return cls("linear_fm", n)

    @classmethod
    def conjugation(cls):
        return cls("conjugation")


def apply_basic_op(x: PhaseSeq, op: BasicOp) -> PhaseSeq:
    n, ph = x.N, x.phases
    if op.kind == "rotation":
        out = [p + op.arg for p in ph]
    elif op.kind == "translation":
        out = [ph[(k + op.arg) % n] for k in range(n)]
    elif op.kind == "decimation":
        if gcd(op.arg, n) != 1:
            raise BadDecimation(f"decimation factor {op.arg} is not coprime to N={n}")
        out = [ph[op.arg * k % n] for k in range(n)]
    elif op.kind == "linear_fm":
        out = [p + 2 * op.arg * k for k, p in enumerate(ph)]
    else:
        out = [-p for p in ph]
    return PhaseSeq(n, tuple(out))


def apply_basic_ops(x: PhaseSeq, ops) -> PhaseSeq:
    for op in ops:
        x = apply_basic_op(x, op)
    return x
