"""
Exact integer number theory used by every other module.

Sequence elements are kept as integer exponents of the 2N-th root of unity
``exp(-j*pi/N)``; floats only appear when correlation sums are evaluated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Trial-division factorization, primes in increasing order."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    factors = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


@lru_cache(maxsize=4096)
def _units(n: int) -> tuple[int, ...]:
    return tuple(u for u in range(1, n) if math.gcd(u, n) == 1)


def units(n: int) -> list[int]:
    """Ascending residues in [1, n) coprime to n.

    For n = 1 the list is empty; Python's gcd(0, 1) = 1 would otherwise
    admit 0, which is not a valid root index.
    """
    if n < 1:
        raise ValueError(f"units needs n >= 1, got {n}")
    return list(_units(n))


def totient(n: int) -> int:
    """Euler's phi from the factorization (independent of :func:`units`)."""
    out = n
    for p, _ in factorize(n).factors:
        out = out // p * (p - 1)
    return out


def square_decompositions(n: int) -> list[tuple[int, int]]:
    """All (s, m) with n = s * m**2 and m > 1, ordered by m."""
    out = []
    m = 2
    while m * m <= n:
        if n % (m * m) == 0:
            out.append((n // (m * m), m))
        m += 1
    return out


@dataclass(frozen=True)
class Phase:
    """Unit-modulus value exp(-j*pi*numerator/N) with modulus 2N."""

    numerator: int
    modulus: int

    def __post_init__(self):
        if self.modulus <= 0 or self.modulus % 2:
            raise ValueError(f"phase modulus must be a positive even integer, got {self.modulus}")
        object.__setattr__(self, "numerator", self.numerator % self.modulus)

    def __add__(self, other: Phase) -> Phase:
        if other.modulus != self.modulus:
            raise ValueError("phase moduli differ")
        return Phase(self.numerator + other.numerator, self.modulus)

    def __neg__(self) -> Phase:
        return Phase(-self.numerator, self.modulus)


def phase_value(p: Phase) -> complex:
    half = p.modulus // 2
    return cmath.exp(-1j * math.pi * p.numerator / half)


@lru_cache(maxsize=1024)
def _root_table(modulus: int) -> np.ndarray:
    half = modulus // 2
    table = np.exp(-1j * np.pi * np.arange(modulus) / half)
    table.setflags(write=False)
    return table


def root_table(modulus: int) -> np.ndarray:
    """``table[e] = exp(-j*pi*e/(modulus/2))`` for e in [0, modulus)."""
    return _root_table(modulus)
