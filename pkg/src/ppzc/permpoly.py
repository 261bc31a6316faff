"""
Permutation polynomials over Z_N: evaluation, validation, enumeration,
deduplication and inversion.

Coefficient tuples are stored lowest degree first, ``(f0, f1, f2, ...)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .numth import factorize, gcd

DEFAULT_CPP_CAP = 64
DEFAULT_QUARTIC_CAP = 64


class NotBijective(ValueError):
    """Raised when a polynomial's evaluation map repeats a value."""

    def __init__(self, modulus, coeffs, first, second, value):
        self.modulus = modulus
        self.coeffs = tuple(coeffs)
        self.collision = (first, second)
        self.value = value
        super().__init__(
            f"polynomial {format_poly(coeffs)} mod {modulus} is not a permutation: "
            f"k={first} and k={second} both map to {value}"
        )


class CapExceeded(ValueError):
    pass


def _trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def format_poly(coeffs, var="k") -> str:
    """Human-readable form, highest degree first, e.g. ``8k^3+2k^2+k``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def poly_table(modulus: int, coeffs) -> list[int]:
    """Horner evaluation of the polynomial at every k in [0, modulus)."""
    out = []
    for k in range(modulus):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * k + c) % modulus
        out.append(acc)
    return out


@dataclass(frozen=True)
class PermArray:
    modulus: int
    table: tuple[int, ...]
    coeffs: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.table) != self.modulus or sorted(self.table) != list(range(self.modulus)):
            raise ValueError("table is not a permutation of range(modulus)")

    def __getitem__(self, k):
        return self.table[k]

    def __len__(self):
        return self.modulus

    @classmethod
    def identity(cls, modulus: int) -> PermArray:
        return cls(modulus, tuple(range(modulus)), (0, 1))


@dataclass(frozen=True)
class PermPoly:
    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        n = self.modulus
        coeffs = _trim(c % n for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_table", _bijective_table(n, coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(self.coeffs[1:]) else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else 0

    @property
    def table(self) -> tuple[int, ...]:
        return self._table

    def __call__(self, k: int) -> int:
        return eval_poly(self, k)

    def permutation(self) -> PermArray:
        return PermArray(self.modulus, self._table, self.coeffs)

    def __str__(self):
        return f"{format_poly(self.coeffs)} mod {self.modulus}"


def _bijective_table(modulus, coeffs) -> tuple[int, ...]:
    table = poly_table(modulus, coeffs)
    seen = {}
    for k, val in enumerate(table):
        if val in seen:
            raise NotBijective(modulus, coeffs, seen[val], k, val)
        seen[val] = k
    return tuple(table)


def eval_poly(p: PermPoly, k: int) -> int:
    n = p.modulus
    k %= n
    acc = 0
    for c in reversed(p.coeffs):
        acc = (acc * k + c) % n
    return acc


def permutation_of(modulus: int, coeffs) -> PermArray:
    if modulus < 1:
        raise ValueError("modulus must be positive")
    coeffs = tuple(coeffs)
    return PermArray(modulus, _bijective_table(modulus, coeffs), _trim(coeffs))


def is_bijective(modulus: int, coeffs) -> bool:
    return len(set(poly_table(modulus, coeffs))) == modulus


def is_qpp_valid(N: int, f2: int, f1: int) -> bool:
    """Coefficient criterion for k -> f2*k^2 + f1*k to permute Z_N.

    Checked prime by prime: for p = 2 with exponent 1, f1 + f2 must be odd;
    for 4 | N, f1 odd and f2 even; for odd p, p | f2 and p does not divide f1.
    ``f2 = 0`` is accepted when the linear part is a unit (the criterion
    degenerates to the LPP one); enumeration excludes it separately.
    """
    for p, e in factorize(N).factors:
        if p == 2 and e == 1:
            if (f1 + f2) % 2 == 0:
                return False
        elif f1 % p == 0 or f2 % p != 0:
            return False
    return True


def is_irreducible_qpp(N: int, f2: int) -> bool:
    return gcd(N, 2 * f2) < N


def enumerate_qpps(N: int, include_f0: bool = False) -> list[PermPoly]:
    """All valid QPPs with f2 != 0, lexicographic in (f2, f1, f0)."""
    if N < 2:
        raise ValueError("N must be at least 2")
    out = []
    f0_range = range(N) if include_f0 else (0,)
    for f2 in range(1, N):
        for f1 in range(N):
            if not is_qpp_valid(N, f2, f1):
                continue
            for f0 in f0_range:
                out.append(PermPoly(N, (f0, f1, f2)))
    return out


def qpp_pairs(N: int) -> list[tuple[int, int]]:
    """(f2, f1) pairs of :func:`enumerate_qpps` with f0 = 0, without building tables."""
    return [(f2, f1) for f2 in range(1, N) for f1 in range(N) if is_qpp_valid(N, f2, f1)]


def _bijective_mask(N: int, degree_coeff_grid: np.ndarray) -> np.ndarray:
    # rows are value tables; a row is a permutation iff its sorted values are 0..N-1
    s = np.sort(degree_coeff_grid, axis=1)
    return np.all(s == np.arange(N), axis=1)


def _cpp_triples(N: int) -> list[tuple[int, int, int]]:
    """Bijective (f3, f2, f1) with f3 != 0 and f0 = 0, lexicographic."""
    k = np.arange(N, dtype=np.int64)
    k2, k3 = k * k % N, k * k * k % N
    out = []
    for f3 in range(1, N):
        for f2 in range(N):
            base = (f3 * k3 + f2 * k2) % N
            rows = (base[None, :] + np.arange(N)[:, None] * k[None, :]) % N
            for f1 in np.nonzero(_bijective_mask(N, rows))[0]:
                out.append((f3, f2, int(f1)))
    return out


def enumerate_cpps(N: int, include_f0: bool = True, cap: int = DEFAULT_CPP_CAP) -> list[PermPoly]:
    """All cubic coefficient tuples with f3 != 0 whose map permutes Z_N.

    Found by brute-force bijectivity testing. Order is lexicographic in
    (f3, f2, f1, f0). A translation f0 never affects bijectivity, so the
    f0 = 0 search is reused for every f0.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    if N > cap:
        raise CapExceeded(f"N={N} exceeds CPP enumeration cap {cap}")
    f0_range = range(N) if include_f0 else (0,)
    return [PermPoly(N, (f0, f1, f2, f3)) for f3, f2, f1 in _cpp_triples(N) for f0 in f0_range]


def dedup_permutations(polys) -> list[PermArray]:
    """Unique permutation tables, each tagged with its smallest generator.

    "Smallest" compares coefficient tuples highest degree first, so a lower
    degree generator always wins. Output is sorted by table.
    """
    polys = list(polys)
    if not polys:
        return []
    n = polys[0].modulus
    if any(p.modulus != n for p in polys):
        raise ValueError("all polynomials must share a modulus")
    best: dict[tuple[int, ...], tuple[int, ...]] = {}
    for p in polys:
        key = _canonical_key(p.coeffs)
        cur = best.get(p.table)
        if cur is None or key < _canonical_key(cur):
            best[p.table] = p.coeffs
    return [PermArray(n, t, best[t]) for t in sorted(best)]


def _canonical_key(coeffs):
    return (len(_trim(coeffs)),) + tuple(reversed(_trim(coeffs)))


def invert_permutation(p: PermArray) -> PermArray:
    inv = [0] * p.modulus
    for k, v in enumerate(p.table):
        inv[v] = k
    return PermArray(p.modulus, tuple(inv))


def compose(outer: PermArray, inner: PermArray) -> PermArray:
    """k -> outer[inner[k]]."""
    return PermArray(outer.modulus, tuple(outer.table[i] for i in inner.table))


def polynomial_inverses(p, max_degree: int, cap: int = DEFAULT_QUARTIC_CAP) -> list[PermPoly]:
    """Every polynomial of degree <= max_degree whose map inverts ``p``.

    Z_N is not a field for composite N, so interpolation cannot be used.
    Instead h0 is pinned to the preimage of 0, h1 is forced by k = 1 for
    each choice of the higher coefficients, and the candidate is rejected at
    the first k >= 2 where it disagrees with the inverse table. Results are
    ordered lexicographically by (h_D, ..., h2).
    """
    if max_degree not in (1, 2, 3, 4):
        raise ValueError("max_degree must be 1, 2, 3 or 4")
    perm = p.permutation() if isinstance(p, PermPoly) else p
    n = perm.modulus
    if max_degree == 4 and n > cap:
        raise CapExceeded(f"N={n} exceeds quartic inverse cap {cap}")
    target = invert_permutation(perm).table
    h0 = target[0]
    if n == 1:
        return [PermPoly(1, (0,))]
    powers = [[pow(k, i, n) for k in range(n)] for i in range(max_degree + 1)]
    degrees = range(max_degree, 1, -1)

    out = []
    for high in itertools.product(range(n), repeat=max_degree - 1):
        # high = (h_D, ..., h2); every power of 1 is 1
        h1 = (target[1] - h0 - sum(high)) % n
        for k in range(2, n):
            acc = h0 + h1 * k
            for deg, h in zip(degrees, high):
                acc += h * powers[deg][k]
            if acc % n != target[k]:
                break
        else:
            out.append(PermPoly(n, (h0, h1) + tuple(reversed(high))))
    return out
