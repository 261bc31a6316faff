"""
Executable congruence checks behind the CAZAC proofs for QPP interleaving.

Everything here is exact integer arithmetic. A checker returning False is
a counterexample to the corresponding statement and should be triaged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .numth import factorize, gcd
from .permpoly import is_qpp_valid


class InvalidQpp(ValueError):
    pass


class DZero(ValueError):
    pass


class CaseNotCovered(ValueError):
    pass


class HypothesisNotMet(ValueError):
    pass


def g_terms(N: int, f2: int, f1: int, d: int) -> tuple[int, int, int]:
    """(g3, g2, g1): cubic, quadratic and linear coefficients of the PACF phase."""
    g3 = 2 * f2 * f2 * d
    g2 = 3 * f2 * d * (f2 * d + f1)
    g1 = d * (2 * f2 * d + f1) * (f2 * d + f1) + d * f2 * (N % 2)
    return g3, g2, g1


def _special_case(N: int, f2: int) -> bool:
    # N = 2 mod 4 with odd f2: the only situation where f2 misses a prime of N
    return N % 4 == 2 and f2 % 2 == 1


def _all_primes_divide(N: int, f2: int) -> bool:
    return all(f2 % p == 0 for p in factorize(N).primes)


@dataclass(frozen=True)
class TheoremQuantities:
    N: int
    u: int
    f2: int
    f1: int
    d: int
    g3: int
    g2: int
    g1: int
    t_c: int
    c1_exponent: int  # u*(g3 t^3 + g2 t^2 + g1 t) mod N; C1 = W_N^(-c1_exponent)
    special_branch: bool
    z_constant: bool


def theorem1_tc(N: int, u: int, f2: int, f1: int, d: int) -> TheoremQuantities:
    """Shift t_c that turns the PACF at delay d into C1 * (itself) with C1 != 1.

    Raises AssertionError if C1 turns out to be 1 or the telescoping factor
    z[k] is not identically 1.
    """
    if f2 % N == 0 or not is_qpp_valid(N, f2, f1):
        raise InvalidQpp(f"({f2}, {f1}) is not a valid QPP for N={N}")
    if d % N == 0:
        raise DZero("delay must be nonzero mod N")
    if gcd(u, N) != 1:
        raise ValueError(f"u={u} not coprime to N={N}")
    g3, g2, g1 = g_terms(N, f2, f1, d)
    special = _special_case(N, f2) and d % 2 == 1
    t = N // gcd(2 * g2 if special else g2, N)
    expo = u * (g3 * t**3 + g2 * t**2 + g1 * t) % N
    # z[k] exponent is u*k*(lin + k*quad)
    lin = u * (3 * g3 * t * t + 2 * g2 * t) % N
    quad = u * 3 * g3 * t % N
    z_ok = all(k * (lin + k * quad) % N == 0 for k in range(N))
    q = TheoremQuantities(N, u, f2, f1, d, g3, g2, g1, t, expo, special, z_ok)
    assert expo != 0, f"C1 = 1 for {q}"
    assert z_ok, f"z[k] not constant for {q}"
    return q


def check_lemma1(N: int, f2: int, f1: int, d: int, alpha: int) -> bool:
    if not is_qpp_valid(N, f2, f1):
        raise InvalidQpp(f"({f2}, {f1}) is not a valid QPP for N={N}")
    if alpha < 1:
        raise ValueError("alpha must be a positive integer")
    g = gcd(alpha * f2 * d + f1, N)
    if _special_case(N, f2) and d % 2 == 0:
        return g == 2
    if _all_primes_divide(N, f2):
        return g == 1
    raise CaseNotCovered(f"N={N}, f2={f2}, d={d} matches neither case")


def check_lemma2(N: int, f2: int, f1: int, d: int) -> bool:
    if not is_qpp_valid(N, f2, f1):
        raise InvalidQpp(f"({f2}, {f1}) is not a valid QPP for N={N}")
    if not _all_primes_divide(N, f2):
        raise HypothesisNotMet(f"some prime of N={N} does not divide f2={f2}")
    if not 1 <= d < N:
        raise ValueError("d must lie in [1, N)")
    g3, g2, g1 = g_terms(N, f2, f1, d)
    t = N // gcd(g2, N)
    return g3 * t % N == 0 and g2 * t % N == 0 and g1 * t % N != 0


def check_lemma3(N: int, f2: int, f1: int, d: int) -> bool:
    if not is_qpp_valid(N, f2, f1):
        raise InvalidQpp(f"({f2}, {f1}) is not a valid QPP for N={N}")
    if not _special_case(N, f2):
        raise HypothesisNotMet(f"needs N = 2 mod 4 and odd f2, got N={N}, f2={f2}")
    if not 1 <= d < N:
        raise ValueError("d must lie in [1, N)")
    g3, g2, g1 = g_terms(N, f2, f1, d)
    t = N // gcd(g2 if d % 2 == 0 else 2 * g2, N)
    return g3 * t % N == 0 and 2 * g2 * t % N == 0 and (g2 * t * t + g1 * t) % N != 0


def check_lemma4(N: int, u: int, h2: int) -> bool:
    """u + 2*k*h2 never vanishes mod N."""
    if gcd(u, N) != 1:
        raise ValueError(f"u={u} not coprime to N={N}")
    return all((u + 2 * k * h2) % N != 0 for k in range(N))
