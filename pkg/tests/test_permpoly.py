import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ppzc.permpoly import (
    NotBijective,
    PermArray,
    PermPoly,
    compose,
    dedup_permutations,
    enumerate_cpps,
    enumerate_qpps,
    format_poly,
    invert_permutation,
    is_bijective,
    is_irreducible_qpp,
    is_qpp_valid,
    permutation_of,
    polynomial_inverses,
    qpp_pairs,
)


def brute_bijective(N, coeffs):
    vals = {sum(c * k**i for i, c in enumerate(coeffs)) % N for k in range(N)}
    return len(vals) == N


@pytest.mark.parametrize("N", range(2, 65))
def test_qpp_criterion_matches_bijectivity(N):
    for f2 in range(1, N):
        for f1 in range(N):
            assert is_qpp_valid(N, f2, f1) == brute_bijective(N, (0, f1, f2)), (N, f2, f1)


def test_qpp_pairs_examples():
    assert qpp_pairs(7) == []
    assert set(qpp_pairs(8)) == {(f2, f1) for f2 in (2, 4, 6) for f1 in (1, 3, 5, 7)}
    assert all(p.coeffs[0] == 0 for p in enumerate_qpps(16))
    assert len(enumerate_qpps(8, include_f0=True)) == 8 * len(qpp_pairs(8))


def test_irreducible_qpp():
    # 4k^2 + k mod 8 is reducible: it coincides with the LPP 5k
    assert is_irreducible_qpp(32, 2)
    assert not is_irreducible_qpp(8, 4)


def test_format_poly():
    assert format_poly((0, 1, 2, 8)) == "8k^3+2k^2+k"
    assert format_poly((3, 5)) == "5k+3"
    assert str(PermPoly(32, (0, 1, 0, 2))).startswith("2k^3+k")


def test_not_bijective_raises_with_collision():
    with pytest.raises(NotBijective) as exc:
        permutation_of(8, (0, 2))
    e = exc.value
    a, b = e.collision
    assert a != b and (2 * a) % 8 == (2 * b) % 8 == e.value


def test_perm_array_validation():
    with pytest.raises(ValueError):
        PermArray(4, (0, 0, 1, 2))
    assert PermArray.identity(5).table == (0, 1, 2, 3, 4)


@given(st.integers(2, 64).flatmap(lambda N: st.sampled_from([(N, p) for p in qpp_pairs(N)] or [None])))
def test_inverse_composes_to_identity(item):
    if item is None:
        return
    N, (f2, f1) = item
    p = permutation_of(N, (0, f1, f2))
    inv = invert_permutation(p)
    assert compose(p, inv).table == tuple(range(N))
    assert compose(inv, p).table == tuple(range(N))


def test_polynomial_inverse_example():
    inv = polynomial_inverses(PermPoly(32, (0, 1, 2, 8)), 2)
    assert {q.coeffs for q in inv} == {(0, 1, 6), (0, 17, 22)}
    p = permutation_of(32, (0, 1, 2, 8))
    for q in inv:
        assert compose(p, q.permutation()).table == tuple(range(32))


@pytest.mark.parametrize("N", [8, 16, 27, 32])
def test_polynomial_inverses_are_inverses(N):
    for f2, f1 in qpp_pairs(N)[:12]:
        p = permutation_of(N, (0, f1, f2))
        for q in polynomial_inverses(PermPoly(N, (0, f1, f2)), 3):
            assert compose(p, q.permutation()).table == tuple(range(N))


def test_cpp_enumeration_matches_brute_force():
    for N in range(2, 9):
        want = sum(
            brute_bijective(N, (f0, f1, f2, f3))
            for f3 in range(1, N)
            for f0, f1, f2 in itertools.product(range(N), repeat=3)
        )
        assert len(enumerate_cpps(N)) == want


def test_dedup_idempotent_and_sorted():
    polys = enumerate_qpps(16, include_f0=True)
    once = dedup_permutations(polys)
    twice = dedup_permutations(once)
    assert [p.table for p in once] == [p.table for p in twice]
    tables = [p.table for p in once]
    assert tables == sorted(tables) and len(set(tables)) == len(tables)


@given(st.integers(2, 40), st.lists(st.integers(0, 100), min_size=1, max_size=4))
def test_is_bijective_matches_brute(N, coeffs):
    assert is_bijective(N, coeffs) == brute_bijective(N, coeffs)


def test_perm_table_is_numpy_friendly():
    p = permutation_of(9, (0, 1, 3))
    assert np.array_equal(np.sort(np.asarray(p.table)), np.arange(9))
