"""End-to-end acceptance checks, one ``criterion`` marker per requirement.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import csv
import io
import math

import numpy as np
import pytest

from ppzc.census import unrank_multiset
from ppzc.cli import main
from ppzc.corr import batch_max_sidelobe, is_cazac, pacf, zac_via_dft
from ppzc.equiv import sequences_equal, squares_congruent, uniqueness_fraction
from ppzc.numth import units
from ppzc.orthoset import (
    build_ortho_graph,
    certify,
    max_clique,
    max_orthogonal_set,
    zero_lag_crosscorr,
)
from ppzc.permpoly import PermPoly, is_qpp_valid, permutation_of, polynomial_inverses, qpp_pairs
from ppzc.theory import (
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_lemma4,
    theorem1_tc,
)
from ppzc.zcseq import (
    frank_phases,
    gcl_modulation,
    interleave,
    interleaved_zc,
    modulation_period,
    qpp_interleave_batch,
    zc_phases,
)

TOL = 1e-9
EXAMPLE6 = [(2, 1), (2, 3), (2, 17), (2, 19)]


def read_csv(path):
    return list(csv.DictReader(io.StringIO(path.read_text())))


# -- 1 -------------------------------------------------------------------------

TABLE1 = {
    3: (12, 6, 6, 6),
    4: (16, 8, 8, 8),
    5: (100, 100, 20, 40),
    6: (120, 12, 12, 24),
    7: (0, 0, 0, 168),
    8: (384, 128, 128, 256),
    9: (810, 324, 324, 2592),
    10: (880, 240, 80, 320),
    11: (1210, 1210, 0, 1760),
    12: (480, 48, 48, 6912),
}
TABLE1_COLS = ["total_cpps", "unique_cpp_perms", "cpp_cazac_perms", "cazac_perms"]


@pytest.mark.criterion(1, "CPP and permutation census counts, N=3..12")
@pytest.mark.parametrize("span", ["3..10", "11..12"])
def test_table1(tmp_path, span):
    out = tmp_path / "table1.csv"
    assert main(["report", "table1", "--N", span, "--workers", "1", "--out", str(out)]) == 0
    got = {int(r["N"]): tuple(int(r[c]) for c in TABLE1_COLS) for r in read_csv(out)}
    lo, hi = (int(v) for v in span.split(".."))
    assert got == {N: TABLE1[N] for N in range(lo, hi + 1)}


# -- 2, 3 ----------------------------------------------------------------------


def _qpp_sweep(inverse: bool):
    failures = []
    for N in range(2, 65):
        pairs = qpp_pairs(N)
        if not pairs:
            continue
        perms = [permutation_of(N, (0, f1, f2)).table for f2, f1 in pairs]
        if inverse:
            perms = [tuple(np.argsort(t)) for t in perms]
        perms = np.asarray(perms, dtype=np.int64)
        for u in units(N):
            for q in (0, 1):
                x = zc_phases(N, u, q).as_array()
                worst = batch_max_sidelobe(x[perms], N)
                for i in np.nonzero(worst > TOL)[0]:
                    failures.append((N, u, q, pairs[i], float(worst[i])))
    return failures


@pytest.mark.slow
@pytest.mark.criterion(2, "every QPP interleave is CAZAC (N<=64, all u, q in {0,1})")
def test_qpp_interleave_sweep():
    assert _qpp_sweep(inverse=False) == []


@pytest.mark.slow
@pytest.mark.criterion(3, "every inverse-QPP interleave is CAZAC (N<=64, all u, q in {0,1})")
def test_inverse_qpp_interleave_sweep():
    assert _qpp_sweep(inverse=True) == []


# -- 4 -------------------------------------------------------------------------


@pytest.mark.criterion(4, "polynomial inverses of two CPPs mod 32; both interleaves CAZAC")
def test_cpp_inverses_mod32():
    p = PermPoly(32, (0, 1, 2, 8))
    got = {q.coeffs for q in polynomial_inverses(p, 2)}
    assert got == {(0, 1, 6), (0, 17, 22)}

    p = PermPoly(32, (0, 1, 0, 2))
    got = {q.coeffs for q in polynomial_inverses(p, 3)}
    assert got == {(0, 17, 0, 10), (0, 1, 16, 10), (0, 1, 0, 26), (0, 17, 16, 26)}

    for coeffs in [(0, 1, 2, 8), (0, 1, 0, 2)]:
        assert is_cazac(interleaved_zc(32, 1, 0, PermPoly(32, coeffs)))


# -- 5 -------------------------------------------------------------------------


@pytest.mark.criterion(5, "uniqueness fraction anchors")
def test_uniqueness_n8():
    s = uniqueness_fraction(8, 1)
    assert (s.unique_count, s.qpp_total) == (8, 12)
    unreachable = {pair for pair, unique, _ in s.per_qpp if unique}
    assert unreachable == {(f2, f1) for f2 in (2, 6) for f1 in (1, 3, 5, 7)}


@pytest.mark.criterion(5, "uniqueness fraction anchors")
@pytest.mark.parametrize("N", [25, 49, 121, 125])
def test_uniqueness_all_unique(N):
    assert uniqueness_fraction(N, 1).fraction == 1


@pytest.mark.criterion(5, "uniqueness fraction anchors")
@pytest.mark.parametrize("N", [9, 18, 36, 45, 63, 90, 99, 117, 126])
def test_uniqueness_none_unique(N):
    assert uniqueness_fraction(N, 1).fraction == 0


@pytest.mark.slow
@pytest.mark.criterion(5, "uniqueness fraction anchors")
def test_uniqueness_full_sweep_in_unit_interval(tmp_path):
    out = tmp_path / "fig1.csv"
    assert main(["report", "fig1", "--N", "2..128", "--workers", "1", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows
    assert all(0.0 <= float(r["fraction"]) <= 1.0 for r in rows)


# -- 6 -------------------------------------------------------------------------


@pytest.mark.criterion(6, "orthogonal sets")
@pytest.mark.parametrize("N,expected", [(25, 15), (81, 16)])
def test_orthoset_sizes(N, expected):
    res = max_orthogonal_set(build_ortho_graph(N))
    assert res.certificate <= TOL
    assert res.size == expected


@pytest.mark.criterion(6, "orthogonal sets")
def test_orthoset_example_n32():
    g = build_ortho_graph(32)
    idx = [g.qpps.index(p) for p in EXAMPLE6]
    adj = g.adjacency
    assert all(adj[i, j] for i in idx for j in idx if i != j)
    assert certify(g.phases[idx], 32) <= TOL
    clique, complete = max_clique(adj)
    assert complete and len(clique) == 4


@pytest.mark.criterion(6, "orthogonal sets")
def test_orthoset_n98_no_edges():
    assert build_ortho_graph(98).edges() == []


@pytest.mark.criterion(6, "orthogonal sets")
@pytest.mark.parametrize("N", [4, 8, 16, 32, 64, 128])
def test_power_of_two_pair_orthogonal(N):
    w0 = gcl_modulation(N, 1, 0, PermPoly(N, (0, 1, 2)))
    w1 = gcl_modulation(N, 1, 0, PermPoly(N, (0, N // 2 + 1, 2)))
    assert zero_lag_crosscorr(w0, w1) <= 1e-12


@pytest.mark.slow
@pytest.mark.criterion(6, "orthogonal sets")
def test_orthoset_below_n_everywhere(tmp_path):
    out = tmp_path / "orthoset.csv"
    assert main(["orthoset", "--N", "2..128", "--workers", "1", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 127
    assert all(int(r["I"]) < int(r["N"]) and r["complete"] == "1" for r in rows)


# -- 7 -------------------------------------------------------------------------

_h = 1 / math.sqrt(2)
_a, _b, _c, _d = _h - 1j * _h, _h + 1j * _h, -_h + 1j * _h, -_h - 1j * _h
MODULATIONS = {
    (2, 1): [1, _a, -1, 1j, 1, _b, -1, -1, 1, _c, -1, -1j, 1, _d, -1, 1],
    (2, 3): [1, _d, 1, -1j, 1, _c, 1, -1, 1, _b, 1, 1j, 1, _a, 1, 1],
    (2, 17): [1, _c, -1, -1j, 1, _d, -1, 1, 1, _a, -1, 1j, 1, _b, -1, -1],
    (2, 19): [1, _b, 1, 1j, 1, _a, 1, 1, 1, _d, 1, -1j, 1, _c, 1, -1],
}


@pytest.mark.criterion(7, "modulation sequences of the N=32 orthogonal set")
@pytest.mark.parametrize("pair", EXAMPLE6)
def test_modulation_sequences_n32(pair):
    f2, f1 = pair
    w = gcl_modulation(32, 1, 0, PermPoly(32, (0, f1, f2)))
    expected = np.asarray(MODULATIONS[pair] * 2, dtype=complex)
    assert np.max(np.abs(w.values() - expected)) <= 1e-12
    assert modulation_period(w).period == 16


# -- 8 -------------------------------------------------------------------------


@pytest.mark.criterion(8, "distinct QPPs with equal interleaves at N=8")
def test_equal_interleaves_n8():
    p0, p1 = permutation_of(8, (0, 1, 2)), permutation_of(8, (0, 3, 2))
    assert p0.table != p1.table
    assert squares_congruent(p0, p1)
    x = zc_phases(8)
    assert sequences_equal(interleave(x, p0), interleave(x, p1))


# -- 9 -------------------------------------------------------------------------


@pytest.mark.slow
@pytest.mark.criterion(9, "lemma and CAZAC-shift sweeps, N<=64")
def test_lemma_sweeps():
    bad = []
    for N in range(2, 65):
        us = units(N)
        for f2, f1 in qpp_pairs(N):
            special = N % 4 == 2 and f2 % 2 == 1
            for d in range(1, N):
                for alpha in range(1, N + 1):
                    if (special and d % 2 == 0) or not special:
                        if not check_lemma1(N, f2, f1, d, alpha):
                            bad.append(("lemma1", N, f2, f1, d, alpha))
                if special:
                    if not check_lemma3(N, f2, f1, d):
                        bad.append(("lemma3", N, f2, f1, d))
                elif not check_lemma2(N, f2, f1, d):
                    bad.append(("lemma2", N, f2, f1, d))
            for u in us:
                if not check_lemma4(N, u, f2):
                    bad.append(("lemma4", N, u, f2))
    assert bad == []


@pytest.mark.slow
@pytest.mark.criterion(9, "lemma and CAZAC-shift sweeps, N<=64")
def test_theorem1_sweep():
    bad = []
    for N in range(2, 65):
        us = units(N)
        for f2, f1 in qpp_pairs(N):
            for d in range(1, N):
                for u in us:
                    try:
                        theorem1_tc(N, u, f2, f1, d)
                    except AssertionError as exc:
                        bad.append(str(exc))
    assert bad == []


# -- 10 ------------------------------------------------------------------------


@pytest.mark.criterion(10, "DFT and direct PACF verdicts agree on 1000 permutations of zc(16)")
def test_dft_agrees_with_pacf():
    x = zc_phases(16, 1, 0)
    step = math.factorial(16) // 1000
    disagree = []
    for i in range(1000):
        perm = unrank_multiset(list(range(16)), i * step)
        y = interleave(x, perm)
        if zac_via_dft(y, TOL)[0] != pacf(y, TOL)[1].is_cazac:
            disagree.append(i)
    assert disagree == []


# -- 11 ------------------------------------------------------------------------


@pytest.mark.criterion(11, "QPP-interleaved Frank sequences are CAZAC, m=2..8")
@pytest.mark.parametrize("m", range(2, 9))
def test_frank_qpp_interleaves(m):
    N = m * m
    pairs = qpp_pairs(N)
    assert pairs
    x = frank_phases(m).as_array()
    perms = np.asarray([permutation_of(N, (0, f1, f2)).table for f2, f1 in pairs])
    worst = batch_max_sidelobe(x[perms], N)
    assert np.all(worst <= TOL), [pairs[i] for i in np.nonzero(worst > TOL)[0]]


# -- 12 ------------------------------------------------------------------------


@pytest.mark.slow
@pytest.mark.criterion(12, "CSV output identical for 1 and 8 workers")
@pytest.mark.parametrize(
    "argv",
    [
        ["report", "table1", "--N", "3..10"],
        ["report", "fig1", "--N", "2..128"],
        ["orthoset", "--N", "2..128"],
    ],
    ids=["table1", "fig1", "orthoset"],
)
def test_worker_count_determinism(tmp_path, argv):
    outs = []
    for workers in (1, 8):
        out = tmp_path / f"w{workers}.csv"
        assert main(argv + ["--workers", str(workers), "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
