import numpy as np
import pytest

from quhadamard.signmatrix import (PairClassification, PairKind, QubStatus, RuledOutReason,
                                   SignMatrix, SignMatrixError, check_mutual, classify_pair,
                                   feasible_qub_params, feasible_weak_params, is_hadamard,
                                   is_weighing, kronecker_qub, m_construction, negate_first_column,
                                   normalize, is_normalized, parse_matrix, random_monomial, sylvester)
from quhadamard import search


def test_order_two_hadamard():
    assert is_hadamard(SignMatrix(np.array([[1, 1], [1, -1]])))


def test_non_hadamard_rejected():
    m = np.ones((4, 4), dtype=np.int8)
    assert not is_hadamard(SignMatrix(m))


def test_hadamard_is_full_weight_weighing(h12):
    assert is_weighing(h12, 12)


def test_figure_pair_gives_weighing_matrix(h12, k12):
    p = h12.as_int() @ k12.as_int().T
    assert np.all(p % 4 == 0)
    assert is_weighing(SignMatrix(p // 4), 9)


def test_figure_pair_classification(h12, k12):
    assert classify_pair(h12, k12) == PairClassification.qub(9, 16)


@pytest.mark.parametrize("name", ["K24_1", "K24_3", "K24_4", "H24_2", "H20_1", "H12", "K12"])
def test_bundled_matrices_are_hadamard(name):
    assert is_hadamard(search.fixture_matrix(name))


def test_parse_rejects_ragged():
    with pytest.raises(SignMatrixError):
        parse_matrix("++\n+\n")


def test_parse_rejects_bad_char():
    with pytest.raises(SignMatrixError):
        parse_matrix("+x\n++\n")


def test_unequal_orders_not_a_pair(h8, h12):
    assert classify_pair(h8, h12).kind == PairKind.NotHadamardPair


def test_same_matrix_is_unbiased_only_trivially(h8):
    c = classify_pair(h8, h8)
    assert c == PairClassification.qub(1, 64)


def test_negated_first_column_is_weak(h8):
    c = classify_pair(h8, negate_first_column(h8))
    assert c.kind == PairKind.WeaklyUnbiased
    assert c.sigma == (2, 6) and c.n_a == 7


def test_normalize(h12):
    rng = np.random.default_rng(3)
    m = random_monomial(12, rng)
    h = SignMatrix(h12.as_int() @ m)
    assert is_normalized(normalize(h))
    assert is_hadamard(normalize(h))


def test_monomial_invariance_of_classification(h12, k12):
    rng = np.random.default_rng(11)
    base = classify_pair(h12, k12)
    for _ in range(1000):
        p, q = random_monomial(12, rng), random_monomial(12, rng)
        # H -> P H Q, K -> R K Q keeps |H K^T| entries up to row/column moves
        r = random_monomial(12, rng)
        c = classify_pair(SignMatrix(p @ h12.as_int() @ q), SignMatrix(r @ k12.as_int() @ q))
        assert c == base


def test_kronecker_of_qub_families(h12, k12):
    h2 = sylvester(2)
    out = kronecker_qub([h12, k12], [h2, h2])
    assert all(is_hadamard(m) for m in out)
    assert classify_pair(*out) == PairClassification.qub(9, 64)


def test_m_construction_is_hadamard(h8):
    m = m_construction(h8, sylvester(4))
    assert m.order == 16 and is_hadamard(m)


def test_m_construction_rejects_non_hadamard():
    with pytest.raises(SignMatrixError):
        m_construction(SignMatrix(np.ones((4, 4), dtype=np.int8)), sylvester(4))


# feasibility

def _table1():
    return {
        4: [(4, 4, False)], 8: [(4, 16, False)], 12: [(4, 36, True), (9, 16, False)],
        16: [(4, 64, False), (16, 16, False)], 20: [(4, 100, True)],
        24: [(4, 144, False), (9, 64, False), (16, 36, True)], 28: [(4, 196, True)],
        32: [(4, 256, False), (16, 64, False)], 36: [(4, 324, True), (9, 144, False), (36, 36, False)],
        40: [(4, 400, False), (16, 100, True), (25, 64, False)], 44: [(4, 484, True)],
        48: [(4, 576, False), (9, 256, False), (16, 144, False), (36, 64, False)],
    }


@pytest.mark.parametrize("n", range(4, 49, 4))
def test_qub_params_match_published_table(n):
    got = sorted((p.l, p.a, p.status is QubStatus.RuledOut) for p in feasible_qub_params(n) if p.l > 1)
    assert got == _table1()[n]


def test_unbiased_order_never_ruled_out():
    for n in (4, 16, 36, 64, 100):
        ps = [p for p in feasible_qub_params(n) if p.l == n]
        assert ps and ps[0].status is QubStatus.Open


def test_ruled_out_reasons():
    reasons = {(p.l, p.a): p.reason for p in feasible_qub_params(12)}
    assert reasons[(4, 36)] is RuledOutReason.Mod8Corollary
    assert {p.reason for p in feasible_qub_params(20) if p.l > 1} == {RuledOutReason.FourPrimeCorollary}


def test_bad_order_raises():
    with pytest.raises(ValueError):
        feasible_qub_params(10)


def test_weak_params_satisfy_row_equation():
    for n in range(8, 200, 4):
        for mod in (0, 2):
            for a, b, na in feasible_weak_params(n, mod):
                assert a * a * na + b * b * (n - na) == n * n
                assert a % 4 == mod and b % 4 == mod


def test_weak_params_28():
    assert feasible_weak_params(28, 2) == [(2, 6, 7), (2, 10, 21), (2, 26, 27)]


# no third matrix: every mate of H8 with the same pair of values is tried

def test_no_weak_triple_among_mates_of_h8(h8):
    from quhadamard.clique import build_mate_graph, iter_mates
    k = negate_first_column(h8)
    want = classify_pair(h8, k)
    g = build_mate_graph(h8, (2, 6))
    tried = 0
    for cl in iter_mates(g):
        third = g.matrix(cl)
        if classify_pair(h8, third).kind != PairKind.WeaklyUnbiased:
            continue
        tried += 1
        assert not check_mutual([h8, k, third], PairClassification.weak(2, 6))
    assert tried > 0 and want.sigma == (2, 6)


def test_no_weak_triple_among_column_negations(h12):
    # weakly unbiased mates built by negating single columns of normalized H12
    base = normalize(h12).as_int()
    mates = []
    for j in range(12):
        a = base.copy()
        a[:, j] *= -1
        mates.append(SignMatrix(a))
    pair = classify_pair(normalize(h12), mates[0])
    assert pair.kind == PairKind.WeaklyUnbiased
    for i in range(12):
        for j in range(i + 1, 12):
            assert not check_mutual([normalize(h12), mates[i], mates[j]], pair)


@pytest.mark.parametrize("korder,a", [(4, 64), (8, 256)])
def test_m_construction_family_parameters(h12, k12, korder, a):
    # the claim is checked on instances: (l, a) -> (l, 4 a n^2) for K of order 4n
    ms = [m_construction(x, sylvester(korder)) for x in (normalize(h12), k12)]
    assert all(is_hadamard(m) for m in ms)
    assert classify_pair(*ms) == PairClassification.qub(9, a)


def test_classification_symmetric(h12, k12):
    assert classify_pair(h12, k12) == classify_pair(k12, h12)
    h = sylvester(8)
    assert classify_pair(h, negate_first_column(h)) == classify_pair(negate_first_column(h), h)


def test_weak_row_equation_on_classified_pairs(h8):
    c = classify_pair(h8, negate_first_column(h8))
    a, b = c.sigma
    assert a * a * c.n_a + b * b * (8 - c.n_a) == 64


def test_unbiased_reported_as_qub():
    h = sylvester(4)
    k = SignMatrix(np.array([[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]]))
    assert classify_pair(h, k) == PairClassification.qub(4, 4)


def test_kronecker_parameters_multiply(h12, k12):
    h4 = sylvester(4)
    k4 = SignMatrix(np.array([[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]]))
    out = kronecker_qub([h12, k12], [h4, k4])
    assert out[0].order == 48
    assert classify_pair(*out) == PairClassification.qub(9 * 4, 16 * 4)


def test_irregular_has_diagnostic(h12):
    k = normalize(h12).as_int().copy()
    k[:, [0, 1]] = k[:, [1, 0]]
    k[:, 2] *= -1
    c = classify_pair(normalize(h12), SignMatrix(k))
    assert c.kind == PairKind.Irregular
    assert c.diagnostic == {"abs_counts": {2: 120, 6: 18, 10: 6}}
