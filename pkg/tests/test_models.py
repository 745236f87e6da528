import pytest

from gen import random_hoca, random_lca, random_pnuca, rng
from hoca_lab.laurent import LaurentPoly as P
from hoca_lab.lmatrix import FrobeniusSpec, LaurentMatrix, ShapeError, frobenius_to_matrix, mat_pow
from hoca_lab.models import (
    HocaRule,
    LcaRule,
    PnuCaRule,
    RuleError,
    coeffs_1d,
    fps_to_lca,
    frobenius_to_hoca,
    frobenius_to_lca,
    hoca_to_frobenius,
    lca_1d,
    lca_to_fps,
    lca_to_frobenius,
    pnuca_to_lca,
    rule_from_json,
    rule_to_matrix,
)


def test_hoca_memory_one_is_plain_lca():
    h = HocaRule(5, 1, 1, [[2, 3, 4]])
    assert hoca_to_frobenius(h).row == (P(5, {1: 2, 0: 3, -1: 4}),)


def test_hoca_all_ones():
    h = HocaRule(2, 2, 1, [[1, 1, 1], [1, 1, 1]])
    full = P(2, {-1: 1, 0: 1, 1: 1})
    assert hoca_to_frobenius(h).row == (full, full)


def test_hoca_recall():
    h = HocaRule(2, 2, 0, [[1], [0]])
    f = hoca_to_frobenius(h)
    assert f.row == (P.const(2, 1), P(2))
    assert mat_pow(frobenius_to_matrix(f), 2) == LaurentMatrix.identity(2, 2)


def test_hoca_round_trip():
    r = rng("hoca-rt")
    for _ in range(50):
        h = random_hoca(r, r.randint(2, 9), r.randint(1, 4), r.randint(0, 3))
        back = frobenius_to_hoca(hoca_to_frobenius(h))
        assert back == h.canonical()
        assert frobenius_to_hoca(hoca_to_frobenius(h), radius=h.radius) == h
        assert HocaRule.from_json(h.to_json()) == h


def test_hoca_rejects_bad_tables():
    with pytest.raises(RuleError):
        HocaRule(4, 2, 1, [[1, 2, 3]])
    with pytest.raises(RuleError):
        frobenius_to_hoca(FrobeniusSpec(3, (P(3, {2: 1}),)), radius=1)


def test_rule90_fps():
    assert lca_to_fps(lca_1d(2, [1, 0, 1])) == LaurentMatrix(2, [[P(2, {-1: 1, 1: 1})]])


def test_radius_zero_is_constant():
    rule = LcaRule(6, 2, 0, [[[1, 2], [3, 4]]])
    assert lca_to_fps(rule) == LaurentMatrix.from_ints(6, [[1, 2], [3, 4]])


def test_shift_sign_convention():
    # reading the right neighbour moves content to the left: P_c(X) is multiplied by X^-1
    shift = lca_1d(3, [0, 0, 1])
    assert lca_to_fps(shift) == LaurentMatrix(3, [[P(3, {-1: 1})]])


def test_lca_fps_is_linear():
    r = rng("lin")
    for _ in range(30):
        m, n, rad = r.randint(2, 9), r.randint(1, 3), r.randint(0, 2)
        a, b = random_lca(r, m, n, rad), random_lca(r, m, n, rad)
        summed = LcaRule(
            m,
            n,
            rad,
            [[[x + y for x, y in zip(ra, rb)] for ra, rb in zip(ma, mb)] for ma, mb in zip(a.matrices, b.matrices)],
        )
        assert lca_to_fps(summed) == lca_to_fps(a) + lca_to_fps(b)


def test_fps_lca_round_trip():
    r = rng("fps-rt")
    for _ in range(30):
        rule = random_lca(r, r.randint(2, 9), r.randint(1, 3), r.randint(0, 2))
        assert fps_to_lca(lca_to_fps(rule), radius=rule.radius) == rule
        assert LcaRule.from_json(rule.to_json()) == rule


def test_hoca_commuting_diagram():
    r = rng("diagram")
    for _ in range(30):
        h = random_hoca(r, r.randint(2, 8), r.randint(1, 4), r.randint(0, 2))
        f = hoca_to_frobenius(h)
        assert lca_to_fps(frobenius_to_lca(f)) == frobenius_to_matrix(f)
        assert lca_to_frobenius(frobenius_to_lca(f)) == f


def test_lca_to_frobenius_rejects_other_shapes():
    with pytest.raises(ShapeError):
        lca_to_frobenius(LcaRule(2, 2, 0, [[[1, 0], [0, 1]]]))


def test_pnuca_period_two():
    rule = PnuCaRule(2, 2, 1, [[1, 0, 0], [0, 0, 1]])
    lca, conj = pnuca_to_lca(rule)
    assert (lca.n, lca.radius, conj.block) == (2, 1, 2)
    assert lca.matrix(-1) == ((0, 1), (0, 0))
    assert lca.matrix(0) == ((0, 0), (0, 0))
    assert lca.matrix(1) == ((0, 0), (1, 0))


def test_pnuca_degenerate_cases():
    uniform = PnuCaRule(5, 1, 2, [[1, 2, 3, 4, 0]])
    lca, _ = pnuca_to_lca(uniform)
    assert coeffs_1d(lca) == [1, 2, 3, 4, 0]
    lca, _ = pnuca_to_lca(PnuCaRule(7, 2, 0, [[3], [5]]))
    assert lca.radius == 0 and lca.matrix(0) == ((3, 0), (0, 5))


def test_pnuca_radius_is_ceiling():
    r = rng("pnuca-s")
    for _ in range(20):
        period, rad = r.randint(1, 4), r.randint(0, 3)
        lca, _ = pnuca_to_lca(random_pnuca(r, 3, period, rad))
        assert lca.radius == -(-rad // period)


def test_rule_from_json_dispatch():
    r = rng("json")
    rules = [
        random_hoca(r, 4, 2, 1),
        random_lca(r, 4, 2, 1),
        random_pnuca(r, 4, 3, 1),
        hoca_to_frobenius(random_hoca(r, 4, 3, 1)),
    ]
    for rule in rules:
        assert rule_from_json(rule.to_json()) == rule
        assert rule_to_matrix(rule).m == 4
    with pytest.raises(RuleError):
        rule_from_json({"kind": "nope"})
