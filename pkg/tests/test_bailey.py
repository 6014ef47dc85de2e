from __future__ import annotations

import dataclasses
import random

import pytest

from qbailey.bailey import (
    B_TO_INFINITY, BaileyError, BaileyPairSpec, LemmaSpec, LimitError, TransformSequences,
    alpha_limit_check, bailey_lemma_sides, bailey_transform_check, beta_formula_eval,
    beta_from_alpha, classical_table, lemma_cross_check, pentagonal_check, printed_variant,
    smpbp_alpha, smpbp_beta, standard_a_specs, verify_bailey_pair, verify_classical
)
from qbailey.bailey.pairs import resolve_pair
from qbailey.constants import Status
from qbailey.cyclo import ONE
from qbailey.monomial import INFINITY, Monomial
from qbailey.qproducts import PochFactor, poch_ratio
from qbailey.qseries import QSeries, series_equal_to_order
from qbailey.registry.spec import QuadForm

Q = Monomial(ONE, 1)
A_ONE = Monomial(ONE, 0)


def inverse_q_factorial(n: int, order: int) -> QSeries:
    return poch_ratio([PochFactor.of(Q, Q, n, -1)], order)


# Bailey pairs from the (d,e,k) family


def test_alpha_rogers_ramanujan() -> None:
    alpha = smpbp_alpha(BaileyPairSpec(1, 1, 2), 1, 10)
    assert series_equal_to_order(alpha, QSeries({1: -1, 2: -1}), 10)
    assert series_equal_to_order(smpbp_alpha(BaileyPairSpec(1, 1, 2), 0, 10), QSeries.one(), 10)


def test_alpha_vanishes_off_multiples_of_d() -> None:
    assert not smpbp_alpha(BaileyPairSpec(3, 1, 4), 2, 10).terms
    assert smpbp_alpha(BaileyPairSpec(3, 1, 4), 3, 30).terms


@pytest.mark.parametrize("a", ["1", "q", "3*q"])
def test_beta_rogers_ramanujan(a: str) -> None:
    a_spec = Q if a == "q" else A_ONE if a == "1" else Monomial(3, 1)
    p = BaileyPairSpec(1, 1, 2, a_spec)
    for n in range(9):
        assert series_equal_to_order(smpbp_beta(p, n, 15), inverse_q_factorial(n, 15), 15)


def test_beta_of_unit_alpha() -> None:
    # alpha = delta_(n,0) gives beta_n = 1/((q;q)_n (aq;q)_n)
    unit = lambda s, o: QSeries.one(o) if s == 0 else QSeries.zero(o)
    beta = beta_from_alpha(unit, Q, 1, 2, 12)
    expected = poch_ratio(
        [PochFactor.of(Q, Q, 2, -1), PochFactor.of(Monomial(ONE, 2), Q, 2, -1)], 12
    )
    assert series_equal_to_order(beta, expected, 12)


def test_pair_spec_errors() -> None:
    with pytest.raises(BaileyError):
        BaileyPairSpec(0, 1, 2)
    with pytest.raises(BaileyError):
        BaileyPairSpec(1, 1, 2, A_ONE, Monomial(0, 1))
    with pytest.raises(BaileyError):
        smpbp_alpha(BaileyPairSpec(1, 1, 2), -1, 10)
    with pytest.raises(BaileyError):
        smpbp_beta(BaileyPairSpec(1, 1, 2), 2, float("inf"))
    assert str(BaileyPairSpec(1, 1, 2, Q, B_TO_INFINITY)) == "(1,1,2) a=q b=inf"


@pytest.mark.parametrize("dek", [(1, 1, 2), (2, 1, 3), (1, 2, 3)])
def test_alpha_limits_agree(dek) -> None:
    assert alpha_limit_check(*dek, Q, 6, 15).passed
    with pytest.raises(BaileyError):
        alpha_limit_check(dek[0], dek[1], 1, Q, 4, 15)


# Registered closed forms


def test_standard_a_specs() -> None:
    assert standard_a_specs() == (A_ONE, Q, Monomial(ONE, 2), Monomial(3, 1))


@pytest.mark.parametrize("p_id", ["BP123", "BP142", "BP215", "BP417"])
def test_closed_forms(bailey_pairs, p_id: str) -> None:
    report = verify_bailey_pair(p_id, n_max=4, order=15, pairs=bailey_pairs)
    assert report.passed, report.first_failure
    assert len(report.checks) == 4 * 5
    assert "millis" not in report.to_dict(timing=False)


@pytest.mark.parametrize("p_id", ["BP133", "BP337"])
def test_printed_forms_fail(bailey_pairs, p_id: str) -> None:
    printed = printed_variant(resolve_pair(p_id, bailey_pairs))
    assert printed is not None
    assert printed.dek == resolve_pair(p_id, bailey_pairs).dek
    report = verify_bailey_pair(printed, n_max=3, order=12)
    assert report.status == Status.FAIL
    assert report.first_failure.first_mismatch is not None


def test_corrupted_exponent_fails(bailey_pairs) -> None:
    pair = resolve_pair("BP223", bailey_pairs)
    term = dataclasses.replace(pair.term, exponent=QuadForm.parse("2nr+1"))
    report = verify_bailey_pair(dataclasses.replace(pair, term=term), [A_ONE], n_max=1, order=10)
    assert not report.passed
    assert report.checks[0].status == Status.FAIL


def test_pairs_without_typos(bailey_pairs) -> None:
    assert printed_variant(resolve_pair("BP123", bailey_pairs)) is None
    with pytest.raises(BaileyError):
        beta_formula_eval("BP123", A_ONE, -1, 10, bailey_pairs)


# Bailey transform


def random_series(rng: random.Random, low: int = 0) -> QSeries:
    return QSeries({e: rng.randint(-3, 3) for e in range(low, low + 5)})


def test_transform_with_indicator_delta() -> None:
    alpha = [QSeries({0: 1, 1: 2}), QSeries({1: 1}), QSeries({2: 1}), QSeries({3: 1})]
    s = TransformSequences.canonical(alpha, [QSeries.one()])
    check = bailey_transform_check(s, 3, 20)
    assert check.equal
    assert series_equal_to_order(check.lhs, alpha[0], 20)


@pytest.mark.parametrize("seed", range(50))
def test_transform_with_random_sequences(seed: int) -> None:
    rng = random.Random(seed)
    support = rng.randint(1, 6)
    alpha = [random_series(rng, -1) for _ in range(support)]
    delta = [random_series(rng) for _ in range(support)]
    a_spec = rng.choice([A_ONE, Q, Monomial(3, 1)])
    s = TransformSequences.canonical(alpha, delta, a_spec)
    assert bailey_transform_check(s, support - 1, 30).equal


def test_transform_with_negative_valuations() -> None:
    alpha = [QSeries({-2: 1, 0: 1}), QSeries({-1: 3}), QSeries({-3: -1, 1: 2})]
    delta = [QSeries({0: 1}), QSeries({-1: 2, 1: 1}), QSeries({2: 1})]
    check = bailey_transform_check(TransformSequences.canonical(alpha, delta, Q), 2, 20)
    assert check.equal
    assert check.lhs.order == 20


def test_transform_with_zero_alpha() -> None:
    s = TransformSequences.canonical([], [QSeries({0: 1, 2: 5})] * 3)
    check = bailey_transform_check(s, 2, 20)
    assert check.equal
    assert not check.lhs.terms


def test_transform_errors() -> None:
    with pytest.raises(BaileyError):
        bailey_transform_check(TransformSequences.canonical([], []), 2, float("inf"))
    delta = [QSeries.zero(), QSeries.zero(), QSeries.one()]
    with pytest.raises(BaileyError):
        bailey_transform_check(TransformSequences.canonical([], delta), 1, 10)


# Bailey lemma


def test_lemma_with_finite_parameters() -> None:
    L = LemmaSpec(Q, Q, 3, order=20)
    assert bailey_lemma_sides((1, 1, 2), Q, L).compare(20).equal


def test_lemma_with_one_parameter() -> None:
    L = LemmaSpec(Monomial(-1, 1), INFINITY, order=20)
    sides = bailey_lemma_sides(BaileyPairSpec(1, 1, 2, Q), Q, L)
    assert sides.compare(20).equal


def test_lemma_spec_errors() -> None:
    with pytest.raises(BaileyError):
        LemmaSpec(order=float("inf"))
    with pytest.raises(BaileyError):
        LemmaSpec(N=-1)
    with pytest.raises(BaileyError):
        LemmaSpec(Monomial(0, 1))
    # aq/rho must have a positive exponent when N is infinite
    with pytest.raises(LimitError):
        bailey_lemma_sides((1, 1, 2), A_ONE, LemmaSpec(Monomial(ONE, 2), order=10))


@pytest.mark.parametrize(
    "i_id", ["RRa1", "RRa2", "ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "ATNS123", "ATNS225"]
)
def test_lemma_reproduces_identity(identities, bailey_pairs, i_id: str) -> None:
    identity = next(i for i in identities if i.id == i_id)
    check = lemma_cross_check(identity, 20, pairs=bailey_pairs)
    assert check.passed, (check.lhs, check.rhs, check.balance)


# Classical pairs


def test_classical_rogers_ramanujan() -> None:
    check = verify_classical((1, 1, 2), order=30)
    assert check.passed
    assert check.fit == (5, (1, 0, 0, 1, 0))
    assert check.to_dict()["product"] == "(q,q^4;q^5)_{inf}^(-1)"
    assert "Rogers-Ramanujan" in check.families


def test_classical_table() -> None:
    table = classical_table()
    assert (3, 1, 4) in table
    table.clear()
    assert classical_table()


def test_pentagonal_number_theorem() -> None:
    assert pentagonal_check(30).equal
