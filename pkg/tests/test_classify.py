from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ryser.classify import (
    Tri,
    Verdict,
    bounds_report,
    classify,
    necessary_condition,
    two_block_classify,
    two_block_verdict,
    type1_by_D,
    type1_by_columns,
    type1_by_sizes,
    unique_block_check,
)
from ryser.params import RyserProfile


def synthetic(**kw):
    base = dict(v=7, lam=2, r1=5, r2=3, e1=3, e2=4, rho=Fraction(2), c=2, d=1, g=2, a=1,
                D=0, x=1, y=1)
    base.update(kw)
    return RyserProfile(**base)


def by_name(report, prefix):
    return [c for c in report if c.name.startswith(prefix)]


def test_type1_by_columns(fano_star, biplane_star, fano):
    assert type1_by_columns(fano_star[0]) is Tri.YES
    assert type1_by_columns(biplane_star[0]) is Tri.YES
    assert type1_by_columns(fano) is Tri.NOT_APPLICABLE
    assert type1_by_sizes([4, 4, 5, 5]) is Tri.NO
    assert type1_by_sizes([3, 4, 5, 4]) is Tri.NO
    assert type1_by_sizes([3, 4, 4, 4]) is Tri.YES


def test_type1_by_D(fano_star, pg23_star):
    assert type1_by_D(fano_star[1])
    assert type1_by_D(pg23_star[1])
    assert not type1_by_D(synthetic(D=2))
    assert type1_by_D(synthetic(D=-1))


@pytest.mark.parametrize(
    "v, lam, r, D, sq, s",
    [(7, 2, 2, 0, 9, 3), (13, 3, 6, 0, 49, 7), (11, 3, 2, 0, 25, 5)],
)
def test_necessary_condition_examples(v, lam, r, D, sq, s):
    nc = necessary_condition(v, lam, r, D)
    assert nc.sq_value == sq
    assert nc.root == s and nc.is_square
    assert nc.v_formula_ok
    assert nc.special_is_square
    assert nc.ok


def test_necessary_condition_rejects_wrong_v():
    assert not necessary_condition(8, 2, 2, 0).v_formula_ok
    nc = necessary_condition(7, 2, 3, 0)  # 9 + 4 - 1 = 12
    assert not nc.is_square and not nc.ok


def test_necessary_condition_negative_value():
    nc = necessary_condition(7, 1, 1, 2)  # 1 + 0 - 8 - 1 < 0
    assert nc.sq_value < 0
    assert not nc.is_square


@given(st.integers(2, 30), st.integers(1, 40), st.integers(-29, 28))
def test_necessary_condition_accepts_both_roots(lam, r, D):
    nc = necessary_condition(0, lam, r, D)
    if not nc.is_square:
        return
    for v in (2 * lam - nc.root, 2 * lam + nc.root):
        assert necessary_condition(v, lam, r, D).v_formula_ok
    assert not necessary_condition(2 * lam + nc.root + 1, lam, r, D).v_formula_ok


@given(st.integers(1, 40), st.integers(1, 60))
def test_specialized_squares_agree_with_general(lam, r):
    for D in (0, -1):
        nc = necessary_condition(0, lam, r, D)
        assert nc.special_value == nc.sq_value
        assert nc.special_is_square == nc.is_square


def test_bounds_fano_star(fano_star):
    S, P = fano_star
    report = bounds_report(P, S)
    assert all(c.ok for c in report)
    # both conjectured bounds are tight at v = 7, lambda = 2
    assert 4 * P.lam - 1 == P.v == P.lam ** 2 + P.lam + 1
    assert P.e2 - P.e1 == 2 * P.D + 1
    assert by_name(report, "D<=-1")[0].applicable is False
    assert len(by_name(report, "small block")) == 1


def test_bounds_biplane_star(biplane_star):
    S, P = biplane_star
    report = bounds_report(P, S)
    assert all(c.ok for c in report)
    assert P.v <= P.lam ** 2 + P.lam + 1 and P.v == 4 * P.lam - 1
    assert Fraction(3, 2) <= P.rho <= 3


def test_bounds_pg23_star(pg23_star):
    S, P = pg23_star
    assert all(c.ok for c in bounds_report(P, S))
    assert P.v == P.lam ** 2 + P.lam + 1
    assert -P.lam < P.D < P.lam - 1


def test_bounds_detect_violations():
    # rho = 5/2 lies in the forbidden gap (lambda-1, lambda) for lambda = 3
    P = synthetic(lam=3, rho=Fraction(5, 2), D=2, v=20)
    report = {c.name: c for c in bounds_report(P)}
    assert not report["lambda/(lambda-1)<=rho<=lambda, rho not in (lambda-1,lambda)"].ok
    assert not report["lambda-1 > D > -lambda"].ok
    assert not report["D>=0 implies v<=lambda^2+lambda+1"].ok
    assert not report["conjecture 4lambda-1<=v<=lambda^2+lambda+1"].ok


@pytest.mark.parametrize("star, size", [("fano_star", 3), ("biplane_star", 5), ("pg23_star", 4)])
def test_unique_small_block(star, size, request):
    S, P = request.getfixturevalue(star)
    finding = unique_block_check(S, P)
    assert finding.ok and not finding.warnings
    assert finding.large_qualifying == []
    assert len(finding.small_qualifying) == 1
    assert S.sizes[finding.small_qualifying[0]] == size


def test_literal_inequality_typo_is_recorded(fano_star):
    S, P = fano_star
    finding = unique_block_check(S, P)
    literal, corrected = finding.literal_forms[finding.small_qualifying[0]]
    # 2td + lambda = 4 is not > e2 = 4, but is > e1 = 3, matching 2t > y
    assert literal is False
    assert corrected is True


@pytest.mark.parametrize("star", ["fano_star", "biplane_star", "pg23_star"])
def test_two_block_type1(star, request):
    S, P = request.getfixturevalue(star)
    res = two_block_classify(S, P)
    assert res.verdict is Verdict.TYPE1
    assert res.by_small and not res.by_large
    assert res.agrees_with_columns is True


def test_two_block_fano_values(fano_star):
    S, P = fano_star
    res = two_block_classify(S, P)
    assert (res.k1, res.k2, res.t1, res.t2) == (4, 3, 0, -1)


def test_two_block_condition_not_met():
    P = synthetic(lam=3, x=4, y=4, a=1)
    res = two_block_verdict([7, 5, 5, 7], P)  # t1 = 1, t2 = -1
    assert res.verdict is Verdict.CONDITION_NOT_MET
    assert res.agrees_with_columns is None


def test_two_block_requires_two_sizes(fano_star):
    _, P = fano_star
    with pytest.raises(ValueError):
        two_block_verdict([3, 4, 5], P)


def test_classification_report_text(fano_star):
    S, P = fano_star
    report = classify(S, P)
    assert report.ok
    assert report.necessary_sq_ok and report.v_formula_ok
    text = report.to_text()
    assert "type1_by_columns=yes" in text.splitlines()
    assert "D=0" in text.splitlines()
    assert "two_block_verdict=Type-1" in text.splitlines()
    record = report.to_record()
    assert record["type1_by_D"] is True


def test_classification_on_constructed(constructed):
    for _, _, S, P in constructed:
        report = classify(S, P)
        assert report.ok, report.to_text()
        assert report.type1_by_columns is Tri.YES
        assert report.type1_by_D
