import json
import shutil
from fractions import Fraction

import pytest

from berndt_forge.errors import DomainError, FitError, FixtureError
from berndt_forge.families import SumFamily
from berndt_forge.hyperbolic_sums import (
    AnsatzShape,
    Template,
    base_shape,
    cprime_base,
    ctilde_base,
    fit_ansatz,
    reduce_power,
    reduced_element,
    s2_base,
    sample_points,
    sbar_base,
    sbar_shape,
)
from berndt_forge.hyperbolic_sums import fixtures
from berndt_forge.hyperbolic_sums.identities import s2_derived, sbar_derived
from berndt_forge.numerics.core import _y_of_x, digits_to_bits, make_ctx
from berndt_forge.numerics.evaluate import ZRingEvaluator
from berndt_forge.numerics.series import sum_series_ctx
from berndt_forge.zring import SIGMA, SIGMA_PRIME, PolyX, RatFunX, SpecialValue, ZRingElem, eval_at_half, normalize

z = ZRingElem.z()
zp = ZRingElem.z(1)
v = ZRingElem.v()


def _matches_series(elem, fam, x, digits=60, tol_digits=40):
    ctx = make_ctx(digits_to_bits(digits) + 32)
    ev = ZRingEvaluator(ctx, x)
    want = sum_series_ctx(ctx, fam, _y_of_x(ctx, ev.x))
    got = ev(elem)
    return abs(got - want) < ctx.mpf(10) ** -tol_digits * max(abs(want), 1)


def test_sum_family_parity_rules():
    SumFamily("Sbar", 3, 1)
    SumFamily("Cprime", 4, 2)
    with pytest.raises(DomainError):
        SumFamily("Sbar", 4, 1)
    with pytest.raises(DomainError):
        SumFamily("S", 2, 3)
    with pytest.raises(DomainError):
        SumFamily("C", 1, 1)


def test_ctilde_base_examples():
    assert ctilde_base(0) == (z * z * v).scale(Fraction(1, 4))
    assert eval_at_half(ctilde_base(0)) == SpecialValue.term(Fraction(1, 32), 4, -6)
    assert ctilde_base(1) == ZRingElem.monomial(PolyX([-1, 2]) * Fraction(-1, 16), z=4, v=1)
    assert eval_at_half(ctilde_base(1)).is_zero()


def test_cprime_base_examples():
    want = ZRingElem.monomial(SIGMA * Fraction(-1, 8), z=3) * (
        z.scale(Fraction(-2, 3)) + (zp * ZRingElem.poly(SIGMA_PRIME)).scale(Fraction(2, 3)))
    assert cprime_base(1) == want
    assert eval_at_half(cprime_base(1)) == SpecialValue.term(Fraction(1, 768), 8, -12)
    with pytest.raises(DomainError):
        cprime_base(0)


def test_sbar_base_value_at_half():
    assert eval_at_half(sbar_base(1)) == SpecialValue.term(Fraction(1, 512), 8, -12)
    assert sbar_base(1) == ZRingElem.monomial(SIGMA * Fraction(1, 8), z=4)


def test_sbar_three_has_sigma_degree_zero():
    (key, coeff), = sbar_base(1).items()
    assert key == (0, 0, (4,))
    assert coeff.den == PolyX.const(1)
    quotient, rest = coeff.num.divmod(SIGMA)
    assert rest.is_zero() and quotient.degree == 0


def test_fitted_bases_equal_derived_identities():
    for s in range(1, 9):
        assert normalize(sbar_base(s)) == normalize(sbar_derived(s)), f"Sbar s={s}"
        assert normalize(s2_base(s)) == normalize(s2_derived(s)), f"S s={s}"


def test_base_oracles():
    for x in (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10)):
        for s in range(0, 7):
            assert _matches_series(ctilde_base(s), SumFamily("Ctilde", 2 * s + 1, 1), x)
            if s:
                assert _matches_series(cprime_base(s), SumFamily("Cprime", 2 * s, 2), x)
                assert _matches_series(sbar_base(s), SumFamily("Sbar", 2 * s + 1, 1), x)
                assert _matches_series(s2_base(s), SumFamily("S", 2 * s, 2), x)


def test_s2_at_extra_points():
    for x in (Fraction(3, 10), Fraction(3, 5)):
        assert _matches_series(s2_base(1), SumFamily("S", 2, 2), x)


def test_membership_classes():
    for s in range(0, 7):
        assert base_shape("Ctilde", s).contains(ctilde_base(s))
        if s:
            assert base_shape("Cprime", s).contains(cprime_base(s))
            assert base_shape("Sbar", s).contains(sbar_base(s))
            assert base_shape("S", s).contains(s2_base(s))


def test_membership_rejects_wrong_shapes():
    assert not base_shape("Sbar", 2).contains(sbar_base(1))
    assert not base_shape("Sbar", 1).contains(sbar_base(1) * ZRingElem.poly(SIGMA_PRIME))
    assert not base_shape("Ctilde", 1).contains(ctilde_base(0))
    assert not base_shape("S", 2).contains(s2_base(1))
    assert not base_shape("Cprime", 2).contains(cprime_base(1))
    with pytest.raises(DomainError):
        base_shape("C", 1)


def test_s2_shape_has_extra_template_only_for_s1():
    assert len(base_shape("S", 1).templates) == 3
    assert ((1, 2),) in [t.jets for t in base_shape("S", 1).templates]
    assert all(len(base_shape("S", s).templates) == 2 for s in range(2, 7))


def test_sigma_criterion():
    for d in range(9):
        f = SIGMA ** d
        assert f - f.reflect() == PolyX()
        g = f * SIGMA_PRIME
        assert g + g.reflect() == PolyX()


def test_sample_points():
    pts = sample_points(20)
    assert len(pts) == len(set(pts)) == 20
    assert all(Fraction(1, 10) < x < Fraction(9, 10) and x != Fraction(1, 2) for x in pts)
    assert not any(1 - x in pts for x in pts)


def test_fit_ansatz_self_consistency():
    shape = AnsatzShape((Template(2, (), 1, 0, 1),))
    fit = fit_ansatz(shape, SumFamily("Ctilde", 1, 1))
    assert fit.element == ctilde_base(0)
    assert len(fit.held_out) >= 3


def test_fit_sbar_three_shape():
    fit = fit_ansatz(sbar_shape(1, 2), SumFamily("Sbar", 3, 1))
    assert fit.element == sbar_base(1)


def test_fit_ansatz_wrong_shape_fails():
    # S_{2,2} without its (z')^2 template
    shape = AnsatzShape((Template(4, (), 1, 0), Template(3, ((1, 1),), 1, 1)))
    with pytest.raises(FitError):
        fit_ansatz(shape, SumFamily("S", 2, 2), max_digits=200)


def test_fit_ansatz_dimension_cap():
    shape = AnsatzShape((Template(4, (), 80, 0),))
    with pytest.raises(FitError):
        fit_ansatz(shape, SumFamily("Sbar", 3, 1))


def _inverse_2x2(a, b, c, d):
    det = Fraction(a * d - b * c)
    return [[d / det, -b / det], [-c / det, a / det]]


def test_reduce_power_examples():
    assert reduce_power(SumFamily("Sbar", 7, 1)) == [(0, 7, 1)]
    from berndt_forge.arith import triangle

    d = triangle("D", 1).entries
    inv = _inverse_2x2(d[0][0], d[0][1], d[1][0], d[1][1])
    M = 3
    terms = reduce_power(SumFamily("S", 2 * (M + 1), 4))
    assert terms == [(0, 2 * M + 2, inv[1][0]), (2, 2 * M, inv[1][1])]


def test_reduce_power_rejects_low_index():
    with pytest.raises(DomainError):
        reduce_power(SumFamily("Sbar", 3, 3))
    with pytest.raises(DomainError):
        reduce_power("Sbar")


def test_ctilde_7_3_at_pi():
    fam = SumFamily("Ctilde", 7, 3)
    ctx = make_ctx(digits_to_bits(60) + 32)
    want = sum_series_ctx(ctx, fam, ctx.pi)
    got = ZRingEvaluator(ctx, Fraction(1, 2))(reduced_element(fam))
    assert abs(got - want) < ctx.mpf(10) ** -40 * abs(want)


def test_reduction_grid_at_pi():
    from berndt_forge.selftest import legal_targets

    ctx = make_ctx(digits_to_bits(60) + 32)
    ev = ZRingEvaluator(ctx, Fraction(1, 2))
    for fam in legal_targets(6, 13):
        want = sum_series_ctx(ctx, fam, ctx.pi)
        got = ev(reduced_element(fam))
        assert abs(got - want) < ctx.mpf(10) ** -40 * max(abs(want), 1), str(fam)


def test_fixture_json_round_trip():
    e = s2_base(3)
    assert fixtures.element_from_json(json.loads(json.dumps(fixtures.element_to_json(e)))) == e
    odd = ZRingElem({(0, 1, (1, 1)): RatFunX(PolyX([1, 2]), SIGMA)})
    assert fixtures.element_from_json(fixtures.element_to_json(odd)) == odd


def test_packaged_fixtures_load_and_check():
    for s in (1, 5, 30):
        assert fixtures.load_base("Sbar", s, check=True) is not None
        assert fixtures.load_base("S", s, check=True) is not None
    assert fixtures.load_base("Sbar", 999) is None


def test_corrupted_fixture_is_detected(tmp_path):
    src = fixtures.path_for("Sbar", 2)
    shutil.copy(src, tmp_path / src.name)
    data = json.loads((tmp_path / src.name).read_text())
    data["terms"][0]["num"] = [str(Fraction(c) * 2) for c in data["terms"][0]["num"]]
    (tmp_path / src.name).write_text(json.dumps(data))
    with pytest.raises(FixtureError) as info:
        fixtures.load_base("Sbar", 2, tmp_path)
    assert info.value.path == tmp_path / src.name


def test_fixture_header_and_schema_checks(tmp_path):
    src = fixtures.path_for("S", 2)
    data = json.loads(src.read_text())
    data["s"] = 3
    (tmp_path / "S_2.json").write_text(json.dumps(data))
    with pytest.raises(FixtureError):
        fixtures.load_base("S", 2, tmp_path)
    data["s"], data["schema"] = 2, "other/0"
    (tmp_path / "S_2.json").write_text(json.dumps(data))
    with pytest.raises(FixtureError):
        fixtures.load_base("S", 2, tmp_path)
    (tmp_path / "S_2.json").write_text("{not json")
    with pytest.raises(FixtureError):
        fixtures.load_base("S", 2, tmp_path)


def test_missing_fixture_falls_back_to_fit(tmp_path):
    fixtures.set_fixture_dir(tmp_path)
    try:
        assert normalize(sbar_base(2)) == normalize(sbar_derived(2))
    finally:
        fixtures.set_fixture_dir(None)


def test_fixture_generation_round_trip(tmp_path):
    fixtures.generate(1, tmp_path, families=("Sbar",), log=lambda *_: None)
    assert fixtures.load_base("Sbar", 1, tmp_path) == sbar_base(1)
