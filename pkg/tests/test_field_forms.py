"""Assembly of sphere-preserving coordinate-factored fields, membership
tests, and recovery of constant-coefficient cubic data."""

import json
import random
from fractions import Fraction

import pytest

from kolmosphere import (
    CubicKolmogorovForm,
    KolmogorovForm,
    NotSkewError,
    Poly,
    PolyVectorField,
    assemble_cubic,
    classify_homogeneous,
    construct_from_form,
    cubic_form_from_dict,
    cubic_form_to_dict,
    field_from_dict,
    field_from_json,
    field_to_dict,
    field_to_json,
    is_kolmogorov_on_sphere,
    lie_derivative,
    parse,
    recover_cubic_form,
    sphere_polynomial,
)
from kolmosphere.polyring import NEG_INF

from conftest import rand_poly, rand_skew_constant


from pathlib import Path

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "demo3d_field.json"
FORM_FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "demo3d_form.json"


def rand_form(rng, dim, max_degree):
    ftilde = tuple(rand_poly(rng, dim, max_degree) for _ in range(dim))
    atilde = [[Poly.zero(dim) for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            atilde[i][j] = rand_poly(rng, dim, max_degree)
            atilde[j][i] = -atilde[i][j]
    return KolmogorovForm(dim, ftilde, tuple(tuple(r) for r in atilde))


def test_sphere_polynomial_text():
    assert str(sphere_polynomial(2)) == "x1^2 + x2^2 - 1"
    assert str(sphere_polynomial(3)) == "x1^2 + x2^2 + x3^2 - 1"


def test_lie_derivative_known_value():
    vf = PolyVectorField(2, (parse("-x2", 2), parse("x1", 2)))
    assert lie_derivative(vf, sphere_polynomial(2)).is_zero()
    assert str(lie_derivative(vf, parse("x1", 2))) == "-x2"


def test_lie_derivative_is_a_derivation():
    rng = random.Random(2)
    for _ in range(80):
        dim = rng.randint(2, 3)
        vf = PolyVectorField(
            dim, tuple(rand_poly(rng, dim, 2) for _ in range(dim))
        )
        f = rand_poly(rng, dim, 3)
        g = rand_poly(rng, dim, 3)
        assert lie_derivative(vf, f * g) == (
            lie_derivative(vf, f) * g + f * lie_derivative(vf, g)
        )
        assert lie_derivative(vf, f + g) == (
            lie_derivative(vf, f) + lie_derivative(vf, g)
        )


def test_construct_from_form_passes_membership_with_predicted_cofactor():
    rng = random.Random(17)
    for _ in range(60):
        dim = rng.randint(2, 4)
        form = rand_form(rng, dim, 2)
        vf = construct_from_form(form)
        report = is_kolmogorov_on_sphere(vf)
        assert report.passes
        predicted = Poly.zero(dim)
        for i in range(dim):
            predicted = predicted - 2 * form.ftilde[i] * Poly.var(dim, i + 1) ** 2
        assert report.sphere_cofactor == predicted


def test_constructed_components_factor_through_their_coordinate():
    rng = random.Random(29)
    from kolmosphere.polyring import divide_exact

    for _ in range(40):
        dim = rng.randint(2, 4)
        vf = construct_from_form(rand_form(rng, dim, 2))
        for i in range(1, dim + 1):
            assert divide_exact(vf.components[i - 1], Poly.var(dim, i)) is not None


def test_construction_golden_value():
    ftilde = (parse("x2", 3), parse("x1^2", 3), Poly.const(3, Fraction(1, 2)))
    atilde = [[Poly.zero(3)] * 3 for _ in range(3)]
    atilde[0][1] = parse("x3", 3)
    atilde[1][0] = parse("-x3", 3)
    form = KolmogorovForm(3, ftilde, tuple(tuple(r) for r in atilde))
    vf = construct_from_form(form)
    assert [str(c) for c in vf.components] == [
        "-x1^3*x2 - x1*x2^3 + x1*x2^2*x3 - x1*x2*x3^2 + x1*x2",
        "-x1^4*x2 - x1^2*x2^3 - x1^2*x2*x3^2 - x1^2*x2*x3 + x1^2*x2",
        "-1/2*x1^2*x3 - 1/2*x2^2*x3 - 1/2*x3^3 + 1/2*x3",
    ]
    report = is_kolmogorov_on_sphere(vf)
    assert str(report.sphere_cofactor) == "-2*x1^2*x2^2 - 2*x1^2*x2 - x3^2"


def test_non_skew_interaction_matrix_is_rejected():
    bad = [[Poly.zero(2), parse("x1", 2)], [parse("x1", 2), Poly.zero(2)]]
    with pytest.raises(NotSkewError):
        KolmogorovForm(2, (Poly.zero(2), Poly.zero(2)), tuple(tuple(r) for r in bad))
    with pytest.raises(NotSkewError):
        CubicKolmogorovForm.from_values((0, 0), [[0, 1], [1, 0]])


def test_rotation_field_is_sphere_invariant_but_not_coordinate_factored():
    vf = PolyVectorField(3, (parse("x2", 3), parse("-x1", 3), Poly.zero(3)))
    report = is_kolmogorov_on_sphere(vf)
    assert not report.kolmogorov
    assert report.sphere_invariant
    assert report.sphere_cofactor.is_zero()
    assert not report.passes


def test_outward_radial_field_does_not_preserve_the_sphere():
    vf = PolyVectorField(2, (parse("x1", 2), parse("x2", 2)))
    report = is_kolmogorov_on_sphere(vf)
    assert report.kolmogorov
    assert not report.sphere_invariant
    assert report.sphere_cofactor is None


def test_cubic_assembly_matches_field_fixture():
    with open(FORM_FIXTURE) as fh:
        form = cubic_form_from_dict(json.load(fh))
    with open(FIXTURE) as fh:
        vf = field_from_dict(json.load(fh))
    assert assemble_cubic(form).components == vf.components


def test_recover_cubic_form_round_trips_random_constant_forms():
    rng = random.Random(41)
    for _ in range(120):
        dim = rng.randint(2, 4)
        alpha = tuple(Fraction(rng.randint(-4, 4)) for _ in range(dim))
        atilde = rand_skew_constant(rng, dim)
        form = CubicKolmogorovForm.from_values(alpha, atilde)
        recovered = recover_cubic_form(assemble_cubic(form))
        assert recovered is not None
        assert recovered.alpha == form.alpha
        assert recovered.atilde == form.atilde


def test_recover_cubic_form_golden_value():
    with open(FIXTURE) as fh:
        vf = field_from_dict(json.load(fh))
    form = recover_cubic_form(vf)
    assert form is not None
    assert form.alpha == (Fraction(2), Fraction(0), Fraction(2))
    assert form.atilde == (
        (Fraction(0), Fraction(3), Fraction(0)),
        (Fraction(-3), Fraction(0), Fraction(-3)),
        (Fraction(0), Fraction(3), Fraction(0)),
    )


def test_recover_cubic_form_rejects_non_cubic_fields():
    vf = PolyVectorField(2, (parse("x2", 2), parse("-x1", 2)))
    assert recover_cubic_form(vf) is None
    quintic = construct_from_form(
        KolmogorovForm(
            2,
            (parse("x1^2", 2), Poly.zero(2)),
            ((Poly.zero(2), Poly.zero(2)), (Poly.zero(2), Poly.zero(2))),
        )
    )
    assert recover_cubic_form(quintic) is None


def test_classify_homogeneous_accepts_tangent_equal_degree_fields():
    vf = PolyVectorField(
        3, (parse("x1*x2^2", 3), parse("-x1^2*x2", 3), Poly.zero(3))
    )
    report = classify_homogeneous(vf)
    assert report.passes
    assert report.degree == 3
    assert classify_homogeneous(PolyVectorField(2, (Poly.zero(2),) * 2)).degree is NEG_INF


def test_classify_homogeneous_rejections():
    mixed = PolyVectorField(2, (parse("x1*x2^2", 2), parse("-x1^2", 2)))
    report = classify_homogeneous(mixed)
    assert not report.passes
    assert not report.homogeneous or not report.tangent

    not_tangent = PolyVectorField(2, (parse("x1*x2^2", 2), parse("x1^2*x2", 2)))
    assert not classify_homogeneous(not_tangent).tangent

    not_factored = PolyVectorField(2, (parse("x2^3", 2), parse("-x1^3", 2)))
    assert not classify_homogeneous(not_factored).kolmogorov


def test_field_json_round_trip():
    rng = random.Random(53)
    for _ in range(40):
        dim = rng.randint(1, 4)
        vf = PolyVectorField(
            dim, tuple(rand_poly(rng, dim, 3) for _ in range(dim))
        )
        assert field_from_json(field_to_json(vf)).components == vf.components
    data = field_to_dict(vf)
    assert set(data) == {"dim", "components"}


def test_cubic_form_dict_round_trip_preserves_rationals():
    form = CubicKolmogorovForm.from_values(
        (Fraction(1, 3), Fraction(-2)), [[0, Fraction(5, 7)], [Fraction(-5, 7), 0]]
    )
    data = cubic_form_to_dict(form)
    assert data["alpha"] == ["1/3", "-2"]
    back = cubic_form_from_dict(data)
    assert back.alpha == form.alpha
    assert back.atilde == form.atilde
