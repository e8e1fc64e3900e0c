"""Invariant hypersurfaces: cofactors, hyperplane classification, planes
through the origin of homogeneous fields, sphere slices, second spheres."""

import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from kolmosphere import (
    BadRadiusError,
    ConeReport,
    CubicKolmogorovForm,
    HyperplaneSpec,
    Hypersurface,
    NotHomogeneousError,
    NotInvariantError,
    Poly,
    PolyVectorField,
    StructuredView,
    assemble_cubic,
    classify_homogeneous,
    classify_hyperplane,
    cofactor,
    cone_invariance,
    cubic_form_from_dict,
    field_from_dict,
    great_sphere_conditions,
    lie_derivative,
    parse,
    second_sphere_check,
    sphere_polynomial,
)
from kolmosphere.suites import hyperplane_suite, slice_negative_suite

from conftest import rand_skew_constant

FIXDIR = Path(__file__).resolve().parent.parent / "fixtures"


def load_demo3d():
    with open(FIXDIR / "demo3d_field.json") as fh:
        return field_from_dict(json.load(fh))


def load_demo3d_form():
    with open(FIXDIR / "demo3d_form.json") as fh:
        return cubic_form_from_dict(json.load(fh))


# ----- cofactor ---------------------------------------------------------------


def test_sphere_cofactor_of_fixture_field_is_structured():
    vf = load_demo3d()
    cof = cofactor(vf, Hypersurface(sphere_polynomial(3)))
    assert cof is not None
    assert str(cof.poly) == "-4*x1^2 - 4*x3^2"
    assert cof.structured == StructuredView(
        k0=Fraction(0), k=(Fraction(-4), Fraction(0), Fraction(-4))
    )


def test_cofactor_of_coordinate_plane():
    vf = load_demo3d()
    cof = cofactor(vf, Hypersurface(Poly.var(3, 2)))
    assert str(cof.poly) == "-3*x1^2 - 3*x3^2"


def test_cofactor_is_none_for_non_invariant_surface():
    vf = load_demo3d()
    assert cofactor(vf, Hypersurface(parse("x1 + x2 + x3", 3))) is None


def test_cofactor_witness_identity_holds():
    vf = load_demo3d()
    h = Hypersurface(sphere_polynomial(3))
    cof = cofactor(vf, h)
    assert lie_derivative(vf, h.defining) == cof.poly * h.defining


def test_unstructured_cofactor_is_still_reported():
    # x1 = 0 is invariant for (x1*x2, x2) with cofactor x2, which has no
    # constant-plus-squares shape.
    vf = PolyVectorField(2, (parse("x1*x2", 2), parse("x2", 2)))
    cof = cofactor(vf, Hypersurface(Poly.var(2, 1)))
    assert str(cof.poly) == "x2"
    assert cof.structured is None


# ----- hyperplane classification ---------------------------------------------


def test_offset_hyperplane_invariant_only_with_silent_support_rows():
    hp = HyperplaneSpec.from_values(2, [1, 0, -3])
    quiet = CubicKolmogorovForm.from_values(
        (0, 5, 0), [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    )
    verdict = classify_hyperplane(quiet, hp)
    assert verdict.invariant
    assert verdict.case == "nonzero_offset"
    assert verdict.predicted == StructuredView(
        k0=Fraction(0), k=(Fraction(0),) * 3
    )
    assert verdict.division_cofactor.poly.is_zero()


@pytest.mark.parametrize(
    "alpha,atilde",
    [
        # interaction touching a support row
        ((0, 5, 0), [[0, 0, 0], [0, 0, 7], [0, -7, 0]]),
        ((0, 5, 0), [[0, -7, 0], [7, 0, 0], [0, 0, 0]]),
        # diagonal growth on a support coordinate
        ((1, 0, 0), [[0, 0, 0], [0, 0, 0], [0, 0, 0]]),
    ],
)
def test_offset_hyperplane_breaks_when_support_is_touched(alpha, atilde):
    hp = HyperplaneSpec.from_values(2, [1, 0, -3])
    form = CubicKolmogorovForm.from_values(alpha, atilde)
    verdict = classify_hyperplane(form, hp)
    assert not verdict.invariant
    assert verdict.case is None
    assert verdict.predicted is None


def test_origin_hyperplane_golden_classification():
    atilde = [[0, 0, 4], [0, 0, 4], [-4, -4, 0]]
    form = CubicKolmogorovForm.from_values((3, 3, -1), atilde)
    hp = HyperplaneSpec.from_values(0, [2, -1, 0])
    verdict = classify_hyperplane(form, hp)
    assert verdict.invariant
    assert verdict.case == "through_origin"
    assert verdict.predicted == StructuredView(
        k0=Fraction(3), k=(Fraction(-3), Fraction(-3), Fraction(1))
    )
    assert str(verdict.division_cofactor.poly) == "-3*x1^2 - 3*x2^2 + x3^2 + 3"


def test_origin_hyperplane_breaks_under_single_perturbations():
    base = [[0, 0, 4], [0, 0, 4], [-4, -4, 0]]
    hp = HyperplaneSpec.from_values(0, [2, -1, 0])

    coupled = [row[:] for row in base]
    coupled[0][1], coupled[1][0] = 1, -1
    assert not classify_hyperplane(
        CubicKolmogorovForm.from_values((3, 3, -1), coupled), hp
    ).invariant

    unequal_rows = [row[:] for row in base]
    unequal_rows[1][2] = 5
    unequal_rows[2][1] = -5
    assert not classify_hyperplane(
        CubicKolmogorovForm.from_values((3, 3, -1), unequal_rows), hp
    ).invariant

    assert not classify_hyperplane(
        CubicKolmogorovForm.from_values((3, 2, -1), base), hp
    ).invariant


def test_classification_needs_two_active_coefficients():
    from kolmosphere.invariance import PreconditionError

    form = CubicKolmogorovForm.from_values((0, 0), [[0, 0], [0, 0]])
    with pytest.raises(PreconditionError):
        classify_hyperplane(form, HyperplaneSpec.from_values(0, [1, 0]))
    # a0 != 0 with a single linear coefficient is fine
    verdict = classify_hyperplane(form, HyperplaneSpec.from_values(1, [1, 0]))
    assert verdict.invariant


def test_classification_agrees_with_direct_division_on_random_instances():
    report = hyperplane_suite(seed=20240817, instances=60)
    assert report.passed
    assert not report.failures


# ----- planes through the origin of homogeneous fields -------------------------


def great_sphere_form():
    atilde = [[0, 0, 4], [0, 0, 4], [-4, -4, 0]]
    return CubicKolmogorovForm.from_values((0, 0, 0), atilde)


def test_great_sphere_conditions_golden_instance():
    report = great_sphere_conditions(
        great_sphere_form(), HyperplaneSpec.from_values(0, [2, -1, 0])
    )
    assert report.interaction_sum == Fraction(4)
    assert report.coefficient_balance == Fraction(4)
    assert report.cofactor_at_a == 0
    assert report.condition_interaction and report.condition_root
    assert report.passes
    assert str(report.cofactor.poly) == "4*x3^2"


def test_great_sphere_conditions_require_invariance():
    with pytest.raises(NotInvariantError):
        great_sphere_conditions(
            great_sphere_form(), HyperplaneSpec.from_values(0, [1, 1, 1])
        )


def test_great_sphere_conditions_reject_inhomogeneous_forms():
    form = CubicKolmogorovForm.from_values((1, 0, 0), [[0, 0, 4], [0, 0, 4], [-4, -4, 0]])
    with pytest.raises(NotHomogeneousError):
        great_sphere_conditions(form, HyperplaneSpec.from_values(0, [2, -1, 0]))


def test_great_sphere_conditions_reject_offset_planes():
    with pytest.raises(ValueError):
        great_sphere_conditions(
            great_sphere_form(), HyperplaneSpec.from_values(1, [2, -1, 0])
        )


def test_great_sphere_conditions_hold_on_random_invariant_planes():
    rng = random.Random(97)
    found = 0
    while found < 25:
        dim = rng.randint(2, 4)
        atilde = rand_skew_constant(rng, dim)
        form = CubicKolmogorovForm.from_values((Fraction(0),) * dim, atilde)
        a = [Fraction(rng.randint(-3, 3)) for _ in range(dim)]
        if all(x == 0 for x in a):
            continue
        hp = HyperplaneSpec(Fraction(0), tuple(a))
        vf = assemble_cubic(form)
        if cofactor(vf, Hypersurface(hp.defining_poly())) is None:
            continue
        report = great_sphere_conditions(form, hp)
        assert report.passes
        found += 1


# ----- sphere slices and cones --------------------------------------------------


def slice_field_with_flat_axis():
    return PolyVectorField(
        3, (parse("x1*x2^2", 3), parse("-x1^2*x2", 3), Poly.zero(3))
    )


def test_every_horizontal_slice_is_invariant_when_the_axis_is_flat():
    # The third component vanishes identically, so x3 is constant along
    # every orbit and each slice x3 = d of the sphere is preserved.
    vf = slice_field_with_flat_axis()
    for d in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
        report = cone_invariance(vf, HyperplaneSpec.from_values(0, [0, 0, 1], d))
        assert isinstance(report, ConeReport)
        assert report.invariant
        assert report.cofactor.is_zero()


def test_cone_polynomial_shape():
    vf = slice_field_with_flat_axis()
    report = cone_invariance(
        vf, HyperplaneSpec.from_values(0, [0, 0, 1], Fraction(1, 2))
    )
    assert str(report.cone) == "-1/4*x1^2 - 1/4*x2^2 + 3/4*x3^2"


def test_generic_slices_of_a_mixing_field_are_not_invariant():
    vf = PolyVectorField(
        3,
        (
            parse("x1*x2^2", 3),
            parse("-x1^2*x2 + x2*x3^2", 3),
            parse("-x2^2*x3", 3),
        ),
    )
    assert classify_homogeneous(vf).passes
    for d in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
        assert not cone_invariance(
            vf, HyperplaneSpec.from_values(0, [0, 0, 1], d)
        ).invariant
    # the great-circle slice d = 0 of the same field is preserved
    zero_slice = cone_invariance(vf, HyperplaneSpec.from_values(0, [0, 0, 1], 0))
    assert zero_slice.invariant
    assert str(zero_slice.cofactor) == "-2*x2^2"


def test_cone_invariance_rejects_inhomogeneous_fields():
    vf = assemble_cubic(load_demo3d_form())
    with pytest.raises(NotHomogeneousError):
        cone_invariance(vf, HyperplaneSpec.from_values(0, [0, 0, 1], Fraction(1, 2)))


def test_cone_invariance_needs_an_offset():
    vf = slice_field_with_flat_axis()
    with pytest.raises(ValueError):
        cone_invariance(vf, HyperplaneSpec.from_values(0, [0, 0, 1]))


def test_random_generic_slices_are_never_invariant():
    report = slice_negative_suite(seed=5, instances=30)
    assert report.passed
    assert not report.failures


# ----- second spheres -----------------------------------------------------------


def test_second_sphere_invariant_only_for_homogeneous_fields():
    rotation = CubicKolmogorovForm.from_values(
        (0, 0, 0), [[0, 3, 0], [-3, 0, -3], [0, 3, 0]]
    )
    report = second_sphere_check(rotation, Fraction(2))
    assert report.invariant
    assert report.alpha_zero
    assert report.cofactor.is_zero()
    assert report.first_integral


def test_second_sphere_not_invariant_when_alpha_is_present():
    report = second_sphere_check(load_demo3d_form(), Fraction(2))
    assert not report.invariant
    assert not report.alpha_zero
    assert report.cofactor is None
    assert not report.first_integral


def test_second_sphere_radius_validation():
    form = load_demo3d_form()
    for r in (0, 1, -1):
        with pytest.raises(BadRadiusError):
            second_sphere_check(form, Fraction(r))


def test_second_sphere_random_homogeneous_forms_conserve_every_radius():
    rng = random.Random(71)
    for _ in range(25):
        dim = rng.randint(2, 4)
        form = CubicKolmogorovForm.from_values(
            (Fraction(0),) * dim, rand_skew_constant(rng, dim)
        )
        r = Fraction(rng.randint(2, 5), rng.choice([1, 2]))
        if r in (1, -1):
            continue
        assert second_sphere_check(form, r).first_integral
