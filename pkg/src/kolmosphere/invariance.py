"""Invariant algebraic hypersurfaces of polynomial vector fields.

A hypersurface {f = 0} is invariant when the derivative of f along the
field is a polynomial multiple K * f; the quotient K is the cofactor.
For the fields assembled in :mod:`.field_forms` the cofactors of interest
all have the shape k0 + sum_i k_i x_i^2, which this module extracts as a
structured view whenever it exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .polyring import DimensionMismatchError, Poly, divide_exact
from .field_forms import (
    CubicKolmogorovForm,
    PolyVectorField,
    assemble_cubic,
    classify_homogeneous,
    lie_derivative,
    sphere_polynomial,
)


class NotInvariantError(ValueError):
    """The requested hypersurface is not invariant for the field."""


class NotHomogeneousError(ValueError):
    """An operation requiring a homogeneous field received something else."""


class BadRadiusError(ValueError):
    """Radius parameter collides with 0 or the unit sphere."""


@dataclass(frozen=True)
class Hypersurface:
    """Zero set of a nonzero, nonconstant polynomial."""

    defining: Poly

    def __post_init__(self):
        if self.defining.is_zero() or self.defining.degree() == 0:
            raise ValueError("defining polynomial must be nonconstant")

    @property
    def dim(self) -> int:
        return self.defining.dim


@dataclass(frozen=True)
class StructuredView:
    """Cofactor decomposition K = k0 + sum_i k_i x_i^2."""

    k0: Fraction
    k: Tuple[Fraction, ...]


@dataclass(frozen=True)
class Cofactor:
    poly: Poly
    structured: Optional[StructuredView]


def _structured_view(k: Poly) -> Optional[StructuredView]:
    """Match K against k0 + sum k_i x_i^2; the zero cofactor is structured
    with all entries zero."""
    k0 = Fraction(0)
    coeffs = [Fraction(0)] * k.dim
    for exps, coeff in k:
        nonzero = [(pos, e) for pos, e in enumerate(exps) if e != 0]
        if not nonzero:
            k0 = coeff
        elif len(nonzero) == 1 and nonzero[0][1] == 2:
            coeffs[nonzero[0][0]] = coeff
        else:
            return None
    return StructuredView(k0, tuple(coeffs))


def cofactor(vf: PolyVectorField, h: Hypersurface) -> Optional[Cofactor]:
    """Cofactor of an invariant hypersurface, None when not invariant."""
    if h.dim != vf.dim:
        raise DimensionMismatchError(
            f"hypersurface in {h.dim} variables, field on R^{vf.dim}"
        )
    quotient = divide_exact(lie_derivative(vf, h.defining), h.defining)
    if quotient is None:
        return None
    return Cofactor(quotient, _structured_view(quotient))


@dataclass(frozen=True)
class HyperplaneSpec:
    """Affine hyperplane a0 + a1 x1 + ... + ad xd = 0, with an optional
    offset used by slice and cone operations."""

    a0: Fraction
    a: Tuple[Fraction, ...]
    offset_d: Optional[Fraction] = None

    def __post_init__(self):
        if all(x == 0 for x in self.a):
            raise ValueError("some linear coefficient a_i must be nonzero")

    @classmethod
    def from_values(cls, a0, a: Sequence, offset_d=None) -> "HyperplaneSpec":
        return cls(
            Fraction(a0),
            tuple(Fraction(x) for x in a),
            None if offset_d is None else Fraction(offset_d),
        )

    @property
    def dim(self) -> int:
        return len(self.a)

    def defining_poly(self) -> Poly:
        p = Poly.const(self.dim, self.a0)
        for i, coeff in enumerate(self.a, start=1):
            p = p + coeff * Poly.var(self.dim, i)
        return p


class PreconditionError(ValueError):
    """Input violates a documented precondition of the classification."""


@dataclass(frozen=True)
class HyperplaneClassification:
    """Verdict for invariance of a hyperplane under a constant-form field,
    always with a cofactor of the structured shape.

    ``case`` is "nonzero_offset" (a0 != 0, forcing a zero cofactor) or
    "through_origin" (a0 = 0), set only when invariant.  The raw division
    cofactor, when the hyperplane is invariant at all, rides along for
    audit."""

    invariant: bool
    case: Optional[str]
    predicted: Optional[StructuredView]
    division_cofactor: Optional[Cofactor]


def _conditions_offset(form: CubicKolmogorovForm, hp: HyperplaneSpec) -> bool:
    support = [i for i, x in enumerate(hp.a) if x != 0]
    for i in support:
        if form.alpha[i] != 0:
            return False
        if any(form.atilde[i][j] != 0 for j in range(form.dim)):
            return False
    return True


def _conditions_through_origin(
    form: CubicKolmogorovForm, hp: HyperplaneSpec
) -> Optional[StructuredView]:
    support = [i for i, x in enumerate(hp.a) if x != 0]
    first = support[0]
    k0 = form.alpha[first]
    for i in support[1:]:
        if form.alpha[i] != k0:
            return None
    for i in support:
        for j in support:
            if i != j and form.atilde[i][j] != 0:
                return None
    template = form.atilde[first]
    for i in support[1:]:
        if any(form.atilde[i][j] != template[j] for j in range(form.dim)):
            return None
    k = tuple(template[j] - k0 for j in range(form.dim))
    return StructuredView(k0, k)


def classify_hyperplane(
    form: CubicKolmogorovForm, hp: HyperplaneSpec
) -> HyperplaneClassification:
    """Decide invariance of the hyperplane with a structured cofactor.

    The decision comes from coefficient conditions on (alpha, atilde) and is
    cross-validated against direct exact division on the assembled field;
    disagreement between the two routes raises, since the conditions are
    equivalent to invariance-with-structured-cofactor.
    """
    if form.dim != hp.dim:
        raise DimensionMismatchError(
            f"form on R^{form.dim}, hyperplane in R^{hp.dim}"
        )
    nonzero_count = (1 if hp.a0 != 0 else 0) + sum(1 for x in hp.a if x != 0)
    if nonzero_count < 2:
        raise PreconditionError(
            "need at least two nonzero coefficients among a0, a1, ..."
        )

    if hp.a0 != 0:
        case = "nonzero_offset"
        predicted = (
            StructuredView(Fraction(0), (Fraction(0),) * form.dim)
            if _conditions_offset(form, hp)
            else None
        )
    else:
        case = "through_origin"
        predicted = _conditions_through_origin(form, hp)

    vf = assemble_cubic(form)
    division = cofactor(vf, Hypersurface(hp.defining_poly()))
    division_structured = (
        division.structured if division is not None else None
    )

    if (predicted is None) != (division_structured is None):
        raise RuntimeError(
            "internal disagreement: coefficient conditions and direct "
            f"division differ (conditions {predicted}, division {division})"
        )
    if predicted is not None and predicted != division_structured:
        raise RuntimeError(
            "internal disagreement: predicted cofactor "
            f"{predicted} but division found {division_structured}"
        )

    invariant = predicted is not None
    return HyperplaneClassification(
        invariant=invariant,
        case=case if invariant else None,
        predicted=predicted,
        division_cofactor=division,
    )


@dataclass(frozen=True)
class GreatSphereReport:
    """Two necessary conditions for an invariant hyperplane through the
    origin of a homogeneous constant-form field, with both sides of the
    balance printed for audit.

    interaction_sum      = sum_{i,j} a_i atilde_ij
    coefficient_balance  = (sum_i a_i) * (sum of all coefficients of K,
                           read as K at the all-ones point)
    cofactor_at_a        = K(a_1, ..., a_d)
    """

    cofactor: Cofactor
    interaction_sum: Fraction
    coefficient_balance: Fraction
    cofactor_at_a: Fraction

    @property
    def condition_interaction(self) -> bool:
        return self.interaction_sum == self.coefficient_balance

    @property
    def condition_root(self) -> bool:
        return self.cofactor_at_a == 0

    @property
    def passes(self) -> bool:
        return self.condition_interaction and self.condition_root


def great_sphere_conditions(
    form: CubicKolmogorovForm, hp: HyperplaneSpec
) -> GreatSphereReport:
    if form.dim != hp.dim:
        raise DimensionMismatchError(
            f"form on R^{form.dim}, hyperplane in R^{hp.dim}"
        )
    if any(a != 0 for a in form.alpha):
        raise NotHomogeneousError(
            "conditions apply to homogeneous fields (alpha = 0)"
        )
    if hp.a0 != 0:
        raise ValueError("the hyperplane must pass through the origin (a0 = 0)")
    vf = assemble_cubic(form)
    cof = cofactor(vf, Hypersurface(hp.defining_poly()))
    if cof is None:
        raise NotInvariantError("the hyperplane is not invariant for this field")
    interaction_sum = sum(
        (hp.a[i] * form.atilde[i][j]
         for i in range(form.dim) for j in range(form.dim)),
        Fraction(0),
    )
    ones = (Fraction(1),) * form.dim
    coefficient_balance = sum(hp.a, Fraction(0)) * cof.poly.evaluate(ones)
    cofactor_at_a = cof.poly.evaluate(hp.a)
    return GreatSphereReport(
        cofactor=cof,
        interaction_sum=interaction_sum,
        coefficient_balance=coefficient_balance,
        cofactor_at_a=cofactor_at_a,
    )


@dataclass(frozen=True)
class ConeReport:
    invariant: bool
    cone: Poly
    cofactor: Optional[Poly]


def cone_invariance(vf: PolyVectorField, hp: HyperplaneSpec) -> ConeReport:
    """For a homogeneous field, invariance of the sphere slice
    {sum a_i x_i = d} on the unit sphere is equivalent to invariance of the
    cone (sum a_i x_i)^2 - d^2 sum x_i^2, which this tests by division."""
    if hp.offset_d is None:
        raise ValueError("hyperplane spec carries no offset d")
    if hp.a0 != 0:
        raise ValueError("slice specs use a0 = 0 with the offset in d")
    if hp.dim != vf.dim:
        raise DimensionMismatchError(
            f"field on R^{vf.dim}, slice in R^{hp.dim}"
        )
    if not classify_homogeneous(vf).passes:
        raise NotHomogeneousError(
            "cone equivalence only applies to homogeneous fields"
        )
    linear = hp.defining_poly()
    r2 = sphere_polynomial(vf.dim) + 1
    cone = linear * linear - hp.offset_d**2 * r2
    if cone.is_zero():
        raise ValueError("degenerate cone: the defining polynomial vanishes")
    quotient = divide_exact(lie_derivative(vf, cone), cone)
    return ConeReport(
        invariant=quotient is not None, cone=cone, cofactor=quotient
    )


@dataclass(frozen=True)
class SecondSphereReport:
    """Invariance of a second sphere sum x_i^2 = r^2 (r not 0 or +-1).

    When invariant the field is forced homogeneous (alpha = 0) and the
    cofactor vanishes, so the second sphere is a genuine first integral."""

    invariant: bool
    radius: Fraction
    cofactor: Optional[Poly]
    alpha_zero: bool

    @property
    def first_integral(self) -> bool:
        return self.invariant and self.cofactor is not None and self.cofactor.is_zero()


def second_sphere_check(
    form: CubicKolmogorovForm, r: Fraction
) -> SecondSphereReport:
    r = Fraction(r)
    if r in (0, 1, -1):
        raise BadRadiusError("radius must differ from 0, 1, and -1")
    vf = assemble_cubic(form)
    g = sphere_polynomial(form.dim) + 1 - r * r  # sum x^2 - r^2
    quotient = divide_exact(lie_derivative(vf, g), g)
    alpha_zero = all(a == 0 for a in form.alpha)
    if quotient is not None:
        if not alpha_zero or not quotient.is_zero():
            raise RuntimeError(
                "internal inconsistency: a second invariant sphere forces "
                "alpha = 0 and a zero cofactor"
            )
    return SecondSphereReport(
        invariant=quotient is not None,
        radius=r,
        cofactor=quotient,
        alpha_zero=alpha_zero,
    )
