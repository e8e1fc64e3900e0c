"""Polynomial vector fields whose components factor through their own
coordinate, and the normal form that makes the unit sphere invariant.

A field (P_1, ..., P_d) on R^d is assembled here from data (ftilde, atilde)
via

    P_i = x_i * ( (1 - sum_k x_k^2) * ftilde_i  +  sum_j atilde_ij * x_j^2 )

with atilde skew-symmetric.  Every field of this shape leaves each
coordinate hyperplane and the unit sphere invariant; the sphere cofactor is
-2 * sum_i ftilde_i * x_i^2.  The cubic case has constant ftilde_i = alpha_i
and a constant skew matrix atilde.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .polyring import (
    DimensionMismatchError,
    NEG_INF,
    Poly,
    divide_exact,
    parse,
)


class NotSkewError(ValueError):
    """An interaction matrix fails skew-symmetry."""


@dataclass(frozen=True)
class PolyVectorField:
    """A polynomial vector field: one component per coordinate."""

    dim: int
    components: Tuple[Poly, ...]

    def __post_init__(self):
        if len(self.components) != self.dim:
            raise DimensionMismatchError(
                f"{len(self.components)} components for dimension {self.dim}"
            )
        for p in self.components:
            if p.dim != self.dim:
                raise DimensionMismatchError(
                    f"component in {p.dim} variables inside a field on R^{self.dim}"
                )

    def degree(self):
        if all(p.is_zero() for p in self.components):
            return NEG_INF
        return max(p.degree() for p in self.components)


def _check_skew(matrix: Sequence[Sequence], zero, label: str) -> None:
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise NotSkewError(f"{label} must be square")
    for i in range(n):
        if matrix[i][i] != zero:
            raise NotSkewError(f"{label} has a nonzero diagonal entry at {i + 1}")
        for j in range(i + 1, n):
            if matrix[i][j] != -matrix[j][i]:
                raise NotSkewError(
                    f"{label} entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) "
                    "are not opposite"
                )


@dataclass(frozen=True)
class KolmogorovForm:
    """Assembly data (ftilde, atilde) with polynomial entries."""

    dim: int
    ftilde: Tuple[Poly, ...]
    atilde: Tuple[Tuple[Poly, ...], ...]

    def __post_init__(self):
        if len(self.ftilde) != self.dim:
            raise DimensionMismatchError(
                f"{len(self.ftilde)} ftilde entries for dimension {self.dim}"
            )
        for p in self.ftilde:
            if p.dim != self.dim:
                raise DimensionMismatchError("ftilde entry in the wrong ring")
        if len(self.atilde) != self.dim:
            raise DimensionMismatchError("atilde must be dim x dim")
        for row in self.atilde:
            for p in row:
                if p.dim != self.dim:
                    raise DimensionMismatchError("atilde entry in the wrong ring")
        _check_skew(self.atilde, Poly.zero(self.dim), "atilde")


@dataclass(frozen=True)
class CubicKolmogorovForm:
    """Constant assembly data: the degree-three case."""

    dim: int
    alpha: Tuple[Fraction, ...]
    atilde: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.alpha) != self.dim:
            raise DimensionMismatchError(
                f"{len(self.alpha)} alpha entries for dimension {self.dim}"
            )
        if len(self.atilde) != self.dim:
            raise DimensionMismatchError("atilde must be dim x dim")
        _check_skew(self.atilde, Fraction(0), "atilde")

    @classmethod
    def from_values(cls, alpha: Sequence, atilde: Sequence[Sequence]) -> "CubicKolmogorovForm":
        a = tuple(Fraction(x) for x in alpha)
        m = tuple(tuple(Fraction(x) for x in row) for row in atilde)
        return cls(len(a), a, m)

    def to_polynomial_form(self) -> KolmogorovForm:
        d = self.dim
        return KolmogorovForm(
            d,
            tuple(Poly.const(d, a) for a in self.alpha),
            tuple(
                tuple(Poly.const(d, self.atilde[i][j]) for j in range(d))
                for i in range(d)
            ),
        )


def sphere_polynomial(dim: int) -> Poly:
    """x1^2 + ... + xd^2 - 1."""
    terms = {(0,) * dim: Fraction(-1)}
    for i in range(dim):
        exps = [0] * dim
        exps[i] = 2
        terms[tuple(exps)] = Fraction(1)
    return Poly(dim, terms)


def lie_derivative(vf: PolyVectorField, f: Poly) -> Poly:
    """Derivative of f along the field: sum_i P_i * df/dx_i."""
    if f.dim != vf.dim:
        raise DimensionMismatchError(
            f"function in {f.dim} variables, field on R^{vf.dim}"
        )
    total = Poly.zero(vf.dim)
    for i, p in enumerate(vf.components, start=1):
        total = total + p * f.differentiate(i)
    return total


def construct_from_form(form: KolmogorovForm) -> PolyVectorField:
    """Assemble the field P_i = x_i((1 - sum x^2) ftilde_i + sum_j atilde_ij x_j^2)."""
    d = form.dim
    one_minus_r2 = Poly.const(d, 1) - (sphere_polynomial(d) + 1)
    squares = [Poly.var(d, j) ** 2 for j in range(1, d + 1)]
    components = []
    for i in range(d):
        inner = one_minus_r2 * form.ftilde[i]
        for j in range(d):
            inner = inner + form.atilde[i][j] * squares[j]
        components.append(Poly.var(d, i + 1) * inner)
    return PolyVectorField(d, tuple(components))


def assemble_cubic(form: CubicKolmogorovForm) -> PolyVectorField:
    return construct_from_form(form.to_polynomial_form())


@dataclass(frozen=True)
class SphereKolmogorovReport:
    """Outcome of the membership test, with the cofactor as witness."""

    kolmogorov: bool
    sphere_invariant: bool
    sphere_cofactor: Optional[Poly]

    @property
    def passes(self) -> bool:
        return self.kolmogorov and self.sphere_invariant


def is_kolmogorov_on_sphere(vf: PolyVectorField) -> SphereKolmogorovReport:
    """Does every component factor through its coordinate, and is the unit
    sphere invariant?  The witness cofactor K satisfies
    lie_derivative(vf, sphere) = K * sphere when the sphere is invariant."""
    kolmogorov = True
    for i in range(1, vf.dim + 1):
        if divide_exact(vf.components[i - 1], Poly.var(vf.dim, i)) is None:
            kolmogorov = False
            break
    sphere = sphere_polynomial(vf.dim)
    cof = divide_exact(lie_derivative(vf, sphere), sphere)
    return SphereKolmogorovReport(
        kolmogorov=kolmogorov,
        sphere_invariant=cof is not None,
        sphere_cofactor=cof,
    )


def _pure_square_profile(q: Poly) -> Optional[List[Fraction]]:
    """Coefficients [c_0, c_1, ..., c_d] when q = c_0 + sum_j c_j x_j^2,
    None if q has any other monomial."""
    out = [Fraction(0)] * (q.dim + 1)
    for exps, coeff in q:
        nonzero = [(pos, e) for pos, e in enumerate(exps) if e != 0]
        if not nonzero:
            out[0] = coeff
        elif len(nonzero) == 1 and nonzero[0][1] == 2:
            out[nonzero[0][0] + 1] = coeff
        else:
            return None
    return out


def recover_cubic_form(vf: PolyVectorField) -> Optional[CubicKolmogorovForm]:
    """Constant assembly data reproducing the field exactly, if any.

    Each component must divide by its coordinate, the quotient may contain
    only a constant and pure squares, the x_i^2 coefficient of quotient i
    must be the negative of its constant term, and the off-diagonal reads
    must come out skew.  The recovered data round-trips through
    assemble_cubic by construction.
    """
    d = vf.dim
    alpha: List[Fraction] = []
    profiles: List[List[Fraction]] = []
    for i in range(1, d + 1):
        q = divide_exact(vf.components[i - 1], Poly.var(d, i))
        if q is None:
            return None
        profile = _pure_square_profile(q)
        if profile is None:
            return None
        a_i = profile[0]
        if profile[i] != -a_i:
            return None
        alpha.append(a_i)
        profiles.append(profile)
    atilde = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            if i != j:
                atilde[i][j] = profiles[i][j + 1] + alpha[i]
    for i in range(d):
        for j in range(i + 1, d):
            if atilde[i][j] != -atilde[j][i]:
                return None
    return CubicKolmogorovForm.from_values(alpha, atilde)


@dataclass(frozen=True)
class HomogeneousReport:
    """Joint test: one shared degree, coordinate factorization, and
    tangency sum_i P_i x_i = 0.  All three hold exactly when the field
    assembles from atilde alone (ftilde = 0) with homogeneous entries."""

    homogeneous: bool
    degree: object  # int, or NEG_INF for the zero field
    kolmogorov: bool
    tangent: bool

    @property
    def passes(self) -> bool:
        return self.homogeneous and self.kolmogorov and self.tangent


def classify_homogeneous(vf: PolyVectorField) -> HomogeneousReport:
    degrees = set()
    homogeneous = True
    for p in vf.components:
        if p.is_zero():
            continue
        if not p.is_homogeneous():
            homogeneous = False
        degrees.add(p.degree())
    if len(degrees) > 1:
        homogeneous = False
    degree = max(degrees) if degrees else NEG_INF
    kolmogorov = all(
        divide_exact(vf.components[i - 1], Poly.var(vf.dim, i)) is not None
        for i in range(1, vf.dim + 1)
    )
    tangent = Poly.zero(vf.dim)
    for i, p in enumerate(vf.components, start=1):
        tangent = tangent + p * Poly.var(vf.dim, i)
    return HomogeneousReport(
        homogeneous=homogeneous,
        degree=degree,
        kolmogorov=kolmogorov,
        tangent=tangent.is_zero(),
    )


# ----- JSON formats ----------------------------------------------------------
#
# Vector field:  {"dim": d, "components": ["<poly text>", ...]}
# Constant form: {"dim": d, "alpha": ["p/q", ...], "atilde": [["p/q", ...], ...]}
#
# Rationals travel as strings so exactness survives serialization.


def field_to_dict(vf: PolyVectorField) -> dict:
    return {"dim": vf.dim, "components": [str(p) for p in vf.components]}


def field_from_dict(data: dict) -> PolyVectorField:
    dim = int(data["dim"])
    components = tuple(parse(text, dim) for text in data["components"])
    return PolyVectorField(dim, components)


def cubic_form_to_dict(form: CubicKolmogorovForm) -> dict:
    return {
        "dim": form.dim,
        "alpha": [str(a) for a in form.alpha],
        "atilde": [[str(x) for x in row] for row in form.atilde],
    }


def cubic_form_from_dict(data: dict) -> CubicKolmogorovForm:
    alpha = [Fraction(s) for s in data["alpha"]]
    atilde = [[Fraction(s) for s in row] for row in data["atilde"]]
    form = CubicKolmogorovForm.from_values(alpha, atilde)
    if form.dim != int(data["dim"]):
        raise DimensionMismatchError(
            f"declared dim {data['dim']} but {form.dim} alpha entries"
        )
    return form


def field_to_json(vf: PolyVectorField) -> str:
    return json.dumps(field_to_dict(vf), indent=2, sort_keys=True)


def field_from_json(text: str) -> PolyVectorField:
    return field_from_dict(json.loads(text))
