"""Darboux first integrals H = g^(b_{d+1}) * prod_i x_i^(b_i) for fields
assembled from constant data (alpha, atilde) on R^d, d = n+1.

The exponent vectors come from the left nullspace of a (d+1) x (d+1)
rational matrix B built from the assembly data and the cofactor of one
extra invariant surface g: row i lists the cofactor data of the coordinate
hyperplane x_i = 0 and the last row lists g's structured cofactor.  A
product of powers of the invariant surfaces is a first integral exactly
when its exponent vector kills B from the left, which the code certifies
afterwards through the bit-exact identity sum_i b_i K_i = 0 on cofactors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .exactla import RationalMatrix, determinant, nullspace, rank
from .polyring import DimensionMismatchError, Poly, divide_exact
from .field_forms import (
    CubicKolmogorovForm,
    KolmogorovForm,
    PolyVectorField,
    assemble_cubic,
    construct_from_form,
    lie_derivative,
    sphere_polynomial,
)
from .invariance import (
    Cofactor,
    Hypersurface,
    HyperplaneSpec,
    NotInvariantError,
    cofactor,
)


class UnstructuredCofactorError(ValueError):
    """The extra surface's cofactor is not of the form k0 + sum k_i x_i^2."""


class NotASyzygyError(ValueError):
    """The polynomials do not satisfy sum_i q_i x_i^k = 0."""


class DegreeMismatchError(ValueError):
    """Interaction polynomial degree incompatible with the target degree."""


class ZeroSeedError(ValueError):
    """The seed skew matrix is identically zero."""


class HypothesisFailedError(ValueError):
    """An independence hypothesis matrix is singular."""

    def __init__(self, index: int, achieved_rank: int, needed: int):
        self.index = index
        self.achieved_rank = achieved_rank
        super().__init__(
            f"hypothesis matrix for omitted coordinate {index} has rank "
            f"{achieved_rank}, need {needed}"
        )


@dataclass(frozen=True)
class DarbouxIntegral:
    """Exponent vector over an ordered tuple of invariant surfaces."""

    exponents: Tuple[Fraction, ...]
    surfaces: Tuple[Hypersurface, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.surfaces):
            raise ValueError("one exponent per surface")
        if all(e == 0 for e in self.exponents):
            raise ValueError("exponents must not all vanish")


@dataclass(frozen=True)
class SamplePoint:
    """A rational point with every coordinate nonzero."""

    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if any(c == 0 for c in self.coords):
            raise ValueError("sample points need all coordinates nonzero")

    @classmethod
    def of(cls, values: Sequence) -> "SamplePoint":
        return cls(tuple(Fraction(v) for v in values))


def build_matrix_B(
    form: CubicKolmogorovForm, extra: Cofactor
) -> RationalMatrix:
    """Rows 1..d: (alpha_i, atilde_i1 - alpha_i, ..., atilde_id - alpha_i);
    last row: the structured cofactor (k0, k_1, ..., k_d) of the extra
    surface."""
    if extra.structured is None:
        raise UnstructuredCofactorError(
            f"cofactor {extra.poly} is not of the shape k0 + sum k_i x_i^2"
        )
    d = form.dim
    if len(extra.structured.k) != d:
        raise DimensionMismatchError(
            f"cofactor over {len(extra.structured.k)} variables, form on R^{d}"
        )
    rows = []
    for i in range(d):
        rows.append(
            [form.alpha[i]]
            + [form.atilde[i][j] - form.alpha[i] for j in range(d)]
        )
    rows.append([extra.structured.k0] + list(extra.structured.k))
    return RationalMatrix.from_rows(rows)


def coordinate_cofactor(form: CubicKolmogorovForm, i: int) -> Poly:
    """Cofactor of the hyperplane x_i = 0: alpha_i (1 - sum x^2) + sum_j atilde_ij x_j^2."""
    d = form.dim
    p = Poly.const(d, form.alpha[i - 1]) * (
        Poly.const(d, 1) - (sphere_polynomial(d) + 1)
    )
    for j in range(d):
        p = p + form.atilde[i - 1][j] * Poly.var(d, j + 1) ** 2
    return p


def verify_first_integral(
    vf: PolyVectorField, integral: DarbouxIntegral
) -> bool:
    """Bit-exact certificate: the exponent-weighted cofactor sum vanishes."""
    total = Poly.zero(vf.dim)
    for b, surface in zip(integral.exponents, integral.surfaces):
        cof = cofactor(vf, surface)
        if cof is None:
            raise NotInvariantError(
                f"surface {surface.defining} is not invariant for the field"
            )
        total = total + b * cof.poly
    return total.is_zero()


def find_darboux(
    form: CubicKolmogorovForm, g: Hypersurface
) -> List[DarbouxIntegral]:
    """All first integrals g^(b_{d+1}) prod x_i^(b_i), as a basis of
    exponent vectors; empty when the matrix B has full rank."""
    vf = assemble_cubic(form)
    extra = cofactor(vf, g)
    if extra is None:
        raise NotInvariantError(
            f"surface {g.defining} is not invariant for the assembled field"
        )
    matrix_b = build_matrix_B(form, extra)
    surfaces = tuple(
        Hypersurface(Poly.var(form.dim, i)) for i in range(1, form.dim + 1)
    ) + (g,)
    integrals = []
    for vec in nullspace(matrix_b, side="left"):
        integral = DarbouxIntegral(vec, surfaces)
        if not verify_first_integral(vf, integral):
            raise RuntimeError(
                f"internal error: nullspace vector {vec} failed the "
                "cofactor-sum certificate"
            )
        integrals.append(integral)
    return integrals


def syzygy_first_integral(
    form: CubicKolmogorovForm,
) -> List[DarbouxIntegral]:
    """Monomial first integrals prod x_i^(y_i) from the right nullspace of
    the stacked (d+1) x d matrix [alpha; atilde]: such y satisfy both
    sum y_i alpha_i = 0 and atilde y = 0."""
    d = form.dim
    stacked = RationalMatrix.from_rows(
        [list(form.alpha)] + [list(row) for row in form.atilde]
    )
    surfaces = tuple(
        Hypersurface(Poly.var(d, i)) for i in range(1, d + 1)
    )
    vf = assemble_cubic(form)
    integrals = []
    for vec in nullspace(stacked, side="right"):
        integral = DarbouxIntegral(vec, surfaces)
        if not verify_first_integral(vf, integral):
            raise RuntimeError(
                f"internal error: stacked-nullspace vector {vec} failed "
                "the cofactor-sum certificate"
            )
        integrals.append(integral)
    return integrals


def decompose_syzygy(
    q: Sequence[Poly], k: int
) -> Tuple[Tuple[Poly, ...], ...]:
    """Skew polynomial matrix atilde with q_i = sum_j atilde_ij x_j^k.

    Works greedily: while the residual of row i is nonzero, its leading
    monomial must carry an x_j^k factor for some later j (otherwise the
    defining relation sum q_i x_i^k = 0 could not cancel it), and moving
    that monomial into the (i, j) / (j, i) pair preserves the relation.
    """
    d = len(q)
    if k < 1:
        raise ValueError("the exponent k must be a positive natural")
    if d == 0:
        return ()
    for p in q:
        if p.dim != d:
            raise DimensionMismatchError(
                f"syzygy of length {d} with an entry in {p.dim} variables"
            )
    powers = [Poly.var(d, j) ** k for j in range(1, d + 1)]
    total = Poly.zero(d)
    for p, xk in zip(q, powers):
        total = total + p * xk
    if not total.is_zero():
        raise NotASyzygyError("sum_i q_i x_i^k is not the zero polynomial")

    residuals = list(q)
    atilde = [[Poly.zero(d) for _ in range(d)] for _ in range(d)]
    for i in range(d):
        while not residuals[i].is_zero():
            exps, coeff = residuals[i].leading()
            chosen = None
            for j in range(i + 1, d):
                if exps[j] < k:
                    continue
                mu = list(exps)
                mu[j] -= k
                shifted = tuple(mu)
                target = list(shifted)
                target[i] += k
                if tuple(target) in residuals[j].terms:
                    chosen = (j, shifted)
                    break
            if chosen is None:
                raise RuntimeError(
                    "internal error: no pairing column for monomial "
                    f"{exps} in row {i + 1}"
                )
            j, shifted = chosen
            delta = Poly(d, {shifted: coeff})
            atilde[i][j] = atilde[i][j] + delta
            atilde[j][i] = atilde[j][i] - delta
            residuals[i] = residuals[i] - delta * powers[j]
            residuals[j] = residuals[j] + delta * powers[i]
    if any(not r.is_zero() for r in residuals):
        raise RuntimeError("internal error: nonzero residual after pairing")
    return tuple(tuple(row) for row in atilde)


def construct_linear_fi_field(
    hp: HyperplaneSpec, seed_skew: Sequence[Sequence[Poly]]
) -> KolmogorovForm:
    """A field with the affine function a0 + sum a_i x_i as a first integral.

    Pick the least k with a_k != 0.  Embed x_k * seed (an n x n skew
    polynomial matrix) into the rows and columns away from k, then solve
    row k so that every column of atilde is killed by (a_1 x_1, ..., a_d x_d);
    the division involved is exact because each embedded entry carries the
    factor x_k.  The result has ftilde = 0 and cofactor 0 for the plane.
    """
    d = hp.dim
    n = d - 1
    if len(seed_skew) != n or any(len(row) != n for row in seed_skew):
        raise ValueError(f"seed must be {n} x {n} for a field on R^{d}")
    seed = [[p for p in row] for row in seed_skew]
    for row in seed:
        for p in row:
            if p.dim != d:
                raise DimensionMismatchError(
                    f"seed entry in {p.dim} variables, field on R^{d}"
                )
    for i in range(n):
        if not seed[i][i].is_zero():
            raise ValueError("seed matrix has a nonzero diagonal entry")
        for j in range(i + 1, n):
            if seed[i][j] != -seed[j][i]:
                raise ValueError("seed matrix is not skew-symmetric")
    if all(p.is_zero() for row in seed for p in row):
        raise ZeroSeedError("seed matrix must not vanish identically")

    k = next(i for i, a in enumerate(hp.a) if a != 0)  # 0-based
    x_k = Poly.var(d, k + 1)
    others = [i for i in range(d) if i != k]

    atilde = [[Poly.zero(d) for _ in range(d)] for _ in range(d)]
    for si, i in enumerate(others):
        for sj, j in enumerate(others):
            atilde[i][j] = x_k * seed[si][sj]

    divisor = Fraction(hp.a[k]) * x_k
    for j in others:
        s = Poly.zero(d)
        for i in others:
            s = s + hp.a[i] * Poly.var(d, i + 1) * atilde[i][j]
        quotient = divide_exact(s, divisor)
        assert quotient is not None, "row-k division must be exact"
        atilde[k][j] = -quotient
        atilde[j][k] = quotient

    form = KolmogorovForm(
        d,
        tuple(Poly.zero(d) for _ in range(d)),
        tuple(tuple(row) for row in atilde),
    )
    field = construct_from_form(form)
    if not lie_derivative(field, hp.defining_poly()).is_zero():
        raise RuntimeError(
            "internal error: constructed field does not conserve the plane"
        )
    return form


@dataclass(frozen=True)
class IntegrabilityCertificate:
    """n verified first integrals plus an exact independence witness."""

    integrals: Tuple[DarbouxIntegral, ...]
    sample_point: SamplePoint
    jacobian_rank: int


def construct_completely_integrable(
    n: int, m: int, atilde_poly: Poly
) -> Tuple[PolyVectorField, IntegrabilityCertificate]:
    """The degree-m field (A x1 x2^2, -A x1^2 x2, 0, ..., 0) on R^(n+1)
    with A = atilde_poly of degree m - 3, together with its n functionally
    independent first integrals: the unit sphere and the last n-1
    coordinates."""
    if n < 1:
        raise ValueError("need n >= 1")
    if m < 3:
        raise ValueError("need degree m >= 3")
    d = n + 1
    if atilde_poly.dim != d:
        raise DimensionMismatchError(
            f"interaction polynomial in {atilde_poly.dim} variables, need {d}"
        )
    if atilde_poly.is_zero() or atilde_poly.degree() != m - 3:
        raise DegreeMismatchError(
            f"interaction polynomial must be nonzero of degree {m - 3}"
        )
    x1 = Poly.var(d, 1)
    x2 = Poly.var(d, 2)
    components = [atilde_poly * x1 * x2 * x2, -atilde_poly * x1 * x1 * x2]
    components += [Poly.zero(d) for _ in range(d - 2)]
    field = PolyVectorField(d, tuple(components))

    surfaces = [Hypersurface(sphere_polynomial(d))]
    surfaces += [Hypersurface(Poly.var(d, j)) for j in range(3, d + 1)]
    integrals = []
    for surface in surfaces:
        if not lie_derivative(field, surface.defining).is_zero():
            raise RuntimeError(
                f"internal error: {surface.defining} is not conserved"
            )
        integrals.append(
            DarbouxIntegral((Fraction(1),), (surface,))
        )

    point = SamplePoint.of([1] * d)
    jacobian = RationalMatrix.from_rows(
        [
            [surface.defining.differentiate(l).evaluate(point.coords)
             for l in range(1, d + 1)]
            for surface in surfaces
        ]
    )
    jac_rank = rank(jacobian)
    if jac_rank != n:
        raise RuntimeError(
            f"internal error: independence rank {jac_rank}, expected {n}"
        )
    return field, IntegrabilityCertificate(
        tuple(integrals), point, jac_rank
    )


def standard_sample_points(dim: int) -> Tuple[SamplePoint, ...]:
    """Point j is all ones with a 2 in coordinate j."""
    points = []
    for j in range(dim):
        coords = [1] * dim
        coords[j] = 2
        points.append(SamplePoint.of(coords))
    return tuple(points)


def hypothesis_matrix(
    g: Poly, omit: int, points: Sequence[SamplePoint]
) -> RationalMatrix:
    """Rows: the vector (x_1 dg/dx_1, ..., omitting coordinate ``omit``,
    ..., x_d dg/dx_d, -g) evaluated at each point."""
    d = g.dim
    if not 1 <= omit <= d:
        raise ValueError(f"omitted coordinate {omit} outside 1..{d}")
    if len(points) != d:
        raise ValueError(f"need {d} sample points, got {len(points)}")
    partials = [g.differentiate(l) for l in range(1, d + 1)]
    rows = []
    for pt in points:
        row = [
            pt.coords[l] * partials[l].evaluate(pt.coords)
            for l in range(d)
            if l != omit - 1
        ]
        row.append(-g.evaluate(pt.coords))
        rows.append(row)
    return RationalMatrix.from_rows(rows)


@dataclass(frozen=True)
class CompleteIntegrabilityCertificate:
    """Outcome of the rank test: completely integrable exactly when the
    exponent matrix B has rank at most two, in which case n verified and
    linearly independent exponent vectors are emitted."""

    rank_b: int
    integrals: Tuple[DarbouxIntegral, ...]
    hypothesis_determinants: Tuple[Fraction, ...]

    @property
    def completely_integrable(self) -> bool:
        return self.rank_b <= 2

    def to_dict(self) -> dict:
        return {
            "rank_B": self.rank_b,
            "integrals": [
                {
                    "exponents": [str(e) for e in integral.exponents],
                    "surfaces": [
                        str(s.defining) for s in integral.surfaces
                    ],
                }
                for integral in self.integrals
            ],
            "hypothesis": {
                "checked": True,
                "determinants": [
                    str(v) for v in self.hypothesis_determinants
                ],
            },
        }


def complete_integrability_check(
    form: CubicKolmogorovForm,
    g: Hypersurface,
    samples: Optional[Sequence[Sequence[SamplePoint]]] = None,
) -> CompleteIntegrabilityCertificate:
    """Decide complete integrability from rank(B) <= 2, after checking the
    independence hypothesis at the sample grid.

    ``samples[i-1][j-1]`` is the j-th evaluation point for the family that
    omits coordinate i; the default grid reuses the standard points for
    every i.  For each i the hypothesis needs g and dg/dx_i nonzero at each
    point and an invertible evaluation matrix.
    """
    d = form.dim
    n = d - 1
    if g.dim != d:
        raise DimensionMismatchError(
            f"surface in {g.dim} variables, form on R^{d}"
        )
    if samples is None:
        row = standard_sample_points(d)
        samples = [row] * d
    if len(samples) != d or any(len(r) != d for r in samples):
        raise ValueError(f"sample grid must be {d} x {d}")

    determinants = []
    for i in range(1, d + 1):
        dg_i = g.defining.differentiate(i)
        for j, pt in enumerate(samples[i - 1], start=1):
            if g.defining.evaluate(pt.coords) == 0:
                raise HypothesisFailedError(i, 0, d)
            if dg_i.evaluate(pt.coords) == 0:
                raise HypothesisFailedError(i, 0, d)
        matrix = hypothesis_matrix(g.defining, i, samples[i - 1])
        det = determinant(matrix)
        if det == 0:
            raise HypothesisFailedError(i, rank(matrix), d)
        determinants.append(det)

    vf = assemble_cubic(form)
    extra = cofactor(vf, g)
    if extra is None:
        raise NotInvariantError(
            f"surface {g.defining} is not invariant for the assembled field"
        )
    matrix_b = build_matrix_B(form, extra)
    rank_b = rank(matrix_b)

    integrals: List[DarbouxIntegral] = []
    if rank_b <= 2:
        surfaces = tuple(
            Hypersurface(Poly.var(d, i)) for i in range(1, d + 1)
        ) + (g,)
        basis = nullspace(matrix_b, side="left")[:n]
        for vec in basis:
            integral = DarbouxIntegral(vec, surfaces)
            if not verify_first_integral(vf, integral):
                raise RuntimeError(
                    f"internal error: exponent vector {vec} failed the "
                    "cofactor-sum certificate"
                )
            integrals.append(integral)
        stacked = RationalMatrix.from_rows([i.exponents for i in integrals])
        if rank(stacked) != n:
            raise RuntimeError(
                "internal error: emitted exponent vectors are dependent"
            )
    return CompleteIntegrabilityCertificate(
        rank_b=rank_b,
        integrals=tuple(integrals),
        hypothesis_determinants=tuple(determinants),
    )
