"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial in ``dim`` variables x1..x<dim> is stored as a dict mapping an
exponent tuple (one natural number per variable) to a nonzero ``Fraction``
coefficient.  The zero polynomial is the empty dict.  All arithmetic is exact;
no floating point enters this module.

Monomial order everywhere is graded lexicographic with x1 > x2 > ... :
compare total degree first, then the exponent tuples lexicographically.
The same order drives both ``divide_exact`` and canonical printing, so
``parse(str(p), p.dim) == p`` holds for every polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]

# Degree of the zero polynomial: a distinguished value below every natural.
NEG_INF = float("-inf")


class DimensionMismatchError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class VariableIndexError(IndexError):
    """A variable index lies outside 1..dim."""


class ParseError(ValueError):
    """Raised when polynomial text does not match the grammar.

    Carries the character offset of the offending token and a short
    description of what would have been accepted there.
    """

    def __init__(self, position: int, expected: str, found: str):
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(
            f"at position {position}: expected {expected}, found {found}"
        )


class ZeroDenominatorError(ValueError):
    """A rational literal has denominator zero."""


def _grlex_key(exponents: Monomial) -> tuple:
    return (sum(exponents), exponents)


class Poly:
    """Immutable sparse polynomial with Fraction coefficients.

    Construct through :meth:`zero`, :meth:`const`, :meth:`var`,
    :meth:`from_terms` or :func:`parse`; the constructor trusts its input
    mapping to be canonical apart from zero coefficients, which it drops.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[Monomial, Fraction]):
        if dim < 0:
            raise ValueError("dim must be a natural number")
        clean: Dict[Monomial, Fraction] = {}
        for exps, coeff in terms.items():
            if len(exps) != dim:
                raise DimensionMismatchError(
                    f"exponent tuple {exps} has length {len(exps)}, expected {dim}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in monomial {exps}")
            c = Fraction(coeff)
            if c != 0:
                clean[tuple(exps)] = c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Poly is immutable")

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "Poly":
        return cls(dim, {})

    @classmethod
    def const(cls, dim: int, value: Scalar) -> "Poly":
        return cls(dim, {(0,) * dim: Fraction(value)})

    @classmethod
    def var(cls, dim: int, index: int) -> "Poly":
        """The variable x<index>, 1-based."""
        if not 1 <= index <= dim:
            raise VariableIndexError(
                f"variable index {index} outside 1..{dim}"
            )
        exps = [0] * dim
        exps[index - 1] = 1
        return cls(dim, {tuple(exps): Fraction(1)})

    @classmethod
    def from_terms(
        cls, dim: int, terms: Iterable[Tuple[Monomial, Scalar]]
    ) -> "Poly":
        acc: Dict[Monomial, Fraction] = {}
        for exps, coeff in terms:
            key = tuple(exps)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff)
        return cls(dim, acc)

    # ----- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        """True when all monomials share one total degree (zero counts)."""
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def coefficient(self, exponents: Monomial) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.dim, Fraction(0))

    def leading(self) -> Tuple[Monomial, Fraction]:
        """Leading (monomial, coefficient) in graded lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ----- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.dim != self.dim:
                raise DimensionMismatchError(
                    f"cannot combine polynomials in {self.dim} and {other.dim} variables"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.dim, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "Poly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for exps, coeff in rhs.terms.items():
            acc[exps] = acc.get(exps, Fraction(0)) + coeff
        return Poly(self.dim, acc)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        acc: Dict[Monomial, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in rhs.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return Poly(self.dim, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers take natural exponents")
        result = Poly.const(self.dim, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.dim == other.dim and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.dim, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.terms.items())))

    # ----- calculus and evaluation ----------------------------------------

    def differentiate(self, var: int) -> "Poly":
        """Partial derivative with respect to x<var> (1-based)."""
        if not 1 <= var <= self.dim:
            raise VariableIndexError(f"variable index {var} outside 1..{self.dim}")
        i = var - 1
        acc: Dict[Monomial, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            key = exps[:i] + (e - 1,) + exps[i + 1:]
            acc[key] = acc.get(key, Fraction(0)) + coeff * e
        return Poly(self.dim, acc)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.dim:
            raise DimensionMismatchError(
                f"point has {len(point)} coordinates, expected {self.dim}"
            )
        coords = [Fraction(c) for c in point]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            value = coeff
            for c, e in zip(coords, exps):
                if e:
                    value *= c ** e
            total += value
        return total

    # ----- printing --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=_grlex_key, reverse=True)
        pieces = []
        for exps, first in zip(ordered, [True] + [False] * len(ordered)):
            coeff = self.terms[exps]
            body = _term_text(exps, abs(coeff))
            if first:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, dim={self.dim})"


def _term_text(exps: Monomial, coeff: Fraction) -> str:
    vars_part = "*".join(
        f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
        for i, e in enumerate(exps)
        if e > 0
    )
    if not vars_part:
        return str(coeff)
    if coeff == 1:
        return vars_part
    return f"{coeff}*{vars_part}"


def degree_info(p: Poly) -> tuple:
    """(total degree, is_homogeneous) with NEG_INF for the zero polynomial."""
    return (p.degree(), p.is_homogeneous())


def divide_exact(dividend: Poly, divisor: Poly):
    """Quotient when ``divisor`` divides ``dividend`` exactly, else None.

    Single-divisor division under graded lex order: repeatedly cancel the
    leading term of the running remainder against the divisor's leading
    term.  If at any point the leading monomial is not divisible the
    dividend cannot be a multiple (over a field a nonzero remainder is
    definitive for a singleton divisor set), so the scan stops early.
    """
    if divisor.dim != dividend.dim:
        raise DimensionMismatchError(
            f"dividend in {dividend.dim} variables, divisor in {divisor.dim}"
        )
    if divisor.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_exps, lead_coeff = divisor.leading()
    remainder = dividend
    quotient: Dict[Monomial, Fraction] = {}
    while not remainder.is_zero():
        r_exps, r_coeff = remainder.leading()
        step = tuple(a - b for a, b in zip(r_exps, lead_exps))
        if any(e < 0 for e in step):
            return None
        c = r_coeff / lead_coeff
        quotient[step] = quotient.get(step, Fraction(0)) + c
        remainder = remainder - Poly(dividend.dim, {step: c}) * divisor
    return Poly(dividend.dim, quotient)


# ----- parsing --------------------------------------------------------------
#
# poly     := ['-'] term (('+'|'-') term)*
# term     := factor ('*' factor)*
# factor   := base ('^' NAT)?
# base     := RATIONAL | VAR | '(' poly ')'
# RATIONAL := INT ('/' POSNAT)?
# VAR      := 'x' POSNAT
#
# Whitespace is insignificant.  There is no implicit multiplication:
# "2x1" is a syntax error.

_OPS = set("+-*/^()")


class _Token:
    __slots__ = ("kind", "value", "position")

    def __init__(self, kind: str, value, position: int):
        self.kind = kind  # "int" | "var" | one of _OPS | "end"
        self.value = value
        self.position = position

    def describe(self) -> str:
        if self.kind == "int":
            return f"integer {self.value}"
        if self.kind == "var":
            return f"variable x{self.value}"
        if self.kind == "end":
            return "end of input"
        return f"'{self.kind}'"


def _tokenize(text: str) -> list:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(text[i:j]), i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError(i, "a variable index after 'x'", f"'{ch}'")
            index = int(text[i + 1:j])
            if index == 0:
                raise ParseError(i, "a positive variable index", text[i:j])
            tokens.append(_Token("var", index, i))
            i = j
            continue
        raise ParseError(i, "a term", f"'{ch}'")
    tokens.append(_Token("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens: list, dim: int):
        self.tokens = tokens
        self.pos = 0
        self.dim = dim

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, expected: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.position, expected, tok.describe())
        return self.advance()

    def parse_poly(self) -> Poly:
        negate = False
        if self.peek().kind == "-":
            self.advance()
            negate = True
        result = self.parse_term()
        if negate:
            result = -result
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            term = self.parse_term()
            result = result + term if op.kind == "+" else result - term
        return result

    def parse_term(self) -> Poly:
        result = self.parse_factor()
        while self.peek().kind == "*":
            self.advance()
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> Poly:
        base = self.parse_base()
        if self.peek().kind == "^":
            self.advance()
            tok = self.expect("int", "a natural exponent")
            return base ** tok.value
        return base

    def parse_base(self) -> Poly:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            numerator = tok.value
            if self.peek().kind == "/":
                self.advance()
                den_tok = self.expect("int", "a positive denominator")
                if den_tok.value == 0:
                    raise ZeroDenominatorError(
                        f"at position {den_tok.position}: denominator is zero"
                    )
                return Poly.const(self.dim, Fraction(numerator, den_tok.value))
            return Poly.const(self.dim, numerator)
        if tok.kind == "var":
            self.advance()
            if tok.value > self.dim:
                raise VariableIndexError(
                    f"at position {tok.position}: variable x{tok.value} "
                    f"outside 1..{self.dim}"
                )
            return Poly.var(self.dim, tok.value)
        if tok.kind == "(":
            self.advance()
            inner = self.parse_poly()
            self.expect(")", "')'")
            return inner
        raise ParseError(
            tok.position, "a rational, a variable, or '('", tok.describe()
        )


def parse(text: str, dim: int) -> Poly:
    """Parse polynomial text into a Poly in ``dim`` variables."""
    parser = _Parser(_tokenize(text), dim)
    result = parser.parse_poly()
    tail = parser.peek()
    if tail.kind != "end":
        raise ParseError(tail.position, "'+', '-', '*', '^', or end of input",
                         tail.describe())
    return result
