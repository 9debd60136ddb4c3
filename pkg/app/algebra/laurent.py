"""
Laurent scalars: exact polynomials in t and 1/t with rational coefficients,
the coefficient ring of the quantized matrix algebra.
"""
from typing import Any, Dict, Iterator, Mapping, Optional, Tuple

from sympy.polys.domains import QQ

from app.algebra.lexer import TokenStream
from app.algebra.polynomial import format_rational, parse_rational
from app.exceptions import InexactDivisionError, PolynomialSyntaxError


class LaurentScalar:
    """Immutable map from integer exponents of t to nonzero rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, Any]] = None):
        cleaned: Dict[int, Any] = {}
        for exponent, coeff in (terms or {}).items():
            value = QQ.convert(coeff)
            if value:
                cleaned[int(exponent)] = value
        self._terms = cleaned
        self._hash = None

    @classmethod
    def constant(cls, value) -> "LaurentScalar":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentScalar":
        return cls({exponent: coeff})

    @classmethod
    def coerce(cls, value) -> "LaurentScalar":
        if isinstance(value, LaurentScalar):
            return value
        return cls.constant(value)

    # --- inspection ---

    def items(self) -> Iterator[Tuple[int, Any]]:
        return iter(sorted(self._terms.items(), reverse=True))

    def coefficient(self, exponent: int):
        return self._terms.get(exponent, QQ(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentScalar):
            try:
                other = LaurentScalar.constant(other)
            except Exception:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # --- arithmetic ---

    def __add__(self, other) -> "LaurentScalar":
        other = LaurentScalar.coerce(other)
        terms = dict(self._terms)
        for exponent, coeff in other._terms.items():
            terms[exponent] = terms.get(exponent, QQ(0)) + coeff
        return LaurentScalar(terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentScalar":
        return self + (-LaurentScalar.coerce(other))

    def __rsub__(self, other) -> "LaurentScalar":
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other) -> "LaurentScalar":
        other = LaurentScalar.coerce(other)
        terms: Dict[int, Any] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, QQ(0)) + c1 * c2
        return LaurentScalar(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentScalar":
        if exponent < 0:
            if len(self._terms) != 1:
                raise ValueError("Only monomials are invertible Laurent scalars")
            (e, c), = self._terms.items()
            return LaurentScalar({e * exponent: QQ(1) / c ** (-exponent)})
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    # --- specialization at t = 1 ---

    def eval_at_one(self):
        """Sum of the coefficients, the image under t -> 1."""
        return sum(self._terms.values(), QQ(0))

    def divide_by_t_minus_one(self) -> "LaurentScalar":
        """
        Exact quotient by (t - 1) through synthetic division.

        Raises:
            InexactDivisionError: If the value at t = 1 is nonzero
        """
        if not self._terms:
            return ZERO
        low, high = min(self._terms), max(self._terms)
        quotient: Dict[int, Any] = {}
        carry = QQ(0)
        for exponent in range(high, low, -1):
            carry = carry + self._terms.get(exponent, QQ(0))
            quotient[exponent - 1] = carry
        remainder = carry + self._terms.get(low, QQ(0))
        if remainder:
            raise InexactDivisionError(
                f"{self} is not divisible by (t - 1): remainder {format_rational(remainder)}"
            )
        return LaurentScalar(quotient)

    # --- text ---

    def __str__(self) -> str:
        return format_laurent(self)

    def __repr__(self) -> str:
        return f"LaurentScalar({format_laurent(self)!r})"


ZERO = LaurentScalar()
ONE = LaurentScalar.constant(1)
T = LaurentScalar.monomial(1)
T_INV = LaurentScalar.monomial(-1)


def laurent_eval_at_one(scalar: LaurentScalar):
    return scalar.eval_at_one()


def _format_power(exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return "t"
    return f"t^{exponent}"


def format_laurent(scalar: LaurentScalar) -> str:
    """Descending powers of t, e.g. ``t - t^-1``."""
    parts = []
    for position, (exponent, coeff) in enumerate(scalar.items()):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        power = _format_power(exponent)
        if not power:
            text = format_rational(magnitude)
        elif magnitude == 1:
            text = power
        else:
            text = f"{format_rational(magnitude)}*{power}"
        if position == 0:
            parts.append(f"-{text}" if negative else text)
        else:
            parts.append(f"- {text}" if negative else f"+ {text}")
    return " ".join(parts) if parts else "0"


def parse_laurent(text: str) -> LaurentScalar:
    """Parse text such as ``t - t^-1`` or ``3/2*t^2 + 1``."""
    stream = TokenStream(text)
    value = _parse_laurent_sum(stream)
    stream.expect("end")
    return value


def _parse_laurent_sum(stream: TokenStream) -> LaurentScalar:
    value = ZERO
    negative = bool(stream.accept("op", "-"))
    if not negative:
        stream.accept("op", "+")
    while True:
        term = _parse_laurent_term(stream)
        value = value - term if negative else value + term
        if stream.accept("op", "+"):
            negative = False
        elif stream.accept("op", "-"):
            negative = True
        else:
            return value


def _parse_laurent_term(stream: TokenStream) -> LaurentScalar:
    term = _parse_laurent_factor(stream)
    while stream.accept("op", "*"):
        term = term * _parse_laurent_factor(stream)
    return term


def _parse_laurent_factor(stream: TokenStream) -> LaurentScalar:
    token = stream.peek()
    if token.kind == "number":
        stream.advance()
        try:
            return LaurentScalar.constant(parse_rational(token.text))
        except ZeroDivisionError:
            raise PolynomialSyntaxError("Zero denominator", token.position) from None
    if token.kind == "name" and token.text == "t":
        stream.advance()
        exponent = 1
        if stream.accept("op", "^"):
            sign = -1 if stream.accept("op", "-") else 1
            exponent = sign * stream.integer()
        return LaurentScalar.monomial(exponent)
    shown = token.text or "end of input"
    raise PolynomialSyntaxError(f"Expected a number or t, found {shown!r}", token.position)
