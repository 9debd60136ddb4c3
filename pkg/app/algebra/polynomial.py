"""
Sparse exact-rational polynomials over a variable context.

Polynomials are sympy ``PolyElement`` values over ``QQ`` in graded-lex order;
this module adds the roster-aware parser and printer, the arithmetic
dispatcher, partial derivatives, evaluation and variable relabeling.
"""
import logging
from typing import Any, Dict, Optional, Sequence, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from app.algebra.context import ExponentVector, VariableContext
from app.algebra.lexer import TokenStream
from app.exceptions import ContextMismatchError, PolynomialSyntaxError

logger = logging.getLogger(__name__)

Polynomial = PolyElement


def format_rational(value) -> str:
    value = QQ.convert(value)
    numerator, denominator = int(QQ.numer(value)), int(QQ.denom(value))
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def parse_rational(text: str):
    if "/" in text:
        numerator, denominator = text.split("/")
        if int(denominator) == 0:
            raise ZeroDivisionError("Zero denominator in rational literal")
        return QQ(int(numerator), int(denominator))
    return QQ(int(text))


# --- parsing -----------------------------------------------------------------


def parse_polynomial(text: str, context: VariableContext) -> Polynomial:
    """
    Parse polynomial text against a variable roster.

    Args:
        text: Text such as ``"x[1,1]*x[2,2] - x[1,2]*x[2,1]"``
        context: Roster the variables must belong to

    Returns:
        Polynomial: Canonical polynomial in ``context``

    Raises:
        PolynomialSyntaxError: On grammar violations, with the offending position
        UnknownVariableError: If a variable is outside the roster
    """
    stream = TokenStream(text)
    result = context.zero
    negative = bool(stream.accept("op", "-"))
    if not negative:
        stream.accept("op", "+")
    while True:
        term = _parse_term(stream, context)
        result = result - term if negative else result + term
        if stream.accept("op", "+"):
            negative = False
        elif stream.accept("op", "-"):
            negative = True
        else:
            break
    stream.expect("end")
    return result


def _parse_term(stream: TokenStream, context: VariableContext) -> Polynomial:
    term = _parse_factor(stream, context)
    while stream.accept("op", "*"):
        term = term * _parse_factor(stream, context)
    return term


def _parse_factor(stream: TokenStream, context: VariableContext) -> Polynomial:
    token = stream.peek()
    if token.kind == "number":
        stream.advance()
        try:
            return context.constant(parse_rational(token.text))
        except ZeroDivisionError:
            raise PolynomialSyntaxError("Zero denominator", token.position) from None
    if token.kind == "name":
        stream.advance()
        index = context.index_of(token.text, token.position)
        exponent = stream.integer() if stream.accept("op", "^") else 1
        return context.gen(index) ** exponent
    shown = token.text or "end of input"
    raise PolynomialSyntaxError(f"Expected a coefficient or variable, found {shown!r}", token.position)


# --- printing ----------------------------------------------------------------


def format_monomial(monom: ExponentVector, context: VariableContext) -> str:
    factors = []
    for index, exponent in enumerate(monom):
        if exponent == 1:
            factors.append(context.names[index])
        elif exponent > 1:
            factors.append(f"{context.names[index]}^{exponent}")
    return "*".join(factors)


def format_polynomial(f: Polynomial, context: VariableContext) -> str:
    """Canonical text: graded-lex order, explicit signs, ``*`` between factors."""
    context.ensure(f)
    if not f:
        return "0"
    parts = []
    for position, (monom, coeff) in enumerate(f.terms()):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        body = format_monomial(monom, context)
        if not body:
            text = format_rational(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{format_rational(magnitude)}*{body}"
        if position == 0:
            parts.append(f"-{text}" if negative else text)
        else:
            parts.append(f"- {text}" if negative else f"+ {text}")
    return " ".join(parts)


# --- arithmetic --------------------------------------------------------------


def _same_ring(polys: Sequence[Polynomial]) -> None:
    rings = {id(getattr(p, "ring", None)) for p in polys}
    if len(rings) > 1:
        raise ContextMismatchError("Operands belong to different variable contexts")


def poly_arith(op: str, *args: Any) -> Polynomial:
    """
    Exact arithmetic dispatcher.

    Args:
        op: One of ``add``, ``mul``, ``pow``, ``scale``
        args: Polynomials for ``add``/``mul``; ``(f, k)`` for ``pow``;
            ``(f, c)`` with rational ``c`` for ``scale``

    Returns:
        Polynomial: Canonical result

    Raises:
        ContextMismatchError: If the polynomial operands do not share a context
        ValueError: On an unknown operation or a negative exponent
    """
    if op == "add":
        _same_ring(args)
        result = args[0]
        for other in args[1:]:
            result = result + other
        return result
    if op == "mul":
        _same_ring(args)
        result = args[0]
        for other in args[1:]:
            result = result * other
        return result
    if op == "pow":
        base, exponent = args
        if exponent < 0:
            raise ValueError("Exponent must be nonnegative")
        return base ** exponent
    if op == "scale":
        base, factor = args
        return base * QQ.convert(factor)
    raise ValueError(f"Unknown polynomial operation: {op}")


def partial_derivative(f: Polynomial, variable: Union[int, str], context: VariableContext) -> Polynomial:
    context.ensure(f)
    index = variable if isinstance(variable, int) else context.index_of(variable)
    return f.diff(context.gen(index))


def partials(f: Polynomial) -> Dict[int, Polynomial]:
    """Nonzero first partial derivatives keyed by variable index."""
    ring = f.ring
    used = set()
    for monom in f.itermonoms():
        used.update(i for i, e in enumerate(monom) if e)
    return {i: f.diff(ring.gens[i]) for i in sorted(used)}


def evaluate(f: Polynomial, point: Sequence[Any]):
    """Exact value of ``f`` at a rational point given in variable order."""
    values = [QQ.convert(v) for v in point]
    total = QQ(0)
    for monom, coeff in f.items():
        term = coeff
        for value, exponent in zip(values, monom):
            if exponent:
                term *= value ** exponent
        total += term
    return total


def relabel(f: Polynomial, target: VariableContext, images: Sequence[Optional[int]]) -> Polynomial:
    """
    Map variable ``i`` of ``f`` to variable ``images[i]`` of ``target``.

    A ``None`` image sends the variable to zero; several variables may share
    an image.
    """
    terms: Dict[ExponentVector, Any] = {}
    width = target.ngens
    for monom, coeff in f.items():
        exponents = [0] * width
        for index, exponent in enumerate(monom):
            if not exponent:
                continue
            destination = images[index]
            if destination is None:
                break
            exponents[destination] += exponent
        else:
            key = tuple(exponents)
            terms[key] = terms.get(key, QQ(0)) + coeff
    return target.ring.from_dict(terms)


def is_homogeneous(f: Polynomial, degree: Optional[int] = None) -> bool:
    degrees = {sum(monom) for monom in f.itermonoms()}
    if not degrees:
        return True
    if len(degrees) > 1:
        return False
    return degree is None or degrees == {degree}
