"""
The quantized coordinate ring O_t(M_n) over Q[t, 1/t].

Elements are combinations of words in the generators x[i,j]; the normal
form keeps only words sorted row-major (the PBW basis). Rewriting replaces
an adjacent out-of-order pair x[k,l] x[i,j], (i,j) < (k,l), by

    x[i,j] x[k,l] - (t - 1/t) x[i,l] x[k,j]   if i < k and j < l
    1/t x[i,j] x[k,l]                          if i = k or j = l
    x[i,j] x[k,l]                              if i < k and j > l

Words do not depend on n, so normal forms are memoized once for all sizes.
"""
import logging
import re
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation
from sympy.polys.rings import PolyElement

from app.algebra.context import matrix_context
from app.algebra.laurent import ONE, T, T_INV, ZERO, LaurentScalar, format_laurent, laurent_eval_at_one
from app.algebra.lexer import TokenStream
from app.algebra.polynomial import parse_rational
from app.config import Settings, settings
from app.exceptions import IndexRangeError, PolynomialSyntaxError, ResourceLimitError, UnknownVariableError
from app.services.invariant_service import index_set

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]
Word = Tuple[Letter, ...]
Rewrite = List[Tuple[LaurentScalar, Tuple[Letter, Letter]]]

_GENERATOR_RE = re.compile(r"x\[(\d+),(\d+)\]")


class NCPolynomial:
    """Map from words to nonzero Laurent coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Word, LaurentScalar]] = None):
        self._terms: Dict[Word, LaurentScalar] = {}
        for word, coeff in (terms or {}).items():
            _accumulate(self._terms, tuple(word), LaurentScalar.coerce(coeff))

    @classmethod
    def generator(cls, i: int, j: int) -> "NCPolynomial":
        return cls({((i, j),): ONE})

    @classmethod
    def word(cls, letters: Sequence[Letter], coeff=ONE) -> "NCPolynomial":
        return cls({tuple(letters): coeff})

    @classmethod
    def scalar(cls, value) -> "NCPolynomial":
        return cls({(): value})

    def items(self) -> List[Tuple[Word, LaurentScalar]]:
        """Terms by descending word length, then row-major word order."""
        return sorted(self._terms.items(), key=lambda item: (-len(item[0]), item[0]))

    def coefficient(self, word: Sequence[Letter]) -> LaurentScalar:
        return self._terms.get(tuple(word), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        terms = dict(self._terms)
        for word, coeff in other._terms.items():
            _accumulate(terms, word, coeff)
        return NCPolynomial(terms)

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def scale(self, factor) -> "NCPolynomial":
        factor = LaurentScalar.coerce(factor)
        return NCPolynomial({w: c * factor for w, c in self._terms.items()})

    def __mul__(self, other: "NCPolynomial") -> "NCPolynomial":
        return nc_mul(self, other)

    def is_normal(self) -> bool:
        return all(_first_descent(word) is None for word in self._terms)

    def __repr__(self) -> str:
        return f"NCPolynomial({format_nc(self)!r})"


def _accumulate(terms: Dict[Word, LaurentScalar], word: Word, coeff: LaurentScalar) -> None:
    value = terms.get(word, ZERO) + coeff
    if value:
        terms[word] = value
    else:
        terms.pop(word, None)


# --- rewriting ---------------------------------------------------------------


def _first_descent(word: Word) -> Optional[int]:
    for position in range(len(word) - 1):
        if word[position] > word[position + 1]:
            return position
    return None


def _descents(word: Word) -> List[int]:
    return [p for p in range(len(word) - 1) if word[p] > word[p + 1]]


def rewrite_pair(left: Letter, right: Letter) -> Rewrite:
    """Replacement for the out-of-order product ``left * right``."""
    (k, l), (i, j) = left, right
    if not (i, j) < (k, l):
        raise ValueError(f"x[{k},{l}] x[{i},{j}] is already ordered")
    if i == k or j == l:
        return [(T_INV, ((i, j), (k, l)))]
    if j < l:
        return [(ONE, ((i, j), (k, l))), (-(T - T_INV), ((i, l), (k, j)))]
    return [(ONE, ((i, j), (k, l)))]


@lru_cache(maxsize=settings.normal_form_cache_size)
def normal_form(word: Word) -> Tuple[Tuple[Word, LaurentScalar], ...]:
    """
    PBW normal form of a single word, rewriting the leftmost descent first.

    Every rewrite replaces a word by lexicographically smaller words of the
    same length, so the recursion terminates.
    """
    position = _first_descent(word)
    if position is None:
        return ((word, ONE),)
    terms: Dict[Word, LaurentScalar] = {}
    for coeff, pair in rewrite_pair(word[position], word[position + 1]):
        replaced = word[:position] + pair + word[position + 2:]
        for normal, inner in normal_form(replaced):
            _accumulate(terms, normal, coeff * inner)
    return tuple(sorted(terms.items(), key=lambda item: item[0]))


def reduce_word(word: Sequence[Letter], choose: Optional[Callable[[List[int]], int]] = None) -> NCPolynomial:
    """
    Normal form of a word without memoization, rewriting at the descent
    picked by ``choose`` (leftmost by default).
    """
    choose = choose or (lambda positions: positions[0])
    pending: Dict[Word, LaurentScalar] = {tuple(word): ONE}
    done: Dict[Word, LaurentScalar] = {}
    while pending:
        current, coeff = pending.popitem()
        positions = _descents(current)
        if not positions:
            _accumulate(done, current, coeff)
            continue
        position = choose(positions)
        for factor, pair in rewrite_pair(current[position], current[position + 1]):
            _accumulate(pending, current[:position] + pair + current[position + 2:], coeff * factor)
    return NCPolynomial(done)


def nc_normal_form(p: NCPolynomial) -> NCPolynomial:
    terms: Dict[Word, LaurentScalar] = {}
    for word, coeff in p.items():
        for normal, inner in normal_form(word):
            _accumulate(terms, normal, coeff * inner)
    return NCPolynomial(terms)


def nc_mul(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    """Concatenate words, multiply coefficients, normalize."""
    terms: Dict[Word, LaurentScalar] = {}
    for left, c1 in a.items():
        for right, c2 in b.items():
            for normal, inner in normal_form(left + right):
                _accumulate(terms, normal, c1 * c2 * inner)
    return NCPolynomial(terms)


def nc_commutator(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    return nc_mul(a, b) - nc_mul(b, a)


# --- determinants and minors -----------------------------------------------


def _signed_power(length: int) -> LaurentScalar:
    """(-t)^length."""
    return LaurentScalar.monomial(length, (-1) ** length)


def quantum_minor(rows: Sequence[int], n: int, convention: str = "standard") -> NCPolynomial:
    """
    Principal quantum minor on the index set ``rows``.

    ``standard`` weights x[i_1, i_s(1)] ... x[i_k, i_s(k)] by (-t)^l(s);
    ``printed`` uses the sign-free weight t^(-l(s)).
    """
    rows = index_set(rows, n)
    if convention not in ("standard", "printed"):
        raise ValueError(f"Unknown minor convention: {convention}")
    terms: Dict[Word, LaurentScalar] = {}
    for image in permutations(range(len(rows))):
        length = Permutation(list(image)).inversions()
        coeff = _signed_power(length) if convention == "standard" else LaurentScalar.monomial(-length)
        word = tuple((row, rows[image[k]]) for k, row in enumerate(rows))
        _accumulate(terms, word, coeff)
    return nc_normal_form(NCPolynomial(terms))


def quantum_det(n: int) -> NCPolynomial:
    """det_t = sum over s of (-t)^l(s) x[1,s(1)] ... x[n,s(n)]."""
    if n < 1:
        raise IndexRangeError("Matrix size must be at least 1")
    return quantum_minor(range(1, n + 1), n)


@lru_cache(maxsize=None)
def quantum_minor_sum(n: int, i: int, convention: str = "standard") -> NCPolynomial:
    """sigma_i: the sum of all principal i x i quantum minors."""
    if not 1 <= i <= n:
        raise IndexRangeError(f"Minor size {i} outside 1..{n}")
    total = NCPolynomial()
    for subset in combinations(range(1, n + 1), i):
        total = total + quantum_minor(subset, n, convention)
    return total


# --- specialization -----------------------------------------------------------


def specialize(p: NCPolynomial, n: int) -> PolyElement:
    """Image in O(M_n) under t -> 1."""
    context = matrix_context(n)
    result = context.zero
    for word, coeff in p.items():
        term = context.constant(laurent_eval_at_one(coeff))
        for i, j in word:
            term = term * context.x(i, j)
        result += term
    return result


def semiclassical_limit_pair(a: NCPolynomial, b: NCPolynomial, n: int) -> PolyElement:
    """
    ((ab - ba) / (t - 1)) at t = 1, computed coefficientwise in the PBW basis.

    Raises:
        InexactDivisionError: If a commutator coefficient is not divisible by t - 1
    """
    commutator = nc_commutator(a, b)
    quotient = NCPolynomial({w: c.divide_by_t_minus_one() for w, c in commutator.items()})
    return specialize(quotient, n)


# --- text ---------------------------------------------------------------------


def format_word(word: Word) -> str:
    if not word:
        return "1"
    return ".".join(f"x[{i},{j}]" for i, j in word)


def format_nc(p: NCPolynomial) -> str:
    """Words as ``x[i,j].x[k,l]``; non-constant coefficients in parentheses."""
    if not p:
        return "0"
    parts = []
    for position, (word, coeff) in enumerate(p.items()):
        terms = list(coeff.items())
        negative = len(terms) == 1 and terms[0][1] < 0
        magnitude = -coeff if negative else coeff
        if len(terms) > 1:
            scalar = f"({format_laurent(magnitude)})"
        else:
            scalar = format_laurent(magnitude)
        if not word:
            text = scalar
        elif scalar == "1":
            text = format_word(word)
        else:
            text = f"{scalar}*{format_word(word)}"
        if position == 0:
            parts.append(f"-{text}" if negative else text)
        else:
            parts.append(f"- {text}" if negative else f"+ {text}")
    return " ".join(parts)


def parse_nc(text: str, n: int) -> NCPolynomial:
    """
    Parse text such as ``x[2,2].x[1,1] - (t - t^-1)*x[1,2].x[2,1]``.

    Both ``.`` and ``*`` multiply; the result is in normal form.

    Raises:
        PolynomialSyntaxError: On grammar violations
        UnknownVariableError: If a generator index is outside 1..n
    """
    stream = TokenStream(text)
    value = _parse_nc_sum(stream, n)
    stream.expect("end")
    return value


def _parse_nc_sum(stream: TokenStream, n: int) -> NCPolynomial:
    value = NCPolynomial()
    negative = bool(stream.accept("op", "-"))
    if not negative:
        stream.accept("op", "+")
    while True:
        term = _parse_nc_term(stream, n)
        value = value - term if negative else value + term
        if stream.accept("op", "+"):
            negative = False
        elif stream.accept("op", "-"):
            negative = True
        else:
            return value


def _parse_nc_term(stream: TokenStream, n: int) -> NCPolynomial:
    term = _parse_nc_factor(stream, n)
    while stream.accept("op", "*") or stream.accept("op", "."):
        term = nc_mul(term, _parse_nc_factor(stream, n))
    return term


def _parse_nc_factor(stream: TokenStream, n: int) -> NCPolynomial:
    token = stream.peek()
    if token.kind == "number":
        stream.advance()
        try:
            return NCPolynomial.scalar(parse_rational(token.text))
        except ZeroDivisionError:
            raise PolynomialSyntaxError("Zero denominator", token.position) from None
    if token.kind == "op" and token.text == "(":
        stream.advance()
        inner = _parse_nc_sum(stream, n)
        stream.expect("op", ")")
        return inner
    if token.kind == "name" and token.text == "t":
        stream.advance()
        exponent = 1
        if stream.accept("op", "^"):
            sign = -1 if stream.accept("op", "-") else 1
            exponent = sign * stream.integer()
        return NCPolynomial.scalar(LaurentScalar.monomial(exponent))
    if token.kind == "name":
        stream.advance()
        match = _GENERATOR_RE.fullmatch(token.text)
        if match is None:
            raise UnknownVariableError(token.text, token.position)
        i, j = int(match.group(1)), int(match.group(2))
        if not (1 <= i <= n and 1 <= j <= n):
            raise UnknownVariableError(token.text, token.position)
        factor = NCPolynomial.generator(i, j)
        if stream.accept("op", "^"):
            exponent = stream.integer()
            factor = nc_normal_form(NCPolynomial.word(((i, j),) * exponent))
        return factor
    shown = token.text or "end of input"
    raise PolynomialSyntaxError(f"Expected a coefficient or generator, found {shown!r}", token.position)


class QuantumService:
    """Service class for size caps on quantum computations."""

    def __init__(self, config: Settings = settings):
        self.config = config

    def check_size(self, n: int, force: bool = False) -> None:
        if n < 1:
            raise IndexRangeError("Matrix size must be at least 1")
        if not force and n > self.config.quantum_max_n:
            raise ResourceLimitError(
                f"n={n} exceeds the quantum cap {self.config.quantum_max_n}; use --force"
            )

    def sigmas(self, n: int, convention: str = "standard") -> List[NCPolynomial]:
        return [quantum_minor_sum(n, i, convention) for i in range(1, n + 1)]

    def generators(self, n: int) -> Iterator[Tuple[Letter, NCPolynomial]]:
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                yield (i, j), NCPolynomial.generator(i, j)


# Global service instance
quantum_service = QuantumService()
