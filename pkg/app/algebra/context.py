"""
Variable contexts for the commutative polynomial rings.
A context fixes the roster of variables, their printed names and the
sympy ring (exact rationals, graded-lex order) that holds the polynomials.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from app.exceptions import ContextMismatchError, UnknownVariableError

ExponentVector = Tuple[int, ...]


@dataclass(frozen=True)
class VariableContext:
    """Roster of commuting variables with its polynomial ring."""

    kind: str
    n: int
    names: Tuple[str, ...]
    ring: PolyRing = field(compare=False, repr=False)
    _index: Dict[str, int] = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self._index.update({name: i for i, name in enumerate(self.names)})

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def zero(self) -> PolyElement:
        return self.ring.zero

    @property
    def one(self) -> PolyElement:
        return self.ring.one

    def index_of(self, name: str, position: Optional[int] = None) -> int:
        """Return the variable index of a roster name."""
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(name, position) from None

    def var(self, name: str) -> PolyElement:
        return self.ring.gens[self.index_of(name)]

    def gen(self, index: int) -> PolyElement:
        return self.ring.gens[index]

    def x(self, i: int, j: int) -> PolyElement:
        """Generator x[i,j] (1-based) of a matrix-type context."""
        return self.ring.gens[self.matrix_index(i, j)]

    def matrix_index(self, i: int, j: int) -> int:
        return self.index_of(f"x[{i},{j}]")

    def entry(self, index: int) -> Optional[Tuple[int, int]]:
        """The (i, j) position of a matrix variable, None for other variables."""
        name = self.names[index]
        if not name.startswith("x["):
            return None
        i, j = name[2:-1].split(",")
        return int(i), int(j)

    def monomial(self, exponents: Sequence[int], coeff=1) -> PolyElement:
        return self.ring.from_dict({tuple(exponents): QQ.convert(coeff)})

    def constant(self, value) -> PolyElement:
        return self.ring.ground_new(QQ.convert(value))

    def ensure(self, *polys: PolyElement) -> None:
        """Raise ContextMismatchError unless every polynomial lives in this context."""
        for poly in polys:
            if getattr(poly, "ring", None) is not self.ring:
                raise ContextMismatchError(
                    f"Polynomial does not belong to the {self.kind} context (n={self.n})"
                )


def _matrix_names(n: int) -> Tuple[str, ...]:
    return tuple(f"x[{i},{j}]" for i in range(1, n + 1) for j in range(1, n + 1))


def _matrix_symbols(n: int) -> Tuple[str, ...]:
    return tuple(f"x_{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1))


_REGISTRY: Dict[PolyRing, VariableContext] = {}


def _build(kind: str, n: int, names: Tuple[str, ...], symbols: Tuple[str, ...]) -> VariableContext:
    ring = PolyRing(list(symbols), QQ, grlex)
    context = VariableContext(kind=kind, n=n, names=names, ring=ring)
    _REGISTRY[ring] = context
    return context


@lru_cache(maxsize=None)
def matrix_context(n: int) -> VariableContext:
    """O(M_n): variables x[i,j] in row-major order."""
    if n < 1:
        raise ValueError("Matrix size must be at least 1")
    return _build("matrix", n, _matrix_names(n), _matrix_symbols(n))


@lru_cache(maxsize=None)
def extended_context(n: int) -> VariableContext:
    """O(M_n)[t]: a central variable t followed by the matrix variables.

    For n >= 1 this is the codomain of the quotient map from O(M_{n+1});
    n = 0 gives the polynomial ring in t alone.
    """
    if n < 0:
        raise ValueError("Matrix size must be nonnegative")
    return _build("extended", n, ("t",) + _matrix_names(n), ("t",) + _matrix_symbols(n))


@lru_cache(maxsize=None)
def diagonal_context(n: int) -> VariableContext:
    """Q[t_1, ..., t_n] with the zero bracket."""
    if n < 1:
        raise ValueError("Matrix size must be at least 1")
    names = tuple(f"t_{i}" for i in range(1, n + 1))
    return _build("diagonal", n, names, names)


@lru_cache(maxsize=None)
def sl2_context() -> VariableContext:
    """Generators a, b, c, d of O(SL_2) in the order x[1,1], x[1,2], x[2,1], x[2,2]."""
    return _build("sl2", 2, ("a", "b", "c", "d"), ("a", "b", "c", "d"))


def context_of(poly: PolyElement) -> VariableContext:
    """The context that owns a polynomial's ring."""
    context = _REGISTRY.get(getattr(poly, "ring", None))
    if context is None:
        raise ContextMismatchError("Polynomial does not belong to a known variable context")
    return context
