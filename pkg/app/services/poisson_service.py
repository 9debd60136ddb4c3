"""
Poisson bracket engines: the semiclassical, KKS and associated-graded tables,
the bivector bracket, Jacobi defects, and the structural maps between
O(M_n), its quotient B_{2,n} = O(M_{n-1})[t] and the diagonal algebra D_n.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple

from sympy.polys.rings import PolyElement

from app.algebra.context import (
    VariableContext,
    context_of,
    diagonal_context,
    extended_context,
    matrix_context,
)
from app.algebra.polynomial import is_homogeneous, partials, relabel
from app.exceptions import ContextMismatchError, IndexRangeError

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class StructureName(str, Enum):
    """Poisson structures accepted wherever a table is needed."""

    SEMICLASSICAL = "semiclassical"
    KKS = "kks"
    GR = "gr"


@dataclass(frozen=True, eq=False)
class BracketTable:
    """
    Brackets of generator pairs (a, b) with a < b; absent pairs bracket to zero.
    Bilinearity and the Leibniz rule extend the table to all polynomials.
    """

    name: StructureName
    context: VariableContext
    entries: Mapping[Pair, PolyElement]

    def __post_init__(self):
        degree = 1 if self.name == StructureName.KKS else 2
        for (a, b), value in self.entries.items():
            if not a < b:
                raise ValueError(f"Table keys must be ordered pairs, got {(a, b)}")
            self.context.ensure(value)
            if not value or not is_homogeneous(value, degree):
                raise ValueError(
                    f"{self.name.value} entry {(a, b)} must be nonzero and homogeneous of degree {degree}"
                )

    @property
    def n(self) -> int:
        return self.context.n

    def entry(self, a: int, b: int) -> PolyElement:
        """The value {x_a, x_b}, antisymmetrized from the stored pairs."""
        if a == b:
            return self.context.zero
        if a < b:
            return self.entries.get((a, b), self.context.zero)
        return -self.entries.get((b, a), self.context.zero)


def _matrix_positions(context: VariableContext) -> List[Tuple[int, Tuple[int, int]]]:
    positions = []
    for index in range(context.ngens):
        entry = context.entry(index)
        if entry is not None:
            positions.append((index, entry))
    return positions


def _semiclassical_entries(context: VariableContext) -> Dict[Pair, PolyElement]:
    entries: Dict[Pair, PolyElement] = {}
    for (a, (i, j)), (b, (k, l)) in combinations(_matrix_positions(context), 2):
        # row-major order: either i < k, or i == k and j < l
        if i < k and j < l:
            entries[(a, b)] = 2 * context.x(i, l) * context.x(k, j)
        elif (i == k and j < l) or (j == l and i < k):
            entries[(a, b)] = context.gen(a) * context.gen(b)
    return entries


@lru_cache(maxsize=None)
def semiclassical_table(n: int) -> BracketTable:
    """Semiclassical limit bracket of the quantized coordinate ring of M_n."""
    context = matrix_context(n)
    return BracketTable(StructureName.SEMICLASSICAL, context, _semiclassical_entries(context))


@lru_cache(maxsize=None)
def extended_table(m: int) -> BracketTable:
    """Semiclassical bracket of O(M_m) extended by a central variable t."""
    context = extended_context(m)
    return BracketTable(StructureName.SEMICLASSICAL, context, _semiclassical_entries(context))


@lru_cache(maxsize=None)
def kks_table(n: int) -> BracketTable:
    """Linear bracket on gl_n: {x[i,j], x[k,l]} = d(j,k) x[i,l] - d(l,i) x[k,j]."""
    context = matrix_context(n)
    entries: Dict[Pair, PolyElement] = {}
    for (a, (i, j)), (b, (k, l)) in combinations(_matrix_positions(context), 2):
        value = context.zero
        if j == k:
            value += context.x(i, l)
        if l == i:
            value -= context.x(k, j)
        if value:
            entries[(a, b)] = value
    return BracketTable(StructureName.KKS, context, entries)


@lru_cache(maxsize=None)
def gr_table(n: int) -> BracketTable:
    """
    Associated graded bracket for the x[1,1]-degree filtration.

    Same as the semiclassical table except {x[1,1], x[i,j]}_gr = 0 for i, j >= 2.
    """
    if n < 2:
        raise IndexRangeError("The graded table needs n >= 2")
    context = matrix_context(n)
    first = context.matrix_index(1, 1)
    entries = {}
    for (a, b), value in _semiclassical_entries(context).items():
        if a == first:
            i, j = context.entry(b)
            if i >= 2 and j >= 2:
                continue
        entries[(a, b)] = value
    return BracketTable(StructureName.GR, context, entries)


def get_table(name, n: int) -> BracketTable:
    """Resolve a structure name (``semiclassical``, ``kks``, ``gr``) to its table."""
    structure = StructureName(name)
    if structure == StructureName.SEMICLASSICAL:
        return semiclassical_table(n)
    if structure == StructureName.KKS:
        return kks_table(n)
    return gr_table(n)


# --- the bracket -------------------------------------------------------------


def _contract(
    df: Mapping[int, PolyElement], dg: Mapping[int, PolyElement], table: BracketTable
) -> PolyElement:
    result = table.context.zero
    if not df or not dg:
        return result
    for (a, b), value in table.entries.items():
        fa, fb = df.get(a), df.get(b)
        ga, gb = dg.get(a), dg.get(b)
        cross = None
        if fa is not None and gb is not None:
            cross = fa * gb
        if fb is not None and ga is not None:
            cross = cross - fb * ga if cross is not None else -(fb * ga)
        if cross:
            result += value * cross
    return result


def bracket(f: PolyElement, g: PolyElement, table: BracketTable) -> PolyElement:
    """
    Poisson bracket through the bivector formula.

    Args:
        f: First argument, in the table's context
        g: Second argument, in the table's context
        table: Bracket table defining the structure

    Returns:
        Sum over a < b of table(a, b) * (df/dx_a dg/dx_b - df/dx_b dg/dx_a)

    Raises:
        ContextMismatchError: If f or g is outside the table's context
    """
    table.context.ensure(f, g)
    return _contract(partials(f), partials(g), table)


def adjoint(f: PolyElement, table: BracketTable) -> Callable[[PolyElement], PolyElement]:
    """The map g -> {f, g}, with the partial derivatives of f computed once."""
    table.context.ensure(f)
    df = partials(f)

    def apply(g: PolyElement) -> PolyElement:
        table.context.ensure(g)
        return _contract(df, partials(g), table)

    return apply


def jacobi_defect(f: PolyElement, g: PolyElement, h: PolyElement, table: BracketTable) -> PolyElement:
    """{f,{g,h}} + {g,{h,f}} + {h,{f,g}}; zero for a Poisson structure."""
    return (
        bracket(f, bracket(g, h, table), table)
        + bracket(g, bracket(h, f, table), table)
        + bracket(h, bracket(f, g, table), table)
    )


def generator_triples(table: BracketTable) -> Iterator[Tuple[int, int, int]]:
    return combinations(range(table.context.ngens), 3)


def is_poisson_central(f: PolyElement, table: BracketTable) -> bool:
    apply = adjoint(f, table)
    return all(not apply(gen) for gen in table.context.ring.gens)


# --- gradings and filtrations -----------------------------------------------


def torus_weight(monom, context: VariableContext) -> Tuple[int, ...]:
    """Row degrees minus column degrees of a monomial in matrix variables."""
    weight = [0] * context.n
    for index, exponent in enumerate(monom):
        if not exponent:
            continue
        entry = context.entry(index)
        if entry is None:
            continue
        i, j = entry
        weight[i - 1] += exponent
        weight[j - 1] -= exponent
    return tuple(weight)


def is_torus_homogeneous(table: BracketTable) -> bool:
    """True when every entry has the torus weight of its generator pair."""
    context = table.context
    width = context.ngens
    for (a, b), value in table.entries.items():
        pair = [0] * width
        pair[a] += 1
        pair[b] += 1
        expected = torus_weight(pair, context)
        if any(torus_weight(monom, context) != expected for monom in value.itermonoms()):
            return False
    return True


def _x11_index(f: PolyElement) -> Tuple[VariableContext, int]:
    context = context_of(f)
    if context.kind != "matrix":
        raise ContextMismatchError("The x[1,1] filtration is defined on O(M_n)")
    return context, context.matrix_index(1, 1)


def x11_degree(f: PolyElement) -> int:
    """Degree in x[1,1]; -1 for the zero polynomial."""
    _, index = _x11_index(f)
    if not f:
        return -1
    return max(monom[index] for monom in f.itermonoms())


def top_x11_component(f: PolyElement) -> PolyElement:
    """The terms of f of maximal x[1,1]-degree."""
    context, index = _x11_index(f)
    top = x11_degree(f)
    return context.ring.from_dict({m: c for m, c in f.items() if m[index] == top})


# --- structural maps ----------------------------------------------------------


def phi(f: PolyElement) -> PolyElement:
    """
    Quotient map O(M_n) -> B_{2,n} = O(M_n)/(x[1,j], x[i,1] | 2 <= i,j <= n).

    The image is written in O(M_{n-1})[t] via x[i,j] -> x[i-1,j-1] and x[1,1] -> t.
    """
    source = context_of(f)
    if source.kind != "matrix":
        raise ContextMismatchError("phi is defined on O(M_n)")
    target = extended_context(source.n - 1)
    images: List[Optional[int]] = []
    for index in range(source.ngens):
        i, j = source.entry(index)
        if i == 1 and j == 1:
            images.append(target.index_of("t"))
        elif i == 1 or j == 1:
            images.append(None)
        else:
            images.append(target.matrix_index(i - 1, j - 1))
    return relabel(f, target, images)


def delta(f: PolyElement) -> PolyElement:
    """
    Diagonal map B_{2,n} -> D_n: t -> t_1, x[i,i] -> t_{i+1}, off-diagonal -> 0.
    """
    source = context_of(f)
    if source.kind != "extended":
        raise ContextMismatchError("delta is defined on O(M_{n-1})[t]")
    target = diagonal_context(source.n + 1)
    images: List[Optional[int]] = []
    for index in range(source.ngens):
        entry = source.entry(index)
        if entry is None:
            images.append(target.index_of("t_1"))
        else:
            i, j = entry
            images.append(target.index_of(f"t_{i + 1}") if i == j else None)
    return relabel(f, target, images)


def delta_phi(f: PolyElement) -> PolyElement:
    return delta(phi(f))


def flip(f: PolyElement) -> PolyElement:
    """The substitution x[i,j] -> x[n+1-i, n+1-j], a Poisson antimap."""
    context = context_of(f)
    if context.kind != "matrix":
        raise ContextMismatchError("flip is defined on O(M_n)")
    n = context.n
    images = []
    for index in range(context.ngens):
        i, j = context.entry(index)
        images.append(context.matrix_index(n + 1 - i, n + 1 - j))
    return relabel(f, context, images)
