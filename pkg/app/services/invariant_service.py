"""
Invariant polynomials of the matrix: minors, characteristic-polynomial
coefficients c_i, elementary symmetric polynomials, and the involutivity
check {c_i, c_j} = 0.
"""
import logging
from functools import lru_cache
from itertools import combinations, permutations
from typing import Sequence, Tuple

from sympy.combinatorics import Permutation
from sympy.polys.rings import PolyElement

from app.algebra.context import diagonal_context, extended_context, matrix_context
from app.algebra.polynomial import format_polynomial, relabel
from app.exceptions import IndexRangeError
from app.models.invariant import BracketCheck, InvolutivityReport
from app.services.poisson_service import BracketTable, bracket

logger = logging.getLogger(__name__)

IndexSet = Tuple[int, ...]


def index_set(indices: Sequence[int], n: int) -> IndexSet:
    """Validate a strictly increasing set of indices in 1..n."""
    result = tuple(indices)
    if any(b <= a for a, b in zip(result, result[1:])):
        raise IndexRangeError(f"Index set {list(result)} must be strictly increasing")
    if result and (result[0] < 1 or result[-1] > n):
        raise IndexRangeError(f"Index set {list(result)} must lie in 1..{n}")
    return result


def minor(rows: Sequence[int], cols: Sequence[int], n: int) -> PolyElement:
    """
    The minor [I|J] = sum over s in S_k of sgn(s) x[i_1, j_s(1)] ... x[i_k, j_s(k)].

    Raises:
        IndexRangeError: If |I| != |J| or an index is outside 1..n
    """
    rows, cols = index_set(rows, n), index_set(cols, n)
    if len(rows) != len(cols):
        raise IndexRangeError(f"Minor needs |I| = |J|, got {len(rows)} and {len(cols)}")
    context = matrix_context(n)
    k = len(rows)
    total = context.zero
    for image in permutations(range(k)):
        term = context.constant(Permutation(list(image)).signature())
        for position, row in enumerate(rows):
            term = term * context.x(row, cols[image[position]])
        total += term
    return total


@lru_cache(maxsize=None)
def char_coeff(n: int, i: int) -> PolyElement:
    """c_i as the sum of the i x i principal minors, subsets in lexicographic order."""
    if not 1 <= i <= n:
        raise IndexRangeError(f"Coefficient index {i} outside 1..{n}")
    context = matrix_context(n)
    total = context.zero
    for subset in combinations(range(1, n + 1), i):
        total += minor(subset, subset, n)
    return total


@lru_cache(maxsize=None)
def _charpoly(n: int) -> PolyElement:
    """det(t*Id - A) in O(M_n)[t] by the Leibniz expansion."""
    context = extended_context(n)
    t = context.var("t")
    total = context.zero
    for image in permutations(range(1, n + 1)):
        term = context.constant(Permutation([j - 1 for j in image]).signature())
        for row, col in enumerate(image, start=1):
            entry = context.x(row, col)
            term = term * (t - entry if row == col else -entry)
        total += term
    return total


def char_coeff_via_charpoly(n: int, i: int) -> PolyElement:
    """c_i read off det(t*Id - A) = sum (-1)^i c_i t^(n-i); an independent route."""
    if not 1 <= i <= n:
        raise IndexRangeError(f"Coefficient index {i} outside 1..{n}")
    source = extended_context(n)
    t_index = source.index_of("t")
    images = [None if k == t_index else k - 1 for k in range(source.ngens)]
    coefficient = source.ring.from_dict(
        {m: c for m, c in _charpoly(n).items() if m[t_index] == n - i}
    )
    # the t-exponent is fixed at n - i; clear it so the relabel lands in O(M_n)
    stripped = source.ring.from_dict(
        {tuple(0 if k == t_index else e for k, e in enumerate(m)): c for m, c in coefficient.items()}
    )
    return relabel(stripped, matrix_context(n), images) * (-1) ** i


def elementary_symmetric(n: int, i: int) -> PolyElement:
    """e_i(t_1, ..., t_n) in D_n."""
    if not 1 <= i <= n:
        raise IndexRangeError(f"Index {i} outside 1..{n}")
    context = diagonal_context(n)
    total = context.zero
    for subset in combinations(range(n), i):
        term = context.one
        for k in subset:
            term = term * context.gen(k)
        total += term
    return total


def involutivity_check(n: int, table: BracketTable) -> InvolutivityReport:
    """
    Bracket every pair c_i, c_j (i < j) under the given structure.

    Args:
        n: Matrix size
        table: Bracket table over O(M_n)

    Returns:
        InvolutivityReport: Each bracket printed, passing iff all vanish
    """
    if table.n != n or table.context.kind != "matrix":
        raise IndexRangeError(f"Table is not a structure on O(M_{n})")
    checks = []
    for i, j in combinations(range(1, n + 1), 2):
        value = bracket(char_coeff(n, i), char_coeff(n, j), table)
        checks.append(
            BracketCheck(i=i, j=j, value=format_polynomial(value, table.context), vanishes=not value)
        )
    passed = all(check.vanishes for check in checks)
    logger.info(f"Involutivity n={n} ({table.name.value}): {'pass' if passed else 'FAIL'}")
    return InvolutivityReport(n=n, structure=table.name.value, brackets=checks, passed=passed)
