"""
Graded centralizer solver: the centralizer of c_1 in each graded piece of
O(M_n), compared against the span of the monomials in c_1, ..., c_n.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement

from app.algebra.context import ExponentVector, matrix_context
from app.algebra.linalg import EchelonBasis, integer_vector, nullspace
from app.algebra.polynomial import format_polynomial
from app.config import Settings, settings
from app.exceptions import IndexRangeError, ResourceLimitError
from app.models.centralizer import CentralizerReport
from app.services.invariant_service import char_coeff
from app.services.poisson_service import (
    BracketTable,
    StructureName,
    adjoint,
    bracket,
    delta_phi,
    gr_table,
    is_torus_homogeneous,
    semiclassical_table,
    top_x11_component,
    torus_weight,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedBasis:
    """All monomials of one total degree, in descending graded-lex order."""

    n: int
    degree: int
    monomials: Tuple[ExponentVector, ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def index(self) -> Dict[ExponentVector, int]:
        return {m: k for k, m in enumerate(self.monomials)}


def graded_monomials(n: int, d: int) -> GradedBasis:
    """Degree-d monomials in the n^2 matrix variables, C(n^2+d-1, d) of them."""
    if d < 0:
        raise IndexRangeError("Degree must be nonnegative")
    width = n * n
    monomials = []
    for choice in combinations_with_replacement(range(width), d):
        exponents = [0] * width
        for index in choice:
            exponents[index] += 1
        monomials.append(tuple(exponents))
    monomials.sort(key=grlex, reverse=True)
    return GradedBasis(n=n, degree=d, monomials=tuple(monomials))


def weighted_exponents(n: int, d: int) -> List[Tuple[int, ...]]:
    """Exponent tuples (a_1..a_n) with sum i*a_i = d, i.e. partitions of d into parts <= n."""
    results: List[Tuple[int, ...]] = []

    def extend(part: int, remaining: int, prefix: Tuple[int, ...]):
        if part > n:
            if remaining == 0:
                results.append(prefix)
            return
        for count in range(remaining // part + 1):
            extend(part + 1, remaining - count * part, prefix + (count,))

    extend(1, d, ())
    return results


def expected_dimension(n: int, d: int) -> int:
    if d < 0:
        raise IndexRangeError("Degree must be nonnegative")
    return len(weighted_exponents(n, d))


def c_monomial(n: int, exponents: Sequence[int]) -> PolyElement:
    """c_1^a_1 ... c_n^a_n."""
    result = matrix_context(n).one
    for i, power in enumerate(exponents, start=1):
        if power:
            result = result * char_coeff(n, i) ** power
    return result


def gr_centralizer_weight(monom: ExponentVector, n: int) -> int:
    """Total exponent of the x[1,j] and x[i,1] (2 <= i, j <= n) in a monomial."""
    context = matrix_context(n)
    weight = 0
    for index, exponent in enumerate(monom):
        i, j = context.entry(index)
        if (i == 1) != (j == 1):
            weight += exponent
    return weight


class CentralizerService:
    """Service class for graded centralizer computations."""

    def __init__(self, config: Settings = settings):
        self.config = config

    def check_caps(self, n: int, source_dim: int, target_dim: int, force: bool = False) -> None:
        """
        Refuse runs above the configured caps.

        Raises:
            ResourceLimitError: If n, the ambient dimension or the memory estimate is too large
        """
        if force:
            return
        if n > self.config.centralizer_max_n:
            raise ResourceLimitError(
                f"n={n} exceeds the centralizer cap {self.config.centralizer_max_n}; use --force"
            )
        if source_dim > self.config.max_ambient_dimension:
            raise ResourceLimitError(
                f"Ambient dimension {source_dim} exceeds the cap {self.config.max_ambient_dimension}; use --force"
            )
        estimate_mb = source_dim * target_dim * 8 / (1024 * 1024)
        if estimate_mb > self.config.cap_mb:
            raise ResourceLimitError(
                f"Elimination estimate {estimate_mb:.1f} MB exceeds the {self.config.cap_mb} MB cap; use --force"
            )

    def nullspace_basis(
        self, n: int, d: int, table: Optional[BracketTable] = None, force: bool = False
    ) -> Tuple[GradedBasis, int, List[PolyElement]]:
        """
        Exact kernel of m -> {c_1, m} on the degree-d piece.

        The map preserves the torus weight (row degrees minus column degrees),
        so the matrix is solved one weight block at a time.

        Returns:
            Tuple of (source basis, target dimension, kernel basis polynomials)
        """
        table = table or semiclassical_table(n)
        context = table.context
        source = graded_monomials(n, d)
        target_degree = d if table.name == StructureName.KKS else d + 1
        target = graded_monomials(n, target_degree)
        self.check_caps(n, len(source), len(target), force)

        row_index = target.index()
        ad_c1 = adjoint(char_coeff(n, 1), table)
        if is_torus_homogeneous(table):
            blocks: Dict[Tuple[int, ...], List[ExponentVector]] = defaultdict(list)
            for monom in source.monomials:
                blocks[torus_weight(monom, context)].append(monom)
            groups = [blocks[key] for key in sorted(blocks)]
        else:
            groups = [list(source.monomials)]

        kernel: List[PolyElement] = []
        for group in groups:
            columns = []
            for monom in group:
                image = ad_c1(context.monomial(monom))
                column = {}
                for target_monom, coeff in image.items():
                    if target_monom not in row_index:
                        raise ValueError(f"Bracket left the degree-{target_degree} piece")
                    column[row_index[target_monom]] = coeff
                columns.append(column)
            _, relations = nullspace(columns)
            for relation in relations:
                kernel.append(
                    context.ring.from_dict({group[k]: value for k, value in relation.items()})
                )
        logger.debug(f"n={n} d={d}: {len(groups)} weight blocks, nullity {len(kernel)}")
        return source, len(target), kernel

    def c_monomial_span_check(self, n: int, d: int, table: Optional[BracketTable] = None) -> bool:
        """
        The c-monomials of weighted degree d are independent, centralize c_1,
        and there are expected_dimension(n, d) of them.
        """
        table = table or semiclassical_table(n)
        exponents = weighted_exponents(n, d)
        polys = [c_monomial(n, a) for a in exponents]
        ad_c1 = adjoint(char_coeff(n, 1), table)
        if any(ad_c1(p) for p in polys):
            return False
        index = graded_monomials(n, d).index()
        basis = EchelonBasis()
        for p in polys:
            basis.insert(integer_vector({index[m]: c for m, c in p.items()}))
        return basis.rank == len(polys) == expected_dimension(n, d)

    def gr_check(self, n: int, witnesses: Sequence[PolyElement]) -> Optional[bool]:
        """Leading x[1,1]-components of the witnesses lie in the gr centralizer of x[1,1]."""
        if n < 2:
            return None
        table = gr_table(n)
        x11 = matrix_context(n).x(1, 1)
        return all(not bracket(x11, top_x11_component(w), table) for w in witnesses if w)

    def injectivity_check(self, witnesses: Sequence[PolyElement]) -> bool:
        """delta o phi keeps the witnesses linearly independent."""
        images = [delta_phi(w) for w in witnesses]
        index: Dict[ExponentVector, int] = {}
        basis = EchelonBasis()
        for image in images:
            vector = {index.setdefault(m, len(index)): c for m, c in sorted(image.items())}
            basis.insert(integer_vector(vector))
        return basis.rank == len(witnesses)

    def centralizer_dimension(
        self,
        n: int,
        d: int,
        table: Optional[BracketTable] = None,
        include_witnesses: bool = False,
        force: bool = False,
    ) -> CentralizerReport:
        """
        Compute dim C(c_1) in degree d and compare with Q[c_1, ..., c_n].

        Args:
            n: Matrix size
            d: Total degree
            table: Bracket table (semiclassical by default)
            include_witnesses: Print the nullspace basis into the report
            force: Ignore resource caps

        Returns:
            CentralizerReport: Dimensions, span check and witness checks

        Raises:
            ResourceLimitError: If the run exceeds the configured caps
        """
        table = table or semiclassical_table(n)
        try:
            source, target_dim, kernel = self.nullspace_basis(n, d, table, force)
        except ResourceLimitError:
            logger.warning(f"Centralizer n={n} d={d} refused by resource caps")
            raise
        expected = expected_dimension(n, d)
        span = self.c_monomial_span_check(n, d, table)
        report = CentralizerReport(
            n=n,
            degree=d,
            structure=table.name.value,
            ambient_dimension=len(source),
            target_dimension=target_dim,
            nullspace_dimension=len(kernel),
            expected_dimension=expected,
            span_check=span,
            gr_check=self.gr_check(n, kernel),
            injectivity_check=self.injectivity_check(kernel),
            passed=len(kernel) == expected and span,
            witnesses=[format_polynomial(w, table.context) for w in kernel] if include_witnesses else [],
        )
        logger.info(
            f"Centralizer n={n} d={d}: nullity {report.nullspace_dimension}, "
            f"expected {expected}, {'pass' if report.passed else 'FAIL'}"
        )
        return report


# Global service instance
centralizer_service = CentralizerService()
