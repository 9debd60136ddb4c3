"""
Rank of the semiclassical structure at sampled rational points, the
Weyl-group formula for symplectic leaf dimensions, and the dimension count
deciding integrability of c_1, ..., c_n.
"""
import logging
import random
from dataclasses import dataclass
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, Rational, diag, eye
from sympy.combinatorics import Permutation
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from app.algebra.linalg import dense_rank
from app.algebra.polynomial import evaluate, format_rational
from app.config import Settings, settings
from app.exceptions import IndexRangeError, ResourceLimitError
from app.models.leafrank import IntegrabilityReport, LeafReport, RankReport, SpaceTag
from app.services.invariant_service import char_coeff
from app.services.poisson_service import BracketTable, StructureName, semiclassical_table

logger = logging.getLogger(__name__)


def bracket_matrix(n: int, table: BracketTable) -> List[List[PolyElement]]:
    """The antisymmetric matrix of generator brackets {x_a, x_b}."""
    if table.n != n or table.context.kind != "matrix":
        raise IndexRangeError(f"Table is not a structure on O(M_{n})")
    width = table.context.ngens
    return [[table.entry(a, b) for b in range(width)] for a in range(width)]


def stated_rank(n: int, space: SpaceTag, structure: StructureName = StructureName.SEMICLASSICAL) -> int:
    """
    Semiclassical: n(n-1) on SL_n, n(n-1) + 1 on M_n and GL_n.
    KKS: n(n-1) everywhere, the dimension of a regular coadjoint orbit.
    """
    if structure == StructureName.KKS or space == SpaceTag.SL:
        return n * (n - 1)
    return n * (n - 1) + 1


def reachable_rank(n: int, space: SpaceTag, structure: StructureName = StructureName.SEMICLASSICAL) -> int:
    """Largest even value not above the stated rank."""
    expected = stated_rank(n, space, structure)
    return expected - expected % 2


def space_dimension(n: int, space: SpaceTag) -> int:
    return n * n - 1 if space == SpaceTag.SL else n * n


@dataclass(frozen=True)
class PermWord:
    """A permutation of 1..n in one-line notation."""

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise IndexRangeError(f"{list(self.images)} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "PermWord":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "PermWord":
        return cls(tuple(range(n, 0, -1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def as_permutation(self) -> Permutation:
        return Permutation([i - 1 for i in self.images])

    @property
    def length(self) -> int:
        """Inversion count."""
        return self.as_permutation().inversions()

    def times_inverse(self, other: "PermWord") -> "PermWord":
        """self o other^-1."""
        if other.n != self.n:
            raise IndexRangeError("Permutations must have the same size")
        # sympy composes left to right: (p*q)(i) = q(p(i))
        product = ~other.as_permutation() * self.as_permutation()
        return PermWord(tuple(i + 1 for i in product.array_form))


def min_transpositions(w: PermWord) -> int:
    """Fewest transpositions whose product is w: n minus the number of cycles."""
    return w.n - w.as_permutation().cycles


def leaf_dimension(w_plus: PermWord, w_minus: PermWord) -> int:
    return w_plus.length + w_minus.length + min_transpositions(w_plus.times_inverse(w_minus))


def length_bound(w_plus: PermWord, w_minus: PermWord) -> int:
    return w_plus.length + w_minus.length + w_plus.times_inverse(w_minus).length


def permutation_words(n: int) -> Sequence[PermWord]:
    return [PermWord(tuple(p)) for p in permutations(range(1, n + 1))]


class LeafRankService:
    """Service class for rank sampling and leaf enumeration."""

    def __init__(self, config: Settings = settings):
        self.config = config

    # --- sampling ---

    def _integer_point(self, rng: random.Random, n: int) -> List:
        bound = self.config.rank_entry_bound
        return [QQ(rng.randint(-bound, bound)) for _ in range(n * n)]

    def _rational(self, rng: random.Random) -> Rational:
        bound = self.config.rank_entry_bound
        denominator = rng.randint(1, 3)
        return Rational(rng.randint(-bound * denominator, bound * denominator), denominator)

    def _sl_point(self, rng: random.Random, n: int) -> List:
        """L * D * U with unipotent L, U and a diagonal D of determinant 1."""
        lower, upper = eye(n), eye(n)
        for i in range(n):
            for j in range(i):
                lower[i, j] = self._rational(rng)
                upper[j, i] = self._rational(rng)
        scales = []
        for _ in range(n - 1):
            value = Rational(0)
            while value == 0:
                value = self._rational(rng)
            scales.append(value)
        product = Rational(1)
        for value in scales:
            product *= value
        scales.append(1 / product)
        point: Matrix = lower * diag(*scales) * upper
        return [QQ.from_sympy(entry) for entry in point]

    def sample_point(self, rng: random.Random, n: int, space: SpaceTag) -> List:
        """A rational point of the space in row-major variable order."""
        if space == SpaceTag.SL:
            return self._sl_point(rng, n)
        point = self._integer_point(rng, n)
        if space == SpaceTag.GL:
            det = char_coeff(n, n)
            while not evaluate(det, point):
                point = self._integer_point(rng, n)
        return point

    def sampled_rank(
        self,
        n: int,
        space: SpaceTag,
        table: Optional[BracketTable] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> RankReport:
        """
        Largest exact rank of the bracket matrix over seeded sample points.

        Args:
            n: Matrix size
            space: Space tag (m, gl, sl)
            table: Bracket table (semiclassical by default)
            samples: Number of points (config default when omitted)
            seed: Random seed (config default when omitted)

        Returns:
            RankReport: Passing iff the stated rank was reached
        """
        space = SpaceTag(space)
        table = table or semiclassical_table(n)
        samples = samples if samples is not None else self.config.rank_samples
        seed = seed if seed is not None else self.config.default_seed
        if samples < 1:
            raise IndexRangeError("At least one sample is required")
        matrix = bracket_matrix(n, table)
        expected = stated_rank(n, space, table.name)
        reachable = reachable_rank(n, space, table.name)
        rng = random.Random(seed)
        best, tried = 0, 0
        while tried < samples and (tried == 0 or best < reachable):
            point = self.sample_point(rng, n, space)
            values = [[evaluate(entry, point) if entry else 0 for entry in row] for row in matrix]
            value = dense_rank(values)
            tried += 1
            logger.debug(f"Sample {tried}: rank {value}")
            best = max(best, value)
        note = None
        if expected % 2:
            note = (
                f"stated rank {expected} is odd; the bracket matrix is antisymmetric, "
                f"so its rank is even at every point"
            )
        logger.info(f"Rank on {space.value.upper()}_{n}: max {best} after {tried} samples, stated {expected}")
        return RankReport(
            space=space,
            n=n,
            structure=table.name.value,
            samples=tried,
            seed=seed,
            max_rank=best,
            expected_rank=expected,
            reachable_rank=reachable,
            passed=best == expected,
            note=note,
        )

    # --- Weyl group enumeration ---

    def max_leaf_dimension(self, n: int, force: bool = False) -> LeafReport:
        """
        Exhaustive maximum of the leaf dimension over S_n x S_n, with the
        length bound checked at every pair.

        Raises:
            ResourceLimitError: If n is above the enumeration cap
        """
        if n < 1:
            raise IndexRangeError("Matrix size must be at least 1")
        if not force and n > self.config.weyl_max_n:
            raise ResourceLimitError(f"n={n} exceeds the enumeration cap {self.config.weyl_max_n}; use --force")
        words = permutation_words(n)
        lengths = {w: w.length for w in words}
        best, bound_max, bound_holds = -1, -1, True
        attained: List[Tuple[PermWord, PermWord]] = []
        for w_plus in words:
            for w_minus in words:
                quotient = w_plus.times_inverse(w_minus)
                base = lengths[w_plus] + lengths[w_minus]
                value = base + min_transpositions(quotient)
                bound = base + lengths[quotient]
                bound_holds = bound_holds and value <= bound
                bound_max = max(bound_max, bound)
                if value > best:
                    best, attained = value, [(w_plus, w_minus)]
                elif value == best:
                    attained.append((w_plus, w_minus))
        expected = n * (n - 1)
        logger.info(f"Leaf dimensions on S_{n} x S_{n}: max {best}, bound max {bound_max}")
        return LeafReport(
            n=n,
            max_leaf_dimension=best,
            expected=expected,
            attained_at=[(list(a.images), list(b.images)) for a, b in attained],
            bound_holds=bound_holds,
            bound_max=bound_max,
            passed=best == expected and bound_holds and bound_max == expected,
        )

    def bound_check(self, n: int, force: bool = False) -> bool:
        """Leaf dimension <= length bound everywhere and the bound peaks at n(n-1)."""
        report = self.max_leaf_dimension(n, force)
        return report.bound_holds and report.bound_max == n * (n - 1)

    # --- integrability ---

    def integrability_gap(self, n: int, space: SpaceTag, computed_rank: Optional[int] = None) -> IntegrabilityReport:
        """
        dim - rank/2 against the dimension of Q[c_1, ..., c_n] on the space.

        On SL_n the determinant is constant, leaving n - 1 generators.
        """
        space = SpaceTag(space)
        if n < 1:
            raise IndexRangeError("Matrix size must be at least 1")
        dimension = space_dimension(n, space)
        rank = stated_rank(n, space)
        required = QQ(dimension) - QQ(rank, 2)
        actual = n - 1 if space == SpaceTag.SL else n
        from_computed = None
        if computed_rank is not None:
            from_computed = format_rational(QQ(dimension) - QQ(computed_rank, 2))
        return IntegrabilityReport(
            space=space,
            n=n,
            dimension=dimension,
            stated_rank=rank,
            required_dimension=format_rational(required),
            subalgebra_dimension=actual,
            integrable=required == actual,
            computed_rank=computed_rank,
            required_from_computed=from_computed,
        )


# Global service instance
leafrank_service = LeafRankService()
