"""
Fraction-free exact linear algebra on sparse integer vectors.

Vectors are dicts from index to nonzero int. Elimination is incremental:
each inserted vector is reduced against the current echelon rows, pivoting
on its first nonzero index, with cross-multiplication instead of division
and content removal after every step to keep entries small.
"""
import logging
from math import gcd, lcm
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

logger = logging.getLogger(__name__)

IntVector = Dict[int, int]


def integer_vector(values: Mapping[int, Any]) -> IntVector:
    """Scale a sparse rational vector to a primitive integer vector."""
    entries = {k: QQ.convert(v) for k, v in values.items() if v}
    if not entries:
        return {}
    denominator = 1
    for value in entries.values():
        denominator = lcm(denominator, int(QQ.denom(value)))
    scaled = {k: int(QQ.numer(v)) * (denominator // int(QQ.denom(v))) for k, v in entries.items()}
    return _primitive(scaled)


def _primitive(vector: IntVector) -> IntVector:
    if not vector:
        return vector
    content = gcd(*vector.values())
    if vector[min(vector)] < 0:
        content = -content
    if content == 1:
        return vector
    return {k: v // content for k, v in vector.items()}


def _combine(u: IntVector, a: int, v: IntVector, b: int) -> IntVector:
    """Return a*u + b*v."""
    result = {k: a * x for k, x in u.items()} if a != 1 else dict(u)
    for k, x in v.items():
        value = result.get(k, 0) + b * x
        if value:
            result[k] = value
        else:
            result.pop(k, None)
    return result


class EchelonBasis:
    """
    Incremental fraction-free row echelon form over the integers.

    With ``track=True`` every echelon row remembers which inserted labels
    it combines, so a vector that reduces to zero yields a kernel relation.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self._pivots: Dict[int, Tuple[IntVector, Optional[IntVector]]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _eliminate(
        self, vector: IntVector, combination: Optional[IntVector]
    ) -> Tuple[IntVector, Optional[IntVector], Optional[int]]:
        while vector:
            lead = min(vector)
            pivot = self._pivots.get(lead)
            if pivot is None:
                return vector, combination, lead
            pivot_row, pivot_combination = pivot
            a, b = pivot_row[lead], vector[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            vector = _combine(vector, a, pivot_row, -b)
            if combination is not None:
                combination = _combine(combination, a, pivot_combination, -b)
            values = list(vector.values())
            if combination is not None:
                values.extend(combination.values())
            content = gcd(*values) if values else 1
            if content > 1:
                vector = {k: x // content for k, x in vector.items()}
                if combination is not None:
                    combination = {k: x // content for k, x in combination.items()}
        return vector, combination, None

    def reduce(self, vector: IntVector) -> IntVector:
        """Remainder of ``vector`` against the echelon rows."""
        reduced, _, _ = self._eliminate(dict(vector), None)
        return reduced

    def insert(self, vector: IntVector, label: Optional[int] = None) -> Optional[IntVector]:
        """
        Add a vector to the span.

        Returns:
            None if the vector was independent, otherwise (when tracking)
            the primitive kernel relation among inserted labels, or ``{}``
            when not tracking.
        """
        combination = {label: 1} if self.track else None
        reduced, combination, lead = self._eliminate(dict(vector), combination)
        if lead is None:
            return _primitive(combination) if combination is not None else {}
        if reduced[lead] < 0:
            reduced = {k: -x for k, x in reduced.items()}
            if combination is not None:
                combination = {k: -x for k, x in combination.items()}
        self._pivots[lead] = (reduced, combination)
        return None


def rank(rows: Iterable[Mapping[int, Any]]) -> int:
    """Exact rank of a matrix given as sparse rational rows."""
    basis = EchelonBasis()
    for row in rows:
        basis.insert(integer_vector(row))
    return basis.rank


def dense_rank(matrix: Sequence[Sequence[Any]]) -> int:
    return rank({j: v for j, v in enumerate(row) if v} for row in matrix)


def nullspace(columns: Sequence[Mapping[int, Any]]) -> Tuple[int, List[IntVector]]:
    """
    Kernel of the linear map whose j-th column is ``columns[j]``.

    Columns are scaled by one common denominator, so the integer kernel
    relations are kernel vectors of the original rational matrix.

    Returns:
        Tuple of (rank, kernel basis as sparse integer vectors over column indices)
    """
    denominator = 1
    for column in columns:
        for value in column.values():
            if value:
                denominator = lcm(denominator, int(QQ.denom(QQ.convert(value))))
    basis = EchelonBasis(track=True)
    kernel: List[IntVector] = []
    for j, column in enumerate(columns):
        scaled = {}
        for k, value in column.items():
            value = QQ.convert(value)
            if value:
                scaled[k] = int(QQ.numer(value)) * (denominator // int(QQ.denom(value)))
        relation = basis.insert(scaled, label=j)
        if relation is not None:
            kernel.append(relation)
    logger.debug(f"Nullspace: {len(columns)} columns, rank {basis.rank}, nullity {len(kernel)}")
    return basis.rank, kernel
