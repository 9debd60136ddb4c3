"""
O(SL_2) = O(M_2)/(ad - bc - 1) with the monomial basis
a^i b^k c^l (i >= 1), b^k c^l d^j (j >= 1), b^k c^l, and the centralizer
of the trace inside its degree filtration.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from sympy.polys.rings import PolyElement

from app.algebra.context import ExponentVector, sl2_context
from app.algebra.linalg import nullspace
from app.algebra.polynomial import format_polynomial, relabel
from app.exceptions import IndexRangeError
from app.models.centralizer import SL2CentralizerReport
from app.models.report import CheckResult
from app.services.poisson_service import BracketTable, StructureName, bracket, semiclassical_table

logger = logging.getLogger(__name__)

# a, b, c, d sit at the positions of x[1,1], x[1,2], x[2,1], x[2,2]
A, B, C, D = range(4)


@lru_cache(maxsize=None)
def sl2_table() -> BracketTable:
    """{a,b}=ab, {a,c}=ac, {a,d}=2bc, {b,c}=0, {b,d}=bd, {c,d}=cd."""
    context = sl2_context()
    a, b, c, d = context.ring.gens
    entries = {
        (A, B): a * b,
        (A, C): a * c,
        (A, D): 2 * b * c,
        (B, D): b * d,
        (C, D): c * d,
    }
    return BracketTable(StructureName.SEMICLASSICAL, sl2_context(), entries)


def table_matches_semiclassical() -> bool:
    """The four-generator table is the n = 2 semiclassical table renamed."""
    matrix_table = semiclassical_table(2)
    context = sl2_context()
    identity = list(range(4))
    for a in range(4):
        for b in range(a + 1, 4):
            if relabel(matrix_table.entry(a, b), context, identity) != sl2_table().entry(a, b):
                return False
    return True


def is_reduced(monom: ExponentVector) -> bool:
    return not (monom[A] and monom[D])


def sl2_reduce(f: PolyElement) -> PolyElement:
    """
    Rewrite ad -> 1 + bc until no monomial holds both a and d.

    In closed form a^i d^j = a^(i-k) d^(j-k) (1 + bc)^k with k = min(i, j).
    """
    context = sl2_context()
    context.ensure(f)
    one_plus_bc = context.one + context.var("b") * context.var("c")
    result = context.zero
    for monom, coeff in f.items():
        k = min(monom[A], monom[D])
        if not k:
            result += context.monomial(monom, coeff)
            continue
        rest = list(monom)
        rest[A] -= k
        rest[D] -= k
        result += context.monomial(rest, coeff) * one_plus_bc ** k
    return result


def sl2_ad_trace(f: PolyElement) -> PolyElement:
    """{a + d, f} reduced to the monomial basis."""
    context = sl2_context()
    trace = context.var("a") + context.var("d")
    return sl2_reduce(bracket(trace, sl2_reduce(f), sl2_table()))


def sl2_basis(degree: int) -> List[ExponentVector]:
    """Basis monomials of total degree <= degree, ordered by degree then exponents."""
    if degree < 0:
        raise IndexRangeError("Degree must be nonnegative")
    basis = []
    for total in range(degree + 1):
        for k in range(total + 1):
            for l in range(total - k + 1):
                rest = total - k - l
                if rest == 0:
                    basis.append((0, k, l, 0))
                else:
                    basis.append((rest, k, l, 0))
                    basis.append((0, k, l, rest))
    return basis


def _bc(k: int, l: int) -> PolyElement:
    return sl2_context().monomial((0, k, l, 0))


def _expected_first(i: int, k: int, l: int) -> PolyElement:
    # {a+d, a^i b^k c^l} with i >= 1
    context = sl2_context()
    m = k + l
    return (
        m * context.monomial((i + 1, k, l, 0))
        - (2 * i + m) * context.monomial((i - 1, k + 1, l + 1, 0))
        - m * context.monomial((i - 1, k, l, 0))
    )


def _expected_second(k: int, l: int, j: int) -> PolyElement:
    # {a+d, b^k c^l d^j} with j >= 1
    context = sl2_context()
    m = k + l
    p = _bc(k, l)
    d = context.var("d")
    bc = _bc(1, 1)
    return -m * d ** (j + 1) * p + d ** (j - 1) * ((m + 2 * j) * bc + m) * p


def _expected_third(k: int, l: int) -> PolyElement:
    context = sl2_context()
    return (context.var("a") - context.var("d")) * (k + l) * _bc(k, l)


def equation_checks(bound: int = 3) -> List[CheckResult]:
    """
    Compare {a+d, .} with its closed forms on a^i p, p d^j and p, p = b^k c^l,
    for all exponents up to ``bound`` (i, j >= 1).
    """
    context = sl2_context()
    cases: Dict[str, List[Tuple[str, bool]]] = {"a-power": [], "d-power": [], "bc-only": []}
    for k in range(bound + 1):
        for l in range(bound + 1):
            for e in range(1, bound + 1):
                left = sl2_ad_trace(context.monomial((e, k, l, 0)))
                cases["a-power"].append((f"i={e},k={k},l={l}", left == _expected_first(e, k, l)))
                left = sl2_ad_trace(context.monomial((0, k, l, e)))
                cases["d-power"].append((f"k={k},l={l},j={e}", left == _expected_second(k, l, e)))
            left = sl2_ad_trace(_bc(k, l))
            cases["bc-only"].append((f"k={k},l={l}", left == _expected_third(k, l)))
    results = []
    for name, outcomes in cases.items():
        failed = [label for label, ok in outcomes if not ok]
        detail = f"{len(outcomes)} cases" if not failed else f"failed at {', '.join(failed[:5])}"
        results.append(CheckResult(name=f"sl2-{name}", passed=not failed, detail=detail))
    return results


def sl2_centralizer_dimension(degree: int) -> SL2CentralizerReport:
    """
    Solve {a + d, f} = 0 over the basis monomials of degree <= ``degree``.

    The kernel should be spanned by 1, tr, ..., tr^degree.
    """
    context = sl2_context()
    basis = sl2_basis(degree)
    rows: Dict[ExponentVector, int] = {}
    columns = []
    for monom in basis:
        image = sl2_ad_trace(context.monomial(monom))
        columns.append({rows.setdefault(m, len(rows)): c for m, c in sorted(image.items())})
    _, relations = nullspace(columns)
    witnesses = [
        context.ring.from_dict({basis[k]: value for k, value in relation.items()})
        for relation in relations
    ]
    expected = degree + 1
    logger.info(f"SL2 centralizer of the trace, degree <= {degree}: nullity {len(witnesses)}")
    return SL2CentralizerReport(
        degree=degree,
        basis_dimension=len(basis),
        nullspace_dimension=len(witnesses),
        expected_dimension=expected,
        passed=len(witnesses) == expected,
        witnesses=[format_polynomial(w, context) for w in witnesses],
    )
