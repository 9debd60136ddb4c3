"""
Verification suites. Each suite returns a list of CheckResult records that
the commands wrap into a RunReport.
"""
import logging
import random
from itertools import combinations, combinations_with_replacement
from typing import List, Optional, Sequence, Tuple

from app.algebra.context import matrix_context
from app.algebra.polynomial import format_polynomial
from app.config import Settings, settings
from app.exceptions import IndexRangeError
from app.models.centralizer import CentralizerReport
from app.models.report import CheckResult
from app.services.centralizer_service import (
    CentralizerService,
    centralizer_service,
    gr_centralizer_weight,
    graded_monomials,
)
from app.services.invariant_service import (
    char_coeff,
    char_coeff_via_charpoly,
    elementary_symmetric,
    involutivity_check,
)
from app.services.poisson_service import (
    StructureName,
    bracket,
    delta_phi,
    flip,
    generator_triples,
    get_table,
    gr_table,
    is_poisson_central,
    is_torus_homogeneous,
    jacobi_defect,
    kks_table,
    semiclassical_table,
    x11_degree,
)
from app.services.quantum_service import (
    NCPolynomial,
    QuantumService,
    format_nc,
    nc_commutator,
    nc_mul,
    normal_form,
    quantum_det,
    quantum_minor_sum,
    quantum_service,
    reduce_word,
    semiclassical_limit_pair,
    specialize,
)
from app.services.sl2_service import equation_checks, sl2_centralizer_dimension, table_matches_semiclassical

logger = logging.getLogger(__name__)


def _failures(detail_ok: str, failed: Sequence[str]) -> str:
    if not failed:
        return detail_ok
    shown = "; ".join(failed[:3])
    more = f" (+{len(failed) - 3} more)" if len(failed) > 3 else ""
    return f"{len(failed)} failures: {shown}{more}"


def _structures(structure: Optional[str]) -> List[StructureName]:
    if structure is None:
        return list(StructureName)
    return [StructureName(structure)]


def _random_monomial(rng: random.Random, n: int, max_degree: int) -> Tuple[Tuple[int, int], ...]:
    degree = rng.randint(1, max_degree)
    letters = [(rng.randint(1, n), rng.randint(1, n)) for _ in range(degree)]
    return tuple(sorted(letters))


class VerificationService:
    """Service class running the invariant suites."""

    def __init__(
        self,
        config: Settings = settings,
        centralizers: CentralizerService = centralizer_service,
        quantum: QuantumService = quantum_service,
    ):
        self.config = config
        self.centralizers = centralizers
        self.quantum = quantum

    # --- commutative structures ---

    def jacobi(self, n: int, structure: Optional[str] = None) -> List[CheckResult]:
        """Jacobi defects of all generator triples, per structure."""
        results = []
        for name in _structures(structure):
            if name == StructureName.GR and n < 2:
                continue
            logger.info(f"Jacobi check: {name.value} structure, n={n}")
            table = get_table(name, n)
            gens = table.context.ring.gens
            count, failed = 0, []
            for a, b, c in generator_triples(table):
                count += 1
                if jacobi_defect(gens[a], gens[b], gens[c], table):
                    names = table.context.names
                    failed.append(f"({names[a]}, {names[b]}, {names[c]})")
            results.append(
                CheckResult(
                    name=f"jacobi-{name.value}",
                    passed=not failed,
                    detail=_failures(f"{count} generator triples, all defects zero", failed),
                )
            )
            homogeneous = is_torus_homogeneous(table)
            results.append(
                CheckResult(
                    name=f"torus-weight-{name.value}",
                    passed=homogeneous,
                    detail="entries carry the torus weight of their generator pair"
                    if homogeneous else "table is not torus-homogeneous",
                )
            )
        return results

    def involutive(self, n: int, structure: Optional[str] = None) -> List[CheckResult]:
        """{c_i, c_j} = 0 for every pair, semiclassical unless another structure is named."""
        table = get_table(structure or StructureName.SEMICLASSICAL, n)
        report = involutivity_check(n, table)
        results = [
            CheckResult(name=f"bracket-c{check.i}-c{check.j}", passed=check.vanishes, detail=check.value)
            for check in report.brackets
        ]
        if not results:
            results.append(CheckResult(name="no-pairs", passed=True, detail=f"n={n} has a single coefficient"))
        return results

    def charpoly(self, n: int) -> List[CheckResult]:
        """c_i from principal minors against det(tI - A), plus centrality of det and of the c_i under KKS."""
        results = []
        for i in range(1, n + 1):
            same = char_coeff(n, i) == char_coeff_via_charpoly(n, i)
            results.append(
                CheckResult(
                    name=f"charpoly-c{i}",
                    passed=same,
                    detail="principal minors agree with det(tI - A)" if same else "routes disagree",
                )
            )
        det_central = is_poisson_central(char_coeff(n, n), semiclassical_table(n))
        results.append(
            CheckResult(name="det-casimir", passed=det_central, detail="det brackets to zero with every generator")
        )
        kks = kks_table(n)
        central = [i for i in range(1, n + 1) if not is_poisson_central(char_coeff(n, i), kks)]
        results.append(
            CheckResult(
                name="kks-casimirs",
                passed=not central,
                detail="every c_i is central for KKS" if not central else f"not central: c{central}",
            )
        )
        return results

    def delta_phi(self, n: int) -> List[CheckResult]:
        """(delta o phi)(c_i) = e_i(t_1, ..., t_n)."""
        if n < 1:
            raise IndexRangeError("Matrix size must be at least 1")
        results = []
        for i in range(1, n + 1):
            image = delta_phi(char_coeff(n, i))
            target = elementary_symmetric(n, i)
            results.append(
                CheckResult(
                    name=f"delta-phi-c{i}",
                    passed=image == target,
                    detail=f"e_{i}(t_1..t_{n})" if image == target else "image differs from e_i",
                )
            )
        return results

    def gr_weight(self, n: int, max_degree: int = 4, seed: Optional[int] = None, pairs: int = 20) -> List[CheckResult]:
        """
        {x[1,1], m}_gr = c(m) x[1,1] m on every monomial of degree <= max_degree,
        the gr bracket as the top filtration component of the semiclassical one,
        and the off-diagonal flip as a Poisson antimap.
        """
        if n < 2:
            raise IndexRangeError("The graded structure needs n >= 2")
        context = matrix_context(n)
        gr = gr_table(n)
        semiclassical = semiclassical_table(n)
        x11 = context.x(1, 1)
        count, failed = 0, []
        for d in range(max_degree + 1):
            for monom in graded_monomials(n, d).monomials:
                count += 1
                m = context.monomial(monom)
                if bracket(x11, m, gr) != gr_centralizer_weight(monom, n) * x11 * m:
                    failed.append(format_polynomial(m, context))
        results = [
            CheckResult(
                name="gr-weight",
                passed=not failed,
                detail=_failures(f"{count} monomials of degree <= {max_degree}", failed),
            )
        ]

        rng = random.Random(self.config.default_seed if seed is None else seed)
        samples = [(context.gen(a), context.gen(b)) for a, b in combinations(range(context.ngens), 2)]
        quadratics = graded_monomials(n, 2).monomials
        for _ in range(pairs):
            samples.append((context.monomial(rng.choice(quadratics)), context.monomial(rng.choice(quadratics))))

        failed = []
        for f, g in samples:
            full = bracket(f, g, semiclassical)
            level = x11_degree(f) + x11_degree(g)
            index = context.matrix_index(1, 1)
            top = context.ring.from_dict({m: c for m, c in full.items() if m[index] == level})
            if top != bracket(f, g, gr):
                failed.append(f"{{{format_polynomial(f, context)}, {format_polynomial(g, context)}}}")
        results.append(
            CheckResult(
                name="gr-filtration",
                passed=not failed,
                detail=_failures(f"{len(samples)} pairs: gr bracket is the top x[1,1] component", failed),
            )
        )

        failed = []
        for f, g in samples:
            if bracket(flip(f), flip(g), semiclassical) != -flip(bracket(f, g, semiclassical)):
                failed.append(f"{{{format_polynomial(f, context)}, {format_polynomial(g, context)}}}")
        results.append(
            CheckResult(
                name="flip-antimap",
                passed=not failed,
                detail=_failures(f"{len(samples)} pairs reverse sign under the flip", failed),
            )
        )
        return results

    def sl2(self, max_degree: int = 6, bound: int = 3) -> List[CheckResult]:
        """Generator table, closed forms for {a+d, .}, and the trace centralizer by degree."""
        results = [
            CheckResult(
                name="sl2-table",
                passed=table_matches_semiclassical(),
                detail="a, b, c, d table equals the n=2 semiclassical table",
            )
        ]
        results.extend(equation_checks(bound))
        for d in range(max_degree + 1):
            report = sl2_centralizer_dimension(d)
            results.append(
                CheckResult(
                    name=f"sl2-centralizer-d{d}",
                    passed=report.passed,
                    detail=f"nullity {report.nullspace_dimension}, expected {report.expected_dimension} "
                    f"over {report.basis_dimension} basis monomials",
                )
            )
        return results

    # --- centralizer ---

    def centralizer(
        self, n: int, max_degree: int, force: bool = False, include_witnesses: bool = False
    ) -> Tuple[List[CheckResult], List[CentralizerReport]]:
        """
        Degree-by-degree centralizer of c_1 against Q[c_1, ..., c_n].

        Raises:
            ResourceLimitError: If some degree exceeds the caps
        """
        if max_degree < 0:
            raise IndexRangeError("Degree must be nonnegative")
        logger.info(f"Centralizer of c_1 for n={n}, degrees 0..{max_degree}")
        reports = []
        results = []
        for d in range(max_degree + 1):
            report = self.centralizers.centralizer_dimension(
                n, d, include_witnesses=include_witnesses, force=force
            )
            reports.append(report)
            ok = report.passed and report.gr_check is not False and report.injectivity_check is not False
            results.append(
                CheckResult(
                    name=f"centralizer-d{d}",
                    passed=ok,
                    detail=(
                        f"nullity {report.nullspace_dimension}, expected {report.expected_dimension}, "
                        f"span {'ok' if report.span_check else 'FAIL'}, "
                        f"gr {_flag(report.gr_check)}, delta-phi {_flag(report.injectivity_check)}"
                    ),
                )
            )
        verified = all(r.passed for r in results)
        results.append(
            CheckResult(
                name="verified-range",
                passed=verified,
                detail=(
                    f"C(c_1) = Q[c_1..c_{n}] verified for n={n}, degrees 0..{max_degree}"
                    if verified else f"mismatch within degrees 0..{max_degree} at n={n}"
                ),
            )
        )
        return results, reports

    # --- quantum ---

    def quantum_commute(self, n: int, force: bool = False) -> List[CheckResult]:
        """[sigma_i, sigma_j] = 0 in Q[t, 1/t]."""
        self.quantum.check_size(n, force)
        sigmas = self.quantum.sigmas(n)
        logger.info(f"Commutation of {len(sigmas)} quantum minor sums, n={n}")
        results = []
        for i, j in combinations(range(1, n + 1), 2):
            value = nc_commutator(sigmas[i - 1], sigmas[j - 1])
            results.append(
                CheckResult(name=f"commute-s{i}-s{j}", passed=not value, detail=format_nc(value))
            )
        for i in range(1, n + 1):
            image = specialize(sigmas[i - 1], n)
            results.append(
                CheckResult(
                    name=f"specialize-s{i}",
                    passed=image == char_coeff(n, i),
                    detail=f"sigma_{i} at t=1 is c_{i}" if image == char_coeff(n, i) else "specialization differs",
                )
            )
        return results

    def quantum_det_central(self, n: int, force: bool = False) -> List[CheckResult]:
        self.quantum.check_size(n, force)
        det = quantum_det(n)
        results = []
        for (i, j), generator in self.quantum.generators(n):
            value = nc_commutator(det, generator)
            results.append(CheckResult(name=f"det-x{i}{j}", passed=not value, detail=format_nc(value)))
        return results

    def quantum_limit(self, n: int, seed: Optional[int] = None, pairs: int = 50, force: bool = False) -> List[CheckResult]:
        """
        (ab - ba)/(t - 1) at t = 1 against the semiclassical bracket, on all
        generator pairs and on seeded random monomial pairs of degree <= 2.
        """
        self.quantum.check_size(n, force)
        table = semiclassical_table(n)
        logger.info(f"Semiclassical limit check: n={n}, {pairs} sampled pairs")
        gens = list(self.quantum.generators(n))
        failed = []
        for (_, a), (_, b) in combinations_with_replacement(gens, 2):
            if semiclassical_limit_pair(a, b, n) != bracket(specialize(a, n), specialize(b, n), table):
                failed.append(f"({format_nc(a)}, {format_nc(b)})")
        results = [
            CheckResult(
                name="limit-generators",
                passed=not failed,
                detail=_failures(f"{len(gens) * (len(gens) + 1) // 2} generator pairs", failed),
            )
        ]
        rng = random.Random(self.config.default_seed if seed is None else seed)
        failed = []
        for _ in range(pairs):
            a = NCPolynomial.word(_random_monomial(rng, n, 2))
            b = NCPolynomial.word(_random_monomial(rng, n, 2))
            if semiclassical_limit_pair(a, b, n) != bracket(specialize(a, n), specialize(b, n), table):
                failed.append(f"({format_nc(a)}, {format_nc(b)})")
        results.append(
            CheckResult(
                name="limit-random-pairs",
                passed=not failed,
                detail=_failures(f"{pairs} random monomial pairs of degree <= 2", failed),
            )
        )
        sigmas = self.quantum.sigmas(n)
        failed = [
            f"(s{i}, s{j})"
            for i, j in combinations(range(1, n + 1), 2)
            if semiclassical_limit_pair(sigmas[i - 1], sigmas[j - 1], n)
        ]
        results.append(
            CheckResult(
                name="limit-sigmas",
                passed=not failed,
                detail=_failures("limits of sigma commutators vanish", failed),
            )
        )
        return results

    def quantum_rewriting(self, n: int, seed: Optional[int] = None, words: int = 30, force: bool = False) -> List[CheckResult]:
        """Normal forms are independent of the reduction order and products associate."""
        self.quantum.check_size(n, force)
        rng = random.Random(self.config.default_seed if seed is None else seed)
        failed = []
        for _ in range(words):
            word = tuple((rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(2, 5)))
            memo = NCPolynomial(dict(normal_form(word)))
            shuffled = reduce_word(word, choose=rng.choice)
            if memo != shuffled:
                failed.append(format_nc(NCPolynomial.word(word)))
        results = [
            CheckResult(
                name="confluence",
                passed=not failed,
                detail=_failures(f"{words} words reduced in random orders", failed),
            )
        ]
        failed = []
        for _ in range(words):
            a, b, c = (NCPolynomial.word(_random_monomial(rng, n, 2)) for _ in range(3))
            if nc_mul(nc_mul(a, b), c) != nc_mul(a, nc_mul(b, c)):
                failed.append(f"({format_nc(a)}, {format_nc(b)}, {format_nc(c)})")
        results.append(
            CheckResult(
                name="associativity",
                passed=not failed,
                detail=_failures(f"{words} random triples", failed),
            )
        )
        return results

    def minor_convention(self, n: int, force: bool = False) -> List[CheckResult]:
        """
        Compare sigma_n with det_t under both weightings. The sign-free
        weighting is recorded as found, never folded into the standard one.
        """
        self.quantum.check_size(n, force)
        det = quantum_det(n)
        standard = quantum_minor_sum(n, n, "standard")
        printed = quantum_minor_sum(n, n, "printed")
        results = [
            CheckResult(
                name="sigma-n-standard",
                passed=standard == det,
                detail="(-t)^l(s) weighting reproduces det_t"
                if standard == det else f"difference {format_nc(standard - det)}",
            )
        ]
        agrees = printed == det
        specializes = specialize(printed, n) == char_coeff(n, n)
        commuting = all(
            not nc_commutator(quantum_minor_sum(n, i, "printed"), quantum_minor_sum(n, j, "printed"))
            for i, j in combinations(range(1, n + 1), 2)
        )
        results.append(
            CheckResult(
                name="sigma-n-printed",
                passed=True,
                detail=(
                    f"t^-l(s) weighting: equals det_t: {agrees}; specializes to c_{n}: {specializes}; "
                    f"pairwise commuting: {commuting}; difference from det_t: {format_nc(printed - det)}"
                ),
            )
        )
        return results


def _flag(value: Optional[bool]) -> str:
    if value is None:
        return "n/a"
    return "ok" if value else "FAIL"


# Global service instance
verification_service = VerificationService()
