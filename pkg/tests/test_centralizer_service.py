import pytest

from app.algebra.context import matrix_context
from app.algebra.polynomial import parse_polynomial
from app.exceptions import IndexRangeError, ResourceLimitError
from app.services.centralizer_service import (
    CentralizerService,
    c_monomial,
    centralizer_service,
    expected_dimension,
    gr_centralizer_weight,
    graded_monomials,
    weighted_exponents,
)
from app.services.invariant_service import char_coeff
from app.services.poisson_service import bracket, gr_table, kks_table


class TestGradedMonomials:
    def test_degree_one_order(self, ctx2):
        basis = graded_monomials(2, 1)
        assert [ctx2.monomial(m) for m in basis.monomials] == list(ctx2.ring.gens)

    @pytest.mark.parametrize("n, d, count", [(2, 1, 4), (2, 2, 10), (3, 2, 45), (2, 0, 1), (3, 5, 1287)])
    def test_counts(self, n, d, count):
        assert len(graded_monomials(n, d)) == count

    def test_negative_degree(self):
        with pytest.raises(IndexRangeError):
            graded_monomials(2, -1)


class TestExpectedDimension:
    @pytest.mark.parametrize("n, d, expected", [(2, 4, 3), (3, 3, 3), (1, 5, 1), (3, 0, 1)])
    def test_partition_counts(self, n, d, expected):
        assert expected_dimension(n, d) == expected

    def test_weighted_exponents(self):
        assert sorted(weighted_exponents(3, 3)) == [(0, 0, 1), (1, 1, 0), (3, 0, 0)]

    def test_c_monomial(self):
        assert c_monomial(2, (1, 1)) == char_coeff(2, 1) * char_coeff(2, 2)
        assert c_monomial(2, (0, 0)) == matrix_context(2).one


class TestCentralizer:
    @pytest.mark.parametrize("d, expected", list(enumerate([1, 1, 2, 2, 3, 3, 4, 4, 5])))
    def test_n2_through_degree_8(self, d, expected):
        report = centralizer_service.centralizer_dimension(2, d)
        assert report.nullspace_dimension == expected
        assert report.expected_dimension == expected
        assert report.span_check
        assert report.passed

    @pytest.mark.parametrize("d, expected", list(enumerate([1, 1, 2, 3, 4])))
    def test_n3_through_degree_4(self, d, expected):
        report = centralizer_service.centralizer_dimension(3, d)
        assert report.nullspace_dimension == expected
        assert report.passed
        assert report.gr_check is True
        assert report.injectivity_check is True

    @pytest.mark.slow
    def test_n3_degree_5(self):
        report = centralizer_service.centralizer_dimension(3, 5)
        assert report.nullspace_dimension == 5
        assert report.passed

    @pytest.mark.parametrize("d", [0, 1, 2, 3])
    def test_n1_everything_commutes(self, d):
        report = centralizer_service.centralizer_dimension(1, d)
        assert report.nullspace_dimension == 1
        assert report.passed
        assert report.gr_check is None

    def test_dimensions_recorded(self):
        report = centralizer_service.centralizer_dimension(2, 2)
        assert report.ambient_dimension == 10
        assert report.target_dimension == 20

    def test_witnesses_centralize(self, sc2, parse2):
        report = centralizer_service.centralizer_dimension(2, 2, include_witnesses=True)
        assert len(report.witnesses) == 2
        c1 = char_coeff(2, 1)
        for text in report.witnesses:
            assert not bracket(c1, parse2(text), sc2)

    def test_witnesses_gr_and_injective(self, sc2):
        _, _, kernel = centralizer_service.nullspace_basis(2, 3)
        assert centralizer_service.gr_check(2, kernel)
        assert centralizer_service.injectivity_check(kernel)

    def test_kks_centralizer_is_everything(self):
        report = centralizer_service.centralizer_dimension(2, 2, table=kks_table(2))
        assert report.nullspace_dimension == 10
        assert not report.passed

    @pytest.mark.parametrize("n, d", [(2, 0), (2, 3), (3, 2)])
    def test_span_check(self, n, d):
        assert centralizer_service.c_monomial_span_check(n, d)


class TestCaps:
    def test_n_cap(self, tight_settings):
        with pytest.raises(ResourceLimitError):
            CentralizerService(tight_settings).centralizer_dimension(3, 1)

    def test_ambient_cap(self, tight_settings):
        # 2x2, degree 4: 35 monomials fit, degree 5: 56 do not
        service = CentralizerService(tight_settings)
        assert service.centralizer_dimension(2, 4).passed
        with pytest.raises(ResourceLimitError):
            service.centralizer_dimension(2, 5)

    def test_memory_cap(self):
        service = CentralizerService()
        service.check_caps(3, 1287, 3003)
        with pytest.raises(ResourceLimitError):
            service.check_caps(3, 3003, 6435)

    def test_force_overrides(self, tight_settings):
        report = CentralizerService(tight_settings).centralizer_dimension(3, 1, force=True)
        assert report.passed


class TestGrWeight:
    @pytest.mark.parametrize(
        "n, text, weight",
        [(2, "x[1,2]*x[2,1]", 2), (2, "x[1,1]^3*x[2,2]", 0), (3, "x[3,1]", 1), (3, "x[1,3]*x[2,2]*x[2,1]", 2)],
    )
    def test_examples(self, n, text, weight):
        (monom,) = list(parse_polynomial(text, matrix_context(n)).itermonoms())
        assert gr_centralizer_weight(monom, n) == weight

    @pytest.mark.parametrize("d", [0, 1, 2, 3, 4])
    def test_weight_identity_exhaustive_n2(self, ctx2, d):
        table = gr_table(2)
        x11 = ctx2.x(1, 1)
        for monom in graded_monomials(2, d).monomials:
            m = ctx2.monomial(monom)
            assert bracket(x11, m, table) == gr_centralizer_weight(monom, 2) * x11 * m
