import pytest

from app.exceptions import IndexRangeError, ResourceLimitError
from app.services.centralizer_service import CentralizerService
from app.services.quantum_service import QuantumService
from app.services.verification_service import VerificationService, verification_service


def _all_pass(results):
    return all(r.passed for r in results)


class TestCommutativeSuites:
    def test_jacobi_all_structures(self):
        results = verification_service.jacobi(2)
        names = [r.name for r in results]
        assert "jacobi-semiclassical" in names and "jacobi-kks" in names and "jacobi-gr" in names
        assert _all_pass(results)

    def test_jacobi_single_structure_n3(self):
        results = verification_service.jacobi(3, "semiclassical")
        assert results[0].detail.startswith("84 generator triples")
        assert _all_pass(results)

    def test_involutive(self):
        results = verification_service.involutive(3)
        assert len(results) == 3
        assert _all_pass(results)

    def test_involutive_n1(self):
        assert _all_pass(verification_service.involutive(1))

    def test_charpoly(self):
        assert _all_pass(verification_service.charpoly(3))

    def test_delta_phi(self):
        assert _all_pass(verification_service.delta_phi(4))

    def test_gr_weight(self):
        results = verification_service.gr_weight(2, max_degree=4, seed=0)
        assert [r.name for r in results] == ["gr-weight", "gr-filtration", "flip-antimap"]
        assert _all_pass(results)

    def test_gr_weight_needs_two(self):
        with pytest.raises(IndexRangeError):
            verification_service.gr_weight(1)

    def test_sl2(self):
        assert _all_pass(verification_service.sl2(max_degree=4, bound=2))


class TestCentralizerSuite:
    def test_range_verdict(self):
        results, reports = verification_service.centralizer(2, 4)
        assert len(reports) == 5
        assert results[-1].name == "verified-range"
        assert "degrees 0..4" in results[-1].detail
        assert _all_pass(results)

    def test_cap_propagates(self, tight_settings):
        service = VerificationService(tight_settings, CentralizerService(tight_settings), QuantumService(tight_settings))
        with pytest.raises(ResourceLimitError):
            service.centralizer(3, 2)


class TestQuantumSuites:
    def test_commute(self):
        assert _all_pass(verification_service.quantum_commute(2))

    def test_det_central(self):
        results = verification_service.quantum_det_central(3)
        assert len(results) == 9
        assert _all_pass(results)

    def test_limit(self):
        assert _all_pass(verification_service.quantum_limit(2, seed=3, pairs=20))

    def test_rewriting(self):
        assert _all_pass(verification_service.quantum_rewriting(3, seed=1, words=10))

    def test_minor_convention_reports_printed_difference(self):
        results = verification_service.minor_convention(2)
        assert _all_pass(results)
        printed = results[1]
        assert "equals det_t: False" in printed.detail
        assert "specializes to c_2: False" in printed.detail

    @pytest.mark.slow
    def test_commute_n3(self):
        assert _all_pass(verification_service.quantum_commute(3))

    def test_quantum_cap(self, tight_settings):
        service = VerificationService(tight_settings, CentralizerService(tight_settings), QuantumService(tight_settings))
        with pytest.raises(ResourceLimitError):
            service.quantum_commute(3)
