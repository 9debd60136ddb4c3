import random
from itertools import combinations

import pytest

from app.algebra.laurent import ONE, T, T_INV, LaurentScalar
from app.config import settings
from app.exceptions import PolynomialSyntaxError, ResourceLimitError, UnknownVariableError
from app.services.invariant_service import char_coeff
from app.services.poisson_service import bracket, semiclassical_table
from app.services.quantum_service import (
    NCPolynomial,
    QuantumService,
    format_nc,
    nc_commutator,
    nc_mul,
    nc_normal_form,
    normal_form,
    parse_nc,
    quantum_det,
    quantum_minor,
    quantum_minor_sum,
    reduce_word,
    semiclassical_limit_pair,
    specialize,
)


def x(i, j):
    return NCPolynomial.generator(i, j)


class TestNormalForm:
    def test_crossing_pair(self):
        value = nc_normal_form(NCPolynomial.word([(2, 2), (1, 1)]))
        assert value.coefficient([(1, 1), (2, 2)]) == ONE
        assert value.coefficient([(1, 2), (2, 1)]) == -(T - T_INV)
        assert len(value) == 2

    def test_same_row(self):
        assert nc_normal_form(NCPolynomial.word([(1, 2), (1, 1)])) == NCPolynomial.word([(1, 1), (1, 2)], T_INV)

    def test_commuting_pair(self):
        assert nc_normal_form(NCPolynomial.word([(2, 1), (1, 2)])) == NCPolynomial.word([(1, 2), (2, 1)])

    def test_normal_words_are_fixed(self):
        word = ((1, 1), (1, 2), (2, 2))
        assert normal_form(word) == ((word, ONE),)

    def test_results_are_normal(self):
        value = nc_normal_form(NCPolynomial.word([(3, 3), (2, 2), (1, 1), (2, 1)]))
        assert value.is_normal()

    def test_confluence_in_random_orders(self):
        rng = random.Random(11)
        for _ in range(25):
            word = tuple((rng.randint(1, 3), rng.randint(1, 3)) for _ in range(rng.randint(2, 5)))
            expected = NCPolynomial(dict(normal_form(word)))
            assert reduce_word(word, choose=rng.choice) == expected
            assert reduce_word(word, choose=lambda positions: positions[-1]) == expected

    def test_associativity(self):
        rng = random.Random(5)
        gens = [x(i, j) for i in range(1, 4) for j in range(1, 4)]
        for _ in range(15):
            a = nc_mul(rng.choice(gens), rng.choice(gens))
            b, c = rng.choice(gens), rng.choice(gens)
            assert nc_mul(nc_mul(a, b), c) == nc_mul(a, nc_mul(b, c))

    def test_memo_is_bounded(self):
        assert normal_form.cache_info().maxsize == settings.normal_form_cache_size

    def test_specialize_sends_t_to_one(self):
        p = x(1, 1).scale(T - T_INV) + x(2, 2).scale(T * 2)
        context = semiclassical_table(2).context
        assert specialize(p, 2) == context.x(2, 2) * 2

    def test_unit(self):
        p = x(2, 1) + x(1, 2).scale(T)
        assert nc_mul(NCPolynomial.scalar(1), p) == p


class TestText:
    def test_format(self):
        value = nc_normal_form(NCPolynomial.word([(2, 2), (1, 1)]))
        assert format_nc(value) == "x[1,1].x[2,2] + (-t + t^-1)*x[1,2].x[2,1]"
        assert format_nc(NCPolynomial()) == "0"

    def test_parse_normalizes(self):
        assert parse_nc("x[2,2].x[1,1]", 2) == parse_nc("x[1,1].x[2,2] - (t - t^-1)*x[1,2].x[2,1]", 2)

    def test_format_parse_fixed_point(self):
        text = format_nc(quantum_det(3))
        assert format_nc(parse_nc(text, 3)) == text

    def test_unknown_generator(self):
        with pytest.raises(UnknownVariableError):
            parse_nc("x[1,1].x[3,1]", 2)

    def test_syntax_error(self):
        with pytest.raises(PolynomialSyntaxError):
            parse_nc("x[1,1] + ", 2)


class TestDeterminant:
    def test_n2(self):
        assert quantum_det(2) == parse_nc("x[1,1].x[2,2] - t*x[1,2].x[2,1]", 2)

    def test_n1(self):
        assert quantum_det(1) == x(1, 1)

    def test_n3_longest_coefficient(self):
        det = quantum_det(3)
        assert len(det) == 6
        assert det.coefficient([(1, 3), (2, 2), (3, 1)]) == LaurentScalar.monomial(3, -1)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_central(self, n):
        det = quantum_det(n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert not nc_commutator(det, x(i, j))


class TestMinorSums:
    def test_sigma1(self):
        assert quantum_minor_sum(3, 1) == x(1, 1) + x(2, 2) + x(3, 3)

    def test_sigma_n_is_det(self):
        assert quantum_minor_sum(2, 2) == quantum_det(2)

    def test_printed_weighting_differs(self):
        printed = quantum_minor_sum(2, 2, "printed")
        assert printed == parse_nc("x[1,1].x[2,2] + t^-1*x[1,2].x[2,1]", 2)
        assert printed != quantum_det(2)

    def test_principal_minor_of_size_two(self):
        assert quantum_minor([1, 3], 3) == parse_nc("x[1,1].x[3,3] - t*x[1,3].x[3,1]", 3)

    def test_unknown_convention(self):
        with pytest.raises(ValueError):
            quantum_minor([1], 2, "other")

    def test_commute_n2(self):
        assert not nc_commutator(quantum_minor_sum(2, 1), quantum_minor_sum(2, 2))

    @pytest.mark.slow
    def test_commute_n3(self):
        for i, j in combinations(range(1, 4), 2):
            assert not nc_commutator(quantum_minor_sum(3, i), quantum_minor_sum(3, j))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_specialize_to_char_coeff(self, n):
        for i in range(1, n + 1):
            assert specialize(quantum_minor_sum(n, i), n) == char_coeff(n, i)


class TestLimit:
    def test_commutator_example(self):
        assert nc_commutator(x(1, 1), x(1, 2)) == NCPolynomial.word([(1, 1), (1, 2)], ONE - T_INV)

    def test_examples(self, parse2):
        assert semiclassical_limit_pair(x(1, 1), x(1, 2), 2) == parse2("x[1,1]*x[1,2]")
        assert semiclassical_limit_pair(x(1, 1), x(2, 2), 2) == parse2("2*x[1,2]*x[2,1]")
        assert not semiclassical_limit_pair(quantum_minor_sum(2, 1), quantum_minor_sum(2, 2), 2)

    @pytest.mark.parametrize("n", [2, 3])
    def test_generator_pairs(self, n):
        table = semiclassical_table(n)
        gens = [x(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
        for a in gens:
            for b in gens:
                assert semiclassical_limit_pair(a, b, n) == bracket(specialize(a, n), specialize(b, n), table)

    def test_random_monomial_pairs(self):
        rng = random.Random(2)
        table = semiclassical_table(3)
        for _ in range(50):
            a = NCPolynomial.word(sorted((rng.randint(1, 3), rng.randint(1, 3)) for _ in range(rng.randint(1, 2))))
            b = NCPolynomial.word(sorted((rng.randint(1, 3), rng.randint(1, 3)) for _ in range(rng.randint(1, 2))))
            assert semiclassical_limit_pair(a, b, 3) == bracket(specialize(a, 3), specialize(b, 3), table)


class TestService:
    def test_cap(self, tight_settings):
        service = QuantumService(tight_settings)
        service.check_size(2)
        with pytest.raises(ResourceLimitError):
            service.check_size(3)
        service.check_size(3, force=True)
