import random

import pytest

from app.algebra.context import diagonal_context, extended_context
from app.algebra.polynomial import is_homogeneous
from app.exceptions import ContextMismatchError, IndexRangeError
from app.services.invariant_service import char_coeff
from app.services.poisson_service import (
    BracketTable,
    StructureName,
    adjoint,
    bracket,
    delta,
    extended_table,
    flip,
    generator_triples,
    get_table,
    gr_table,
    is_poisson_central,
    is_torus_homogeneous,
    jacobi_defect,
    kks_table,
    phi,
    semiclassical_table,
    top_x11_component,
    torus_weight,
    x11_degree,
)


class TestTables:
    @pytest.mark.parametrize(
        "f, g, expected",
        [
            ("x[1,1]", "x[2,2]", "2*x[1,2]*x[2,1]"),
            ("x[1,1]", "x[1,2]", "x[1,1]*x[1,2]"),
            ("x[1,1]", "x[2,1]", "x[1,1]*x[2,1]"),
            ("x[1,2]", "x[2,1]", "0"),
            ("x[1,2]", "x[2,2]", "x[1,2]*x[2,2]"),
            ("x[2,2]", "x[1,1]", "-2*x[1,2]*x[2,1]"),
        ],
    )
    def test_semiclassical_generators(self, sc2, parse2, f, g, expected):
        assert bracket(parse2(f), parse2(g), sc2) == parse2(expected)

    def test_kks_generators(self, kks2, parse2):
        assert bracket(parse2("x[1,2]"), parse2("x[2,1]"), kks2) == parse2("x[1,1] - x[2,2]")
        assert bracket(parse2("x[1,1]"), parse2("x[2,2]"), kks2) == parse2("0")
        assert bracket(parse2("x[1,1]"), parse2("x[1,2]"), kks2) == parse2("x[1,2]")

    def test_gr_drops_x11_against_lower_block(self, gr2, sc2, parse2):
        x11, x22 = parse2("x[1,1]"), parse2("x[2,2]")
        assert bracket(x11, x22, gr2) == parse2("0")
        assert bracket(x11, parse2("x[1,2]"), gr2) == bracket(x11, parse2("x[1,2]"), sc2)

    def test_gr_needs_two(self):
        with pytest.raises(IndexRangeError):
            gr_table(1)

    def test_get_table_by_name(self):
        assert get_table("kks", 2) is kks_table(2)
        assert get_table(StructureName.SEMICLASSICAL, 3) is semiclassical_table(3)
        with pytest.raises(ValueError):
            get_table("lie", 2)

    def test_table_validation(self, ctx2):
        with pytest.raises(ValueError):
            BracketTable(StructureName.KKS, ctx2, {(0, 1): ctx2.x(1, 1) * ctx2.x(1, 2)})
        with pytest.raises(ValueError):
            BracketTable(StructureName.SEMICLASSICAL, ctx2, {(1, 0): ctx2.x(1, 1) * ctx2.x(1, 2)})

    @pytest.mark.parametrize("name", list(StructureName))
    def test_torus_homogeneous(self, name):
        assert is_torus_homogeneous(get_table(name, 3))


class TestBracket:
    def test_antisymmetry_and_leibniz(self, sc3, parse3):
        f = parse3("x[1,1]*x[2,3] + x[3,2]")
        g = parse3("x[1,2]^2 - x[3,3]")
        h = parse3("x[2,1]")
        assert bracket(f, g, sc3) == -bracket(g, f, sc3)
        assert bracket(f, g * h, sc3) == bracket(f, g, sc3) * h + g * bracket(f, h, sc3)

    def test_constants_bracket_to_zero(self, sc2, ctx2):
        assert not bracket(ctx2.constant(5), ctx2.x(1, 2), sc2)

    def test_context_mismatch(self, sc2, ctx3):
        with pytest.raises(ContextMismatchError):
            bracket(ctx3.x(1, 1), ctx3.x(2, 2), sc2)

    def test_adjoint_matches_bracket(self, sc3, parse3):
        c1 = char_coeff(3, 1)
        m = parse3("x[1,2]*x[3,1]*x[2,2]")
        assert adjoint(c1, sc3)(m) == bracket(c1, m, sc3)

    @pytest.mark.parametrize("name", list(StructureName))
    @pytest.mark.parametrize("n, count", [(2, 4), (3, 84)])
    def test_jacobi_on_generators(self, name, n, count):
        table = get_table(name, n)
        gens = table.context.ring.gens
        triples = list(generator_triples(table))
        assert len(triples) == count
        for a, b, c in triples:
            assert not jacobi_defect(gens[a], gens[b], gens[c], table)

    def test_jacobi_on_extended_table(self):
        table = extended_table(2)
        gens = table.context.ring.gens
        for a, b, c in generator_triples(table):
            assert not jacobi_defect(gens[a], gens[b], gens[c], table)

    def test_det_is_casimir(self, sc3):
        assert is_poisson_central(char_coeff(3, 3), sc3)
        assert not is_poisson_central(char_coeff(3, 1), sc3)

    def test_kks_casimirs(self):
        table = kks_table(3)
        assert all(is_poisson_central(char_coeff(3, i), table) for i in range(1, 4))


class TestFiltration:
    def test_x11_degree(self, parse2, ctx2):
        assert x11_degree(parse2("x[1,1]^3*x[2,2] + x[1,2]")) == 3
        assert x11_degree(ctx2.zero) == -1

    def test_top_component(self, parse2):
        f = parse2("x[1,1]^2*x[2,2] + 3*x[1,1]^2 + x[1,1]*x[1,2]")
        assert top_x11_component(f) == parse2("x[1,1]^2*x[2,2] + 3*x[1,1]^2")

    def test_filtration_rejects_other_contexts(self):
        with pytest.raises(ContextMismatchError):
            x11_degree(diagonal_context(2).gen(0))

    def test_torus_weight(self, ctx3):
        # x[1,2]^2 x[3,1]: rows 1,1,3 minus columns 2,2,1
        assert torus_weight((0, 2, 0, 0, 0, 0, 1, 0, 0), ctx3) == (1, -2, 1)


class TestMaps:
    def test_phi_kills_first_row_and_column(self, parse3):
        image = phi(parse3("x[1,1]*x[2,3] + x[1,2] + x[3,3]^2"))
        target = extended_context(2)
        assert image == target.var("t") * target.x(1, 2) + target.x(2, 2) ** 2

    def test_phi_rejects_wrong_context(self):
        with pytest.raises(ContextMismatchError):
            phi(extended_context(2).var("t"))

    def test_delta(self):
        source = extended_context(2)
        target = diagonal_context(3)
        f = source.var("t") * source.x(2, 2) + source.x(1, 2)
        assert delta(f) == target.var("t_1") * target.var("t_3")

    def test_phi_is_poisson_on_generators(self, sc3):
        # phi is a Poisson map onto the quotient with t central
        target = extended_table(2)
        gens = sc3.context.ring.gens
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                assert phi(bracket(gens[a], gens[b], sc3)) == bracket(phi(gens[a]), phi(gens[b]), target)

    def test_flip_is_antimap(self, sc3, ctx3):
        rng = random.Random(3)
        gens = ctx3.ring.gens
        for _ in range(20):
            f = rng.choice(gens) * rng.choice(gens)
            g = rng.choice(gens)
            assert bracket(flip(f), flip(g), sc3) == -flip(bracket(f, g, sc3))

    def test_flip_is_involution(self, parse3):
        f = parse3("x[1,2]*x[3,3] + x[2,1]")
        assert flip(flip(f)) == f
        assert flip(parse3("x[1,2]")) == parse3("x[3,2]")


@pytest.mark.parametrize("seed", range(5))
class TestRandomBrackets:
    @pytest.mark.parametrize(
        "name, shift",
        [(StructureName.SEMICLASSICAL, 0), (StructureName.GR, 0), (StructureName.KKS, -1)],
    )
    def test_grading(self, ctx3, random_poly, seed, name, shift):
        rng = random.Random(seed)
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        f = random_poly(ctx3, rng, degrees=(p,))
        g = random_poly(ctx3, rng, degrees=(q,))
        assert is_homogeneous(bracket(f, g, get_table(name, 3)), p + q + shift)

    def test_leibniz(self, sc3, ctx3, random_poly, seed):
        rng = random.Random(seed)
        f, g, h = (random_poly(ctx3, rng, terms=3) for _ in range(3))
        assert bracket(f, g * h, sc3) == bracket(f, g, sc3) * h + g * bracket(f, h, sc3)
        assert bracket(f, g, sc3) == -bracket(g, f, sc3)

    def test_phi_is_poisson(self, sc3, ctx3, random_poly, seed):
        rng = random.Random(seed)
        f, g = random_poly(ctx3, rng, terms=3), random_poly(ctx3, rng, terms=3)
        target = extended_table(2)
        assert phi(bracket(f, g, sc3)) == bracket(phi(f), phi(g), target)

    def test_delta_kills_brackets(self, random_poly, seed):
        table = extended_table(2)
        rng = random.Random(seed)
        f, g = random_poly(table.context, rng, terms=3), random_poly(table.context, rng, terms=3)
        assert not delta(bracket(f, g, table))


def test_delta_kills_brackets_of_diagonal_variables():
    table = extended_table(3)
    context = table.context
    diagonal = [context.var("t")] + [context.x(i, i) for i in range(1, 4)]
    for u in diagonal:
        for v in diagonal:
            assert not delta(bracket(u, v, table))
