import pytest
from sympy.polys.domains import QQ

from app.algebra.context import matrix_context, sl2_context
from app.algebra.polynomial import parse_polynomial
from app.config import Settings
from app.services.poisson_service import gr_table, kks_table, semiclassical_table


@pytest.fixture
def ctx2():
    return matrix_context(2)


@pytest.fixture
def ctx3():
    return matrix_context(3)


@pytest.fixture
def sl2ctx():
    return sl2_context()


@pytest.fixture
def sc2():
    return semiclassical_table(2)


@pytest.fixture
def sc3():
    return semiclassical_table(3)


@pytest.fixture
def kks2():
    return kks_table(2)


@pytest.fixture
def gr2():
    return gr_table(2)


@pytest.fixture
def parse2(ctx2):
    return lambda text: parse_polynomial(text, ctx2)


@pytest.fixture
def parse3(ctx3):
    return lambda text: parse_polynomial(text, ctx3)


@pytest.fixture
def tight_settings():
    """Settings with small caps for resource-limit tests."""
    return Settings(cap_mb=1, max_ambient_dimension=50, centralizer_max_n=2, quantum_max_n=2, weyl_max_n=3)


def make_polynomial(context, rng, terms=4, degrees=(0, 1, 2, 3)):
    """Seeded random polynomial; a single entry in ``degrees`` makes it homogeneous."""
    gens = context.ring.gens
    f = context.zero
    for _ in range(terms):
        term = context.constant(QQ(rng.randint(-5, 5), rng.randint(1, 3)))
        for _ in range(rng.choice(degrees)):
            term = term * rng.choice(gens)
        f += term
    return f


@pytest.fixture
def random_poly():
    return make_polynomial
