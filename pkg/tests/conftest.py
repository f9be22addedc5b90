import pytest
from hypothesis import strategies as st

from orejordan import OreOperator, TermOrder, load_spec, parse_operator

PLANE = "derivations = dx, dy\nvariables = x, y\norder = dx > dy\n"
HEAT = "derivations = dx, dt\nvariables = x, t\norder = dx > dt\n"
LINE = "derivations = d\nvariables = x:d\n"
TAN = """
derivations = dx, dt
variables = x, t
generators = T, E
constants = c
dx(T) = c*(1 + T^2)
dt(T) = 0
dx(E) = -c*T*E
dt(E) = c^2*E
"""

LANDAU = "dx^3 + x*dx^2*dy + 2*dx^2 + 2*(x+1)*dx*dy + dx + (x+2)*dy"
LANDAU_L1 = "x*dx^2*dy + x^2*dx*dy^2 - dx^2 - dx*dy + x^2*dy^2 - dx - dy - x*dy"
LANDAU_L2 = ("dx^3 - x^2*dx*dy^2 + 3*dx^2 + 2*x*dx*dy + 3*dx*dy - x^2*dy^2 + 2*dx"
             " + 2*x*dy + 3*dy")
CARTAN = "x*dx^3 - x^2*dx^2*dt - 2*dx^2 - x*dx*dt + x^2*dt^2 + 2*dt"


@pytest.fixture(scope="session")
def plane():
    return load_spec(PLANE)


@pytest.fixture(scope="session")
def plane_order(plane):
    return TermOrder.grlex(plane, "dx > dy")


@pytest.fixture(scope="session")
def heat():
    return load_spec(HEAT)


@pytest.fixture(scope="session")
def heat_order(heat):
    return TermOrder.grlex(heat, "dx > dt")


@pytest.fixture(scope="session")
def line():
    return load_spec(LINE)


@pytest.fixture(scope="session")
def line_order(line):
    return TermOrder.grlex(line)


@pytest.fixture(scope="session")
def tan():
    return load_spec(TAN)


@pytest.fixture
def op(plane):
    return lambda text: parse_operator(text, plane)


# -- hypothesis strategies ----------------------------------------------------------

def polynomials(spec, names, max_terms=3, max_deg=2, coeff=3):
    """Small polynomials in ``names`` with integer coefficients."""
    gens = [spec.gen(n) for n in names]
    monomial = st.tuples(*[st.integers(0, max_deg) for _ in gens])
    term = st.tuples(st.integers(-coeff, coeff), monomial)

    def build(terms):
        out = spec.zero
        for c, exps in terms:
            t = spec.one * c
            for g, e in zip(gens, exps):
                t *= g ** e
            out += t
        return out

    return st.lists(term, min_size=1, max_size=max_terms).map(build)


def field_elements(spec, names, rational=True, **kw):
    num = polynomials(spec, names, **kw)
    if not rational:
        return num
    den = polynomials(spec, names, **kw).filter(lambda p: p != 0)
    return st.tuples(num, st.one_of(st.just(spec.one), den)).map(lambda nd: nd[0] / nd[1])


def operators(spec, coefficients, max_order=2, max_terms=3, nonzero=False):
    m = spec.m
    index = st.tuples(*[st.integers(0, max_order) for _ in range(m)]).filter(
        lambda e: sum(e) <= max_order)
    if nonzero:
        coefficients = coefficients.filter(lambda c: c != 0)
    terms = st.dictionaries(index, coefficients, min_size=1 if nonzero else 0,
                            max_size=max_terms)
    return terms.map(lambda t: OreOperator(spec, t))


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
