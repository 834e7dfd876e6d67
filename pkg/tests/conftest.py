from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from fxf.algebra import Poly, RatFunc
from fxf.ode import HeunParams, HGParams

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rats = st.fractions(min_value=-6, max_value=6, max_denominator=6)
nonzero_rats = rats.filter(lambda v: v != 0)


@st.composite
def polys(draw, max_degree=3):
    return Poly(draw(st.lists(rats, max_size=max_degree + 1)))


@st.composite
def ratfuncs(draw, max_degree=2):
    num = draw(polys(max_degree))
    den = draw(polys(max_degree).filter(lambda p: not p.is_zero()))
    return RatFunc(num, den)


nonzero_ratfuncs = ratfuncs().filter(lambda f: not f.is_zero())


@st.composite
def hg_params(draw, nondegenerate=True):
    a, b, c = draw(rats), draw(rats), draw(rats)
    if nondegenerate:
        a = a or Fraction(1, 2)
        b = b or Fraction(-1, 3)
        if c in (0, 1):
            c += Fraction(1, 7)
    return HGParams(a, b, c)


@st.composite
def heun_params(draw):
    gamma, delta, epsilon = draw(rats), draw(rats), draw(rats)
    d = draw(rats.filter(lambda v: v not in (0, 1)))
    ab, q = draw(rats), draw(rats)
    return HeunParams(ab, gamma + delta + epsilon - 1, gamma, delta, epsilon, d, q)


# One summary line per acceptance criterion, printed after the run.
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
