import random
from fractions import Fraction

import mpmath
import pytest
from conftest import heun_params, hg_params, nonzero_rats, rats
from hypothesis import assume, given
from hypothesis import strategies as st

from fxf.algebra import Poly, RatFunc
from fxf.ode import (
    INFINITY,
    HeunParams,
    HGParams,
    LinearODE2,
    classify_full,
    from_heun,
    from_hypergeometric,
    match_hypergeometric,
)
from fxf.sampling import random_heun, random_inner_spec
from fxf.xform import (
    DegenerateSpec,
    IndeterminateSystem,
    NoSolution,
    TrivialPotential,
    ZeroPotential,
    ZeroSlope,
    build_inner_heun,
    build_outer_equation,
    companion,
    companion_of,
    eta_integral_gap,
    heun_companion,
    hg_companion_map,
    mathieu_like_companion,
    closed_form_R,
    printed_N,
    reduce_to_hypergeometric,
    reduced_outer_equation,
    reduction_chain,
    reduction_residuals,
    simplified_R,
    solve_eta,
)

x = RatFunc.x()
F_ = Fraction


# -- companions ----------------------------------------------------------------


def test_constant_companion_is_self_dual():
    pair = companion(RatFunc.const(0), RatFunc.const(1))
    assert pair.companion == LinearODE2(RatFunc.const(0), RatFunc.const(-1))
    assert pair.source == pair.companion


def test_zero_potential_rejected():
    with pytest.raises(ZeroPotential):
        companion(1 / x, RatFunc.const(0))


def test_hypergeometric_companion_coefficient():
    a, b, c = F_(2, 3), F_(-5, 2), F_(7, 4)
    comp = companion_of(from_hypergeometric(HGParams(a, b, c))).companion
    assert comp.P == ((1 - a - b) * x + c - 1) / (x * (x - 1))


def test_heun_companion_coefficient():
    p = HeunParams.from_alpha_beta(2, -3, F_(1, 2), F_(2, 3), F_(-7, 6), F_(1, 3), F_(7, 5))
    comp = companion_of(from_heun(p)).companion
    ab = p.alpha_beta
    expected = (1 - p.gamma) / x + (1 - p.delta) / (x - 1) + (1 - p.epsilon) / (x - p.d) - ab / (ab * x - p.q)
    assert comp.P == expected


def test_hg_map_examples():
    assert hg_companion_map(HGParams(F_(1, 2), F_(1, 3), F_(5, 4))) == HGParams(F_(-1, 2), F_(-1, 3), F_(-1, 4))
    assert hg_companion_map(HGParams(0, 0, 1)) == HGParams(0, 0, 0)
    p = HGParams(F_(3, 5), -2, F_(1, 6))
    assert hg_companion_map(hg_companion_map(p)) == p


def test_mathieu_examples():
    mc = mathieu_like_companion(1, 1, 1, 1)
    cls = classify_full(mc.companion)
    assert set(cls.locations("regular")) == {0, 1, -1}
    assert cls.locations("irregular") == [INFINITY]
    a, b, c, m = F_(1, 2), 3, F_(-1, 3), F_(2, 5)
    mc = mathieu_like_companion(a, b, c, m)
    assert mc.companion.P == ((1 - a - b) * x + c - 1) / (x * (x - 1)) - m / (a * b + m * x)


def test_mathieu_coalescence_flag():
    mc = mathieu_like_companion(0, 2, F_(1, 2), 3)
    assert mc.extra_point == 0
    assert "coalescence:extra_point_at_0" in mc.flags
    with pytest.raises(ZeroSlope):
        mathieu_like_companion(1, 1, 1, 0)


def test_heun_companion_case_d_with_zero_epsilon_collapses():
    # epsilon = 0 and q = alpha beta d: the point d disappears from the companion.
    p = HeunParams(-2, 1, F_(1, 2), F_(3, 2), 0, F_(1, 3), F_(-2, 3))
    hc = heun_companion(p)
    assert hc.case == "d"
    assert hc.matched is None
    assert "no_heun_match:hypergeometric_collapse" in hc.flags
    assert match_hypergeometric(hc.companion) is not None


def test_heun_companion_case_d_nonzero_epsilon():
    p = HeunParams(-2, 2, F_(1, 2), F_(3, 2), 1, F_(1, 3), F_(-2, 3))
    hc = heun_companion(p)
    assert hc.case == "d"
    assert (hc.matched.gamma, hc.matched.delta, hc.matched.epsilon) == (1 - p.gamma, 1 - p.delta, -p.epsilon)


def test_heun_companion_generic_five_points():
    p = HeunParams(2, 3, 1, 2, 1, F_(1, 3), 1)  # q/(alpha beta) = 1/2
    ode, matched = heun_companion(p)
    assert matched is None
    cls = classify_full(ode)
    assert len(cls.regular) == 5 and cls.is_fuchsian()
    assert set(cls.locations()) == {0, 1, F_(1, 3), F_(1, 2), INFINITY}


def test_heun_companion_case_one_negates_alpha_beta():
    p = HeunParams.from_alpha_beta(2, -5, F_(1, 2), F_(2, 3), F_(-19, 6), F_(1, 4), -10)
    hc = heun_companion(p)
    assert hc.case == "one"
    m = hc.matched
    assert (m.gamma, m.delta, m.epsilon) == (1 - p.gamma, -p.delta, 1 - p.epsilon)
    assert m.alpha_beta == p.alpha_beta
    assert m.alpha_plus_beta == -p.alpha_plus_beta
    assert m.gamma + m.delta + m.epsilon == m.alpha_plus_beta + 1


def test_trivial_heun_companion_rejected():
    with pytest.raises(TrivialPotential):
        heun_companion(HeunParams(0, 1, 1, 1, 0, F_(1, 2), 0))


def test_infinity_case_when_alpha_beta_vanishes():
    p = HeunParams(0, 1, 1, F_(1, 2), F_(1, 2), F_(1, 3), 2)
    hc = heun_companion(p)
    assert hc.case == "infinity" and hc.extra_point is INFINITY
    m = hc.matched
    assert (m.gamma, m.delta, m.epsilon) == (0, F_(1, 2), F_(1, 2))


# -- inner Heun, change of variable and outer equation ---------------------------


def test_inner_heun_example():
    for D, lam in ((F_(3), F_(1)), (F_(-1, 2), F_(5, 3))):
        spec = build_inner_heun(2, 1, 1, 1, D, 1, 1, 0, lam)
        h = spec.heun
        assert (h.gamma, h.delta, h.epsilon, h.d, h.q) == (1, 0, F_(-1, 2), F_(1, 2), -D / 2)
        assert h.alpha_beta == -D and h.alpha_plus_beta == F_(-1, 2)
        assert spec.H == D / (x * (x - lam))
        assert spec.checks["rescaled_matches_heun"]


def test_inner_heun_n_eq_m_mu_is_degenerate():
    with pytest.raises(DegenerateSpec):
        build_inner_heun(2, 1, 1, 1, 1, 2, 1, F_(1, 2), 1)
    spec = build_inner_heun(2, 1, 1, 1, 1, 2, 1, F_(1, 2), 1, allow_degenerate=True)
    assert spec.heun is None and "d_eq_1" in spec.flags
    # The fourth singular point has merged with xi = lam.
    assert set(classify_full(spec.ode).locations()) <= {0, 1, INFINITY}


def test_inner_heun_other_degeneracies():
    with pytest.raises(DegenerateSpec):
        build_inner_heun(1, 1, 1, 1, 1, 1, 1, 0, 0)
    with pytest.raises(DegenerateSpec):
        build_inner_heun(1, 1, 1, 1, 1, 0, 1, 0, 1)
    with pytest.raises(DegenerateSpec):
        build_inner_heun(1, 1, 1, 1, 1, 1, -2, -1, 1)  # m c1 - m mu + n = 0


def test_variable_change_examples():
    vc = solve_eta(2, 3, F_(1, 2), c1=F_(-4, 3))
    assert vc.forward.compose(vc.inverse) == x
    assert vc.inverse.compose(vc.forward) == x
    assert vc.inverse.derivative() == vc.eta


def test_eta_integral_constant():
    D, lam, mu = F_(3, 2), F_(2), F_(1, 3)
    vc = solve_eta(D, lam, mu, c1=F_(1, 2))
    # Stay on one side of both logarithmic singularities.
    xs = [mpmath.mpf(k) / 10 for k in range(1, 11)]
    gaps = [eta_integral_gap(D, lam, mu, vc, v) for v in xs]
    assert max(abs(g - gaps[0]) for g in gaps) < 1e-12


def _outer_for(a, b, c, c1, D, m, n, mu, lam):
    spec = build_inner_heun(a, b, c, c1, D, m, n, mu, lam)
    vc = solve_eta(D, lam, mu, c1)
    return spec, vc, build_outer_equation(spec, vc)


def test_outer_equation_four_points():
    spec, vc, outer = _outer_for(F_(1, 2), 2, F_(1, 3), 3, F_(5, 2), 2, F_(-1, 2), 1, F_(7, 3))
    cls = classify_full(outer.ode)
    c2 = vc.c2
    assert cls.is_fuchsian() and len(cls.regular) == 4
    assert set(cls.locations()) == {-spec.mu, -spec.n / spec.m, (1 - c2 * spec.mu) / c2, INFINITY}


def test_outer_potential_value():
    # mu = 1, c2 = -1 (c1 = -1), D / c1 = 1
    spec, vc, outer = _outer_for(1, 2, 3, -1, -1, 1, 3, 1, 1)
    assert -outer.ode.Q(0) == F_(1, 4)


def test_outer_checks_and_N_difference():
    a, b, c, c1, D, m, n, mu, lam = map(F_, ("1/2", 2, "1/3", 3, "5/2", 2, "-1/2", 1, "7/3"))
    spec, vc, outer = _outer_for(a, b, c, c1, D, m, n, mu, lam)
    assert all(outer.checks.values())
    assert outer.N_diff == {"x^1": (c - 1) * m * mu / c1}
    assert outer.N_printed == printed_N(a, b, c, c1, m, n, mu)


def test_N_diff_vanishes_when_c_is_one():
    spec, vc, outer = _outer_for(1, 2, 1, 3, 2, 1, 1, 2, 1)
    assert outer.N_diff == {}


# -- reduction -------------------------------------------------------------------


def test_reduction_example():
    (sol,) = reduce_to_hypergeometric(1, 5, 3, 2, 1)
    assert (sol.R, sol.c1, sol.mu) == (F_(-1, 3), F_(9, 4), F_(1, 2))
    assert sol.branch == "closed_form_branch"
    assert {"mu_eq_n_over_m", "d_eq_1"} <= set(sol.degeneracies)
    assert sol.residuals() == (0, 0, 0)


def test_reduction_example_K_zero():
    sols = reduce_to_hypergeometric(2, 1, 2, 1, 1)
    sol = next(s for s in sols if s.branch == "closed_form_branch")
    assert (sol.R, sol.c1, sol.mu) == (-1, -1, 1)
    assert "mu_eq_n_over_m" in sol.degeneracies


def test_reduction_continuum():
    # a n = b m
    with pytest.raises(IndeterminateSystem) as info:
        reduce_to_hypergeometric(1, 2, 3, 1, 2)
    assert info.value.constraint == "a*n = b*m"
    (sol,) = reduce_to_hypergeometric(1, 2, 3, 1, 2, mu=5)
    assert sol.mu == 5 and sol.residuals() == (0, 0, 0)
    assert sol.R == F_(1, 5 - 2)


def test_reduction_needs_m():
    with pytest.raises(NoSolution):
        reduce_to_hypergeometric(1, 2, 3, 0, 1)


def test_reduced_outer_equation_three_points():
    (sol,) = reduce_to_hypergeometric(1, 5, 3, 2, 1)
    e = reduced_outer_equation(sol, 1, 2, 1)
    cls = classify_full(e)
    assert cls.is_fuchsian()
    assert set(cls.locations()) == {F_(-1, 2), F_(7, 4), INFINITY}
    assert set(cls.locations()) == {-sol.mu, (1 - sol.c2 * sol.mu) / sol.c2, INFINITY}
    spec, vc, outer = reduction_chain(sol, 1)
    X = Poly.x()
    assert outer.N_recomputed == sol.R * (2 * X + 1) ** 2
    assert outer.ode == e


# -- properties ----------------------------------------------------------------


@given(rats, nonzero_rats)
def test_companion_preserves_potential(F0, f0):
    F = F0 / (x - 1) + 1
    f = f0 * (x + 2) / (x**2 + 1)
    pair = companion(F, f)
    assert pair.companion.Q == pair.source.Q == -f


@given(hg_params())
def test_hg_map_property(p):
    image = hg_companion_map(p)
    assert companion_of(from_hypergeometric(p)).companion == from_hypergeometric(image)


@given(heun_params())
def test_heun_companion_structure(p):
    assume(p.alpha_beta != 0)
    hc = heun_companion(p)
    cls = classify_full(hc.companion)
    if hc.case == "generic":
        assert len(cls.regular) == 5 and cls.is_fuchsian()
        assert hc.extra_point in cls.locations("regular")
    elif hc.matched is not None:
        m = hc.matched
        assert (m.gamma, m.delta, m.epsilon) == hc.expected_map
        assert m.gamma + m.delta + m.epsilon == m.alpha_plus_beta + 1


@given(st.tuples(*[rats] * 7), nonzero_rats, nonzero_rats)
def test_inner_heun_valid_or_degenerate(vals, D, lam):
    a, b, c, c1, m, n, mu = vals
    try:
        spec = build_inner_heun(a, b, c, c1, D, m, n, mu, lam)
    except DegenerateSpec:
        return
    h = spec.heun
    assert h.delta == 0
    assert h.gamma + h.delta + h.epsilon == h.alpha_plus_beta + 1
    assert h.d not in (0, 1)
    assert spec.rescaled == from_heun(h)


@given(rats, rats, rats, nonzero_rats, rats)
def test_reduction_branches_satisfy_system(a, b, c, m, n):
    try:
        sols = reduce_to_hypergeometric(a, b, c, m, n)
    except (NoSolution, IndeterminateSystem):
        return
    for s in sols:
        assert reduction_residuals(a, b, c, m, n, s.R, s.c1, s.mu) == (0, 0, 0)


@given(nonzero_rats, nonzero_rats, rats, nonzero_rats)
def test_variable_change_identities(D, lam, mu, c1):
    vc = solve_eta(D, lam, mu, c1)
    assert vc.forward.compose(vc.inverse) == x
    assert vc.inverse.compose(vc.forward) == x
    assert vc.eta * (D / lam) / (vc.inverse + mu) == D / (x * (x - lam))


def test_closed_form_R_simplifies_on_random_tuples():
    rng = random.Random(7)
    checked = 0
    while checked < 100:
        a, b, c, m, n = (F_(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(5))
        try:
            lhs = closed_form_R(a, b, c, m, n)
            rhs = simplified_R(a, b, c, m, n)
        except ZeroDivisionError:
            continue
        assert lhs == rhs
        checked += 1


def test_random_outer_equations_report_N_difference():
    rng = random.Random(11)
    for _ in range(20):
        v = random_inner_spec(rng)
        spec = build_inner_heun(**v)
        outer = build_outer_equation(spec, solve_eta(v["D"], v["lam"], v["mu"], v["c1"]))
        assert outer.checks["N_diff_is_x_coefficient_(c-1)m mu/c1"]


def test_random_heun_sampler_cases():
    rng = random.Random(3)
    for case in ("zero", "one", "d"):
        for _ in range(10):
            hc = heun_companion(random_heun(rng, case))
            assert hc.case == case
