"""Transformation laws between second-order equations.

* companion equations: y'' - F y' - f y = 0 is paired with
  u'' + (F - f'/f) u' - f u = 0, whose solutions satisfy (y'/y)(u'/u) = f;
* the induced parameter maps on hypergeometric and Heun equations;
* the xi-construction turning an inner Heun equation in xi into an outer
  equation in x through the Moebius map xi(x) = lam / (1 - c2 (x + mu));
* the algebraic system forcing the outer equation to have three singular
  points, solved by exact elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath

from .algebra import Poly, RatFunc, rational_roots, to_mp, to_rat
from .ode import (
    INFINITY,
    HeunParams,
    HGParams,
    LinearODE2,
    from_heun,
    from_hypergeometric,
    match_heun,
)


class ZeroPotential(ValueError):
    """f is identically zero, so f'/f is undefined."""


class TrivialPotential(ZeroPotential):
    """Heun equation with alpha*beta = 0 and q = 0."""


class ZeroSlope(ValueError):
    """The non-Fuchsian deformation needs m != 0."""


class DegenerateSpec(ValueError):
    """Inner-equation constants make d undefined or coalesce singular points."""


class NoSolution(ValueError):
    """The reduction system is inconsistent."""


class IndeterminateSystem(ValueError):
    """The reduction system has a one-parameter family of solutions."""

    def __init__(self, message: str, constraint: str):
        super().__init__(message)
        self.constraint = constraint


class TransformMismatch(AssertionError):
    """A parameter map disagreed with the directly computed companion."""


# -- companion equations ------------------------------------------------------


@dataclass(frozen=True)
class CompanionPair:
    source: LinearODE2
    companion: LinearODE2
    f: RatFunc

    @property
    def F(self) -> RatFunc:
        return self.source.F


def companion(F: RatFunc, f: RatFunc) -> CompanionPair:
    """Pair y'' - F y' - f y = 0 with u'' + (F - f'/f) u' - f u = 0."""
    if f.is_zero():
        raise ZeroPotential("companion equation needs f != 0")
    source = LinearODE2.from_riccati_form(F, f)
    return CompanionPair(source, LinearODE2(F - f.logderiv(), -f), f)


def companion_of(e: LinearODE2) -> CompanionPair:
    return companion(e.F, e.f)


def hg_companion_map(p: HGParams, check: bool = True) -> HGParams:
    """(a, b, c) -> (-a, -b, 1 - c).

    With ``check`` the image is compared against the companion of the
    hypergeometric equation computed directly; the check is skipped when
    ab = 0 because the companion is then undefined.
    """
    image = HGParams(-p.a, -p.b, 1 - p.c)
    if check and p.a * p.b != 0:
        direct = companion_of(from_hypergeometric(p)).companion
        if direct != from_hypergeometric(image):
            raise TransformMismatch(f"companion of {p} is not hypergeometric {image}")
    return image


@dataclass(frozen=True)
class MathieuCompanion:
    source: LinearODE2
    companion: LinearODE2
    extra_point: Fraction
    flags: tuple[str, ...]


def mathieu_like_source(a, b, c, m) -> LinearODE2:
    a, b, c, m = map(to_rat, (a, b, c, m))
    x = RatFunc.x()
    F = -c / x - (a + b - c + 1) / (x - 1)
    f = -(a * b + m * x) / (x * (x - 1))
    return LinearODE2.from_riccati_form(F, f)


def mathieu_like_companion(a, b, c, m) -> MathieuCompanion:
    """Companion of the hypergeometric equation with f = -(ab + m x)/(x(x-1))."""
    a, b, c, m = map(to_rat, (a, b, c, m))
    if m == 0:
        raise ZeroSlope("m = 0 is the hypergeometric case; use hg_companion_map")
    src = mathieu_like_source(a, b, c, m)
    pair = companion_of(src)
    point = -a * b / m
    flags = []
    if point == 0:
        flags.append("coalescence:extra_point_at_0")
    elif point == 1:
        flags.append("coalescence:extra_point_at_1")
    return MathieuCompanion(src, pair.companion, point, tuple(flags))


# -- Heun companion -----------------------------------------------------------

HEUN_COALESCENCE_MAPS = {
    # case -> (gamma, delta, epsilon) images, as in the coalescence analysis
    "one": lambda g, d, e: (1 - g, -d, 1 - e),
    "d": lambda g, d, e: (1 - g, 1 - d, -e),
    "zero": lambda g, d, e: (-g, 1 - d, 1 - e),
    "infinity": lambda g, d, e: (1 - g, 1 - d, 1 - e),
}


@dataclass(frozen=True)
class HeunCompanion:
    params: HeunParams
    source: LinearODE2
    companion: LinearODE2
    case: str  # "generic" | "zero" | "one" | "d" | "infinity"
    matched: Optional[HeunParams]
    expected_map: Optional[tuple[Fraction, Fraction, Fraction]]
    flags: tuple[str, ...] = ()

    @property
    def extra_point(self):
        """Location q/(alpha beta) of the fifth singularity."""
        if self.params.alpha_beta == 0:
            return INFINITY
        return self.params.q / self.params.alpha_beta

    def __iter__(self):
        # ``ode, matched = heun_companion(p)``
        return iter((self.companion, self.matched))


def heun_companion_case(p: HeunParams) -> str:
    if p.alpha_beta == 0:
        return "infinity" if p.q != 0 else "trivial"
    r = p.q / p.alpha_beta
    if r == 0:
        return "zero"
    if r == 1:
        return "one"
    if r == p.d:
        return "d"
    return "generic"


def heun_companion(p: HeunParams) -> HeunCompanion:
    """Companion of the Heun equation and, in coalescence cases, its Heun params."""
    case = heun_companion_case(p)
    if case == "trivial":
        raise TrivialPotential("alpha*beta = 0 and q = 0 make f identically zero")
    src = from_heun(p)
    comp = companion_of(src).companion
    if case == "generic":
        return HeunCompanion(p, src, comp, case, None, None)
    expected = HEUN_COALESCENCE_MAPS[case](p.gamma, p.delta, p.epsilon)
    matched = match_heun(comp)
    flags = []
    if matched is None:
        # The d point can disappear too (e.g. case "d" with epsilon = 0).
        flags.append("no_heun_match:hypergeometric_collapse")
    elif (matched.gamma, matched.delta, matched.epsilon) != expected:
        raise TransformMismatch(f"case {case}: matched {matched} but expected map {expected}")
    return HeunCompanion(p, src, comp, case, matched, expected, tuple(flags))


# -- inner Heun equation in xi ------------------------------------------------


@dataclass(frozen=True)
class InnerHeunSpec:
    a: Fraction
    b: Fraction
    c: Fraction
    c1: Fraction
    D: Fraction
    m: Fraction
    n: Fraction
    mu: Fraction
    lam: Fraction
    G: RatFunc
    H: RatFunc
    heun: Optional[HeunParams]
    flags: tuple[str, ...] = ()
    checks: dict = field(default_factory=dict)

    @property
    def ode(self) -> LinearODE2:
        """k'' + G k' - H k = 0 in xi."""
        return LinearODE2(self.G, -self.H)

    @property
    def rescaled(self) -> LinearODE2:
        """The same equation in z = xi / lam."""
        lam = self.lam
        z_to_xi = RatFunc(Poly([0, lam]))
        return LinearODE2(lam * self.G.compose(z_to_xi), -(lam * lam) * self.H.compose(z_to_xi))

    @property
    def d(self) -> Optional[Fraction]:
        den = self.m * self.c1 - self.m * self.mu + self.n
        return None if den == 0 else self.m * self.c1 / den


def inner_heun_formulas(a, b, c, c1, D, m, n, mu) -> dict:
    """Closed-form Heun parameters of the rescaled inner equation."""
    E = m * c1 - m * mu + n
    gamma = (a - m * c) / m
    epsilon = (a * c1 + b - a * mu - c * m * c1 - c * (n - m * mu) - gamma * E) / E
    d = m * c1 / E
    return {
        "gamma": gamma,
        "delta": Fraction(0),
        "epsilon": epsilon,
        "alpha_beta": -D,
        "q": -D * m * c1 / E,
        "d": d,
    }


def build_inner_heun(a, b, c, c1, D, m, n, mu, lam, allow_degenerate: bool = False) -> InnerHeunSpec:
    """Build G, H and the Heun parameters of k'' + G k' - H k = 0.

    With ``allow_degenerate`` the n = m mu case (d = 1, the fourth point merges
    with xi = lam) returns a spec with ``heun = None`` and a flag instead of
    raising, so the collapsed three-point equation can still be used.
    """
    a, b, c, c1, D, m, n, mu, lam = map(to_rat, (a, b, c, c1, D, m, n, mu, lam))
    if lam == 0:
        raise DegenerateSpec("lambda = 0")
    if m == 0:
        raise DegenerateSpec("m = 0")
    if c1 == 0:
        raise DegenerateSpec("c1 = exp(c') cannot vanish")
    E = m * c1 - m * mu + n
    if E == 0:
        raise DegenerateSpec("m c1 - m mu + n = 0 leaves d undefined")

    xi = RatFunc.x()
    G = (a * c1 * (xi - lam) + xi * (b - a * mu)) / (xi * (m * c1 * (xi - lam) + xi * (n - m * mu))) - c / xi
    H = D / (xi * (xi - lam))

    flags: list[str] = []
    formulas = inner_heun_formulas(a, b, c, c1, D, m, n, mu)
    checks: dict = {}
    heun = None
    if n == m * mu:
        flags += ["mu_eq_n_over_m", "d_eq_1"]
        if not allow_degenerate:
            raise DegenerateSpec("n = m mu puts d = 1: the fourth singularity merges with xi = lam")
    else:
        heun = HeunParams(
            formulas["alpha_beta"],
            formulas["gamma"] + formulas["delta"] + formulas["epsilon"] - 1,
            formulas["gamma"],
            formulas["delta"],
            formulas["epsilon"],
            formulas["d"],
            formulas["q"],
        )
        if heun.epsilon == 0:
            flags.append("epsilon_zero")
    spec = InnerHeunSpec(a, b, c, c1, D, m, n, mu, lam, G, H, heun, tuple(flags), checks)
    if heun is not None:
        # First-principles cross-check: residues of the rescaled equation.
        checks["rescaled_matches_heun"] = spec.rescaled == from_heun(heun)
        if not checks["rescaled_matches_heun"]:
            raise TransformMismatch("rescaled inner equation does not match the closed-form Heun parameters")
    return spec


# -- change of variable -------------------------------------------------------


@dataclass(frozen=True)
class VariableChange:
    kind: str
    lam: Fraction
    c2: Fraction
    mu: Fraction

    @property
    def c1(self) -> Fraction:
        return 1 / self.c2

    @property
    def forward(self) -> RatFunc:
        """xi(x) = lam / (1 - c2 (x + mu))."""
        x = RatFunc.x()
        return self.lam / (1 - self.c2 * (x + self.mu))

    @property
    def inverse(self) -> RatFunc:
        """x(xi) = c1 (xi - lam)/xi - mu."""
        xi = RatFunc.x()
        return self.c1 * (xi - self.lam) / xi - self.mu

    @property
    def eta(self) -> RatFunc:
        """eta(xi) = c1 lam / xi^2."""
        xi = RatFunc.x()
        return self.c1 * self.lam / xi**2

    def xi_at(self, x):
        return self.forward(x)

    def x_at(self, xi):
        return self.inverse(xi)

    def pole(self) -> Fraction:
        """The x where xi(x) is infinite."""
        return self.c1 - self.mu


def solve_eta(D, lam, mu, c1=1) -> VariableChange:
    """Close-form solution of eta f(x(xi)) = H for f(u) = (D/lam)/(u + mu).

    Integrating f(u) du = H dxi gives u + mu = c1 (xi - lam)/xi; ``c1`` is the
    exponential of the integration constant.
    """
    D, lam, mu, c1 = map(to_rat, (D, lam, mu, c1))
    if lam == 0:
        raise DegenerateSpec("lambda = 0")
    if D == 0:
        raise DegenerateSpec("D = 0 makes f identically zero")
    if c1 == 0:
        raise DegenerateSpec("c1 = exp(c') cannot vanish")
    vc = VariableChange("moebius", lam, 1 / c1, mu)
    if vc.inverse.derivative() != vc.eta:
        raise TransformMismatch("eta is not the derivative of x(xi)")
    return vc


def eta_integral_gap(D, lam, mu, vc: VariableChange, x):
    """(D/lam) ln|u + mu| - (D/lam) ln|(xi - lam)/xi| at u = x; constant along the map."""
    D, lam, mu = map(to_mp, (D, lam, mu))
    x = mpmath.mpmathify(x)
    xi = vc.xi_at(x)
    return D / lam * mpmath.log(abs(x + mu)) - D / lam * mpmath.log(abs((xi - lam) / xi))


# -- outer equation -----------------------------------------------------------


@dataclass(frozen=True)
class OuterEquation:
    ode: LinearODE2
    f: RatFunc  # f(x) = (D/lam)/(x + mu), the function entering (y'/y) h = f
    N_recomputed: Poly
    N_printed: Poly
    N_diff: dict  # printed - recomputed, by power of x
    checks: dict

    def to_json(self) -> dict:
        return {
            "ode": self.ode.to_json(),
            "f": self.f.to_json(),
            "N_recomputed": self.N_recomputed.to_json(),
            "N_printed": self.N_printed.to_json(),
            "N_diff": {k: str(v) for k, v in self.N_diff.items()},
            "checks": dict(self.checks),
        }


def printed_N(a, b, c, c1, m, n, mu) -> Poly:
    """N(x) exactly as displayed alongside the outer equation."""
    l = c - 1
    return Poly(
        [
            b * mu / c1 - l / c1 * n * mu - n,
            b / c1 + mu * a / c1 - n * l / c1 - m,
            a / c1 - m * l / c1,
        ]
    )


def build_outer_equation(spec: InnerHeunSpec, vc: VariableChange) -> OuterEquation:
    """y'' - (g/eta)_x y' - (f1/eta)_x y = 0, derived from the definitions.

    g = G + f1'/f1 with f1(xi) = f(x(xi)); every function of xi is pulled back
    through xi(x).  N(x) is read off from (g/eta)_x and compared with the
    printed polynomial.
    """
    if (spec.c1, spec.lam, spec.mu) != (vc.c1, vc.lam, vc.mu):
        raise DegenerateSpec("inner spec and variable change disagree on (c1, lam, mu)")
    if spec.D == 0:
        raise DegenerateSpec("D = 0 makes f identically zero")
    a, b, c, c1, D, m, n, mu, lam = spec.a, spec.b, spec.c, spec.c1, spec.D, spec.m, spec.n, spec.mu, spec.lam
    x = RatFunc.x()
    xi = RatFunc.x()
    f = (D / lam) / (x + mu)
    f1 = f.compose(vc.inverse)
    checks = {"f1_closed_form": f1 == (D / (c1 * lam)) * xi / (xi - lam)}
    g = spec.G + f1.logderiv()
    eta = vc.eta
    g_over_eta = (g / eta).compose(vc.forward)
    f1_over_eta = (f1 / eta).compose(vc.forward)
    w = 1 - vc.c2 * (x + mu)
    checks["f1_over_eta_closed_form"] = f1_over_eta == (D / c1) / (w**2 * (x + mu))
    # g/eta is not a function of x alone unless eta f1 = H holds.
    checks["eta_f1_equals_H"] = eta * f1 == spec.H

    N_rat = g_over_eta * w * (m * x + n) * (x + mu)
    if not N_rat.is_polynomial():
        raise TransformMismatch(f"(g/eta)_x times its denominator is not polynomial: {N_rat}")
    N_rec = Poly(c_ / N_rat.den.lead for c_ in N_rat.num.coeffs)
    N_pr = printed_N(a, b, c, c1, m, n, mu)
    diff = {}
    for k in range(max(N_rec.degree, N_pr.degree) + 1):
        delta = N_pr[k] - N_rec[k]
        if delta:
            diff[f"x^{k}"] = delta
    expected = (c - 1) * m * mu / c1
    checks["N_diff_is_x_coefficient_(c-1)m mu/c1"] = diff == ({"x^1": expected} if expected else {})
    ode = LinearODE2(-g_over_eta, -f1_over_eta)
    return OuterEquation(ode, f, N_rec, N_pr, diff, checks)


# -- three-singularity reduction ---------------------------------------------


@dataclass(frozen=True)
class ReductionSolution:
    R: Fraction
    c1: Fraction
    mu: Fraction
    branch: str  # "closed_form_branch" | "alternate_branch"
    degeneracies: tuple[str, ...]
    a: Fraction
    b: Fraction
    c: Fraction
    m: Fraction
    n: Fraction

    @property
    def c2(self) -> Fraction:
        return 1 / self.c1

    def residuals(self) -> tuple[Fraction, Fraction, Fraction]:
        return reduction_residuals(self.a, self.b, self.c, self.m, self.n, self.R, self.c1, self.mu)

    def to_json(self) -> dict:
        return {
            "R": str(self.R),
            "c1": str(self.c1),
            "mu": str(self.mu),
            "branch": self.branch,
            "degeneracies": list(self.degeneracies),
            "residuals": [str(r) for r in self.residuals()],
        }


def reduction_residuals(a, b, c, m, n, R, c1, mu) -> tuple[Fraction, Fraction, Fraction]:
    """LHS - RHS of the three coefficient equations of N(x) = R (m x + n)^2."""
    a, b, c, m, n, R, c1, mu = map(to_rat, (a, b, c, m, n, R, c1, mu))
    l = c - 1
    e2 = a / c1 - l / c1 * m - R * m * m
    e1 = (b + mu * a) / c1 - l / c1 * (m * mu + n) - m - 2 * m * n * R
    e0 = b * mu / c1 - n * mu * l / c1 - n - n * n * R
    return e2, e1, e0


def closed_form_R(a, b, c, m, n) -> Fraction:
    a, b, c, m, n = map(to_rat, (a, b, c, m, n))
    l = c - 1
    L, K = a - l * m, b - n * l
    return (L * L * n - (a * m - l * m * m) * K) / ((2 * a * m * n - b * m * m - l * m * m * n) * K - L * L * n * n)


def closed_form_c1(a, c, m, R) -> Fraction:
    return (a - (c - 1) * m) / (R * m * m)


def closed_form_mu(a, b, c, m, n, R) -> Fraction:
    l = c - 1
    L = a - l * m
    return (L * (2 * m * n * R + m) + (-b + l * n) * R * m * m) / (L * R * m * m)


def simplified_R(a, b, c, m, n) -> Fraction:
    """L / (m K - n L)."""
    l = c - 1
    L, K = a - l * m, b - n * l
    return L / (m * K - n * L)


def _det3(rows) -> Poly:
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = rows
    return a1 * (b2 * c3 - b3 * c2) - b1 * (a2 * c3 - a3 * c2) + c1 * (a2 * b3 - a3 * b2)


def _system_rows(a, b, c, m, n):
    """Rows [coef of s, coef of R, rhs] as polynomials in mu, with s = 1/c1."""
    l = c - 1
    L, K = a - l * m, b - n * l
    mu = Poly.x()
    return [
        (Poly([L]), Poly([-m * m]), Poly([0])),
        (K + L * mu, Poly([-2 * m * n]), Poly([m])),
        (K * mu, Poly([-n * n]), Poly([n])),
    ]


def _solve_at(a, b, c, m, n, mu: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    """Solve the linear system in (s, R) at fixed mu; None if inconsistent."""
    rows = [tuple(p.eval(mu) for p in row) for row in _system_rows(a, b, c, m, n)]
    # Pick two rows with non-singular 2x2 block.
    for i in range(3):
        for j in range(i + 1, 3):
            (p1, q1, r1), (p2, q2, r2) = rows[i], rows[j]
            det = p1 * q2 - p2 * q1
            if det == 0:
                continue
            s = (r1 * q2 - r2 * q1) / det
            R = (p1 * r2 - p2 * r1) / det
            if all(p * s + q * R == r for p, q, r in rows):
                return s, R
            return None
    # Rank <= 1: consistent only if every row is a multiple of a nonzero one.
    lead = next((row for row in rows if row[0] or row[1]), None)
    if lead is None:
        if any(r for _, _, r in rows):
            return None
        raise IndeterminateSystem("every (1/c1, R) solves the system", constraint="all rows vanish")
    p0, q0, r0 = lead
    for p, q, r in rows:
        if p * q0 - q * p0 or p * r0 - r * p0 or q * r0 - r * q0:
            return None
    raise IndeterminateSystem(
        f"at mu = {mu} the system reduces to one equation {p0}/c1 + {q0} R = {r0}",
        constraint=f"{p0}/c1 + {q0}*R = {r0}",
    )


def reduce_to_hypergeometric(a, b, c, m, n, mu=None) -> list[ReductionSolution]:
    """All (R, c1, mu) with N(x) = R (m x + n)^2, by exact elimination.

    The three equations are linear in (1/c1, R) for fixed mu; consistency
    forces the augmented determinant, a polynomial in mu, to vanish.  When it
    vanishes identically (a n = b m) every mu works and ``IndeterminateSystem``
    is raised unless ``mu`` picks a member of the family.
    """
    a, b, c, m, n = map(to_rat, (a, b, c, m, n))
    if m == 0:
        raise NoSolution("m = 0: the reduction needs a genuine factor (m x + n)")
    rows = _system_rows(a, b, c, m, n)
    det = _det3(rows)
    if det.is_zero():
        if mu is None:
            raise IndeterminateSystem(
                "a n = b m: every mu != n/m gives R = 1/(m mu - n), c1 = L (m mu - n)/m^2",
                constraint="a*n = b*m",
            )
        candidates = [to_rat(mu)]
    else:
        roots, _ = rational_roots(det)
        candidates = [r for r, _ in roots]
    l = c - 1
    L, K = a - l * m, b - n * l
    sols = []
    for cand in candidates:
        solved = _solve_at(a, b, c, m, n, cand)
        if solved is None:
            continue
        s, R = solved
        if s == 0:
            continue
        c1 = 1 / s
        flags = []
        if cand == n / m:
            flags += ["mu_eq_n_over_m", "d_eq_1"]
        if K == 0:
            flags.append("K_zero")
        if L == 0:
            flags.append("L_zero")
        if R == 0:
            flags.append("R_zero")
        branch = "alternate_branch"
        try:
            pR = closed_form_R(a, b, c, m, n)
            if pR == R and closed_form_c1(a, c, m, pR) == c1 and closed_form_mu(a, b, c, m, n, pR) == cand:
                branch = "closed_form_branch"
        except ZeroDivisionError:
            flags.append("closed_form_undefined")
            if cand == n / m and R == simplified_R(a, b, c, m, n):
                branch = "closed_form_branch"
        sol = ReductionSolution(R, c1, cand, branch, tuple(flags), a, b, c, m, n)
        if any(sol.residuals()):
            raise TransformMismatch(f"elimination produced a non-solution {sol}")
        sols.append(sol)
    if not sols:
        raise NoSolution(f"no (R, c1, mu) solves the system for (a,b,c,m,n) = {(a, b, c, m, n)}")
    return sols


def reduced_outer_equation(sol: ReductionSolution, D, m, n) -> LinearODE2:
    """y'' - R (m x + n)/(w (x + mu)) y' - (D/c1)/(w^2 (x + mu)) y = 0, w = 1 - c2 (x + mu)."""
    D, m, n = map(to_rat, (D, m, n))
    x = RatFunc.x()
    w = 1 - sol.c2 * (x + sol.mu)
    P = -sol.R * (m * x + n) / (w * (x + sol.mu))
    Q = -(D / sol.c1) / (w**2 * (x + sol.mu))
    return LinearODE2(P, Q)


def reduction_chain(sol: ReductionSolution, D, lam=1):
    """Inner spec, variable change and outer equation for a reduction solution."""
    spec = build_inner_heun(sol.a, sol.b, sol.c, sol.c1, D, sol.m, sol.n, sol.mu, lam, allow_degenerate=True)
    vc = solve_eta(D, lam, sol.mu, sol.c1)
    outer = build_outer_equation(spec, vc)
    return spec, vc, outer
