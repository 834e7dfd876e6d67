"""Frobenius series and pointwise checks of the nonlinear identities.

Every identity is checked through the Riccati equation its logarithmic
derivative satisfies.  y, y' and y'' all come from the truncated series
(never y'' from the ODE itself, which would make the check vacuous), so a
small residual certifies both the series and the transformed coefficients.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import mpmath
import numpy as np

from .algebra import PoleEvaluation, Poly, RatFunc, poly_gcd, rational_roots, to_mp, to_rat
from .ode import HGParams, LinearODE2, from_hypergeometric, indicial_exponents
from .xform import CompanionPair, InnerHeunSpec, OuterEquation, VariableChange

DEFAULT_TOL = 1e-8
DEFAULT_TAIL_TARGET = 1e-12
NEAR_CRITICAL = 1e-8
MIN_POINTS = 8
MAX_ORDER = 512


def precision_bits() -> int:
    """Working precision in bits; FXF_PRECISION_BITS overrides the default 128."""
    bits = int(os.environ.get("FXF_PRECISION_BITS", "128"))
    if bits < 64:
        raise ValueError("FXF_PRECISION_BITS must be at least 64")
    return bits


class LogarithmicCase(ValueError):
    """The requested Frobenius branch needs a logarithmic term."""


class IrregularPoint(ValueError):
    """The expansion point is an irregular singular point."""


class AllPointsSkipped(RuntimeError):
    """No sample point survived the skip rules."""


class DegenerateC(ValueError):
    """c or c + 1 is a non-positive integer."""


class DomainMismatch(ValueError):
    """A sample point maps onto a singularity of the inner equation."""


# -- Frobenius series ---------------------------------------------------------


def _root_moduli(p: Poly) -> list[float]:
    if p.degree < 1:
        return []
    coeffs = [float(c) for c in reversed(p.coeffs)]
    return [float(abs(r)) for r in np.roots(coeffs)]


def _circle_bound(f: RatFunc, R, moduli: Sequence[float]):
    """Upper bound for |f| on the circle |t| = R from coefficient and root moduli."""
    num = sum(abs(to_mp(c)) * mpmath.mpf(R) ** k for k, c in enumerate(f.num.coeffs))
    if f.den.degree < 1:
        return num
    den = abs(to_mp(f.den.lead))
    for r in moduli:
        # float roots: shave a relative margin before subtracting R
        den *= mpmath.mpf(r) * (1 - 1e-9) - R
    if den <= 0:
        return mpmath.inf
    return num / den


@dataclass
class _Local:
    """The equation near x0 written as t^2 S y'' + t U y' + V y = 0."""

    S: Poly
    U: Poly
    V: Poly
    p: RatFunc  # t P(x0 + t)
    q: RatFunc  # t^2 Q(x0 + t)
    rho0: float  # distance to the nearest other singularity


def _localize(e: LinearODE2, x0: Fraction) -> _Local:
    shifted = e.shift(x0)
    t = RatFunc.x()
    p = shifted.P * t
    q = shifted.Q * t * t
    if p.den[0] == 0 or q.den[0] == 0:
        raise IrregularPoint(f"x0 = {x0} is an irregular singular point")
    g = poly_gcd(p.den, q.den)
    S = (p.den * q.den) // g
    U = p.num * (S // p.den)
    V = q.num * (S // q.den)
    moduli = _root_moduli(p.den) + _root_moduli(q.den)
    rho0 = min(moduli) if moduli else math.inf
    return _Local(S, U, V, p, q, rho0)


@dataclass
class SeriesSolution:
    """y = (x - x0)^rho * sum_n c_n (x - x0)^n, truncated after ``order``."""

    expansion_point: Fraction
    exponent: object
    other_exponent: object
    coefficients: list
    order: int
    radius: float
    tail_bound: float
    tail_bounds: tuple  # bounds on sum_{n>N} n^k |c_n| r^n for k = 0, 1, 2
    prec: int
    exact: bool
    converged: bool = True
    rho0: float = math.inf
    _local: Optional[_Local] = field(default=None, repr=False)

    def _t(self, x):
        return mpmath.mpmathify(x) - to_mp(self.expansion_point)

    def derivs(self, x) -> tuple:
        """(y, y', y'') at x."""
        with mpmath.workprec(self.prec):
            t = self._t(x)
            cs = self.coefficients if not self.exact else [to_mp(c) for c in self.coefficients]
            s0 = s1 = s2 = mpmath.mpf(0)
            for n in range(len(cs) - 1, -1, -1):
                s2 = s2 * t + 2 * s1
                s1 = s1 * t + s0
                s0 = s0 * t + cs[n]
            rho = self.exponent if not isinstance(self.exponent, Fraction) else to_mp(self.exponent)
            if rho == 0:
                return s0, s1, s2
            tr = mpmath.power(t, rho)
            y = tr * s0
            dy = tr * (s1 + rho * s0 / t)
            d2y = tr * (s2 + 2 * rho * s1 / t + rho * (rho - 1) * s0 / (t * t))
            return y, dy, d2y

    def __call__(self, x):
        return self.derivs(x)[0]

    def error_bounds(self, x) -> tuple:
        """Truncation-error bounds for (y, y', y'') at x, |x - x0| <= radius."""
        with mpmath.workprec(self.prec):
            t = abs(self._t(x))
            r = mpmath.mpf(self.radius)
            if t > r * (1 + mpmath.mpf(10) ** -12):
                raise ValueError(f"|x - x0| = {t} exceeds the certified radius {r}")
            rho = self.exponent if not isinstance(self.exponent, Fraction) else to_mp(self.exponent)
            arho = abs(rho)
            re = mpmath.re(rho)
            # sum_{n>N} n^k |c_n| |t|^n <= S_k (|t|/r)^(N+1)
            scale = (t / r) ** (self.order + 1) if t else mpmath.mpf(0)
            S0, S1, S2 = (s * scale for s in self.tail_bounds)
            tp = t**re if t else mpmath.mpf(1 if re == 0 else 0)
            e0 = tp * S0
            e1 = tp * (S1 + arho * S0) / t if t else mpmath.inf
            e2 = tp * (S2 + (2 * arho + 1) * S1 + arho * (arho + 1) * S0) / (t * t) if t else mpmath.inf
            return e0, e1, e2

    def tail_bound_at(self, radius) -> float:
        """Recompute the value-series tail bound for another radius at the same order."""
        bounds, _ = _tail_bounds(self._local, self.exponent, self.other_exponent, self.coefficients, radius, self.prec)
        return bounds[0]

    def to_json(self) -> dict:
        return {
            "expansion_point": str(self.expansion_point),
            "exponent": str(self.exponent) if isinstance(self.exponent, Fraction) else mpmath.nstr(self.exponent, 17),
            "order": self.order,
            "radius": float(self.radius),
            "tail_bound": float(self.tail_bound),
            "converged": self.converged,
        }


def _choose_exponent(exps, choice) -> tuple:
    r1, r2 = exps.values  # larger real part first
    if choice == "larger":
        return r1, r2
    if choice == "smaller":
        return r2, r1
    val = to_rat(choice)
    if exps.exact is not None and val in exps.exact:
        other = exps.exact[1] if val == exps.exact[0] else exps.exact[0]
        return val, other
    raise ValueError(f"{choice} is not an indicial exponent (roots {exps.to_json()})")


def _coefficients(loc: _Local, rho, other, order: int, exact: bool, start: Optional[list] = None) -> list:
    """c_0..c_order with c_0 = 1; the free coefficient at a resonance is set to 0."""
    one = Fraction(1) if exact else mpmath.mpf(1)
    conv = (lambda v: v) if exact else to_mp
    Sc = [conv(c) for c in loc.S.coeffs]
    Uc = [conv(c) for c in loc.U.coeffs]
    Vc = [conv(c) for c in loc.V.coeffs]
    deg = max(len(Sc), len(Uc), len(Vc))
    Sc += [0] * (deg - len(Sc))
    Uc += [0] * (deg - len(Uc))
    Vc += [0] * (deg - len(Vc))
    rho_c = rho if exact else (to_mp(rho) if isinstance(rho, Fraction) else rho)
    resonance = None
    if isinstance(rho, Fraction) and isinstance(other, Fraction):
        diff = other - rho
        if diff.denominator == 1 and diff > 0:
            resonance = int(diff)
    cs = list(start) if start else [one]
    for n in range(len(cs), order + 1):
        acc = 0
        for k in range(1, min(n, deg - 1) + 1):
            s = n - k + rho_c
            acc += cs[n - k] * (Sc[k] * s * (s - 1) + Uc[k] * s + Vc[k])
        if n == resonance:
            if exact:
                if acc != 0:
                    raise LogarithmicCase(f"exponent {rho} needs a logarithmic term at n = {n}")
            cs.append(0 * one)
            continue
        lead = _indicial_n(Sc, Uc, Vc, n + rho_c)
        cs.append(-acc / lead)
    return cs


def _indicial_n(Sc, Uc, Vc, s):
    return Sc[0] * s * (s - 1) + Uc[0] * s + Vc[0]


def _tail_bounds(loc: _Local, rho, other, coeffs, radius, prec) -> tuple:
    """Majorant bounds on sum_{n>N} n^k |c_n| r^n, k = 0, 1, 2.

    With |p_k|, |q_k| <= A R^-k, B R^-k (Cauchy on |t| = R), the recurrence
    gives |c_n| R^n <= T_n / L(n) where L(n) = n (n - |rho - rho'|) and
    T_{n+1} = T_n + |c_n| R^n (A (n + |rho|) + B).  T_n grows polynomially, so
    the r/R geometric factor wins; the tail beyond the last explicit term is
    closed with the (eventually decreasing) ratio bound.
    """
    with mpmath.workprec(max(prec, 64)):
        r = mpmath.mpf(radius)
        rho0 = loc.rho0
        if r <= 0:
            return (mpmath.mpf(0),) * 3, True
        R = (r + mpmath.mpf(rho0)) / 2 if math.isfinite(rho0) else 2 * r
        if r >= R:
            return (mpmath.inf,) * 3, False
        A = _circle_bound(loc.p, R, _root_moduli(loc.p.den))
        B = _circle_bound(loc.q, R, _root_moduli(loc.q.den))
        if not (mpmath.isfinite(A) and mpmath.isfinite(B)):
            return (mpmath.inf,) * 3, False
        rho_m = to_mp(rho) if isinstance(rho, Fraction) else rho
        oth_m = to_mp(other) if isinstance(other, Fraction) else other
        arho = abs(rho_m)
        delta = abs(rho_m - oth_m)
        N = len(coeffs) - 1
        if N <= delta:
            return (mpmath.inf,) * 3, False
        T = mpmath.mpf(0)
        for j, c in enumerate(coeffs):
            T += abs(to_mp(c) if isinstance(c, Fraction) else c) * R**j * (A * (j + arho) + B)
        ratio = r / R
        S = [mpmath.mpf(0)] * 3
        n = N + 1
        geo = ratio**n
        while True:
            Ln = n * (n - delta)
            a_hat = T / Ln
            term = a_hat * geo
            for k in range(3):
                S[k] += term * n**k
            grow = A * (n + arho) + B
            theta = (1 + grow / Ln) * ratio * ((n + 1) / mpmath.mpf(n)) ** 2
            if n > 2 * delta + 2 and theta < 1:
                rest = term * n**2 * theta / (1 - theta)
                if rest <= mpmath.mpf(10) ** -6 * S[2] or rest < mpmath.mpf(10) ** -300:
                    for k in range(3):
                        S[k] += rest
                    break
            T += a_hat * grow
            geo *= ratio
            n += 1
            if n > N + 200000:
                return (mpmath.inf,) * 3, False
        return tuple(S), True


def frobenius(
    e: LinearODE2,
    x0=0,
    exponent_choice="larger",
    order: Optional[int] = None,
    *,
    radius=None,
    tail_target: float = DEFAULT_TAIL_TARGET,
    max_order: int = MAX_ORDER,
    exact: bool = False,
    prec: Optional[int] = None,
) -> SeriesSolution:
    """Frobenius solution at a regular singular (or ordinary) point ``x0``.

    ``exponent_choice`` is "larger", "smaller" or an explicit exponent.  With
    ``order=None`` the order is doubled from 32 until the tail bound on the
    disk of ``radius`` (default half the distance to the nearest other
    singularity) drops below ``tail_target``, up to ``max_order``.
    """
    x0 = to_rat(x0)
    prec = prec or precision_bits()
    loc = _localize(e, x0)
    p0, q0 = loc.p.eval(Fraction(0)), loc.q.eval(Fraction(0))
    exps = indicial_exponents(p0, q0)
    with mpmath.workprec(prec):
        rho, other = _choose_exponent(exps, exponent_choice)
        if exact and not isinstance(rho, Fraction):
            raise ValueError("exact mode needs a rational exponent")
        # Decide the resonance exactly whenever it can occur.
        if isinstance(rho, Fraction) and isinstance(other, Fraction):
            diff = other - rho
            if diff.denominator == 1 and diff > 0:
                _coefficients(loc, rho, other, int(diff), exact=True)
        if radius is None:
            radius = 0.5 * loc.rho0 if math.isfinite(loc.rho0) else 1.0
        radius = float(radius)
        if order is not None:
            if order < 1:
                raise ValueError("order must be positive")
            cs = _coefficients(loc, rho, other, order, exact)
            bounds, ok = _tail_bounds(loc, rho, other, cs, radius, prec)
            return SeriesSolution(x0, rho, other, cs, order, radius, bounds[0], bounds, prec, exact, ok, loc.rho0, loc)
        N = 32
        cs = _coefficients(loc, rho, other, N, exact)
        while True:
            bounds, ok = _tail_bounds(loc, rho, other, cs, radius, prec)
            converged = ok and bounds[0] < tail_target
            if converged or N >= max_order:
                return SeriesSolution(
                    x0, rho, other, cs, N, radius, bounds[0], bounds, prec, exact, converged, loc.rho0, loc
                )
            N = min(2 * N, max_order)
            cs = _coefficients(loc, rho, other, N, exact, start=cs)


def recurrence_remainder(sol: SeriesSolution) -> Poly:
    """t^-rho * t^2 S(t) * L[y_N] as an exact polynomial in t (exact mode only).

    Its coefficients of t^0..t^N vanish when the recurrence is satisfied.
    """
    if not sol.exact:
        raise ValueError("exact mode series required")
    loc = sol._local
    rho = sol.exponent
    out = Poly()
    t = Poly.x()
    for n, c in enumerate(sol.coefficients):
        s = n + rho
        out = out + c * (loc.S * (s * (s - 1)) + loc.U * s + loc.V) * t**n
    return out


def distance_to_singularity(e: LinearODE2, x0) -> float:
    """Distance from x0 to the nearest finite singular point other than x0."""
    x0 = to_rat(x0)
    shifted = e.shift(x0)
    moduli = []
    for f in (shifted.P, shifted.Q):
        den = f.den
        while den.degree >= 1 and den[0] == 0:
            den = Poly(den.coeffs[1:])
        moduli += _root_moduli(den)
    return min(moduli) if moduli else math.inf


def chebyshev_points(lo, hi, count: int = 12) -> list:
    lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    pts = [mid + half * mpmath.cos((2 * k + 1) * mpmath.pi / (2 * count)) for k in range(count)]
    return sorted(pts)


def default_points(e: LinearODE2, x0=0, count: int = 12, lo: float = 0.1, hi: float = 0.5) -> list:
    """Chebyshev points on [x0 + lo*rho, x0 + hi*rho], rho the distance to the nearest singularity."""
    rho = distance_to_singularity(e, x0)
    if not math.isfinite(rho):
        rho = 1.0
    base = to_mp(to_rat(x0))
    return chebyshev_points(base + lo * rho, base + hi * rho, count)


# -- reports -------------------------------------------------------------------


@dataclass
class VerificationReport:
    identity: str
    sample_points: list
    residuals: list
    max_residual: float
    tolerance: float
    verdict: str
    skipped_points: list  # (x, reason)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "tolerance": float(self.tolerance),
            "max_residual": float(self.max_residual),
            "points": [float(mpmath.re(x)) for x in self.sample_points],
            "residuals": [float(r) for r in self.residuals],
            "skipped": [{"x": float(mpmath.re(x)), "reason": why} for x, why in self.skipped_points],
            "verdict": self.verdict,
            "details": self.details,
        }


def _report(identity, evaluated, skipped, tol, details, min_points=MIN_POINTS) -> VerificationReport:
    if not evaluated:
        raise AllPointsSkipped(f"{identity}: every sample point was skipped: {skipped}")
    xs = [x for x, _ in evaluated]
    res = [r for _, r in evaluated]
    mx = max(res)
    ok = mx <= tol and len(evaluated) >= min_points
    return VerificationReport(identity, xs, res, mx, tol, "pass" if ok else "fail", skipped, details)


Solution = Callable[[object], tuple]


EXACT_MAX_ORDER = 64


def _series_for(e, x0, branch, points, order, tail_target, prec, exact=False) -> SeriesSolution:
    x0m = to_mp(to_rat(x0))
    radius = max(abs(mpmath.mpmathify(p) - x0m) for p in points) if points else None
    return frobenius(
        e,
        x0,
        branch,
        order,
        radius=radius,
        tail_target=tail_target,
        prec=prec,
        exact=exact,
        max_order=EXACT_MAX_ORDER if exact else MAX_ORDER,
    )


def _riccati_points(
    identity: str,
    points,
    solution: Solution,
    residual_at: Callable,
    tol: float,
    details: dict,
    prec: int,
    min_points: int = MIN_POINTS,
) -> VerificationReport:
    evaluated, skipped = [], []
    with mpmath.workprec(prec):
        for x in points:
            x = mpmath.mpmathify(x)
            try:
                y, dy, d2y = solution(x)
            except (PoleEvaluation, ZeroDivisionError):
                skipped.append((x, "Singularity"))
                continue
            if abs(dy) < NEAR_CRITICAL * abs(y):
                skipped.append((x, "NearCriticalPoint"))
                continue
            try:
                r = residual_at(x, y, dy, d2y)
            except (PoleEvaluation, ZeroDivisionError):
                skipped.append((x, "Singularity"))
                continue
            evaluated.append((x, abs(r)))
    return _report(identity, evaluated, skipped, tol, details, min_points)


def _f_ratio_and_derivative(f: RatFunc, fp: RatFunc, x, y, dy, d2y):
    """h = f y/y' and h' = f' y/y' + f - f y y''/y'^2."""
    fx, fpx = f(x), fp(x)
    h = fx * y / dy
    hp = fpx * y / dy + fx - fx * y * d2y / (dy * dy)
    return h, hp


def verify_product_identity(
    pair: CompanionPair,
    points=None,
    tol: float = DEFAULT_TOL,
    *,
    x0=0,
    branch="larger",
    solution: Optional[Solution] = None,
    order: Optional[int] = None,
    tail_target: float = DEFAULT_TAIL_TARGET,
    prec: Optional[int] = None,
    min_points: int = MIN_POINTS,
    exact: bool = False,
) -> VerificationReport:
    """(y'/y)(u'/u) = f through the companion Riccati equation.

    v = f y / y' must satisfy v' + v^2 + P_c v + Q_c = 0 where P_c, Q_c are
    the companion coefficients.  ``solution`` (x -> (y, y', y'')) replaces
    the Frobenius series when a closed form is known.
    """
    prec = prec or precision_bits()
    with mpmath.workprec(prec):
        if points is None:
            points = default_points(pair.source, x0)
        details: dict = {}
        if solution is None:
            sol = _series_for(pair.source, x0, branch, points, order, tail_target, prec, exact)
            solution = sol.derivs
            details["series"] = sol.to_json()
        f, fp = pair.f, pair.f.derivative()
        Pc, Qc = pair.companion.P, pair.companion.Q

        def residual(x, y, dy, d2y):
            v, vp = _f_ratio_and_derivative(f, fp, x, y, dy, d2y)
            return vp + v * v + Pc(x) * v + Qc(x)

        return _riccati_points("product_eq3", points, solution, residual, tol, details, prec, min_points)


def verify_quotient_identity(
    F: RatFunc,
    f: RatFunc,
    alpha,
    points=None,
    tol: float = DEFAULT_TOL,
    *,
    x0=0,
    branch="larger",
    solution: Optional[Solution] = None,
    order: Optional[int] = None,
    tail_target: float = DEFAULT_TAIL_TARGET,
    prec: Optional[int] = None,
    min_points: int = MIN_POINTS,
    exact: bool = False,
) -> VerificationReport:
    """(y'/y) h = f for y'' - F y' + alpha y = 0.

    h = f y / y' must satisfy h' - (alpha/f) h^2 + (F - f'/f) h - f = 0.
    ``alpha`` may be a constant or a rational function.
    """
    prec = prec or precision_bits()
    alpha_f = alpha if isinstance(alpha, RatFunc) else RatFunc.const(alpha)
    if f.is_zero():
        raise ValueError("f must not vanish identically")
    e = LinearODE2(-F, alpha_f)
    with mpmath.workprec(prec):
        if points is None:
            points = default_points(e, x0)
        details: dict = {}
        if solution is None:
            sol = _series_for(e, x0, branch, points, order, tail_target, prec, exact)
            solution = sol.derivs
            details["series"] = sol.to_json()
        fp = f.derivative()
        coef = F - f.logderiv()
        a_over_f = alpha_f / f

        def residual(x, y, dy, d2y):
            h, hp = _f_ratio_and_derivative(f, fp, x, y, dy, d2y)
            return hp - a_over_f(x) * h * h + coef(x) * h - f(x)

        return _riccati_points("quotient_eq6", points, solution, residual, tol, details, prec, min_points)


def verify_riccati(
    e: LinearODE2,
    points=None,
    tol: float = DEFAULT_TOL,
    *,
    x0=0,
    branch="larger",
    order: Optional[int] = None,
    tail_target: float = DEFAULT_TAIL_TARGET,
    prec: Optional[int] = None,
    min_points: int = MIN_POINTS,
    exact: bool = False,
) -> VerificationReport:
    """h = y'/y satisfies h' + h^2 + P h + Q = 0."""
    prec = prec or precision_bits()
    with mpmath.workprec(prec):
        if points is None:
            points = default_points(e, x0)
        sol = _series_for(e, x0, branch, points, order, tail_target, prec, exact)

        def residual(x, y, dy, d2y):
            h = dy / y
            hp = d2y / y - h * h
            return hp + h * h + e.P(x) * h + e.Q(x)

        return _riccati_points(
            "riccati_residual", points, sol.derivs, residual, tol, {"series": sol.to_json()}, prec, min_points
        )


def verify_chain_identity(
    spec: InnerHeunSpec,
    vc: VariableChange,
    outer: Union[OuterEquation, LinearODE2],
    points=None,
    tol: float = DEFAULT_TOL,
    *,
    x0=None,
    branch="larger",
    order: Optional[int] = None,
    tail_target: float = DEFAULT_TAIL_TARGET,
    prec: Optional[int] = None,
    min_points: int = MIN_POINTS,
    exact: bool = False,
) -> VerificationReport:
    """(y'/y) h = f across the change of variable.

    y solves the outer equation in x, h = f y / y' with f = (D/lam)/(x + mu),
    and h1(xi) = h(x(xi)) must satisfy dh1/dxi + h1^2 + G h1 - H = 0 at
    xi = xi(x).  The default expansion point is the regular singular point
    x = -mu of the outer equation.
    """
    prec = prec or precision_bits()
    ode = outer.ode if isinstance(outer, OuterEquation) else outer
    x = RatFunc.x()
    f = (spec.D / spec.lam) / (x + spec.mu)
    if x0 is None:
        x0 = -spec.mu
    with mpmath.workprec(prec):
        if points is None:
            points = default_points(ode, x0)
        xi_pole = vc.pole()
        G_poles = {r for r in _rational_poles(spec.G)} | {r for r in _rational_poles(spec.H)}
        for p in points:
            pr = to_rat(mpmath.mpmathify(p))
            if pr == xi_pole or vc.xi_at(pr) in G_poles:
                raise DomainMismatch(f"x = {p} maps onto a singularity of G or H")
        sol = _series_for(ode, x0, branch, points, order, tail_target, prec, exact)
        fp = f.derivative()
        G, H, eta = spec.G, spec.H, vc.eta

        def residual(xv, y, dy, d2y):
            h, hp = _f_ratio_and_derivative(f, fp, xv, y, dy, d2y)
            xi = vc.xi_at(xv)
            dh1 = hp * eta(xi)
            return dh1 + h * h + G(xi) * h - H(xi)

        details = {"series": sol.to_json(), "flags": list(spec.flags)}
        return _riccati_points("chain_eq22", points, sol.derivs, residual, tol, details, prec, min_points)


def _rational_poles(f: RatFunc) -> list[Fraction]:
    roots, _ = rational_roots(f.den)
    return [r for r, _ in roots]


def gauss_series(a, b, c, order: Optional[int] = None, *, radius=None, prec=None, exact=False) -> SeriesSolution:
    """Analytic branch F(a, b; c; x) at 0 from the hypergeometric equation."""
    p = HGParams(a, b, c)
    return frobenius(
        from_hypergeometric(p),
        0,
        Fraction(0),
        order,
        radius=radius,
        prec=prec,
        exact=exact,
        max_order=EXACT_MAX_ORDER if exact else MAX_ORDER,
    )


def _nonpositive_integer(v: Fraction) -> bool:
    return v.denominator == 1 and v <= 0


def hg_derivative_check(
    a,
    b,
    c,
    points=None,
    tol: float = 1e-10,
    *,
    prec: Optional[int] = None,
    min_points: int = MIN_POINTS,
    exact: bool = False,
) -> VerificationReport:
    """|F'(a,b;c;x) - (ab/c) F(a+1,b+1;c+1;x)| from two independent series."""
    a, b, c = map(to_rat, (a, b, c))
    if _nonpositive_integer(c) or _nonpositive_integer(c + 1):
        raise DegenerateC(f"c = {c}: the analytic branch is undefined")
    prec = prec or precision_bits()
    with mpmath.workprec(prec):
        if points is None:
            points = chebyshev_points(0.05, 0.5, 12)
        radius = max(abs(mpmath.mpf(p)) for p in points)
        lhs = gauss_series(a, b, c, radius=radius, prec=prec, exact=exact)
        rhs = gauss_series(a + 1, b + 1, c + 1, radius=radius, prec=prec, exact=exact)
        k = to_mp(a * b / c)
        evaluated = []
        for x in points:
            x = mpmath.mpmathify(x)
            evaluated.append((x, abs(lhs.derivs(x)[1] - k * rhs(x))))
        details = {"lhs_series": lhs.to_json(), "rhs_series": rhs.to_json()}
        return _report("derivative_relation", evaluated, [], tol, details, min_points)
