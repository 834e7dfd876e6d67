"""Second-order linear ODEs y'' + P y' + Q y = 0 with rational coefficients.

Builds the Gauss hypergeometric and Heun equations from their parameters,
classifies singular points with the Fuchs criterion and recovers parameters
from an equation by template matching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath

from .algebra import (
    Poly,
    RatFunc,
    partial_fraction_simple,
    poly_gcd,
    rat_str,
    rational_roots,
    residual_factor,
    to_mp,
    to_rat,
)


class InvalidParams(ValueError):
    """Parameters violate the Fuchs relation or place d on 0 or 1."""


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
Location = Union[Fraction, _Infinity]


@dataclass(frozen=True)
class LinearODE2:
    """y'' + P(x) y' + Q(x) y = 0."""

    P: RatFunc
    Q: RatFunc

    @classmethod
    def from_riccati_form(cls, F: RatFunc, f: RatFunc) -> "LinearODE2":
        """The equation y'' - F y' - f y = 0."""
        return cls(-F, -f)

    @property
    def F(self) -> RatFunc:
        return -self.P

    @property
    def f(self) -> RatFunc:
        return -self.Q

    def at_infinity(self) -> "LinearODE2":
        """The equation satisfied by y(1/t)."""
        t = RatFunc.x()
        P_inv = self.P.at_infinity()
        Q_inv = self.Q.at_infinity()
        return LinearODE2(2 / t - P_inv / t**2, Q_inv / t**4)

    def shift(self, x0) -> "LinearODE2":
        """The equation in t = x - x0."""
        return LinearODE2(self.P.shift(x0), self.Q.shift(x0))

    def residual(self, y, dy, d2y, x):
        """Pointwise y'' + P y' + Q y."""
        return d2y + self.P(x) * dy + self.Q(x) * y

    def to_json(self) -> dict:
        return {"type": "ode", "P": self.P.to_json(), "Q": self.Q.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "LinearODE2":
        return cls(RatFunc.from_json(data["P"]), RatFunc.from_json(data["Q"]))


@dataclass(frozen=True)
class HGParams:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))

    def to_json(self) -> dict:
        return {"type": "hypergeometric", "a": rat_str(self.a), "b": rat_str(self.b), "c": rat_str(self.c)}

    @classmethod
    def from_json(cls, data: dict) -> "HGParams":
        return cls(data["a"], data["b"], data["c"])


@dataclass(frozen=True)
class SymmetricHGParams:
    """Hypergeometric parameters known only through a + b and ab."""

    a_plus_b: Fraction
    a_times_b: Fraction
    c: Fraction

    def roots(self) -> tuple[mpmath.mpf, mpmath.mpf]:
        s, p = self.a_plus_b, self.a_times_b
        r = mpmath.sqrt(to_mp(s * s - 4 * p))
        return ((to_mp(s) + r) / 2, (to_mp(s) - r) / 2)

    def to_json(self) -> dict:
        return {
            "type": "hypergeometric",
            "a_plus_b": rat_str(self.a_plus_b),
            "a_times_b": rat_str(self.a_times_b),
            "c": rat_str(self.c),
        }


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def quadratic_roots(s: Fraction, p: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    """Rational roots of z^2 - s z + p, larger first, or None if irrational."""
    r = _rational_sqrt(s * s - 4 * p)
    if r is None:
        return None
    return ((s + r) / 2, (s - r) / 2)


@dataclass(frozen=True)
class HeunParams:
    """Heun parameters; alpha and beta enter only through their sum and product."""

    alpha_beta: Fraction
    alpha_plus_beta: Fraction
    gamma: Fraction
    delta: Fraction
    epsilon: Fraction
    d: Fraction
    q: Fraction

    def __post_init__(self):
        for name in ("alpha_beta", "alpha_plus_beta", "gamma", "delta", "epsilon", "d", "q"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))
        if self.d in (0, 1):
            raise InvalidParams(f"d = {self.d} coalesces with a fixed singular point")
        if self.gamma + self.delta + self.epsilon != self.alpha_plus_beta + 1:
            raise InvalidParams(
                "Fuchs relation gamma + delta + epsilon = alpha + beta + 1 fails: "
                f"{self.gamma + self.delta + self.epsilon} != {self.alpha_plus_beta + 1}"
            )

    @classmethod
    def from_alpha_beta(cls, alpha, beta, gamma, delta, epsilon, d, q) -> "HeunParams":
        alpha, beta = to_rat(alpha), to_rat(beta)
        return cls(alpha * beta, alpha + beta, gamma, delta, epsilon, d, q)

    @property
    def alpha_beta_pair(self) -> Optional[tuple[Fraction, Fraction]]:
        """(alpha, beta) when both are rational."""
        return quadratic_roots(self.alpha_plus_beta, self.alpha_beta)

    def to_json(self) -> dict:
        return {
            "type": "heun",
            "alpha_beta": rat_str(self.alpha_beta),
            "alpha_plus_beta": rat_str(self.alpha_plus_beta),
            "gamma": rat_str(self.gamma),
            "delta": rat_str(self.delta),
            "epsilon": rat_str(self.epsilon),
            "d": rat_str(self.d),
            "q": rat_str(self.q),
        }

    @classmethod
    def from_json(cls, data: dict) -> "HeunParams":
        if "alpha_beta" not in data and "alpha" in data:
            return cls.from_alpha_beta(
                data["alpha"], data["beta"], data["gamma"], data["delta"], data["epsilon"], data["d"], data["q"]
            )
        return cls(
            data["alpha_beta"],
            data["alpha_plus_beta"],
            data["gamma"],
            data["delta"],
            data["epsilon"],
            data["d"],
            data["q"],
        )


def from_heun(p: HeunParams) -> LinearODE2:
    x = Poly.x()
    P = (
        RatFunc.simple_pole(p.gamma, 0)
        + RatFunc.simple_pole(p.delta, 1)
        + RatFunc.simple_pole(p.epsilon, p.d)
    )
    Q = RatFunc(p.alpha_beta * x - p.q, Poly.from_roots([0, 1, p.d]))
    return LinearODE2(P, Q)


def from_hypergeometric(p: HGParams) -> LinearODE2:
    P = RatFunc.simple_pole(p.c, 0) + RatFunc.simple_pole(p.a + p.b - p.c + 1, 1)
    Q = RatFunc(Poly([p.a * p.b]), Poly.from_roots([0, 1]))
    return LinearODE2(P, Q)


@dataclass(frozen=True)
class Exponents:
    """Roots of rho^2 + (p0 - 1) rho + q0 = 0."""

    p0: Fraction
    q0: Fraction
    exact: Optional[tuple[Fraction, Fraction]]

    @property
    def values(self) -> tuple:
        if self.exact is not None:
            return self.exact
        b = to_mp(self.p0 - 1)
        disc = b * b - 4 * to_mp(self.q0)
        r = mpmath.sqrt(disc)  # complex when disc < 0
        r1, r2 = (-b + r) / 2, (-b - r) / 2
        return (r1, r2) if mpmath.re(r1) >= mpmath.re(r2) else (r2, r1)

    def to_json(self):
        if self.exact is not None:
            return [rat_str(v) for v in self.exact]
        return [mpmath.nstr(v, 17) for v in self.values]


def indicial_exponents(p0: Fraction, q0: Fraction) -> Exponents:
    # rho^2 - s rho + q0 with s = 1 - p0
    roots = quadratic_roots(1 - p0, q0)
    return Exponents(p0, q0, roots)


@dataclass(frozen=True)
class SingularPoint:
    location: Location
    kind: str  # "regular" | "irregular"
    pole_order_P: int
    pole_order_Q: int
    indicial_exponents: Optional[Exponents] = None

    @property
    def is_infinite(self) -> bool:
        return self.location is INFINITY

    def to_json(self) -> dict:
        out = {
            "location": "inf" if self.is_infinite else rat_str(self.location),
            "kind": self.kind,
            "pole_order_P": self.pole_order_P,
            "pole_order_Q": self.pole_order_Q,
        }
        if self.indicial_exponents is not None:
            out["indicial_exponents"] = self.indicial_exponents.to_json()
        return out


@dataclass(frozen=True)
class Classification:
    points: tuple[SingularPoint, ...]
    unresolved_count: int = 0
    unresolved_factor: Optional[Poly] = None

    @property
    def regular(self) -> list[SingularPoint]:
        return [s for s in self.points if s.kind == "regular"]

    @property
    def irregular(self) -> list[SingularPoint]:
        return [s for s in self.points if s.kind == "irregular"]

    def locations(self, kind: Optional[str] = None) -> list[Location]:
        return [s.location for s in self.points if kind is None or s.kind == kind]

    def is_fuchsian(self) -> bool:
        return not self.irregular and not self.unresolved_count

    def to_json(self) -> dict:
        out = {"points": [s.to_json() for s in self.points], "fuchsian": self.is_fuchsian()}
        if self.unresolved_count:
            out["unresolved"] = {"count": self.unresolved_count, "factor": self.unresolved_factor.to_json()}
        return out


def _classify_finite(e: LinearODE2, x0: Fraction) -> Optional[SingularPoint]:
    kp, kq = e.P.pole_order(x0), e.Q.pole_order(x0)
    if kp == 0 and kq == 0:
        return None
    if kp <= 1 and kq <= 2:
        p0 = e.P.leading_coefficient_at(x0, 1)
        q0 = e.Q.leading_coefficient_at(x0, 2)
        return SingularPoint(x0, "regular", kp, kq, indicial_exponents(p0, q0))
    return SingularPoint(x0, "irregular", kp, kq)


def classify_point(e: LinearODE2, x0) -> Optional[SingularPoint]:
    """Classify one point; ``None`` if it is ordinary."""
    if x0 is INFINITY:
        sp = _classify_finite(e.at_infinity(), Fraction(0))
        if sp is None:
            return None
        return SingularPoint(INFINITY, sp.kind, sp.pole_order_P, sp.pole_order_Q, sp.indicial_exponents)
    return _classify_finite(e, to_rat(x0))


def classify_full(e: LinearODE2) -> Classification:
    """Classify every finite pole of P or Q and the point at infinity."""
    den = e.P.den * e.Q.den
    roots, _ = rational_roots(den)
    points = []
    for r, _m in roots:
        sp = _classify_finite(e, r)
        if sp is not None:
            points.append(sp)
    inf = classify_point(e, INFINITY)
    if inf is not None:
        points.append(inf)
    # Distinct irrational poles, counted on the squarefree residual factor.
    rest = residual_factor(den)
    rest_sqfree = rest
    if rest.degree > 0:
        g = poly_gcd(rest, rest.derivative())
        rest_sqfree = (rest // g).monic()
    count = max(rest_sqfree.degree, 0)
    return Classification(tuple(points), count, rest_sqfree if count else None)


def classify(e: LinearODE2) -> list[SingularPoint]:
    return list(classify_full(e).points)


def singular_locations(e: LinearODE2) -> set:
    return set(classify_full(e).locations())


def match_heun(e: LinearODE2) -> Optional[HeunParams]:
    """Recover HeunParams if ``e`` is exactly a Heun equation, else None."""
    pf = partial_fraction_simple(e.P)
    if pf is None:
        return None
    poly_part, residues = pf
    if not poly_part.is_zero():
        return None
    q_roots, q_rest = rational_roots(e.Q.den) if not e.Q.is_zero() else ([], 0)
    if q_rest:
        return None
    poles = set(residues) | {r for r, _ in q_roots}
    extra = poles - {Fraction(0), Fraction(1)}
    if len(extra) != 1:
        return None
    (d,) = extra
    gamma = residues.get(Fraction(0), Fraction(0))
    delta = residues.get(Fraction(1), Fraction(0))
    epsilon = residues.get(d, Fraction(0))
    numer = e.Q * RatFunc(Poly.from_roots([0, 1, d]))
    if not numer.is_polynomial() or numer.num.degree > 1:
        return None
    alpha_beta = numer.num[1]
    q = -numer.num[0]
    try:
        params = HeunParams(alpha_beta, gamma + delta + epsilon - 1, gamma, delta, epsilon, d, q)
    except InvalidParams:
        return None
    if from_heun(params) != e:
        return None
    return params


def match_hypergeometric(e: LinearODE2) -> Optional[Union[HGParams, SymmetricHGParams]]:
    """Recover (a, b, c) if ``e`` is exactly a Gauss hypergeometric equation."""
    pf = partial_fraction_simple(e.P)
    if pf is None:
        return None
    poly_part, residues = pf
    if not poly_part.is_zero() or set(residues) - {Fraction(0), Fraction(1)}:
        return None
    numer = e.Q * RatFunc(Poly.from_roots([0, 1]))
    if not numer.is_constant():
        return None
    c = residues.get(Fraction(0), Fraction(0))
    e1 = residues.get(Fraction(1), Fraction(0))
    ab = numer.constant_value()
    s = e1 + c - 1
    roots = quadratic_roots(s, ab)
    if roots is None:
        return SymmetricHGParams(s, ab, c)
    params = HGParams(roots[0], roots[1], c)
    if from_hypergeometric(params) != e:
        return None
    return params
