"""Exact univariate polynomials and rational functions over Q.

Scalars are :class:`fractions.Fraction`.  ``Poly`` stores coefficients lowest
degree first; ``RatFunc`` is always kept fully reduced with a monic
denominator, so two equal rational functions compare equal structurally.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import mpmath

Rat = Fraction
Scalar = Union[int, Fraction]


class DivisionByZero(ZeroDivisionError):
    """Division by the zero polynomial or zero rational function."""


class PoleEvaluation(ZeroDivisionError):
    """A rational function was evaluated at a zero of its denominator."""


def to_rat(value) -> Fraction:
    """Coerce ints, Fractions, "p/q" strings and mpf values to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, mpmath.mpf):
        if not mpmath.isfinite(value):
            raise ValueError(f"cannot convert {value} to an exact rational")
        sign, man, exp, _ = value._mpf_
        man = -int(man) if sign else int(man)
        exp = int(exp)
        return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def to_mp(value):
    """Fraction (or int) to mpf at the current working precision."""
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpmathify(value)


def rat_str(value: Fraction) -> str:
    return str(Fraction(value))


class Poly:
    """Immutable dense polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-to_rat(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return _poly_str(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if self.degree < dq:
            return Poly(), self
        quot = [Fraction(0)] * (self.degree - dq + 1)
        inv_lead = 1 / other.lead
        for k in range(self.degree - dq, -1, -1):
            c = rem[k + dq] * inv_lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return Poly(c * inv for c in self.coeffs)

    def derivative(self) -> "Poly":
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Horner evaluation in whatever arithmetic ``x`` carries."""
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else _lift(c, x))
        return acc

    def compose(self, other: "Poly") -> "Poly":
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * other + c
        return out

    def shift(self, x0) -> "Poly":
        """Return p(t + x0) as a polynomial in t."""
        return self.compose(Poly([to_rat(x0), 1]))

    def content_integer(self) -> list[int]:
        """Primitive integer polynomial with the same roots."""
        if self.is_zero():
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return ints

    def valuation(self) -> int:
        """Multiplicity of the root x = 0."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        raise ValueError("valuation of the zero polynomial")

    def multiplicity(self, root) -> int:
        """Multiplicity of ``root`` as a zero of this polynomial."""
        if self.is_zero():
            raise ValueError("multiplicity in the zero polynomial")
        lin = Poly([-to_rat(root), 1])
        p, k = self, 0
        while True:
            q, r = p.divmod(lin)
            if r:
                return k
            p, k = q, k + 1

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "Poly":
        return cls(to_rat(c) for c in data)


def _as_poly(v) -> Poly:
    if isinstance(v, Poly):
        return v
    if isinstance(v, (list, tuple)):
        return Poly(v)
    return Poly([v])


def _lift(c: Fraction, like):
    if isinstance(like, float):
        return float(c)
    if isinstance(like, complex):
        return complex(float(c))
    return to_mp(c)


def _poly_str(coeffs: Sequence[Fraction], var: str = "x") -> str:
    if not coeffs:
        return "0"
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    while b:
        a, b = b, a % b
    return a.monic()


class RatFunc:
    """Reduced quotient ``num/den`` of polynomials with monic ``den``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = _as_poly(num)
        den = Poly([1]) if den is None else _as_poly(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly([1])
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lc = den.lead
                if lc != 1:
                    num = Poly(c / lc for c in num.coeffs)
                    den = den.monic()
        self.num: Poly = num
        self.den: Poly = den

    @classmethod
    def x(cls) -> "RatFunc":
        return cls(Poly.x())

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(Poly([to_rat(c)]))

    @classmethod
    def simple_pole(cls, residue, at) -> "RatFunc":
        """``residue / (x - at)``."""
        return cls(Poly([to_rat(residue)]), Poly([-to_rat(at), 1]))

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc(Poly([other]), _reduced=True)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0]

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "x") -> str:
        n = _poly_str(self.num.coeffs, var)
        if self.den.degree == 0:
            return n
        d = _poly_str(self.den.coeffs, var)
        if len([c for c in self.num.coeffs if c]) > 1:
            n = f"({n})"
        return f"{n}/({d})"

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "RatFunc":
        if k >= 0:
            return RatFunc(self.num**k, self.den**k, _reduced=True)
        if self.is_zero():
            raise DivisionByZero("negative power of zero")
        return RatFunc(self.den ** (-k), self.num ** (-k))

    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def logderiv(self) -> "RatFunc":
        """f'/f."""
        if self.is_zero():
            raise DivisionByZero("logarithmic derivative of zero")
        return self.derivative() / self

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        """Evaluate at ``x``.

        Fractions and ints give an exact Fraction.  Floats and mpf values are
        evaluated exactly at the (exactly representable) input and rounded
        once, so the result is correctly rounded.  Anything else (mpc,
        complex) goes through Horner in that arithmetic.
        """
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            d = self.den.eval(x)
            if d == 0:
                raise PoleEvaluation(f"{self} has a pole at x = {x}")
            return self.num.eval(x) / d
        if isinstance(x, (float, mpmath.mpf)):
            exact = self.eval(to_rat(x))
            if isinstance(x, float):
                return float(exact)
            return to_mp(exact)
        d = self.den.eval(x)
        if d == 0:
            raise PoleEvaluation(f"{self} has a pole at x = {x}")
        return self.num.eval(x) / d

    def compose(self, inner: "RatFunc") -> "RatFunc":
        """Return ``self(inner(x))``."""
        inner = self._coerce(inner)
        deg = max(self.num.degree, self.den.degree, 0)
        # Homogenise: N(p/q) * q^deg stays polynomial.
        p, q = inner.num, inner.den

        def homog(poly: Poly) -> Poly:
            out = Poly()
            qpow = [Poly([1])]
            for _ in range(deg):
                qpow.append(qpow[-1] * q)
            ppow = Poly([1])
            for k in range(deg + 1):
                c = poly[k]
                if c:
                    out = out + c * ppow * qpow[deg - k]
                ppow = ppow * p
            return out

        num, den = homog(self.num), homog(self.den)
        if den.is_zero():
            raise DivisionByZero("composition lands on a pole identically")
        return RatFunc(num, den)

    def shift(self, x0) -> "RatFunc":
        """Return f(t + x0) as a function of t."""
        return RatFunc(self.num.shift(x0), self.den.shift(x0))

    def at_infinity(self) -> "RatFunc":
        """Return f(1/t) as a function of t."""
        return self.compose(RatFunc(Poly([1]), Poly([0, 1])))

    def pole_order(self, x0) -> int:
        """Order of the pole at the finite point ``x0`` (0 if analytic there)."""
        if self.is_zero():
            return 0
        return self.den.multiplicity(to_rat(x0))

    def order_at_infinity(self) -> int:
        """Pole order at infinity (negative values give the zero order)."""
        if self.is_zero():
            raise ValueError("order of zero at infinity is undefined")
        return self.num.degree - self.den.degree

    def residue(self, x0) -> Fraction:
        """Residue at a simple (or absent) pole."""
        x0 = to_rat(x0)
        k = self.pole_order(x0)
        if k == 0:
            return Fraction(0)
        if k > 1:
            raise ValueError(f"pole of order {k} at {x0}; residue of simple poles only")
        return self.num.eval(x0) / self.den.derivative().eval(x0)

    def leading_coefficient_at(self, x0, order: int) -> Fraction:
        """lim (x - x0)^order * f(x) at the finite point x0."""
        x0 = to_rat(x0)
        g = self * RatFunc(Poly([-x0, 1]) ** order)
        return g.eval(x0)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        return cls(Poly.from_json(data["num"]), Poly.from_json(data.get("den", ["1"])))


def arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Dispatch ``op`` in {add, sub, mul, div} on two rational functions."""
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
    }
    try:
        return ops[op]()
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


def differentiate(f: RatFunc) -> RatFunc:
    return f.derivative()


@functools.lru_cache(maxsize=4096)
def _divisors(n: int) -> tuple[int, ...]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def _homogeneous_value(ints: Sequence[int], num: int, den: int) -> int:
    """den^n * p(num/den) for an integer polynomial p of degree n."""
    acc = ints[-1]
    scale = 1
    for c in reversed(ints[:-1]):
        scale *= den
        acc = acc * num + c * scale
    return acc


def rational_roots(p: Poly) -> tuple[list[tuple[Fraction, int]], int]:
    """All rational roots of ``p`` with multiplicities.

    Returns ``(roots, unaccounted)`` where ``unaccounted`` is the degree left
    over for non-rational roots.  Candidates come from the rational root
    theorem on the primitive integer polynomial, pruned by the Cauchy bound
    and by divisibility of p(1) and p(-1); each is tested in exact integer
    arithmetic before deflating.
    """
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    roots: list[tuple[Fraction, int]] = []
    work = p
    v = work.valuation()
    if v:
        roots.append((Fraction(0), v))
        work = Poly(work.coeffs[v:])
    if work.degree >= 1:
        ints = work.content_integer()
        a0, an = ints[0], ints[-1]
        bound = 1 + max(abs(Fraction(c, an)) for c in ints[:-1])
        p1, pm1 = sum(ints), _homogeneous_value(ints, -1, 1)
        found = []
        for q in _divisors(an):
            for num in _divisors(a0):
                if Fraction(num, q) > bound or math.gcd(num, q) != 1:
                    continue
                for s in (num, -num):
                    # (q x - s) divides p over the integers, so q - s | p(1) and q + s | p(-1)
                    if q != s and p1 % (q - s):
                        continue
                    if q != -s and pm1 % (q + s):
                        continue
                    if _homogeneous_value(ints, s, q) == 0:
                        found.append(Fraction(s, q))
        for r in sorted(found):
            m = 0
            lin = Poly([-r, 1])
            while work.degree >= 1:
                q_, rem = work.divmod(lin)
                if rem:
                    break
                work, m = q_, m + 1
            roots.append((r, m))
    roots.sort()
    return roots, work.degree


def residual_factor(p: Poly) -> Poly:
    """The monic factor of ``p`` left after dividing out all rational roots."""
    roots, _ = rational_roots(p)
    return (p // Poly.from_roots(r for r, m in roots for _ in range(m))).monic()


def partial_fraction_simple(f: RatFunc) -> tuple[Poly, dict[Fraction, Fraction]] | None:
    """Split ``f`` as polynomial part plus simple-pole terms at rational points.

    Returns ``None`` when some pole is not simple or not rational.
    """
    roots, rest = rational_roots(f.den)
    if rest or any(m > 1 for _, m in roots):
        return None
    poly_part, rem = f.num.divmod(f.den)
    proper = RatFunc(rem, f.den)
    return poly_part, {r: proper.residue(r) for r, _ in roots}


def eval_rat(f: RatFunc, x0):
    return f.eval(x0)
