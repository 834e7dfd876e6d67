from fractions import Fraction

import mpmath
import pytest
from conftest import nonzero_ratfuncs, polys, ratfuncs
from hypothesis import assume, given

from fxf.algebra import (
    DivisionByZero,
    PoleEvaluation,
    Poly,
    RatFunc,
    arith,
    differentiate,
    partial_fraction_simple,
    poly_gcd,
    rational_roots,
    to_rat,
)

x = RatFunc.x()
X = Poly.x()


def test_common_denominator():
    out = arith(1 / x, 1 / (x - 1), "add")
    assert out == (2 * x - 1) / (x * (x - 1))
    assert out.num == Poly([-1, 2]) and out.den == Poly([0, -1, 1])


def test_multiplicative_inverse():
    f = (x + 2) / (x**2 - 1)
    assert arith(f, 1 / f, "mul") == RatFunc.const(1)


def test_gcd_cancellation():
    f = RatFunc(X**2 - 1, X - 1)
    assert f.num == X + 1 and f.den == Poly([1])


def test_canonical_form_is_monic_and_reduced():
    f = RatFunc(Poly([2, 4]), Poly([6, 2]))
    assert f.den.lead == 1
    assert poly_gcd(f.num, f.den) == Poly([1])


def test_divide_by_zero_function():
    with pytest.raises(DivisionByZero):
        arith(x, RatFunc.const(0), "div")


def test_derivatives():
    assert differentiate(x**2) == 2 * x
    assert differentiate(1 / x) == -1 / x**2


def test_logderiv_independent_of_constants():
    for ab in (Fraction(1), Fraction(-3, 7), Fraction(5, 2)):
        f = -ab / (x * (x - 1))
        assert f.logderiv() == -(2 * x - 1) / (x * (x - 1))


def test_rational_roots_examples():
    assert rational_roots(Poly.from_roots([0, 1, 3])) == ([(0, 1), (1, 1), (3, 1)], 0)
    assert rational_roots((X - 1) ** 2) == ([(1, 2)], 0)
    assert rational_roots(X**2 - 2) == ([], 2)


def test_rational_roots_non_integer():
    p = (2 * X - 1) ** 2 * (3 * X + 4) * (X**2 + 1)
    roots, rest = rational_roots(p)
    assert dict(roots) == {Fraction(1, 2): 2, Fraction(-4, 3): 1}
    assert rest == 2


def test_eval_examples():
    assert ((2 * x - 1) / (x * (x - 1)))(2) == Fraction(3, 2)
    assert (x**2)(Fraction(1, 3)) == Fraction(1, 9)
    with pytest.raises(PoleEvaluation):
        (1 / x)(0)


def test_eval_float_is_correctly_rounded():
    f = (2 * x - 1) / (x * (x - 1))
    with mpmath.workprec(200):
        for v in ("-1.9", "0.3", "7.25", "-0.001"):
            got = f(mpmath.mpf(v))
            exact = f(to_rat(mpmath.mpf(v)))
            assert abs(got - mpmath.mpf(exact.numerator) / exact.denominator) <= 2 * mpmath.eps * abs(got)


def test_to_rat_keeps_sign_of_mpf():
    assert to_rat(mpmath.mpf(-0.25)) == Fraction(-1, 4)
    assert to_rat(mpmath.mpf(-3)) == -3
    assert to_rat(mpmath.mpf(0)) == 0


def test_json_round_trip():
    f = (x + Fraction(2, 3)) / (x**2 - Fraction(1, 4))
    data = f.to_json()
    assert all(isinstance(c, str) for c in data["num"] + data["den"])
    assert RatFunc.from_json(data) == f


def test_partial_fractions():
    f = 3 / x - Fraction(1, 2) / (x - 1) + 2 / (x - Fraction(1, 3))
    poly, res = partial_fraction_simple(f)
    assert poly.is_zero()
    assert res == {0: 3, 1: Fraction(-1, 2), Fraction(1, 3): 2}
    assert partial_fraction_simple(1 / x**2) is None


# -- properties ----------------------------------------------------------------


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + (-f) == RatFunc.const(0)
    assert f + g == g + f and f * g == g * f


@given(nonzero_ratfuncs)
def test_multiplicative_inverse_property(f):
    assert f * (1 / f) == RatFunc.const(1)


@given(ratfuncs(), ratfuncs())
def test_leibniz_rule(f, g):
    assert differentiate(f * g) == differentiate(f) * g + f * differentiate(g)


@given(nonzero_ratfuncs, nonzero_ratfuncs)
def test_logderiv_of_product(f, g):
    assert (f * g).logderiv() == f.logderiv() + g.logderiv()


@given(polys(5))
def test_root_reconstruction_divides(p):
    assume(not p.is_zero())
    roots, rest = rational_roots(p)
    assert sum(m for _, m in roots) + rest == p.degree
    recon = Poly([1])
    for r, m in roots:
        recon = recon * (X - r) ** m
    assert (p % recon).is_zero()


@given(ratfuncs(), ratfuncs())
def test_canonical_equality_is_structural(f, g):
    assert (f == g) == (f - g).is_zero()
    assert f.den.lead == 1
