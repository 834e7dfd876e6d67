"""JSON-in / JSON-out command line front end.

Every subcommand prints exactly one JSON document on stdout.  Exit codes:
0 on success or a passing verification, 1 on a failing verification, 2 on
malformed input (with ``{"error": ...}`` on stdout).  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import re
import sys
from fractions import Fraction
from typing import Optional

import mpmath

from .algebra import PoleEvaluation, Poly, RatFunc, rat_str, to_rat
from .ode import (
    INFINITY,
    HeunParams,
    HGParams,
    InvalidParams,
    LinearODE2,
    classify_full,
    from_heun,
    from_hypergeometric,
    match_heun,
    match_hypergeometric,
)
from .sampling import random_heun, random_hg, random_hg_box, random_inner_spec
from .solve import (
    MIN_POINTS,
    AllPointsSkipped,
    DegenerateC,
    DomainMismatch,
    IrregularPoint,
    LogarithmicCase,
    chebyshev_points,
    default_points,
    hg_derivative_check,
    verify_chain_identity,
    verify_product_identity,
    verify_quotient_identity,
    verify_riccati,
)
from .xform import (
    DegenerateSpec,
    IndeterminateSystem,
    NoSolution,
    TransformMismatch,
    ZeroPotential,
    ZeroSlope,
    build_inner_heun,
    build_outer_equation,
    companion_of,
    heun_companion,
    mathieu_like_companion,
    reduce_to_hypergeometric,
    reduced_outer_equation,
    reduction_chain,
    simplified_R,
    solve_eta,
)

COMMANDS = ("classify", "companion", "hg-dual", "heun-dual", "mathieu", "inner-heun", "reduce", "verify", "batch")

MAP_RULES = {
    "one": ["1-gamma", "-delta", "1-epsilon"],
    "d": ["1-gamma", "1-delta", "-epsilon"],
    "zero": ["-gamma", "1-delta", "1-epsilon"],
    "infinity": ["1-gamma", "1-delta", "1-epsilon"],
}

# Errors that mean "this input cannot be processed" (exit 2).
INPUT_ERRORS = (
    InvalidParams,
    DegenerateSpec,
    IndeterminateSystem,
    NoSolution,
    ZeroPotential,
    ZeroSlope,
    DegenerateC,
    DomainMismatch,
    LogarithmicCase,
    IrregularPoint,
    PoleEvaluation,
    ZeroDivisionError,
    KeyError,
    ValueError,
    TypeError,
)


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# -- JSON output ---------------------------------------------------------------


def _plain(obj):
    """Convert to JSON-native values; floats keep 17 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if obj is INFINITY:
        return "inf"
    if isinstance(obj, (float, mpmath.mpf)):
        v = float(obj)
        if not math.isfinite(v):
            return "inf" if v > 0 else "-inf" if v < 0 else "nan"
        return float(f"{v:.17g}")
    if isinstance(obj, mpmath.mpc):
        return mpmath.nstr(obj, 17)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _plain(obj.to_json())
    return str(obj)


class _FloatEncoder(json.JSONEncoder):
    def iterencode(self, o, _one_shot=False):
        # The pure-Python path lets us format floats ourselves.
        return json.encoder._make_iterencode(
            {},
            self.default,
            json.encoder.py_encode_basestring_ascii if self.ensure_ascii else json.encoder.py_encode_basestring,
            self.indent,
            lambda v: format(v, ".17g") if math.isfinite(v) else json.dumps(str(v)),
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot,
        )(o, 0)


def dumps(doc) -> str:
    return json.dumps(_plain(doc), cls=_FloatEncoder, indent=2)


# -- input helpers ---------------------------------------------------------------


def load_json(text: str):
    """Inline JSON or ``@path``."""
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def _rat_arg(text: str) -> Fraction:
    try:
        return to_rat(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _ratfunc(value) -> RatFunc:
    if isinstance(value, str) and not value.startswith(("{", "@")):
        return RatFunc.const(to_rat(value))
    data = load_json(value) if isinstance(value, str) else value
    if isinstance(data, dict):
        return RatFunc.from_json(data)
    return RatFunc.const(to_rat(data))


def _strip_type(data: dict, expected: str) -> dict:
    kind = data.get("type", expected)
    if kind != expected:
        raise InputError(f"expected a {expected} object, got type {kind!r}")
    return data


def _hg_from(ns) -> Optional[HGParams]:
    if getattr(ns, "hg", None):
        return HGParams.from_json(_strip_type(load_json(ns.hg), "hypergeometric"))
    if all(getattr(ns, k, None) is not None for k in ("a", "b", "c")):
        return HGParams(ns.a, ns.b, ns.c)
    return None


def _heun_from(ns) -> Optional[HeunParams]:
    if getattr(ns, "heun", None):
        return HeunParams.from_json(_strip_type(load_json(ns.heun), "heun"))
    return None


def _ode_from(ns) -> LinearODE2:
    if getattr(ns, "ode", None):
        return LinearODE2.from_json(_strip_type(load_json(ns.ode), "ode"))
    heun = _heun_from(ns)
    if heun is not None:
        return from_heun(heun)
    hg = _hg_from(ns)
    if hg is not None:
        return from_hypergeometric(hg)
    if getattr(ns, "F", None) is not None and getattr(ns, "f", None) is not None:
        return LinearODE2.from_riccati_form(_ratfunc(ns.F), _ratfunc(ns.f))
    raise InputError("no equation given: use --ode, --heun, --hg, --a/--b/--c or --F/--f")


def _transform(source, result, map_, flags, checks) -> dict:
    return {"source": source, "result": result, "map": map_, "flags": list(flags), "checks": checks}


def _sweep(seed, items: list, passed: list) -> dict:
    n_pass = sum(passed)
    return {"seed": seed, "total": len(items), "pass": n_pass, "fail": len(items) - n_pass, "results": items}


# -- subcommands -----------------------------------------------------------------


def cmd_classify(ns):
    e = _ode_from(ns)
    cls = classify_full(e)
    heun = match_heun(e)
    hg = match_hypergeometric(e)
    doc = {
        "source": e.to_json(),
        "classification": cls.to_json(),
        "regular_count": len(cls.regular),
        "irregular_count": len(cls.irregular),
        "heun": heun.to_json() if heun else None,
        "hypergeometric": hg.to_json() if hg else None,
    }
    return 0, doc


def cmd_companion(ns):
    e = _ode_from(ns)
    pair = companion_of(e)
    comp_cls = classify_full(pair.companion)
    matched = match_heun(pair.companion) or match_hypergeometric(pair.companion)
    checks = {
        "Q_preserved": pair.companion.Q == e.Q,
        "companion_classification": comp_cls.to_json(),
    }
    return 0, _transform(e.to_json(), pair.companion.to_json(), matched.to_json() if matched else None, [], checks)


def _hg_dual_one(p: HGParams) -> tuple[bool, dict]:
    if p.a * p.b == 0:
        raise ZeroPotential("ab = 0 makes f identically zero")
    if p.c in (0, 1):
        raise InvalidParams(f"c = {p.c}: the companion parameter 1 - c coalesces with a degenerate case")
    image = HGParams(-p.a, -p.b, 1 - p.c)
    direct = companion_of(from_hypergeometric(p)).companion
    ok = direct == from_hypergeometric(image)
    out = _transform(
        p.to_json(),
        direct.to_json(),
        image.to_json(),
        [],
        {"direct_companion_equals_image": ok},
    )
    return ok, out


def cmd_hg_dual(ns):
    if ns.random:
        rng = random.Random(ns.seed)
        items, flags = [], []
        for _ in range(ns.random):
            ok, doc = _hg_dual_one(random_hg(rng))
            items.append(doc)
            flags.append(ok)
        return (0 if all(flags) else 1), _sweep(ns.seed, items, flags)
    p = _hg_from(ns)
    if p is None:
        raise InputError("hg-dual needs --hg or --a/--b/--c")
    ok, doc = _hg_dual_one(p)
    return (0 if ok else 1), doc


def _heun_dual_one(p: HeunParams) -> tuple[bool, dict]:
    hc = heun_companion(p)
    cls = classify_full(hc.companion)
    checks: dict = {"regular_count": len(cls.regular), "fuchsian": cls.is_fuchsian()}
    map_: dict = {"case": hc.case, "extra_point": hc.extra_point}
    if hc.case == "generic":
        ok = len(cls.regular) == 5 and hc.extra_point in cls.locations("regular") and cls.is_fuchsian()
        checks["five_regular_points_including_extra"] = ok
    else:
        map_["rule"] = MAP_RULES[hc.case]
        map_["gamma"], map_["delta"], map_["epsilon"] = hc.expected_map
        map_["matched"] = hc.matched.to_json() if hc.matched else None
        if hc.matched is not None:
            m = hc.matched
            ok = (m.gamma, m.delta, m.epsilon) == hc.expected_map
            checks["matched_equals_map"] = ok
            checks["fuchs_relation"] = m.gamma + m.delta + m.epsilon == m.alpha_plus_beta + 1
            ok = ok and checks["fuchs_relation"]
        else:
            # The companion is not of Heun form; nothing to compare against.
            checks["matched_equals_map"] = "not_applicable"
            ok = True
    return ok, _transform(p.to_json(), hc.companion.to_json(), map_, hc.flags, checks)


def cmd_heun_dual(ns):
    if ns.random:
        rng = random.Random(ns.seed)
        items, flags = [], []
        for _ in range(ns.random):
            ok, doc = _heun_dual_one(random_heun(rng, ns.case))
            items.append(doc)
            flags.append(ok)
        return (0 if all(flags) else 1), _sweep(ns.seed, items, flags)
    p = _heun_from(ns)
    if p is None:
        raise InputError("heun-dual needs --heun")
    if ns.q_over_ab is not None:
        if p.alpha_beta == 0:
            raise InputError("--q-over-ab needs alpha*beta != 0")
        p = HeunParams(p.alpha_beta, p.alpha_plus_beta, p.gamma, p.delta, p.epsilon, p.d, ns.q_over_ab * p.alpha_beta)
    ok, doc = _heun_dual_one(p)
    return (0 if ok else 1), doc


def cmd_mathieu(ns):
    mc = mathieu_like_companion(ns.a, ns.b, ns.c, ns.m)
    cls = classify_full(mc.companion)
    checks = {
        "regular": cls.locations("regular"),
        "irregular": cls.locations("irregular"),
        "source_classification": classify_full(mc.source).to_json(),
    }
    source = {"a": ns.a, "b": ns.b, "c": ns.c, "m": ns.m, "ode": mc.source.to_json()}
    return 0, _transform(source, mc.companion.to_json(), {"extra_point": mc.extra_point}, mc.flags, checks)


def _spec_args(ns) -> dict:
    keys = ("a", "b", "c", "c1", "D", "m", "n", "mu", "lam")
    missing = [k for k in keys if getattr(ns, k, None) is None]
    if missing:
        raise InputError(f"missing parameters: {', '.join('--' + k for k in missing)}")
    return {k: getattr(ns, k) for k in keys}


def cmd_inner_heun(ns):
    vals = _spec_args(ns)
    spec = build_inner_heun(**vals, allow_degenerate=ns.allow_degenerate)
    checks = dict(spec.checks)
    out = {}
    if spec.D != 0:
        vc = solve_eta(spec.D, spec.lam, spec.mu, spec.c1)
        outer = build_outer_equation(spec, vc)
        checks.update(outer.checks)
        out = outer.to_json()
    doc = _transform(vals, spec.ode.to_json(), spec.heun.to_json() if spec.heun else None, spec.flags, checks)
    doc["outer"] = out or None
    return 0, doc


def cmd_reduce(ns):
    for k in ("a", "b", "c", "m", "n"):
        if getattr(ns, k) is None:
            raise InputError(f"reduce needs --{k}")
    a, b, c, m, n = ns.a, ns.b, ns.c, ns.m, ns.n
    sols = reduce_to_hypergeometric(a, b, c, m, n, mu=ns.mu)
    primary = next((s for s in sols if s.branch == "closed_form_branch"), sols[0])
    checks: dict = {"substitution_zero": all(not any(s.residuals()) for s in sols)}
    try:
        checks["R_equals_L_over_mK_minus_nL"] = primary.R == simplified_R(a, b, c, m, n)
    except ZeroDivisionError:
        checks["R_equals_L_over_mK_minus_nL"] = "undefined"
    reduced = reduced_outer_equation(primary, ns.D, m, n)
    cls = classify_full(reduced)
    checks["reduced_regular_points"] = cls.locations("regular")
    checks["three_regular_points"] = len(cls.regular) == 3 and cls.is_fuchsian()
    if ns.D != 0:
        _, _, outer = reduction_chain(primary, ns.D)
        x = Poly.x()
        checks["N_equals_R_(mx+n)^2"] = outer.N_recomputed == primary.R * (m * x + n) ** 2
        checks["N_diff"] = {k: rat_str(v) for k, v in outer.N_diff.items()}
    doc = _transform(
        {"a": a, "b": b, "c": c, "m": m, "n": n, "D": ns.D},
        reduced.to_json(),
        primary.to_json(),
        primary.degeneracies,
        checks,
    )
    doc["branches"] = [s.to_json() for s in sols]
    return 0, doc


# -- verify ----------------------------------------------------------------------


def _verify_kwargs(ns) -> dict:
    kw = {"tol": ns.tol, "order": ns.order, "exact": ns.exact}
    if ns.points is not None:
        kw["min_points"] = min(MIN_POINTS, ns.points)
    return kw


def _points_for(ns, e, x0):
    return None if ns.points is None else default_points(e, x0, count=ns.points)


def _verify_product(ns, e: LinearODE2):
    pair = companion_of(e)
    x0 = ns.x0 if ns.x0 is not None else Fraction(0)
    return verify_product_identity(pair, _points_for(ns, e, x0), x0=x0, branch=ns.branch, **_verify_kwargs(ns))


def _verify_derivative(ns, p: HGParams):
    pts = None if ns.points is None else chebyshev_points(0.05, 0.5, ns.points)
    kw = _verify_kwargs(ns)
    kw.pop("order")
    if ns.tol_given is None:
        kw["tol"] = 1e-10
    return hg_derivative_check(p.a, p.b, p.c, pts, **kw)


def _verify_chain(ns, vals: Optional[dict] = None):
    if vals is None and ns.c1 is not None:
        vals = _spec_args(ns)
    if vals is not None:
        spec = build_inner_heun(**vals, allow_degenerate=True)
        vc = solve_eta(spec.D, spec.lam, spec.mu, spec.c1)
        outer = build_outer_equation(spec, vc)
    else:
        for k in ("a", "b", "c", "m", "n"):
            if getattr(ns, k) is None:
                raise InputError(f"chain needs --{k} (or a full inner spec with --c1/--mu/--lam)")
        sols = reduce_to_hypergeometric(ns.a, ns.b, ns.c, ns.m, ns.n, mu=ns.mu)
        sol = next((s for s in sols if s.branch == "closed_form_branch"), sols[0])
        spec, vc, outer = reduction_chain(sol, ns.D, ns.lam if ns.lam is not None else 1)
    x0 = ns.x0 if ns.x0 is not None else -spec.mu
    rep = verify_chain_identity(
        spec, vc, outer, _points_for(ns, outer.ode, x0), x0=x0, branch=ns.branch, **_verify_kwargs(ns)
    )
    rep.details["heun"] = spec.heun.to_json() if spec.heun else None
    return rep


def _verify_once(ns, rng: Optional[random.Random] = None):
    ident = ns.identity
    if ident == "product":
        if rng is not None:
            e = from_heun(random_heun(rng, "generic")) if ns.family == "heun" else from_hypergeometric(random_hg_box(rng))
        else:
            e = _ode_from(ns)
        return e.to_json(), _verify_product(ns, e)
    if ident == "riccati":
        e = from_hypergeometric(random_hg_box(rng)) if rng is not None else _ode_from(ns)
        x0 = ns.x0 if ns.x0 is not None else Fraction(0)
        rep = verify_riccati(e, _points_for(ns, e, x0), x0=x0, branch=ns.branch, **_verify_kwargs(ns))
        return e.to_json(), rep
    if ident == "derivative":
        p = random_hg_box(rng) if rng is not None else _hg_from(ns)
        if p is None:
            raise InputError("derivative needs --hg or --a/--b/--c")
        return p.to_json(), _verify_derivative(ns, p)
    if ident == "quotient":
        if rng is not None:
            raise InputError("--random is not supported for the quotient identity")
        if ns.F is None or ns.f is None or ns.alpha is None:
            raise InputError("quotient needs --F, --f and --alpha")
        F, f, alpha = _ratfunc(ns.F), _ratfunc(ns.f), _ratfunc(ns.alpha)
        x0 = ns.x0 if ns.x0 is not None else Fraction(0)
        e = LinearODE2(-F, alpha)
        rep = verify_quotient_identity(F, f, alpha, _points_for(ns, e, x0), x0=x0, branch=ns.branch, **_verify_kwargs(ns))
        return {"F": F.to_json(), "f": f.to_json(), "alpha": alpha.to_json()}, rep
    if ident == "chain":
        vals = random_inner_spec(rng) if rng is not None else None
        rep = _verify_chain(ns, vals)
        return vals if vals is not None else {k: getattr(ns, k) for k in ("a", "b", "c", "m", "n")}, rep
    raise InputError(f"unknown identity {ident!r}")


def _verify_doc(source, rep) -> dict:
    return {"identity": rep.identity, "source": source, "verdict": rep.verdict, "report": rep.to_json()}


def cmd_verify(ns):
    if ns.random:
        rng = random.Random(ns.seed)
        items, flags = [], []
        for _ in range(ns.random):
            try:
                source, rep = _verify_once(ns, rng)
                items.append(_verify_doc(source, rep))
                flags.append(rep.passed)
            except AllPointsSkipped as exc:
                items.append({"identity": ns.identity, "verdict": "fail", "error": str(exc)})
                flags.append(False)
        return (0 if all(flags) else 1), _sweep(ns.seed, items, flags)
    try:
        source, rep = _verify_once(ns)
    except AllPointsSkipped as exc:
        return 1, {"identity": ns.identity, "verdict": "fail", "error": str(exc)}
    return (0 if rep.passed else 1), _verify_doc(source, rep)


# -- batch -----------------------------------------------------------------------


def _item_argv(item) -> list[str]:
    if isinstance(item, dict) and "argv" in item:
        argv = item["argv"]
        if not isinstance(argv, list) or not all(isinstance(a, str) for a in argv):
            raise InputError("argv must be a list of strings")
        return argv
    if not isinstance(item, dict) or "name" not in item:
        raise InputError("batch items need 'name' (with 'args'/'input'/'options') or 'argv'")
    argv = [item["name"]]
    for section in ("input", "args", "options"):
        for key, value in (item.get(section) or {}).items():
            flag = "--" + key.replace("_", "-")
            if value is True:
                argv.append(flag)
            elif value is False or value is None:
                continue
            elif isinstance(value, (dict, list)):
                argv += [flag, json.dumps(value)]
            else:
                argv += [flag, str(value)]
    return argv


def cmd_batch(ns):
    data = load_json(ns.file if ns.file.startswith("@") else "@" + ns.file)
    if not isinstance(data, list):
        raise InputError("batch file must hold a JSON array")
    results = []
    n_pass = 0
    for i, item in enumerate(data):
        name = item.get("name", f"item{i}") if isinstance(item, dict) else f"item{i}"
        try:
            argv = _item_argv(item)
            if argv and argv[0] == "batch":
                raise InputError("nested batch is not allowed")
            code, doc = run(argv)
        except InputError as exc:
            code, doc = 2, {"error": {"type": "InputError", "message": str(exc)}}
        status = "pass" if code == 0 else "fail"
        n_pass += code == 0
        results.append({"name": name, "exit_code": code, "status": status, "output": doc})
    summary = {"total": len(results), "pass": n_pass, "fail": len(results) - n_pass, "results": results}
    return (0 if n_pass == len(results) else 1), summary


# -- parser ----------------------------------------------------------------------


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("--tol must be > 0")
    return v


def _order(text: str) -> int:
    v = int(text)
    if not 8 <= v <= 512:
        raise argparse.ArgumentTypeError("--order must be in [8, 512]")
    return v


def _count(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("count must be >= 1")
    return v


def _add_equation_inputs(p):
    p.add_argument("--ode", help="ODE JSON {P, Q} (inline or @file)")
    p.add_argument("--heun", help="Heun parameter JSON (inline or @file)")
    p.add_argument("--hg", help="hypergeometric parameter JSON (inline or @file)")
    p.add_argument("--F", help="F in y'' - F y' - f y = 0 (rational-function JSON or a rational)")
    p.add_argument("--f", help="f in y'' - F y' - f y = 0")


def _add_params(p, names):
    for k in names:
        p.add_argument(f"--{k}", type=_rat_arg, default=None)


def _add_common(p):
    p.add_argument("--tol", type=_positive_float, default=None, dest="tol_given")
    p.add_argument("--order", type=_order, default=None)
    p.add_argument("--points", type=_count, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=_count, default=None, metavar="N")
    p.add_argument("--exact", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fxf", description="Companion and reduction transformations of second-order ODEs.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("classify", help="singular points and local exponents")
    _add_equation_inputs(p)
    _add_params(p, ("a", "b", "c"))
    _add_common(p)

    p = sub.add_parser("companion", help="companion equation of y'' - F y' - f y = 0")
    _add_equation_inputs(p)
    _add_params(p, ("a", "b", "c"))
    _add_common(p)

    p = sub.add_parser("hg-dual", help="hypergeometric parameter map (a, b, c) -> (-a, -b, 1 - c)")
    p.add_argument("--hg")
    _add_params(p, ("a", "b", "c"))
    _add_common(p)

    p = sub.add_parser("heun-dual", help="companion of a Heun equation and its coalescence maps")
    p.add_argument("--heun")
    p.add_argument("--q-over-ab", type=_rat_arg, default=None, dest="q_over_ab")
    p.add_argument("--case", default="any", choices=("any", "generic", "zero", "one", "d"))
    _add_common(p)

    p = sub.add_parser("mathieu", help="companion with f = -(ab + m x)/(x(x - 1))")
    _add_params(p, ("a", "b", "c", "m"))
    _add_common(p)

    p = sub.add_parser("inner-heun", help="inner Heun equation and the outer equation in x")
    _add_params(p, ("a", "b", "c", "c1", "D", "m", "n", "mu", "lam"))
    p.add_argument("--allow-degenerate", action="store_true", dest="allow_degenerate")
    _add_common(p)

    p = sub.add_parser("reduce", help="solve for (R, c1, mu) giving three singular points")
    _add_params(p, ("a", "b", "c", "m", "n", "mu"))
    p.add_argument("--D", type=_rat_arg, default=Fraction(1))
    _add_common(p)

    p = sub.add_parser("verify", help="numerical check of an identity")
    p.add_argument("--identity", required=True, choices=("product", "quotient", "chain", "derivative", "riccati"))
    _add_equation_inputs(p)
    _add_params(p, ("a", "b", "c", "c1", "m", "n", "mu", "lam", "x0"))
    p.add_argument("--D", type=_rat_arg, default=Fraction(1))
    p.add_argument("--alpha", help="alpha in y'' - F y' + alpha y = 0 (rational or rational-function JSON)")
    p.add_argument("--branch", default="larger", choices=("larger", "smaller"))
    p.add_argument("--family", default="hg", choices=("hg", "heun"), help="family for --random product sweeps")
    _add_common(p)

    p = sub.add_parser("batch", help="run a JSON array of commands")
    p.add_argument("file")
    return parser


HANDLERS = {
    "classify": cmd_classify,
    "companion": cmd_companion,
    "hg-dual": cmd_hg_dual,
    "heun-dual": cmd_heun_dual,
    "mathieu": cmd_mathieu,
    "inner-heun": cmd_inner_heun,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "batch": cmd_batch,
}


def _error(kind: str, message: str) -> dict:
    return {"error": {"type": kind, "message": message}}


_NEGATIVE = re.compile(r"^-(\d+(/\d+)?|\d*\.\d+([eE][-+]?\d+)?|\d+[eE][-+]?\d+)$")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--n -1/2`` as ``--n=-1/2``; argparse would read -1/2 as an option."""
    out: list[str] = []
    for tok in argv:
        if out and _NEGATIVE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv) -> tuple[int, dict]:
    """Run one command; returns (exit code, JSON document)."""
    try:
        ns = build_parser().parse_args(_join_negative_values(list(argv)))
    except InputError as exc:
        return 2, _error("UsageError", str(exc))
    if ns.command is None:
        return 2, _error("UsageError", f"a subcommand is required: {', '.join(COMMANDS)}")
    if hasattr(ns, "tol_given"):
        ns.tol = ns.tol_given if ns.tol_given is not None else 1e-8
    try:
        return HANDLERS[ns.command](ns)
    except InputError as exc:
        return 2, _error("InputError", str(exc))
    except OSError as exc:
        return 2, _error(type(exc).__name__, str(exc))
    except TransformMismatch as exc:
        return 1, _error("TransformMismatch", str(exc))
    except INPUT_ERRORS as exc:
        return 2, _error(type(exc).__name__, str(exc))


def main(argv=None) -> int:
    code, doc = run(sys.argv[1:] if argv is None else argv)
    if code == 2 and "error" in doc:
        print(f"fxf: {doc['error']['message']}", file=sys.stderr)
    sys.stdout.write(dumps(doc) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
