"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import families
from .exceptions import DomainError, IdentityError, OrderExceededError, SpecParseError, UmbralError
from .poly import MPoly, format_rational, parse_rational
from .tsh import TSHPoly, tsh_family
from .umbra import (
    DEFAULT_ORDER,
    MAX_ORDER,
    Umbra,
    cumulants,
    from_cumulants,
    load_umbra,
    resolve_builtin,
    umbra_to_spec,
)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

BUILTIN_CHOICES = ("epsilon", "unity", "bell", "singleton", "ubar", "gauss-delta",
                   "brownian", "gauss-compound", "compensated-poisson")
SEQUENCE_KINDS = ("moments", "classical", "boolean", "free")
FAMILIES = ("hermite", "charlier", "levy-sheffer", "boolean", "free")


class UsageError(Exception):
    pass


def default_order() -> int:
    raw = os.environ.get("UMBRA_TSH_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"UMBRA_TSH_ORDER must be an integer, got {raw!r}") from None
    if not 0 <= value <= MAX_ORDER:
        raise UsageError(f"UMBRA_TSH_ORDER must lie in [0, {MAX_ORDER}]")
    return value


def _order(args) -> int:
    order = default_order() if args.order is None else args.order
    if not 0 <= order <= MAX_ORDER:
        raise UsageError(f"--order must lie in [0, {MAX_ORDER}], got {order}")
    return order


def _umbra(path: Optional[str], name: Optional[str], order: int, what: str = "umbra") -> Umbra:
    if path and name:
        raise UsageError(f"give either a {what} file or a builtin name, not both")
    if path:
        alpha = load_umbra(path, default_order=max(order, 1))
    elif name:
        alpha = resolve_builtin(name, order)
    else:
        raise UsageError(f"an {what} is required (--umbra FILE or --builtin NAME)")
    if order > alpha.order:
        raise UsageError(f"--order {order} exceeds the {what} order {alpha.order}")
    return alpha


def _values(text: str) -> list:
    items = [v for v in text.split(",")] if text.strip() else []
    if len(items) > MAX_ORDER:
        raise UsageError(f"at most {MAX_ORDER} values are supported")
    out = []
    for i, item in enumerate(items):
        try:
            out.append(parse_rational(item))
        except SpecParseError as exc:
            raise SpecParseError(str(exc), f"value {i + 1}") from None
    return out


def _dump(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _umbra_json(alpha: Umbra):
    try:
        return umbra_to_spec(alpha)
    except DomainError:
        return {"order": alpha.order, "kind": "moments",
                "values": [m.to_json() for m in alpha.moments[1:]]}


def _render_polys(polys: List[TSHPoly], fmt: str, name: str = "Q") -> str:
    if fmt == "latex":
        lines = ["\\begin{align*}"]
        for q in polys:
            sep = " \\\\" if q is not polys[-1] else ""
            lines.append(f"{name}_{{{q.k}}}(x,t) &= {q.latex()}{sep}")
        lines.append("\\end{align*}")
        return "\n".join(lines)
    return "\n".join(f"{name}_{q.k}(x,t) = {q}" for q in polys)


# -- subcommands ----------------------------------------------------------


def cmd_gen(args) -> int:
    order = _order(args)
    alpha = _umbra(args.umbra, args.builtin, order)
    family = tsh_family(alpha, order, args.sign)
    if args.format == "json":
        print(_dump({"umbra": _umbra_json(alpha), "sign": args.sign, "order": order,
                     "polys": [q.to_json() for q in family]}))
    else:
        print(_render_polys(list(family), args.format))
    return EXIT_OK


def _load_polys(path: str) -> List[TSHPoly]:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}") from None
    items = data.get("polys") if isinstance(data, dict) else data
    if not isinstance(items, list):
        raise SpecParseError("expected a list of polynomials or an object with 'polys'", "$")
    polys = []
    for i, item in enumerate(items):
        try:
            polys.append(TSHPoly.from_json(item))
        except SpecParseError as exc:
            raise SpecParseError(str(exc), f"$.polys[{i}]") from None
    polys.sort(key=lambda q: q.k)
    if [q.k for q in polys] != list(range(len(polys))):
        raise SpecParseError("polynomials must cover degrees 0..K without gaps", "$.polys")
    return polys


def cmd_verify(args) -> int:
    order = _order(args)
    alpha = _umbra(args.umbra, args.builtin, order)
    polys = _load_polys(args.polys) if args.polys else None
    if polys is not None and len(polys) < order + 1:
        raise UsageError(f"--polys supplies Q_0..Q_{len(polys) - 1}, fewer than --order {order}")
    report = run_suite(args.suite, alpha, order, args.sign, polys, args.discrete_n)
    print(_dump(report.to_json()) if args.format == "json" else report.render())
    return EXIT_OK if report.passed else EXIT_FAIL


def _to_moments(kind: str, values: list) -> list:
    if kind == "moments":
        return values
    if kind == "classical":
        return list(from_cumulants(values).moments[1:]) if values else []
    transform = families.boolean_transform if kind == "boolean" else families.free_transform
    return list(transform("to_moments", families.OrdinarySeries(tuple(values))).coefficients)


def _from_moments(kind: str, moments: list) -> list:
    if kind == "moments":
        return moments
    if kind == "classical":
        return list(cumulants(Umbra.from_values(moments)).values) if moments else []
    transform = families.boolean_transform if kind == "boolean" else families.free_transform
    return list(transform("from_moments", families.OrdinarySeries(tuple(moments))).coefficients)


def transform_values(source: str, target: str, values: list) -> list:
    if source == target:
        return [MPoly.coerce(v) for v in values]
    return [MPoly.coerce(v) for v in _from_moments(target, _to_moments(source, values))]


def _scalar_text(p: MPoly) -> str:
    return format_rational(p.constant_value()) if p.is_constant() else str(p)


def cmd_transform(args) -> int:
    values = _values(args.values)
    out = transform_values(args.source, args.target, values)
    texts = [_scalar_text(v) for v in out]
    if args.format == "json":
        print(_dump({"from": args.source, "to": args.target, "values": texts}))
    else:
        print(",".join(texts))
    return EXIT_OK


def cmd_family(args) -> int:
    order = _order(args)
    report: dict = {"family": args.name, "order": order}
    lines: List[str] = []
    if args.name == "hermite":
        family = families.hermite_family(max(order, 1))
        polys = list(family)[: order + 1]
        lines.append(_render_polys(polys, args.format, "H"))
        lines.append("relation: Q_k on the Brownian umbra equals the coefficient of z^k/k! "
                     "in exp(x z - t z^2/2)")
        report["polys"] = [q.to_json() for q in polys]
    elif args.name == "charlier":
        rows = []
        for k in range(order + 1):
            coeffs = families.charlier_decomposition(k, max(order, 1))
            shifted = families.charlier_polynomial(k).subs("x", MPoly.var("x") + MPoly.var("t"))
            rows.append({"k": k, "C(x+t,t)": shifted.to_json(),
                         "stirling": [str(c) for c in coeffs[1:]] if k else ["1"]})
            shown = ", ".join(str(c) for c in (coeffs[1:] if k else coeffs))
            poly = shifted.latex() if args.format == "latex" else str(shifted)
            lines.append(f"C_{k}(x+t,t) = {poly}    c = ({shown})")
        lines.append("relation: C_k(x+t,t) = sum_j s(k,j) Q_j(x,t) on the compensated Poisson umbra")
        report["polys"] = rows
    elif args.name == "levy-sheffer":
        if not ((args.alpha_umbra or args.alpha_builtin) and (args.gamma_umbra or args.gamma_builtin)):
            raise UsageError("levy-sheffer needs both an alpha spec and a gamma spec")
        size = max(order, 1)
        alpha = _umbra(args.alpha_umbra, args.alpha_builtin, size, "alpha")
        gamma = _umbra(args.gamma_umbra, args.gamma_builtin, size, "gamma")
        if alpha.order != gamma.order:
            alpha, gamma = alpha.truncate(size), gamma.truncate(size)
        spec = families.LevySchefferSpec(alpha, gamma)
        vs = [families.levy_sheffer(k, spec) for k in range(order + 1)]
        for k, v in enumerate(vs):
            lines.append(f"V_{k}(x,t) = {v.latex() if args.format == 'latex' else v}")
        lines.append("relation: V_k = sum_i B_{k,i}(g_1,...) E[(x + t.beta.kappa)^i] "
                     "matches g(z)^t exp(x u(z))")
        report["polys"] = [{"k": k, "poly": v.to_json()} for k, v in enumerate(vs)]
    else:
        values = _values(args.values or "")
        if len(values) < max(order, 1):
            raise UsageError(f"{args.name} family needs at least {max(order, 1)} cumulant values (--values)")
        builder = families.tsh_from_boolean if args.name == "boolean" else families.tsh_from_free
        family = builder(values, order)
        polys = list(family)
        lines.append(_render_polys(polys, args.format))
        moments = ", ".join(_scalar_text(m) for m in family.alpha.moments[1:])
        lines.append(f"alpha-bar moments: {moments}")
        identity = ("u-bar.beta.eta-bar" if args.name == "boolean"
                    else "K-bar.beta.(-1.K-bar)_D^<-1>")
        lines.append(f"relation: alpha-bar equals {identity}")
        report["alpha_bar"] = _umbra_json(family.alpha)
        report["polys"] = [q.to_json() for q in polys]
    if args.format == "json":
        print(_dump(report))
    else:
        print("\n".join(lines))
    return EXIT_OK


# -- argument parsing ------------------------------------------------------


def _add_umbra_args(p):
    p.add_argument("--umbra", metavar="FILE", help="umbra spec JSON file")
    p.add_argument("--builtin", choices=BUILTIN_CHOICES, help="builtin umbra")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="umbral-tsh",
        description="Exact time-space harmonic polynomials for Levy processes via umbral calculus.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate Q_0..Q_K for an umbra")
    gen.add_argument("--order", type=int)
    _add_umbra_args(gen)
    gen.add_argument("--sign", choices=("minus", "plus"), default="minus")
    gen.add_argument("--format", choices=("json", "latex", "table"), default="table")
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="run identity checks for k <= K")
    ver.add_argument("--suite", choices=SUITES + ("all",), default="all")
    ver.add_argument("--order", type=int)
    _add_umbra_args(ver)
    ver.add_argument("--sign", choices=("minus", "plus"), default="minus")
    ver.add_argument("--polys", metavar="FILE", help="check these coefficients (gen --format json output)")
    ver.add_argument("--discrete-n", type=int, default=4, help="largest integer time for the discrete suite")
    ver.add_argument("--format", choices=("json", "table"), default="table")
    ver.set_defaults(func=cmd_verify)

    tr = sub.add_parser("transform", help="convert between moments and cumulants")
    tr.add_argument("--from", dest="source", choices=SEQUENCE_KINDS, required=True)
    tr.add_argument("--to", dest="target", choices=SEQUENCE_KINDS, required=True)
    tr.add_argument("--values", required=True, help='comma-separated rationals, e.g. "1,2,5/2"')
    tr.add_argument("--format", choices=("json", "table"), default="table")
    tr.set_defaults(func=cmd_transform)

    fam = sub.add_parser("family", help="classical families and the relation they satisfy")
    fam.add_argument("name", choices=FAMILIES)
    fam.add_argument("--order", type=int)
    fam.add_argument("--alpha-umbra", metavar="FILE")
    fam.add_argument("--alpha-builtin", choices=BUILTIN_CHOICES)
    fam.add_argument("--gamma-umbra", metavar="FILE")
    fam.add_argument("--gamma-builtin", choices=BUILTIN_CHOICES)
    fam.add_argument("--values", help="boolean or free cumulants for those families")
    fam.add_argument("--format", choices=("json", "latex", "table"), default="table")
    fam.set_defaults(func=cmd_family)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SpecParseError, OrderExceededError, DomainError, OSError) as exc:
        print(f"umbral-tsh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IdentityError as exc:
        print(f"umbral-tsh: identity failed: {exc}", file=sys.stderr)
        if exc.residual is not None:
            print(f"residual: {exc.residual}", file=sys.stderr)
        return EXIT_FAIL
    except UmbralError as exc:
        print(f"umbral-tsh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
