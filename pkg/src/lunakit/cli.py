"""Command-line front end: operations on JSON spherical systems and on the built-in catalog.

Exit codes: 0 success, 1 domain error (reported, not raised), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import catalog, ops, order, semigroup, sphsys, tensorlab
from .rootsys import format_weight
from .sphsys import DeltaVector, SphericalSystem, format_delta

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


def _add_selector(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="spherical system as a JSON file ('-' for stdin)")
    p.add_argument("--case", help="catalog case id, e.g. CCacy")
    for name in ("p", "q", "r", "n"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--variant")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lunakit", description="Spherical systems and nilpotent orbit catalog tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name: str, help_: str, selector: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        if selector:
            _add_selector(p)
        _add_format(p)
        return p

    cmd("validate", "check Luna's axioms")
    cmd("diagram", "plain-text Luna diagram")
    p = cmd("localize", "localize in a set of simple roots")
    p.add_argument("--roots", required=True, help="comma-separated simple roots, e.g. a1,a'1")
    p = cmd("quotient", "quotient by a distinguished set of colors")
    p.add_argument("--colors", required=True, help="comma-separated colors, e.g. D2,D4")
    p = cmd("distinguished", "test or enumerate distinguished sets of colors")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--colors")
    g.add_argument("--enumerate", action="store_true")
    p = cmd("coverings", "covering differences up to a height bound")
    p.add_argument("--bound", type=int, default=order.DEFAULT_HEIGHT_BOUND)
    p = cmd("triples", "fundamental low triples")
    p.add_argument("--filter-sigma", type=int, help="keep triples whose gamma involves sigma_k (1-based)")
    for name in ("minuscule", "semigroup", "normality"):
        p = cmd(name, {"minuscule": "is an element of N Delta minuscule",
                       "semigroup": "generators of Gamma_{D_p} and their weights",
                       "normality": "normality verdict for D_p"}[name])
        p.add_argument("--dp", help="element of N Delta, e.g. 'D2+D3'; defaults to the catalog D_p")
        if name != "minuscule":
            p.add_argument("--naming", choices=("omega", "varpi"), default="omega")

    p = cmd("catalog", "the built-in orbit catalog", selector=False)
    p.add_argument("action", choices=("list", "build", "regress"))
    p.add_argument("--case")
    for name in ("p", "q", "r", "n"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--variant")
    p.add_argument("--all", action="store_true", help="regress every family at its sample parameters")

    p = cmd("witness", "tensor certificates for low triples", selector=False)
    p.add_argument("--family", required=True, choices=(tensorlab.AY22C, tensorlab.AYSSBT, tensorlab.ABYSS))
    p.add_argument("--triple", help="map id; omit to certify all")
    for name in ("s", "t", "l", "m"):
        p.add_argument(f"--{name}", type=int)
    return parser


# --- input ---------------------------------------------------------------

def _params(args) -> dict[str, int]:
    return {k: getattr(args, k) for k in ("p", "q", "r", "n") if getattr(args, k, None) is not None}


def _load(args) -> tuple[SphericalSystem, catalog.OrbitCase | None]:
    if (args.input is None) == (args.case is None):
        raise UsageError("give exactly one of an input file or --case")
    if args.case:
        case = _build(args.case, _params(args), args.variant)
        if case.system is None:
            raise DomainError(f"{args.case}: no spherical system available ({case.expected.notes})")
        return case.system, case
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    except OSError as e:
        raise UsageError(str(e)) from None
    try:
        return sphsys.from_json(text), None
    except (ValueError, KeyError, TypeError) as e:
        raise DomainError(f"cannot read spherical system: {e}") from None


def _build(case_id: str, params: dict[str, int], variant: str | None) -> catalog.OrbitCase:
    try:
        return catalog.build_case(case_id, params, variant)
    except catalog.BadParams as e:
        raise UsageError(str(e)) from None


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _delta(system: SphericalSystem, text: str) -> DeltaVector:
    try:
        return catalog.parse_combination(system, text)
    except (KeyError, ValueError) as e:
        raise DomainError(f"cannot read {text!r}: {e}") from None


def _dp(args, system: SphericalSystem, case: catalog.OrbitCase | None) -> DeltaVector:
    if args.dp:
        return _delta(system, args.dp)
    if case is not None and case.d_p is not None:
        return case.d_p
    raise UsageError("--dp is required for a system read from a file")


# --- commands ------------------------------------------------------------

def _vec(system: SphericalSystem, v: DeltaVector) -> dict[str, Any]:
    return {"coeffs": list(v.coeffs), "text": format_delta(system, v)}


def _sigma_text(v: Sequence[int]) -> str:
    parts = [(f"{c}s{k + 1}" if c != 1 else f"s{k + 1}") for k, c in enumerate(v) if c]
    return "+".join(parts) or "0"


def run(args) -> tuple[int, Any, str]:
    """(exit code, json payload, text) for one command."""
    c = args.command
    if c == "catalog":
        return _catalog(args)
    if c == "witness":
        return _witness(args)
    system, case = _load(args)

    if c == "validate":
        vs = sphsys.validate(system)
        payload = {"valid": not vs, "violations": [{"axiom": v.axiom, "message": v.message} for v in vs]}
        text = "valid" if not vs else "\n".join(f"{v.axiom}: {v.message}" for v in vs)
        return (EXIT_OK if not vs else EXIT_DOMAIN), payload, text

    if c == "diagram":
        text = sphsys.render_luna_diagram(system)
        return EXIT_OK, {"diagram": text.splitlines()}, text

    if c == "localize":
        roots = _split(args.roots)
        for r in roots:
            if not system.rs.has_root(r):
                raise DomainError(f"unknown simple root {r}")
        loc = ops.localize(system, roots)
        return EXIT_OK, sphsys.to_json_obj(loc), sphsys.render_luna_diagram(loc)

    if c == "quotient":
        names = [system.color_names[system.resolve(n)] for n in _split(args.colors)]
        try:
            res = ops.quotient(system, names)
        except ops.NotDistinguished as e:
            raise DomainError(f"not distinguished: {e}") from None
        higher = ops.is_higher_defect_quotient(system, names)
        q = res.system
        payload = {"system": sphsys.to_json_obj(q), "kept_colors": res.kept_colors,
                   "sigma_basis": [list(v.coeffs) for v in res.sigma_basis],
                   "defect": ops.defect(q), "higher_defect": higher}
        lines = [f"Sigma/Delta' = {{{', '.join(sphsys.format_combination(q.rs, s) for s in q.sigma)}}}",
                 f"basis over Sigma: {', '.join(_sigma_text(v.coeffs) for v in res.sigma_basis) or '-'}",
                 f"S^p: {', '.join(q.sp) or '-'}",
                 f"defect {ops.defect(system)} -> {ops.defect(q)}; higher defect: {'yes' if higher else 'no'}"]
        return EXIT_OK, payload, "\n".join(lines)

    if c == "distinguished":
        if args.enumerate:
            try:
                subsets = ops.minimal_distinguished_subsets(system)
            except ops.TooManyColors as e:
                raise DomainError(str(e)) from None
            shown = [[system.display_names[system.color_index[n]] for n in s] for s in subsets]
            return EXIT_OK, {"minimal_distinguished": shown}, "\n".join(",".join(s) for s in shown) or "none"
        names = [system.color_names[system.resolve(n)] for n in _split(args.colors)]
        d = ops.is_distinguished(system, names)
        witness = {k: str(v) for k, v in (d.witness or {}).items()}
        text = ("distinguished, witness " + ", ".join(f"{k}:{v}" for k, v in witness.items())) if d else "not distinguished"
        return (EXIT_OK if d else EXIT_DOMAIN), {"distinguished": bool(d), "witness": witness or None}, text

    if c == "coverings":
        try:
            covs = order.covering_differences(system, args.bound)
        except order.BoundTooSmall as e:
            raise DomainError(str(e)) from None
        payload = [{"gamma": list(cd.gamma.coeffs), "delta_form": _vec(system, cd.delta_form),
                    "height": cd.height_pos} for cd in covs]
        lines = [f"{_sigma_text(cd.gamma.coeffs)} = {format_delta(system, cd.delta_form)}  (height {cd.height_pos})"
                 for cd in covs]
        return EXIT_OK, payload, "\n".join(lines) or "none"

    if c == "triples":
        k = args.filter_sigma
        if k is not None and not 1 <= k <= len(system.sigma):
            raise UsageError(f"--filter-sigma must be between 1 and {len(system.sigma)}")
        ts = order.fundamental_low_triples(system, None if k is None else k - 1)
        payload = [{"D": _vec(system, t.D), "E": _vec(system, t.E), "F": _vec(system, t.F),
                    "gamma": list(t.gamma.coeffs)} for t in ts]
        lines = [f"({format_delta(system, t.D)}, {format_delta(system, t.E)}, {format_delta(system, t.F)})  "
                 f"gamma = {_sigma_text(t.gamma.coeffs)}" for t in ts]
        return EXIT_OK, payload, "\n".join(lines) or "none"

    d_p = _dp(args, system, case)
    if any(x < 0 for x in d_p.coeffs):
        raise DomainError("the element must lie in N Delta")

    if c == "minuscule":
        below = order.strictly_below_witness(system, d_p)
        payload = {"minuscule": below is None}
        text = "minuscule"
        if below is not None:
            payload["below"] = _vec(system, below[1])
            payload["gamma"] = list(below[0].coeffs)
            text = f"not minuscule: {format_delta(system, below[1])} = {format_delta(system, d_p)} - {_sigma_text(below[0].coeffs)}"
        return EXIT_OK, payload, text

    surj = case.surjectivity if case is not None else semigroup.PROVEN
    if c == "semigroup":
        gs = semigroup.gamma_semigroup(system, d_p)
        weights = [format_weight(system.rs, w, args.naming) for w in gs.weight_generators]
        payload = json.loads(semigroup.semigroup_json(system, d_p, surj, args.naming))
        payload["generators_text"] = [format_delta(system, g) for g in gs.generators]
        text = "\n".join([semigroup.format_generators(system, gs.generators), "weights: " + ", ".join(weights)])
        return EXIT_OK, payload, text

    if c == "normality":
        v = semigroup.normality_verdict(system, d_p, surj)
        payload = {"status": v.status, "normal": v.normal, "reason": v.reason}
        text = v.status
        if v.status == semigroup.NON_NORMAL:
            w = DeltaVector(tuple(v.reason["witness"]))
            text += f": {format_delta(system, w)} = {format_delta(system, d_p)} - {_sigma_text(v.reason['gamma'])}"
        elif v.status in (semigroup.NORMAL_BY_EXCEPTION, semigroup.UNDETERMINED):
            text += f": color weights have rank {v.reason['rank']} of {v.reason['colors']}"
        return EXIT_OK, payload, text

    raise UsageError(f"unknown command {c}")


def _catalog(args) -> tuple[int, Any, str]:
    if args.action == "list":
        rows = [{"case": f.case_id, "group": f.group, "params": list(f.params), "constraint": f.constraint,
                 "signed_partition": f.signed_partition} for f in catalog.FAMILIES.values()]
        text = "\n".join(f"{r['case']:<9} {r['group']:<22} {','.join(r['params']):<6} {r['constraint']}" for r in rows)
        return EXIT_OK, rows, text
    if args.action == "regress" and args.all:
        todo = catalog.all_samples()
    else:
        if not args.case:
            raise UsageError("--case is required")
        todo = [(args.case, _params(args), args.variant)]
    if args.action == "build":
        case = _build(*todo[0])
        obj = catalog.case_to_json_obj(case)
        if case.system is None:
            return EXIT_OK, obj, f"{case.case_id} {case.params}: no system ({case.expected.notes})"
        lines = [f"{case.case_id} {case.params} {case.signed_partition}",
                 sphsys.render_luna_diagram(case.system),
                 f"D_p = {format_delta(case.system, case.d_p)}"]
        return EXIT_OK, obj, "\n".join(lines)
    reports = []
    for cid, params, variant in todo:
        _build(cid, params, variant)  # usage errors surface before the report
        reports.append(catalog.run_regression(cid, params, variant))
    ok = all(r.passed for r in reports)
    payload = [{"case": r.case_id, "params": r.params, "variant": r.variant, "passed": r.passed,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in r.checks]}
               for r in reports]
    lines = []
    for r in reports:
        tag = f"{r.case_id} {r.params}" + (f" {r.variant}" if r.variant else "")
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {tag}")
        lines += [f"  {'ok ' if c.passed else 'BAD'} {c.name}: {c.detail}" for c in r.checks]
    return (EXIT_OK if ok else EXIT_DOMAIN), payload, "\n".join(lines)


def _witness(args) -> tuple[int, Any, str]:
    params = {k: getattr(args, k) for k in ("s", "t", "l", "m") if getattr(args, k) is not None}
    try:
        certs = tensorlab.certify_triples(args.family, params)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.triple:
        certs = [c for c in certs if args.triple in (c.triple, c.map_id)]
        if not certs:
            raise UsageError(f"no map {args.triple!r} for {args.family}")
    payload = [{"triple": c.triple, "map": c.map_id, "nonzero": c.nonzero, "low": c.low,
                "value": tensorlab.coefficient_list(c.value)} for c in certs]
    return EXIT_OK, payload, "\n".join(c.line() for c in certs)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        code, payload, text = run(args)
    except UsageError as e:
        print(f"lunakit: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, sphsys.UnknownColor, catalog.CaseMismatch, ValueError) as e:
        if args.format == "json":
            print(json.dumps({"error": str(e)}, sort_keys=True))
        else:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
