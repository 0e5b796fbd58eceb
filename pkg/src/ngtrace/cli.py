"""Command line front end: ``ngtrace analyze|check|veronese|validate-omega``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from .ehrhart import canonical_module, cone_semigroup
from .io import InputError, classify, load_json, parse_module, parse_polytope, parse_semigroup
from .polytope import LatticePolytope, decomposition_check, floor_remainder_bracket, is_idp
from .semigroup import AffineSemigroup, hilbert_data, veronese_semigroup
from .trace import (
    MonomialModule,
    duality_validate,
    is_gorenstein,
    is_nearly_gorenstein,
    module_stats,
    ng_thresholds,
    polyhedral_module,
    property_report,
    satisfies_natural,
    veronese_module,
)

SCHEMA = 1
PROPERTIES = ("ng", "natural", "gorenstein", "decompose", "idp", "minmult")


@dataclass
class Loaded:
    kind: str
    S: AffineSemigroup
    omega: MonomialModule
    polytope: LatticePolytope | None
    omega_source: str


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text}")


def _k_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    if not out or any(k < 1 for k in out):
        raise argparse.ArgumentTypeError("k values must be positive integers")
    return out


def load(args) -> Loaded:
    data = load_json(args.input)
    kind = classify(data)
    if kind == "polytope":
        P = parse_polytope(data)
        S = cone_semigroup(P)
        return Loaded(kind, S, canonical_module(P, S), P, "interior points")
    if kind == "module":
        W = parse_module(data, assume_cm=args.assume_cm)
        return Loaded(kind, W.ambient, W, None, "fixture")
    S = parse_semigroup(data, args.assume_cm)
    if args.omega:
        fx = load_json(args.omega)
        if "ambient" in fx:
            other = parse_semigroup(fx["ambient"], args.assume_cm)
            if other.generators != S.generators or other.grading != S.grading:
                raise InputError("omega fixture belongs to a different semigroup")
        return Loaded(kind, S, parse_module(fx, S), None, "fixture")
    if not S.is_normal():
        raise InputError("semigroup is not normal: its canonical module must be supplied as a fixture (--omega PATH)")
    return Loaded(kind, S, polyhedral_module(S, (1,) * len(S.facets), "omega"), None, "interior points")


def _vecs(vs) -> list[list[int]]:
    return [list(v) for v in vs]


def _options(args) -> dict:
    return {
        "max_degree": args.max_degree,
        "power_bound": args.power_bound,
        "depth": args.depth,
        "assume_cm": args.assume_cm,
    }


def analyze(args) -> dict:
    L = load(args)
    S, W = L.S, L.omega
    rep = property_report(S, W, args.power_bound)
    hd = hilbert_data(S, assume_cm=args.assume_cm, max_depth=args.max_degree)
    a, rt = module_stats(W)
    out = {
        "schema": SCHEMA,
        "input": L.kind,
        "options": _options(args),
        "semigroup": {
            "generators": _vecs(S.generators),
            "grading": list(S.grading),
            "extremal": _vecs(S.extremal_generators()),
            "semi_standard": S.semi_standard,
        },
        "omega": {"generators": _vecs(W.gens), "source": L.omega_source, "a_invariant": a, "rt": rt},
        "hilbert": asdict(hd) | {"h_vector": list(hd.h_vector)},
        "properties": rep.to_json(),
    }
    if S.semi_standard and rep.natural:
        th = ng_thresholds(S, W)
        out["thresholds"] = asdict(th)
    if L.polytope is not None:
        P = L.polytope
        tri = floor_remainder_bracket(P)
        dec = decomposition_check(P)
        out["polytope"] = {
            "vertices": _vecs(P.vertices),
            "codegree": tri.codegree,
            "floor": None if tri.floor is None else _vecs(tri.floor.vertices),
            "remainder": None if tri.remainder is None else _vecs(tri.remainder.vertices),
            "bracket": _vecs(tri.bracket.vertices),
            "decomposition": dec.holds,
            "idp": is_idp(P),
        }
    return out


def check(args) -> tuple[bool, str]:
    L = load(args)
    S, W, prop = L.S, L.omega, args.property
    if prop == "ng":
        ok, missing = is_nearly_gorenstein(S, W)
        return ok, "" if ok else "missing=" + " ".join(str(tuple(m)) for m in missing)
    if prop == "natural":
        ok, missing = satisfies_natural(S, W)
        return ok, "" if ok else "missing=" + " ".join(str(tuple(m)) for m in missing)
    if prop == "gorenstein":
        ok = is_gorenstein(W)
        return ok, "" if ok else f"omega_generators={len(W.gens)}"
    if prop == "minmult":
        hd = hilbert_data(S, assume_cm=args.assume_cm, max_depth=args.max_degree)
        return hd.minimal_multiplicity, f"e={hd.multiplicity} embdim={hd.embdim} dim={hd.dim}"
    if L.polytope is None:
        raise InputError(f"property {prop} applies only to polytope inputs")
    if prop == "decompose":
        dec = decomposition_check(L.polytope)
        if dec.holds:
            return True, ""
        return False, "remainder is empty" if dec.remainder is None else "bracket+remainder is a proper subset"
    ok = is_idp(L.polytope)
    return ok, ""


def veronese(args) -> dict:
    L = load(args)
    S, W = L.S, L.omega
    rows = []
    for k in args.k:
        Sk = veronese_semigroup(S, k)
        Wk = veronese_module(W, k, Sk)
        nat, miss_nat = satisfies_natural(Sk, Wk) if Sk.semi_standard else (None, [])
        ng, miss_ng = is_nearly_gorenstein(Sk, Wk)
        rows.append({"k": k, "natural": nat, "nearly_gorenstein": ng,
                     "missing": _vecs(miss_ng), "extremal_missing": _vecs(miss_nat)})
    out = {"schema": SCHEMA, "input": L.kind, "options": _options(args), "rows": rows}
    if S.semi_standard:
        out["thresholds"] = asdict(ng_thresholds(S, W))
    return out


def validate_omega(args) -> tuple[bool, dict]:
    L = load(args)
    S, W = L.S, L.omega
    a, _ = module_stats(W)
    depth = args.depth if args.depth is not None else max(20, 2 * (abs(a) + S.rank + 1))
    ok = duality_validate(S, W, depth)
    return ok, {"schema": SCHEMA, "duality": ok, "depth": depth, "generators": _vecs(W.gens)}


def _text(obj, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            lines.extend(_text(v, f"{prefix}{k}." if isinstance(v, dict) else f"{prefix}{k}"))
    elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
        for i, v in enumerate(obj):
            lines.extend(_text(v, f"{prefix}[{i}]."))
    else:
        lines.append(f"{prefix.rstrip('.')}: {json.dumps(obj)}")
    return lines


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=1, sort_keys=False))
    else:
        print("\n".join(_text(obj)))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ngtrace", description="Trace-ideal verdicts for affine semigroup and Ehrhart rings")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", required=True, help="polytope, semigroup or module fixture JSON")
        sp.add_argument("--omega", help="canonical module fixture for a semigroup input")
        sp.add_argument("--max-degree", type=int, default=400, help="ceiling for degree scans")
        sp.add_argument("--power-bound", type=int, default=32, help="power search bound for punctured-spectrum witnesses")
        sp.add_argument("--depth", type=int, default=None, help="duality check depth")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--assume-cm", type=_bool, default=True, help="treat the ring as Cohen-Macaulay")

    common(sub.add_parser("analyze", help="full property report"))
    c = sub.add_parser("check", help="decide one property")
    common(c)
    c.add_argument("--property", required=True, choices=PROPERTIES)
    v = sub.add_parser("veronese", help="verdicts for Veronese subrings")
    common(v)
    v.add_argument("--k", type=_k_list, default=[1, 2, 3], help="comma separated list, ranges like 1-3 allowed")
    common(sub.add_parser("validate-omega", help="duality check of a canonical module"))
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            _emit(analyze(args), args.format)
            return 0
        if args.command == "check":
            ok, detail = check(args)
            print(f"{args.property}: {'holds' if ok else 'fails'}" + (f" {detail}" if detail else ""))
            return 0 if ok else 3
        if args.command == "veronese":
            _emit(veronese(args), args.format)
            return 0
        ok, out = validate_omega(args)
        _emit(out, args.format)
        return 0 if ok else 3
    except AssertionError as exc:
        print(f"error: property consistency violated: {exc}", file=sys.stderr)
        return 2
    except (InputError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
