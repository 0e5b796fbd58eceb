"""JSON formats for polytopes, semigroups and module fixtures."""
from __future__ import annotations

import json
from pathlib import Path

from .polytope import LatticePolytope, facet_presentation
from .semigroup import AffineSemigroup, build_semigroup
from .trace import MonomialModule, validate_module


class InputError(ValueError):
    pass


def load_json(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: top-level JSON value must be an object")
    return data


def _int_rows(rows, what: str) -> list[tuple[int, ...]]:
    out = []
    for r in rows:
        if not isinstance(r, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise InputError(f"{what} must be lists of integers, got {r!r}")
        out.append(tuple(r))
    return out


def parse_polytope(data: dict) -> LatticePolytope:
    # facets in the input, if any, are ignored and recomputed
    return facet_presentation(_int_rows(data["vertices"], "vertices"))


def parse_semigroup(data: dict, assume_cm: bool | None = None) -> AffineSemigroup:
    grading = data.get("grading", "last")
    cm = data.get("assume_cm", True) if assume_cm is None else assume_cm
    return build_semigroup(_int_rows(data["generators"], "generators"), grading, assume_cm=cm)


def parse_module(data: dict, ambient: AffineSemigroup | None = None, assume_cm: bool | None = None) -> MonomialModule:
    if ambient is None:
        if "ambient" not in data:
            raise InputError("module fixture has no ambient semigroup")
        ambient = parse_semigroup(data["ambient"], assume_cm)
    return validate_module(ambient, _int_rows(data["generators"], "module generators"),
                           data.get("kind", "ideal"), data.get("provenance", ""))


def semigroup_json(S: AffineSemigroup) -> dict:
    return {"generators": [list(g) for g in S.generators], "grading": list(S.grading), "assume_cm": S.assume_cm}


def module_json(J: MonomialModule) -> dict:
    return {
        "ambient": semigroup_json(J.ambient),
        "generators": [list(g) for g in J.gens],
        "kind": J.kind,
        "provenance": J.provenance,
    }


def classify(data: dict) -> str:
    if "vertices" in data:
        return "polytope"
    if "ambient" in data:
        return "module"
    if "generators" in data:
        return "semigroup"
    raise InputError("input is neither a polytope, a semigroup nor a module fixture")
