"""Command-line interface: JSON input, text/JSON/DOT output.

Input schema (all labels are strings):

    {
      "points":   ["1", "2"],
      "delta":    ["2"],
      "phi":      {"2": "1"},
      "Y":        ["2"],
      "g_rank":   1,
      "matrices": {"2": [[3]]},
      "flags":    {"purely_infinite": true, ...},   // optional
      "d_description": "O_2"                        // optional
    }

Exit status: 0 success, 1 validation failure, 2 internal assertion
(route or freeness-transfer mismatch).
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

from . import classify, extension, ktheory, ypairs
from .dynsys import PartialDynSys, validate
from .errors import (DyncrossError, ParseError, RouteMismatch,
                     TransferMismatch, ValidationError)

_SCHEMA_FIELDS = {"points", "delta", "phi", "Y", "g_rank", "matrices",
                  "flags", "d_description"}
_FLAG_FIELDS = {"purely_infinite", "ideal_property", "nuclear", "separable",
                "uct", "exact"}


def parse(text: str | bytes):
    """Parse a system document into (PartialDynSys, KZeroField, AlgebraFlags)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    unknown = set(doc) - _SCHEMA_FIELDS
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    for name in ("points", "delta", "phi", "Y", "g_rank", "matrices"):
        if name not in doc:
            raise ParseError(f"missing field {name!r}")
    if (not isinstance(doc["points"], list)
            or not all(isinstance(x, str) and x for x in doc["points"])):
        raise ParseError("'points' must be a list of non-empty strings")
    if not isinstance(doc["phi"], dict):
        raise ParseError("'phi' must be an object mapping labels to labels")
    sys_ = PartialDynSys.make(doc["points"], doc["delta"], doc["phi"], doc["Y"])
    rank = doc["g_rank"]
    if not isinstance(rank, int) or rank < 0:
        raise ParseError("'g_rank' must be a non-negative integer")
    if not isinstance(doc["matrices"], dict):
        raise ParseError("'matrices' must be an object")
    mats = {}
    for label, rows in doc["matrices"].items():
        if label not in sys_.domain_set:
            raise ParseError(f"matrix given for non-domain point {label!r}")
        try:
            mats[label] = ktheory.IntMatrix.make(rows, rank, rank)
        except (ValueError, TypeError) as exc:
            raise ParseError(f"matrix at {label!r}: {exc}") from exc
    field = ktheory.KZeroField.make(rank, mats)
    missing = [x for x in sys_.domain if x not in field.matrix_map]
    if missing:
        raise ParseError(f"no K0 matrix for domain points {missing}")
    flags_doc = doc.get("flags", {})
    if not isinstance(flags_doc, dict) or set(flags_doc) - _FLAG_FIELDS:
        raise ParseError("'flags' must be an object with boolean algebra flags")
    flags = classify.AlgebraFlags(**{k: bool(v) for k, v in flags_doc.items()})
    return sys_, field, flags


def serialize(sys_: PartialDynSys, field: ktheory.KZeroField,
              flags: classify.AlgebraFlags) -> str:
    doc = {
        "points": list(sys_.points),
        "delta": list(sys_.domain),
        "phi": dict(sys_.phi),
        "Y": list(sys_.relative_set),
        "g_rank": field.rank,
        "matrices": {x: [list(row) for row in m.entries]
                     for x, m in field.matrices},
        "flags": flags.to_json(),
    }
    return json.dumps(doc, indent=2)


def hasse_dot(lattice: ypairs.IdealLattice) -> str:
    def label(p: ypairs.YPair) -> str:
        return "{%s} ; {%s}" % (",".join(p.V), ",".join(p.Vprime))

    lines = ["digraph ideal_lattice {"]
    for i, p in enumerate(lattice.nodes):
        lines.append(f'  n{i} [label="{label(p)}"];')
    for lo, hi in lattice.hasse_edges:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parse_ypair(spec: str) -> ypairs.YPair:
    if ";" not in spec:
        raise ParseError("--ypair must look like 'a,b;b' (V and V' split by ';')")
    v, vp = spec.split(";", 1)
    split = lambda s: [t for t in (u.strip() for u in s.split(",")) if t]
    return ypairs.YPair.make(split(v), split(vp))


def _groups_json(pair) -> dict:
    return {"K0": pair[0].to_json() | {"pretty": pair[0].pretty()},
            "K1": pair[1].to_json() | {"pretty": pair[1].pretty()}}


def _cmd_validate(args, sys_, field, flags) -> str:
    validate(sys_)
    if args.format == "json":
        return json.dumps({"valid": True}) + "\n"
    return "ok\n"


def _cmd_ideals(args, sys_, field, flags) -> str:
    lattice = ypairs.enumerate_Y_pairs(sys_)
    if args.format == "dot":
        return hasse_dot(lattice)
    nodes = [{"V": list(p.V), "Vprime": list(p.Vprime)} for p in lattice.nodes]
    if args.format == "json":
        return json.dumps({"node_count": len(nodes), "nodes": nodes,
                           "hasse_edges": [list(e) for e in lattice.hasse_edges]},
                          indent=2) + "\n"
    out = [f"Y-pairs: {len(nodes)}"]
    for p in lattice.nodes:
        out.append("  ({%s}, {%s})" % (",".join(p.V), ",".join(p.Vprime)))
    return "\n".join(out) + "\n"


def _variants(args) -> tuple[str, ...]:
    if args.delta_variant == "both":
        return ("transfer", "literal")
    return (args.delta_variant,)


def _cmd_ktheory(args, sys_, field, flags) -> str:
    variants = _variants(args)
    result: dict = {"variants": list(variants)}
    for variant in variants:
        if args.ypair:
            p = _parse_ypair(args.ypair)
            result[variant] = {
                "quotient": _groups_json(
                    ktheory.k_groups_of_quotient(sys_, field, p, variant)),
                "ideal": _groups_json(
                    ktheory.k_groups_of_ideal(sys_, field, p, variant)),
            }
        else:
            result[variant] = _groups_json(ktheory.k_groups(sys_, field, variant))
    if len(variants) > 1 and result[variants[0]] != result[variants[1]]:
        result["variant_disagreement"] = (
            "the transfer and literal conventions give different K-groups "
            "for this system")
    if args.format == "json":
        return json.dumps(result, indent=2) + "\n"
    out = []
    for variant in variants:
        block = result[variant]
        if "K0" in block:
            out.append(f"{variant}: K0 = {block['K0']['pretty']}, "
                       f"K1 = {block['K1']['pretty']}")
        else:
            out.append(f"{variant}: quotient K0 = {block['quotient']['K0']['pretty']}, "
                       f"K1 = {block['quotient']['K1']['pretty']}; "
                       f"ideal K0 = {block['ideal']['K0']['pretty']}, "
                       f"K1 = {block['ideal']['K1']['pretty']}")
    if "variant_disagreement" in result:
        out.append("note: " + result["variant_disagreement"])
    return "\n".join(out) + "\n"


def _cmd_extension(args, sys_, field, flags) -> str:
    ext = extension.build_extension(sys_, args.depth)
    doc = {
        "depth": ext.depth,
        "levels": [[list(p.coords) for p in lv] for lv in ext.levels],
        "infinite_part": ext.infinite_kind,
        "infinite_points": [p.to_json() for p in ext.infinite_points],
    }
    if args.format == "json":
        return json.dumps(doc, indent=2) + "\n"
    out = [f"depth: {ext.depth}"]
    for n, lv in enumerate(ext.levels):
        out.append(f"X_{n}: " + (" ".join("(" + ",".join(p.coords) + ")"
                                          for p in lv) or "empty"))
    out.append(f"infinite part: {ext.infinite_kind}")
    for p in ext.infinite_points:
        out.append("  cycle (" + ",".join(p.cycle) + ")")
    return "\n".join(out) + "\n"


def _cmd_classify(args, sys_, field, flags) -> str:
    verdicts = {
        "simple": classify.is_simple(sys_).to_json(),
        "kirchberg": classify.is_kirchberg(sys_, flags).to_json(),
        "purely_infinite": classify.pure_infiniteness_report(sys_, flags).to_json(),
        "uniqueness": classify.uniqueness_report(sys_).to_json(),
    }
    if args.format == "json":
        return json.dumps(verdicts, indent=2) + "\n"
    out = []
    for name, v in verdicts.items():
        out.append(f"{name}: {v['holds']}  [{v['citation']}]")
        for h in v["hypotheses"]:
            mark = "+" if h["satisfied"] else "-"
            out.append(f"  {mark} {h['name']}")
    return "\n".join(out) + "\n"


def _cmd_report(args, sys_, field, flags) -> str:
    report = classify.full_report(sys_, field, flags, _variants(args), args.depth)
    if args.format == "json":
        return json.dumps(report, indent=2) + "\n"
    out = [
        "points: " + " ".join(sys_.points),
        "free: %s  topologically free outside Y: %s" % (
            report["freeness"]["free"],
            report["freeness"]["topologically_free_outside_Y"]),
        f"Y-pairs: {report['ideal_lattice']['node_count']}",
    ]
    for variant, groups in report["k_theory"]["whole"].items():
        out.append(f"K-theory ({variant}): K0 = {groups['K0']['pretty']}, "
                   f"K1 = {groups['K1']['pretty']}")
    for name, v in report["verdicts"].items():
        out.append(f"verdict {name}: {v['holds']}")
    return "\n".join(out) + "\n"


_COMMANDS = {
    "validate": _cmd_validate,
    "ideals": _cmd_ideals,
    "ktheory": _cmd_ktheory,
    "extension": _cmd_extension,
    "classify": _cmd_classify,
    "report": _cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyncross",
        description="invariants of crossed products of finite partial "
                    "dynamical systems")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="path to a system document")
        p.add_argument("--format", choices=("text", "json", "dot"),
                       default="text")
        p.add_argument("--delta-variant", dest="delta_variant",
                       choices=("transfer", "literal", "both"),
                       default="both" if name in ("ktheory", "report")
                       else "transfer")
        p.add_argument("--depth", type=int, default=None)
        p.add_argument("--ypair", default=None, help="pair as 'a,b;b'")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.input, encoding="utf-8") as fh:
            sys_, field, flags = parse(fh.read())
        output = _COMMANDS[args.command](args, sys_, field, flags)
    except (RouteMismatch, TransferMismatch) as exc:
        print(f"internal assertion failed: {exc}", file=_sys.stderr)
        return 2
    except (ParseError, ValidationError, DyncrossError, OSError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 1
    _sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
