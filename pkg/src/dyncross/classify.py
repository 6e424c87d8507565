"""Theorem-driven verdicts: simplicity, Kirchberg, pure infiniteness, uniqueness.

Each verdict lists the hypotheses it checked.  Verdicts are three-valued:
"yes", "no", or "not_determined" when a one-directional statement is silent.
Contrapositives are applied only for the biconditional statements (simplicity
and the Kirchberg characterization).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import extension, ktheory, ypairs
from .dynsys import (PartialDynSys, is_free, is_topologically_free,
                     is_topologically_free_outside, periodic_points, validate)


@dataclass(frozen=True)
class AlgebraFlags:
    """User-asserted properties of the coefficient algebra; never inferred."""

    purely_infinite: bool = False
    ideal_property: bool = False
    nuclear: bool = False
    separable: bool = False
    uct: bool = False
    exact: bool = False

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in
                ("purely_infinite", "ideal_property", "nuclear",
                 "separable", "uct", "exact")}


@dataclass(frozen=True)
class Hypothesis:
    name: str
    satisfied: bool
    citation: str


@dataclass(frozen=True)
class Verdict:
    conclusion: str
    holds: str  # yes | no | not_determined
    hypotheses: tuple[Hypothesis, ...]
    citation: str
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.holds == "yes" and not all(h.satisfied for h in self.hypotheses):
            raise ValueError("a 'yes' verdict requires all hypotheses satisfied")

    def to_json(self) -> dict:
        return {
            "conclusion": self.conclusion,
            "holds": self.holds,
            "hypotheses": [{"name": h.name, "satisfied": h.satisfied,
                            "citation": h.citation} for h in self.hypotheses],
            "citation": self.citation,
            "notes": list(self.notes),
        }


def _is_truncated_shift(sys: PartialDynSys) -> bool:
    """Is the map conjugate to i -> i-1 on {1,...,n} (n = 1 allowed)?"""
    n = len(sys.points)
    if len(sys.domain) != n - 1:
        return False
    images = [sys.phi_map[x] for x in sys.domain]
    if len(set(images)) != len(images):
        return False
    return not periodic_points(sys)


def is_simple(sys: PartialDynSys) -> Verdict:
    validate(sys)
    full = sys.relative_set_set == sys.point_set - sys.image()
    if not full:
        return Verdict(
            "the crossed product is simple", "no",
            (Hypothesis("Y equals the complement of the image of the map",
                        False, "relative crossed products are never simple"),),
            "simplicity characterization",
            ("a proper relative set always yields the non-trivial pair (∅, Y-part)",))
    shift = _is_truncated_shift(sys)
    return Verdict(
        "the crossed product is simple", "yes" if shift else "no",
        (Hypothesis("Y equals the complement of the image of the map", True,
                    "simplicity characterization"),
         Hypothesis("the system is a truncated shift (single injective acyclic "
                    "path covering X)", shift, "simplicity characterization")),
        "simplicity characterization")


def is_kirchberg(sys: PartialDynSys, flags: AlgebraFlags) -> Verdict:
    simple = is_simple(sys)
    hyps = (
        Hypothesis("coefficient algebra purely infinite", flags.purely_infinite,
                   "Kirchberg characterization"),
        Hypothesis("coefficient algebra nuclear", flags.nuclear,
                   "Kirchberg characterization"),
        Hypothesis("coefficient algebra separable", flags.separable,
                   "Kirchberg characterization"),
        Hypothesis("crossed product simple", simple.holds == "yes",
                   "simplicity characterization"),
    )
    flags_ok = flags.purely_infinite and flags.nuclear and flags.separable
    if not flags_ok:
        holds = "not_determined"
    else:
        holds = "yes" if simple.holds == "yes" else "no"
    notes = ()
    if holds == "yes" and flags.uct:
        notes = ("the coefficient algebra satisfies the UCT, hence so does "
                 "the crossed product",)
    return Verdict("the crossed product is a Kirchberg algebra", holds, hyps,
                   "Kirchberg characterization", notes)


def pure_infiniteness_report(sys: PartialDynSys, flags: AlgebraFlags) -> Verdict:
    free = is_free(sys)
    n_pairs = len(ypairs.enumerate_Y_pairs(sys).nodes)
    hyps = [
        Hypothesis("the map is free (no periodic points)", free,
                   "pure infiniteness criterion"),
        Hypothesis("coefficient algebra purely infinite", flags.purely_infinite,
                   "pure infiniteness criterion"),
    ]
    notes = []
    if free:
        notes.append("all ideals of the crossed product are gauge-invariant")
        notes.append(f"the ideal lattice is finite ({n_pairs} Y-pairs)")
    route = None
    if free and flags.purely_infinite:
        if flags.separable:
            route = "finite X is totally disconnected; separability suffices"
            hyps.append(Hypothesis("coefficient algebra separable", True,
                                   "pure infiniteness, totally disconnected case"))
        elif flags.ideal_property:
            route = "the ideal property passes to the crossed product"
            hyps.append(Hypothesis("coefficient algebra has the ideal property",
                                   True, "pure infiniteness criterion"))
    if route is not None:
        notes.append(route)
        holds = "yes"
    else:
        holds = "not_determined"
    return Verdict("the crossed product is purely infinite with the ideal property",
                   holds, tuple(hyps), "pure infiniteness criterion", tuple(notes))


def uniqueness_report(sys: PartialDynSys) -> Verdict:
    ok, witnesses = is_topologically_free_outside(sys)
    notes = ["the structure map on the primitive spectrum is injective by "
             "standing assumption"]
    if not ok:
        notes.append("offending orbits: " +
                     ", ".join("(" + ",".join(c) + ")" for c in witnesses))
    return Verdict(
        "injective covariant representations are faithful (uniqueness property)",
        "yes" if ok else "no",
        (Hypothesis("the map is topologically free outside Y", ok,
                    "uniqueness criterion"),),
        "uniqueness criterion", tuple(notes))


def full_report(sys: PartialDynSys, field_: ktheory.KZeroField,
                flags: AlgebraFlags, variants: tuple[str, ...] = ("transfer",),
                depth: int | None = None) -> dict:
    """Aggregate everything into one deterministic JSON-ready structure."""
    validate(sys)
    lattice = ypairs.enumerate_Y_pairs(sys)
    ext = extension.build_extension(sys, depth)
    transfer_report = extension.check_freeness_transfer(sys)

    def groups_json(pair):
        return {"K0": pair[0].to_json() | {"pretty": pair[0].pretty()},
                "K1": pair[1].to_json() | {"pretty": pair[1].pretty()}}

    nodes = []
    for p in lattice.nodes:
        node = {"V": list(p.V), "Vprime": list(p.Vprime), "k_theory": {}}
        for variant in variants:
            node["k_theory"][variant] = {
                "quotient": groups_json(
                    ktheory.k_groups_of_quotient(sys, field_, p, variant)),
                "ideal": groups_json(
                    ktheory.k_groups_of_ideal(sys, field_, p, variant)),
            }
        nodes.append(node)

    whole = {variant: groups_json(ktheory.k_groups(sys, field_, variant))
             for variant in variants}
    report = {
        "system": {
            "points": list(sys.points),
            "domain": list(sys.domain),
            "phi": dict(sys.phi),
            "Y": list(sys.relative_set),
        },
        "freeness": {
            "topologically_free": is_topologically_free(sys),
            "free": is_free(sys),
            "topologically_free_outside_Y":
                transfer_report.base_topologically_free_outside,
            "extension_topologically_free":
                transfer_report.extension_topologically_free,
        },
        "k_theory": {"variants": list(variants), "whole": whole},
        "ideal_lattice": {
            "node_count": len(lattice.nodes),
            "nodes": nodes,
            "hasse_edges": [list(e) for e in lattice.hasse_edges],
        },
        "extension": {
            "depth": ext.depth,
            "level_sizes": [len(lv) for lv in ext.levels],
            "infinite_part": ext.infinite_kind,
            "infinite_points": [p.to_json() for p in ext.infinite_points],
        },
        "verdicts": {
            "simple": is_simple(sys).to_json(),
            "kirchberg": is_kirchberg(sys, flags).to_json(),
            "purely_infinite": pure_infiniteness_report(sys, flags).to_json(),
            "uniqueness": uniqueness_report(sys).to_json(),
        },
        "flags": flags.to_json(),
    }
    if len(variants) > 1 and len({str(whole[v]) for v in variants}) > 1:
        report["k_theory"]["variant_disagreement"] = True
    return report
