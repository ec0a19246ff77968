"""
Report rendering

Every command result becomes a plain dict (the --json report) and a short
human-readable text. Subsets are always rendered as generator-name lists in
index order. No verdict is computed here.
"""

import json
from typing import Any, Dict, List, Optional

from .classify import SubsetClass
from .diagram import INFINITY, CoxeterMatrix, GenSet
from .racg import AffJoinSet, GammaStructure, GraphConditionResult, SimpleGraph
from .relhyp import (
    Core,
    Decision,
    IsolatedFlatsResult,
    LemmaAffResult,
    PairCore,
    PeripheralFamily,
    VerificationReport,
)

Report = Dict[str, Any]


def names(matrix: CoxeterMatrix, subset: Optional[GenSet]) -> Optional[List[str]]:
    return None if subset is None else matrix.names_of(subset)


def brace(items: Optional[List[str]]) -> str:
    return "none" if items is None else "{" + ", ".join(items) + "}"


def flag(value: bool) -> str:
    return "true" if value else "false"


def verdict(value: bool) -> str:
    return "pass" if value else "fail"


def to_json(report: Report) -> str:
    """Canonical JSON: sorted keys, two-space indent, UTF-8 text"""
    return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


# ============================================================================
# Classification
# ============================================================================

def subset_class_report(matrix: CoxeterMatrix, result: SubsetClass) -> Report:
    return {
        "subset": names(matrix, result.subset),
        "spherical": result.spherical,
        "irreducible": result.irreducible,
        "irreducible_affine": result.irreducible_affine,
        "affine": result.affine,
        "euclidean": result.euclidean,
        "minimal_hyperbolic": result.minimal_hyperbolic,
        "components": [
            {"members": names(matrix, component), "type": name}
            for component, name in result.matched_components
        ],
    }


def classification_report(
    matrix: CoxeterMatrix,
    result: SubsetClass,
    families: Optional[Dict[str, List[GenSet]]] = None,
) -> Report:
    report = subset_class_report(matrix, result)
    for key, subsets in (families or {}).items():
        report[key] = [names(matrix, s) for s in subsets]
    return report


def classification_text(report: Report) -> str:
    lines = [f"subset: {brace(report['subset'])}"]
    for key in ("spherical", "irreducible", "irreducible_affine", "affine", "euclidean",
                "minimal_hyperbolic"):
        lines.append(f"{key}: {flag(report[key])}")
    parts = [f"{brace(c['members'])} {c['type']}" for c in report["components"]]
    lines.append("components: " + (", ".join(parts) if parts else "none"))
    for key in ("irreducible_affine_subsets", "maximal_euclidean_subsets",
                "minimal_hyperbolic_subsets"):
        if key in report:
            lines.append(f"{key}: " + (", ".join(brace(s) for s in report[key]) or "none"))
    return "\n".join(lines) + "\n"


def perp_report(matrix: CoxeterMatrix, subset: GenSet, orthogonal: GenSet, spherical: bool) -> Report:
    return {
        "subset": names(matrix, subset),
        "perp": names(matrix, orthogonal),
        "perp_spherical": spherical,
    }


def perp_text(report: Report) -> str:
    return (
        f"subset: {brace(report['subset'])}\n"
        f"perp: {brace(report['perp'])}\n"
        f"perp_spherical: {flag(report['perp_spherical'])}\n"
    )


def moussong_report(hyperbolic: bool) -> Report:
    return {"hyperbolic": hyperbolic}


def moussong_text(report: Report) -> str:
    return f"hyperbolic: {flag(report['hyperbolic'])}\n"


# ============================================================================
# Relative hyperbolicity
# ============================================================================

def core_report(matrix: CoxeterMatrix, core: Core) -> Report:
    report: Report = {
        "members": names(matrix, core.members),
        "kind": "affine" if core.is_affine else "pair",
    }
    if isinstance(core.provenance, PairCore):
        report["first"] = names(matrix, core.provenance.first)
        report["second"] = names(matrix, core.provenance.second)
    return report


def verification_report(matrix: CoxeterMatrix, report: VerificationReport) -> Report:
    pair = report.violating_pair
    return {
        "rh1": {
            "pass": report.rh1,
            "coverage": [
                dict(core_report(matrix, check.core), witness=names(matrix, check.witness))
                for check in report.coverage
            ],
            "violating_core": (
                None if report.violating_core is None
                else core_report(matrix, report.violating_core)
            ),
        },
        "rh2": {
            "pass": report.rh2,
            "intersections": [
                {
                    "first": names(matrix, check.first),
                    "second": names(matrix, check.second),
                    "intersection": names(matrix, check.intersection),
                    "spherical": check.spherical,
                }
                for check in report.intersections
            ],
            "violating_pair": None if pair is None else [names(matrix, pair[0]), names(matrix, pair[1])],
        },
    }


def family_report(matrix: CoxeterMatrix, family: PeripheralFamily) -> Report:
    report: Report = {"classes": [names(matrix, c) for c in family.classes]}
    if family.verification is not None:
        report["verification"] = verification_report(matrix, family.verification)
    return report


def _classes_line(report: Report) -> str:
    classes = report["classes"]
    return "classes: " + (", ".join(brace(c) for c in classes) if classes else "none")


def _verification_lines(report: Report) -> List[str]:
    verification = report.get("verification")
    if verification is None:
        return []
    rh1, rh2 = verification["rh1"], verification["rh2"]
    first = f"RH1: {verdict(rh1['pass'])}"
    if rh1["violating_core"] is not None:
        first += f" (core {brace(rh1['violating_core']['members'])} not covered)"
    second = f"RH2: {verdict(rh2['pass'])}"
    if rh2["violating_pair"] is not None:
        a, b = rh2["violating_pair"]
        second += f" ({brace(a)} and {brace(b)} meet in a non-spherical set)"
    return [f"{first}, {second}"]


def family_text(report: Report) -> str:
    return "\n".join([_classes_line(report)] + _verification_lines(report)) + "\n"


def decision_report(matrix: CoxeterMatrix, decision: Decision) -> Report:
    return {
        "status": decision.status.value,
        "minimal_family": family_report(matrix, decision.minimal_family),
        "details": list(decision.details),
    }


def decision_text(report: Report) -> str:
    lines = [f"status: {report['status']}", _classes_line(report["minimal_family"])]
    lines += [f"  {line}" for line in report["details"]]
    return "\n".join(lines) + "\n"


def isolated_flats_report(
    matrix: CoxeterMatrix,
    result: IsolatedFlatsResult,
    conditions: LemmaAffResult,
) -> Report:
    return {
        "holds": result.holds,
        "via": result.via,
        "witness": names(matrix, result.witness),
        "family": family_report(matrix, result.family),
        "equivalent_conditions": {
            "maximal_euclidean_valid": conditions.maximal_euclidean_valid,
            "commuting_pairs_euclidean": conditions.commuting_pairs_euclidean,
            "minimal_hyperbolic_perps_spherical": conditions.minimal_hyperbolic_perps_spherical,
        },
        "condition_witnesses": {
            "maximal_euclidean_verification": (
                None if conditions.family_report is None
                else verification_report(matrix, conditions.family_report)
            ),
            "pair_witness": (
                None if conditions.pair_witness is None
                else [names(matrix, part) for part in conditions.pair_witness]
            ),
            "perp_witness": names(matrix, conditions.perp_witness),
        },
    }


def isolated_flats_text(report: Report) -> str:
    lines = [f"isolated_flats: {flag(report['holds'])}", f"via: {report['via']}"]
    if report["witness"] is not None:
        lines.append(f"witness: {brace(report['witness'])}")
    lines.append(_classes_line(report["family"]))
    for key, value in report["equivalent_conditions"].items():
        lines.append(f"{key}: {flag(value)}")
    return "\n".join(lines) + "\n"


# ============================================================================
# Right-angled
# ============================================================================

def racg_report(
    graph: SimpleGraph,
    condition: GraphConditionResult,
    join_sets: List[AffJoinSet],
    structures: List[GammaStructure],
) -> Report:
    vertex = graph.vertex_names
    return {
        "condition_ii": {
            "holds": condition.holds,
            "witness": None if condition.witness is None else [vertex[v] for v in condition.witness],
            "common_neighbours": [vertex[v] for v in condition.common_neighbours],
        },
        "join_sets": [
            {
                "pairs": [[vertex[a], vertex[b]] for a, b in join.pairs],
                "members": [vertex[v] for v in join.members],
                "maximal": join.maximal,
                "gamma": structure.render(),
            }
            for join, structure in zip(join_sets, structures)
        ],
    }


def racg_text(report: Report) -> str:
    condition = report["condition_ii"]
    lines = [f"condition_ii: {flag(condition['holds'])}"]
    if condition["witness"] is not None:
        lines.append(
            f"witness: {brace(condition['witness'])} "
            f"common neighbours {brace(condition['common_neighbours'])}"
        )
    lines.append(f"join_sets: {len(report['join_sets'])}")
    for join in report["join_sets"]:
        marker = " (maximal)" if join["maximal"] else ""
        lines.append(f"  {brace(join['members'])}{marker}: {join['gamma']}")
    return "\n".join(lines) + "\n"


# ============================================================================
# DOT
# ============================================================================

def dot_quote(text: str) -> str:
    """A double-quoted DOT identifier"""
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(matrix: CoxeterMatrix) -> str:
    """Coxeter diagram in DOT; no edge for order 2, '∞' for infinity"""
    template = """graph coxeter {
  node [shape=circle, fontname="Helvetica", fontsize=10] ;

  // The generators
  %s

  // The edges
  %s
}
"""
    nodes = [f"{dot_quote(name)} ;" for name in matrix.names]
    edges = []
    for i in range(matrix.n):
        for j in range(i + 1, matrix.n):
            m = matrix.label(i, j)
            if m == 2:
                continue
            label = "∞" if m == INFINITY else str(m)
            first, second = dot_quote(matrix.names[i]), dot_quote(matrix.names[j])
            edges.append(f'{first} -- {second} [label="{label}"] ;')
    return template % ("\n  ".join(nodes), "\n  ".join(edges))
