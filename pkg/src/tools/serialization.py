"""JSON codecs for every document the command line reads or writes.

Rationals are "p/q" strings everywhere. Documents are dumped with sorted keys
so repeated runs are byte-identical.
"""

import json
import logging
from typing import Any, Dict, List, Optional

from src.engines.cb_rank import (
    SpaceTree,
    admits_expansive_kp,
    admits_hyper_expansive,
    is_tree_document,
    parse_tree,
    tree_to_document,
)
from src.engines.dynamics import (
    FixedPointClass,
    NonHyperbolicPeriodic,
    Verdict,
    compact_invariant_sets,
    hyper_expansive_verdict,
)
from src.engines.errors import CapExceededError, HyperdynError
from src.engines.exact_metric import format_rational, point_set_to_json
from src.engines.hyperspace_oracle import SeparationReport
from src.engines.space_model import SymbolicSystem, parse_space, space_to_document

SYSTEM = "system"
TREE = "tree"

INVARIANT_SET_CAP = 64


def dumps(document: Any) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False)


def load_document(text: str) -> Dict[str, Any]:
    """Parse a space description or a space tree from JSON text.

    Args:
        text: UTF-8 JSON text

    Returns:
        Dictionary with status, message, kind ("system" or "tree") and the parsed value
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        return {"status": "error", "message": f"invalid JSON: {e}", "kind": None, "value": None}

    kind = TREE if is_tree_document(document) else SYSTEM
    try:
        value = parse_tree(document) if kind == TREE else parse_space(document)
    except HyperdynError as e:
        logging.warning(f"[Serialization] Rejected {kind} document: {e}")
        return {"status": "error", "message": str(e), "kind": kind, "value": None}

    return {"status": "success", "message": f"parsed {kind}", "kind": kind, "value": value}


def document_for(value: Any) -> Dict[str, Any]:
    """Input document that reproduces a system or a tree."""
    return tree_to_document(value) if isinstance(value, SpaceTree) else space_to_document(value)


def fixed_point_class_to_json(cls: FixedPointClass) -> Dict[str, Any]:
    document: Dict[str, Any] = {"point": format_rational(cls.point), "label": cls.label}
    if cls.gamma is not None:
        document["gamma"] = format_rational(cls.gamma)
    if cls.witness is not None:
        document["witness"] = {"incoming": cls.witness[0], "outgoing": cls.witness[1]}
    return document


def verdict_to_json(verdict: Verdict) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "result": verdict.result,
        "omega": [format_rational(p) for p in verdict.omega_set],
        "orbit_count": verdict.orbit_count,
    }
    if verdict.delta is not None:
        document["delta"] = format_rational(verdict.delta)
    if isinstance(verdict.reason, NonHyperbolicPeriodic):
        document["reason"] = {"non_hyperbolic_periodic": format_rational(verdict.reason.point)}
    elif verdict.reason is not None:
        document["reason"] = {"infinitely_many_orbits": True}
    return document


def system_report(system: SymbolicSystem) -> Dict[str, Any]:
    """Verdict plus the classification of every periodic point and the invariant-set count."""
    verdict = hyper_expansive_verdict(system)
    document = verdict_to_json(verdict)
    document["classes"] = [
        fixed_point_class_to_json(c) for c in sorted(verdict.classes, key=lambda c: c.point)
    ]
    try:
        document["compact_invariant_sets"] = len(compact_invariant_sets(system, INVARIANT_SET_CAP))
    except CapExceededError as e:
        document["compact_invariant_sets"] = f">={e.lower_bound}"
    return document


def tree_report(tree: SpaceTree) -> Dict[str, Any]:
    admission = admits_hyper_expansive(tree)
    return {
        "admits_hyper_expansive": admission.admits,
        "card_acu": admission.card_acu,
        "limit_degree": admission.limit_degree.to_json(),
        "admits_expansive": admits_expansive_kp(admission.limit_degree),
        "reason": admission.reason,
    }


def analysis_report(kind: str, value: Any) -> Dict[str, Any]:
    return tree_report(value) if kind == TREE else system_report(value)


def separation_report_to_json(report: SeparationReport) -> Dict[str, Any]:
    A, B = report.witness
    return {
        "M": report.M,
        "N": report.N,
        "nested_only": report.nested_only,
        "c": format_rational(report.c),
        "witness": {"A": point_set_to_json(A), "B": point_set_to_json(B)},
        "pairs": report.pairs_examined,
    }


def curve_to_json(reports: List[SeparationReport]) -> List[Dict[str, Any]]:
    return [separation_report_to_json(r) for r in reports]


def parse_rational_list(text: Optional[str]) -> List[str]:
    """Split a comma separated CLI value such as "0,1/2,1"."""
    if not text:
        return []
    return [item.strip() for item in text.split(",") if item.strip()]
