"""Orbit graphs of symbolic systems.

Limit points are double circles labelled A (attractor), R (repeller) or
N (neither); periodic-chain points are circles labelled I. Every bi-infinite
chain shows its points at k = -3..3 between two ellipsis nodes, the forward
end pointing into the omega anchor and the backward end (dashed) into the
alpha anchor. Nodes and edges are emitted in a fixed order.
"""

from typing import Any, Dict, List

import graphviz

from src.engines.dynamics import ATTRACTOR, BOTH_ISOLATED, NEITHER, REPELLER, classify_periodic_point
from src.engines.exact_metric import format_rational
from src.engines.space_model import PointRef, SymbolicSystem, point_at

SHOWN_INDICES = range(-3, 4)

_LETTERS = {ATTRACTOR: "A", REPELLER: "R", NEITHER: "N", BOTH_ISOLATED: "I"}


def _chain_node(chain_id: str, k: int) -> str:
    return f"{chain_id}[{k}]"


def orbit_graph(system: SymbolicSystem) -> Dict[str, Any]:
    """Nodes and edges of the orbit graph as plain data."""
    nodes: List[Dict[str, str]] = []
    edges: List[Dict[str, str]] = []

    for lp in system.limits:
        letter = _LETTERS[classify_periodic_point(system, PointRef("limit", lp.id)).label]
        name = format_rational(lp.value)
        nodes.append({"id": name, "label": f"{name} ({letter})", "shape": "doublecircle"})
    for lp in system.limits:
        target = format_rational(system.limit(system.limit_perm[lp.id]).value)
        edges.append({"from": format_rational(lp.value), "to": target, "kind": "map"})

    for chain in system.periodic_chains:
        for i, value in enumerate(chain.cycle):
            nodes.append({"id": _chain_node(chain.id, i), "label": f"{format_rational(value)} (I)", "shape": "circle"})
        period = len(chain.cycle)
        for i in range(period):
            edges.append({"from": _chain_node(chain.id, i), "to": _chain_node(chain.id, (i + 1) % period), "kind": "map"})

    for chain in system.bi_infinite_chains:
        before, after = f"{chain.id}[-inf]", f"{chain.id}[+inf]"
        nodes.append({"id": before, "label": "...", "shape": "plaintext"})
        for k in SHOWN_INDICES:
            nodes.append({"id": _chain_node(chain.id, k), "label": format_rational(point_at(chain, k)), "shape": "ellipse"})
        nodes.append({"id": after, "label": "...", "shape": "plaintext"})

        path = [before] + [_chain_node(chain.id, k) for k in SHOWN_INDICES] + [after]
        for source, target in zip(path, path[1:]):
            edges.append({"from": source, "to": target, "kind": "map"})
        edges.append({"from": after, "to": format_rational(system.limit(chain.omega).value), "kind": "omega"})
        edges.append({"from": before, "to": format_rational(system.limit(chain.alpha).value), "kind": "alpha"})

    return {"nodes": nodes, "edges": edges}


def to_dot(system: SymbolicSystem, name: str = "orbits") -> str:
    """DOT source of the orbit graph."""
    graph = orbit_graph(system)
    dot = graphviz.Digraph(name=name, graph_attr={"rankdir": "LR"})
    for node in graph["nodes"]:
        dot.node(node["id"], label=node["label"], shape=node["shape"])
    for edge in graph["edges"]:
        if edge["kind"] == "alpha":
            dot.edge(edge["from"], edge["to"], style="dashed", label="alpha")
        elif edge["kind"] == "omega":
            dot.edge(edge["from"], edge["to"], label="omega")
        else:
            dot.edge(edge["from"], edge["to"])
    return dot.source


def adjacency(system: SymbolicSystem) -> Dict[str, List[str]]:
    """Successor lists keyed by node id, for the JSON export."""
    lists: Dict[str, List[str]] = {}
    graph = orbit_graph(system)
    for node in graph["nodes"]:
        lists[node["id"]] = []
    for edge in graph["edges"]:
        lists[edge["from"]].append(edge["to"])
    return lists
