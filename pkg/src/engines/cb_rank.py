"""Cantor-Bendixson machinery on finite-depth space trees.

A SpaceTree is a finite list of root nodes. Every node may carry sequences
converging to it from one side; the children of a sequence share a
NodeTemplate whose own sequences are written in normalised coordinates and
mapped affinely onto [child, adjacent sibling] when a child is instantiated.
A sequence without a child_template is finite: it holds only the children
listed in head_templates.

The derived set (acu) keeps exactly the nodes that own an infinite sequence,
so every derivation peels one layer of templates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Set, Tuple

from src.engines.errors import RankConsistencyError, ResourceBoundError, TreeValidationError
from src.engines.exact_metric import PointSet, consecutive_pairs, format_rational, parse_rational
from src.engines.space_model import (
    Generator,
    Harmonic,
    generator_from_json,
    generator_to_json,
)
from src.tools.schema_tools import TREE_SCHEMA, validate_document

MAX_ADJACENT_DEPTH = 6
MAX_ADJACENT_TAIL = 64
MAX_REALIZED_POINTS = 500_000

LEFT = "left"
RIGHT = "right"


# ---------------------------------------------------------------------------
# Ordinals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrdinalDescriptor:
    kind: str  # "finite" | "omega_family"
    k: Optional[int] = None

    @classmethod
    def finite(cls, k: int) -> "OrdinalDescriptor":
        if k < 0:
            raise ValueError("finite ordinals are nonnegative")
        return cls("finite", k)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def to_json(self):
        return self.k if self.is_finite else "omega"


OMEGA_FAMILY = OrdinalDescriptor("omega_family")


def admits_expansive_kp(d: OrdinalDescriptor) -> bool:
    """Expansive homeomorphisms exist iff the limit degree is not a limit ordinal.

    Every finite degree qualifies; the adjacent-example family has degree omega.
    """
    return d.is_finite


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NodeTemplate:
    attached: Tuple["Sequence", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not any(s.is_infinite for s in self.attached)


LEAF = NodeTemplate()


@dataclass(frozen=True)
class Sequence:
    side: str
    generator: Generator
    truncate_at: int
    start: int = 1
    head_templates: Tuple[Optional[NodeTemplate], ...] = ()
    child_template: Optional[NodeTemplate] = LEAF

    @property
    def is_infinite(self) -> bool:
        return self.child_template is not None

    def template_at(self, m: int) -> Optional[NodeTemplate]:
        """Template of the child at index m, or None when there is no such child."""
        offset = m - self.start
        if offset < 0:
            return None
        if offset < len(self.head_templates):
            return self.head_templates[offset]
        return self.child_template

    def indices(self, M: int) -> Iterator[int]:
        """Indices of the realised children, at most min(M, truncate_at) per sequence."""
        if self.is_infinite:
            count = min(M, self.truncate_at)
            stop = self.start + count
        else:
            stop = self.start + len(self.head_templates)
        for m in range(self.start, stop):
            if self.template_at(m) is not None:
                yield m


@dataclass(frozen=True)
class Node:
    value: Fraction
    attached: Tuple[Sequence, ...] = ()

    @property
    def is_isolated(self) -> bool:
        return not any(s.is_infinite for s in self.attached)


@dataclass(frozen=True)
class SpaceTree:
    roots: Tuple[Node, ...]
    metadata: Dict[str, object] = field(default_factory=dict, compare=False)

    @property
    def is_empty(self) -> bool:
        return not self.roots


def _sibling(generator: Generator, m: int, side: str) -> Optional[Fraction]:
    """Generator term next to index m on the given side of term m."""
    center = generator.term(m)
    for neighbour in (m - 1, m + 1):
        if neighbour < 1:
            continue
        value = generator.term(neighbour)
        if (value > center) == (side == RIGHT):
            return value
    return None


def _place(template_sequence: Sequence, child: Fraction, sibling: Fraction, truncate_at: int) -> Sequence:
    """Map a normalised sequence onto [child, sibling]: limit -> child, reference -> sibling."""
    generator = template_sequence.generator
    lo, hi = generator.limit, generator.reference
    scale = (sibling - child) / (hi - lo)
    placed = generator.transform(lambda x: child + scale * (x - lo))
    return Sequence(
        side=template_sequence.side,
        generator=placed,
        truncate_at=min(template_sequence.truncate_at, truncate_at),
        start=template_sequence.start,
        head_templates=template_sequence.head_templates,
        child_template=template_sequence.child_template,
    )


def child_node(sequence: Sequence, m: int, template: Optional[NodeTemplate] = None) -> Node:
    """Concrete node for index m of a concrete sequence."""
    template = template if template is not None else sequence.template_at(m)
    value = sequence.generator.term(m)
    attached = []
    for template_sequence in (template.attached if template else ()):
        sibling = _sibling(sequence.generator, m, template_sequence.side)
        if sibling is None:
            raise TreeValidationError(
                f"child {format_rational(value)} has no sibling on the {template_sequence.side}; "
                "give it a head template without that sequence"
            )
        attached.append(_place(template_sequence, value, sibling, sequence.truncate_at))
    return Node(value, tuple(attached))


# ---------------------------------------------------------------------------
# Derived sets and limit degree
# ---------------------------------------------------------------------------


def _derive_template(template: Optional[NodeTemplate]) -> Optional[NodeTemplate]:
    if template is None or template.is_leaf:
        return None
    derived = tuple(s for s in (_derive_sequence(s) for s in template.attached) if s is not None)
    return NodeTemplate(derived)


def _derive_sequence(sequence: Sequence) -> Optional[Sequence]:
    child = _derive_template(sequence.child_template)
    heads = tuple(_derive_template(t) for t in sequence.head_templates)
    if child is None and all(h is None for h in heads):
        return None
    return Sequence(
        side=sequence.side,
        generator=sequence.generator,
        truncate_at=sequence.truncate_at,
        start=sequence.start,
        head_templates=heads,
        child_template=child,
    )


def derived_set(tree: SpaceTree) -> SpaceTree:
    """Tree of the accumulation points of the realised space.

    A node survives iff it owns an infinite sequence. Survival is decided on
    the input tree; sequences then keep only their surviving children and
    disappear when none are left, while their owner stays.
    """
    roots = []
    for node in tree.roots:
        if node.is_isolated:
            continue
        attached = tuple(s for s in (_derive_sequence(s) for s in node.attached) if s is not None)
        roots.append(Node(node.value, attached))
    return SpaceTree(tuple(roots), dict(tree.metadata))


def iterated_derived_sets(tree: SpaceTree, limit: int = 64) -> List[SpaceTree]:
    """acu^0 = X, acu^1, ... up to and including the first empty tree."""
    stages = [tree]
    while not stages[-1].is_empty:
        if len(stages) > limit:
            raise ResourceBoundError(f"derived sets did not vanish after {limit} iterations")
        stages.append(derived_set(stages[-1]))
    return stages


def limit_degree(tree: SpaceTree) -> OrdinalDescriptor:
    """Last lambda with acu^lambda nonempty (acu^0 = X, so finite trees give 0)."""
    if tree.is_empty:
        raise TreeValidationError("limit degree of an empty tree is undefined")
    stages = iterated_derived_sets(tree)
    return OrdinalDescriptor.finite(len(stages) - 2)


def cardinality(tree: SpaceTree) -> Optional[int]:
    """Number of realised points, or None when the tree has an infinite sequence."""
    total = 0
    stack: List[Node] = list(tree.roots)
    while stack:
        node = stack.pop()
        total += 1
        for sequence in node.attached:
            if sequence.is_infinite:
                return None
            stack.extend(child_node(sequence, m) for m in sequence.indices(0))
    return total


@dataclass(frozen=True)
class AdmissionReport:
    admits: bool
    card_acu: Optional[int]
    limit_degree: OrdinalDescriptor
    reason: str


def admits_hyper_expansive(tree: SpaceTree) -> AdmissionReport:
    """A countable compact space admits a hyper-expansive homeomorphism iff
    it is finite or has finitely many, and at least two, accumulation points.
    """
    acu = derived_set(tree)
    card = cardinality(acu)
    degree = limit_degree(tree)

    if acu.is_empty:
        admits, reason = True, "finite space"
    elif card is None:
        admits, reason = False, "infinitely many accumulation points"
    elif card == 1:
        admits, reason = False, "exactly one accumulation point"
    else:
        admits, reason = True, f"{card} accumulation points"

    # omega-family spaces have infinitely many accumulation points
    by_degree = degree.is_finite and degree.k <= 1 and card != 1
    if by_degree != admits:
        raise RankConsistencyError(
            f"admissibility mismatch: cardinality rule says {admits}, degree rule says {by_degree}"
        )
    logging.debug(f"[CB] admits_hyper_expansive={admits} ({reason}), degree={degree.to_json()}")
    return AdmissionReport(admits, card, degree, reason)


# ---------------------------------------------------------------------------
# Realisation and adjacency
# ---------------------------------------------------------------------------


def _walk(tree: SpaceTree, M: int) -> Iterator[Tuple[Node, int]]:
    """Every realised node with its depth in the tree."""
    stack: List[Tuple[Node, int]] = [(node, 0) for node in tree.roots]
    seen = 0
    while stack:
        node, depth = stack.pop()
        seen += 1
        if seen > MAX_REALIZED_POINTS:
            raise ResourceBoundError(f"realisation exceeds {MAX_REALIZED_POINTS} points")
        yield node, depth
        for sequence in node.attached:
            for m in sequence.indices(M):
                stack.append((child_node(sequence, m), depth + 1))


def realize_tree(tree: SpaceTree, M: int) -> PointSet:
    """Finite realisation keeping at most M children per sequence."""
    values = [node.value for node, _ in _walk(tree, M)]
    points = PointSet.of(values)
    if len(points) != len(values):
        raise TreeValidationError("realised points are not pairwise distinct")
    return points


def accumulation_sides(tree: SpaceTree, M: int) -> Dict[Fraction, Set[str]]:
    """For every realised point, the sides from which the true space accumulates at it."""
    sides: Dict[Fraction, Set[str]] = {}
    for node, _ in _walk(tree, M):
        sides[node.value] = {s.side for s in node.attached if s.is_infinite}
    return sides


def adjacent_pairs(A: PointSet) -> List[Tuple[Fraction, Fraction]]:
    """Consecutive pairs of A; on windows these are relative to the truncation."""
    if len(A) < 2:
        return []
    return consecutive_pairs(A.points)


def true_adjacent_pairs(tree: SpaceTree, M: int) -> List[Tuple[Fraction, Fraction]]:
    """Window pairs that stay adjacent in the infinite space.

    A pair is dropped when the space accumulates at its left end from the
    right or at its right end from the left; the missing tail points sit there.
    """
    sides = accumulation_sides(tree, M)
    window = PointSet.of(sides)
    return [
        (a, b)
        for a, b in adjacent_pairs(window)
        if RIGHT not in sides[a] and LEFT not in sides[b]
    ]


def contains_sequence_within(tree: SpaceTree, lo: Fraction, hi: Fraction, window: int = 4) -> bool:
    """True iff some node of the tree has an infinite sequence whose tail lies in [lo, hi]."""
    for node, _ in _walk(tree, window):
        for sequence in node.attached:
            if not sequence.is_infinite:
                continue
            if sequence.side == RIGHT and lo <= node.value < hi:
                return True
            if sequence.side == LEFT and lo < node.value <= hi:
                return True
    return False


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------


def one_point_compactification_tree(M: int = 64) -> SpaceTree:
    """{0} together with {1/m : m >= 1}."""
    return SpaceTree((Node(Fraction(0), (Sequence(RIGHT, Harmonic(Fraction(0), Fraction(1)), M),)),))


def finite_tree(values) -> SpaceTree:
    return SpaceTree(tuple(Node(Fraction(v)) for v in sorted(set(Fraction(v) for v in values))))


def two_limit_tree(M: int = 64) -> SpaceTree:
    """Limits 0 and 1 with a sequence accumulating at each from inside [0, 1]."""
    return SpaceTree(
        (
            Node(Fraction(0), (Sequence(RIGHT, Harmonic(Fraction(0), Fraction(1, 2)), M, start=2),)),
            Node(Fraction(1), (Sequence(LEFT, Harmonic(Fraction(1), Fraction(1, 2)), M, start=2),)),
        )
    )


def _adjacent_template(depth: int, M: int) -> NodeTemplate:
    template = LEAF
    for _ in range(depth):
        template = NodeTemplate((Sequence(RIGHT, Harmonic(Fraction(0), Fraction(1)), M, start=2, child_template=template),))
    return template


def build_adjacent_example(depth: int, tail: int) -> SpaceTree:
    """Tree of the stage-`depth` set of the adjacent-pair accretion.

    Stage 0 is {0} and {1/m}. Stage n inserts {a + (b - a)/m} into every
    adjacent pair (a, b) of the previous stage inside [0, 1/n]; the inserted
    sequence accumulates at a from the right and its m = 1 term repeats b, so
    inserted sequences start at m = 2. The gap right of 1/m lies in [0, 1/n]
    exactly when n <= m - 1, so the child 1/m carries min(depth, m - 1)
    nested layers.
    """
    if depth < 0 or tail < 1:
        raise ValueError("depth must be >= 0 and tail >= 1")
    if depth > MAX_ADJACENT_DEPTH or tail > MAX_ADJACENT_TAIL:
        raise ResourceBoundError(
            f"adjacent example bounded by depth {MAX_ADJACENT_DEPTH} and tail {MAX_ADJACENT_TAIL}"
        )
    heads = tuple(_adjacent_template(m - 1, tail) for m in range(1, depth + 1))
    root_sequence = Sequence(
        RIGHT,
        Harmonic(Fraction(0), Fraction(1)),
        tail,
        head_templates=heads,
        child_template=_adjacent_template(depth, tail),
    )
    stages = [[format_rational(Fraction(0)), format_rational(Fraction(1, n))] for n in range(1, depth + 1)]
    logging.debug(f"[CB] Built adjacent example depth={depth} tail={tail}")
    return SpaceTree((Node(Fraction(0), (root_sequence,)),), {"depth": depth, "tail": tail, "stage_windows": stages})


def adjacent_family_degree() -> OrdinalDescriptor:
    """Limit degree of the union over all stages: the first infinite ordinal."""
    return OMEGA_FAMILY


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _template_to_json(template: NodeTemplate) -> dict:
    return {"attached": [_sequence_to_json(s) for s in template.attached]}


def _sequence_to_json(sequence: Sequence) -> dict:
    document = {
        "side": sequence.side,
        "generator": generator_to_json(sequence.generator),
        "truncate_at": sequence.truncate_at,
    }
    if sequence.start != 1:
        document["start"] = sequence.start
    if sequence.head_templates:
        document["head_templates"] = [
            None if t is None else _template_to_json(t) for t in sequence.head_templates
        ]
    if sequence.child_template is not None:
        document["child_template"] = _template_to_json(sequence.child_template)
    return document


def tree_to_document(tree: SpaceTree) -> dict:
    return {
        "roots": [
            {"value": format_rational(n.value), "attached": [_sequence_to_json(s) for s in n.attached]}
            for n in tree.roots
        ]
    }


def _template_from_json(document: dict) -> NodeTemplate:
    return NodeTemplate(tuple(_sequence_from_json(s) for s in document["attached"]))


def _sequence_from_json(document: dict) -> Sequence:
    return Sequence(
        side=document["side"],
        generator=generator_from_json(document["generator"]),
        truncate_at=document["truncate_at"],
        start=document.get("start", 1),
        head_templates=tuple(
            None if t is None else _template_from_json(t) for t in document.get("head_templates", [])
        ),
        child_template=_template_from_json(document["child_template"]) if "child_template" in document else None,
    )


def _check_sequence(value: Fraction, sequence: Sequence) -> None:
    generator = sequence.generator
    if generator.limit != value:
        raise TreeValidationError(
            f"sequence at {format_rational(value)} converges to {format_rational(generator.limit)}"
        )
    first = generator.term(sequence.start)
    if (first > value) != (sequence.side == RIGHT):
        raise TreeValidationError(
            f"sequence at {format_rational(value)} does not approach from the {sequence.side}"
        )


def validate_tree(tree: SpaceTree, window: int = 3) -> SpaceTree:
    """Check convergence sides and pairwise distinctness on a small realisation."""
    for node, _ in _walk(tree, window):
        for sequence in node.attached:
            _check_sequence(node.value, sequence)
    realize_tree(tree, window)
    return tree


def is_tree_document(document: object) -> bool:
    """Tree documents carry "roots", or are a single bare node with "value"."""
    return isinstance(document, dict) and ("roots" in document or "value" in document)


def parse_tree(document: dict) -> SpaceTree:
    """Parse {"roots": [node, ...]} or a bare node, which becomes a single-root tree."""
    if isinstance(document, dict) and "roots" not in document and "value" in document:
        document = {"roots": [document]}
    report = validate_document(document, TREE_SCHEMA)
    if report["status"] == "error":
        raise TreeValidationError(report["message"])
    try:
        roots = tuple(
            Node(parse_rational(n["value"]), tuple(_sequence_from_json(s) for s in n["attached"]))
            for n in document["roots"]
        )
    except ValueError as e:
        if isinstance(e, TreeValidationError):
            raise
        raise TreeValidationError(str(e)) from e
    return validate_tree(SpaceTree(roots))
