"""Symbolic dynamics of rank-1 systems: periodic points, verdicts and constructions.

Every limit point is periodic (the limits are finitely many and permuted),
points of periodic chains are periodic and isolated, and bi-infinite chain
points are wandering. A system is hyper-expansive iff it has finitely many
orbits (always true here) and every periodic point is an attractor, a
repeller or isolated.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from src.engines.errors import (
    CapExceededError,
    NotHyperExpansiveError,
    NotPeriodicError,
    OracleInputError,
    PointNotInSpaceError,
    ResourceBoundError,
    SpaceValidationError,
)
from src.engines.exact_metric import PointSet, format_rational, is_eps_dense, min_gap
from src.engines.space_model import (
    BiInfiniteChain,
    Harmonic,
    LimitPoint,
    Logistic,
    PeriodicChain,
    PointRef,
    SINGLE_POINT_RADIUS,
    SymbolicSystem,
    build_system,
    isolation_radius,
    realize_window,
)

ATTRACTOR = "attractor"
REPELLER = "repeller"
BOTH_ISOLATED = "both_isolated"
NEITHER = "neither"

HYPER_EXPANSIVE = "hyper_expansive"
NOT = "not"

MAX_SHIFT_PERIOD = 20
MAX_INVARIANT_WINDOW = 16


@dataclass(frozen=True)
class FixedPointClass:
    point: Fraction
    label: str
    gamma: Optional[Fraction] = None
    # chain ids escaping forward into the point and backward out of it
    witness: Optional[Tuple[str, str]] = None

    @property
    def hyperbolic(self) -> bool:
        return self.label != NEITHER


@dataclass(frozen=True)
class NonHyperbolicPeriodic:
    point: Fraction


@dataclass(frozen=True)
class InfinitelyManyOrbits:
    """Reserved: every SymbolicSystem has finitely many chains."""


@dataclass(frozen=True)
class Verdict:
    result: str
    omega_set: Tuple[Fraction, ...]
    orbit_count: int
    delta: Optional[Fraction] = None
    reason: Optional[Union[NonHyperbolicPeriodic, InfinitelyManyOrbits]] = None
    classes: Tuple[FixedPointClass, ...] = field(default=(), compare=False)

    @property
    def is_hyper_expansive(self) -> bool:
        return self.result == HYPER_EXPANSIVE


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def build_theorem2_system(limit_values: Sequence[object]) -> SymbolicSystem:
    """Hyper-expansive homeomorphism on n >= 2 limit points joined by logistic chains.

    Each gap (p_j, p_j+1) holds one chain. For odd j the chain moves right
    (omega anchor p_j+1); for even j it moves left (omega anchor p_j). So p_j
    is a repeller for odd j and an attractor for even j.
    """
    values = [Fraction(v) for v in limit_values]
    if len(values) < 2:
        raise SpaceValidationError("at least two limit values are required")
    for left, right in zip(values, values[1:]):
        if not left < right:
            raise SpaceValidationError("limit values must be strictly increasing")

    limits = [LimitPoint(f"p{j}", v) for j, v in enumerate(values, start=1)]
    chains = []
    for j in range(1, len(values)):
        left, right = limits[j - 1], limits[j]
        if j % 2 == 1:
            chains.append(BiInfiniteChain(f"c{j}", left.id, right.id, Logistic(left.value, right.value)))
        else:
            chains.append(BiInfiniteChain(f"c{j}", right.id, left.id, Logistic(right.value, left.value)))
    system = build_system(limits, chains)
    logging.info(f"[Dynamics] Built alternating system on {len(values)} limit points")
    return system


def build_translation_example() -> SymbolicSystem:
    """{0} and {1/m}: y_k = 1/(2k) for k >= 1, 1/(1 - 2k) for k <= 0, shifted k -> k + 1.

    The map is expansive, but 0 attracts and repels the same chain, so it is
    not hyper-expansive.
    """
    return build_system(
        [LimitPoint("p0", Fraction(0))],
        [BiInfiniteChain("y", "p0", "p0", Harmonic(Fraction(0), Fraction(1)))],
    )


def build_finite_system(cycles: Iterable[Iterable[object]]) -> SymbolicSystem:
    """Finite space: one periodic chain per cycle, points in their cyclic order."""
    chains = [
        PeriodicChain(f"q{i}", tuple(Fraction(v) for v in cycle))
        for i, cycle in enumerate(cycles, start=1)
    ]
    if not chains:
        raise SpaceValidationError("a finite system needs at least one cycle")
    return build_system([], chains)


# ---------------------------------------------------------------------------
# Classification and verdicts
# ---------------------------------------------------------------------------


def _as_ref(system: SymbolicSystem, p: Union[PointRef, Fraction]) -> PointRef:
    if isinstance(p, PointRef):
        system.value(p)
        return p
    try:
        return system.locate(Fraction(p))
    except PointNotInSpaceError as e:
        raise NotPeriodicError(format_rational(Fraction(p))) from e


def periodic_values(system: SymbolicSystem) -> List[Fraction]:
    return sorted(system.value(r) for r in system.periodic_refs())


def _gamma(system: SymbolicSystem, value: Fraction) -> Optional[Fraction]:
    others = [v for v in periodic_values(system) if v != value]
    if not others:
        return None
    return min(abs(v - value) for v in others) / 2


def classify_periodic_point(system: SymbolicSystem, p: Union[PointRef, Fraction]) -> FixedPointClass:
    """Attractor, repeller, isolated or neither, judged on the cycle through p.

    For a limit point in a cycle of period n this is the classification of
    p under f^n: a chain anchored at some point of the cycle is anchored at p
    under the power.
    """
    ref = _as_ref(system, p)
    value = system.value(ref)
    if ref.kind == "chain":
        raise NotPeriodicError(format_rational(value))
    if ref.kind == "periodic":
        return FixedPointClass(value, BOTH_ISOLATED, _gamma(system, value))

    cycle = set(system.limit_cycle(ref.key))
    incoming = [c.id for c in system.bi_infinite_chains if c.omega in cycle]
    outgoing = [c.id for c in system.bi_infinite_chains if c.alpha in cycle]

    if incoming and outgoing:
        return FixedPointClass(value, NEITHER, witness=(incoming[0], outgoing[0]))
    label = ATTRACTOR if incoming else REPELLER
    return FixedPointClass(value, label, _gamma(system, value))


def omega_set(system: SymbolicSystem) -> Tuple[Fraction, ...]:
    """Non-wandering set: exactly the periodic points in this representation."""
    return tuple(periodic_values(system))


def orbit_count(system: SymbolicSystem) -> int:
    return len(system.chains) + len(system.limit_cycles())


def hyper_expansive_verdict(system: SymbolicSystem) -> Verdict:
    classes = tuple(classify_periodic_point(system, r) for r in system.periodic_refs())
    omega = omega_set(system)
    count = orbit_count(system)

    offending = sorted((c for c in classes if not c.hyperbolic), key=lambda c: c.point)
    if offending:
        point = offending[0].point
        logging.info(f"[Dynamics] Not hyper-expansive: {format_rational(point)} is neither attractor nor repeller")
        return Verdict(NOT, omega, count, reason=NonHyperbolicPeriodic(point), classes=classes)

    delta = _delta(system)
    logging.info(f"[Dynamics] Hyper-expansive with delta={format_rational(delta)} ({count} orbits)")
    return Verdict(HYPER_EXPANSIVE, omega, count, delta=delta, classes=classes)


def periodic_gap_bound(system: SymbolicSystem) -> Optional[Fraction]:
    """delta_1: half the smallest gap between periodic points, None with fewer than two."""
    values = PointSet.of(periodic_values(system))
    if len(values) < 2:
        return None
    return min_gap(values) / 2


def representative_isolation_bound(system: SymbolicSystem) -> Optional[Fraction]:
    """delta_2: smallest isolation radius of the chain representatives at k = 0."""
    radii = [
        isolation_radius(system, PointRef("chain", c.id, 0)) for c in system.bi_infinite_chains
    ]
    return min(radii) if radii else None


def _delta(system: SymbolicSystem) -> Fraction:
    bounds = [b for b in (periodic_gap_bound(system), representative_isolation_bound(system)) if b is not None]
    # a single isolated fixed point: the hyperspace is one point
    return min(bounds) if bounds else SINGLE_POINT_RADIUS


def expansive_delta(system: SymbolicSystem) -> Fraction:
    """Expansive constant of the induced map: min(delta_1, delta_2).

    delta_1 keeps the balls around distinct periodic points disjoint; every
    chain leaves such a ball backward, so the only compact sets staying in it
    for all forward times are sets of periodic points. delta_2 makes the ball
    around each chain representative a singleton.
    """
    for cls in (classify_periodic_point(system, r) for r in system.periodic_refs()):
        if not cls.hyperbolic:
            raise NotHyperExpansiveError(
                f"system is not hyper-expansive: {format_rational(cls.point)} is neither attractor nor repeller"
            )
    return _delta(system)


# ---------------------------------------------------------------------------
# Compact invariant sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantSet:
    """Union of limit cycles and whole chains; closed because chains bring their anchors."""

    limit_ids: Tuple[str, ...]
    chain_ids: Tuple[str, ...]

    def contains(self, system: SymbolicSystem, x: Fraction) -> bool:
        ref = system.locate(x)
        if ref.kind == "limit":
            return ref.key in self.limit_ids
        return ref.key in self.chain_ids

    def window_points(self, system: SymbolicSystem, M: int) -> PointSet:
        window = realize_window(system, M)
        return PointSet.of(
            system.value(r)
            for r in window.refs
            if (r.key in self.limit_ids if r.kind == "limit" else r.key in self.chain_ids)
        )


def compact_invariant_sets(system: SymbolicSystem, cap: int) -> List[InvariantSet]:
    """Every nonempty closed f-invariant subset, each a fixed point of the induced map.

    Ordered by limit-cycle mask, then bi-infinite chain mask, then periodic
    chain mask. Raises CapExceededError carrying a lower bound on the count.
    """
    cycles = system.limit_cycles()
    bi_chains = system.bi_infinite_chains
    periodic = system.periodic_chains

    lower_bound = 2 ** (len(cycles) + len(periodic)) - 1
    if lower_bound > cap:
        raise CapExceededError(cap, lower_bound)

    results: List[InvariantSet] = []
    for cycle_mask in range(2 ** len(cycles)):
        chosen_limits: FrozenSet[str] = frozenset(
            lid for i, cycle in enumerate(cycles) if cycle_mask >> i & 1 for lid in cycle
        )
        available = [c for c in bi_chains if c.alpha in chosen_limits and c.omega in chosen_limits]
        for chain_mask in range(2 ** len(available)):
            chosen_chains = [c.id for i, c in enumerate(available) if chain_mask >> i & 1]
            for periodic_mask in range(2 ** len(periodic)):
                if cycle_mask == 0 and periodic_mask == 0:
                    continue
                if len(results) >= cap:
                    raise CapExceededError(cap, len(results) + 1)
                chosen_periodic = [c.id for i, c in enumerate(periodic) if periodic_mask >> i & 1]
                limit_ids = tuple(lp.id for lp in system.limits if lp.id in chosen_limits)
                results.append(InvariantSet(limit_ids, tuple(chosen_chains + chosen_periodic)))

    logging.debug(f"[Dynamics] Found {len(results)} compact invariant sets")
    return results


def invariant_window_subsets(system: SymbolicSystem, M: int) -> List[PointSet]:
    """Brute force: nonempty window subsets S with f(S) = S exactly."""
    window = realize_window(system, M)
    if len(window) > MAX_INVARIANT_WINDOW:
        raise ResourceBoundError(f"window of {len(window)} points exceeds {MAX_INVARIANT_WINDOW}")
    points = window.points.points
    found = []
    for mask in range(1, 2 ** len(points)):
        subset = {points[i] for i in range(len(points)) if mask >> i & 1}
        if {window.map_table[x] for x in subset} == subset:
            found.append(PointSet.of(subset))
    return found


# ---------------------------------------------------------------------------
# Shift obstruction and minimal sets
# ---------------------------------------------------------------------------


def _check_period(k: int) -> None:
    if not 1 <= k <= MAX_SHIFT_PERIOD:
        raise OracleInputError(f"period must lie in 1..{MAX_SHIFT_PERIOD}", str(k))


def shift_periodic_count(k: int) -> int:
    """Fixed points of the k-th power of the full 2-shift, counted word by word."""
    _check_period(k)
    return sum(1 for _ in itertools.product((0, 1), repeat=k))


def shift_orbit_count(k: int) -> int:
    """Periodic orbits of the full 2-shift with period dividing k.

    Each orbit is a compact invariant set, i.e. a fixed point of the induced
    map, so these counts are unbounded.
    """
    _check_period(k)
    seen = set()
    for word in itertools.product((0, 1), repeat=k):
        seen.add(min(word[i:] + word[:i] for i in range(k)))
    return len(seen)


def eps_dense_segment(
    system: SymbolicSystem, K: Iterable[object], x: object, eps: Fraction
) -> int:
    """Smallest n with {x, fx, ..., f^n x} eps-dense in the periodic orbit K."""
    orbit = PointSet.of(K)
    x = Fraction(x)
    if x not in orbit:
        raise PointNotInSpaceError(f"{format_rational(x)} (not in the orbit)")
    if eps <= 0:
        raise OracleInputError("eps must be positive", format_rational(eps))

    ref = system.locate(x)
    if ref.kind == "chain":
        raise NotPeriodicError(format_rational(x))
    period = len(system.limit_cycle(ref.key)) if ref.kind == "limit" else len(system.chain(ref.key).cycle)
    actual = PointSet.of(system.value(system.step(ref, n)) for n in range(period))
    if actual != orbit:
        raise OracleInputError("K is not the orbit of x")

    segment = [x]
    for n in range(period):
        if is_eps_dense(segment, orbit, eps):
            return n
        segment.append(system.value(system.step(ref, n + 1)))
    return period - 1
