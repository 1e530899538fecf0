"""Symbolic countable compact subsets of the line and homeomorphisms on them.

A SymbolicSystem is a rank-1 space: finitely many limit points plus chains of
isolated points. The homeomorphism permutes the limit points, shifts every
bi-infinite chain by one index (k -> k + 1) and rotates every periodic chain.
Windows are exact finite truncations used by the brute-force oracle; images of
window points are always exact points of X, even when they leave the window.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import (
    ClassVar,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Tuple,
    Union,
)

from src.engines.errors import (
    NotIsolatedError,
    PointNotInSpaceError,
    SpaceValidationError,
)
from src.engines.exact_metric import PointSet, format_rational, parse_rational
from src.tools.schema_tools import SPACE_SCHEMA, validate_document

# Chain indices checked for overlaps and injectivity when a system is parsed.
OVERLAP_CHECK_RANGE = 64

# Radius reported for the only point of a one-point space.
SINGLE_POINT_RADIUS = Fraction(1)


def pow2(k: int) -> Fraction:
    """2**k as an exact rational for any integer k."""
    return Fraction(2**k) if k >= 0 else Fraction(1, 2 ** (-k))


def floor_log2(r: Fraction) -> int:
    """Largest integer k with 2**k <= r, for r > 0."""
    if r <= 0:
        raise ValueError("floor_log2 needs a positive argument")
    k = r.numerator.bit_length() - r.denominator.bit_length()
    while pow2(k) > r:
        k -= 1
    while pow2(k + 1) <= r:
        k += 1
    return k


def fold_index(k: int) -> int:
    """Bijection Z -> N used by harmonic chains: k >= 1 -> 2k, k <= 0 -> 1 - 2k."""
    return 2 * k if k >= 1 else 1 - 2 * k


def unfold_index(m: int) -> int:
    return m // 2 if m % 2 == 0 else (1 - m) // 2


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Harmonic:
    """Terms a + (b - a)/m for m >= 1; on bi-infinite chains k is folded onto m."""

    a: Fraction
    b: Fraction
    kind: ClassVar[str] = "harmonic"

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise SpaceValidationError("harmonic generator needs a != b")

    def term(self, m: int) -> Fraction:
        if m < 1:
            raise ValueError(f"harmonic term index must be >= 1, got {m}")
        return self.a + (self.b - self.a) / m

    def at(self, k: int) -> Fraction:
        return self.term(fold_index(k))

    @property
    def alpha_limit(self) -> Fraction:
        return self.a

    @property
    def omega_limit(self) -> Fraction:
        return self.a

    @property
    def limit(self) -> Fraction:
        return self.a

    @property
    def reference(self) -> Fraction:
        return self.b

    def sequence_index_of(self, value: Fraction) -> Optional[int]:
        s = (value - self.a) / (self.b - self.a)
        if s <= 0 or s > 1:
            return None
        inverse = 1 / s
        return inverse.numerator if inverse.denominator == 1 else None

    def chain_index_of(self, value: Fraction) -> Optional[int]:
        m = self.sequence_index_of(value)
        return None if m is None else unfold_index(m)

    def transform(self, fn) -> "Harmonic":
        return Harmonic(fn(self.a), fn(self.b))

    # Natural order: the index in which terms are monotone (m here).
    def natural_term(self, n: int) -> Fraction:
        return self.term(n)

    def natural_in_domain(self, n: int) -> bool:
        return n >= 1

    def natural_to_chain(self, n: int) -> int:
        return unfold_index(n)

    def natural_bracket(self, x: Fraction) -> List[int]:
        s = (x - self.a) / (self.b - self.a)
        if s <= 0:
            return []
        if s >= 1:
            return [1, 2]
        m = (1 / s).numerator // (1 / s).denominator
        return [n for n in range(m - 1, m + 3) if n >= 1]


@dataclass(frozen=True)
class Logistic:
    """Terms p + (q - p) * 2^k / (1 + 2^k) for k in Z; p as k -> -inf, q as k -> +inf."""

    p: Fraction
    q: Fraction
    kind: ClassVar[str] = "logistic"

    def __post_init__(self) -> None:
        if self.p == self.q:
            raise SpaceValidationError("logistic generator needs p != q")

    @staticmethod
    def fraction_at(k: int) -> Fraction:
        return Fraction(2**k, 2**k + 1) if k >= 0 else Fraction(1, 2 ** (-k) + 1)

    def at(self, k: int) -> Fraction:
        return self.p + (self.q - self.p) * self.fraction_at(k)

    def term(self, m: int) -> Fraction:
        if m < 1:
            raise ValueError(f"sequence term index must be >= 1, got {m}")
        return self.at(m)

    @property
    def alpha_limit(self) -> Fraction:
        return self.p

    @property
    def omega_limit(self) -> Fraction:
        return self.q

    @property
    def limit(self) -> Fraction:
        return self.q

    @property
    def reference(self) -> Fraction:
        return self.p

    def chain_index_of(self, value: Fraction) -> Optional[int]:
        t = (value - self.p) / (self.q - self.p)
        if t <= 0 or t >= 1:
            return None
        r = t / (1 - t)
        if r.denominator == 1 and r.numerator & (r.numerator - 1) == 0:
            return r.numerator.bit_length() - 1
        if r.numerator == 1 and r.denominator & (r.denominator - 1) == 0:
            return -(r.denominator.bit_length() - 1)
        return None

    def sequence_index_of(self, value: Fraction) -> Optional[int]:
        k = self.chain_index_of(value)
        return k if k is not None and k >= 1 else None

    def transform(self, fn) -> "Logistic":
        return Logistic(fn(self.p), fn(self.q))

    def natural_term(self, n: int) -> Fraction:
        return self.at(n)

    def natural_in_domain(self, n: int) -> bool:
        return True

    def natural_to_chain(self, n: int) -> int:
        return n

    def natural_bracket(self, x: Fraction) -> List[int]:
        t = (x - self.p) / (self.q - self.p)
        if t <= 0 or t >= 1:
            return []
        k = floor_log2(t / (1 - t))
        return [k - 1, k, k + 1, k + 2]


@dataclass(frozen=True)
class ExplicitHead:
    """A finite list of terms overriding the tail at the first indices.

    On chains the head sits at k = 0..L-1; on tree sequences at m = 1..L.
    """

    head: Tuple[Fraction, ...]
    tail: "Generator"
    kind: ClassVar[str] = "explicit_head"

    def __post_init__(self) -> None:
        if not self.head:
            raise SpaceValidationError("explicit_head needs a nonempty head")
        if len(set(self.head)) != len(self.head):
            raise SpaceValidationError("explicit_head terms must be distinct")

    def at(self, k: int) -> Fraction:
        return self.head[k] if 0 <= k < len(self.head) else self.tail.at(k)

    def term(self, m: int) -> Fraction:
        if m < 1:
            raise ValueError(f"sequence term index must be >= 1, got {m}")
        return self.head[m - 1] if m <= len(self.head) else self.tail.term(m)

    @property
    def alpha_limit(self) -> Fraction:
        return self.tail.alpha_limit

    @property
    def omega_limit(self) -> Fraction:
        return self.tail.omega_limit

    @property
    def limit(self) -> Fraction:
        return self.tail.limit

    @property
    def reference(self) -> Fraction:
        return self.tail.reference

    def chain_index_of(self, value: Fraction) -> Optional[int]:
        if value in self.head:
            return self.head.index(value)
        k = self.tail.chain_index_of(value)
        return None if k is None or 0 <= k < len(self.head) else k

    def sequence_index_of(self, value: Fraction) -> Optional[int]:
        if value in self.head:
            return self.head.index(value) + 1
        m = self.tail.sequence_index_of(value)
        return None if m is None or m <= len(self.head) else m

    def transform(self, fn) -> "ExplicitHead":
        return ExplicitHead(tuple(fn(h) for h in self.head), self.tail.transform(fn))


Generator = Union[Harmonic, Logistic, ExplicitHead]


def _flatten(generator: Generator) -> Tuple[Dict[int, Fraction], Union[Harmonic, Logistic]]:
    """Chain-index overrides of nested explicit heads, plus the base generator."""
    overrides: Dict[int, Fraction] = {}
    while isinstance(generator, ExplicitHead):
        for i, value in enumerate(generator.head):
            overrides.setdefault(i, value)
        generator = generator.tail
    return overrides, generator


def chain_terms_near(generator: Generator, x: Fraction) -> List[Fraction]:
    """Chain terms that can be nearest to x on either side (x itself may be among them)."""
    overrides, base = _flatten(generator)
    values = list(overrides.values())
    for n in base.natural_bracket(x):
        if not base.natural_in_domain(n):
            continue
        while base.natural_to_chain(n) in overrides:
            n = _step_away(base, n, x)
            if n is None:
                break
        if n is not None:
            values.append(base.natural_term(n))
    return values


def _step_away(base: Union[Harmonic, Logistic], n: int, x: Fraction) -> Optional[int]:
    current = base.natural_term(n)
    for candidate in (n + 1, n - 1):
        if not base.natural_in_domain(candidate):
            continue
        value = base.natural_term(candidate)
        if (value - x) * (current - x) > 0 and abs(value - x) > abs(current - x):
            return candidate
    return None


def convergence_index(generator: Generator, eps: Fraction, forward: bool = True) -> int:
    """An index K such that every chain term beyond K lies within eps of its anchor.

    Forward: |at(k) - omega| < eps for all k >= K. Backward: |at(k) - alpha| < eps
    for all k <= K. K is derived from the closed form and is sufficient, not
    necessarily the least such index.
    """
    overrides, base = _flatten(generator)
    span = abs(base.reference - base.limit) if isinstance(base, Harmonic) else abs(base.q - base.p)
    ratio = span / eps
    if isinstance(base, Harmonic):
        # distance |b - a| / m, with m = 2k forward and 1 - 2k backward
        if forward:
            K = ratio.numerator // (2 * ratio.denominator) + 1
        else:
            bound = (1 - ratio) / 2
            K = -((-bound.numerator) // bound.denominator) - 1
    elif forward:
        # |q - p| / (1 + 2^k) < eps  <=>  2^k > ratio - 1
        K = 0 if ratio <= 1 else floor_log2(ratio - 1) + 1
    else:
        # |q - p| 2^k / (1 + 2^k) < eps  <=>  2^k (ratio - 1) < 1
        if ratio <= 1:
            K = 0
        else:
            s = 1 / (ratio - 1)
            K = floor_log2(s)
            if pow2(K) == s:
                K -= 1
    if overrides:
        K = max(K, max(overrides) + 1) if forward else min(K, -1)
    return K


def generator_to_json(generator: Generator) -> dict:
    if isinstance(generator, Harmonic):
        return {"kind": "harmonic", "a": format_rational(generator.a), "b": format_rational(generator.b)}
    if isinstance(generator, Logistic):
        return {"kind": "logistic", "p": format_rational(generator.p), "q": format_rational(generator.q)}
    return {
        "kind": "explicit_head",
        "head": [format_rational(h) for h in generator.head],
        "tail": generator_to_json(generator.tail),
    }


def generator_from_json(document: dict) -> Generator:
    kind = document["kind"]
    if kind == "harmonic":
        return Harmonic(parse_rational(document["a"]), parse_rational(document["b"]))
    if kind == "logistic":
        return Logistic(parse_rational(document["p"]), parse_rational(document["q"]))
    if kind == "explicit_head":
        return ExplicitHead(
            tuple(parse_rational(h) for h in document["head"]),
            generator_from_json(document["tail"]),
        )
    raise SpaceValidationError(f"unknown generator kind: {kind}")


# ---------------------------------------------------------------------------
# Points, chains and systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitPoint:
    id: str
    value: Fraction


@dataclass(frozen=True)
class BiInfiniteChain:
    id: str
    alpha: str
    omega: str
    generator: Generator
    kind: ClassVar[str] = "bi_infinite"


@dataclass(frozen=True)
class PeriodicChain:
    id: str
    cycle: Tuple[Fraction, ...]
    kind: ClassVar[str] = "periodic"


OrbitChain = Union[BiInfiniteChain, PeriodicChain]


@dataclass(frozen=True, order=True)
class PointRef:
    """Symbolic address of a point: a limit id, or a chain id with an index."""

    kind: str  # "limit" | "chain" | "periodic"
    key: str
    index: int = 0


def point_at(chain: OrbitChain, k: int) -> Fraction:
    """Exact coordinate of the k-th point of a chain (periodic chains wrap around)."""
    if isinstance(chain, PeriodicChain):
        return chain.cycle[k % len(chain.cycle)]
    return chain.generator.at(k)


@dataclass(frozen=True)
class SymbolicSystem:
    limits: Tuple[LimitPoint, ...]
    limit_perm: Mapping[str, str]
    chains: Tuple[OrbitChain, ...]
    _limit_index: Dict[str, LimitPoint] = field(default_factory=dict, init=False, repr=False, compare=False)
    _chain_index: Dict[str, OrbitChain] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._limit_index.update({lp.id: lp for lp in self.limits})
        self._chain_index.update({c.id: c for c in self.chains})

    def limit(self, limit_id: str) -> LimitPoint:
        return self._limit_index[limit_id]

    def chain(self, chain_id: str) -> OrbitChain:
        return self._chain_index[chain_id]

    @property
    def limit_values(self) -> Tuple[Fraction, ...]:
        return tuple(lp.value for lp in self.limits)

    @property
    def bi_infinite_chains(self) -> Tuple[BiInfiniteChain, ...]:
        return tuple(c for c in self.chains if isinstance(c, BiInfiniteChain))

    @property
    def periodic_chains(self) -> Tuple[PeriodicChain, ...]:
        return tuple(c for c in self.chains if isinstance(c, PeriodicChain))

    def limit_cycle(self, limit_id: str) -> Tuple[str, ...]:
        """The limit_perm cycle through limit_id, starting at it."""
        cycle = [limit_id]
        nxt = self.limit_perm[limit_id]
        while nxt != limit_id:
            cycle.append(nxt)
            nxt = self.limit_perm[nxt]
        return tuple(cycle)

    def limit_cycles(self) -> List[Tuple[str, ...]]:
        """All limit_perm cycles, each starting at its lowest-valued member."""
        seen, cycles = set(), []
        for lp in self.limits:
            if lp.id not in seen:
                cycle = self.limit_cycle(lp.id)
                seen.update(cycle)
                cycles.append(cycle)
        return cycles

    def value(self, ref: PointRef) -> Fraction:
        if ref.kind == "limit":
            return self.limit(ref.key).value
        return point_at(self.chain(ref.key), ref.index)

    def step(self, ref: PointRef, n: int = 1) -> PointRef:
        """Symbolic image of ref under the n-th iterate (n may be negative)."""
        if ref.kind == "limit":
            cycle = self.limit_cycle(ref.key)
            return PointRef("limit", cycle[n % len(cycle)])
        if ref.kind == "periodic":
            period = len(self.chain(ref.key).cycle)
            return PointRef("periodic", ref.key, (ref.index + n) % period)
        return PointRef("chain", ref.key, ref.index + n)

    def image(self, x: Fraction, n: int = 1) -> Fraction:
        return self.value(self.step(self.locate(x), n))

    def locate(self, x: Fraction) -> PointRef:
        """Symbolic address of the point of X with coordinate x."""
        x = Fraction(x)
        for lp in self.limits:
            if lp.value == x:
                return PointRef("limit", lp.id)
        for chain in self.chains:
            if isinstance(chain, PeriodicChain):
                if x in chain.cycle:
                    return PointRef("periodic", chain.id, chain.cycle.index(x))
            else:
                k = chain.generator.chain_index_of(x)
                if k is not None:
                    return PointRef("chain", chain.id, k)
        raise PointNotInSpaceError(format_rational(x))

    def contains(self, x: Fraction) -> bool:
        try:
            self.locate(x)
        except PointNotInSpaceError:
            return False
        return True

    def periodic_refs(self) -> List[PointRef]:
        """Every periodic point: all limit points and all points of periodic chains."""
        refs = [PointRef("limit", lp.id) for lp in self.limits]
        for chain in self.periodic_chains:
            refs.extend(PointRef("periodic", chain.id, i) for i in range(len(chain.cycle)))
        return refs


# ---------------------------------------------------------------------------
# Validation and parsing
# ---------------------------------------------------------------------------


def _chain_contains(chain: OrbitChain, x: Fraction) -> bool:
    if isinstance(chain, PeriodicChain):
        return x in chain.cycle
    return chain.generator.chain_index_of(x) is not None


def validate_system(system: SymbolicSystem) -> SymbolicSystem:
    """Check every structural invariant of a system, raising SpaceValidationError."""
    if not system.limits and not system.chains:
        raise SpaceValidationError("empty space: X needs at least one limit point or periodic chain")

    values = system.limit_values
    for left, right in zip(values, values[1:]):
        if not left < right:
            raise SpaceValidationError("limit values must be strictly increasing")

    ids = [lp.id for lp in system.limits] + [c.id for c in system.chains]
    if len(set(ids)) != len(ids):
        raise SpaceValidationError("identifiers must be unique across limits and chains")

    limit_ids = {lp.id for lp in system.limits}
    perm = system.limit_perm
    if set(perm) != limit_ids or set(perm.values()) != limit_ids:
        raise SpaceValidationError("inconsistent limit_perm: not a permutation of the limit ids")

    anchored = set()
    for chain in system.bi_infinite_chains:
        for anchor in (chain.alpha, chain.omega):
            if anchor not in limit_ids:
                raise SpaceValidationError(f"chain {chain.id} anchors at unknown limit {anchor}")
            if perm[anchor] != anchor:
                raise SpaceValidationError(
                    f"inconsistent limit_perm: chain {chain.id} accumulates at {anchor}, "
                    f"so the shift forces {anchor} to be fixed"
                )
        if chain.generator.alpha_limit != system.limit(chain.alpha).value:
            raise SpaceValidationError(
                f"anchor mismatch: chain {chain.id} converges backward to "
                f"{format_rational(chain.generator.alpha_limit)}, not to {chain.alpha}"
            )
        if chain.generator.omega_limit != system.limit(chain.omega).value:
            raise SpaceValidationError(
                f"anchor mismatch: chain {chain.id} converges forward to "
                f"{format_rational(chain.generator.omega_limit)}, not to {chain.omega}"
            )
        for lp in system.limits:
            if chain.generator.chain_index_of(lp.value) is not None:
                raise SpaceValidationError(f"overlap: chain {chain.id} contains limit value {lp.id}")
        terms = [chain.generator.at(k) for k in range(-OVERLAP_CHECK_RANGE, OVERLAP_CHECK_RANGE + 1)]
        if len(set(terms)) != len(terms):
            raise SpaceValidationError(f"chain {chain.id} generator is not injective")
        anchored.update((chain.alpha, chain.omega))

    unanchored = limit_ids - anchored
    if unanchored:
        raise SpaceValidationError(
            f"limit points {sorted(unanchored)} are not accumulated by any chain"
        )

    for chain in system.periodic_chains:
        if len(set(chain.cycle)) != len(chain.cycle):
            raise SpaceValidationError(f"periodic chain {chain.id} repeats a point")
        if set(chain.cycle) & set(values):
            raise SpaceValidationError(f"overlap: periodic chain {chain.id} meets a limit value")

    for i, chain in enumerate(system.chains):
        sample = (
            chain.cycle
            if isinstance(chain, PeriodicChain)
            else [chain.generator.at(k) for k in range(-OVERLAP_CHECK_RANGE, OVERLAP_CHECK_RANGE + 1)]
        )
        for other in system.chains[i + 1:]:
            for x in sample:
                if _chain_contains(other, x):
                    raise SpaceValidationError(
                        f"overlap: chains {chain.id} and {other.id} share {format_rational(x)}"
                    )
        if isinstance(chain, BiInfiniteChain):
            for other in system.periodic_chains:
                for x in other.cycle:
                    if _chain_contains(chain, x):
                        raise SpaceValidationError(
                            f"overlap: chains {chain.id} and {other.id} share {format_rational(x)}"
                        )

    return system


def build_system(
    limits: Iterable[LimitPoint],
    chains: Iterable[OrbitChain],
    limit_perm: Optional[Mapping[str, str]] = None,
) -> SymbolicSystem:
    """Assemble and validate a system; the permutation defaults to the identity."""
    limits = tuple(limits)
    perm = dict(limit_perm) if limit_perm is not None else {lp.id: lp.id for lp in limits}
    return validate_system(SymbolicSystem(limits, perm, tuple(chains)))


def parse_space(document: dict) -> SymbolicSystem:
    """Validate a space-description document and build the system it describes."""
    report = validate_document(document, SPACE_SCHEMA)
    if report["status"] == "error":
        raise SpaceValidationError(report["message"])

    try:
        limits = [LimitPoint(item["id"], parse_rational(item["value"])) for item in document["limits"]]
        chains: List[OrbitChain] = []
        for item in document["chains"]:
            if item["kind"] == "periodic":
                chains.append(PeriodicChain(item["id"], tuple(parse_rational(v) for v in item["cycle"])))
            else:
                chains.append(
                    BiInfiniteChain(
                        item["id"], item["alpha"], item["omega"], generator_from_json(item["generator"])
                    )
                )
    except ValueError as e:
        if isinstance(e, SpaceValidationError):
            raise
        raise SpaceValidationError(str(e)) from e

    system = build_system(limits, chains, document["limit_perm"])
    logging.debug(
        f"[Space] Parsed system with {len(system.limits)} limit points and {len(system.chains)} chains"
    )
    return system


def space_to_document(system: SymbolicSystem) -> dict:
    chains = []
    for chain in system.chains:
        if isinstance(chain, PeriodicChain):
            chains.append(
                {"id": chain.id, "kind": "periodic", "cycle": [format_rational(v) for v in chain.cycle]}
            )
        else:
            chains.append(
                {
                    "id": chain.id,
                    "kind": "bi_infinite",
                    "alpha": chain.alpha,
                    "omega": chain.omega,
                    "generator": generator_to_json(chain.generator),
                }
            )
    return {
        "limits": [{"id": lp.id, "value": format_rational(lp.value)} for lp in system.limits],
        "limit_perm": {lp.id: system.limit_perm[lp.id] for lp in system.limits},
        "chains": chains,
    }


# ---------------------------------------------------------------------------
# Windows and isolation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """Exact finite truncation: limits, periodic points and chain points with |k| <= M."""

    M: int
    points: PointSet
    refs: Tuple[PointRef, ...]
    map_table: Mapping[Fraction, Fraction]

    def __len__(self) -> int:
        return len(self.points)


def window_refs(system: SymbolicSystem, M: int) -> List[PointRef]:
    refs = [PointRef("limit", lp.id) for lp in system.limits]
    for chain in system.chains:
        if isinstance(chain, PeriodicChain):
            refs.extend(PointRef("periodic", chain.id, i) for i in range(len(chain.cycle)))
        else:
            refs.extend(PointRef("chain", chain.id, k) for k in range(-M, M + 1))
    return refs


def realize_window(system: SymbolicSystem, M: int) -> Window:
    """Exact window of the system; the map table holds the true image of every point."""
    if M < 1:
        raise ValueError("window size M must be >= 1")
    refs = sorted(window_refs(system, M), key=system.value)
    values = [system.value(r) for r in refs]
    map_table = {v: system.value(system.step(r)) for v, r in zip(values, refs)}
    logging.debug(f"[Space] Realized window M={M} with {len(values)} points")
    return Window(M, PointSet(tuple(values)), tuple(refs), map_table)


def window_size(system: SymbolicSystem, M: int) -> int:
    """Number of points realize_window(system, M) would hold, without building it."""
    size = len(system.limits)
    for chain in system.chains:
        size += len(chain.cycle) if isinstance(chain, PeriodicChain) else 2 * M + 1
    return size


def isolation_radius(system: SymbolicSystem, x: Union[Fraction, PointRef]) -> Fraction:
    """Distance from an isolated point to the nearest other point of the full space X.

    Candidates are the limit values, the periodic points and, on every
    bi-infinite chain, the terms bracketing x in the chain's monotone order.
    Every other chain term is farther away, so the minimum is exact.

    A space with a single point has no other point; its radius is 1, the same
    constant hyper_expansive_verdict reports for that space.
    """
    ref = x if isinstance(x, PointRef) else system.locate(x)
    if ref.kind == "limit":
        raise NotIsolatedError(format_rational(system.value(ref)))
    center = system.value(ref)

    candidates: List[Fraction] = list(system.limit_values)
    for chain in system.chains:
        if isinstance(chain, PeriodicChain):
            candidates.extend(chain.cycle)
        else:
            candidates.extend(chain_terms_near(chain.generator, center))
    distances = [abs(c - center) for c in candidates if c != center]
    if not distances:
        return SINGLE_POINT_RADIUS
    return min(distances)
