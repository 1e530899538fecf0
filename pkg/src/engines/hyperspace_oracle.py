"""Exact brute-force separation oracle on the hyperspace of a window.

Subsets of a window are bit masks over its points in ascending order. For a
pair of compact sets the sup over |n| <= N of the Hausdorff distance between
their images is

    max( max_{b in B - A} g_A(b), max_{a in A - B} g_B(a) ),
    g_A(b) = max_{|n| <= N} min_{a in A} |f^n b - f^n a|,

because maxima commute and points of A and B in common contribute zero. The
g table is built once for every mask by a min-plus recurrence on integer
coordinates (all orbit points scaled by a common denominator), after which
every pair costs O(1). For nested pairs A < B the formula reduces to
max_{b in B - A} g_A(b).

Images leave the window freely; f^n is always evaluated symbolically.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.config import oracle_config
from src.engines.dynamics import NEITHER, classify_periodic_point, periodic_gap_bound
from src.engines.errors import OracleInputError, ResourceBoundError
from src.engines.exact_metric import PointSet, format_rational, hausdorff_distance
from src.engines.space_model import (
    PointRef,
    SymbolicSystem,
    Window,
    convergence_index,
    realize_window,
    window_size,
)

Horizon = Union[int, str, None]

# (value, key) with key = (|A| + |B|, mask A, mask B)
_Best = Tuple[int, Tuple[int, int, int]]


@dataclass(frozen=True)
class SeparationReport:
    M: int
    N: int
    nested_only: bool
    c: Fraction
    witness: Tuple[PointSet, PointSet]
    pairs_examined: int
    window_points: int = 0


# ---------------------------------------------------------------------------
# Orbits of sets
# ---------------------------------------------------------------------------


def _refs_of(system: SymbolicSystem, A: PointSet) -> List[PointRef]:
    return [system.locate(a) for a in A]


def induced_image(system: SymbolicSystem, A: PointSet, n: int = 1) -> PointSet:
    """f^n(A) for a finite set A of points of X."""
    return PointSet.of(system.value(system.step(r, n)) for r in _refs_of(system, A))


def singletons(window: Window) -> List[PointSet]:
    """The window embedded in its hyperspace as one-point sets."""
    return [PointSet((p,)) for p in window.points]


def orbit_separation(system: SymbolicSystem, A: PointSet, B: PointSet, N: int) -> Fraction:
    """sup over |n| <= N of dist_H(f^n A, f^n B)."""
    if N < 0:
        raise OracleInputError("horizon must be >= 0", str(N))
    refs_a, refs_b = _refs_of(system, A), _refs_of(system, B)
    best = Fraction(0)
    for n in range(-N, N + 1):
        image_a = PointSet.of(system.value(system.step(r, n)) for r in refs_a)
        image_b = PointSet.of(system.value(system.step(r, n)) for r in refs_b)
        best = max(best, hausdorff_distance(image_a, image_b))
    return best


# ---------------------------------------------------------------------------
# Horizon rule
# ---------------------------------------------------------------------------


def horizon_for(system: SymbolicSystem, M: int) -> int:
    """Smallest N >= M after which every window chain point is within delta_1 of its anchors.

    Forward N steps bring each k in [-M, M] within delta_1 of the omega anchor,
    backward N steps within delta_1 of the alpha anchor. With fewer than two
    periodic points there is nothing to separate and N = M.
    """
    delta_1 = periodic_gap_bound(system)
    chains = system.bi_infinite_chains
    if delta_1 is None or not chains:
        return M

    upper = M
    for chain in chains:
        forward = convergence_index(chain.generator, delta_1, forward=True)
        backward = convergence_index(chain.generator, delta_1, forward=False)
        upper = max(upper, forward + M, M - backward)

    def settled(N: int) -> bool:
        for chain in chains:
            omega = system.limit(chain.omega).value
            alpha = system.limit(chain.alpha).value
            for k in range(-M, M + 1):
                if abs(chain.generator.at(k + N) - omega) >= delta_1:
                    return False
                if abs(chain.generator.at(k - N) - alpha) >= delta_1:
                    return False
        return True

    for N in range(M, upper + 1):
        if settled(N):
            return N
    return upper


def resolve_horizon(system: SymbolicSystem, M: int, N: Horizon) -> int:
    if N is None or N == "auto":
        return horizon_for(system, M)
    if isinstance(N, str):
        try:
            N = int(N)
        except ValueError:
            raise OracleInputError("horizon must be an integer or 'auto'", N)
    if N < 0:
        raise OracleInputError("horizon must be >= 0", str(N))
    return N


# ---------------------------------------------------------------------------
# Gap table
# ---------------------------------------------------------------------------


def _orbit_rows(system: SymbolicSystem, window: Window, N: int) -> Tuple[List[List[int]], int]:
    """Integer coordinates of f^n of every window point, one row per n, and their scale."""
    rows = [[system.value(system.step(r, n)) for r in window.refs] for n in range(-N, N + 1)]
    scale = math.lcm(*(x.denominator for row in rows for x in row))
    return [[x.numerator * (scale // x.denominator) for x in row] for row in rows], scale


def gap_table(rows: Sequence[Sequence[int]], W: int) -> List[Optional[List[int]]]:
    """g[A][b] = max over rows of min_{a in A} |row[b] - row[a]|, for every nonempty mask A."""
    size = 1 << W
    g: List[Optional[List[int]]] = [None] * size
    for row in rows:
        single = [[abs(row[b] - row[a]) for b in range(W)] for a in range(W)]
        nearest: List[Optional[List[int]]] = [None] * size
        for mask in range(1, size):
            low = mask & -mask
            rest = mask ^ low
            own = single[low.bit_length() - 1]
            nearest[mask] = own if rest == 0 else list(map(min, nearest[rest], own))
            g[mask] = nearest[mask] if g[mask] is None else list(map(max, g[mask], nearest[mask]))
    return g


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

_WORKER_TABLE: Dict[str, object] = {}


def _init_worker(g: List[Optional[List[int]]], W: int) -> None:
    _WORKER_TABLE["g"] = g
    _WORKER_TABLE["W"] = W


def _better(candidate: _Best, best: Optional[_Best]) -> bool:
    return best is None or candidate < best


def _scan_nested(g: List[Optional[List[int]]], W: int, masks: Iterable[int]) -> Tuple[Optional[_Best], int]:
    """Minimum nested separation over A in masks and every B = A + C, C nonempty.

    sep(A, A + C) is the max of g_A over C, so the minimum over all C is reached
    by a one-point C and the witness is read off the singletons. Every C still
    counts as an examined pair.
    """
    full = (1 << W) - 1
    best: Optional[_Best] = None
    pairs = 0
    for A in masks:
        complement = full ^ A
        if complement == 0:
            continue
        row = g[A]
        pairs += (1 << bin(complement).count("1")) - 1
        value, b = min((row[i], i) for i in range(W) if complement >> i & 1)
        candidate = (value, (2 * bin(A).count("1") + 1, A, A | 1 << b))
        if _better(candidate, best):
            best = candidate
    return best, pairs


def _scan_nested_chunk(masks: List[int]) -> Tuple[Optional[_Best], int]:
    return _scan_nested(_WORKER_TABLE["g"], _WORKER_TABLE["W"], masks)


def _excess_tables(g: List[Optional[List[int]]], W: int) -> List[Dict[int, int]]:
    """H[A][C] = max_{b in C} g_A(b) for every C inside the complement of A (C may be empty)."""
    full = (1 << W) - 1
    tables: List[Dict[int, int]] = [dict() for _ in range(1 << W)]
    for A in range(1, 1 << W):
        complement = full ^ A
        masks, values = [0], [0]
        for i in range(W):
            if complement >> i & 1:
                gi, bit = g[A][i], 1 << i
                masks += [m | bit for m in masks]
                values += [v if v > gi else gi for v in values]
        tables[A] = dict(zip(masks, values))
    return tables


def _scan_all(g: List[Optional[List[int]]], W: int) -> Tuple[Optional[_Best], int]:
    """Every unordered pair of distinct nonempty subsets, oriented with mask A < mask B."""
    tables = _excess_tables(g, W)
    size = 1 << W
    best: Optional[_Best] = None
    pairs = 0
    for A in range(1, size):
        table_a, count_a = tables[A], bin(A).count("1")
        for B in range(A + 1, size):
            value = max(table_a[B & ~A], tables[B][A & ~B])
            pairs += 1
            if best is None or value <= best[0]:
                candidate = (value, (count_a + bin(B).count("1"), A, B))
                if _better(candidate, best):
                    best = candidate
    return best, pairs


def _mask_to_set(window: Window, mask: int) -> PointSet:
    return PointSet(tuple(p for i, p in enumerate(window.points) if mask >> i & 1))


def _check_window(system: SymbolicSystem, M: int, bound: int, what: str) -> None:
    if M < 1:
        raise OracleInputError("window size M must be >= 1", str(M))
    size = window_size(system, M)
    if size > bound:
        raise ResourceBoundError(f"window of {size} points exceeds the {what} bound {bound}")
    if size < 2:
        raise OracleInputError("window has fewer than two points; no distinct subsets to separate")


def separation_constant(
    system: SymbolicSystem,
    M: int,
    N: Horizon = None,
    nested_only: bool = True,
    workers: Optional[int] = None,
) -> SeparationReport:
    """Minimum sup-separation over all (nested) pairs of window subsets.

    The witness is the least attaining pair under (|A| + |B|, mask A, mask B).
    With workers > 1 the nested scan is split over processes; the reduction is
    the same min, so reports are identical to a sequential run.
    """
    bound = oracle_config.get_max_window()
    _check_window(system, M, bound, "window")
    if not nested_only:
        _check_window(system, M, oracle_config.get_all_pairs_max_window(), "all-pairs")
    N = resolve_horizon(system, M, N)
    workers = workers if workers is not None else oracle_config.get_workers()

    window = realize_window(system, M)
    W = len(window)
    rows, scale = _orbit_rows(system, window, N)
    g = gap_table(rows, W)

    if not nested_only:
        best, pairs = _scan_all(g, W)
    elif workers > 1:
        masks = list(range(1, (1 << W) - 1))
        chunks = [masks[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(g, W)) as pool:
            results = list(pool.map(_scan_nested_chunk, chunks))
        best, pairs = None, 0
        for candidate, count in results:
            pairs += count
            if candidate is not None and _better(candidate, best):
                best = candidate
    else:
        best, pairs = _scan_nested(g, W, range(1, (1 << W) - 1))

    value, (_, mask_a, mask_b) = best
    report = SeparationReport(
        M=M,
        N=N,
        nested_only=nested_only,
        c=Fraction(value, scale),
        witness=(_mask_to_set(window, mask_a), _mask_to_set(window, mask_b)),
        pairs_examined=pairs,
        window_points=W,
    )
    logging.info(
        f"[Oracle] M={M} N={N} |W|={W} nested_only={nested_only} "
        f"c={format_rational(report.c)} pairs={pairs}"
    )
    return report


def separation_curve(
    system: SymbolicSystem,
    schedule: Iterable[Tuple[int, Horizon]],
    nested_only: bool = True,
    workers: Optional[int] = None,
) -> List[SeparationReport]:
    """One report per (M, N) entry, in schedule order; N may be 'auto'."""
    return [separation_constant(system, M, N, nested_only, workers) for M, N in schedule]


def point_separation(system: SymbolicSystem, M: int, N: Horizon = None) -> Tuple[Fraction, Tuple[Fraction, Fraction]]:
    """Expansive constant of f measured on window singletons, with the attaining pair."""
    _check_window(system, M, oracle_config.get_max_window(), "window")
    N = resolve_horizon(system, M, N)
    window = realize_window(system, M)
    rows, scale = _orbit_rows(system, window, N)
    W = len(window)
    best = None
    for i in range(W):
        for j in range(i + 1, W):
            value = max(abs(row[i] - row[j]) for row in rows)
            if best is None or value < best[0]:
                best = (value, i, j)
    value, i, j = best
    return Fraction(value, scale), (window.points.points[i], window.points.points[j])


def not_witness(system: SymbolicSystem, M: int) -> Tuple[PointSet, PointSet]:
    """A = {x_M on a chain entering p, x_-M on a chain leaving p}, B = A + {p}.

    p is the smallest periodic point that is neither attractor nor repeller;
    the separation of (A, B) tends to 0 as M grows.
    """
    for ref in sorted(system.periodic_refs(), key=system.value):
        cls = classify_periodic_point(system, ref)
        if cls.label == NEITHER:
            incoming, outgoing = cls.witness
            A = PointSet.of(
                [system.value(PointRef("chain", incoming, M)), system.value(PointRef("chain", outgoing, -M))]
            )
            return A, A.union(PointSet((cls.point,)))
    raise OracleInputError("every periodic point is an attractor, a repeller or isolated")
