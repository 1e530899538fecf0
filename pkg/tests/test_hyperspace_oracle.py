"""Tests for the exact separation oracle on the hyperspace of a window."""

from fractions import Fraction as F
from itertools import combinations

import pytest

from src.engines.dynamics import build_finite_system, build_theorem2_system, expansive_delta, hyper_expansive_verdict
from src.engines.errors import OracleInputError, PointNotInSpaceError, ResourceBoundError
from src.engines.exact_metric import PointSet
from src.engines.hyperspace_oracle import (
    horizon_for,
    induced_image,
    not_witness,
    orbit_separation,
    point_separation,
    resolve_horizon,
    separation_constant,
    separation_curve,
    singletons,
)
from src.engines.space_model import realize_window, window_size

THEOREM2_LIMITS = [[0, 1], [0, F(1, 2), 1], [0, F(1, 3), F(2, 3), 1]]


@pytest.fixture(autouse=True)
def default_bounds(monkeypatch):
    for name in ("HYPERDYN_MAX_WINDOW", "HYPERDYN_ALL_PAIRS_MAX_WINDOW", "HYPERDYN_WORKERS"):
        monkeypatch.delenv(name, raising=False)


def acceptance_cases():
    cases = []
    for limits in THEOREM2_LIMITS:
        system = build_theorem2_system(limits)
        for M in (1, 2, 3, 4):
            if window_size(system, M) <= 13:
                marks = [pytest.mark.slow] if window_size(system, M) == 13 else []
                cases.append(pytest.param(limits, M, marks=marks, id=f"{len(limits)}-limits-M{M}"))
    return cases


class TestSetOrbits:
    def test_induced_image(self, theorem2_01):
        assert induced_image(theorem2_01, PointSet.of([F(1, 2)])) == PointSet.of([F(2, 3)])
        assert induced_image(theorem2_01, PointSet.of([0, F(1, 2)]), -1) == PointSet.of([0, F(1, 3)])

    def test_singletons(self, translation):
        window = realize_window(translation, 1)
        assert singletons(window) == [PointSet((p,)) for p in window.points]

    def test_orbit_separation(self, theorem2_01):
        A = PointSet.of([0])
        assert orbit_separation(theorem2_01, A, A, 4) == 0
        assert orbit_separation(theorem2_01, A, PointSet.of([0, 1]), 2) == 1
        assert orbit_separation(theorem2_01, PointSet.of([F(1, 2)]), PointSet.of([F(2, 3)]), 32) == F(1, 6)

    def test_orbit_separation_errors(self, theorem2_01):
        with pytest.raises(PointNotInSpaceError):
            orbit_separation(theorem2_01, PointSet.of([F(3, 5)]), PointSet.of([0]), 1)
        with pytest.raises(OracleInputError):
            orbit_separation(theorem2_01, PointSet.of([0]), PointSet.of([1]), -1)


class TestHorizon:
    @pytest.mark.parametrize("M", [1, 2, 3, 4])
    def test_theorem2_needs_one_extra_step(self, theorem2_01, M):
        assert horizon_for(theorem2_01, M) == M + 1

    @pytest.mark.parametrize("M", [1, 2, 5])
    def test_single_periodic_point_or_no_chain(self, translation, two_cycle, M):
        assert horizon_for(translation, M) == M
        assert horizon_for(two_cycle, M) == M

    def test_resolve(self, theorem2_01):
        assert resolve_horizon(theorem2_01, 2, "auto") == 3
        assert resolve_horizon(theorem2_01, 2, None) == 3
        assert resolve_horizon(theorem2_01, 2, "5") == 5
        with pytest.raises(OracleInputError):
            resolve_horizon(theorem2_01, 2, "soon")
        with pytest.raises(OracleInputError):
            resolve_horizon(theorem2_01, 2, -1)


class TestSeparationConstant:
    def test_two_cycle(self, two_cycle):
        report = separation_constant(two_cycle, 1, 1)
        assert report.c == 1
        assert report.pairs_examined == 2
        assert report.witness == (PointSet.of([0]), PointSet.of([0, 1]))

    def test_theorem2_window_two(self, theorem2_01):
        report = separation_constant(theorem2_01, 2)
        assert report.N == 3
        assert report.c == F(1, 6)
        assert report.window_points == 7
        assert report.pairs_examined == 3**7 - 2**8 + 1
        assert report.witness == (PointSet.of([F(1, 5)]), PointSet.of([F(1, 5), F(1, 3)]))

    @pytest.mark.parametrize("limits,M", acceptance_cases())
    def test_hyper_expansive_systems_stay_separated(self, limits, M):
        system = build_theorem2_system(limits)
        delta = expansive_delta(system)
        report = separation_constant(system, M)
        assert report.c >= delta
        assert report.c >= delta / 2

    def test_translation_curve_decreases(self, translation):
        assert not hyper_expansive_verdict(translation).is_hyper_expansive
        reports = separation_curve(translation, [(M, "auto") for M in range(2, 6)])
        values = [r.c for r in reports]
        assert values == [F(1, 2 * M + 1) for M in range(2, 6)]
        assert all(later < earlier for earlier, later in zip(values, values[1:]))
        for M, report in zip(range(2, 6), reports):
            assert report.c <= F(1, 2 * M)
            A = PointSet.of([F(1, 2 * M), F(1, 2 * M + 1)])
            assert report.witness == (A, A.union(PointSet.of([0])))

    def test_translation_long_horizon(self, translation):
        assert separation_constant(translation, 4, 8).c <= F(1, 8)

    def test_longer_horizons_never_decrease_separation(self, translation):
        values = [separation_constant(translation, 2, N).c for N in range(5)]
        assert values == sorted(values)

    @pytest.mark.parametrize("M", [1, 2])
    def test_nested_pairs_suffice(self, theorem2_01, translation, M):
        for system in (theorem2_01, translation, build_finite_system([[0, 1], [2]])):
            nested = separation_constant(system, M)
            full = separation_constant(system, M, nested_only=False)
            assert nested.c == full.c
            W = nested.window_points
            assert full.pairs_examined == (2**W - 1) * (2**W - 2) // 2

    def test_nested_scan_matches_every_extension(self, theorem2_01, translation, two_cycle):
        for system in (theorem2_01, translation, two_cycle):
            report = separation_constant(system, 1)
            points = list(realize_window(system, 1).points)
            subsets = [
                PointSet.of(chosen)
                for size in range(1, len(points) + 1)
                for chosen in combinations(points, size)
            ]
            values = [
                orbit_separation(system, A, B, report.N)
                for A in subsets
                for B in subsets
                if set(A) < set(B)
            ]
            assert report.pairs_examined == len(values)
            assert report.c == min(values)
            assert orbit_separation(system, *report.witness, report.N) == report.c

    def test_workers_give_identical_reports(self, theorem2_01):
        assert separation_constant(theorem2_01, 2, workers=2) == separation_constant(theorem2_01, 2, workers=1)

    def test_curve_repeats_entries(self, translation):
        first, second = separation_curve(translation, [(2, "auto"), (2, "auto")])
        assert first == second


class TestBounds:
    def test_window_bound(self, theorem2_01):
        with pytest.raises(ResourceBoundError):
            separation_constant(theorem2_01, 20)

    def test_configured_window_bound(self, theorem2_01, monkeypatch):
        monkeypatch.setenv("HYPERDYN_MAX_WINDOW", "5")
        with pytest.raises(ResourceBoundError):
            separation_constant(theorem2_01, 2)

    def test_all_pairs_bound(self, translation):
        with pytest.raises(ResourceBoundError):
            separation_constant(translation, 5, nested_only=False)

    def test_degenerate_windows(self, translation):
        with pytest.raises(OracleInputError):
            separation_constant(build_finite_system([[5]]), 1)
        with pytest.raises(OracleInputError):
            separation_constant(translation, 0)


class TestPointsAndWitnesses:
    def test_point_separation(self, translation):
        value, (x, y) = point_separation(translation, 3)
        assert value >= F(1, 2)
        assert x < y

    @pytest.mark.parametrize("j", range(1, 9))
    def test_not_witness_separation_vanishes(self, translation, j):
        M = 2**j
        A, B = not_witness(translation, M)
        assert A < B
        separation = orbit_separation(translation, A, B, 2 * M)
        assert separation == F(1, 2 * M + 1)
        assert separation < F(1, 2**j)

    def test_not_witness_needs_a_non_hyperbolic_point(self, theorem2_01):
        with pytest.raises(OracleInputError):
            not_witness(theorem2_01, 2)
