"""Tests for periodic-point classification, verdicts, delta and invariant sets."""

from fractions import Fraction as F

import pytest

from src.engines.dynamics import (
    ATTRACTOR,
    BOTH_ISOLATED,
    HYPER_EXPANSIVE,
    NEITHER,
    NOT,
    REPELLER,
    NonHyperbolicPeriodic,
    build_finite_system,
    build_translation_example,
    build_theorem2_system,
    classify_periodic_point,
    compact_invariant_sets,
    eps_dense_segment,
    expansive_delta,
    hyper_expansive_verdict,
    invariant_window_subsets,
    omega_set,
    orbit_count,
    periodic_gap_bound,
    representative_isolation_bound,
    shift_orbit_count,
    shift_periodic_count,
)
from src.engines.errors import (
    CapExceededError,
    NotHyperExpansiveError,
    NotPeriodicError,
    OracleInputError,
    PointNotInSpaceError,
    SpaceValidationError,
)
from src.engines.exact_metric import PointSet
from src.engines.hyperspace_oracle import induced_image
from src.engines.space_model import realize_window

FOUR_LIMITS = [0, F(1, 3), F(2, 3), 1]


class TestClassification:
    def test_theorem2_endpoints(self, theorem2_01):
        assert classify_periodic_point(theorem2_01, F(0)).label == REPELLER
        assert classify_periodic_point(theorem2_01, F(1)).label == ATTRACTOR
        assert classify_periodic_point(theorem2_01, F(0)).gamma == F(1, 2)

    def test_labels_alternate(self):
        system = build_theorem2_system(FOUR_LIMITS)
        labels = [classify_periodic_point(system, F(v)).label for v in FOUR_LIMITS]
        assert labels == [REPELLER, ATTRACTOR, REPELLER, ATTRACTOR]

    def test_middle_limit_attracts(self, theorem2_three):
        assert classify_periodic_point(theorem2_three, F(1, 2)).label == ATTRACTOR

    def test_translation_fixed_point_is_neither(self, translation):
        cls = classify_periodic_point(translation, F(0))
        assert cls.label == NEITHER
        assert cls.witness == ("y", "y")
        assert not cls.hyperbolic

    def test_periodic_chain_points_are_isolated(self, two_cycle):
        cls = classify_periodic_point(two_cycle, F(1))
        assert cls.label == BOTH_ISOLATED
        assert cls.gamma == F(1, 2)

    def test_lonely_fixed_point_has_no_gamma(self):
        cls = classify_periodic_point(build_finite_system([[5]]), F(5))
        assert cls.label == BOTH_ISOLATED and cls.gamma is None

    def test_wandering_points_are_rejected(self, theorem2_01):
        with pytest.raises(NotPeriodicError, match="not periodic"):
            classify_periodic_point(theorem2_01, F(1, 2))
        with pytest.raises(NotPeriodicError):
            classify_periodic_point(theorem2_01, F(3, 5))


class TestVerdicts:
    def test_theorem2_two_limits(self, theorem2_01):
        verdict = hyper_expansive_verdict(theorem2_01)
        assert verdict.result == HYPER_EXPANSIVE
        assert verdict.delta == F(1, 6)
        assert verdict.omega_set == (0, 1)
        assert verdict.orbit_count == 3

    def test_theorem2_three_limits(self, theorem2_three):
        assert periodic_gap_bound(theorem2_three) == F(1, 4)
        assert representative_isolation_bound(theorem2_three) == F(1, 12)
        assert expansive_delta(theorem2_three) == F(1, 12)
        assert orbit_count(theorem2_three) == 5

    def test_theorem2_four_limits(self):
        system = build_theorem2_system(FOUR_LIMITS)
        assert hyper_expansive_verdict(system).delta == F(1, 18)

    def test_translation_is_not_hyper_expansive(self, translation):
        verdict = hyper_expansive_verdict(translation)
        assert verdict.result == NOT
        assert verdict.reason == NonHyperbolicPeriodic(F(0))
        assert verdict.delta is None
        with pytest.raises(NotHyperExpansiveError):
            expansive_delta(translation)

    def test_finite_systems(self, two_cycle):
        assert hyper_expansive_verdict(two_cycle).delta == F(1, 2)
        assert orbit_count(two_cycle) == 1
        assert expansive_delta(build_finite_system([[5]])) == 1

    def test_constructions_reject_bad_limits(self):
        with pytest.raises(SpaceValidationError):
            build_theorem2_system([1, 0])
        with pytest.raises(SpaceValidationError):
            build_theorem2_system([0])
        with pytest.raises(SpaceValidationError, match="overlap"):
            build_finite_system([[0, 1], [1]])

    @pytest.mark.parametrize("limits", [[0, 1], [0, F(1, 2), 1], FOUR_LIMITS])
    def test_omega_set_is_the_recurrent_part_of_windows(self, limits, translation):
        for system in (build_theorem2_system(limits), translation):
            omega = set(omega_set(system))
            for x in realize_window(system, 4).points:
                returns = any(system.image(x, n) == x for n in range(1, 33))
                assert returns == (x in omega)


class TestInvariantSets:
    def test_counts(self, theorem2_01, translation):
        assert len(compact_invariant_sets(theorem2_01, 64)) == 4
        assert len(compact_invariant_sets(translation, 64)) == 2
        assert len(compact_invariant_sets(build_finite_system([[0, 1], [2]]), 64)) == 3

    def test_cap(self, theorem2_01):
        with pytest.raises(CapExceededError) as info:
            compact_invariant_sets(theorem2_01, 3)
        assert info.value.lower_bound >= 4

    @pytest.mark.parametrize(
        "make_system",
        [
            pytest.param(lambda: build_theorem2_system([0, 1]), id="theorem2-two"),
            pytest.param(lambda: build_theorem2_system([0, F(1, 2), 1]), id="theorem2-three"),
            pytest.param(build_translation_example, id="translation"),
        ],
    )
    def test_sets_are_invariant(self, make_system):
        system = make_system()
        chain_ids = {c.id for c in system.bi_infinite_chains}
        for invariant in compact_invariant_sets(system, 64):
            points = invariant.window_points(system, 6)
            for x in points:
                for n in range(-16, 17):
                    assert invariant.contains(system, system.image(x, n))
            if not chain_ids & set(invariant.chain_ids):
                for n in range(-16, 17):
                    assert induced_image(system, points, n) == points

    def test_brute_force_window_subsets(self, theorem2_01, translation):
        systems = [theorem2_01, translation, build_finite_system([[0, 1], [2]])]
        for system in systems:
            chain_ids = {c.id for c in system.bi_infinite_chains}
            expected = {
                invariant.window_points(system, 1)
                for invariant in compact_invariant_sets(system, 64)
                if not chain_ids & set(invariant.chain_ids)
            }
            assert set(invariant_window_subsets(system, 1)) == expected

    def test_theorem2_window_subsets(self, theorem2_01):
        assert set(invariant_window_subsets(theorem2_01, 1)) == {
            PointSet.of([0]),
            PointSet.of([1]),
            PointSet.of([0, 1]),
        }


class TestShiftAndMinimalSets:
    @pytest.mark.parametrize("k", range(1, 13))
    def test_periodic_words(self, k):
        assert shift_periodic_count(k) == 2**k

    @pytest.mark.parametrize("k,count", [(1, 2), (2, 3), (3, 4), (4, 6), (6, 14)])
    def test_orbits(self, k, count):
        assert shift_orbit_count(k) == count

    @pytest.mark.parametrize("k", [0, 21])
    def test_period_bounds(self, k):
        with pytest.raises(OracleInputError):
            shift_periodic_count(k)

    def test_eps_dense_segments(self, two_cycle, theorem2_01):
        assert eps_dense_segment(two_cycle, [0, 1], 0, F(1, 4)) == 1
        assert eps_dense_segment(two_cycle, [0, 1], 0, 2) == 0
        assert eps_dense_segment(theorem2_01, [0], 0, F(1, 8)) == 0
        three = build_finite_system([[0, 1, 2]])
        assert eps_dense_segment(three, [0, 1, 2], 0, 1) == 2
        assert eps_dense_segment(three, [0, 1, 2], 0, F(3, 2)) == 1

    def test_eps_dense_segment_errors(self, two_cycle, theorem2_01):
        with pytest.raises(PointNotInSpaceError):
            eps_dense_segment(two_cycle, [0, 1], F(1, 2), 1)
        with pytest.raises(OracleInputError):
            eps_dense_segment(theorem2_01, [0, 1], 0, 1)
        with pytest.raises(OracleInputError):
            eps_dense_segment(two_cycle, [0, 1], 0, 0)
