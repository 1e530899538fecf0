"""Tests for space trees: derived sets, limit degree and admissibility."""

from bisect import bisect_left
from fractions import Fraction as F

import pytest

from src.engines import cb_rank
from src.engines.cb_rank import (
    LEAF,
    LEFT,
    OMEGA_FAMILY,
    RIGHT,
    Node,
    NodeTemplate,
    OrdinalDescriptor,
    Sequence,
    SpaceTree,
    accumulation_sides,
    adjacent_family_degree,
    adjacent_pairs,
    admits_expansive_kp,
    admits_hyper_expansive,
    build_adjacent_example,
    cardinality,
    contains_sequence_within,
    derived_set,
    finite_tree,
    iterated_derived_sets,
    limit_degree,
    one_point_compactification_tree,
    parse_tree,
    realize_tree,
    tree_to_document,
    two_limit_tree,
    true_adjacent_pairs,
)
from src.engines.errors import RankConsistencyError, ResourceBoundError, TreeValidationError
from src.engines.exact_metric import PointSet
from src.engines.space_model import Harmonic, Logistic


def depth_two_tree(M: int = 64) -> SpaceTree:
    """{0}, {1/m} and, left of every 1/m, a sequence converging to it."""
    child = NodeTemplate((Sequence(LEFT, Harmonic(F(0), F(1)), M, start=2),))
    return SpaceTree((Node(F(0), (Sequence(RIGHT, Harmonic(F(0), F(1)), M, child_template=child),)),))


def geometric_tree(depth: int, M: int = 64, inner: int = 16) -> SpaceTree:
    """0 with the terms 1/(1 + 2^m); each level below hangs a geometric sequence on
    every point, alternating sides so the neighbouring term always exists."""
    template = LEAF
    for level in range(depth - 1, 0, -1):
        side = LEFT if level % 2 == 1 else RIGHT
        template = NodeTemplate((Sequence(side, Logistic(F(1), F(0)), inner, child_template=template),))
    return SpaceTree((Node(F(0), (Sequence(RIGHT, Logistic(F(1), F(0)), M, child_template=template),)),))


def nearest_other(points: PointSet, x: F) -> F:
    values = points.points
    i = bisect_left(values, x)
    candidates = [values[j] for j in (i - 1, i + 1) if 0 <= j < len(values)]
    return min(abs(c - x) for c in candidates)


class TestCatalog:
    def test_finite_tree(self):
        tree = finite_tree([0, F(1, 2), 1])
        assert derived_set(tree).is_empty
        assert limit_degree(tree) == OrdinalDescriptor.finite(0)
        report = admits_hyper_expansive(tree)
        assert report.admits and report.card_acu == 0

    def test_one_point_compactification(self, one_point_tree):
        acu = derived_set(one_point_tree)
        assert realize_tree(acu, 8) == PointSet.of([0])
        assert limit_degree(one_point_tree).k == 1
        report = admits_hyper_expansive(one_point_tree)
        assert not report.admits
        assert report.card_acu == 1
        assert report.reason == "exactly one accumulation point"
        assert admits_expansive_kp(report.limit_degree)

    def test_two_limits(self, two_limits_tree):
        report = admits_hyper_expansive(two_limits_tree)
        assert report.admits and report.card_acu == 2
        assert report.limit_degree.k == 1

    def test_depth_two_tree(self):
        tree = depth_two_tree()
        acu = derived_set(tree)
        expected = PointSet.of([0] + [F(1, m) for m in range(1, 17)])
        assert realize_tree(acu, 16) == expected
        assert limit_degree(tree).k == 2
        assert cardinality(acu) is None
        assert not admits_hyper_expansive(tree).admits

    def test_admission_agrees_with_degree_rule(self, one_point_tree, two_limits_tree):
        trees = [finite_tree([0]), one_point_tree, two_limits_tree, depth_two_tree()]
        trees += [build_adjacent_example(k, 8) for k in range(4)]
        for tree in trees:
            report = admits_hyper_expansive(tree)
            assert report.admits == (report.limit_degree.k <= 1 and report.card_acu != 1)

    def test_omega_family_degree_is_not_admissible(self, monkeypatch):
        monkeypatch.setattr(cb_rank, "limit_degree", lambda tree: OMEGA_FAMILY)
        report = admits_hyper_expansive(depth_two_tree())
        assert not report.admits
        assert report.limit_degree is OMEGA_FAMILY
        assert report.reason == "infinitely many accumulation points"

    def test_disagreeing_rules_raise(self, two_limits_tree, monkeypatch):
        monkeypatch.setattr(cb_rank, "limit_degree", lambda tree: OrdinalDescriptor.finite(2))
        with pytest.raises(RankConsistencyError, match="admissibility mismatch"):
            admits_hyper_expansive(two_limits_tree)


class TestAdjacentExample:
    @pytest.mark.parametrize("depth", [0, 1, 2, 3, 4])
    def test_limit_degree_is_depth_plus_one(self, depth):
        tree = build_adjacent_example(depth, 6)
        assert limit_degree(tree) == OrdinalDescriptor.finite(depth + 1)
        assert admits_expansive_kp(limit_degree(tree))

    def test_stage_zero_is_the_one_point_compactification(self, one_point_tree):
        assert realize_tree(build_adjacent_example(0, 16), 16) == realize_tree(one_point_tree, 16)

    def test_stage_one_fills_the_gaps(self):
        points = realize_tree(build_adjacent_example(1, 8), 8)
        assert {F(1), F(1, 2), F(3, 4), F(2, 3), F(5, 8)} <= set(points)

    def test_family_degree_is_omega(self):
        assert adjacent_family_degree() is OMEGA_FAMILY
        assert not admits_expansive_kp(OMEGA_FAMILY)
        assert OMEGA_FAMILY.to_json() == "omega"

    @pytest.mark.parametrize("depth", [1, 2, 3, 4])
    def test_sequences_of_every_level_reach_zero(self, depth):
        stages = iterated_derived_sets(build_adjacent_example(depth, 8))
        for level in range(depth + 1):
            for n in range(1, 6):
                assert contains_sequence_within(stages[level], F(0), F(1, n))
        assert not contains_sequence_within(stages[depth + 1], F(0), F(1))

    def test_derived_sets_shrink_strictly(self):
        stages = iterated_derived_sets(build_adjacent_example(2, 64))
        realized = [realize_tree(stage, 6) for stage in stages]
        for bigger, smaller in zip(realized, realized[1:]):
            assert smaller < bigger
        assert len(realized[-1]) == 0

    def test_bounds(self):
        with pytest.raises(ResourceBoundError):
            build_adjacent_example(7, 8)
        with pytest.raises(ResourceBoundError):
            build_adjacent_example(1, 65)
        with pytest.raises(ValueError):
            build_adjacent_example(-1, 8)

    def test_stage_windows_metadata(self):
        tree = build_adjacent_example(2, 8)
        assert tree.metadata["stage_windows"] == [["0", "1"], ["0", "1/2"]]


class TestDerivedSetAgainstRealisations:
    """A sample point accumulates iff the realisation puts other points arbitrarily close to it."""

    @pytest.mark.parametrize(
        "make_tree",
        [
            pytest.param(one_point_compactification_tree, id="one-point"),
            pytest.param(two_limit_tree, id="two-limits"),
            pytest.param(depth_two_tree, id="depth-two"),
            pytest.param(lambda: build_adjacent_example(1, 64), id="adjacent-1"),
            pytest.param(lambda: build_adjacent_example(2, 64), id="adjacent-2", marks=pytest.mark.slow),
        ],
    )
    def test_refinement_brings_neighbours_closer(self, make_tree):
        tree = make_tree()
        coarse, fine = realize_tree(tree, 32), realize_tree(tree, 64)
        acu = realize_tree(derived_set(tree), 4)
        for x in realize_tree(tree, 4):
            refined = nearest_other(fine, x) < nearest_other(coarse, x)
            assert refined == (x in acu), x

    @pytest.mark.parametrize("depth", [1, 2, 3])
    def test_eps_grid_agrees_in_both_directions(self, depth):
        tree = geometric_tree(depth)
        realized = realize_tree(tree, 64)
        acu = realize_tree(derived_set(tree), 2)
        grid = [F(1, 2**j) for j in range(1, 13)]
        samples = realize_tree(tree, 2)
        assert limit_degree(tree) == OrdinalDescriptor.finite(depth)
        for x in samples:
            nearest = nearest_other(realized, x)
            if x in acu:
                assert all(nearest < eps for eps in grid), x
            else:
                assert any(nearest >= eps for eps in grid), x


class TestAdjacency:
    def test_adjacent_pairs(self):
        assert adjacent_pairs(PointSet.of([0])) == []
        assert adjacent_pairs(PointSet.of([1, 0, F(1, 2)])) == [(0, F(1, 2)), (F(1, 2), 1)]

    def test_truncation_pairs_are_dropped(self, one_point_tree):
        assert adjacent_pairs(realize_tree(one_point_tree, 3)) == [
            (0, F(1, 3)),
            (F(1, 3), F(1, 2)),
            (F(1, 2), 1),
        ]
        assert true_adjacent_pairs(one_point_tree, 3) == [(F(1, 3), F(1, 2)), (F(1, 2), 1)]

    def test_accumulation_sides(self, two_limits_tree):
        sides = accumulation_sides(two_limits_tree, 2)
        assert sides[F(0)] == {RIGHT}
        assert sides[F(1)] == {LEFT}
        assert sides[F(1, 4)] == set()


class TestTreeDocuments:
    def test_round_trip(self):
        document = tree_to_document(build_adjacent_example(2, 8))
        assert tree_to_document(parse_tree(document)) == document
        assert limit_degree(parse_tree(document)).k == 3

    def test_sequence_must_converge_to_its_node(self):
        document = {
            "roots": [
                {
                    "value": "1",
                    "attached": [
                        {"side": "right", "generator": {"kind": "harmonic", "a": "0", "b": "1"}, "truncate_at": 8}
                    ],
                }
            ]
        }
        with pytest.raises(TreeValidationError, match="converges to 0"):
            parse_tree(document)

    def test_child_without_sibling_is_rejected(self):
        inner = {"side": "right", "generator": {"kind": "harmonic", "a": "0", "b": "1"}, "truncate_at": 8, "start": 2}
        document = {
            "roots": [
                {
                    "value": "0",
                    "attached": [
                        {
                            "side": "right",
                            "generator": {"kind": "harmonic", "a": "0", "b": "1"},
                            "truncate_at": 8,
                            "child_template": {"attached": [inner]},
                        }
                    ],
                }
            ]
        }
        with pytest.raises(TreeValidationError, match="no sibling"):
            parse_tree(document)

    def test_schema_violation(self):
        with pytest.raises(TreeValidationError):
            parse_tree({"roots": [{"value": "0"}]})

    def test_empty_tree_has_no_degree(self):
        with pytest.raises(TreeValidationError):
            limit_degree(SpaceTree(()))
