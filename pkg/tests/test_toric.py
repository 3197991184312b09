import pytest

from sostransfer.lattice import (
    LatticePolygon,
    TranslateContainmentError,
    dilate,
    interior_lattice_point_count,
    lattice_point_count,
    minkowski_sum,
    rectangle,
    reduced_component_total,
    veronese_triangle,
)
from sostransfer.toric import (
    PipelineStepError,
    ToricTransferError,
    TransferVerdict,
    hilbert_classic_bound,
    hilbert_classic_plan,
    improved_ternary_bound,
    iter_convex_subpolygons,
    plan_from_json_dict,
    plan_to_json_dict,
    plan_transfer,
    transfer_check,
    trapezoid,
    trapezoid_count_2q,
    veronese_step_counts,
)

FIGURE_PRISM = LatticePolygon([(0, 0), (3, 0), (2, 1), (0, 1)])


def replay_verdict(p, q):
    """Recompute a verdict from the raw geometry operations."""
    h = reduced_component_total(p, q)
    count = lattice_point_count(dilate(q, 2))
    interior = interior_lattice_point_count(minkowski_sum(p, q))
    margin = count + h - interior
    return TransferVerdict(count, h, interior, margin > 0, margin)


def replay_plan(plan):
    for step in plan.steps:
        assert replay_verdict(step.p, step.q) == step.verdict
        assert step.verdict.holds
    plan.validate()


class TestTransferCheck:
    def test_squares(self):
        v = transfer_check(rectangle(2, 2), rectangle(1, 1))
        assert (v.count_2Q, v.h, v.interior_PQ, v.holds, v.margin) == (9, 0, 4, True, 5)

    def test_degree_ten_prism(self):
        v = transfer_check(veronese_triangle(5), FIGURE_PRISM)
        assert (v.count_2Q, v.h, v.interior_PQ, v.holds, v.margin) == (18, 3, 20, True, 1)

    def test_equality_boundary(self):
        v = transfer_check(veronese_triangle(5), veronese_triangle(2))
        assert (v.count_2Q, v.h, v.interior_PQ, v.holds, v.margin) == (15, 0, 15, False, 0)

    def test_inapplicable(self):
        with pytest.raises(TranslateContainmentError):
            transfer_check(rectangle(1, 1), rectangle(2, 2))


class TestClassicPipeline:
    def test_step_counts_match_geometry(self):
        for d in range(3, 13):
            c2q, interior = veronese_step_counts(d)
            v = transfer_check(veronese_triangle(d), veronese_triangle(d - 2))
            assert (v.count_2Q, v.interior_PQ, v.h) == (c2q, interior, 0)

    def test_equality_case_margin_zero(self):
        for d in range(4, 13):
            v = transfer_check(veronese_triangle(d), veronese_triangle(d - 3))
            assert v.margin == 0 and not v.holds

    def test_classic_bounds(self):
        assert hilbert_classic_bound(3) == 2
        assert hilbert_classic_bound(4) == 4
        assert hilbert_classic_bound(5) == 8

    def test_classic_plan_totals(self):
        for d in range(3, 11):
            plan = hilbert_classic_plan(d)
            replay_plan(plan)
            assert plan.total_multiplier_degree == hilbert_classic_bound(d)
            expected_kind = "twice_unit_triangle" if d % 2 == 0 else "lawrence_prism"
            assert plan.terminal_kind == expected_kind

    def test_rejects_small_degree(self):
        with pytest.raises(ToricTransferError):
            veronese_step_counts(2)
        with pytest.raises(ToricTransferError):
            hilbert_classic_bound(2)


class TestTrapezoid:
    def test_zero_cut_is_triangle(self):
        assert trapezoid(7, 0) == veronese_triangle(7)

    def test_figure_region(self):
        assert trapezoid(8, 2) == LatticePolygon([(0, 0), (8, 0), (2, 6), (0, 6)])

    def test_count_formula(self):
        for d in range(1, 9):
            for m in range(0, d):
                assert lattice_point_count(dilate(trapezoid(d, m), 2)) == trapezoid_count_2q(d, m)

    def test_specific_count(self):
        assert trapezoid_count_2q(5, 2) == 56
        assert lattice_point_count(dilate(trapezoid(5, 2), 2)) == 56

    def test_rejects_bad_cut(self):
        with pytest.raises(ToricTransferError):
            trapezoid(3, 4)


class TestBiforms:
    def test_square_step_identities(self):
        for d in range(2, 13):
            v = transfer_check(rectangle(d, d), rectangle(d - 1, d - 1))
            assert (v.count_2Q, v.h, v.interior_PQ, v.holds) == (
                (2 * d - 1) ** 2,
                0,
                (2 * d - 2) ** 2,
                True,
            )

    def test_rectangle_two_step(self):
        for d in range(7, 13):
            first = transfer_check(rectangle(d, d), rectangle(d - 1, d - 2))
            second = transfer_check(rectangle(d - 1, d - 2), rectangle(d - 3, d - 3))
            assert first.holds and second.holds


class TestPlanner:
    def test_squares_example(self):
        plan = plan_transfer(rectangle(2, 2), families=("squares",))
        assert len(plan.steps) == 1
        assert plan.steps[0].q == rectangle(1, 1)
        assert plan.terminal_kind == "lawrence_prism"

    def test_squares_chain_total(self):
        for d in (3, 4, 5, 6):
            plan = plan_transfer(rectangle(d, d), families=("squares",))
            replay_plan(plan)
            assert plan.total_multiplier_degree == d * (d - 1)
            assert [s.q for s in plan.steps] == [rectangle(k, k) for k in range(d - 1, 0, -1)]

    def test_triangle_to_prism(self):
        plan = plan_transfer(veronese_triangle(5), families=("prisms", "veronese"))
        assert len(plan.steps) == 1
        assert plan.steps[0].q == FIGURE_PRISM
        assert plan.terminal_kind == "lawrence_prism"
        assert plan.total_multiplier_degree == 6

    def test_deterministic(self):
        one = plan_transfer(veronese_triangle(6), families=("trapezoids", "prisms", "veronese"))
        two = plan_transfer(veronese_triangle(6), families=("trapezoids", "prisms", "veronese"))
        assert one == two


class TestImprovedPipeline:
    def test_degree_five_closes_with_prism(self):
        plan, budget = improved_ternary_bound(5)
        assert len(plan.steps) == 1
        assert plan.steps[0].q == FIGURE_PRISM
        assert plan.total_multiplier_degree == 6
        assert budget == 3
        assert plan.terminal_kind == "lawrence_prism"

    def test_degree_ten_beats_classic(self):
        plan, budget = improved_ternary_bound(10)
        replay_plan(plan)
        assert budget < hilbert_classic_bound(10) == 40

    def test_all_steps_validated(self):
        plan, _ = improved_ternary_bound(17)
        replay_plan(plan)

    def test_rejects_small_degree(self):
        with pytest.raises(ToricTransferError):
            improved_ternary_bound(4)


class TestSubpolygonEnumeration:
    def test_matches_brute_force(self):
        # oracle: hulls of all subsets of the small triangle's lattice points
        for k in (2, 3):
            tri = veronese_triangle(k)
            pts = list(tri.lattice_points())
            import itertools

            seen = set()
            for size in range(3, len(pts) + 1):
                for combo in itertools.combinations(pts, size):
                    poly = LatticePolygon(combo)
                    if poly.dim != 2:
                        continue
                    xmin, ymin, _, _ = poly.bounding_box
                    seen.add(poly.translate((-xmin, -ymin)).vertices)
            enumerated = {q.vertices for q in iter_convex_subpolygons(k)}
            assert enumerated == seen

    def test_degree_cap(self):
        with pytest.raises(ToricTransferError):
            list(iter_convex_subpolygons(7))


class TestPlanJson:
    def test_round_trip(self):
        plan, _ = improved_ternary_bound(5)
        data = plan_to_json_dict(plan)
        assert data["terminal_kind"] == "lawrence_prism"
        back = plan_from_json_dict(data)
        assert back.steps == plan.steps
        assert back.total_multiplier_degree == plan.total_multiplier_degree

    def test_kind_spelling(self):
        plan = hilbert_classic_plan(4)
        assert plan_to_json_dict(plan)["terminal_kind"] == "2delta"
