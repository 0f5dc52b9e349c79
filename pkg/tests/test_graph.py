from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgpp import (Color, FgppInstance, Graph, InputError, ParseError, ProblemSpec, SolveResult, WitnessError,
                  builtin_problem, classify, format_graph, parse_graph, val, val_star)
from fgpp.graph import as_rational, decide_empty

from conftest import complete, graphs, naive_val, path, specs

ONE_ONE = ProblemSpec(1, 1, "min")


class TestVal:
    def test_single_vertex_of_triangle(self, k3):
        assert val(k3, ONE_ONE, [0]) == 2

    def test_pair_of_triangle(self, k3):
        assert val(k3, ONE_ONE, [0, 1]) == 3

    def test_empty_set_is_zero(self, k3):
        assert val(k3, ProblemSpec("7/3", "-2", "max"), []) == 0

    def test_out_of_range_vertex(self, k3):
        with pytest.raises(InputError):
            val(k3, ONE_ONE, [3])

    def test_exact_rationals(self):
        g = path(3)
        assert val(g, ProblemSpec("1/3", "1/2", "min"), [0, 1]) == Fraction(1, 3) + Fraction(1, 2)

    @given(graphs(), specs, st.data())
    def test_matches_direct_edge_scan(self, g, spec, data):
        X = data.draw(st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n)) if g.n else set()
        assert val(g, spec, X) == naive_val(g, spec, X)

    @given(graphs(max_n=8), specs, st.data())
    def test_additivity_identity(self, g, spec, data):
        side = data.draw(st.lists(st.sampled_from([0, 1, 2]), min_size=g.n, max_size=g.n))
        A = [v for v in range(g.n) if side[v] == 0]
        B = [v for v in range(g.n) if side[v] == 1]
        between = sum(1 for u, v in g.edges if {side[u], side[v]} == {0, 1})
        lhs = val(g, spec, A + B)
        assert lhs == val(g, spec, A) + val(g, spec, B) + (spec.alpha1 - 2 * spec.alpha2) * between

    @given(graphs(), specs)
    def test_whole_vertex_set(self, g, spec):
        assert val(g, spec, range(g.n)) == spec.alpha1 * g.m
        assert val(g, spec, ()) == 0


class TestValStar:
    def test_two_components(self):
        g = Graph(3, ((0, 1),))
        spec = ONE_ONE
        assert val_star(g, spec, (Color.RED,), [0, 1, 2]) == val(g, spec, [0, 1]) + val(g, spec, [2])

    def test_all_red_connected_equals_val(self):
        g = path(4)
        colors = (Color.RED,) * g.m
        assert val_star(g, ONE_ONE, colors, [0, 1, 2]) == val(g, ONE_ONE, [0, 1, 2])

    def test_blue_triangle_splits_into_singletons(self, k3):
        # three singleton components, each with two boundary edges
        assert val_star(k3, ONE_ONE, (Color.BLUE,) * 3, [0, 1, 2]) == 6

    def test_missing_coloring(self, k3):
        with pytest.raises(InputError):
            val_star(k3, ONE_ONE, None, [0])

    @given(graphs(), specs, st.data())
    def test_upper_bounds_val_when_not_degrading_min(self, g, spec, data):
        spec = ProblemSpec(spec.alpha1, max(spec.alpha2, spec.alpha1 / 2), "min")
        colors = tuple(data.draw(st.lists(st.sampled_from(list(Color)), min_size=g.m, max_size=g.m)))
        X = [v for v in range(g.n) if data.draw(st.booleans())]
        assert val_star(g, spec, colors, X) >= val(g, spec, X)


class TestClassify:
    def test_max_cut_is_degrading(self):
        assert classify(ProblemSpec(0, 1, "max")).label == "degrading"

    def test_min_vertex_cover(self):
        c = classify(ProblemSpec(1, 1, "min"))
        assert (c.label, c.positive_min, c.nondegrading_positive_min) == ("non-degrading", True, True)

    def test_sparsest_is_degrading(self):
        assert classify(ProblemSpec(1, 0, "min")).degrading

    def test_boundary_counts_as_degrading(self):
        assert classify(ProblemSpec(2, 1, "max")).degrading
        assert classify(ProblemSpec(2, 1, "min")).degrading

    def test_min_cut_flags(self):
        c = classify(ProblemSpec(0, 1, "min"))
        assert c.positive_min and not c.nondegrading_positive_min and not c.degrading

    @given(specs, st.builds(Fraction, st.integers(1, 9), st.integers(1, 5)))
    def test_invariant_under_positive_scaling(self, spec, c):
        scaled = ProblemSpec(spec.alpha1 * c, spec.alpha2 * c, spec.objective)
        assert classify(scaled) == classify(spec)


class TestCatalog:
    @pytest.mark.parametrize("name, coeffs", [
        ("max-cut", (0, 1, "max")), ("min-cut", (0, 1, "min")), ("max-vc", (1, 1, "max")),
        ("min-vc", (1, 1, "min")), ("densest", (1, 0, "max")), ("sparsest", (1, 0, "min")),
    ])
    def test_entries(self, name, coeffs):
        assert builtin_problem(name) == ProblemSpec(*coeffs)

    def test_unknown(self):
        with pytest.raises(InputError):
            builtin_problem("max-clique")


class TestParse:
    def test_path(self):
        g = parse_graph("p 3 2\ne 0 1\ne 1 2")
        assert g.edges == ((0, 1), (1, 2)) and g.max_degree == 2

    def test_triangle(self):
        g = parse_graph("p 3 3\ne 0 1\ne 1 2\ne 0 2")
        assert sorted(g.edges) == sorted(complete(3).edges)
        assert g.m == 3 and g.max_degree == 2

    def test_comments_and_blank_lines(self):
        g = parse_graph("# a comment\n\np 2 1\n# another\ne 1 0\n")
        assert g.edges == ((0, 1),)

    @pytest.mark.parametrize("text, line", [
        ("p 2 1\ne 0 0", 2),
        ("p 2 1\ne 0 2", 2),
        ("p 3 2\ne 0 1\ne 1 0", 3),
        ("p 3\n", 1),
        ("p 3 1\nx 0 1", 2),
        ("e 0 1\np 2 1", 1),
        ("p 2 1\ne 0 a", 2),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_graph(text)
        assert info.value.line == line
        assert str(info.value).startswith(f"line {line}:")

    def test_edge_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_graph("p 3 2\ne 0 1")

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_graph("# nothing\n")

    @given(graphs())
    def test_round_trip(self, g):
        assert parse_graph(format_graph(g)) == g


class TestGraphInvariants:
    def test_rejects_self_loop(self):
        with pytest.raises(InputError):
            Graph(2, ((1, 1),))

    def test_rejects_duplicate(self):
        with pytest.raises(InputError):
            Graph(2, ((0, 1), (1, 0)))

    def test_rejects_out_of_range(self):
        with pytest.raises(InputError):
            Graph(2, ((0, 2),))

    @given(graphs())
    def test_degree_and_adjacency(self, g):
        degs = [0] * g.n
        for u, v in g.edges:
            degs[u] += 1
            degs[v] += 1
            assert v in g.adjacency[u] and u in g.adjacency[v]
        assert g.max_degree == max(degs, default=0)
        assert all(g.degree(v) == degs[v] for v in range(g.n))

    def test_induced(self):
        sub, ids = complete(4).induced([1, 3, 2])
        assert ids == (1, 2, 3) and sub.m == 3


class TestInstanceAndResult:
    def test_negative_k(self, k3):
        with pytest.raises(InputError):
            FgppInstance(k3, -1, 0)

    def test_both_colorings_rejected(self, k3):
        with pytest.raises(InputError):
            FgppInstance(k3, 1, 0, node_colors=(Color.RED,) * 3, edge_colors=(Color.RED,) * 3)

    def test_accepted_rechecks_size(self, k3):
        with pytest.raises(WitnessError):
            SolveResult.accepted(FgppInstance(k3, 2, 5), ONE_ONE, [0], "test")

    def test_accepted_rechecks_threshold(self, k3):
        with pytest.raises(WitnessError):
            SolveResult.accepted(FgppInstance(k3, 2, 2), ONE_ONE, [0, 1], "test")

    def test_accepted_value(self, k3):
        r = SolveResult.accepted(FgppInstance(k3, 2, 3), ONE_ONE, [1, 0], "test")
        assert r.decision and r.witness == (0, 1) and r.value == 3

    @pytest.mark.parametrize("objective, p, expected", [("min", 0, True), ("min", -1, False),
                                                        ("max", 0, True), ("max", "1/2", False)])
    def test_k_zero(self, k3, objective, p, expected):
        r = decide_empty(FgppInstance(k3, 0, p), ProblemSpec(1, 1, objective), "test")
        assert r.decision is expected
        if expected:
            assert r.witness == ()

    @pytest.mark.parametrize("text", ["x", "1/0", ""])
    def test_bad_rational(self, text):
        with pytest.raises(InputError):
            as_rational(text)

    def test_float_rejected(self):
        with pytest.raises(InputError):
            as_rational(0.5)


@settings(max_examples=30)
@given(graphs(max_n=6))
def test_digest_is_stable(g):
    assert g.digest() == Graph(g.n, g.edges).digest()
