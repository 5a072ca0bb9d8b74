import pytest

from hypothesis import given, settings

from partlyfree import (
    Edge,
    Graph,
    GraphError,
    classify_finite,
    double_cycle_witnesses,
    first_return_cycles,
    parse_graph,
    render_graph,
    saturation_vertices,
    strongly_connected_components,
    to_dot,
    transpose,
)

from conftest import cycle_graph
from test_paths import graphs


# ---------------------------------------------------------------- parsing

def test_parse_two_loops():
    g = parse_graph("vertex x\nedge e x x\nedge f x x")
    assert g.vertices == ("x",)
    assert [e.name for e in g.edges] == ["e", "f"]
    assert all(e.src == e.dst == "x" for e in g.edges)


def test_parse_single_vertex():
    g = parse_graph("vertex x")
    assert g.vertices == ("x",) and g.edges == ()


def test_parse_undeclared_endpoint():
    with pytest.raises(GraphError, match="line 1"):
        parse_graph("edge e x y")


def test_parse_errors_name_line_numbers():
    with pytest.raises(GraphError, match="line 3"):
        parse_graph("vertex x\nvertex y\nedge e x z")
    with pytest.raises(GraphError, match="line 2"):
        parse_graph("vertex x\nvertex x")
    with pytest.raises(GraphError, match="line 2"):
        parse_graph("vertex x\nedge e x")
    with pytest.raises(GraphError, match="line 1"):
        parse_graph("vertex bad name extra")


def test_parse_comments_and_blanks():
    g = parse_graph("# a comment\n\nvertex x  # trailing\nedge e x x\n")
    assert g.vertices == ("x",) and len(g.edges) == 1


def test_parse_duplicate_edge():
    with pytest.raises(GraphError):
        parse_graph("vertex x\nedge e x x\nedge e x x")


def test_render_round_trip(graph_d):
    assert parse_graph(render_graph(graph_d)) == graph_d


def test_dot_export(graph_d):
    dot = to_dot(graph_d)
    assert dot.startswith("digraph") and '"x" -> "y" [label="f"]' in dot


# ---------------------------------------------------------------- transpose

def test_transpose_two_vertices():
    g = parse_graph("vertex x1\nvertex x2\nedge e x1 x2")
    t = transpose(g)
    assert t.edges == (Edge("e", "x2", "x1"),)


def test_transpose_loop_fixed(single_loop):
    assert transpose(single_loop) == single_loop


def test_transpose_triangle(triangle):
    t = transpose(triangle)
    assert t.edge("e") == Edge("e", "x", "x")
    assert t.edge("f") == Edge("f", "y", "x")


@settings(max_examples=60)
@given(graphs())
def test_transpose_involution(g):
    assert transpose(transpose(g)) == g


# ---------------------------------------------------------------- saturation

def test_saturation_fork(fork):
    assert saturation_vertices(fork, "x1") == {"x1", "x2", "x3"}
    assert saturation_vertices(fork, "x2") == {"x2"}


def test_saturation_cycle(c3):
    for v in c3.vertices:
        assert saturation_vertices(c3, v) == set(c3.vertices)


def test_saturation_unknown_vertex(c3):
    with pytest.raises(GraphError):
        saturation_vertices(c3, "nope")


@settings(max_examples=60)
@given(graphs())
def test_saturation_recursion_identity(g):
    for x in g.vertices:
        expected = frozenset({x}).union(
            *(saturation_vertices(g, e.dst) for e in g.out_edges(x))
        )
        assert saturation_vertices(g, x) == expected


# ---------------------------------------------------------------- components

def test_scc_partition(graph_d):
    comps = strongly_connected_components(graph_d)
    assert sorted(sorted(c) for c in comps) == [["x", "y"]]


def test_scc_fork(fork):
    comps = strongly_connected_components(fork)
    assert sorted(sorted(c) for c in comps) == [["x1"], ["x2"], ["x3"]]


@settings(max_examples=60)
@given(graphs())
def test_scc_is_a_partition(g):
    comps = strongly_connected_components(g)
    flat = [v for c in comps for v in c]
    assert sorted(flat) == sorted(g.vertices)


# ---------------------------------------------------------------- cycles

def test_first_return_cycles_two_loops(two_loops):
    assert first_return_cycles(two_loops, "x", 2) == [("e",), ("f",)]


def test_first_return_cycles_d(graph_d):
    words = first_return_cycles(graph_d, "x", 4)
    assert words[:2] == [("e",), ("f", "g")]
    for w in words:
        # replay: every word is a closed first-return walk at x
        at = "x"
        for i, name in enumerate(w):
            e = graph_d.edge(name)
            assert e.src == at
            if i:
                assert e.src != "x"
            at = e.dst
        assert at == "x"


def test_double_cycle_witnesses_two_loops(two_loops):
    (w,) = double_cycle_witnesses(two_loops)
    assert w.base == "x"
    assert (w.first.word, w.second.word) == (("e",), ("f",))
    w.validate(two_loops)


def test_double_cycle_witness_d(graph_d):
    (w,) = double_cycle_witnesses(graph_d)
    assert w.base == "x"
    assert w.first.word == ("e",)
    assert w.second.word == ("f", "g")
    w.validate(graph_d)


@pytest.mark.parametrize("n", range(1, 9))
def test_cycles_have_no_double_cycle(n):
    assert double_cycle_witnesses(cycle_graph(n)) == []


def test_witnesses_deterministic(graph_d):
    assert double_cycle_witnesses(graph_d) == double_cycle_witnesses(graph_d)


@settings(max_examples=60)
@given(graphs())
def test_witnesses_replay(g):
    for w in double_cycle_witnesses(g):
        w.validate(g)
        assert w.first.word != w.second.word


# ---------------------------------------------------------------- classify

def test_classify_d_all_true(graph_d):
    report = classify_finite(graph_d)
    assert all(report.flags().values())
    assert report.warnings == ()


@pytest.mark.parametrize("n", range(1, 9))
def test_classify_cycles_all_false(n):
    report = classify_finite(cycle_graph(n))
    assert not report.lg_partly_free
    assert not report.lg_unitally_partly_free
    assert not report.ag_partly_free
    assert not report.ag_unitally_partly_free


def test_classify_fork_all_false(fork):
    report = classify_finite(fork)
    assert not any(
        [
            report.has_double_cycle,
            report.aperiodic_path,
            report.lg_partly_free,
            report.ag_partly_free,
        ]
    )


def test_classify_sink_breaks_uniformity(d_with_sink):
    report = classify_finite(d_with_sink)
    assert report.has_double_cycle and report.lg_partly_free
    assert not report.uniform_double_cycle
    assert not report.lg_unitally_partly_free
    assert not report.ag_unitally_partly_free


def test_classify_empty_graph_warns():
    report = classify_finite(Graph((), ()))
    assert not any(report.flags().values()) or report.vertex_count_finite
    assert report.warnings


def test_classify_edgeless():
    report = classify_finite(Graph(("a", "b"), ()))
    assert not report.aperiodic_path and not report.uniform_aperiodic_path
    assert report.warnings == ()


def test_hyperreflexive_flag_examples(graph_d, triangle, c3):
    assert classify_finite(graph_d).hyperreflexive_sufficient
    assert not classify_finite(triangle).hyperreflexive_sufficient
    assert not classify_finite(c3).hyperreflexive_sufficient


@settings(max_examples=60)
@given(graphs())
def test_report_invariants(g):
    report = classify_finite(g)
    flags = report.flags()
    assert flags["aperiodic_path"] == flags["has_double_cycle"]
    assert flags["uniform_aperiodic_path"] == flags["uniform_double_cycle"]
    assert flags["lg_partly_free"] == flags["aperiodic_path"]
    assert flags["lg_unitally_partly_free"] == flags["uniform_aperiodic_path"]
    assert flags["ag_partly_free"] == flags["has_double_cycle"]
    assert flags["ag_unitally_partly_free"] == flags["uniform_double_cycle"]
    if g.vertices:
        if flags["uniform_double_cycle"]:
            assert flags["has_double_cycle"]
    if flags["has_double_cycle"]:
        assert report.double_cycle_witness is not None
    # hyper-reflexivity flag equals the transpose's uniform property
    assert (
        report.hyperreflexive_sufficient
        == classify_finite(transpose(g)).uniform_aperiodic_path
    )
