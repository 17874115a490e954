import pytest
from conftest import connected_graphs
from hypothesis import given, settings
from hypothesis import strategies as st

from robustpd.graph import (
    FamilySpec,
    Graph,
    GraphParseError,
    complete_bipartite_graph,
    complete_bipartite_parts,
    family_T_graph,
    generate,
    is_spider,
    parse_edge_list,
    parse_family,
    path_graph,
    prufer_tree,
    spider_graph,
    star_graph,
    terminal_attachments,
    twin_classes,
)


def test_parse_triangle():
    g = parse_edge_list("0 1\n1 2\n0 2")
    assert g.n == 3
    assert [g.degree(v) for v in range(3)] == [2, 2, 2]


def test_parse_k33_lines():
    text = "\n".join(f"{i} {j}" for i in range(3) for j in range(3, 6))
    g = parse_edge_list(text)
    assert g.n == 6 and g.num_edges == 9
    assert g == complete_bipartite_graph(3, 3)


def test_parse_order_irrelevant():
    assert parse_edge_list("2 1\n0 1") == parse_edge_list("0 1\n1 2")


def test_parse_comments_and_isolated_vertex():
    g = parse_edge_list("# header\n\n0 1  # trailing\n3\n")
    assert g.n == 4 and g.degree(3) == 0


@pytest.mark.parametrize("text, needle", [
    ("0 0", "self-loop"),
    ("0 1\n1 0", "duplicate"),
    ("0 1\n1 x", "line 2"),
    ("0 1 2", "line 1"),
    ("-1 2", "line 1"),
])
def test_parse_errors_name_the_problem(text, needle):
    with pytest.raises(GraphParseError, match=needle):
        parse_edge_list(text)


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 5)])


@given(connected_graphs(min_n=1, max_n=9))
def test_edge_list_round_trip(g):
    assert parse_edge_list(g.to_edge_list()) == g


@given(connected_graphs())
def test_adjacency_symmetric_and_degrees(g):
    for v in range(g.n):
        assert g.degree(v) == len(g.neighbors(v))
        assert v not in g.neighbors(v)
        for u in g.neighbors(v):
            assert v in g.neighbors(u)


def test_star16():
    g = generate(FamilySpec.star(16))
    degs = sorted(g.degree(v) for v in range(g.n))
    assert degs == [1] * 15 + [15]
    assert g.degree(0) == 15


def test_k33_is_3_regular():
    g = generate(FamilySpec.complete_bipartite(3, 3))
    assert g.n == 6 and g.num_edges == 9
    assert all(g.degree(v) == 3 for v in range(6))


def test_family_T_of_K2():
    g = generate(FamilySpec.family_T(path_graph(2)))
    assert g.n == 6
    assert g.degree(0) == g.degree(1) == 3
    assert all(g.degree(v) == 1 for v in range(2, 6))


def test_family_T_flags_add_edges():
    g = family_T_graph(path_graph(2), [True, False])
    assert g.num_edges == 1 + 4 + 1
    assert g.degree(2) == 2 and g.degree(3) == 2


@given(st.integers(1, 12), st.integers(0, 10**6))
def test_prufer_trees_are_trees_and_seeded(n, seed):
    t = prufer_tree(n, seed)
    assert t.n == n and t.is_tree()
    assert prufer_tree(n, seed) == t


def test_spider_generator():
    g = spider_graph([2, 2, 2])
    assert g.n == 7 and g.degree(0) == 3 and g.is_tree()


@pytest.mark.parametrize("bad", [
    lambda: FamilySpec.path(0),
    lambda: FamilySpec.complete_bipartite(3, 0),
    lambda: FamilySpec("nope", (1,)),
    lambda: FamilySpec.family_T(path_graph(2), [True]),
])
def test_family_spec_validation(bad):
    with pytest.raises(ValueError):
        bad()


def test_parse_family_strings():
    assert generate(parse_family("kpq:3,4")) == complete_bipartite_graph(3, 4)
    assert generate(parse_family("star:5")) == star_graph(5)
    assert generate(parse_family("path:4")) == path_graph(4)
    assert generate(parse_family("spider:1,2")) == spider_graph([1, 2])
    assert generate(parse_family("tree:8,3")) == prufer_tree(8, 3)
    with pytest.raises(GraphParseError):
        parse_family("kpq:3")


def test_parse_family_T_from_file(tmp_path):
    h = tmp_path / "h.txt"
    h.write_text("0 1\n")
    g = generate(parse_family(f"T:{h}:10"))
    assert g == family_T_graph(path_graph(2), [True, False])


def test_terminal_attachments():
    assert terminal_attachments(star_graph(16), 0) == (15, 0)
    assert terminal_attachments(path_graph(5), 2) == (2, 0)
    g = family_T_graph(path_graph(2), [True, False])
    assert terminal_attachments(g, 0)[1] == 1
    assert terminal_attachments(g, 1) == (2, 0)


def test_is_spider():
    assert is_spider(path_graph(7))
    assert is_spider(spider_graph([2, 2, 2]))
    two_hubs = Graph(8, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (3, 7)])
    assert not is_spider(two_hubs)


def test_complete_bipartite_parts():
    assert complete_bipartite_parts(complete_bipartite_graph(2, 3)) == ((0, 1), (2, 3, 4))
    assert complete_bipartite_parts(path_graph(4)) is None
    assert complete_bipartite_parts(star_graph(4)) == ((0,), (1, 2, 3))


@settings(max_examples=50)
@given(connected_graphs(max_n=7))
def test_twin_classes_partition_and_swap(g):
    classes = twin_classes(g)
    assert sorted(v for c in classes for v in c) == list(range(g.n))
    for c in classes:
        for u in c[1:]:
            # swapping two twins is an automorphism
            perm = list(range(g.n))
            perm[c[0]], perm[u] = u, c[0]
            moved = {tuple(sorted((perm[a], perm[b]))) for a, b in g.edges()}
            assert moved == set(g.edges())
