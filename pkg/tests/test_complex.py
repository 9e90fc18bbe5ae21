from collections import deque
from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from cubefix.complex import (FiniteComplex, LatticeComplex, ProductComplex, ball, convex_hull,
                             cubes, cubes_at, geodesic, induced, interval, is_median_closed,
                             lattice_box, median, verify_median_graph)
from cubefix.errors import BudgetExceeded, MedianViolation, WindowRequired
from cubefix.hyperplanes import hyperplanes_between

from conftest import cycle, path

coord = st.integers(-6, 6)
pt2 = st.tuples(coord, coord)


def bfs_distances(X, src):
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        for w in X.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def brute_medians(X, x, y, z):
    D = {v: bfs_distances(X, v) for v in (x, y, z)}
    return [w for w in X.vertices
            if D[x][w] + D[y][w] == D[x][y] and D[y][w] + D[z][w] == D[y][z]
            and D[x][w] + D[z][w] == D[x][z]]


# -- distance ---------------------------------------------------------------

def test_distance_examples(plane, abc):
    assert plane.distance((0, 0), (3, 2)) == 5
    assert plane.distance((4, -1), (4, -1)) == 0
    assert abc.distance("a", "c") == 2


@given(pt2, pt2, pt2)
def test_lattice_distance_is_a_metric(x, y, z):
    L = LatticeComplex(2)
    assert L.distance(x, y) == L.distance(y, x)
    assert L.distance(x, z) <= L.distance(x, y) + L.distance(y, z)


def test_finite_distance_matches_bfs():
    X = lattice_box(2, 0, 3)
    for x in X.vertices:
        ref = bfs_distances(X, x)
        assert all(X.distance(x, y) == ref[y] for y in X.vertices)


# -- interval / geodesic ----------------------------------------------------

def test_interval_examples(plane, abc):
    assert set(interval(plane, (0, 0), (1, 1))) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert interval(plane, (2, 2), (2, 2)) == [(2, 2)]
    assert interval(abc, "a", "c") == ["a", "b", "c"]


def test_geodesic_examples(plane):
    assert geodesic(plane, (0, 0), (2, 0)) == [(0, 0), (1, 0), (2, 0)]
    assert geodesic(plane, (3, 3), (3, 3)) == [(3, 3)]


def test_geodesic_tie_break_picks_smaller_neighbour(plane):
    # the two geodesics (0,0)->(1,1); the one through (0,1) is lexicographically first
    both = [[(0, 0), (0, 1), (1, 1)], [(0, 0), (1, 0), (1, 1)]]
    assert min(both) == both[0]
    assert geodesic(plane, (0, 0), (1, 1)) == both[0]


@given(pt2, pt2)
def test_geodesic_is_deterministic_shortest_path(x, y):
    L = LatticeComplex(2)
    p = geodesic(L, x, y)
    assert p == geodesic(L, x, y)
    assert len(p) == L.distance(x, y) + 1
    assert all(L.distance(a, b) == 1 for a, b in zip(p, p[1:]))


# -- medians ----------------------------------------------------------------

def test_median_examples(plane):
    assert median(plane, (0, 0), (2, 0), (0, 2)) == (0, 0)
    assert median(plane, (0, 0), (2, 2), (2, 0)) == (2, 0)
    assert median(plane, (1, 5), (1, 5), (-3, 0)) == (1, 5)


@given(pt2, pt2, pt2)
def test_lattice_median_is_coordinatewise(x, y, z):
    L = LatticeComplex(2)
    expect = tuple(sorted(c)[1] for c in zip(x, y, z))
    assert median(L, x, y, z) == expect


def test_median_violation_on_non_median_graph():
    C6 = cycle(6)
    with pytest.raises(MedianViolation):
        median(C6, "c0", "c2", "c4")


# -- verify_median_graph ----------------------------------------------------

def brute_first_violation(X):
    for x, y, z in combinations_with_replacement(X.vertices, 3):
        if len(brute_medians(X, x, y, z)) != 1:
            return (x, y, z)
    return None


def test_square_is_median(square):
    assert verify_median_graph(square) is None


@pytest.mark.parametrize("X", [cycle(6), cycle(3), cycle(5)], ids=["C6", "K3", "C5"])
def test_non_median_graphs_rejected(X):
    expected = brute_first_violation(X)
    assert expected is not None
    assert verify_median_graph(X) == expected


def test_disconnected_graph_rejected():
    X = FiniteComplex("abc", [("a", "b")])
    assert verify_median_graph(X) is not None


def test_verify_agrees_with_brute_force_on_small_graphs():
    graphs = [path(5), lattice_box(2, 0, 2), cycle(4), cycle(8),
              FiniteComplex("abcde", [("a", "b"), ("a", "c"), ("a", "d"), ("b", "e"),
                                      ("c", "e"), ("d", "e")])]  # K_{2,3}
    for X in graphs:
        assert verify_median_graph(X) == brute_first_violation(X)


def test_median_never_raises_on_verified_graph():
    X = lattice_box(2, 0, 2)
    assert verify_median_graph(X) is None
    for trip in combinations_with_replacement(X.vertices, 3):
        median(X, *trip)


# -- cubes ------------------------------------------------------------------

def test_square_cubes(square):
    cs = cubes(square)
    assert [c.dim for c in cs].count(2) == 1
    assert [c.dim for c in cs].count(1) == 4
    assert [c.dim for c in cs].count(0) == 4
    assert square.dimension == 2


def test_tree_dimension_is_one():
    T = FiniteComplex("abcde", [("a", "b"), ("a", "c"), ("a", "d"), ("d", "e")])
    assert max(c.dim for c in cubes(T)) == 1 and T.dimension == 1


def test_unit_cube_window():
    L = LatticeComplex(3)
    box = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    cs = cubes(L, window=box)
    assert [c.dim for c in cs].count(3) == 1
    assert max(c.dim for c in cs) == 3


def test_cubes_on_infinite_backend_need_a_window(plane):
    with pytest.raises(WindowRequired):
        cubes(plane)


def test_cube_count_of_grid():
    # an m x n grid of vertices has (m-1)(n-1) squares
    X = lattice_box(2, 0, 3)
    assert sum(1 for c in cubes(X) if c.dim == 2) == 9
    assert sum(1 for c in cubes(X) if c.dim == 1) == len(X.edges)


def test_cubes_at_lattice_corner(plane):
    cs = cubes_at(plane, (0, 0))
    assert [c.dim for c in cs] == [0, 1, 1, 1, 1, 2, 2, 2, 2]


# -- ball -------------------------------------------------------------------

def test_ball_examples(plane):
    assert len(ball(plane, (0, 0), 1).vertices) == 5
    assert ball(plane, (7, 7), 0).vertices == ((7, 7),)


def test_ball_in_ternary_tree():
    # root, 3 children, each with 2 further children (3-regular), depth 3
    names, edges = ["r"], []
    frontier = ["r"]
    for depth in range(3):
        nxt = []
        for u in frontier:
            for k in range(3 if u == "r" else 2):
                v = f"{u}{k}"
                names.append(v)
                edges.append((u, v))
                nxt.append(v)
        frontier = nxt
    T = FiniteComplex(names, edges)
    assert len(ball(T, "r", 2).vertices) == 1 + 3 + 6


def test_ball_cap(plane):
    with pytest.raises(BudgetExceeded):
        ball(plane, (0, 0), 10, cap=50)


def test_ball_vertex_order_is_canonical(plane):
    B = ball(plane, (0, 0), 2)
    assert list(B.vertices) == sorted(B.vertices)


# -- cross-backend consistency ----------------------------------------------

def test_lattice_window_matches_generic(plane):
    X = lattice_box(2, -2, 2)
    for x, y in combinations(X.vertices, 2):
        assert X.distance(x, y) == plane.distance(x, y)
    assert X.dimension == plane.dimension


def test_product_window_matches_generic():
    P = ProductComplex(LatticeComplex(1), LatticeComplex(2))
    pts = [((a,), (b, c)) for a in range(2) for b in range(2) for c in range(2)]
    W = induced(P, pts)
    assert W.dimension == P.dimension == 3
    for x, y in combinations(pts, 2):
        assert W.distance(x, y) == P.distance(x, y)


def test_distance_equals_hyperplane_count_exhaustively():
    for X in (lattice_box(2, 0, 3), path(6)):
        for x, y in combinations(X.vertices, 2):
            assert X.distance(x, y) == len(hyperplanes_between(X, x, y))


@given(pt2, pt2, st.data())
def test_interval_is_median_closed(x, y, data):
    L = LatticeComplex(2)
    I = interval(L, x, y)
    members = set(I)
    u, w, z = (data.draw(st.sampled_from(I)) for _ in range(3))
    assert median(L, u, w, z) in members


def test_convex_hull_and_median_closure(abc):
    assert convex_hull(abc, ["a", "c"]) == ["a", "b", "c"]
    assert is_median_closed(abc, {"a", "c"})  # median(a,c,a) = a
    # median of (0,1), (1,0), (1,2) is (1,1)
    assert not is_median_closed(lattice_box(2, 0, 2), {(0, 1), (1, 0), (1, 2)})
