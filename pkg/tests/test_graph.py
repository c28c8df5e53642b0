import pytest

from multicutlab.graph import Graph, GraphError, INF, is_cactus, one_sum


def c4():
    return Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_validation():
    with pytest.raises(GraphError):
        Graph(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 1, 0)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 1)], {"x": 5})


def test_distances_and_marks():
    g = Graph(4, [(0, 1, 2), (1, 2, 3), (0, 3, 1)], {"s": 0})
    assert g.shortest_dist(0, 2) == 5
    assert g.mark("s") == 0
    assert g.shortest_dist(3, 2) == 6
    iso = Graph(2, [])
    assert iso.shortest_dist(0, 1) == INF


def test_component_distance_convention():
    # removing one edge of a 4-cycle: distances stay measured in the full
    # graph, so the component radius from a former endpoint is 2, not 3
    g = c4()
    assert g.radius_after([0], 0) == 2
    assert g.radius_after([0], 2) == 2
    # cutting two opposite edges: vertex 0's component is {0, 3} at G-distance 1
    assert g.radius_after([0, 2], 0) == 1
    assert g.decomposition_diameter([0]) == 2
    assert g.is_t_diameter_decomposition([0], 3)
    assert not g.is_t_diameter_decomposition([0], 2)


def test_components():
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    assert g.components([]) == [(0, 1, 2), (3, 4)]
    assert g.component_of([1], 0) == (0, 1)
    assert g.component_labels([0, 1]) == [0, 1, 2, 3, 3]


def test_dist_vertex_edge():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.dist_vertex_edge(0, 0) == 0
    assert g.dist_vertex_edge(0, 2) == 2


def test_subdivide():
    g = Graph(2, [(0, 1, 3)])
    sub, remap = g.subdivide(0, 3)
    assert sub.n == 4 and sub.m == 3
    assert remap[0] == (0, 1, 2)
    assert sub.shortest_dist(0, 1) == 3
    assert all(e.length == 1 for e in sub.edges)


def test_one_sum():
    a = Graph(2, [(0, 1)], {"tip": 1})
    glued, vmaps, main = one_sum([(a, 0), (a, 0), (a, 0)])
    assert main == 0
    assert glued.n == 4 and glued.m == 3
    assert glued.marks == {"tip@0": 1, "tip@1": 2, "tip@2": 3}
    assert [vm[0] for vm in vmaps] == [0, 0, 0]
    with pytest.raises(GraphError):
        one_sum([])


def test_is_cactus():
    assert is_cactus(Graph(4, [(0, 1), (1, 2), (1, 3)]))
    assert is_cactus(c4())
    k4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert not is_cactus(k4)
    # two cycles sharing a single vertex remain a cactus
    glued, _, _ = one_sum([(c4(), 0), (c4(), 0)])
    assert is_cactus(glued)
    # two cycles sharing an edge do not
    diamond = Graph(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)])
    assert not is_cactus(diamond)
