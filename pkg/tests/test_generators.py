from fractions import Fraction

import pytest

from multicutlab.generators import (
    amplify_one_sum,
    attach_path,
    gen_cactus_gap,
    gen_cycle_gadget,
    gen_star_gap,
)
from multicutlab.graph import Graph, is_cactus
from multicutlab.multicut import DistancePairs

F = Fraction


def test_cactus_gap_k1():
    c = gen_cactus_gap(1)
    g = c.graph
    assert (g.n, g.m) == (7, 7)
    assert c.instance.pairs == ((5, 6),)
    assert c.quarter_cost() == F(9, 4)
    assert is_cactus(g)


def test_cactus_gap_class_sizes():
    for k in (1, 2, 3):
        c = gen_cactus_gap(k)
        assert (len(c.e1), len(c.e2), len(c.e3)) == (k, 2 * k * k, 4 * k * k)
        assert c.quarter_cost() == F(9 * k * k, 4)
        assert is_cactus(c.graph)
        row = c.graph.dist_row(c.graph.mark("v0"))
        for e in c.e2:
            edge = c.graph.edges[e]
            assert min(row[edge.u], row[edge.v]) == 1
        for e in c.e3:
            edge = c.graph.edges[e]
            assert min(row[edge.u], row[edge.v]) == 2


def test_cactus_gap_pair_representation():
    assert isinstance(gen_cactus_gap(2).instance.pairs, tuple)
    assert isinstance(gen_cactus_gap(11).instance.pairs, DistancePairs)


def test_cactus_gap_costs():
    c = gen_cactus_gap(3)
    assert all(c.instance.costs[e] == 3 for e in c.e1)
    assert all(c.instance.costs[e] == 2 for e in c.e2)
    assert all(c.instance.costs[e] == 1 for e in c.e3)


def test_cycle_gadget():
    for w in (2, 4, 6):
        gad = gen_cycle_gadget(w)
        g = gad.graph
        assert g.m == 3 * w
        assert g.shortest_dist(g.mark("u'"), g.mark("v'")) == 2 * w
        assert is_cactus(g)
        for name in ("P_u", "P_a", "P_b", "P_v", "P_c", "P_d"):
            assert len(gad.paths[name]) == w // 2
        # quarter arcs: the marked cycle vertices are w/2 apart
        assert g.shortest_dist(g.mark("r"), g.mark("u")) == w // 2
        assert g.shortest_dist(g.mark("u"), g.mark("r'")) == w // 2
    with pytest.raises(ValueError):
        gen_cycle_gadget(3)
    with pytest.raises(ValueError):
        gen_cycle_gadget(0)


def test_star_gap():
    inst = gen_star_gap(3)
    assert inst.graph.m == 3
    assert len(inst.pairs) == 3
    with pytest.raises(ValueError):
        gen_star_gap(1)


def test_attach_path():
    g = Graph(2, [(0, 1)])
    g2, far, eids = attach_path(g, 1, 3, "tip")
    assert g2.n == 5 and g2.m == 4
    assert g2.mark("tip") == far
    assert g2.shortest_dist(0, far) == 4
    assert eids == (1, 2, 3)
    g3, far3, none = attach_path(g, 0, 0, "here")
    assert far3 == 0 and none == () and g3.mark("here") == 0


def test_amplify():
    g = Graph(2, [(0, 1)])
    glued, main = amplify_one_sum(g, 0, 2)
    assert glued.m == 2 and glued.n == 3 and main == 0
    gad = gen_cycle_gadget(2)
    big, _ = amplify_one_sum(gad.graph, gad.graph.mark("r"), 3)
    assert big.m == 18
