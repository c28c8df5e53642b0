import random
from fractions import Fraction

import pytest

from multicutlab.decompositions import (
    DEFAULT_EDGE_CAP,
    EnumerationCapExceeded,
    enumerate_decompositions,
    ids_to_mask,
    mask_to_ids,
    reduce_to_multicut,
    tree_level_family,
    verify_tree_properties,
)
from multicutlab.generators import gen_cycle_gadget
from multicutlab.graph import Graph, GraphError
from multicutlab.multicut import is_feasible_multicut


def test_mask_helpers():
    assert mask_to_ids(0b1011) == (0, 1, 3)
    assert ids_to_mask([3, 0, 1]) == 0b1011


def test_single_edge():
    g = Graph(2, [(0, 1)])
    fam = enumerate_decompositions(g, 1)
    assert fam.members == [1]


def test_c4_t4_all_subsets():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    fam = enumerate_decompositions(g, 4)
    assert len(fam) == 16  # diameter 2 < 4, every subset qualifies
    fam2 = enumerate_decompositions(g, 2)
    # strictness: diam < 2 means all neighbors separated
    assert all(g.decomposition_diameter(mask_to_ids(m)) < 2 for m in fam2.members)


def test_gadget_empty_set_boundary():
    gad = gen_cycle_gadget(2)
    g = gad.graph
    assert g.decomposition_diameter([]) == 4
    assert not g.is_t_diameter_decomposition([], 4)  # 4 < 4 fails, strict
    fam = enumerate_decompositions(g, 4)
    assert 0 not in fam.members


def test_gadget_rooted_members_cut_both_arcs():
    # members whose root component has radius < w/2 must cut the two
    # quarter arcs incident to the root (each has length w/2)
    gad = gen_cycle_gadget(2)
    g, r = gad.graph, gad.graph.mark("r")
    fam = enumerate_decompositions(g, 4, root=r).restrict_radius(1)
    pu, pv = set(gad.paths["P_u"]), set(gad.paths["P_v"])
    assert len(fam) > 0
    for m in fam.members:
        F = set(mask_to_ids(m))
        assert F & pu and F & pv


def test_rooted_radii():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    fam = enumerate_decompositions(g, 4, root=0)
    assert fam.root_radii is not None
    by_mask = dict(zip(fam.members, fam.root_radii))
    assert by_mask[ids_to_mask([0, 3])] == 0  # root isolated
    assert by_mask[0] == 2


def test_cap_and_lengths():
    big = Graph(22, [(i, i + 1) for i in range(21)])
    with pytest.raises(EnumerationCapExceeded):
        enumerate_decompositions(big, 2, cap=DEFAULT_EDGE_CAP)
    weighted = Graph(2, [(0, 1, 2)])
    with pytest.raises(GraphError):
        enumerate_decompositions(weighted, 2)


def test_enumeration_matches_definition_and_reduction():
    rng = random.Random(42)
    for _ in range(20):
        n = rng.randint(2, 7)
        edges = {(rng.randrange(i), i) for i in range(1, n)}
        for _ in range(rng.randint(0, 4)):
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b:
                edges.add((min(a, b), max(a, b)))
        g = Graph(n, sorted(edges))
        for t in (2, 3):
            fam = set(enumerate_decompositions(g, t).members)
            inst, x = reduce_to_multicut(g, t)
            assert all(v == Fraction(1, t) for v in x)
            for mask in range(1 << g.m):
                F = mask_to_ids(mask)
                direct = g.is_t_diameter_decomposition(F, t)
                assert (mask in fam) == direct
                assert is_feasible_multicut(inst, F) == direct


def test_tree_levels():
    path = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    fams = tree_level_family(path, 0, 2)
    assert fams == [(0, 2), (1, 3)]
    rep = verify_tree_properties(path, 0, 2)
    assert rep.ok and rep.radii == [0, 1]
    assert all(load == Fraction(1, 2) for load in rep.loads.values())


def test_tree_levels_rejects_non_tree():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(GraphError):
        tree_level_family(g, 0, 2)


def test_family_csv():
    g = Graph(2, [(0, 1)])
    fam = enumerate_decompositions(g, 1, root=0)
    csv = fam.to_csv()
    assert csv.splitlines()[0] == "member_id,bitmask,diameter,radius_from_root"
    assert "0x1" in csv
