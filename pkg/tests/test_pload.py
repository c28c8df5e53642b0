from fractions import Fraction

import pytest

from multicutlab.generators import gen_cycle_gadget
from multicutlab.graph import Graph
from multicutlab.pload import (
    ProjectionError,
    amplification_experiment,
    check_path_hits,
    mass_outside_rooted,
    min_pload,
    min_pload_radius,
    min_pload_rooted,
    project,
    verify_pload_result,
)

F = Fraction


def path4():
    return Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])


def test_min_pload_path():
    res = min_pload(path4(), 2)
    assert res.p == F(1, 4)  # uniform over the four singleton cuts
    verify_pload_result(res)


def test_min_pload_rooted_path():
    # a shortest path of length w from the root forces p >= 1/w
    res = min_pload_rooted(path4(), 0, 2)
    assert res.p == F(1, 2)
    for i in res.distribution.y:
        assert res.distribution.family.root_radii[i] < 2


def test_min_pload_radius_constraint():
    res = min_pload_radius(path4(), 0, 2, 1)
    assert res.status == "optimal"
    mass_low = sum(
        (v for i, v in res.distribution.y.items() if res.distribution.family.root_radii[i] < 1),
        F(0),
    )
    assert mass_low >= 1 - res.p * (2 - 1)


def test_min_pload_radius_bad_k():
    with pytest.raises(ValueError):
        min_pload_radius(path4(), 0, 2, 0)


def test_gadget_frontier_values():
    gad = gen_cycle_gadget(2)
    res = min_pload_radius(gad.graph, gad.graph.mark("r"), 2, 1)
    assert 2 * res.p == F(10, 9)


def test_mass_outside_zero_on_trees():
    # trees admit rooted distributions at p = 1/w, so nothing must escape
    res = mass_outside_rooted(path4(), 0, 2, F(1, 2))
    assert res.objective == 0


def test_mass_outside_infeasible_p():
    res = mass_outside_rooted(path4(), 0, 2, F(1, 8))
    assert res.status == "infeasible"
    assert res.farkas is not None


def test_path_hit_report():
    g = path4()
    res = min_pload_rooted(g, 0, 2)
    rep = check_path_hits(g, 0, 2, [0, 1, 2], res.distribution, res.p)
    assert rep.ok
    assert rep.multi_hit_mass <= rep.bound == 2 * res.p - 1


def test_path_hit_rejects_non_shortest():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    res = min_pload_rooted(g, 0, 1)
    with pytest.raises(ValueError):
        check_path_hits(g, 0, 1, [0, 1, 2], res.distribution, res.p)


def test_projection_roundtrip():
    g = path4()
    res = min_pload(g, 2)
    proj = project(res.distribution, [0, 1])
    assert proj.total() == 1
    assert all(load <= res.p for load in proj.edge_loads())


def test_projection_rejects_invalid_member():
    # a distribution on a path with t=2: restricting members to a sub-path
    # can leave a component of diameter >= 2 in the subgraph
    g = path4()
    res = min_pload(g, 1)  # t = 2
    fam = res.distribution.family
    # hand-build a distribution whose member misses the first two edges
    from multicutlab.decompositions import ids_to_mask
    from multicutlab.pload import Distribution

    full = ids_to_mask(range(4))
    bad_mask = ids_to_mask([2, 3])
    fam.members.append(bad_mask)
    dist = Distribution(fam, {len(fam.members) - 1: F(1)})
    with pytest.raises(ProjectionError):
        project(dist, [0, 1])


def test_amplification_identity_and_growth():
    gad = gen_cycle_gadget(2)
    g, r = gad.graph, gad.graph.mark("r")
    rows = amplification_experiment(g, r, 2, [1, 2])
    assert rows[0].z == 1 and rows[0].p == F(1, 4)
    assert rows[1].z == F(1, 2) and rows[1].p == F(3, 8)
    for row in rows:
        assert row.m * row.z <= 1
