from fractions import Fraction

import pytest

from multicutlab.convexdecomp import (
    ConvexDecomposition,
    DominationWitness,
    decompose,
    min_alpha,
    verify_decomposition,
    verify_witness,
)
from multicutlab.generators import gen_star_gap
from multicutlab.graph import Graph
from multicutlab.multicut import MulticutInstance, NoMulticutError, solve_fractional

F = Fraction


def test_star_min_alpha():
    inst = gen_star_gap(3)
    x = solve_fractional(inst).x
    dec = min_alpha(inst, x)
    assert dec.alpha == F(4, 3)
    assert sum(dec.weights, F(0)) == 1
    verify_decomposition(inst, x, dec.alpha, dec)


def test_star_witness_below():
    inst = gen_star_gap(3)
    x = solve_fractional(inst).x
    res = decompose(inst, x, F(5, 4))
    assert isinstance(res, DominationWitness)
    assert res.value < 1
    verify_witness(inst, x, res)


def test_star_decomposition_at_min():
    inst = gen_star_gap(3)
    x = solve_fractional(inst).x
    res = decompose(inst, x, F(4, 3))
    assert isinstance(res, ConvexDecomposition)


def test_single_pair_alpha_one():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    inst = MulticutInstance(g, 1, [(0, 3)])
    x = solve_fractional(inst).x
    dec = min_alpha(inst, x)
    assert dec.alpha == 1  # a single pair: the LP optimum is itself a cut mix


def test_zero_edges_forbidden():
    g = Graph(2, [(0, 1)])
    inst = MulticutInstance(g, 1, [(0, 1)])
    res = decompose(inst, [F(0)], F(100))
    assert isinstance(res, DominationWitness)
    with pytest.raises(NoMulticutError):
        min_alpha(inst, [F(0)])


def test_csv_export():
    inst = gen_star_gap(3)
    x = solve_fractional(inst).x
    dec = min_alpha(inst, x)
    csv = dec.to_csv()
    assert csv.splitlines()[0] == "weight,edges"
    assert len(csv.splitlines()) == len(dec.multicuts) + 1
