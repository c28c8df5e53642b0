import random
from fractions import Fraction

import pytest

from multicutlab.exactlp import (
    Infeasible,
    LinearProgram,
    LpError,
    Optimal,
    Unbounded,
    rat,
    verify_farkas,
    verify_optimal,
    verify_unbounded,
)

F = Fraction


def test_basic_min():
    lp = LinearProgram("min")
    x = lp.add_variable(F(1))
    y = lp.add_variable(F(2))
    lp.add_constraint({x: 1, y: 1}, ">=", F(3))
    out = lp.solve()
    assert isinstance(out, Optimal)
    assert out.objective == 3
    assert list(out.primal) == [F(3), F(0)]
    verify_optimal(lp, out)


def test_basic_max_and_duals():
    lp = LinearProgram("max")
    x = lp.add_variable(F(3))
    y = lp.add_variable(F(5))
    lp.add_constraint({x: 1}, "<=", F(4))
    lp.add_constraint({y: 2}, "<=", F(12))
    lp.add_constraint({x: 3, y: 2}, "<=", F(18))
    out = lp.solve()
    assert out.objective == 36
    verify_optimal(lp, out)


def test_infeasible_farkas():
    lp = LinearProgram("min")
    x = lp.add_variable(F(1))
    lp.add_constraint({x: 1}, "<=", F(1))
    lp.add_constraint({x: 1}, ">=", F(2))
    out = lp.solve()
    assert isinstance(out, Infeasible)
    verify_farkas(lp, out.farkas)


def test_unbounded_ray():
    lp = LinearProgram("max")
    x = lp.add_variable(F(1))
    y = lp.add_variable(F(0))
    lp.add_constraint({x: 1, y: -1}, "<=", F(1))
    out = lp.solve()
    assert isinstance(out, Unbounded)
    verify_unbounded(lp, out)


def test_free_variable():
    lp = LinearProgram("min")
    x = lp.add_variable(F(1), free=True)
    lp.add_constraint({x: 1}, ">=", F(-5))
    out = lp.solve()
    assert out.objective == -5


def test_equality_rows():
    lp = LinearProgram("min")
    x = lp.add_variable(F(2))
    y = lp.add_variable(F(3))
    lp.add_constraint({x: 1, y: 1}, "==", F(4))
    out = lp.solve()
    assert out.objective == 8
    verify_optimal(lp, out)


def test_add_row_resolve():
    lp = LinearProgram("max")
    x = lp.add_variable(F(1))
    lp.add_constraint({x: 1}, "<=", F(3))
    assert lp.solve().objective == 3
    lp.add_constraint({x: 1}, "<=", F(1))
    assert lp.solve().objective == 1
    # redundant row leaves the optimum unchanged
    lp.add_constraint({x: 1}, "<=", F(10))
    assert lp.solve().objective == 1


def test_add_column_improves_master():
    lp = LinearProgram("min")
    x = lp.add_variable(F(5))
    lp.add_constraint({x: 1}, ">=", F(1))
    assert lp.solve().objective == 5
    lp.add_column(F(2), {0: F(1)})
    assert lp.solve().objective == 2
    # non-improving column leaves the cached optimum valid
    lp.add_column(F(7), {0: F(1)})
    out = lp.solve()
    assert out.objective == 2
    verify_optimal(lp, out)


def test_rat_and_errors():
    assert rat("3/4") == F(3, 4)
    assert rat(2) == 2
    lp = LinearProgram("min")
    with pytest.raises(LpError):
        lp.add_constraint({0: 1}, ">=", F(0))  # unknown variable
    with pytest.raises(LpError):
        LinearProgram("middle")


def test_random_lps_all_verified():
    rng = random.Random(7)
    counts = {"optimal": 0, "infeasible": 0, "unbounded": 0}
    for _ in range(120):
        lp = LinearProgram(rng.choice(("min", "max")))
        nv = rng.randint(1, 4)
        for _ in range(nv):
            lp.add_variable(F(rng.randint(-3, 3)), free=rng.random() < 0.25)
        for _ in range(rng.randint(1, 4)):
            coeffs = {j: F(rng.randint(-3, 3)) for j in range(nv)}
            lp.add_constraint(coeffs, rng.choice(("<=", ">=", "==")), F(rng.randint(-4, 4)))
        out = lp.solve()
        if isinstance(out, Optimal):
            verify_optimal(lp, out)
            counts["optimal"] += 1
        elif isinstance(out, Infeasible):
            verify_farkas(lp, out.farkas)
            counts["infeasible"] += 1
        else:
            verify_unbounded(lp, out)
            counts["unbounded"] += 1
    assert all(v > 0 for v in counts.values()), counts
