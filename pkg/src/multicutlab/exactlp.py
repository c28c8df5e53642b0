"""Exact rational linear programming: dense two-phase simplex.

No floating point anywhere.  All coefficients, solutions, duals, Farkas
certificates and rays are ``fractions.Fraction``.

Conventions
-----------
Variables are nonnegative unless declared free (free variables are split
internally).  Constraints are rows ``coeffs <rel> rhs`` with rel one of
``<=``, ``==``, ``>=``.

Duals ``y`` returned for an Optimal outcome satisfy, exactly:

* min problems:  ``c_j - sum_i y_i a_ij >= 0`` for every variable (with
  equality for basic/free variables), ``y_i <= 0`` for ``<=`` rows,
  ``y_i >= 0`` for ``>=`` rows, and ``y . b == objective``.
* max problems:  ``sum_i y_i a_ij - c_j >= 0``, ``y_i >= 0`` for ``<=``
  rows, ``y_i <= 0`` for ``>=`` rows, and ``y . b == objective``.

A Farkas certificate ``u`` for an infeasible system satisfies ``u_i >= 0``
for ``<=`` rows, ``u_i <= 0`` for ``>=`` rows, ``sum_i u_i a_ij >= 0`` for
every variable (``== 0`` for free ones), and ``u . b < 0``.

Pivoting uses most-negative-reduced-cost with lowest-index tie-breaks and
falls back to Bland's rule after ``BLAND_SWITCH`` pivots, which keeps runs
deterministic and guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

BLAND_SWITCH = 2000
DEFAULT_PIVOT_LIMIT = 500_000


class LpError(ValueError):
    """Malformed LP input (dimension mismatch, bad relation, ...)."""


class PivotLimitError(RuntimeError):
    """The pivot ceiling was exceeded."""


def rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Constraint:
    coeffs: dict  # var index -> Fraction, sparse
    rel: str
    rhs: Fraction


@dataclass
class Optimal:
    objective: Fraction
    primal: list
    duals: list
    pivots: int = 0

    @property
    def status(self) -> str:
        return "optimal"


@dataclass
class Infeasible:
    farkas: list
    pivots: int = 0

    @property
    def status(self) -> str:
        return "infeasible"


@dataclass
class Unbounded:
    ray: list
    pivots: int = 0

    @property
    def status(self) -> str:
        return "unbounded"


Outcome = Optimal | Infeasible | Unbounded


class LinearProgram:
    """Rational LP with incremental rows and columns.

    ``solve()`` caches the last outcome.  Adding a row the cached optimum
    already satisfies, or a column whose reduced cost is not improving
    under the cached duals, keeps the cache valid (the extended solution
    with zero dual / zero primal is provably optimal); anything else
    triggers a fresh solve.
    """

    def __init__(self, sense: str = "min", pivot_limit: int = DEFAULT_PIVOT_LIMIT):
        if sense not in ("min", "max"):
            raise LpError(f"sense must be 'min' or 'max', got {sense!r}")
        self.sense = sense
        self.pivot_limit = pivot_limit
        self.objective: list[Fraction] = []
        self.free: list[bool] = []
        self.constraints: list[Constraint] = []
        self._cache: Optimal | None = None
        self._cache_nvars = 0
        self._cache_nrows = 0

    # -- construction ------------------------------------------------------

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_rows(self) -> int:
        return len(self.constraints)

    def add_variable(self, obj=0, free: bool = False) -> int:
        self.objective.append(rat(obj))
        self.free.append(free)
        return len(self.objective) - 1

    def add_constraint(self, coeffs, rel: str, rhs) -> int:
        if rel not in ("<=", "==", ">="):
            raise LpError(f"bad relation {rel!r}")
        if isinstance(coeffs, Mapping):
            row = {int(j): rat(c) for j, c in coeffs.items() if c}
        else:
            row = {j: rat(c) for j, c in enumerate(coeffs) if c}
        for j in row:
            if not (0 <= j < self.num_vars):
                raise LpError(f"constraint references unknown variable {j}")
        self.constraints.append(Constraint(row, rel, rat(rhs)))
        return len(self.constraints) - 1

    def add_row(self, coeffs, rel: str, rhs) -> int:
        return self.add_constraint(coeffs, rel, rhs)

    def add_column(self, obj, entries: Mapping[int, object], free: bool = False) -> int:
        j = self.add_variable(obj, free)
        for i, c in entries.items():
            if not (0 <= i < self.num_rows):
                raise LpError(f"column references unknown row {i}")
            if c:
                self.constraints[i].coeffs[j] = rat(c)
        return j

    # -- solving -----------------------------------------------------------

    def solve(self) -> Outcome:
        cached = self._try_cache()
        if cached is not None:
            return cached
        outcome = _simplex(self)
        if isinstance(outcome, Optimal):
            self._cache = outcome
            self._cache_nvars = self.num_vars
            self._cache_nrows = self.num_rows
        else:
            self._cache = None
        return outcome

    def _try_cache(self) -> Optimal | None:
        c = self._cache
        if c is None:
            return None
        nv, nr = self._cache_nvars, self._cache_nrows
        if nv == self.num_vars and nr == self.num_rows:
            return c
        primal = c.primal + [ZERO] * (self.num_vars - nv)
        duals = c.duals + [ZERO] * (self.num_rows - nr)
        # new rows must hold at the cached point
        for con in self.constraints[nr:]:
            lhs = sum((cf * primal[j] for j, cf in con.coeffs.items()), ZERO)
            ok = (
                lhs <= con.rhs
                if con.rel == "<="
                else lhs >= con.rhs if con.rel == ">=" else lhs == con.rhs
            )
            if not ok:
                return None
        # new columns must price out nonnegative (min) / nonpositive (max)
        sign = 1 if self.sense == "min" else -1
        for j in range(nv, self.num_vars):
            red = self.objective[j] - sum(
                (duals[i] * con.coeffs.get(j, ZERO) for i, con in enumerate(self.constraints)),
                ZERO,
            )
            if sign * red < 0 or (self.free[j] and red != 0):
                return None
        out = Optimal(c.objective, primal, duals, c.pivots)
        self._cache = out
        self._cache_nvars = self.num_vars
        self._cache_nrows = self.num_rows
        return out

    # -- debug dump --------------------------------------------------------

    def dump(self) -> str:
        def f(x: Fraction) -> str:
            return str(x)

        lines = [
            f"{self.sense} "
            + " + ".join(f"{f(c)}*x{j}" for j, c in enumerate(self.objective) if c)
        ]
        for con in self.constraints:
            terms = " + ".join(
                f"{f(con.coeffs[j])}*x{j}" for j in sorted(con.coeffs)
            )
            lines.append(f"{terms or '0'} {con.rel} {f(con.rhs)}")
        for j, fr in enumerate(self.free):
            if fr:
                lines.append(f"x{j} free")
        return "\n".join(lines)


# -- verification helpers (used pervasively by the test suite) --------------


def constraint_holds(con: Constraint, x: Sequence[Fraction]) -> bool:
    lhs = sum((c * x[j] for j, c in con.coeffs.items()), ZERO)
    if con.rel == "<=":
        return lhs <= con.rhs
    if con.rel == ">=":
        return lhs >= con.rhs
    return lhs == con.rhs


def verify_optimal(lp: LinearProgram, out: Optimal) -> None:
    """Assert primal feasibility, dual feasibility, and strong duality."""
    x, y = out.primal, out.duals
    if len(x) != lp.num_vars or len(y) != lp.num_rows:
        raise AssertionError("solution dimensions do not match the LP")
    for j, v in enumerate(x):
        if not lp.free[j] and v < 0:
            raise AssertionError(f"primal variable {j} negative")
    for i, con in enumerate(lp.constraints):
        if not constraint_holds(con, x):
            raise AssertionError(f"primal violates row {i}")
    obj = sum((c * v for c, v in zip(lp.objective, x)), ZERO)
    if obj != out.objective:
        raise AssertionError("objective value mismatch")
    sign = 1 if lp.sense == "min" else -1
    for i, con in enumerate(lp.constraints):
        if con.rel == "<=" and sign * y[i] > 0:
            raise AssertionError(f"dual sign wrong on <= row {i}")
        if con.rel == ">=" and sign * y[i] < 0:
            raise AssertionError(f"dual sign wrong on >= row {i}")
    ydotb = ZERO
    for i, con in enumerate(lp.constraints):
        ydotb += y[i] * con.rhs
    if ydotb != out.objective:
        raise AssertionError("strong duality fails")
    # reduced costs + complementary slackness
    yA = [ZERO] * lp.num_vars
    for i, con in enumerate(lp.constraints):
        yi = y[i]
        if yi:
            for j, c in con.coeffs.items():
                yA[j] += yi * c
    for j in range(lp.num_vars):
        red = sign * (lp.objective[j] - yA[j])
        if lp.free[j]:
            if red != 0:
                raise AssertionError(f"free variable {j} has nonzero reduced cost")
        elif red < 0:
            raise AssertionError(f"variable {j} has improving reduced cost")
        elif red > 0 and x[j] != 0:
            raise AssertionError(f"complementary slackness fails on variable {j}")


def verify_farkas(lp: LinearProgram, u: Sequence[Fraction]) -> None:
    """Assert that ``u`` certifies infeasibility of the constraint system."""
    if len(u) != lp.num_rows:
        raise AssertionError("certificate dimension mismatch")
    for i, con in enumerate(lp.constraints):
        if con.rel == "<=" and u[i] < 0:
            raise AssertionError(f"certificate sign wrong on <= row {i}")
        if con.rel == ">=" and u[i] > 0:
            raise AssertionError(f"certificate sign wrong on >= row {i}")
    uA = [ZERO] * lp.num_vars
    ub = ZERO
    for i, con in enumerate(lp.constraints):
        ui = u[i]
        ub += ui * con.rhs
        if ui:
            for j, c in con.coeffs.items():
                uA[j] += ui * c
    for j in range(lp.num_vars):
        if lp.free[j]:
            if uA[j] != 0:
                raise AssertionError(f"certificate row-combination nonzero on free var {j}")
        elif uA[j] < 0:
            raise AssertionError(f"certificate row-combination negative on var {j}")
    if not ub < 0:
        raise AssertionError("certificate does not have u . b < 0")


def verify_unbounded(lp: LinearProgram, out: Unbounded) -> None:
    d = out.ray
    if len(d) != lp.num_vars:
        raise AssertionError("ray dimension mismatch")
    for j, v in enumerate(d):
        if not lp.free[j] and v < 0:
            raise AssertionError("ray leaves the nonnegative orthant")
    for i, con in enumerate(lp.constraints):
        lhs = sum((c * d[j] for j, c in con.coeffs.items()), ZERO)
        if con.rel == "<=" and lhs > 0:
            raise AssertionError(f"ray violates <= row {i}")
        if con.rel == ">=" and lhs < 0:
            raise AssertionError(f"ray violates >= row {i}")
        if con.rel == "==" and lhs != 0:
            raise AssertionError(f"ray violates == row {i}")
    obj = sum((c * v for c, v in zip(lp.objective, d)), ZERO)
    improving = obj < 0 if lp.sense == "min" else obj > 0
    if not improving:
        raise AssertionError("ray does not improve the objective")


# -- the simplex core --------------------------------------------------------


def _simplex(lp: LinearProgram) -> Outcome:
    m = lp.num_rows
    # internal column map: per LP variable one column (or two if free)
    col_of: list[tuple[int, int]] = []  # (plus column, minus column or -1)
    ncols = 0
    for j in range(lp.num_vars):
        if lp.free[j]:
            col_of.append((ncols, ncols + 1))
            ncols += 2
        else:
            col_of.append((ncols, -1))
            ncols += 1
    nstruct = ncols

    int_obj = [ZERO] * nstruct
    for j in range(lp.num_vars):
        c = lp.objective[j] if lp.sense == "min" else -lp.objective[j]
        p, q = col_of[j]
        int_obj[p] = c
        if q >= 0:
            int_obj[q] = -c

    # rows in equality form with slack columns appended
    slack_col = [-1] * m
    nslack = sum(1 for con in lp.constraints if con.rel != "==")
    total = nstruct + nslack + m  # + artificials
    art0 = nstruct + nslack

    T: list[list[Fraction]] = []
    sigma = [1] * m
    b: list[Fraction] = []
    sidx = 0
    for i, con in enumerate(lp.constraints):
        row = [ZERO] * (total + 1)
        for j, c in con.coeffs.items():
            p, q = col_of[j]
            row[p] += c
            if q >= 0:
                row[q] -= c
        if con.rel != "==":
            sc = nstruct + sidx
            sidx += 1
            slack_col[i] = sc
            row[sc] = ONE if con.rel == "<=" else -ONE
        row[total] = con.rhs
        if row[total] < 0:
            sigma[i] = -1
            row = [-c for c in row]
        row[art0 + i] = ONE
        T.append(row)
        b.append(row[total])

    basis = [art0 + i for i in range(m)]
    pivots = 0

    def pivot(r: int, col: int, red: list[Fraction]) -> None:
        nonlocal pivots
        pivots += 1
        if pivots > lp.pivot_limit:
            raise PivotLimitError(f"pivot limit {lp.pivot_limit} exceeded")
        prow = T[r]
        pv = prow[col]
        if pv != 1:
            inv = ONE / pv
            T[r] = prow = [c * inv for c in prow]
        for rr in range(m):
            if rr == r:
                continue
            row = T[rr]
            f = row[col]
            if f:
                T[rr] = [a - f * p for a, p in zip(row, prow)]
        f = red[col]
        if f:
            for j in range(total + 1):
                red[j] -= f * prow[j]
        basis[r] = col

    def run_phase(red: list[Fraction], allowed: int) -> bool:
        """Pivot to optimality; returns False if unbounded (phase 2 only).

        ``allowed`` is the number of leading columns eligible to enter.
        """
        nonlocal pivots
        seen_bases: set[frozenset[int]] = set()
        while True:
            enter = -1
            if pivots < BLAND_SWITCH:
                best = ZERO
                for j in range(allowed):
                    rj = red[j]
                    if rj < best:
                        best = rj
                        enter = j
            else:
                for j in range(allowed):
                    if red[j] < 0:
                        enter = j
                        break
                key = frozenset(basis)
                if key in seen_bases and enter >= 0:
                    raise RuntimeError("basis repeated under Bland's rule (internal bug)")
                seen_bases.add(key)
            if enter < 0:
                return True
            leave = -1
            best_ratio = None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][total] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[leave])
                    ):
                        best_ratio = ratio
                        leave = i
            if leave < 0:
                _unbounded_col[0] = enter
                return False
            pivot(leave, enter, red)

    _unbounded_col = [-1]

    # Phase 1: minimize the sum of artificials.
    red1 = [ZERO] * (total + 1)
    for j in range(art0, art0 + m):
        red1[j] = ONE
    for i in range(m):
        row = T[i]
        for j in range(total + 1):
            red1[j] -= row[j]
    run_phase(red1, art0 + m)
    phase1_obj = -red1[total]
    if phase1_obj > 0:
        # infeasible: u_i = -sigma_i * y_i with y_i = 1 - red. cost of artificial i
        u = [-sigma[i] * (ONE - red1[art0 + i]) for i in range(m)]
        return Infeasible(u, pivots)

    # Drive artificials out of the basis where possible.
    for i in range(m):
        if basis[i] >= art0:
            row = T[i]
            for j in range(art0):
                if row[j] != 0:
                    pivot(i, j, red1)
                    break

    # Phase 2.
    red2 = [ZERO] * (total + 1)
    for j in range(nstruct):
        red2[j] = int_obj[j]
    for i in range(m):
        bj = basis[i]
        cb = int_obj[bj] if bj < nstruct else ZERO
        if cb:
            row = T[i]
            for j in range(total + 1):
                red2[j] -= cb * row[j]
    if not run_phase(red2, art0):
        enter = _unbounded_col[0]
        d_int = [ZERO] * total
        d_int[enter] = ONE
        for i in range(m):
            if basis[i] < total:
                d_int[basis[i]] = -T[i][enter]
        ray = [ZERO] * lp.num_vars
        for j in range(lp.num_vars):
            p, q = col_of[j]
            ray[j] = d_int[p] - (d_int[q] if q >= 0 else ZERO)
        return Unbounded(ray, pivots)

    # Extract primal, objective, duals.
    x_int = [ZERO] * total
    for i in range(m):
        if basis[i] < total:
            x_int[basis[i]] = T[i][total]
    primal = []
    for j in range(lp.num_vars):
        p, q = col_of[j]
        primal.append(x_int[p] - (x_int[q] if q >= 0 else ZERO))
    z_int = -red2[total]
    objective = z_int if lp.sense == "min" else -z_int
    duals = []
    for i in range(m):
        yi = -red2[art0 + i]  # c_art = 0, so y_i = -reduced cost
        yi = sigma[i] * yi
        if lp.sense == "max":
            yi = -yi
        duals.append(yi)
    return Optimal(objective, primal, duals, pivots)
