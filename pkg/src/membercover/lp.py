"""Exact rational linear programming with Bland's rule.

A small dense two-phase primal simplex over `fractions.Fraction`.  All
variables are nonnegative; upper bounds are expanded into rows.  Bland's
pivoting rule (lowest eligible index for both entering and leaving
variables) guarantees termination and makes runs reproducible.

The module also builds the fractional-cover programs used by the square
solvers: the membership program (minimize the largest fractional load on
a monitored point) and the size program (minimize total weight).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .geometry import Point, frac

REL_LE = "<="
REL_GE = ">="
REL_EQ = "=="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class ConstraintRow:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction


@dataclass(frozen=True)
class LinearProgram:
    """min objective . x  subject to rows, 0 <= x_i (<= upper_bounds[i])."""

    n_vars: int
    objective: tuple[Fraction, ...]
    rows: tuple[ConstraintRow, ...]
    upper_bounds: tuple[Fraction | None, ...]

    def __post_init__(self) -> None:
        assert len(self.objective) == self.n_vars
        assert len(self.upper_bounds) == self.n_vars
        for row in self.rows:
            assert len(row.coeffs) == self.n_vars
            assert row.rel in (REL_LE, REL_GE, REL_EQ)


@dataclass(frozen=True)
class LPSolution:
    status: str
    value: Fraction | None
    assignment: tuple[Fraction, ...]

    def __getitem__(self, var: int) -> Fraction:
        return self.assignment[var]


def make_program(n_vars, objective, rows, upper_bounds=None) -> LinearProgram:
    ups = tuple(upper_bounds) if upper_bounds is not None else (None,) * n_vars
    return LinearProgram(
        n_vars=n_vars,
        objective=tuple(frac(c) for c in objective),
        rows=tuple(
            ConstraintRow(tuple(frac(c) for c in coeffs), rel, frac(rhs))
            for coeffs, rel, rhs in rows
        ),
        upper_bounds=tuple(None if u is None else frac(u) for u in ups),
    )


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    prow = tableau[row]
    for r, tr in enumerate(tableau):
        if r == row:
            continue
        factor = tr[col]
        if factor != 0:
            tableau[r] = [v - factor * pv for v, pv in zip(tr, prow)]
    basis[row] = col


def _simplex_phase(
    tableau: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    n_cols: int,
) -> str:
    """Run simplex to optimality on the given reduced-cost row (in place)."""
    while True:
        entering = -1
        for j in range(n_cols):
            if cost[j] < 0:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        leaving = -1
        best_ratio = None
        for r, trow in enumerate(tableau):
            a = trow[entering]
            if a > 0:
                ratio = trow[-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = r
        if leaving < 0:
            return UNBOUNDED
        _pivot(tableau, basis, leaving, entering)
        piv_cost = cost[entering]
        if piv_cost != 0:
            prow = tableau[leaving]
            for j in range(n_cols + 1):
                cost[j] -= piv_cost * prow[j]


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Exact optimum (or infeasible/unbounded status) of a LinearProgram."""
    rows: list[tuple[list[Fraction], str, Fraction]] = [
        (list(r.coeffs), r.rel, r.rhs) for r in lp.rows
    ]
    for i, ub in enumerate(lp.upper_bounds):
        if ub is not None:
            coeffs = [Fraction(0)] * lp.n_vars
            coeffs[i] = Fraction(1)
            rows.append((coeffs, REL_LE, ub))

    m = len(rows)
    n = lp.n_vars
    # normalize rhs >= 0, then add one slack/surplus per inequality and
    # one artificial per row lacking a natural basic column
    norm_rows = []
    for coeffs, rel, rhs in rows:
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            rel = {REL_LE: REL_GE, REL_GE: REL_LE, REL_EQ: REL_EQ}[rel]
        norm_rows.append((coeffs, rel, rhs))

    # columns: structural | slacks | artificials
    col = n
    tableau: list[list[Fraction]] = []
    basis: list[int] = [-1] * m
    slack_of_row: list[int | None] = [None] * m
    for r, (coeffs, rel, rhs) in enumerate(norm_rows):
        if rel != REL_EQ:
            slack_of_row[r] = col
            col += 1
    art_of_row: list[int | None] = [None] * m
    for r, (coeffs, rel, rhs) in enumerate(norm_rows):
        needs_artificial = rel == REL_EQ or rel == REL_GE
        if needs_artificial:
            art_of_row[r] = col
            col += 1
    n_cols = col

    for r, (coeffs, rel, rhs) in enumerate(norm_rows):
        trow = [Fraction(0)] * (n_cols + 1)
        for j, c in enumerate(coeffs):
            trow[j] = c
        if slack_of_row[r] is not None:
            trow[slack_of_row[r]] = Fraction(1) if rel == REL_LE else Fraction(-1)
        if art_of_row[r] is not None:
            trow[art_of_row[r]] = Fraction(1)
            basis[r] = art_of_row[r]
        else:
            basis[r] = slack_of_row[r]
        trow[-1] = rhs
        tableau.append(trow)

    artificials = [a for a in art_of_row if a is not None]
    if artificials:
        cost = [Fraction(0)] * (n_cols + 1)
        for a in artificials:
            cost[a] = Fraction(1)
        for r, b in enumerate(basis):
            if cost[b] != 0:
                for j in range(n_cols + 1):
                    cost[j] -= tableau[r][j]
        status = _simplex_phase(tableau, basis, cost, n_cols)
        assert status == OPTIMAL, "phase 1 is always bounded"
        if -cost[-1] != 0:
            return LPSolution(INFEASIBLE, None, ())
        # pivot artificials out of the basis where possible; a row whose
        # artificial cannot leave is redundant and dropped
        art_set = set(artificials)
        keep_rows = []
        for r in range(m):
            if basis[r] in art_set:
                pivot_col = next(
                    (
                        j
                        for j in range(n_cols)
                        if j not in art_set and tableau[r][j] != 0
                    ),
                    None,
                )
                if pivot_col is None:
                    continue
                _pivot(tableau, basis, r, pivot_col)
            keep_rows.append(r)
        tableau = [tableau[r] for r in keep_rows]
        basis = [basis[r] for r in keep_rows]
        for trow in tableau:
            for a in artificials:
                trow[a] = Fraction(0)

    cost = [Fraction(0)] * (n_cols + 1)
    for j in range(n):
        cost[j] = lp.objective[j]
    for r, b in enumerate(basis):
        if cost[b] != 0:
            factor = cost[b]
            for j in range(n_cols + 1):
                cost[j] -= factor * tableau[r][j]
    status = _simplex_phase(tableau, basis, cost, n_cols)
    if status == UNBOUNDED:
        return LPSolution(UNBOUNDED, None, ())

    assignment = [Fraction(0)] * n
    for r, b in enumerate(basis):
        if b < n:
            assignment[b] = tableau[r][-1]
    value = sum(
        (c * v for c, v in zip(lp.objective, assignment)), start=Fraction(0)
    )
    return LPSolution(OPTIMAL, value, tuple(assignment))


# ---------------------------------------------------------------------------
# cover programs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FractionalCover:
    """Range-id -> weight map with every weight in [0, 1]."""

    weights: Mapping[int, Fraction]

    def __post_init__(self) -> None:
        for rid, w in self.weights.items():
            if not 0 <= w <= 1:
                raise ValueError(f"weight of range {rid} outside [0, 1]: {w}")

    def weight(self, rid: int) -> Fraction:
        return self.weights.get(rid, Fraction(0))


def build_membership_lp(
    points: Sequence[Point], sprime: Sequence[Point], ranges: Sequence
) -> LinearProgram:
    """Fractional relaxation of the membership objective.

    Variables are one weight per range (in input order, bounded by one)
    plus a final load variable y; every point of `points` must collect
    total weight at least one, every point of `sprime` at most y.
    """
    n = len(ranges)
    rows: list[tuple[list[Fraction], str, Fraction]] = []
    for p in points:
        coeffs = [Fraction(0)] * (n + 1)
        for j, r in enumerate(ranges):
            if r.contains(p):
                coeffs[j] = Fraction(1)
        rows.append((coeffs, REL_GE, Fraction(1)))
    for q in sprime:
        coeffs = [Fraction(0)] * (n + 1)
        for j, r in enumerate(ranges):
            if r.contains(q):
                coeffs[j] = Fraction(1)
        coeffs[n] = Fraction(-1)
        rows.append((coeffs, REL_LE, Fraction(0)))
    objective = [Fraction(0)] * n + [Fraction(1)]
    uppers = [Fraction(1)] * n + [None]
    return make_program(n + 1, objective, rows, uppers)


def build_size_lp(points: Sequence[Point], ranges: Sequence) -> LinearProgram:
    """Fractional relaxation of minimum-size cover: min total weight."""
    n = len(ranges)
    rows = []
    for p in points:
        coeffs = [Fraction(0)] * n
        for j, r in enumerate(ranges):
            if r.contains(p):
                coeffs[j] = Fraction(1)
        rows.append((coeffs, REL_GE, Fraction(1)))
    objective = [Fraction(1)] * n
    uppers = [Fraction(1)] * n
    return make_program(n, objective, rows, uppers)


def weights_from_solution(sol: LPSolution, ranges: Sequence) -> FractionalCover:
    """Read the per-range weights out of a solved cover program."""
    return FractionalCover(
        {r.id: sol.assignment[j] for j, r in enumerate(ranges)}
    )


def membership_of_fractional(
    sprime: Sequence[Point], cover: FractionalCover, ranges: Sequence
) -> Fraction:
    """Largest total weight any monitored point collects; 0 when empty."""
    best = Fraction(0)
    for q in sprime:
        load = sum(
            (cover.weight(r.id) for r in ranges if r.contains(q)),
            start=Fraction(0),
        )
        if load > best:
            best = load
    return best
