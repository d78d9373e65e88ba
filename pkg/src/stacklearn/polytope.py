"""Exact optimization over follower best-response polytopes.

The simplex splits, per follower type, into closed cells on which one
group of follower actions (a "class": actions with identical follower
utility rows) is weakly optimal.  Cells whose strict version is nonempty
are the *chambers*; every worst-case quantity in this package is an
optimum of a linear program over chamber closures.

All values use the worst-tie semantics of :func:`game.guaranteed_utility`:
on exact-tie boundaries the follower action is the one worst for the
leader.  This makes losses upper semicontinuous, so infima over the
simplex are genuine limits of playable strategies; the ``attained`` flag
records whether a returned strategy achieves the value exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import CapExceededError, InputError
from .game import (
    MixedStrategy,
    StackelbergGame,
    best_response,
    guaranteed_utility,
    leader_utility_mixed,
)
from .lp import EQ, GE, LE, LinearProgram, make_lp, simplex_rows, solve_lp
from .rational import log2_fixed

MAX_OFFSET_TYPES = 8
MAX_PROFILE_ENUMERATION = 10**6

_F0 = Fraction(0)
_F1 = Fraction(1)


@dataclass(frozen=True)
class BestResponseRegion:
    """Closed polytope of strategies for which ``follower_action`` is a
    weakly-best response of ``type_index`` at ``context``.

    ``halfspaces`` are coefficient tuples h with the meaning h.x >= 0;
    the simplex constraints are implicit.
    """

    context: object
    type_index: int
    follower_action: int
    halfspaces: tuple

    def contains(self, x: MixedStrategy) -> bool:
        return all(
            sum(h[i] * x.weights[i] for i in range(len(h))) >= 0
            for h in self.halfspaces
        )


@dataclass(frozen=True)
class RobustSolution:
    value: Fraction
    strategy: MixedStrategy
    attained: bool


@dataclass(frozen=True)
class CommitmentSolution:
    strategy: MixedStrategy
    value: Fraction
    attained: bool


# ---------------------------------------------------------------------------
# chamber structure (cached per game identity)


def _follower_rows(game, zi, ti):
    """Follower-utility coefficient vector of each follower action."""
    slice_ = game.follower_utility[ti][zi]
    m = game.leader_actions
    return [
        tuple(slice_[al][af] for al in range(m))
        for af in range(game.follower_actions)
    ]


def _leader_cols(game, zi):
    slice_ = game.leader_utility[zi]
    m = game.leader_actions
    return [
        tuple(slice_[al][af] for al in range(m))
        for af in range(game.follower_actions)
    ]


def _strictly_feasible(game, rows) -> Optional[tuple]:
    """A point of the simplex satisfying row.x > 0 for every row, or
    None.  Solved as max epsilon with epsilon <= 1."""
    m = game.leader_actions
    if not rows:
        lp = make_lp(False, [_F0] * m, simplex_rows(m))
        res = solve_lp(lp)
        return res.point
    objective = [_F0] * m + [_F1]
    cons = simplex_rows(m, extra_vars=1)
    for row in rows:
        cons.append((tuple(row) + (Fraction(-1),), GE, _F0))
    cons.append((tuple([_F0] * m) + (_F1,), LE, _F1))
    res = solve_lp(make_lp(True, objective, cons))
    if res.optimal and res.value > 0:
        return res.point[:m]
    return None


@lru_cache(maxsize=None)
def _action_classes(game, zi, ti):
    """Groups of follower actions with identical utility rows, in order
    of first appearance."""
    rows = _follower_rows(game, zi, ti)
    groups = {}
    for af, row in enumerate(rows):
        groups.setdefault(row, []).append(af)
    return tuple((tuple(afs), row) for row, afs in groups.items())


@lru_cache(maxsize=None)
def _feasible_classes(game, zi, ti):
    """Classes that are strict best responses somewhere in the simplex.

    Each entry is ``(actions, weak_rows)`` where weak_rows are the
    difference rows (class row - rival class row), h.x >= 0.
    """
    classes = _action_classes(game, zi, ti)
    out = []
    for actions, row in classes:
        weak = tuple(
            tuple(row[i] - other[i] for i in range(game.leader_actions))
            for _, other in classes
            if other != row
        )
        if _strictly_feasible(game, weak) is not None:
            out.append((actions, weak))
    return tuple(out)


@lru_cache(maxsize=None)
def _chambers(game, zi, types):
    """Joint chambers for the given follower types at one context.

    Each chamber is ``(classes, weak_rows)`` with one action class per
    type; only combinations that are jointly strict somewhere survive.
    """
    per_type = [_feasible_classes(game, zi, ti) for ti in types]
    count = 1
    for fc in per_type:
        count *= len(fc)
    if count > MAX_PROFILE_ENUMERATION:
        raise CapExceededError(
            f"{count} best-response profiles exceed the enumeration cap"
        )
    chambers = []
    for combo in itertools.product(*per_type):
        weak = []
        seen = set()
        for _, rows in combo:
            for row in rows:
                if row not in seen:
                    seen.add(row)
                    weak.append(row)
        if len(types) > 1 and _strictly_feasible(game, weak) is None:
            continue
        chambers.append((tuple(actions for actions, _ in combo), tuple(weak)))
    return tuple(chambers)


@lru_cache(maxsize=None)
def _u_star(game, zi, ti) -> Fraction:
    """Supremum of the guaranteed leader utility against one type."""
    cols = _leader_cols(game, zi)
    m = game.leader_actions
    best = None
    for actions, weak in _feasible_classes(game, zi, ti):
        objective = [_F0] * m + [_F1]
        cons = simplex_rows(m, extra_vars=1)
        for row in weak:
            cons.append((tuple(row) + (_F0,), GE, _F0))
        for a in actions:
            cons.append((tuple(cols[a]) + (Fraction(-1),), GE, _F0))
        res = solve_lp(make_lp(True, objective, cons))
        if res.optimal and (best is None or res.value > best):
            best = res.value
    assert best is not None, "every type has at least one feasible class"
    return best


# ---------------------------------------------------------------------------
# public operations


def best_response_region(game, context, type_index, follower_action):
    zi = game.context_index(context)
    ti = game.type_index(type_index)
    if not 0 <= follower_action < game.follower_actions:
        raise InputError(f"follower action {follower_action} out of range")
    rows = _follower_rows(game, zi, ti)
    mine = rows[follower_action]
    halfspaces = tuple(
        tuple(mine[i] - rows[b][i] for i in range(game.leader_actions))
        for b in range(game.follower_actions)
        if b != follower_action
    )
    return BestResponseRegion(game.contexts[zi], ti, follower_action, halfspaces)


def region_is_empty(game, region: BestResponseRegion) -> bool:
    m = game.leader_actions
    cons = simplex_rows(m)
    for h in region.halfspaces:
        cons.append((tuple(h), GE, _F0))
    return not solve_lp(make_lp(False, [_F0] * m, cons)).optimal


def worst_case_value(game, context, offsets, x: MixedStrategy) -> Fraction:
    """max over (type, c) of  u*_type + c - guaranteed utility at x."""
    zi = game.context_index(context)
    return max(
        _u_star(game, zi, ti) + c - guaranteed_utility(game, zi, x, ti)
        for ti, c in offsets
    )


def _normalize_offsets(game, offsets):
    if not offsets:
        raise InputError("at least one (type, offset) pair is required")
    seen = set()
    norm = []
    for ti, c in offsets:
        ti = game.type_index(ti)
        c = Fraction(c)
        if c < 0:
            raise InputError("offsets must be nonnegative")
        if ti in seen:
            raise InputError(f"duplicate type {ti} in offsets")
        seen.add(ti)
        norm.append((ti, c))
    norm.sort()
    if len(norm) > MAX_OFFSET_TYPES:
        raise CapExceededError(f"{len(norm)} offset types exceed the cap")
    return tuple(norm)


def _chamber_lp(game, zi, offsets, ustars, chamber):
    """min t with t >= u*_j + c_j - leader utility, over the chamber."""
    classes, weak = chamber
    m = game.leader_actions
    cols = _leader_cols(game, zi)
    objective = [_F0] * m + [_F1]
    cons = simplex_rows(m, extra_vars=1)
    for row in weak:
        cons.append((tuple(row) + (_F0,), GE, _F0))
    for (ti, c), actions in zip(offsets, classes):
        rhs = ustars[ti] + c
        for a in actions:
            cons.append((tuple(cols[a]) + (_F1,), GE, rhs))
    return solve_lp(make_lp(False, objective, cons))


def _interior_refinement(game, zi, offsets, ustars, chamber, value):
    """Point of the chamber achieving ``value`` with maximal strict
    slack, or None if the chamber's optimum face is empty (cannot be)."""
    classes, weak = chamber
    m = game.leader_actions
    cols = _leader_cols(game, zi)
    objective = [_F0] * m + [_F1]
    cons = simplex_rows(m, extra_vars=1)
    for row in weak:
        cons.append((tuple(row) + (Fraction(-1),), GE, _F0))
    cons.append((tuple([_F0] * m) + (_F1,), LE, _F1))
    for (ti, c), actions in zip(offsets, classes):
        rhs = ustars[ti] + c - value
        for a in actions:
            cons.append((tuple(cols[a]) + (_F0,), GE, rhs))
    res = solve_lp(make_lp(True, objective, cons))
    if not res.optimal:
        return None, _F0
    return MixedStrategy(res.point[:m]), res.value


@lru_cache(maxsize=None)
def _robust_minmax_cached(game, zi, offsets) -> RobustSolution:
    types = tuple(ti for ti, _ in offsets)
    ustars = {ti: _u_star(game, zi, ti) for ti in types}
    solutions = []
    for chamber in _chambers(game, zi, types):
        res = _chamber_lp(game, zi, offsets, ustars, chamber)
        assert res.optimal, "chamber closures are nonempty and bounded"
        solutions.append((res.value, chamber, MixedStrategy(res.point[: game.leader_actions])))
    value = min(v for v, _, _ in solutions)
    ties = [(ch, x) for v, ch, x in solutions if v == value]
    key = lambda x: worst_case_value(game, zi, offsets, x)
    for _, x in ties:
        if key(x) == value:
            return RobustSolution(value, x, True)
    fallback = None
    for chamber, _ in ties:
        x2, slack = _interior_refinement(game, zi, offsets, ustars, chamber, value)
        if x2 is None:
            continue
        if slack > 0 or key(x2) == value:
            return RobustSolution(value, x2, True)
        if fallback is None:
            fallback = x2
    return RobustSolution(value, fallback if fallback else ties[0][1], False)


def robust_minmax(game, context, offsets) -> RobustSolution:
    """inf over the simplex of the worst offset-shifted loss.

    ``offsets`` is a nonempty collection of (type_index, c) with c >= 0;
    the value is  inf_x max_j [u*_j - guaranteed utility(x, j) + c_j].
    """
    zi = game.context_index(context)
    return _robust_minmax_cached(game, zi, _normalize_offsets(game, offsets))


def optimal_commitment(game, context, type_index) -> CommitmentSolution:
    """Best guaranteed commitment against a single known type."""
    zi = game.context_index(context)
    ti = game.type_index(type_index)
    sol = _robust_minmax_cached(game, zi, ((ti, _F0),))
    return CommitmentSolution(sol.strategy, _u_star(game, zi, ti), sol.attained)


def loss(game, context, x: MixedStrategy, type_index) -> Fraction:
    """Optimal-commitment utility minus the guaranteed utility of ``x``
    against the realized type.  Always >= 0."""
    zi = game.context_index(context)
    ti = game.type_index(type_index)
    return _u_star(game, zi, ti) - guaranteed_utility(game, zi, x, ti)


def u_star(game, context, type_index) -> Fraction:
    return _u_star(game, game.context_index(context), game.type_index(type_index))


# ---------------------------------------------------------------------------
# vertices and delta-approximate extreme points


def _solve_square(rows, rhs):
    """Exact Gaussian elimination; None when singular."""
    n = len(rhs)
    mat = [list(rows[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            return None
        mat[col], mat[pivot] = mat[pivot], mat[col]
        pv = mat[col][col]
        mat[col] = [v / pv for v in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return tuple(mat[i][n] for i in range(n))


def polytope_vertices(m, ge_rows):
    """Vertices of {x in simplex : row.x >= 0 for all rows}.

    Enumerates active sets; intended for desk-scale m.
    """
    rows = [tuple(r) for r in ge_rows]
    for i in range(m):
        unit = tuple(_F1 if j == i else _F0 for j in range(m))
        rows.append(unit)
    ones = tuple([_F1] * m)
    verts = set()
    for combo in itertools.combinations(range(len(rows)), m - 1):
        system = [ones] + [rows[i] for i in combo]
        point = _solve_square(system, [_F1] + [_F0] * (m - 1))
        if point is None:
            continue
        if any(v < 0 for v in point):
            continue
        if all(sum(r[i] * point[i] for i in range(m)) >= 0 for r in rows):
            verts.add(point)
    return sorted(verts)


def delta_extreme_points(game, context, delta) -> tuple:
    """Finite strategy set approximating region vertices within L1
    distance delta, every point consistent with actual tie-breaking."""
    delta = Fraction(delta)
    if delta <= 0:
        raise InputError("delta must be positive")
    zi = game.context_index(context)
    m = game.leader_actions
    points = set()
    for ti in range(game.num_types):
        for actions, weak in _feasible_classes(game, zi, ti):
            interior = _strictly_feasible(game, list(weak))
            for vert in polytope_vertices(m, weak):
                x = MixedStrategy(vert)
                ok_actions = set(actions)
                if best_response(game, ti, zi, x) in ok_actions:
                    points.add(vert)
                    continue
                if interior is None:
                    continue
                dist = sum(abs(a - b) for a, b in zip(interior, vert))
                if dist == 0:
                    continue
                lam = min(_F1, delta / dist)
                moved = tuple(
                    v + lam * (w - v) for v, w in zip(vert, interior)
                )
                xm = MixedStrategy(moved)
                if best_response(game, ti, zi, xm) in ok_actions:
                    points.add(moved)
    return tuple(MixedStrategy(p) for p in sorted(points))


# ---------------------------------------------------------------------------
# empirical (sample-average) commitment


def empirical_utility_maximizer(game, context, type_sample) -> CommitmentSolution:
    """Strategy maximizing the average guaranteed utility over a multiset
    of follower types."""
    sample = [game.type_index(t) for t in type_sample]
    if not sample:
        raise InputError("type sample must be nonempty")
    zi = game.context_index(context)
    m = game.leader_actions
    total = len(sample)
    weights = {}
    for t in sample:
        weights[t] = weights.get(t, 0) + 1
    types = tuple(sorted(weights))
    wfrac = {t: Fraction(weights[t], total) for t in types}
    if len(types) > MAX_OFFSET_TYPES:
        raise CapExceededError(f"{len(types)} distinct types exceed the cap")
    cols = _leader_cols(game, zi)
    nt = len(types)

    solutions = []
    for classes, weak in _chambers(game, zi, types):
        # variables: x (m), one guaranteed-utility level per type
        objective = [_F0] * m + [wfrac[t] for t in types]
        cons = simplex_rows(m, extra_vars=nt)
        for row in weak:
            cons.append((tuple(row) + (_F0,) * nt, GE, _F0))
        for pos, (t, actions) in enumerate(zip(types, classes)):
            for a in actions:
                coeff = list(cols[a]) + [_F0] * nt
                coeff[m + pos] = Fraction(-1)
                cons.append((tuple(coeff), GE, _F0))
        res = solve_lp(make_lp(True, objective, cons))
        assert res.optimal
        solutions.append((res.value, (classes, weak), MixedStrategy(res.point[:m])))
    value = max(v for v, _, _ in solutions)
    evaluate = lambda x: sum(
        (wfrac[t] * guaranteed_utility(game, zi, x, t) for t in types), _F0
    )
    ties = [(ch, x) for v, ch, x in solutions if v == value]
    for _, x in ties:
        if evaluate(x) == value:
            return CommitmentSolution(x, value, True)
    fallback = None
    for chamber, x in ties:
        x2 = _erm_interior(game, zi, types, wfrac, chamber, value)
        if x2 is not None and evaluate(x2) == value:
            return CommitmentSolution(x2, value, True)
        if fallback is None and x2 is not None:
            fallback = x2
    return CommitmentSolution(fallback if fallback else ties[0][1], value, False)


def _erm_interior(game, zi, types, wfrac, chamber, value):
    classes, weak = chamber
    m = game.leader_actions
    nt = len(types)
    cols = _leader_cols(game, zi)
    # variables: x, levels, epsilon
    objective = [_F0] * (m + nt) + [_F1]
    cons = simplex_rows(m, extra_vars=nt + 1)
    for row in weak:
        cons.append((tuple(row) + (_F0,) * nt + (Fraction(-1),), GE, _F0))
    for pos, (t, actions) in enumerate(zip(types, classes)):
        for a in actions:
            coeff = list(cols[a]) + [_F0] * (nt + 1)
            coeff[m + pos] = Fraction(-1)
            cons.append((tuple(coeff), GE, _F0))
    level_row = [_F0] * m + [wfrac[t] for t in types] + [_F0]
    cons.append((tuple(level_row), GE, value))
    cons.append((tuple([_F0] * (m + nt)) + (_F1,), LE, _F1))
    res = solve_lp(make_lp(True, objective, cons))
    if not res.optimal:
        return None
    return MixedStrategy(res.point[:m])


def pdim_bound(game) -> Fraction:
    """Closed-form pseudo-dimension bound 9 m log2(4 m k^2) as an exact
    fixed-point rational (64 fractional bits, truncated)."""
    m = game.leader_actions
    k = game.follower_actions
    return 9 * m * log2_fixed(4 * m * k * k)
