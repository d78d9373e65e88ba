"""Leader-follower commitment games over finite contexts.

A game is given extensionally: one leader utility tensor and one
follower utility tensor per follower type, sliced per context.  All
entries are exact rationals in [0, 1] and every comparison is exact.
Followers break exact ties by a fixed order over their actions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import InputError
from .rational import to_fraction

ContextRef = Union[int, str]


@dataclass(frozen=True)
class MixedStrategy:
    """Exact probability vector over the leader's actions."""

    weights: tuple

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise InputError("strategy weights must be nonnegative")
        if sum(self.weights, Fraction(0)) != 1:
            raise InputError("strategy weights must sum to exactly 1")

    @staticmethod
    def of(values) -> "MixedStrategy":
        return MixedStrategy(tuple(to_fraction(v) for v in values))

    @staticmethod
    def pure(num_actions: int, action: int) -> "MixedStrategy":
        w = [Fraction(0)] * num_actions
        w[action] = Fraction(1)
        return MixedStrategy(tuple(w))

    @staticmethod
    def uniform(num_actions: int) -> "MixedStrategy":
        return MixedStrategy(tuple([Fraction(1, num_actions)] * num_actions))

    def __str__(self):
        return ";".join(str(w) for w in self.weights)


def _check_tensor(tensor, shape, label):
    nz, nl, nf = shape
    if len(tensor) != nz:
        raise InputError(f"{label}: expected {nz} context slices")
    for slice_ in tensor:
        if len(slice_) != nl:
            raise InputError(f"{label}: expected {nl} leader rows per slice")
        for row in slice_:
            if len(row) != nf:
                raise InputError(f"{label}: expected {nf} follower columns")
            for v in row:
                if not (0 <= v <= 1):
                    raise InputError(f"{label}: utility {v} outside [0, 1]")


@dataclass(frozen=True, eq=False)
class StackelbergGame:
    """Finite commitment game; immutable and safe to share.

    ``leader_utility[z][a_l][a_f]`` and
    ``follower_utility[i][z][a_l][a_f]`` are nested tuples of Fractions.
    Equality is identity: games are built once and used as cache keys.
    """

    leader_actions: int
    follower_actions: int
    contexts: tuple
    num_types: int
    leader_utility: tuple
    follower_utility: tuple
    tie_break_order: tuple

    def __post_init__(self):
        if self.leader_actions < 1 or self.follower_actions < 1:
            raise InputError("need at least one action per player")
        if self.num_types < 1:
            raise InputError("need at least one follower type")
        if len(set(self.contexts)) != len(self.contexts) or not self.contexts:
            raise InputError("contexts must be nonempty and distinct")
        shape = (len(self.contexts), self.leader_actions, self.follower_actions)
        _check_tensor(self.leader_utility, shape, "leader utility")
        if len(self.follower_utility) != self.num_types:
            raise InputError("one follower tensor per type required")
        for i, tensor in enumerate(self.follower_utility):
            _check_tensor(tensor, shape, f"follower utility (type {i})")
        if sorted(self.tie_break_order) != list(range(self.follower_actions)):
            raise InputError("tie_break_order must permute the follower actions")

    def context_index(self, context: ContextRef) -> int:
        if isinstance(context, int):
            if 0 <= context < len(self.contexts):
                return context
            raise InputError(f"context index {context} out of range")
        try:
            return self.contexts.index(context)
        except ValueError:
            raise InputError(f"unknown context {context!r}") from None

    def type_index(self, type_index: int) -> int:
        if not 0 <= type_index < self.num_types:
            raise InputError(f"type index {type_index} out of range")
        return type_index


def build_game(
    leader_actions: int,
    follower_actions: int,
    contexts: Sequence,
    leader_utility,
    follower_utilities,
    tie_break_order=None,
) -> StackelbergGame:
    """Validating constructor with element-wise rational conversion."""
    conv3 = lambda t: tuple(
        tuple(tuple(to_fraction(v) for v in row) for row in slice_) for slice_ in t
    )
    order = tuple(tie_break_order) if tie_break_order else tuple(range(follower_actions))
    return StackelbergGame(
        leader_actions=leader_actions,
        follower_actions=follower_actions,
        contexts=tuple(contexts),
        num_types=len(follower_utilities),
        leader_utility=conv3(leader_utility),
        follower_utility=tuple(conv3(t) for t in follower_utilities),
        tie_break_order=order,
    )


def follower_payoffs(game, type_index, context, x) -> tuple:
    """Expected follower utility of each follower action under ``x``."""
    zi = game.context_index(context)
    ti = game.type_index(type_index)
    slice_ = game.follower_utility[ti][zi]
    return tuple(
        sum(x.weights[al] * slice_[al][af] for al in range(game.leader_actions))
        for af in range(game.follower_actions)
    )


def tied_best_responses(game, type_index, context, x) -> tuple:
    """All follower actions attaining the maximal expected utility."""
    payoffs = follower_payoffs(game, type_index, context, x)
    best = max(payoffs)
    return tuple(a for a in range(game.follower_actions) if payoffs[a] == best)


def best_response(game, type_index, context, x) -> int:
    """Utility-maximizing follower action; exact ties resolve to the
    action appearing earliest in the game's tie_break_order."""
    tied = set(tied_best_responses(game, type_index, context, x))
    for action in game.tie_break_order:
        if action in tied:
            return action
    raise AssertionError("unreachable: argmax set is nonempty")


def leader_utility_mixed(game, context, x, follower_action) -> Fraction:
    """Expected leader utility of ``x`` against a fixed follower action."""
    zi = game.context_index(context)
    if not 0 <= follower_action < game.follower_actions:
        raise InputError(f"follower action {follower_action} out of range")
    slice_ = game.leader_utility[zi]
    return sum(
        (x.weights[al] * slice_[al][follower_action] for al in range(game.leader_actions)),
        Fraction(0),
    )


def guaranteed_utility(game, context, x, type_index) -> Fraction:
    """Leader utility guaranteed at ``x`` against the given type when
    exact follower ties resolve worst-case for the leader.

    This worst-tie evaluation is the one all loss, minmax and dimension
    computations share; `best_response` (fixed order) only models a
    concrete follower.
    """
    tied = tied_best_responses(game, type_index, context, x)
    return min(leader_utility_mixed(game, context, x, a) for a in tied)


def lipschitz_bound(game) -> Fraction:
    """L1 Lipschitz constant of every mixed leader utility: the largest
    leader utility entry."""
    return max(
        v for slice_ in game.leader_utility for row in slice_ for v in row
    )


def check_distinct_types(game):
    """For every unordered type pair, search for a context at which no
    single strategy is simultaneously optimal against both.

    Returns a list of ``(type_i, type_j, witness_context_or_None)``;
    a None witness flags the pair as indistinct (reported, not fatal).
    """
    from .polytope import robust_minmax  # deferred: polytope imports game

    report = []
    for i in range(game.num_types):
        for j in range(i + 1, game.num_types):
            witness = None
            for z in game.contexts:
                sol = robust_minmax(game, z, ((i, Fraction(0)), (j, Fraction(0))))
                if sol.value > 0:
                    witness = z
                    break
            report.append((i, j, witness))
    return report
