"""Exact-rational linear programs over nonnegative variables.

Thin, typed wrapper around the simplex kernel.  Relations may be "<=",
"==" or ">="; all variables are implicitly >= 0, which is what every LP
in this package needs (simplex weights, epigraph variables and slack
levels are all nonnegative).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import kernel
from .rational import as_pairs, from_pairs

log = logging.getLogger(__name__)

LE = "<="
EQ = "=="
GE = ">="

_RELATIONS = (LE, EQ, GE)


@dataclass(frozen=True)
class LinearProgram:
    """min/max objective.x subject to rows, x >= 0."""

    maximize: bool
    objective: tuple
    rows: tuple  # of (coeffs tuple, relation, rhs Fraction)

    def __post_init__(self):
        n = len(self.objective)
        for coeffs, rel, _ in self.rows:
            if len(coeffs) != n:
                raise ValueError("constraint arity does not match objective")
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction]
    point: Optional[tuple]

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def make_lp(maximize, objective, rows) -> LinearProgram:
    obj = tuple(Fraction(c) for c in objective)
    frozen = tuple(
        (tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs))
        for coeffs, rel, rhs in rows
    )
    return LinearProgram(maximize, obj, frozen)


def _dump_tableau(lp: LinearProgram) -> str:
    lines = [("max " if lp.maximize else "min ") + " ".join(map(str, lp.objective))]
    for coeffs, rel, rhs in lp.rows:
        lines.append("  " + " ".join(map(str, coeffs)) + f" {rel} {rhs}")
    return "\n".join(lines)


def solve_lp(lp: LinearProgram) -> LPResult:
    """Exact optimum of ``lp`` (Bland pivoting, no floats anywhere)."""
    if log.isEnabledFor(logging.DEBUG):
        log.debug("solve_lp:\n%s", _dump_tableau(lp))
    n = len(lp.objective)
    sign = -1 if lp.maximize else 1
    slacks = sum(1 for _, rel, _ in lp.rows if rel != EQ)
    total = n + slacks

    c = [Fraction(0)] * total
    for j, coef in enumerate(lp.objective):
        c[j] = sign * coef

    a_rows = []
    b = []
    slack_i = 0
    for coeffs, rel, rhs in lp.rows:
        row = list(coeffs) + [Fraction(0)] * slacks
        if rel != EQ:
            row[n + slack_i] = Fraction(1) if rel == LE else Fraction(-1)
            slack_i += 1
        a_rows.append(as_pairs(row))
        b.append(rhs)

    status, on, od, flat = kernel.solve_standard(as_pairs(c), a_rows, as_pairs(b))
    if status == kernel.INFEASIBLE:
        return LPResult("infeasible", None, None)
    if status == kernel.UNBOUNDED:
        return LPResult("unbounded", None, None)
    value = sign * Fraction(on, od)
    point = from_pairs(flat)[:n]
    return LPResult("optimal", value, point)


def simplex_rows(num_actions: int, extra_vars: int = 0) -> list:
    """Constraint rows pinning the first ``num_actions`` variables to the
    probability simplex, padded with zeros for ``extra_vars`` trailing
    variables (nonnegativity is implicit)."""
    ones: Sequence[Fraction] = [Fraction(1)] * num_actions + [Fraction(0)] * extra_vars
    return [(tuple(ones), EQ, Fraction(1))]
