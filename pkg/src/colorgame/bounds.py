"""Closed-form upper bounds on the local response ratio, by table shape.

Every rule tests its hypotheses directly on the table values (never on the
constructor label), so user-supplied tables get full coverage. The two
affine ratios are

    rho(a, b, k)  = 2 (a(k-1) + b) / (a(k-1) + 2b)   <= 2   (rising line)
    rho'(a, b, k) = 2b / (2b - a(k-1))                      (falling line)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import payoffs
from .errors import ValidationError
from .model import PayoffTable


def rho(a, b, k: int) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    return 2 * (a * (k - 1) + b) / (a * (k - 1) + 2 * b)


def rho_decreasing(a, b, k: int) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    denom = 2 * b - a * (k - 1)
    if denom <= 0:
        raise ValidationError("falling-line ratio needs 2b > a(k-1)")
    return 2 * b / denom


@dataclass(frozen=True)
class BoundEntry:
    rule: str
    value: Fraction
    note: str


@dataclass(frozen=True)
class BoundReport:
    applicable: tuple[BoundEntry, ...]
    best: Fraction | None


def upper_bounds(f: PayoffTable) -> BoundReport:
    """Every applicable closed-form ratio bound for this table."""
    k = f.k
    vals = f.values
    entries: list[BoundEntry] = []

    def add(rule: str, value, note: str) -> None:
        entries.append(BoundEntry(rule, Fraction(value), note))

    diffs = [vals[i + 1] - vals[i] for i in range(k)]
    exact_affine = all(d == diffs[0] for d in diffs)
    head = vals[:k]

    if exact_affine and diffs[0] > 0:
        add("affine", rho(diffs[0], vals[0], k), "exact rising line: 2(a(k-1)+b)/(a(k-1)+2b)")
    if exact_affine and diffs[0] < 0:
        add(
            "decreasing-affine",
            rho_decreasing(-diffs[0], vals[0], k),
            "exact falling line: 2b/(2b-a(k-1))",
        )
    if all(v == head[0] for v in head):
        add("constant", 1, "constant over distances: one weight anywhere covers the peak")
    elif f.concave:
        nondecreasing = all(head[i] <= head[i + 1] for i in range(k - 1))
        nonincreasing = all(head[i] >= head[i + 1] for i in range(k - 1))
        if nondecreasing and not exact_affine:
            a = (vals[k - 1] - vals[0]) / (k - 1)
            add(
                "concave-nondecreasing",
                rho(a, vals[0], k),
                "dominates the rising chord through f(0) and f(k-1)",
            )
        if nonincreasing and not exact_affine:
            a = (vals[0] - vals[k - 1]) / (k - 1)
            add(
                "concave-nonincreasing",
                rho_decreasing(a, vals[0], k),
                "dominates the falling chord through f(0) and f(k-1)",
            )
    if f.concave and vals[k] >= 0:
        add("concave", 4, "any concave table: quarter-of-peak response exists")
        if min(f.dis_star) <= k // 2:
            add("concave-left-peak", 2, "peak on or below floor(k/2): two-point splitting")
        if any(k // 2 < ell <= k - 2 for ell in f.dis_star):
            add("concave-right-peak", 3, "peak above floor(k/2): three-point splitting")
    if vals == payoffs.cyclic(k).values:
        add("cyclic", 2, "two-point splitting at 1 and floor(k/2)+1")
    if vals == payoffs.distance(k).values:
        add("distance-mean-value", 2 * k, "largest color class argument for f(x) = x")
    if vals == payoffs.coordination(k).values:
        add("coordination", k, "largest color class argument for the matching payoff")

    best = min((e.value for e in entries), default=None)
    return BoundReport(applicable=tuple(entries), best=best)


def mean_value_bound_distance(k: int) -> Fraction:
    """Global ratio cap of 2k for the identity payoff f(x) = x."""
    if k < 2:
        raise ValidationError(f"need k >= 2, got k={k}")
    return Fraction(2 * k)


def mean_value_deviation(neighbor_colors: Sequence[int], k: int) -> tuple[int, Fraction]:
    """The constructive move behind the 2k cap, with its guarantee.

    Picks the most frequent neighbor color t (smallest on ties) and moves
    floor(k/2) away from it; under the identity payoff that earns at least
    multiplicity * floor(k/2).
    """
    if k < 2:
        raise ValidationError(f"need k >= 2, got k={k}")
    if not neighbor_colors:
        raise ValidationError("need at least one neighbor color")
    for color in neighbor_colors:
        if not 1 <= color <= k:
            raise ValidationError(f"neighbor color {color} outside 1..{k}")
    counts = [0] * (k + 1)
    for color in neighbor_colors:
        counts[color] += 1
    multiplicity = max(counts)
    t = counts.index(multiplicity)
    move = t + k // 2 if t + k // 2 <= k else t - k // 2
    return move, Fraction(multiplicity * (k // 2))
