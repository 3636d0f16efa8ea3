"""Splittings and the exact local response ratio.

A splitting assigns a nonnegative weight to every color. It certifies an
upper bound on the worst-case response ratio of a payoff table f when the
weighted payoffs cover the peak from every color p:

    sum_s weight[s] * f(|s - p|) >= f_star    for every color p.       (*)

The smallest certifiable total is the exact local ratio: every neighbor
multiset normalizes to a rational distribution over colors, the worst
distribution is a vertex of a polytope with rational data, and the
resulting minimax program is precisely the dual of minimizing a
splitting's total subject to (*). Both certificates are produced and
re-checked exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import payoffs
from .errors import BudgetError, InvariantError, ValidationError
from .exhaustive import DEFAULT_BUDGET
from .lp import solve_covering
from .model import PayoffTable


@dataclass(frozen=True)
class Splitting:
    """Nonnegative weight per color; ``total`` is the certified bound."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if any(w < 0 for w in self.weights):
            raise ValidationError("splitting weights must be nonnegative")

    @cached_property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))


@dataclass(frozen=True)
class Distribution:
    """Exact probability weights over colors 1..k."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if any(w < 0 for w in self.weights):
            raise ValidationError("distribution weights must be nonnegative")
        if sum(self.weights) != 1:
            raise ValidationError("distribution weights must sum to exactly 1")


@dataclass(frozen=True)
class LocalParamResult:
    """Exact ratio with a zero-gap certificate pair."""

    value: Fraction
    optimal_splitting: Splitting
    worst_distribution: Distribution
    dual_value: Fraction


@dataclass(frozen=True)
class SplittingCheck:
    """Truthy iff condition (*) holds; otherwise names a violated color."""

    ok: bool
    violated_color: int | None = None
    attained: Fraction | None = None
    required: Fraction | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_splitting(f: PayoffTable, s: Splitting | Sequence) -> SplittingCheck:
    """Exact check of the covering condition (*) for every color."""
    if not isinstance(s, Splitting):
        s = Splitting(tuple(s))
    if len(s.weights) != f.k:
        raise ValidationError(f"splitting has {len(s.weights)} weights, table has k={f.k}")
    support = [(s_idx, w) for s_idx, w in enumerate(s.weights, start=1) if w]
    for p in range(1, f.k + 1):
        attained = sum((w * f.values[abs(s_idx - p)] for s_idx, w in support), Fraction(0))
        if attained < f.f_star:
            return SplittingCheck(False, p, attained, f.f_star)
    return SplittingCheck(True)


def dual_bound(f: PayoffTable, mu: Distribution | Sequence) -> Fraction:
    """Certified lower bound on the ratio from a distribution over colors.

    Returns f_star divided by the best expected payoff any single response
    can earn against mu.
    """
    if not isinstance(mu, Distribution):
        mu = Distribution(tuple(mu))
    if len(mu.weights) != f.k:
        raise ValidationError(f"distribution has {len(mu.weights)} weights, table has k={f.k}")
    support = [(p, w) for p, w in enumerate(mu.weights, start=1) if w]
    best = max(
        sum((w * f.values[abs(p - t)] for p, w in support), Fraction(0))
        for t in range(1, f.k + 1)
    )
    if best == 0:
        raise ValidationError("every response earns 0 against this distribution")
    return f.f_star / best


def minimal_splitting(f: PayoffTable) -> LocalParamResult:
    """The minimum-total splitting satisfying (*), with its dual certificate.

    The value equals the exact local response ratio of f. Both sides are
    re-verified exactly before returning; the dual distribution is the
    normalized optimal dual vector and achieves zero gap.
    """
    lam, y, value = solve_covering(f)
    split = Splitting(tuple(lam))
    y_total = sum(y, Fraction(0))
    if y_total <= 0:
        raise InvariantError("dual vector of the covering program is zero")
    mu = Distribution(tuple(w / y_total for w in y))
    dual_value = dual_bound(f, mu)
    if not verify_splitting(f, split) or split.total != value or dual_value != value:
        raise InvariantError("covering optimum failed its own certificate checks")
    return LocalParamResult(
        value=value,
        optimal_splitting=split,
        worst_distribution=mu,
        dual_value=dual_value,
    )


def delta_grid_search(
    f: PayoffTable, deltas: Sequence, budget: int = DEFAULT_BUDGET
) -> list[Splitting]:
    """All splittings on the delta grid that satisfy (*).

    Every way of placing the given increments onto colors is tried: the
    splitting puts weight sum(deltas[i] for placed at s) on color s. The
    total is sum(deltas) throughout; an empty result means no splitting of
    that total exists on this grid.
    """
    deltas = [Fraction(d) for d in deltas]
    if not deltas or any(d <= 0 for d in deltas):
        raise ValidationError("delta entries must be positive rationals")
    k = f.k
    space = k ** len(deltas)
    if space > budget:
        raise BudgetError(
            f"grid search needs {space} placements but the budget is {budget}",
            required=space,
        )
    found: set[tuple[Fraction, ...]] = set()
    for placement in itertools.product(range(k), repeat=len(deltas)):
        weights = [Fraction(0)] * k
        for i, s in enumerate(placement):
            weights[s] += deltas[i]
        found.add(tuple(weights))
    passing = [Splitting(w) for w in sorted(found) if verify_splitting(f, Splitting(w))]
    return passing


def between_index(ell: int, k: int) -> int:
    """The smallest integer i in [2, ell] inside the guaranteed window.

    The window is (k-ell)(2ell-k)/ell <= i <= ell(k-ell)/(2ell-k) + 1,
    defined for k/2 < ell <= k-1. Existence is guaranteed; absence would
    contradict the bound and raises InvariantError.
    """
    if k < 3 or not (k // 2 < ell <= k - 1):
        raise ValidationError(f"between_index needs floor(k/2) < ell <= k-1, got ell={ell}, k={k}")
    lo = Fraction((k - ell) * (2 * ell - k), ell)
    hi = Fraction(ell * (k - ell), 2 * ell - k) + 1
    for i in range(2, ell + 1):
        if lo <= i <= hi:
            return i
    raise InvariantError(f"no integer in [{lo}, {hi}] within [2, {ell}]; guarantee violated")


def closed_form_splitting(f: PayoffTable, which: str, ell: int | None = None) -> Splitting:
    """The known closed-form splitting for a named family or peak regime.

    which = "affine":     weights rho/2 at colors 1 and k, for f = a*x + b;
    which = "decreasing": weights rho'/2 at colors 1 and k, for f = b - a*x;
    which = "cyclic":     weight 1 at colors 1 and floor(k/2)+1, for the
                          cyclic table (total 2, valid for every k);
    which = "left":       weight 1 at ceil(k/2) and ceil(k/2)-ell, for a
                          concave table peaking at ell < ceil(k/2);
    which = "general":    weight 1 at colors 1, between_index(ell,k), ell+1,
                          for a concave table peaking at ell > floor(k/2).

    The returned splitting is re-verified against f; a failure means the
    regime guarantee was violated and raises InvariantError.
    """
    k = f.k
    weights = [Fraction(0)] * k
    if which == "affine":
        a, b = f.values[1] - f.values[0], f.values[0]
        if a <= 0 or b < 0 or list(f.values) != [a * i + b for i in range(k + 1)]:
            raise ValidationError("affine splitting needs a table of the form a*x + b, a > 0")
        half = f.f_star / (a * (k - 1) + 2 * b)
        weights[0] = weights[k - 1] = half
    elif which == "decreasing":
        a, b = f.values[0] - f.values[1], f.values[0]
        if a <= 0 or list(f.values) != [b - a * i for i in range(k + 1)] or f.values[k - 1] < 0:
            raise ValidationError(
                "decreasing splitting needs a table of the form b - a*x with f(k-1) >= 0"
            )
        weights[0] = weights[k - 1] = f.f_star / (2 * b - a * (k - 1))
    elif which == "cyclic":
        if f.values != payoffs.cyclic(k).values:
            raise ValidationError("cyclic splitting needs the cyclic table")
        weights[0] = Fraction(1)
        weights[k // 2] = Fraction(1)  # color floor(k/2)+1, 0-based index
    elif which == "left":
        _check_peak_regime(f, ell)
        k_prime = (k + 1) // 2
        if not 1 <= ell < k_prime:
            raise ValidationError(f"left regime needs 1 <= ell < ceil(k/2), got ell={ell}")
        weights[k_prime - 1] = Fraction(1)
        weights[k_prime - ell - 1] = Fraction(1)
    elif which == "general":
        _check_peak_regime(f, ell)
        if not k // 2 < ell <= k - 1:
            raise ValidationError(f"general regime needs floor(k/2) < ell <= k-1, got ell={ell}")
        i = between_index(ell, k)
        weights[0] = Fraction(1)
        weights[i - 1] = Fraction(1)
        weights[ell] = Fraction(1)
    else:
        raise ValidationError(f"unknown splitting family {which!r}")
    split = Splitting(tuple(weights))
    check = verify_splitting(f, split)
    if not check:
        raise InvariantError(
            f"closed-form splitting {which!r} violated its guarantee at color "
            f"{check.violated_color} ({check.attained} < {check.required})"
        )
    return split


def _check_peak_regime(f: PayoffTable, ell: int | None) -> None:
    if ell is None:
        raise ValidationError("this splitting family needs an explicit ell")
    if not f.concave:
        raise ValidationError("peak-regime splittings need a concave table")
    if f.values[f.k] < 0:
        raise ValidationError("peak-regime splittings need f(k) >= 0")
    if ell not in f.dis_star:
        raise ValidationError(f"ell={ell} is not a peak distance of this table")


def transfer_bound(f: PayoffTable, ell: int) -> Fraction:
    """Upper bound on f's ratio through the tent table peaking at ell.

    Valid for concave f, nonnegative through k, with ell an interior peak
    distance: dividing f by its peak dominates the tent pointwise, and the
    ratio is scale-invariant and antitone under pointwise domination.
    """
    if not f.concave:
        raise ValidationError("transfer bound needs a concave table")
    if f.values[f.k] < 0:
        raise ValidationError("transfer bound needs f(k) >= 0")
    if ell not in f.dis_star or ell in (0, f.k - 1):
        raise ValidationError(
            f"ell={ell} must be a peak distance of the table, excluding 0 and k-1"
        )
    return minimal_splitting(payoffs.prototype(ell, f.k)).value
