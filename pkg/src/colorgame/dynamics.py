"""Constructive procedures: improvement dynamics, quick responses, lifting."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import payoffs
from .errors import InvariantError, ValidationError
from .model import (
    Coloring,
    Graph,
    PayoffTable,
    best_response,
    change,
    check_coloring,
    is_stable,
    welfare,
)


class Step(NamedTuple):
    vertex: int
    old_color: int
    new_color: int
    welfare: Fraction


@dataclass(frozen=True)
class DynamicsTrace:
    """Record of an improvement run: every move, and the stable endpoint."""

    steps: tuple[Step, ...]
    final: Coloring

    @property
    def step_count(self) -> int:
        return len(self.steps)


def run_improvement_dynamics(
    g: Graph,
    f: PayoffTable,
    c0: Sequence[int],
    schedule: str = "round-robin",
    seed: int | None = None,
) -> DynamicsTrace:
    """Iterate best-response moves until no player can improve.

    Welfare strictly increases with every move, so termination is
    guaranteed. ``schedule`` is "round-robin" (deterministic sweeps) or
    "random" (uniform over currently improvable players; needs a seed).
    """
    c = check_coloring(g, f.k, c0)
    steps: list[Step] = []

    def move(v: int) -> bool:
        # Tie-breaking keeps the current color, so a returned t different
        # from c(v) is exactly a strict improvement.
        nonlocal c
        old = c[v - 1]
        t, _ = best_response(g, f, c, v)
        if t == old:
            return False
        c = change(c, v, t)
        steps.append(Step(v, old, t, welfare(g, f, c)))
        return True

    if schedule == "round-robin":
        moved = True
        while moved:
            moved = False
            for v in range(1, g.n + 1):
                if move(v):
                    moved = True
    elif schedule == "random":
        if seed is None:
            raise ValidationError("random schedule needs an explicit seed")
        rng = random.Random(seed)
        while True:
            improvable = [
                v for v in range(1, g.n + 1) if best_response(g, f, c, v)[0] != c[v - 1]
            ]
            if not improvable:
                break
            move(rng.choice(improvable))
    else:
        raise ValidationError(f"unknown schedule {schedule!r}")

    if not is_stable(g, f, c):
        raise InvariantError("improvement dynamics ended on an unstable coloring")
    return DynamicsTrace(steps=tuple(steps), final=c)


def quick_response(neighbor_colors: Sequence[int], f: PayoffTable) -> int:
    """A color earning at least a quarter of the conceivable payoff.

    Against any multiset of neighbor colors, the returned t satisfies
    sum_i f(|c_i - t|) >= len(colors) * f_star / 4, provided f is concave
    and nonnegative on all of 0..k. Works by aiming at the midpoint
    between the spectrum boundary on the majority side and the nearest
    peak distance, which pins every majority-side distance inside the
    region where a concave function still carries half its peak.
    """
    k = f.k
    if not f.concave:
        raise ValidationError("quick response needs a concave payoff table")
    if f.values[k] < 0:
        raise ValidationError("quick response needs f(k) >= 0")
    if not neighbor_colors:
        raise ValidationError("quick response needs at least one neighbor color")
    for color in neighbor_colors:
        if not 1 <= color <= k:
            raise ValidationError(f"neighbor color {color} outside 1..{k}")
    k_star = min(f.dis_star)
    low_side = sum(1 for color in neighbor_colors if color <= k // 2)
    if 2 * low_side >= len(neighbor_colors):
        return (k + k_star + 1) // 2
    return (k - k_star + 1) // 2


def lift_stable(g: Graph, mode: str, k: int, c2: Sequence[int]) -> Coloring:
    """Turn a stable 2-coloring under the basic payoff into a stable k-coloring.

    mode "distance": recolor 2 -> k, stable for the distance payoff.
    mode "cyclic": recolor 2 -> k/2 + 1 (k even), stable for the cyclic payoff.
    """
    c2 = check_coloring(g, 2, c2)
    base = payoffs.basic(2)
    check = is_stable(g, base, c2)
    if not check:
        raise ValidationError(
            f"input 2-coloring is not stable under the basic payoff "
            f"(vertex {check.vertex} improves by moving to {check.better_color})"
        )
    if mode == "distance":
        target = payoffs.distance(k)
        high = k
    elif mode == "cyclic":
        if k % 2 != 0:
            raise ValidationError("cyclic lift needs an even k")
        target = payoffs.cyclic(k)
        high = k // 2 + 1
    else:
        raise ValidationError(f"unknown lift mode {mode!r}")
    lifted = tuple(1 if color == 1 else high for color in c2)
    if not is_stable(g, target, lifted):
        raise InvariantError("lifted coloring failed its stability guarantee")
    return lifted
