"""Constructors and analysis for the built-in payoff families."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import ValidationError
from .model import PayoffTable
from .rationals import parse_rational


def basic(k: int) -> PayoffTable:
    """0 at distance 0, 1 everywhere else: counts properly colored neighbors."""
    _check_k(k)
    return PayoffTable.from_values([0] + [1] * k, name="basic")


def coordination(k: int) -> PayoffTable:
    """1 at distance 0, 0 everywhere else: counts same-colored neighbors.

    Not concave; operations that need concavity reject it.
    """
    _check_k(k)
    return PayoffTable.from_values([1] + [0] * k, name="coordination")


def distance(k: int) -> PayoffTable:
    """The identity payoff f(x) = x: rewards maximal color distance."""
    _check_k(k)
    return PayoffTable.from_values(list(range(k + 1)), name="distance")


def cyclic(k: int) -> PayoffTable:
    """f(x) = min(x, k - x): rewards medium color distance."""
    _check_k(k)
    return PayoffTable.from_values([min(i, k - i) for i in range(k + 1)], name="cyclic")


def affine(a, b, k: int) -> PayoffTable:
    """f(x) = a*x + b with a > 0, b >= 0."""
    a, b = Fraction(a), Fraction(b)
    _check_k(k)
    if a <= 0:
        raise ValidationError(f"affine payoff needs a > 0, got a={a}")
    if b < 0:
        raise ValidationError(f"affine payoff needs b >= 0, got b={b}")
    return PayoffTable.from_values([a * i + b for i in range(k + 1)], name="affine")


def decreasing_affine(a, b, k: int) -> PayoffTable:
    """f(x) = b - a*x with a > 0, b >= 0 and f(k-1) >= 0.

    The value at distance k may be negative; no reachable distance ever
    evaluates it.
    """
    a, b = Fraction(a), Fraction(b)
    _check_k(k)
    if a <= 0:
        raise ValidationError(f"decreasing payoff needs a > 0, got a={a}")
    if b < 0:
        raise ValidationError(f"decreasing payoff needs b >= 0, got b={b}")
    if b - a * (k - 1) < 0:
        raise ValidationError(f"decreasing payoff needs b - a(k-1) >= 0, got {b - a * (k - 1)}")
    return PayoffTable.from_values([b - a * i for i in range(k + 1)], name="decreasing")


def prototype(ell: int, k: int) -> PayoffTable:
    """Tent function: 0 at 0, rising to 1 at ell, falling back to 0 at k."""
    _check_k(k)
    if not 1 <= ell <= k - 1:
        raise ValidationError(f"prototype needs 1 <= ell <= k-1, got ell={ell}, k={k}")
    values = [Fraction(i, ell) if i <= ell else Fraction(k - i, k - ell) for i in range(k + 1)]
    return PayoffTable.from_values(values, name=f"proto:{ell}")


def scale(f: PayoffTable, gamma) -> PayoffTable:
    """Multiply every value by a positive rational; concavity is preserved."""
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValidationError(f"scale factor must be positive, got {gamma}")
    scaled = PayoffTable.from_values([gamma * v for v in f.values], name=f.name)
    assert scaled.concave == f.concave
    return scaled


def f_star(f: PayoffTable) -> Fraction:
    """Maximum payoff value over the reachable distances 0..k-1."""
    return f.f_star


def dis_star(f: PayoffTable) -> frozenset[int]:
    """Set of distances where the maximum is attained."""
    return f.dis_star


def random_concave(rng: random.Random, k: int, magnitude: int = 6) -> PayoffTable:
    """A random concave rational table with all of f(0..k) nonnegative.

    Draws non-increasing integer slopes, accumulates, and shifts up so the
    whole table is nonnegative; values share a random small denominator.
    """
    _check_k(k)
    denom = rng.randint(1, 4)
    while True:
        slopes = sorted((rng.randint(-magnitude, magnitude) for _ in range(k)), reverse=True)
        values = [rng.randint(0, magnitude)]
        for s in slopes:
            values.append(values[-1] + s)
        low = min(values)
        if low < 0:
            values = [v - low for v in values]
        if max(values[:k]) > 0:
            return PayoffTable.from_values([Fraction(v, denom) for v in values])


# CLI payoff specs: "basic", "coordination", "distance", "cyclic",
# "affine:a/b", "decreasing:a/b", "proto:ell", "table:v0,v1,...,vk".
# For affine/decreasing, "a/b" with two integers means the pair (a, b);
# rational parameters are separated by a comma instead: "affine:1/2,3".


def _parse_pair(arg: str, spec: str) -> tuple[Fraction, Fraction]:
    if "," in arg:
        parts = arg.split(",")
    elif arg.count("/") == 1:
        parts = arg.split("/")
    else:
        parts = [arg]
    if len(parts) != 2:
        raise ValidationError(f"payoff spec {spec!r} needs two parameters a,b")
    return parse_rational(parts[0]), parse_rational(parts[1])


def parse_payoff_spec(spec: str, k: int | None) -> PayoffTable:
    """Build a payoff table from its CLI spec string."""
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "table":
        if not arg:
            raise ValidationError("table spec needs values: table:v0,v1,...,vk")
        values = [parse_rational(tok) for tok in arg.split(",")]
        table = PayoffTable.from_values(values, name="table")
        if k is not None and table.k != k:
            raise ValidationError(f"table spec has k={table.k} but k={k} was requested")
        return table
    if k is None:
        raise ValidationError(f"payoff spec {spec!r} needs an explicit k")
    if kind == "basic":
        return basic(k)
    if kind == "coordination":
        return coordination(k)
    if kind == "distance":
        return distance(k)
    if kind == "cyclic":
        return cyclic(k)
    if kind == "affine":
        a, b = _parse_pair(arg, spec)
        return affine(a, b, k)
    if kind == "decreasing":
        a, b = _parse_pair(arg, spec)
        return decreasing_affine(a, b, k)
    if kind == "proto":
        try:
            ell = int(arg)
        except ValueError as exc:
            raise ValidationError(f"proto spec needs an integer, got {arg!r}") from exc
        return prototype(ell, k)
    raise ValidationError(f"unknown payoff spec {spec!r}")


def _check_k(k: int) -> None:
    if k < 2:
        raise ValidationError(f"need k >= 2, got k={k}")
