"""Self-verifying lower-bound instances: concrete games whose worst stable
coloring attains a known ratio.

Every constructor checks its own claims at build time: the stable coloring
passes the stability check, the optimal coloring attains the trivial
welfare cap 2*m*f_star, and the ratio matches the closed form exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import payoffs
from .bounds import rho, rho_decreasing
from .errors import InvariantError, ValidationError
from .model import Coloring, Graph, PayoffTable, is_stable, validate_graph, welfare


@dataclass(frozen=True)
class Gadget:
    graph: Graph
    k: int
    payoff: PayoffTable
    stable_coloring: Coloring
    opt_coloring: Coloring
    ratio: Fraction


def _build(
    graph: Graph,
    payoff: PayoffTable,
    stable: Coloring,
    opt: Coloring,
    expected_ratio: Fraction,
) -> Gadget:
    check = is_stable(graph, payoff, stable)
    if not check:
        raise InvariantError(
            f"gadget coloring is not stable: vertex {check.vertex} improves "
            f"by moving to color {check.better_color}"
        )
    w_stable = welfare(graph, payoff, stable)
    w_opt = welfare(graph, payoff, opt)
    if w_opt != 2 * graph.m * payoff.f_star:
        raise InvariantError("gadget optimum does not attain the trivial welfare cap")
    ratio = w_opt / w_stable
    if ratio != expected_ratio:
        raise InvariantError(f"gadget ratio {ratio} differs from the expected {expected_ratio}")
    return Gadget(
        graph=graph,
        k=payoff.k,
        payoff=payoff,
        stable_coloring=stable,
        opt_coloring=opt,
        ratio=ratio,
    )


def _k22() -> Graph:
    return validate_graph([(1, 3), (1, 4), (2, 3), (2, 4)], 4)


def _cycle(length: int) -> Graph:
    edges = [(i, i + 1) for i in range(1, length)] + [(length, 1)]
    return validate_graph(edges, length)


def gadget_affine(a, b, k: int) -> Gadget:
    """Complete bipartite 2x2 instance attaining rho(a,b,k) for f = a*x + b.

    One side spreads to the spectrum ends, the other sits in the middle;
    nobody can improve, while the optimum separates the sides fully.
    """
    f = payoffs.affine(a, b, k)
    stable = (1, k, (k + 1) // 2, (k + 2) // 2)
    opt = (1, 1, k, k)
    return _build(_k22(), f, stable, opt, rho(a, b, k))


def gadget_decreasing(a, b, k: int) -> Gadget:
    """Complete bipartite 2x2 instance attaining rho'(a,b,k) for f = b - a*x."""
    f = payoffs.decreasing_affine(a, b, k)
    stable = (1, k, 1, k)
    opt = (1, 1, 1, 1)
    return _build(_k22(), f, stable, opt, rho_decreasing(a, b, k))


def gadget_cyclic_even(k: int, n: int) -> Gadget:
    """Cycle of length 4n attaining ratio 2 for the cyclic payoff, k even.

    Blocks of two share a color, alternating between 1 and floor(k/2)+1;
    half the edges contribute nothing yet nobody can improve. The optimum
    alternates the same two colors edge by edge.
    """
    if k % 2 != 0:
        raise ValidationError(f"even-cycle gadget needs an even k, got {k}")
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    f = payoffs.cyclic(k)
    k1 = k // 2 + 1
    stable = tuple([1, 1, k1, k1] * n)
    opt = tuple([1, k1] * (2 * n))
    return _build(_cycle(4 * n), f, stable, opt, Fraction(2))


def gadget_cyclic_odd(k: int, n: int) -> Gadget:
    """Cycle of length 6n attaining ratio (3/2)(1 - 1/k) for odd k."""
    if k % 2 == 0:
        raise ValidationError(f"odd-cycle gadget needs an odd k, got {k}")
    if k < 3 or n < 1:
        raise ValidationError(f"need k >= 3 odd and n >= 1, got k={k}, n={n}")
    f = payoffs.cyclic(k)
    k1 = k // 2 + 1
    k2 = k // 2 + 2
    stable = tuple([1, k1, k2] * (2 * n))
    opt = tuple([1, k1] * (3 * n))
    return _build(_cycle(6 * n), f, stable, opt, Fraction(3 * (k - 1), 2 * k))


def gadget_coordination(k: int) -> Gadget:
    """Complete bipartite k-by-k instance attaining ratio k for the matching payoff.

    Pairing colors across the sides leaves every player with payoff 1 no
    matter what she plays; all-same-color is k times better.
    """
    if k < 2:
        raise ValidationError(f"need k >= 2, got k={k}")
    f = payoffs.coordination(k)
    edges = [(i, k + j) for i in range(1, k + 1) for j in range(1, k + 1)]
    graph = validate_graph(edges, 2 * k)
    stable = tuple(range(1, k + 1)) * 2
    opt = tuple([1] * (2 * k))
    return _build(graph, f, stable, opt, Fraction(k))
