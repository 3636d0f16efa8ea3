"""Ground-truth oracles by enumeration: optimal welfare, stable colorings,
exact price of anarchy, and a bounded-size oracle for the local response
ratio.

Scans run over a base-k counter of colorings. Payoff comparisons are
invariant under positive scaling, so tables are scaled to integers first;
welfare ratios are recovered exactly. The counter space is cut in half via
the reflection t -> k+1-t, which preserves every color distance and hence
welfare and stability.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from ._kernels import SCANNERS, iter_stable_python, resolve_kernel
from .errors import BudgetError, InvariantError, ValidationError
from .model import Coloring, Graph, PayoffTable

DEFAULT_BUDGET = 10**7

# Scaled values must keep every intermediate (welfare <= 2 m max) in int64
# for the numba/numpy kernels; bigger tables fall back to plain python ints.
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class PoaReport:
    """Exact price-of-anarchy report with witnesses."""

    opt_welfare: Fraction
    worst_stable_welfare: Fraction
    poa: Fraction
    witness_opt: Coloring
    witness_worst: Coloring
    colorings_scanned: int


@dataclass(frozen=True)
class ColorMultiset:
    """Neighbor color counts: counts[p-1] occurrences of color p."""

    counts: tuple[int, ...]
    total: int

    def __post_init__(self):
        if self.total != sum(self.counts) or self.total < 1:
            raise ValidationError("multiset total does not match its counts")


def _scaled_table(f: PayoffTable) -> tuple[list[int], int]:
    """Integer payoff values over distances 0..k-1 and the common denominator."""
    denom = math.lcm(*(v.denominator for v in f.values[: f.k]))
    return [int(v * denom) for v in f.values[: f.k]], denom


def _csr(g: Graph) -> tuple[list[int], list[int]]:
    indptr = [0]
    indices: list[int] = []
    for v in range(1, g.n + 1):
        indices.extend(w - 1 for w in g.neighbors(v))
        indptr.append(len(indices))
    return indptr, indices


def _check_budget(space: int, budget: int) -> None:
    if space > budget:
        raise BudgetError(
            f"scan needs {space} colorings but the budget is {budget}",
            required=space,
        )


def brute_force_poa(
    g: Graph,
    f: PayoffTable,
    budget: int = DEFAULT_BUDGET,
    kernel: str | None = None,
    jobs: int = 1,
) -> PoaReport:
    """Exact PoA by scanning every coloring (up to reflection).

    Refuses loudly when k**n exceeds the budget. ``jobs`` splits the
    counter range into contiguous chunks scanned in parallel; the merged
    result is independent of the schedule.
    """
    n, k = g.n, f.k
    space = k**n
    _check_budget(space, budget)
    F, denom = _scaled_table(f)
    name = resolve_kernel(kernel)
    if name != "python" and max(F) * 4 * max(g.m, 1) >= _INT64_SAFE:
        if kernel is not None:
            raise ValidationError(
                f"kernel {kernel!r} cannot hold these payoff values exactly; "
                "use kernel='python'"
            )
        name = "python"
    scan = SCANNERS[name]
    indptr, indices = _csr(g)

    # Reflection halving: scanning first-vertex colors 0..ceil(k/2)-1 covers
    # every coloring or its mirror.
    stop = ((k + 1) // 2) * k ** (n - 1)
    jobs = max(1, min(jobs, stop))
    bounds = [stop * i // jobs for i in range(jobs + 1)]
    chunks = [(bounds[i], bounds[i + 1]) for i in range(jobs) if bounds[i] < bounds[i + 1]]

    def run(chunk):
        return scan(n, k, indptr, indices, F, chunk[0], chunk[1])

    if len(chunks) == 1:
        results = [run(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(run, chunks))

    scanned = 0
    opt_w, opt_c = -1, None
    found, worst_w, worst_c = False, -1, None
    for part_scanned, part_opt, part_opt_c, part_found, part_worst, part_worst_c in results:
        scanned += part_scanned
        if part_opt > opt_w:
            opt_w, opt_c = part_opt, part_opt_c
        if part_found and (not found or part_worst < worst_w):
            found, worst_w, worst_c = True, part_worst, part_worst_c
    if not found:
        raise InvariantError("no stable coloring found; at least one must exist")

    return PoaReport(
        opt_welfare=Fraction(opt_w, denom),
        worst_stable_welfare=Fraction(worst_w, denom),
        poa=Fraction(opt_w, worst_w),
        witness_opt=tuple(x + 1 for x in opt_c),
        witness_worst=tuple(x + 1 for x in worst_c),
        colorings_scanned=scanned,
    )


def enumerate_stable(
    g: Graph, f: PayoffTable, budget: int = DEFAULT_BUDGET
) -> Iterator[Coloring]:
    """Yield every stable coloring exactly once, in counter order."""
    n, k = g.n, f.k
    _check_budget(k**n, budget)
    F, _ = _scaled_table(f)
    indptr, indices = _csr(g)
    for zero_based, _w in iter_stable_python(n, k, indptr, indices, F):
        yield tuple(x + 1 for x in zero_based)


def local_param_oracle(
    f: PayoffTable, max_total: int, budget: int = DEFAULT_BUDGET
) -> tuple[Fraction, ColorMultiset]:
    """Best response-ratio witness over all neighbor multisets of size <= max_total.

    For each multiset, the ratio compares the conceivable payoff
    (size times the peak value) against the best achievable response. The
    result grows monotonically with max_total toward the exact optimum
    computed by the splitting program.
    """
    if max_total < 1:
        raise ValidationError(f"max_total must be >= 1, got {max_total}")
    k = f.k
    space = math.comb(max_total + k, k) - 1
    _check_budget(space, budget)
    F, _ = _scaled_table(f)
    fstar = max(F)

    best: Fraction | None = None
    best_counts: tuple[int, ...] | None = None
    counts = [0] * k

    def visit(total: int) -> None:
        nonlocal best, best_counts
        denom = max(sum(counts[p] * F[abs(p - t)] for p in range(k)) for t in range(k))
        if denom == 0:
            raise ValidationError(
                f"every response earns 0 against the multiset {tuple(counts)}; "
                "the ratio is unbounded"
            )
        ratio = Fraction(total * fstar, denom)
        if best is None or ratio > best:
            best = ratio
            best_counts = tuple(counts)

    def walk(color: int, remaining: int, total: int) -> None:
        if color == k - 1:
            counts[color] = remaining
            visit(total)
            counts[color] = 0
            return
        for take in range(remaining + 1):
            counts[color] = take
            walk(color + 1, remaining - take, total)
        counts[color] = 0

    for total in range(1, max_total + 1):
        walk(0, total, total)
    if best is None or best_counts is None:
        raise InvariantError("multiset scan found no ratio; table cannot be valid")
    return best, ColorMultiset(counts=best_counts, total=sum(best_counts))
