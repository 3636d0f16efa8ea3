"""End-to-end verification suite: every documented guarantee, rechecked.

Each check compares exact rationals with zero tolerance and reports one
line. The CLI ``verify`` command runs the fast scope by default; checks
tagged slow join in under ``--scope all``. The pytest acceptance module
drives the same functions.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import payoffs
from .bounds import rho, rho_decreasing
from .dynamics import lift_stable, quick_response, run_improvement_dynamics
from .exhaustive import brute_force_poa, local_param_oracle
from .gadgets import (
    gadget_affine,
    gadget_coordination,
    gadget_cyclic_even,
    gadget_cyclic_odd,
    gadget_decreasing,
)
from .model import Graph, PayoffTable, change, is_stable, player_payoff, validate_graph, welfare
from .payoffs import random_concave
from .splitting import dual_bound, minimal_splitting, verify_splitting

Outcome = tuple[bool, str, str]


@dataclass(frozen=True)
class Check:
    name: str
    fast: bool
    fn: Callable[[], Outcome]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    computed: str
    expected: str
    seconds: float


def random_graph(rng: random.Random, n: int, edge_prob: float = 0.5) -> Graph:
    """Random simple graph without isolated vertices (patched if needed)."""
    edges = set()
    for u in range(1, n + 1):
        for w in range(u + 1, n + 1):
            if rng.random() < edge_prob:
                edges.add((u, w))
    covered = {v for e in edges for v in e}
    for v in range(1, n + 1):
        if v not in covered:
            other = rng.randrange(1, n)
            if other >= v:
                other += 1
            edges.add((min(v, other), max(v, other)))
            covered.update((v, other))
    return validate_graph(sorted(edges), n)


def builtin_tables(k: int) -> list[PayoffTable]:
    tables = [
        payoffs.basic(k),
        payoffs.coordination(k),
        payoffs.distance(k),
        payoffs.cyclic(k),
        payoffs.affine(1, 1, k),
        payoffs.decreasing_affine(1, k - 1, k),
        payoffs.prototype(max(1, k // 2), k),
    ]
    if k >= 3:
        tables.append(payoffs.prototype(k - 1, k))
    return tables


def _report(bad: list, ok_summary: str, expected: str) -> Outcome:
    if bad:
        return False, "; ".join(str(b) for b in bad[:5]), expected
    return True, ok_summary, expected


def check_basic_ratio() -> Outcome:
    bad = []
    for k in range(2, 11):
        value = minimal_splitting(payoffs.basic(k)).value
        if value != Fraction(k, k - 1):
            bad.append(f"k={k}: {value}")
    return _report(bad, "k/(k-1) exact for k=2..10", "value k/(k-1)")


def check_coordination_ratio() -> Outcome:
    bad = []
    for k in range(2, 11):
        value = minimal_splitting(payoffs.coordination(k)).value
        if value != k:
            bad.append(f"k={k}: {value}")
    return _report(bad, "k exact for k=2..10", "value k")


def check_cyclic_ratio() -> Outcome:
    bad = []
    for k in range(2, 41, 2):
        value = minimal_splitting(payoffs.cyclic(k)).value
        if value != 2:
            bad.append(f"k={k}: {value}")
    for k in range(3, 40, 2):
        value = minimal_splitting(payoffs.cyclic(k)).value
        low = Fraction(3 * (k - 1), 2 * k)
        if not low <= value <= 2:
            bad.append(f"k={k}: {value} outside [{low}, 2]")
    return _report(
        bad,
        "even k=2..40 exactly 2; odd k=3..39 in [(3/2)(1-1/k), 2]",
        "2 for even k; bracketed for odd k",
    )


def check_affine_ratio() -> Outcome:
    rng = random.Random(401)
    pairs = [
        (Fraction(rng.randint(1, 9), rng.randint(1, 4)), Fraction(rng.randint(0, 9), rng.randint(1, 4)))
        for _ in range(20)
    ]
    bad = []
    for a, b in pairs:
        for k in range(2, 16):
            value = minimal_splitting(payoffs.affine(a, b, k)).value
            if value != rho(a, b, k):
                bad.append(f"a={a},b={b},k={k}: {value} != {rho(a, b, k)}")
    return _report(bad, "20 random (a,b) pairs, k=2..15", "value rho(a,b,k)")


def _zero_gap_tables() -> list[PayoffTable]:
    tables = []
    for k in range(2, 11):
        tables.extend(builtin_tables(k))
    rng = random.Random(502)
    for _ in range(200):
        tables.append(random_concave(rng, rng.randint(2, 25)))
    return tables


def check_zero_gap() -> Outcome:
    bad = []
    for f in _zero_gap_tables():
        res = minimal_splitting(f)
        if res.value != res.dual_value:
            bad.append(f"k={f.k} {f.name}: gap {res.value} vs {res.dual_value}")
        elif not verify_splitting(f, res.optimal_splitting):
            bad.append(f"k={f.k} {f.name}: splitting fails its condition")
        elif res.optimal_splitting.total != res.value:
            bad.append(f"k={f.k} {f.name}: total mismatch")
        elif dual_bound(f, res.worst_distribution) != res.value:
            bad.append(f"k={f.k} {f.name}: recomputed dual differs")
    return _report(
        bad,
        "built-ins (k=2..10) plus 200 random concave tables (k<=25)",
        "primal total = dual bound, both certificates pass",
    )


def check_concave_ceilings() -> Outcome:
    bad = []
    rng = random.Random(603)
    for _ in range(200):
        f = random_concave(rng, rng.randint(2, 25))
        value = minimal_splitting(f).value
        if value > 4:
            bad.append(f"random k={f.k}: {value} > 4")
    for k in range(2, 61):
        for ell in range(1, k // 2 + 1):
            value = minimal_splitting(payoffs.prototype(ell, k)).value
            if value > 2:
                bad.append(f"tent ell={ell},k={k}: {value} > 2")
        for ell in range(k // 2 + 1, k - 1):
            value = minimal_splitting(payoffs.prototype(ell, k)).value
            if value > 3:
                bad.append(f"tent ell={ell},k={k}: {value} > 3")
    return _report(
        bad,
        "200 random concave <= 4; tents: left peaks <= 2, right peaks <= 3 (k<=60)",
        "ceilings 4 / 2 / 3 by peak location",
    )


def check_tent_ceiling_k100() -> Outcome:
    bad = []
    for k in range(3, 101):
        for ell in range(k // 2 + 1, k - 1):
            value = minimal_splitting(payoffs.prototype(ell, k)).value
            if value > Fraction(5, 2):
                bad.append(f"COUNTEREXAMPLE ell={ell},k={k}: {value} > 5/2")
    return _report(
        bad,
        "min splitting total <= 5/2 for all right-peak tents up to k=100",
        "no right-peak tent beats 5/2",
    )


def check_gadget_tightness() -> Outcome:
    bad = []
    rng = random.Random(804)
    for k in range(2, 21):
        for _ in range(3):
            a = Fraction(rng.randint(1, 6), rng.randint(1, 3))
            b = Fraction(rng.randint(0, 6), rng.randint(1, 3))
            g = gadget_affine(a, b, k)
            if g.ratio != rho(a, b, k) or not is_stable(g.graph, g.payoff, g.stable_coloring):
                bad.append(f"affine a={a},b={b},k={k}")
            b_dec = a * (k - 1) + Fraction(rng.randint(0, 6), rng.randint(1, 3))
            g = gadget_decreasing(a, b_dec, k)
            if g.ratio != rho_decreasing(a, b_dec, k) or not is_stable(
                g.graph, g.payoff, g.stable_coloring
            ):
                bad.append(f"decreasing a={a},b={b_dec},k={k}")
        for n in range(1, 4):
            if k % 2 == 0:
                g = gadget_cyclic_even(k, n)
                if g.ratio != 2 or not is_stable(g.graph, g.payoff, g.stable_coloring):
                    bad.append(f"cyclic-even k={k},n={n}")
            elif k >= 3:
                g = gadget_cyclic_odd(k, n)
                if g.ratio != Fraction(3 * (k - 1), 2 * k) or not is_stable(
                    g.graph, g.payoff, g.stable_coloring
                ):
                    bad.append(f"cyclic-odd k={k},n={n}")
        g = gadget_coordination(k)
        if g.ratio != k or not is_stable(g.graph, g.payoff, g.stable_coloring):
            bad.append(f"coordination k={k}")
    return _report(
        bad,
        "all families exact and stable for k<=20, n<=3",
        "rho / rho' / 2 / (3/2)(1-1/k) / k",
    )


def check_oracle_sandwich() -> Outcome:
    rng = random.Random(905)
    ratio_cache: dict[tuple, Fraction] = {}
    oracle_cache: dict[tuple, Fraction] = {}
    bad = []
    for i in range(50):
        n = rng.randint(2, 6)
        k = rng.randint(2, 4)
        g = random_graph(rng, n, rng.uniform(0.4, 0.9))
        for f in builtin_tables(k):
            key = f.values
            if key not in ratio_cache:
                ratio_cache[key] = minimal_splitting(f).value
                oracle_cache[key] = local_param_oracle(f, 12)[0]
            value = ratio_cache[key]
            report = brute_force_poa(g, f)
            if report.poa > value:
                bad.append(f"graph#{i} k={k} {f.name}: poa {report.poa} > {value}")
            if oracle_cache[key] > value:
                bad.append(f"k={k} {f.name}: oracle {oracle_cache[key]} > {value}")
    return _report(
        bad,
        "50 random graphs (n<=6, k<=4), all built-ins: poa <= ratio, oracle(12) <= ratio",
        "enumeration never beats the certified ratio",
    )


def check_small_poa() -> Outcome:
    bad = []
    k22 = validate_graph([(1, 3), (1, 4), (2, 3), (2, 4)], 4)
    poa = brute_force_poa(k22, payoffs.basic(2)).poa
    if poa != 2:
        bad.append(f"2x2 bipartite, basic k=2: poa {poa}")
    k33 = validate_graph([(i, 3 + j) for i in (1, 2, 3) for j in (1, 2, 3)], 6)
    poa = brute_force_poa(k33, payoffs.coordination(3)).poa
    if poa != 3:
        bad.append(f"3x3 bipartite, coordination k=3: poa {poa}")
    return _report(bad, "poa exactly 2 and 3", "2 on K22 (basic, k=2); 3 on K33 (coordination, k=3)")


def check_dynamics() -> Outcome:
    rng = random.Random(1106)
    bad = []
    for i in range(100):
        n = rng.randint(2, 30)
        g = random_graph(rng, n, rng.uniform(0.1, 0.6))
        f = payoffs.basic(rng.randint(2, 5))
        start = tuple(rng.randint(1, f.k) for _ in range(n))
        trace = run_improvement_dynamics(g, f, start)
        if trace.step_count > g.m:
            bad.append(f"graph#{i}: {trace.step_count} steps > m={g.m}")
        if not is_stable(g, f, trace.final):
            bad.append(f"graph#{i}: final coloring unstable")
    for i in range(8):
        n = rng.randint(3, 8)
        g = random_graph(rng, n, 0.6)
        for f in builtin_tables(4):
            start = tuple(rng.randint(1, 4) for _ in range(n))
            trace = run_improvement_dynamics(g, f, start)
            welfares = [welfare(g, f, start)] + [s.welfare for s in trace.steps]
            if any(w2 <= w1 for w1, w2 in zip(welfares, welfares[1:])):
                bad.append(f"graph#{i} {f.name}: welfare not strictly increasing")
    for _ in range(20):
        n = rng.randint(2, 12)
        g = random_graph(rng, n, 0.5)
        start = tuple(rng.randint(1, 2) for _ in range(n))
        c2 = run_improvement_dynamics(g, payoffs.basic(2), start).final
        lifted = lift_stable(g, "distance", 5, c2)
        if not is_stable(g, payoffs.distance(5), lifted):
            bad.append("distance lift unstable")
        lifted = lift_stable(g, "cyclic", 6, c2)
        if not is_stable(g, payoffs.cyclic(6), lifted):
            bad.append("cyclic lift unstable")
    return _report(
        bad,
        "100 runs bounded by m and stable; stepwise welfare strictly up; lifts stable",
        "termination <= m steps (basic), monotone welfare, stable lifts",
    )


def check_quick_response() -> Outcome:
    rng = random.Random(1207)
    bad = []
    for i in range(1000):
        k = rng.randint(2, 20)
        f = random_concave(rng, k)
        size = rng.randint(1, 12)
        colors = [rng.randint(1, k) for _ in range(size)]
        t = quick_response(colors, f)
        earned = sum((f.values[abs(c - t)] for c in colors), Fraction(0))
        if earned < Fraction(size, 4) * f.f_star:
            bad.append(f"#{i} k={k} colors={colors}: {earned} < {size}*fstar/4")
    return _report(
        bad,
        "1000 random concave tables and multisets (k<=20, size<=12)",
        "earned >= size * fstar / 4",
    )


def check_odd_k_instability() -> Outcome:
    bad = []
    for k in (3, 5, 7, 9):
        for n in (1, 2):
            g = validate_graph(
                [(i, i + 1) for i in range(1, 4 * n)] + [(4 * n, 1)], 4 * n
            )
            f = payoffs.cyclic(k)
            k1 = k // 2 + 1
            coloring = tuple([1, 1, k1, k1] * n)
            if is_stable(g, f, coloring):
                bad.append(f"k={k},n={n}: two-block pattern wrongly stable")
                continue
            v = coloring.index(k1) + 1
            before = player_payoff(g, f, coloring, v)
            after = player_payoff(g, f, change(coloring, v, k1 + 1), v)
            if after <= before:
                bad.append(f"k={k},n={n}: move {k1}->{k1 + 1} does not improve")
    return _report(
        bad,
        "odd k in 3..9, n<=2: pattern rejected; the one-step-up move improves",
        "unstable, witnessed by recoloring floor(k/2)+1 -> floor(k/2)+2",
    )


CHECKS: tuple[Check, ...] = (
    Check("basic-ratio", True, check_basic_ratio),
    Check("coordination-ratio", True, check_coordination_ratio),
    Check("cyclic-ratio", True, check_cyclic_ratio),
    Check("affine-ratio", True, check_affine_ratio),
    Check("zero-gap-certificates", False, check_zero_gap),
    Check("concave-ceilings", False, check_concave_ceilings),
    Check("tent-ceiling-k100", False, check_tent_ceiling_k100),
    Check("gadget-tightness", True, check_gadget_tightness),
    Check("oracle-sandwich", False, check_oracle_sandwich),
    Check("small-poa-exact", True, check_small_poa),
    Check("improvement-dynamics", False, check_dynamics),
    Check("quick-response-guarantee", True, check_quick_response),
    Check("odd-k-instability", True, check_odd_k_instability),
)


def run_suite(scope: str = "fast") -> list[CheckResult]:
    if scope not in ("fast", "all"):
        raise ValueError(f"unknown scope {scope!r}")
    results = []
    for check in CHECKS:
        if scope == "fast" and not check.fast:
            continue
        start = time.perf_counter()
        passed, computed, expected = check.fn()
        results.append(
            CheckResult(check.name, passed, computed, expected, time.perf_counter() - start)
        )
    return results
