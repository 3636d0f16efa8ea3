"""Exact solver for the peak-covering program behind response-ratio certificates.

With colors 0-based and A[p][s] = f(|s - p|), the pair of programs is

    primal:  minimize sum(lam)      subject to  A @ lam >= fstar,  lam >= 0
    dual:    maximize fstar*sum(y)  subject to  A @ y   <= 1,      y >= 0

(A is symmetric, so the dual keeps the same matrix.) The shared optimum is
the exact worst-case response ratio of the payoff table. A is never stored:
entries are read off the table as values[|s - p|].

Strategy: a float LP (HiGHS) proposes the answer, which is lifted back to
rationals two ways -- rational reconstruction of the solution vectors, and
an exact re-solve of the square system on the proposed support. A lifted
pair is accepted only when the full exact optimality certificate holds:
primal feasible, dual feasible, objectives equal. Anything short of that
falls back to a Bland-rule tableau simplex in exact arithmetic: slower,
exact, cycle-free.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import InvariantError, ValidationError
from .model import PayoffTable

try:
    from scipy.optimize import linprog

    HAVE_SCIPY = True
except ImportError:  # pragma: no cover - scipy is a declared dependency
    HAVE_SCIPY = False

try:
    from gmpy2 import mpq as _fast_rational
except ImportError:  # pragma: no cover - gmpy2 is optional
    _fast_rational = Fraction

Solution = tuple[list[Fraction], list[Fraction], Fraction]

# Vertex solutions of these programs are ratios of minors of a small-valued
# matrix; their denominators stay modest. Reconstruction caps well above that.
_RECONSTRUCT_CAPS = (10**4, 10**6, 10**9)


def solve_covering(f: PayoffTable) -> Solution:
    """Exact optimal (lam, y, value) for the covering pair above.

    Raises ValidationError when some color earns nothing from every
    response, which makes the primal infeasible.
    """
    vals, k, fstar = f.values, f.k, f.f_star
    for p in range(k):
        if not any(vals[abs(s - p)] for s in range(k)):
            raise ValidationError(
                f"no response earns anything against color {p + 1}; "
                "the covering program is infeasible"
            )
    if HAVE_SCIPY:
        guide = _float_solve(vals, k, fstar)
        if guide is not None:
            lam_f, y_f = guide
            lifted = _reconstruct(vals, k, fstar, lam_f, y_f)
            if lifted is not None:
                return lifted
            for S, T in _support_candidates(lam_f, y_f):
                polished = _exact_from_support(vals, k, fstar, S, T)
                if polished is not None:
                    return polished
    return _bland_simplex(vals, k, fstar)


def _float_solve(vals, k, fstar):
    """Float primal and dual vectors from HiGHS, or None."""
    row = np.array([float(v) for v in vals[:k]])
    dist = np.abs(np.arange(k)[:, None] - np.arange(k)[None, :])
    res = linprog(
        c=np.ones(k),
        A_ub=-row[dist],
        b_ub=-float(fstar) * np.ones(k),
        bounds=(0, None),
        method="highs",
    )
    if not res.success or getattr(res.ineqlin, "marginals", None) is None:
        return None
    return np.asarray(res.x), -np.asarray(res.ineqlin.marginals)


def _certifies(vals, k, fstar, lam, y) -> bool:
    """Exact optimality certificate: feasible on both sides, zero gap."""
    support = [(s, w) for s, w in enumerate(lam) if w]
    tight = [(p, w) for p, w in enumerate(y) if w]
    for p in range(k):
        if sum(w * vals[abs(s - p)] for s, w in support) < fstar:
            return False
    for s in range(k):
        if sum(w * vals[abs(s - p)] for p, w in tight) > 1:
            return False
    return sum(lam) == fstar * sum(y)


def _reconstruct(vals, k, fstar, lam_f, y_f) -> Solution | None:
    """Lift the float vectors to rationals; None unless certified exactly.

    HiGHS returns a basic solution, whose entries are rationals with small
    denominators for this problem family; continued-fraction rounding
    recovers them exactly from the float values. Small caps are tried
    first, snapping away float noise. A lucky lift is still sound: any
    feasible pair with equal objectives is optimal, however it was found.
    """
    for cap in _RECONSTRUCT_CAPS:
        lam = [Fraction(max(x, 0.0)).limit_denominator(cap) for x in lam_f]
        y = [Fraction(max(x, 0.0)).limit_denominator(cap) for x in y_f]
        if _certifies(vals, k, fstar, lam, y):
            return lam, y, sum(lam, Fraction(0))
    return None


def _support_candidates(lam_f, y_f):
    """Candidate (primal support, tight constraints) index pairs."""
    k = len(lam_f)
    out = []
    for tol in (1e-9, 1e-7, 1e-11):
        S = [j for j in range(k) if lam_f[j] > tol]
        T = [p for p in range(k) if y_f[p] > tol]
        if S and len(S) == len(T) and (S, T) not in out:
            out.append((S, T))
    return out


def _exact_from_support(vals, k, fstar, S, T) -> Solution | None:
    """Re-solve the square support system exactly; None unless certified."""
    lam_S = _solve_square([[vals[abs(s - p)] for s in S] for p in T], [fstar] * len(T))
    if lam_S is None or any(x < 0 for x in lam_S):
        return None
    y_T = _solve_square([[vals[abs(s - p)] for p in T] for s in S], [Fraction(1)] * len(S))
    if y_T is None or any(x < 0 for x in y_T):
        return None
    lam = [Fraction(0)] * k
    for s, x in zip(S, lam_S):
        lam[s] = x
    y = [Fraction(0)] * k
    for p, x in zip(T, y_T):
        y[p] = x
    if not _certifies(vals, k, fstar, lam, y):
        return None
    return lam, y, sum(lam, Fraction(0))


def _solve_square(M, rhs) -> list[Fraction] | None:
    """Gauss-Jordan over Fractions; None when singular."""
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col] / prow[col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], prow)]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def _bland_simplex(vals, k, fstar) -> Solution:
    """Exact tableau simplex on the bounded dual form, Bland's rule throughout.

    Starts from the all-slack basis (y = 0 is feasible), so no first phase
    is needed. The primal weights are read off the slack reduced costs.
    Tableau entries use gmpy2 rationals when available (identical
    semantics, several times faster than Fraction).
    """
    zero, one = _fast_rational(0), _fast_rational(1)
    rationals = [_fast_rational(v.numerator, v.denominator) for v in vals[:k]]
    tab = [
        [rationals[abs(i - j)] for j in range(k)]
        + [one if j == i else zero for j in range(k)]
        + [one]
        for i in range(k)
    ]
    zrow = [-one] * k + [zero] * (k + 1)
    basis = list(range(k, 2 * k))
    while True:
        enter = next((j for j in range(2 * k) if zrow[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(k):
            coeff = tab[i][enter]
            if coeff > 0:
                ratio = tab[i][-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise InvariantError("covering program is unbounded; table cannot be valid")
        prow = tab[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [x / piv for x in prow]
            tab[leave] = prow
        for i in range(k):
            if i != leave and tab[i][enter]:
                factor = tab[i][enter]
                tab[i] = [a - factor * b for a, b in zip(tab[i], prow)]
        if zrow[enter]:
            factor = zrow[enter]
            zrow = [a - factor * b for a, b in zip(zrow, prow)]
        basis[leave] = enter
    y = [zero] * k
    for i, b in enumerate(basis):
        if b < k:
            y[b] = tab[i][-1]
    y = [_to_fraction(v) for v in y]
    lam = [fstar * _to_fraction(zrow[k + p]) for p in range(k)]
    value = fstar * _to_fraction(zrow[-1])
    if not _certifies(vals, k, fstar, lam, y):
        raise InvariantError("exact simplex produced an uncertifiable optimum")
    return lam, y, value


def _to_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(int(x.numerator), int(x.denominator))
