"""Scan kernels for exhaustive enumeration over colorings.

Three interchangeable implementations of the same scan:

* ``numba`` -- jitted incremental scan, the default when numba imports;
* ``numpy`` -- chunked vectorized scan, the fallback;
* ``python`` -- plain-int incremental scan, exact for payoff values of any
  size (the others require the scaled table to fit comfortably in int64).

Selection: the ``COLORGAME_KERNEL`` environment variable, overridden by an
explicit ``kernel=`` argument. All kernels visit counter indices in the same
order and keep the first occurrence on ties, so results match bit for bit.

A coloring is encoded as a base-k counter over vertices, vertex 0 most
significant. Colors are 0-based inside the kernels. The scan walks an index
range [start, stop), maintaining per-vertex deviation payoffs incrementally:
when one vertex changes color, only its neighbors' rows change.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(func):
            return func

        return wrap(args[0]) if args and callable(args[0]) else wrap


KERNELS = ("numba", "numpy", "python")
ENV_KERNEL = "COLORGAME_KERNEL"


def resolve_kernel(kernel: str | None = None) -> str:
    """Pick the kernel: explicit argument, then env flag, then availability."""
    name = kernel or os.environ.get(ENV_KERNEL, "").strip().lower() or None
    if name is None:
        return "numba" if HAVE_NUMBA else "numpy"
    if name not in KERNELS:
        raise ValueError(f"unknown kernel {name!r}, expected one of {KERNELS}")
    if name == "numba" and not HAVE_NUMBA:
        raise ValueError("numba kernel requested but numba is not importable")
    return name


# --- pure-python incremental scan (reference; arbitrary precision) -----------


def _scan_python(n, k, indptr, indices, F, start, stop):
    c = [0] * n
    idx = start
    for i in range(n - 1, -1, -1):
        c[i] = idx % k
        idx //= k

    dev = [[0] * k for _ in range(n)]
    for v in range(n):
        for e in range(indptr[v], indptr[v + 1]):
            cw = c[indices[e]]
            row = dev[v]
            for t in range(k):
                row[t] += F[abs(t - cw)]

    welfare = 0
    bad = 0
    ok = [False] * n
    for v in range(n):
        welfare += dev[v][c[v]]
        ok[v] = dev[v][c[v]] == max(dev[v])
        if not ok[v]:
            bad += 1

    def recolor(v, new):
        nonlocal welfare, bad
        old = c[v]
        welfare += 2 * (dev[v][new] - dev[v][old])
        c[v] = new
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            row = dev[w]
            for t in range(k):
                row[t] += F[abs(t - new)] - F[abs(t - old)]
            good = row[c[w]] == max(row)
            if good != ok[w]:
                bad += -1 if good else 1
                ok[w] = good
        good = dev[v][new] == max(dev[v])
        if good != ok[v]:
            bad += -1 if good else 1
            ok[v] = good

    scanned = 0
    opt_w = -1
    opt_c = None
    found = False
    worst_w = -1
    worst_c = None
    pos = start
    while True:
        scanned += 1
        if welfare > opt_w:
            opt_w = welfare
            opt_c = tuple(c)
        if bad == 0 and (not found or welfare < worst_w):
            worst_w = welfare
            worst_c = tuple(c)
            found = True
        pos += 1
        if pos >= stop:
            break
        j = n - 1
        while c[j] == k - 1:
            recolor(j, 0)
            j -= 1
        recolor(j, c[j] + 1)
    return scanned, opt_w, opt_c, found, worst_w, worst_c


def iter_stable_python(n, k, indptr, indices, F):
    """Yield every stable coloring (0-based tuple, scaled welfare), full scan."""
    c = [0] * n
    dev = [[0] * k for _ in range(n)]
    for v in range(n):
        for e in range(indptr[v], indptr[v + 1]):
            cw = c[indices[e]]
            row = dev[v]
            for t in range(k):
                row[t] += F[abs(t - cw)]
    welfare = 0
    bad = 0
    ok = [False] * n
    for v in range(n):
        welfare += dev[v][c[v]]
        ok[v] = dev[v][c[v]] == max(dev[v])
        if not ok[v]:
            bad += 1

    def recolor(v, new):
        nonlocal welfare, bad
        old = c[v]
        welfare += 2 * (dev[v][new] - dev[v][old])
        c[v] = new
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            row = dev[w]
            for t in range(k):
                row[t] += F[abs(t - new)] - F[abs(t - old)]
            good = row[c[w]] == max(row)
            if good != ok[w]:
                bad += -1 if good else 1
                ok[w] = good
        good = dev[v][new] == max(dev[v])
        if good != ok[v]:
            bad += -1 if good else 1
            ok[v] = good

    pos = 0
    total = k**n
    while True:
        if bad == 0:
            yield tuple(c), welfare
        pos += 1
        if pos >= total:
            return
        j = n - 1
        while c[j] == k - 1:
            recolor(j, 0)
            j -= 1
        recolor(j, c[j] + 1)


# --- numba incremental scan ---------------------------------------------------


@njit(cache=True, nogil=True)
def _scan_numba_impl(n, k, indptr, indices, F, start, stop):  # pragma: no cover
    c = np.zeros(n, dtype=np.int64)
    idx = start
    for i in range(n - 1, -1, -1):
        c[i] = idx % k
        idx //= k

    dev = np.zeros((n, k), dtype=np.int64)
    for v in range(n):
        for e in range(indptr[v], indptr[v + 1]):
            cw = c[indices[e]]
            for t in range(k):
                dev[v, t] += F[abs(t - cw)]

    welfare = np.int64(0)
    bad = 0
    ok = np.zeros(n, dtype=np.uint8)
    for v in range(n):
        welfare += dev[v, c[v]]
        mx = dev[v, 0]
        for t in range(1, k):
            if dev[v, t] > mx:
                mx = dev[v, t]
        if dev[v, c[v]] == mx:
            ok[v] = 1
        else:
            bad += 1

    scanned = np.int64(0)
    opt_w = np.int64(-1)
    worst_w = np.int64(-1)
    found = False
    opt_c = np.zeros(n, dtype=np.int64)
    worst_c = np.zeros(n, dtype=np.int64)
    pos = start
    while True:
        scanned += 1
        if welfare > opt_w:
            opt_w = welfare
            opt_c[:] = c
        if bad == 0 and (not found or welfare < worst_w):
            worst_w = welfare
            worst_c[:] = c
            found = True
        pos += 1
        if pos >= stop:
            break
        j = n - 1
        while True:
            old = c[j]
            new = 0 if old == k - 1 else old + 1
            welfare += 2 * (dev[j, new] - dev[j, old])
            c[j] = new
            for e in range(indptr[j], indptr[j + 1]):
                w = indices[e]
                for t in range(k):
                    dev[w, t] += F[abs(t - new)] - F[abs(t - old)]
                mx = dev[w, 0]
                for t in range(1, k):
                    if dev[w, t] > mx:
                        mx = dev[w, t]
                good = np.uint8(1) if dev[w, c[w]] == mx else np.uint8(0)
                if good != ok[w]:
                    bad += -1 if good else 1
                    ok[w] = good
            mx = dev[j, 0]
            for t in range(1, k):
                if dev[j, t] > mx:
                    mx = dev[j, t]
            good = np.uint8(1) if dev[j, new] == mx else np.uint8(0)
            if good != ok[j]:
                bad += -1 if good else 1
                ok[j] = good
            if new != 0:
                break
            j -= 1
    return scanned, opt_w, opt_c, found, worst_w, worst_c


def _scan_numba(n, k, indptr, indices, F, start, stop):
    scanned, opt_w, opt_c, found, worst_w, worst_c = _scan_numba_impl(
        n,
        k,
        np.asarray(indptr, dtype=np.int64),
        np.asarray(indices, dtype=np.int64),
        np.asarray(F, dtype=np.int64),
        start,
        stop,
    )
    return (
        int(scanned),
        int(opt_w),
        tuple(int(x) for x in opt_c),
        bool(found),
        int(worst_w),
        tuple(int(x) for x in worst_c),
    )


# --- numpy chunked scan --------------------------------------------------------


def _scan_numpy(n, k, indptr, indices, F, start, stop, block=4096):
    F = np.asarray(F, dtype=np.int64)
    eu = []
    ew = []
    for v in range(n):
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if v < w:
                eu.append(v)
                ew.append(w)
    eu = np.array(eu, dtype=np.int64)
    ew = np.array(ew, dtype=np.int64)
    nbrs = [np.asarray(indices[indptr[v] : indptr[v + 1]], dtype=np.int64) for v in range(n)]

    scanned = 0
    opt_w = -1
    opt_c = None
    found = False
    worst_w = -1
    worst_c = None
    big = np.iinfo(np.int64).max
    for lo in range(start, stop, block):
        hi = min(stop, lo + block)
        idx = np.arange(lo, hi, dtype=np.int64)
        cols = np.empty((hi - lo, n), dtype=np.int64)
        rem = idx.copy()
        for i in range(n - 1, -1, -1):
            cols[:, i] = rem % k
            rem //= k
        w_block = 2 * F[np.abs(cols[:, eu] - cols[:, ew])].sum(axis=1)
        stable = np.ones(hi - lo, dtype=bool)
        for v in range(n):
            cn = cols[:, nbrs[v]]
            cur = F[np.abs(cols[:, v : v + 1] - cn)].sum(axis=1)
            for t in range(k):
                stable &= F[np.abs(t - cn)].sum(axis=1) <= cur
        scanned += hi - lo
        bi = int(np.argmax(w_block))
        if w_block[bi] > opt_w:
            opt_w = int(w_block[bi])
            opt_c = tuple(int(x) for x in cols[bi])
        if stable.any():
            masked = np.where(stable, w_block, big)
            wi = int(np.argmin(masked))
            if not found or masked[wi] < worst_w:
                worst_w = int(masked[wi])
                worst_c = tuple(int(x) for x in cols[wi])
                found = True
    return scanned, opt_w, opt_c, found, worst_w, worst_c


SCANNERS = {
    "python": _scan_python,
    "numpy": _scan_numpy,
    "numba": _scan_numba,
}
