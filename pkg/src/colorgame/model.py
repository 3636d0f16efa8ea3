"""Core game objects: graphs, payoff tables, colorings, payoffs, stability.

Players are the vertices of an undirected simple graph without isolated
vertices. Each player picks a color in 1..k, and earns, for every neighbor,
the value of a payoff function applied to the absolute color distance.
All payoff values are exact rationals so that every identity downstream
(welfare bookkeeping, duality certificates, gadget ratios) can be tested
with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ValidationError

# A coloring is a plain tuple: entry i is the color (1-based) of vertex i+1.
Coloring = tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 1..n with minimum degree 1.

    Build instances through :func:`validate_graph`, which checks all
    invariants and normalizes the edge list.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, w in self.edges:
            adj[u - 1].append(w)
            adj[w - 1].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v - 1]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v - 1])


def validate_graph(raw_edges: Iterable[tuple[int, int]], n: int) -> Graph:
    """Validate and normalize an edge list into a Graph.

    Rejects self-loops, duplicate (unordered) edges, out-of-range vertex
    ids, and isolated vertices, naming the offending element.
    """
    if n < 2:
        raise ValidationError(f"need at least 2 vertices, got n={n}")
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    degree = [0] * n
    for u, w in raw_edges:
        if not (1 <= u <= n) or not (1 <= w <= n):
            raise ValidationError(f"edge ({u},{w}) has a vertex outside 1..{n}")
        if u == w:
            raise ValidationError(f"self-loop at vertex {u}")
        edge = (min(u, w), max(u, w))
        if edge in seen:
            raise ValidationError(f"duplicate edge ({edge[0]},{edge[1]})")
        seen.add(edge)
        edges.append(edge)
        degree[u - 1] += 1
        degree[w - 1] += 1
    for v in range(n):
        if degree[v] == 0:
            raise ValidationError(f"vertex {v + 1} is isolated")
    edges.sort()
    graph = Graph(n=n, edges=tuple(edges))
    assert sum(degree) == 2 * graph.m
    return graph


@dataclass(frozen=True)
class PayoffTable:
    """Exact payoff values f(0..k) with a validated discrete-concavity flag.

    Distances between two colors range over 0..k-1 only; the value at k
    exists so that concavity can be checked on the whole of 0..k. ``f_star``
    is the maximum over the reachable distances 0..k-1 and is always > 0.
    A negative value is permitted at index k alone, and only for concave
    tables (the decreasing-affine boundary case).
    """

    k: int
    values: tuple[Fraction, ...]
    concave: bool
    name: str | None = None

    @classmethod
    def from_values(cls, values: Sequence, name: str | None = None) -> "PayoffTable":
        vals = tuple(Fraction(v) for v in values)
        k = len(vals) - 1
        if k < 2:
            raise ValidationError(f"need k >= 2, got {k + 1} values")
        for i in range(k):
            if vals[i] < 0:
                raise ValidationError(f"f({i}) = {vals[i]} is negative")
        if max(vals[:k]) <= 0:
            raise ValidationError("max of f over distances 0..k-1 must be positive")
        diffs = [vals[i + 1] - vals[i] for i in range(k)]
        concave = all(diffs[i + 1] <= diffs[i] for i in range(k - 1))
        if vals[k] < 0 and not concave:
            raise ValidationError(f"f(k) = {vals[k]} negative on a non-concave table")
        if concave:
            # Concavity plus nonnegativity forces positivity strictly inside
            # 0..k-1; the right endpoint may be 0 only when f(k) is negative.
            for i in range(1, k - 1):
                if vals[i] <= 0:
                    raise ValidationError(f"concave table with f({i}) = 0 inside 1..k-2")
            if vals[k - 1] == 0 and vals[k] >= 0:
                raise ValidationError("concave table with f(k-1) = 0 but f(k) >= 0")
        return cls(k=k, values=vals, concave=concave, name=name)

    @cached_property
    def f_star(self) -> Fraction:
        return max(self.values[: self.k])

    @cached_property
    def dis_star(self) -> frozenset[int]:
        return frozenset(i for i in range(self.k) if self.values[i] == self.f_star)

    def __call__(self, distance: int) -> Fraction:
        return self.values[distance]


def check_coloring(g: Graph, k: int, c: Sequence[int]) -> Coloring:
    """Validate a coloring against a graph and spectrum size."""
    c = tuple(c)
    if len(c) != g.n:
        raise ValidationError(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    for v, color in enumerate(c, start=1):
        if not (1 <= color <= k):
            raise ValidationError(f"vertex {v} has color {color} outside 1..{k}")
    return c


def _check_inputs(g: Graph, f: PayoffTable, c: Sequence[int]) -> Coloring:
    return check_coloring(g, f.k, c)


def player_payoff(g: Graph, f: PayoffTable, c: Sequence[int], v: int) -> Fraction:
    """Sum of f(|c(v) - c(w)|) over the neighbors w of v."""
    c = _check_inputs(g, f, c)
    cv = c[v - 1]
    return sum((f.values[abs(cv - c[w - 1])] for w in g.neighbors(v)), Fraction(0))


def welfare(g: Graph, f: PayoffTable, c: Sequence[int]) -> Fraction:
    """Total payoff, summed over players."""
    c = _check_inputs(g, f, c)
    total = Fraction(0)
    for v in range(1, g.n + 1):
        cv = c[v - 1]
        for w in g.neighbors(v):
            total += f.values[abs(cv - c[w - 1])]
    return total


def welfare_edgewise(g: Graph, f: PayoffTable, c: Sequence[int]) -> Fraction:
    """Welfare computed the other way: twice the sum of edge contributions."""
    c = _check_inputs(g, f, c)
    return 2 * sum((f.values[abs(c[u - 1] - c[w - 1])] for u, w in g.edges), Fraction(0))


def change(c: Sequence[int], v: int, t: int) -> Coloring:
    """The coloring where vertex v switches to color t, all others unchanged."""
    c = tuple(c)
    if c[v - 1] == t:
        return c
    return c[: v - 1] + (t,) + c[v:]


@dataclass(frozen=True)
class StabilityCheck:
    """Truthy iff the coloring is stable; otherwise carries an improving move."""

    stable: bool
    vertex: int | None = None
    better_color: int | None = None
    payoff_before: Fraction | None = None
    payoff_after: Fraction | None = None

    def __bool__(self) -> bool:
        return self.stable


def is_stable(g: Graph, f: PayoffTable, c: Sequence[int]) -> StabilityCheck:
    """Check for a pure Nash equilibrium: no player gains by recoloring.

    On failure the witness names the first improving move in scan order
    (vertices ascending, then colors ascending).
    """
    c = _check_inputs(g, f, c)
    for v in range(1, g.n + 1):
        current = player_payoff(g, f, c, v)
        for t in range(1, f.k + 1):
            if t == c[v - 1]:
                continue
            deviated = sum(
                (f.values[abs(t - c[w - 1])] for w in g.neighbors(v)), Fraction(0)
            )
            if deviated > current:
                return StabilityCheck(False, v, t, current, deviated)
    return StabilityCheck(True)


def best_response(g: Graph, f: PayoffTable, c: Sequence[int], v: int) -> tuple[int, Fraction]:
    """Best color for v against the neighbor colors in c, with its payoff.

    Ties go to the current color, then to the smallest color.
    """
    c = _check_inputs(g, f, c)
    nbr_colors = [c[w - 1] for w in g.neighbors(v)]
    best_t = c[v - 1]
    best_p = sum((f.values[abs(best_t - cw)] for cw in nbr_colors), Fraction(0))
    for t in range(1, f.k + 1):
        p = sum((f.values[abs(t - cw)] for cw in nbr_colors), Fraction(0))
        if p > best_p:
            best_t, best_p = t, p
    return best_t, best_p


# --- plain-text file formats -------------------------------------------------
#
# Graph file: first line "n <count>", then one edge per line "u w" (1-based).
# Coloring file: a single line of n space-separated colors.
# Lines starting with '#' are comments; blank lines are ignored.


def _data_lines(path: Path) -> list[str]:
    lines = []
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def read_graph(path: str | Path) -> Graph:
    path = Path(path)
    lines = _data_lines(path)
    if not lines:
        raise ValidationError(f"{path}: empty graph file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise ValidationError(f"{path}: first line must be 'n <count>', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError as exc:
        raise ValidationError(f"{path}: bad vertex count {head[1]!r}") from exc
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValidationError(f"{path}: bad edge line {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise ValidationError(f"{path}: bad edge line {line!r}") from exc
    return validate_graph(edges, n)


def write_graph(path: str | Path, g: Graph) -> None:
    lines = [f"n {g.n}"] + [f"{u} {w}" for u, w in g.edges]
    Path(path).write_text("\n".join(lines) + "\n")


def read_coloring(path: str | Path) -> Coloring:
    path = Path(path)
    lines = _data_lines(path)
    if len(lines) != 1:
        raise ValidationError(f"{path}: coloring file must hold exactly one data line")
    try:
        return tuple(int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ValidationError(f"{path}: bad coloring line {lines[0]!r}") from exc


def write_coloring(path: str | Path, c: Sequence[int]) -> None:
    Path(path).write_text(" ".join(str(t) for t in c) + "\n")
