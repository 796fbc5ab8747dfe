"""Edge-colored simple graphs and the realization verifier.

All k color classes live in one edge map keyed by the unordered vertex
pair, so two colors can never claim the same pair. Per-(color, vertex)
degree counters are kept in step with every insertion and removal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .degseq import DegreeMatrix
from .errors import DimensionError, ParseError

Edge = Tuple[int, int]


def _pair(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class ColoredGraph:
    """Simple graph on vertices ``0..n-1`` whose edges carry a color in ``0..k-1``."""

    def __init__(self, n: int, k: int, edges: Iterable[Tuple[int, int, int]] = ()):
        if n < 0 or k < 0:
            raise ValueError("n and k must be non-negative")
        self.n = n
        self.k = k
        self._color: Dict[Edge, int] = {}
        self._deg = [[0] * n for _ in range(k)]
        for u, v, c in edges:
            self.add_edge(u, v, c)

    def add_edge(self, u: int, v: int, c: int) -> None:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"vertex out of range in edge ({u}, {v})")
        if not 0 <= c < self.k:
            raise ValueError(f"color {c} out of range")
        e = _pair(u, v)
        if e in self._color:
            raise ValueError(f"pair {e} already carries color {self._color[e]}")
        self._color[e] = c
        self._deg[c][u] += 1
        self._deg[c][v] += 1

    def remove_edge(self, u: int, v: int) -> int:
        """Delete the edge between u and v; returns its color."""
        e = _pair(u, v)
        c = self._color.pop(e)
        self._deg[c][u] -= 1
        self._deg[c][v] -= 1
        return c

    def color_of(self, u: int, v: int) -> Optional[int]:
        return self._color.get(_pair(u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return _pair(u, v) in self._color

    def degree(self, v: int, c: int) -> int:
        return self._deg[c][v]

    def degrees(self, c: int) -> List[int]:
        return list(self._deg[c])

    def edges(self) -> List[Tuple[int, int, int]]:
        """All edges as sorted ``(u, v, color)`` triples with ``u < v``."""
        return sorted((u, v, c) for (u, v), c in self._color.items())

    def edges_of_color(self, c: int) -> Iterator[Edge]:
        return (e for e, col in sorted(self._color.items()) if col == c)

    def neighbors(self, v: int, c: int) -> List[int]:
        return sorted(
            (b if a == v else a) for (a, b), col in self._color.items() if col == c and v in (a, b)
        )

    def __len__(self) -> int:
        return len(self._color)

    def __eq__(self, other):
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return (self.n, self.k, self._color) == (other.n, other.k, other._color)

    def __repr__(self):
        return f"ColoredGraph(n={self.n}, k={self.k}, edges={len(self)})"

    def copy(self) -> "ColoredGraph":
        g = ColoredGraph(self.n, self.k)
        g._color = dict(self._color)
        g._deg = [list(r) for r in self._deg]
        return g

    def relabeled(self, vertex_map: Sequence[int], color_map: Optional[Sequence[int]] = None) -> "ColoredGraph":
        """Copy with vertex x renamed ``vertex_map[x]`` and color c renamed ``color_map[c]``."""
        if color_map is None:
            color_map = range(self.k)
        return ColoredGraph(
            self.n, self.k, ((vertex_map[u], vertex_map[v], color_map[c]) for (u, v), c in self._color.items())
        )

    def to_adjacency_text(self) -> str:
        return emit_adjacency_color_matrix(self)

    def to_edge_list_text(self) -> str:
        return emit_edge_list(self)


@dataclass(frozen=True)
class RainbowMatching:
    """Vertex-disjoint edges with pairwise distinct colors, as ``((u, v), color)`` picks."""

    picks: Tuple[Tuple[Edge, int], ...]

    def __post_init__(self):
        seen_v, seen_c = set(), set()
        for (u, v), c in self.picks:
            if u in seen_v or v in seen_v or u == v:
                raise ValueError("rainbow matching edges must be vertex-disjoint")
            if c in seen_c:
                raise ValueError("rainbow matching colors must be distinct")
            seen_v.update((u, v))
            seen_c.add(c)

    def __len__(self):
        return len(self.picks)

    @property
    def colors(self) -> frozenset:
        return frozenset(c for _, c in self.picks)

    @property
    def vertices(self) -> frozenset:
        return frozenset(x for (e, _) in self.picks for x in e)


@dataclass(frozen=True)
class Failure:
    kind: str  # "degree" | "not_spanning_tree" | "duplicate_edge" | "bad_edge"
    detail: str
    vertex: Optional[int] = None
    color: Optional[int] = None

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass
class VerifyReport:
    failures: List[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def lines(self) -> List[str]:
        return [str(f) for f in self.failures]


def color_subgraph(g: ColoredGraph, c: int) -> ColoredGraph:
    """Single-color copy of ``g`` (k = 1, color 0) on the same vertex set."""
    if not 0 <= c < g.k:
        raise ValueError(f"color {c} out of range for k={g.k}")
    return ColoredGraph(g.n, 1, ((u, v, 0) for u, v in g.edges_of_color(c)))


def _components(n: int, edges: Iterable[Edge]) -> Tuple[int, bool]:
    """Union-find pass; returns (component count, saw_cycle)."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps, cycle = n, False
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            cycle = True
        else:
            parent[ru] = rv
            comps -= 1
    return comps, cycle


def _connected_bfs(n: int, edges: Sequence[Edge]) -> bool:
    if n == 0:
        return True
    adj: List[List[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def is_spanning_tree(g: ColoredGraph, c: int = 0) -> bool:
    """True iff color class c of g is a spanning tree of all n vertices."""
    edges = list(g.edges_of_color(c))
    by_count = len(edges) == g.n - 1 and _connected_bfs(g.n, edges)
    comps, cycle = _components(g.n, edges)
    assert by_count == (comps == 1 and not cycle), "spanning-tree formulations disagree"
    return by_count


def verify_realization(g: ColoredGraph, m: DegreeMatrix) -> VerifyReport:
    if (g.n, g.k) != (m.n, m.k):
        raise DimensionError(f"graph is n={g.n}, k={g.k} but matrix is n={m.n}, k={m.k}")
    report = VerifyReport()
    seen = set()
    for u, v, c in g.edges():
        if u == v or not (0 <= u < g.n and 0 <= v < g.n) or not 0 <= c < g.k:
            report.failures.append(Failure("bad_edge", f"edge ({u + 1}, {v + 1}) color {c + 1}"))
        if (u, v) in seen:
            report.failures.append(Failure("duplicate_edge", f"pair ({u + 1}, {v + 1}) used twice"))
        seen.add((u, v))
    for c in range(m.k):
        if not is_spanning_tree(g, c):
            report.failures.append(Failure("not_spanning_tree", f"color {c + 1} is not a spanning tree", color=c))
        for v in range(m.n):
            got, want = g.degree(v, c), m.rows[c][v]
            if got != want:
                report.failures.append(
                    Failure("degree", f"vertex {v + 1} color {c + 1}: degree {got}, expected {want}", v, c)
                )
    return report


# --------------------------------------------------------------------------
# text formats (1-indexed vertices and colors, 0 = no edge)
# --------------------------------------------------------------------------

def _rows_of_ints(text: str) -> List[Tuple[int, List[int]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = list(re.finditer(r"[^\s,&]+", line))
        if not toks:
            continue
        vals = []
        for t in toks:
            try:
                vals.append(int(t.group()))
            except ValueError:
                raise ParseError(f"expected an integer, got {t.group()!r}", lineno, t.start() + 1) from None
        out.append((lineno, vals))
    return out


def parse_adjacency_color_matrix(text: str, k: Optional[int] = None) -> ColoredGraph:
    """Read an n x n symmetric matrix with zero diagonal; entry c > 0 is an edge of color c.

    k defaults to the largest entry.
    """
    rows = _rows_of_ints(text)
    n = len(rows)
    for lineno, vals in rows:
        if len(vals) != n:
            raise ParseError(f"expected {n} entries, found {len(vals)}", lineno)
    a = [vals for _, vals in rows]
    top = max((x for r in a for x in r), default=0)
    if k is None:
        k = top
    g = ColoredGraph(n, k)
    for u in range(n):
        lineno = rows[u][0]
        for v in range(n):
            x = a[u][v]
            if x < 0 or x > k:
                raise ParseError(f"entry {x} outside 0..{k}", lineno, v + 1)
            if u == v and x:
                raise ParseError("diagonal must be zero", lineno, v + 1)
            if a[v][u] != x:
                raise ParseError(f"matrix not symmetric at ({u + 1}, {v + 1})", lineno, v + 1)
            if u < v and x:
                g.add_edge(u, v, x - 1)
    return g


def emit_adjacency_color_matrix(g: ColoredGraph) -> str:
    a = [[0] * g.n for _ in range(g.n)]
    for u, v, c in g.edges():
        a[u][v] = a[v][u] = c + 1
    return "".join(" ".join(str(x) for x in row) + "\n" for row in a)


def parse_edge_list(text: str) -> ColoredGraph:
    """Header ``n k`` then one ``u v c`` line per edge, all 1-indexed."""
    rows = _rows_of_ints(text)
    if not rows:
        raise ParseError("empty edge list", 1)
    lineno, head = rows[0]
    if len(head) != 2:
        raise ParseError("header must be 'n k'", lineno, 1)
    n, k = head
    g = ColoredGraph(n, k)
    for lineno, vals in rows[1:]:
        if len(vals) != 3:
            raise ParseError("edge lines must be 'u v c'", lineno, 1)
        u, v, c = vals
        try:
            g.add_edge(u - 1, v - 1, c - 1)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, 1) from None
    return g


def emit_edge_list(g: ColoredGraph) -> str:
    lines = [f"{g.n} {g.k}"]
    lines += [f"{u + 1} {v + 1} {c + 1}" for u, v, c in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str, k: Optional[int] = None) -> ColoredGraph:
    """Sniff the format: a 2-entry first line means edge list, otherwise adjacency matrix."""
    rows = _rows_of_ints(text)
    if rows and len(rows[0][1]) == 2 and (len(rows) == 1 or len(rows[1][1]) == 3):
        return parse_edge_list(text)
    return parse_adjacency_color_matrix(text, k)
