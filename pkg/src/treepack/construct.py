"""Constructive realization of tree degree matrices without common leaves.

Every builder follows the same induction. Find a vertex v that is a leaf
in exactly one tree i and has degree 2 in all the others, plus a vertex
w with degree above 2 in tree i. Delete v and lower w's degree in tree
i. Realize the smaller matrix. Then put v back: join v to w in color i,
and for each other color cut one edge (a, b) of a rainbow matching that
avoids w and join v to both a and b in that color.

The builders differ in where the induction stops and how the rainbow
matching is found:

* ``realize_quartet`` (k = 4): stops at path quartets or n <= 10 (the
  bundled table), exhaustive rainbow search.
* ``realize_never_leaves`` (any k, at least 2k-4 never-leaves): stops at
  path tuples, greedy rainbow search over maximum tree matchings.
* ``realize_quintet`` (k = 5): stops at ``base_limit`` vertices, where the
  brute-force oracle takes over; greedy rainbow search above that.

The peel runs on an explicit stack, so large n does not hit Python's
recursion limit.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .degseq import (
    DegreeMatrix,
    all_paths,
    count_never_leaves,
    find_common_leaves,
)
from .egraph import ColoredGraph, RainbowMatching, is_spanning_tree, verify_realization
from .enumeration import canonical_labeling
from .errors import (
    AllPathsError,
    CommonLeavesError,
    HypothesisError,
    NoFixtureError,
    NotFoundError,
    OracleTimeout,
    TooFewNeverLeavesError,
)
from .fixtures import load_fixtures

log = logging.getLogger(__name__)

QUARTET_BASE_N = 10


@dataclass(frozen=True)
class Reduction:
    """Peel witness: ``d[i][v] == 1``, ``d[j][v] == 2`` for j != i, ``d[i][w] > 2``."""

    v: int
    w: int
    i: int

    @property
    def w_after(self) -> int:
        """Index of w once column v has been deleted."""
        return self.w if self.w < self.v else self.w - 1


@dataclass(frozen=True)
class TreeMatching:
    edges: Tuple[Tuple[int, int], ...]
    internal_count: int

    def __len__(self):
        return len(self.edges)


@dataclass
class Realization:
    graph: ColoredGraph
    strategy: str
    depth: int = 0


def _check_hypotheses(m: DegreeMatrix) -> None:
    for i, row in enumerate(m.rows):
        if len(row) < 2 or min(row) < 1 or sum(row) != 2 * len(row) - 2:
            raise HypothesisError(f"row {i + 1} is not a tree degree sequence")
    hit = find_common_leaves(m)
    if hit is not None:
        v, a, b = hit
        raise CommonLeavesError(f"vertex {v + 1} is a leaf in rows {a + 1} and {b + 1}")


# --------------------------------------------------------------------------
# reduction step
# --------------------------------------------------------------------------

def find_reduction(m: DegreeMatrix) -> Reduction:
    _check_hypotheses(m)
    if all_paths(m):
        raise AllPathsError("every row is a path degree sequence")
    for i in range(m.k):
        row = m.rows[i]
        heavy = [w for w in range(m.n) if row[w] > 2]
        if not heavy:
            continue
        for v in range(m.n):
            if row[v] == 1 and all(m.rows[j][v] == 2 for j in range(m.k) if j != i):
                return Reduction(v, heavy[0], i)
    raise NotFoundError("no reduction witness although the matrix is not all paths")


def _check_reduction(m: DegreeMatrix, r: Reduction) -> None:
    if r.v == r.w:
        raise ValueError("reduction needs v != w")
    if m.rows[r.i][r.v] != 1 or any(m.rows[j][r.v] != 2 for j in range(m.k) if j != r.i):
        raise ValueError(f"column {r.v + 1} is not a leaf in row {r.i + 1} with 2s elsewhere")
    if m.rows[r.i][r.w] <= 2:
        raise ValueError(f"entry ({r.i + 1}, {r.w + 1}) must exceed 2")


def apply_reduction(m: DegreeMatrix, r: Reduction) -> DegreeMatrix:
    """Delete column v and lower ``d[i][w]`` by one."""
    _check_reduction(m, r)
    rows = []
    for j, row in enumerate(m.rows):
        new = list(row)
        if j == r.i:
            new[r.w] -= 1
        del new[r.v]
        rows.append(new)
    return DegreeMatrix.from_rows(rows)


def extend_realization(
    g: ColoredGraph, v: int, w: int, i: int, rm: RainbowMatching
) -> ColoredGraph:
    """Insert vertex v into a realization of the reduced matrix.

    ``w`` and the matching are in ``g``'s labels; ``v`` is the new
    vertex's index in the result, so old labels ``>= v`` move up by one.
    """
    if rm.colors != frozenset(range(g.k)) - {i}:
        raise ValueError(f"rainbow matching must use every color except {i + 1}")
    if w in rm.vertices:
        raise ValueError("rainbow matching touches w")
    for (a, b), c in rm.picks:
        if g.color_of(a, b) != c:
            raise ValueError(f"({a + 1}, {b + 1}) is not an edge of color {c + 1}")
    lift = [x if x < v else x + 1 for x in range(g.n)]
    out = ColoredGraph(g.n + 1, g.k, ((lift[a], lift[b], c) for a, b, c in g.edges()))
    out.add_edge(v, lift[w], i)
    for (a, b), c in rm.picks:
        out.remove_edge(lift[a], lift[b])
        out.add_edge(v, lift[a], c)
        out.add_edge(v, lift[b], c)
    return out


# --------------------------------------------------------------------------
# rainbow matchings
# --------------------------------------------------------------------------

def find_rainbow_matching(
    g: ColoredGraph, colors: Sequence[int], avoid: Optional[int] = None
) -> Optional[RainbowMatching]:
    """Exhaustive search for one edge per listed color, vertex-disjoint, missing ``avoid``.

    Colors are tried in the given order and edges in lexicographic order;
    the first hit is returned.
    """
    pools = [[e for e in g.edges_of_color(c) if avoid not in e] for c in colors]
    picks: List[Tuple[Tuple[int, int], int]] = []
    blocked = set()

    def go(t: int) -> bool:
        if t == len(colors):
            return True
        for a, b in pools[t]:
            if a in blocked or b in blocked:
                continue
            picks.append(((a, b), colors[t]))
            blocked.update((a, b))
            if go(t + 1):
                return True
            blocked.difference_update((a, b))
            picks.pop()
        return False

    return RainbowMatching(tuple(picks)) if go(0) else None


def find_rainbow_matching_k4(g: ColoredGraph, i: int, w: int) -> RainbowMatching:
    """Size-3 rainbow matching over the colors other than i, avoiding vertex w.

    Existence is guaranteed for four spanning trees without common leaves
    on at least 10 vertices.
    """
    if g.k != 4:
        raise ValueError("expects a 4-colored graph")
    if g.n < 10:
        raise ValueError(f"needs at least 10 vertices, got {g.n}")
    colors = [c for c in range(4) if c != i]
    rm = find_rainbow_matching(g, colors, w)
    if rm is None:
        raise NotFoundError(f"no rainbow matching over colors {[c + 1 for c in colors]} avoiding {w + 1}")
    return rm


def tree_max_matching(g: ColoredGraph, c: int = 0) -> TreeMatching:
    """Maximum matching of the tree in color c.

    Leaves are matched to their parents bottom-up, which is optimal on a
    tree.
    """
    if g.n < 2 or not is_spanning_tree(g, c):
        raise ValueError(f"color {c + 1} is not a tree with at least one edge")
    adj: List[List[int]] = [[] for _ in range(g.n)]
    for a, b in g.edges_of_color(c):
        adj[a].append(b)
        adj[b].append(a)
    parent = [-1] * g.n
    order = [0]
    seen = [False] * g.n
    seen[0] = True
    for x in order:
        for y in sorted(adj[x]):
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                order.append(y)
    matched = [False] * g.n
    edges = []
    for x in reversed(order):
        p = parent[x]
        if p >= 0 and not matched[x] and not matched[p]:
            matched[x] = matched[p] = True
            edges.append((min(x, p), max(x, p)))
    internal = sum(1 for x in range(g.n) if len(adj[x]) >= 2)
    assert len(edges) >= math.ceil((internal + 1) / 2), "tree matching below the internal-node bound"
    return TreeMatching(tuple(sorted(edges)), internal)


def internal_node_count(g: ColoredGraph, c: int) -> int:
    return sum(1 for x in range(g.n) if g.degree(x, c) >= 2)


def order_by_internal_nodes(g: ColoredGraph, excluded: int) -> List[int]:
    return sorted((c for c in range(g.k) if c != excluded), key=lambda c: (internal_node_count(g, c), c))


def greedy_rainbow_matching(g: ColoredGraph, colors: Sequence[int], w: int) -> RainbowMatching:
    """Take, color by color, the first matching edge not blocked by earlier picks or w.

    If color number j (1-based) has a matching of size 2j, at most
    2(j-1) + 1 of its edges can be blocked, so a pick always exists.
    """
    picks = []
    blocked = {w}
    for c in colors:
        for a, b in tree_max_matching(g, c).edges:
            if a not in blocked and b not in blocked:
                picks.append(((a, b), c))
                blocked.update((a, b))
                break
        else:
            raise NotFoundError(f"greedy rainbow matching blocked at color {c + 1}")
    return RainbowMatching(tuple(picks))


def _greedy_for(g: ColoredGraph, i: int, w: int) -> RainbowMatching:
    return greedy_rainbow_matching(g, order_by_internal_nodes(g, i), w)


# --------------------------------------------------------------------------
# base cases
# --------------------------------------------------------------------------

def path_leaves(k: int, n: int) -> List[Tuple[int, int]]:
    """Leaf pair of each path from ``build_paths`` (0-indexed)."""
    half = (n + 1) // 2
    return [(i, (half + i) % n) for i in range(k)]


def _zigzag(i: int, n: int) -> List[int]:
    # 1-indexed start i; offsets 0, -1, +1, -2, +2, ... for even n.
    # Odd n runs the mirror image (0, +1, -1, ...) so the far leaf lands
    # on ceil(n/2) + i.
    sign0 = -1 if n % 2 == 0 else 1
    seq = [i]
    for t in range(1, n):
        mag = (t + 1) // 2
        sign = sign0 if t % 2 else -sign0
        seq.append((i + sign * mag - 1) % n + 1)
    return seq


def build_paths(k: int, n: int) -> ColoredGraph:
    """k edge-disjoint Hamiltonian paths; path i (color i-1) has leaves i and ceil(n/2)+i."""
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got k={k}, n={n}")
    g = ColoredGraph(n, k)
    for c in range(k):
        seq = _zigzag(c + 1, n)
        for a, b in zip(seq, seq[1:]):
            g.add_edge(a - 1, b - 1, c)
    return g


def realize_paths(m: DegreeMatrix) -> ColoredGraph:
    """``build_paths`` relabelled so each row's leaves sit where the matrix puts them.

    Non-leaf columns are all 2s and interchangeable: canonical leaves map
    to the requested leaves, and the remaining vertices map in increasing
    order.
    """
    _check_hypotheses(m)
    if not all_paths(m):
        raise HypothesisError("not every row is a path degree sequence")
    k, n = m.k, m.n
    vmap = [-1] * n
    for c, (p, q) in enumerate(path_leaves(k, n)):
        a, b = [v for v in range(n) if m.rows[c][v] == 1]
        vmap[p], vmap[q] = a, b
    targets = sorted(set(range(n)) - set(vmap))
    rest = [x for x in range(n) if vmap[x] < 0]
    for x, y in zip(rest, targets):
        vmap[x] = y
    return build_paths(k, n).relabeled(vmap)


@lru_cache(maxsize=1)
def _fixture_index() -> Dict[DegreeMatrix, tuple]:
    table = {}
    for f in load_fixtures():
        lab = canonical_labeling(f.matrix)
        table[lab.matrix] = (f, lab)
    return table


def base_case_lookup(m: DegreeMatrix) -> ColoredGraph:
    """Realize a quartet on at most 10 vertices from the bundled table."""
    _check_hypotheses(m)
    if m.k != 4 or m.n > QUARTET_BASE_N:
        raise ValueError("table covers k = 4, n <= 10 only")
    lab = canonical_labeling(m)
    hit = _fixture_index().get(lab.matrix)
    if hit is None:
        raise NoFixtureError("no bundled realization for this quartet")
    f, flab = hit
    vmap = [0] * m.n
    for j in range(m.n):
        vmap[flab.col_order[j]] = lab.col_order[j]
    cmap = [0] * m.k
    for t in range(m.k):
        cmap[flab.row_order[t]] = lab.row_order[t]
    g = f.graph.relabeled(vmap, cmap)
    assert verify_realization(g, m).ok
    return g


# --------------------------------------------------------------------------
# inductive builders
# --------------------------------------------------------------------------

def _induct(
    m: DegreeMatrix,
    stop: Callable[[DegreeMatrix], bool],
    base: Callable[[DegreeMatrix], ColoredGraph],
    rainbow: Callable[[ColoredGraph, int, int], RainbowMatching],
    on_peel: Optional[Callable[[DegreeMatrix, DegreeMatrix], None]] = None,
) -> Tuple[ColoredGraph, int]:
    stack: List[Tuple[Reduction, DegreeMatrix]] = []
    cur = m
    while not stop(cur):
        r = find_reduction(cur)
        nxt = apply_reduction(cur, r)
        if on_peel is not None:
            on_peel(cur, nxt)
        stack.append((r, cur))
        cur = nxt
    g = base(cur)
    depth = len(stack)
    while stack:
        r, full = stack.pop()
        w = r.w_after
        g = extend_realization(g, r.v, w, r.i, rainbow(g, r.i, w))
    return g, depth


def realize_quartet_traced(m: DegreeMatrix) -> Realization:
    if m.k != 4:
        raise HypothesisError("quartet builder needs k = 4")
    _check_hypotheses(m)
    if all_paths(m):
        return Realization(realize_paths(m), "paths", 0)
    g, depth = _induct(
        m,
        stop=lambda x: all_paths(x) or x.n <= QUARTET_BASE_N,
        base=lambda x: realize_paths(x) if all_paths(x) else base_case_lookup(x),
        rainbow=find_rainbow_matching_k4,
    )
    return Realization(g, "quartet", depth)


def realize_quartet(m: DegreeMatrix) -> ColoredGraph:
    return realize_quartet_traced(m).graph


def never_leaf_threshold(k: int) -> int:
    return max(0, 2 * k - 4)


def realize_never_leaves_traced(m: DegreeMatrix) -> Realization:
    _check_hypotheses(m)
    have, need = count_never_leaves(m), never_leaf_threshold(m.k)
    if have < need:
        raise TooFewNeverLeavesError(f"{have} never-leaves, need {need} (2k-4)")

    def peel_check(before: DegreeMatrix, after: DegreeMatrix) -> None:
        assert count_never_leaves(after) >= count_never_leaves(before), "peel created a leaf"

    g, depth = _induct(m, stop=all_paths, base=realize_paths, rainbow=_greedy_for, on_peel=peel_check)
    return Realization(g, "never-leaves", depth)


def realize_never_leaves(m: DegreeMatrix) -> ColoredGraph:
    return realize_never_leaves_traced(m).graph


def realize_quintet_traced(m: DegreeMatrix, base_limit: int = 18, budget: Optional[int] = None) -> Realization:
    from .oracle import DEFAULT_BUDGET, REALIZED, exhaustive_realize

    if m.k != 5:
        raise HypothesisError("quintet builder needs k = 5")
    if base_limit < 4 * m.k - 2:
        raise ValueError(f"base_limit must be at least {4 * m.k - 2}")
    _check_hypotheses(m)
    budget = DEFAULT_BUDGET if budget is None else budget

    def base(x: DegreeMatrix) -> ColoredGraph:
        if all_paths(x):
            return realize_paths(x)
        res = exhaustive_realize(x, budget)
        if res.status == REALIZED:
            return res.graph
        if res.status == "exceeded":
            raise OracleTimeout(f"oracle exceeded {budget} nodes at n={x.n}")
        raise NotFoundError(f"oracle found no realization at n={x.n}")

    if all_paths(m):
        return Realization(realize_paths(m), "paths", 0)
    g, depth = _induct(m, stop=lambda x: all_paths(x) or x.n <= base_limit, base=base, rainbow=_greedy_for)
    return Realization(g, "quintet", depth)


def realize_quintet(m: DegreeMatrix, base_limit: int = 18, budget: Optional[int] = None) -> ColoredGraph:
    return realize_quintet_traced(m, base_limit, budget).graph


STRATEGIES = ("auto", "paths", "quartet", "never-leaves", "quintet", "oracle")


def realize(m: DegreeMatrix, strategy: str = "auto", budget: Optional[int] = None, base_limit: int = 18) -> Realization:
    """Dispatch to a builder; ``auto`` takes the first whose hypotheses hold."""
    from .oracle import DEFAULT_BUDGET, REALIZED, exhaustive_realize

    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    budget = DEFAULT_BUDGET if budget is None else budget
    if strategy == "auto":
        no_common = m.is_valid() and find_common_leaves(m) is None
        if no_common and all_paths(m):
            strategy = "paths"
        elif no_common and m.k == 4:
            strategy = "quartet"
        elif no_common and count_never_leaves(m) >= never_leaf_threshold(m.k):
            strategy = "never-leaves"
        elif no_common and m.k == 5:
            strategy = "quintet"
        else:
            strategy = "oracle"
    if strategy == "paths":
        return Realization(realize_paths(m), "paths", 0)
    if strategy == "quartet":
        return realize_quartet_traced(m)
    if strategy == "never-leaves":
        return realize_never_leaves_traced(m)
    if strategy == "quintet":
        return realize_quintet_traced(m, base_limit, budget)
    res = exhaustive_realize(m, budget)
    if res.status == REALIZED:
        return Realization(res.graph, "oracle", 0)
    if res.status == "exceeded":
        raise OracleTimeout(f"oracle exceeded {budget} nodes")
    raise HypothesisError("no realization exists (search space exhausted)")
