"""Brute-force realization search, independent of the constructive builders.

Trees are built one color at a time. Within a color, the lowest-index
vertex that still needs edges gets all of them at once, as a combination
of admissible partners. Each tree is therefore generated exactly once.
Edges already used by earlier colors are forbidden. The search
backtracks on failure and counts one node per combination tried.

Pruning:
  * every component of the partial forest must still have unmet degree;
  * a vertex cannot need more edges, over the colors still open, than it
    has unused vertex pairs;
  * in the current color a vertex cannot need more edges than it has
    admissible partners.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .degseq import DegreeMatrix, is_tree_degree_sequence
from .egraph import ColoredGraph, verify_realization

REALIZED = "realized"
NONE = "none"
EXCEEDED = "exceeded"

DEFAULT_BUDGET = 5_000_000


@dataclass
class OracleResult:
    status: str
    graph: Optional[ColoredGraph] = None
    nodes: int = 0

    @property
    def realized(self) -> bool:
        return self.status == REALIZED


class _BudgetExceeded(Exception):
    pass


def color_order(m: DegreeMatrix) -> List[int]:
    """Rows by decreasing maximum degree, ties by index."""
    return sorted(range(m.k), key=lambda i: (-max(m.rows[i]), i))


def exhaustive_realize(
    m: DegreeMatrix, budget: int = DEFAULT_BUDGET, rng: Optional[random.Random] = None
) -> OracleResult:
    """Search for k edge-disjoint spanning trees meeting the rows of ``m``.

    Common leaves are allowed. Returns ``none`` only when the whole search
    space was exhausted within ``budget`` nodes. Passing ``rng`` shuffles
    vertex labels and partner order, which gives varied (still
    exhaustive) searches; without it the result is deterministic.
    """
    if rng is not None:
        perm = list(range(m.n))
        rng.shuffle(perm)
        res = _search(m.permuted(range(m.k), perm), budget, rng)
        if res.graph is not None:
            res.graph = res.graph.relabeled(perm)
        return res
    return _search(m, budget, None)


def _search(m: DegreeMatrix, budget: int, rng: Optional[random.Random]) -> OracleResult:
    n, k = m.n, m.k
    if not all(is_tree_degree_sequence(r) for r in m.rows):
        return OracleResult(NONE)
    if sum(sum(r) for r in m.rows) // 2 > n * (n - 1) // 2:
        return OracleResult(NONE)
    order = color_order(m)
    rem = [list(m.rows[c]) for c in range(k)]
    used = [[False] * n for _ in range(n)]
    free = [n - 1] * n
    chosen: List[Tuple[int, int, int]] = []
    nodes = 0

    def open_need(x: int, pos: int) -> int:
        return sum(rem[order[p]][x] for p in range(pos, k))

    def solve(pos: int, comp: List[int]) -> bool:
        nonlocal nodes
        if pos == k:
            return True
        c = order[pos]
        rc = rem[c]
        v = next((x for x in range(n) if rc[x] > 0), None)
        if v is None:
            return solve(pos + 1, list(range(n)))
        cv = comp[v]
        partners = [u for u in range(n) if u != v and rc[u] > 0 and not used[v][u] and comp[u] != cv]
        need = rc[v]
        if rng is not None:
            rng.shuffle(partners)
        if len(partners) < need:
            return False
        for combo in itertools.combinations(partners, need):
            labels = {comp[u] for u in combo}
            if len(labels) != need:
                continue
            nodes += 1
            if nodes > budget:
                raise _BudgetExceeded
            merged = labels | {cv}
            ncomp = [cv if lab in merged else lab for lab in comp]
            for u in combo:
                used[v][u] = used[u][v] = True
                free[u] -= 1
                rc[u] -= 1
                chosen.append((v, u, c))
            free[v] -= need
            rc[v] = 0
            if _consistent(pos, c, ncomp) and solve(pos, ncomp):
                return True
            rc[v] = need
            free[v] += need
            for u in combo:
                used[v][u] = used[u][v] = False
                free[u] += 1
                rc[u] += 1
                chosen.pop()
        return False

    def _consistent(pos: int, c: int, comp: List[int]) -> bool:
        rc = rem[c]
        totals: Dict[int, int] = {}
        for x in range(n):
            totals[comp[x]] = totals.get(comp[x], 0) + rc[x]
        if len(totals) > 1 and min(totals.values()) == 0:
            return False
        for x in range(n):
            if open_need(x, pos) > free[x]:
                return False
            if rc[x]:
                avail = sum(1 for y in range(n) if y != x and rc[y] and not used[x][y] and comp[y] != comp[x])
                if avail < rc[x]:
                    return False
        return True

    try:
        found = solve(0, list(range(n)))
    except _BudgetExceeded:
        return OracleResult(EXCEEDED, nodes=nodes)
    if not found:
        return OracleResult(NONE, nodes=nodes)
    g = ColoredGraph(n, k, chosen)
    assert verify_realization(g, m).ok, "oracle produced an invalid realization"
    return OracleResult(REALIZED, g, nodes)


# --------------------------------------------------------------------------
# sweeps over enumerated classes
# --------------------------------------------------------------------------

@dataclass
class SweepRow:
    n: int
    classes: int = 0
    realized: int = 0
    none: int = 0
    exceeded: int = 0

    @property
    def complete(self) -> bool:
        return self.realized == self.classes

    def line(self) -> str:
        return f"{self.n}\t{self.classes}\t{self.realized}\t{self.none}\t{self.exceeded}"


@dataclass
class SweepReport:
    k: int
    rows: List[SweepRow] = field(default_factory=list)

    @property
    def total_classes(self) -> int:
        return sum(r.classes for r in self.rows)

    @property
    def all_realized(self) -> bool:
        return all(r.complete for r in self.rows)

    def to_text(self) -> str:
        return "".join(r.line() + "\n" for r in self.rows)


def _solve_one(args) -> str:
    m, budget, builder = args
    if builder:
        from .construct import realize
        from .errors import OracleTimeout, TreePackError

        try:
            g = realize(m, "auto", budget).graph
        except OracleTimeout:
            return EXCEEDED
        except TreePackError:
            return NONE
        return REALIZED if verify_realization(g, m).ok else NONE
    res = exhaustive_realize(m, budget)
    if res.status == REALIZED and not verify_realization(res.graph, m).ok:
        return NONE
    return res.status


def oracle_sweep(
    k: int,
    n_max: int,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    builder: bool = False,
    checkpoint: Optional[str] = None,
    n_min: Optional[int] = None,
) -> SweepReport:
    """Realize every enumerated class with n up to ``n_max`` and tally outcomes per n.

    ``builder=True`` routes each class through the constructive
    dispatcher instead of the bare oracle. With a ``checkpoint`` path the
    last finished class is recorded after every result, and a rerun skips
    everything up to it. Skipped classes are not re-counted.
    """
    from .enumeration import enumerate_tuples, read_checkpoint, write_checkpoint

    resume = read_checkpoint(checkpoint) if checkpoint else None
    if resume is not None and resume.k != k:
        resume = None
    report = SweepReport(k)
    lo = 2 * k if n_min is None else max(n_min, 2 * k)
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for n in range(lo, n_max + 1):
            if resume is not None and n < resume.n:
                continue
            classes = [c.representative for c in enumerate_tuples(k, n, jobs)]
            if resume is not None and n == resume.n:
                classes = [m for m in classes if m.rows > resume.rows]
            row = SweepRow(n)
            tasks = [(m, budget, builder) for m in classes]
            results = pool.map(_solve_one, tasks, chunksize=8) if pool else map(_solve_one, tasks)
            for m, status in zip(classes, results):
                row.classes += 1
                if status == REALIZED:
                    row.realized += 1
                elif status == EXCEEDED:
                    row.exceeded += 1
                else:
                    row.none += 1
                if checkpoint:
                    write_checkpoint(checkpoint, m)
            report.rows.append(row)
    finally:
        if pool is not None:
            pool.shutdown()
    return report
