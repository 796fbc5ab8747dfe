"""Random valid instances for tests, benchmarks and the ``gen`` subcommand."""

from __future__ import annotations

import random
from typing import List, Optional, Sequence

from .degseq import DegreeMatrix
from .egraph import ColoredGraph


def random_matrix(
    k: int,
    n: int,
    rng: random.Random,
    min_never_leaves: int = 0,
    hub_bias: float = 0.3,
) -> DegreeMatrix:
    """Random k x n tree degree matrix without common leaves.

    Leaf counts are drawn first (each row at least 2, total at most
    ``n - min_never_leaves``), leaves are placed on disjoint vertex sets,
    and each row's excess ``leaves - 2`` is spread over its other
    vertices. With probability ``hub_bias`` a row piles its excess onto a
    single vertex, which produces high-degree hubs.
    """
    spare = n - 2 * k - min_never_leaves
    if spare < 0:
        raise ValueError(f"cannot fit {k} trees and {min_never_leaves} never-leaves on {n} vertices")
    extra = rng.randint(0, spare)
    leaves = [2] * k
    cap = max(2, n - 1)  # a tree on n >= 3 vertices has at most n - 1 leaves
    for _ in range(extra):
        i = rng.randrange(k)
        if leaves[i] < cap:
            leaves[i] += 1
    order = list(range(n))
    rng.shuffle(order)
    rows: List[List[int]] = []
    pos = 0
    for i in range(k):
        row = [2] * n
        mine = order[pos:pos + leaves[i]]
        pos += leaves[i]
        for v in mine:
            row[v] = 1
        others = [v for v in range(n) if row[v] != 1]
        if leaves[i] == 2:
            pass
        elif rng.random() < hub_bias:
            hub = rng.choice(others)
            row[hub] += leaves[i] - 2
        else:
            for _ in range(leaves[i] - 2):
                row[rng.choice(others)] += 1
        rows.append(row)
    return DegreeMatrix.from_rows(rows)


def random_tree_edges(degrees: Sequence[int], rng: random.Random) -> List[tuple]:
    """Uniform random labelled tree with the given degrees, via a Prüfer sequence."""
    n = len(degrees)
    if n == 2:
        return [(0, 1)]
    code = [v for v in range(n) for _ in range(degrees[v] - 1)]
    rng.shuffle(code)
    return prufer_decode(code, n)


def prufer_decode(code: Sequence[int], n: int) -> List[tuple]:
    deg = [1] * n
    for x in code:
        deg[x] += 1
    edges = []
    for x in code:
        leaf = min(v for v in range(n) if deg[v] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        deg[leaf] -= 1
        deg[x] -= 1
    u, v = [x for x in range(n) if deg[x] == 1]
    edges.append((u, v))
    return edges


def random_tree(n: int, rng: random.Random) -> ColoredGraph:
    """Uniform random labelled tree on n >= 2 vertices as a one-color graph."""
    if n == 2:
        return ColoredGraph(2, 1, [(0, 1, 0)])
    code = [rng.randrange(n) for _ in range(n - 2)]
    return ColoredGraph(n, 1, ((a, b, 0) for a, b in prufer_decode(code, n)))


def random_realization(
    k: int,
    n: int,
    rng: random.Random,
    min_never_leaves: int = 0,
    budget: Optional[int] = None,
    attempts: int = 100,
):
    """Random matrix together with a randomized oracle realization of it.

    Returns ``(matrix, graph)``. Gives up with RuntimeError after
    ``attempts`` matrices the oracle could not realize within budget.
    """
    from .oracle import DEFAULT_BUDGET, exhaustive_realize

    budget = DEFAULT_BUDGET if budget is None else budget
    for _ in range(attempts):
        m = random_matrix(k, n, rng, min_never_leaves)
        res = exhaustive_realize(m, budget, rng)
        if res.realized:
            return m, res.graph
    raise RuntimeError(f"no realizable {k}x{n} instance in {attempts} attempts")
