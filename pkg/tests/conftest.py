import itertools
import time

import pytest

from treepack.fixtures import load_fixtures

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


@pytest.fixture
def criterion(request):
    """Time a block and record a pass/fail line for the acceptance summary."""

    class Recorder:
        def __init__(self, name, limit):
            self.name = name
            self.limit = limit

        def __enter__(self):
            self.t0 = time.perf_counter()
            return self

        def __exit__(self, exc_type, exc, tb):
            self.elapsed = time.perf_counter() - self.t0
            ok = exc_type is None and self.elapsed < self.limit
            _ACCEPTANCE.append((self.name, ok, self.elapsed, self.limit))
            if exc_type is None:
                assert self.elapsed < self.limit, f"{self.name}: {self.elapsed:.1f}s over the {self.limit}s budget"
            return False

    return Recorder


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, elapsed, limit in _ACCEPTANCE:
        mark = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name} ({elapsed:.2f}s / limit {limit}s)")


# --------------------------------------------------------------------------
# independent reference implementations
# --------------------------------------------------------------------------

def havel_hakimi(seq):
    s = sorted(seq, reverse=True)
    if any(d < 0 for d in s):
        return False
    while s and s[0] > 0:
        d = s.pop(0)
        if d > len(s):
            return False
        for j in range(d):
            s[j] -= 1
            if s[j] < 0:
                return False
        s.sort(reverse=True)
    return True


def prufer_trees(degrees):
    """Every labelled tree with the given degree sequence, as frozensets of edges."""
    n = len(degrees)
    if n == 2:
        yield frozenset({(0, 1)})
        return
    base = [v for v in range(n) for _ in range(degrees[v] - 1)]
    for code in set(itertools.permutations(base)):
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
        yield frozenset(edges)


def packable_by_prufer(m):
    """Decide realizability by enumerating every labelled tree per row."""
    trees = [list(prufer_trees(r)) for r in m.rows]

    def go(i, used):
        if i == len(trees):
            return True
        return any(go(i + 1, used | t) for t in trees[i] if not (used & t))

    return go(0, frozenset())


def tree_sequences(n):
    for c in itertools.product(range(1, n), repeat=n):
        if sum(c) == 2 * n - 2:
            yield c


def brute_force_classes(k, n):
    """Classes of k x n tree matrices without common leaves, found by brute force.

    Walks every multiset of columns (entries 1..n-1, at most one 1) that
    meets the row sums, using only the trivial bounds, and relabels by
    trying all k! row orders with columns sorted.
    """
    types = sorted(c for c in itertools.product(range(1, n), repeat=k) if c.count(1) <= 1)
    target = 2 * n - 2
    seen = set()

    def walk(start, r, rem, acc):
        if r == 0:
            if not any(rem):
                rows = [tuple(c[i] for c in acc) for i in range(k)]
                seen.add(
                    min(
                        tuple(zip(*sorted(zip(*[rows[i] for i in perm]))))
                        for perm in itertools.permutations(range(k))
                    )
                )
            return
        for j in range(start, len(types)):
            t = types[j]
            if t[0] * r > rem[0]:
                break
            nrem = tuple(a - b for a, b in zip(rem, t))
            if min(nrem) < r - 1 or sum(nrem) < (r - 1) * (2 * k - 1):
                continue
            acc.append(t)
            walk(j, r - 1, nrem, acc)
            acc.pop()

    walk(0, n, (target,) * k, [])
    return seen


def max_tree_matching_dp(n, edges):
    """Tree matching number by the two-state DP, independent of leaf stripping."""
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    order, parent = [0], [-1] * n
    for x in order:
        for y in adj[x]:
            if y != parent[x]:
                parent[y] = x
                order.append(y)
    free = [0] * n  # best with x unmatched
    take = [0] * n  # best overall in x's subtree
    for x in reversed(order):
        kids = [y for y in adj[x] if y != parent[x]]
        free[x] = sum(take[y] for y in kids)
        take[x] = free[x]
        for y in kids:
            take[x] = max(take[x], free[x] - take[y] + free[y] + 1)
    return take[0]


def _is_tree_edges(n, edges):
    if len(edges) != n - 1:
        return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def naive_realizable_pairs(n):
    """Every (row1, row2) degree pair realized by some 2-coloring of a subgraph of K_n."""
    pairs = list(itertools.combinations(range(n), 2))
    out = set()
    for colors in itertools.product((0, 1, 2), repeat=len(pairs)):
        e1 = [p for p, c in zip(pairs, colors) if c == 1]
        e2 = [p for p, c in zip(pairs, colors) if c == 2]
        if len(e1) != n - 1 or len(e2) != n - 1:
            continue
        if not (_is_tree_edges(n, e1) and _is_tree_edges(n, e2)):
            continue
        d1, d2 = [0] * n, [0] * n
        for a, b in e1:
            d1[a] += 1
            d1[b] += 1
        for a, b in e2:
            d2[a] += 1
            d2[b] += 1
        out.add((tuple(d1), tuple(d2)))
    return out
