"""Canonical forms and enumeration of degree matrices up to row and column permutation.

A matrix's canonical form is the row-major lexicographically least matrix
reachable by permuting rows and columns. With the row order fixed, the
best column order is just the columns sorted as tuples, so only the row
order needs searching. Row t of the column-sorted matrix depends only on
the first t rows chosen. That lets a breadth-first beam keep the
row-order prefixes that tie for the least row so far.

Enumeration picks a multiset of columns carrying degree excess above 2,
fills the rest with plain columns (all 2s, or one leaf among 2s) as the
row sums dictate, and collects canonical forms in a set. Rows are
restricted to non-increasing leaf counts, which every class admits.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .degseq import DegreeMatrix, parse_degree_matrices

Column = Tuple[int, ...]


@dataclass(frozen=True)
class CanonicalLabeling:
    """``matrix == original.permuted(row_order, col_order)``."""

    matrix: DegreeMatrix
    row_order: Tuple[int, ...]
    col_order: Tuple[int, ...]


@dataclass(frozen=True)
class CanonicalClass:
    representative: DegreeMatrix

    @property
    def k(self) -> int:
        return self.representative.k

    @property
    def n(self) -> int:
        return self.representative.n


def canonical_labeling(m: DegreeMatrix) -> CanonicalLabeling:
    rows = m.rows
    n = m.n
    beam: List[Tuple[int, ...]] = [()]
    for _ in range(m.k):
        best_row = None
        nxt: List[Tuple[int, ...]] = []
        for prefix in beam:
            for r in range(m.k):
                if r in prefix:
                    continue
                order = prefix + (r,)
                cols = sorted(tuple(rows[i][v] for i in order) for v in range(n))
                row = tuple(c[-1] for c in cols)
                if best_row is None or row < best_row:
                    best_row, nxt = row, [order]
                elif row == best_row:
                    nxt.append(order)
        beam = nxt
    row_order = min(beam)
    col_order = tuple(sorted(range(n), key=lambda v: (tuple(rows[i][v] for i in row_order), v)))
    return CanonicalLabeling(m.permuted(row_order, col_order), row_order, col_order)


def canonical_form(m: DegreeMatrix) -> DegreeMatrix:
    return canonical_labeling(m).matrix


def is_canonical(m: DegreeMatrix) -> bool:
    return canonical_form(m) == m


# --------------------------------------------------------------------------
# orderly generation
# --------------------------------------------------------------------------

def excess_columns(k: int, n: int) -> List[Column]:
    """Columns carrying some degree above 2, ascending.

    Row i's degrees exceed 2 by a total of (leaves in row i) - 2, and the
    leaf counts add up to at most n, so all excess together is at most
    n - 2k. Every other column is "plain": all 2s, or a single 1 among 2s.
    """
    budget = n - 2 * k
    out = []
    if budget < 1:
        return out
    for col in itertools.product(range(1, budget + 3), repeat=k):
        if col.count(1) > 1:
            continue
        extra = sum(d - 2 for d in col if d > 2)
        if 1 <= extra <= budget:
            out.append(col)
    out.sort()
    return out


def _plain_column(k: int, leaf_row: Optional[int]) -> Column:
    return tuple(1 if i == leaf_row else 2 for i in range(k))


def _candidates(k: int, n: int, first: Optional[int] = None) -> Iterator[DegreeMatrix]:
    """One matrix per (row-labelled) column multiset with leaf counts non-increasing down the rows."""
    types = excess_columns(k, n)
    budget = n - 2 * k
    extra = [tuple(max(0, d - 2) for d in t) for t in types]
    weight = [sum(x) for x in extra]
    leaf_row = [t.index(1) if 1 in t else None for t in types]

    def finish(chosen: List[int], excess: List[int], leaves_used: List[int]) -> Optional[DegreeMatrix]:
        if any(excess[i] < excess[i + 1] for i in range(k - 1)):
            return None
        plain = [excess[i] + 2 - leaves_used[i] for i in range(k)]
        if min(plain) < 0:
            return None
        never = n - len(chosen) - sum(plain)
        if never < 0:
            return None
        cols = [types[j] for j in chosen]
        for i in range(k):
            cols += [_plain_column(k, i)] * plain[i]
        cols += [_plain_column(k, None)] * never
        return DegreeMatrix(tuple(tuple(c[i] for c in cols) for i in range(k)))

    def walk(start, left, chosen, excess, leaves_used):
        m = finish(chosen, excess, leaves_used)
        if m is not None:
            yield m
        if len(chosen) == n:
            return
        for j in range(start, len(types)):
            w = weight[j]
            if w > left:
                continue
            chosen.append(j)
            for i, x in enumerate(extra[j]):
                excess[i] += x
            if leaf_row[j] is not None:
                leaves_used[leaf_row[j]] += 1
            yield from walk(j, left - w, chosen, excess, leaves_used)
            if leaf_row[j] is not None:
                leaves_used[leaf_row[j]] -= 1
            for i, x in enumerate(extra[j]):
                excess[i] -= x
            chosen.pop()

    if first is None:
        yield from walk(0, budget, [], [0] * k, [0] * k)
    elif first < 0:
        # the all-plain matrices only
        m = finish([], [0] * k, [0] * k)
        if m is not None:
            yield m
    else:
        excess = list(extra[first])
        leaves = [0] * k
        if leaf_row[first] is not None:
            leaves[leaf_row[first]] += 1
        yield from walk(first, budget - weight[first], [first], excess, leaves)


def _partition(k: int, n: int, first: Optional[int]) -> List[DegreeMatrix]:
    seen = set()
    for m in _candidates(k, n, first):
        seen.add(canonical_form(m))
    return list(seen)


def _partition_job(args):
    k, n, first = args
    return _partition(k, n, first)


def enumerate_tuples(k: int, n: int, jobs: int = 1) -> Iterator[CanonicalClass]:
    """Yield every class of k tree degree sequences on n vertices without common leaves.

    Each class appears once, represented by its canonical form, in
    ascending row-major order. ``jobs > 1`` splits the search by first
    column type across worker processes; results are identical.
    """
    if k < 1 or n < 2:
        return
    if n < 2 * k:
        return
    if jobs > 1:
        firsts = [-1] + list(range(len(excess_columns(k, n))))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = set()
            for part in pool.map(_partition_job, [(k, n, j) for j in firsts], chunksize=4):
                found.update(part)
        found = list(found)
    else:
        found = _partition(k, n, None)
    found.sort(key=lambda m: m.rows)
    for m in found:
        yield CanonicalClass(m)


def count_tuples(k: int, n_max: int, jobs: int = 1, n_min: Optional[int] = None) -> Dict[int, int]:
    """Number of classes for each n from ``n_min`` (default 2k) to ``n_max``."""
    lo = 2 * k if n_min is None else n_min
    return {n: sum(1 for _ in enumerate_tuples(k, n, jobs)) for n in range(lo, n_max + 1)}


def emit_class_stream(classes) -> str:
    """Text records separated by blank lines."""
    return "\n".join(c.representative.to_text() for c in classes)


def read_checkpoint(path: str) -> Optional[DegreeMatrix]:
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        mats = list(parse_degree_matrices(fh.read()))
    return mats[-1] if mats else None


def write_checkpoint(path: str, m: DegreeMatrix) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(m.to_text())
    os.replace(tmp, path)
