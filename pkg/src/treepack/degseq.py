"""Degree sequences, degree matrices and sequence-level feasibility checks.

Vertices and rows are 0-indexed in memory. The text and JSON formats
carry no vertex labels, so only witnesses reported to users need
converting (``+ 1``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .errors import ParseError

DegreeSequence = Tuple[int, ...]


def is_tree_degree_sequence(seq: Sequence[int]) -> bool:
    n = len(seq)
    return n >= 2 and all(d >= 1 for d in seq) and sum(seq) == 2 * n - 2


def is_path_degree_sequence(seq: Sequence[int]) -> bool:
    ones = sum(1 for d in seq if d == 1)
    twos = sum(1 for d in seq if d == 2)
    return ones == 2 and twos == len(seq) - 2


def erdos_gallai_graphical(seq: Sequence[int]) -> bool:
    """Erdős–Gallai test for simple-graph realizability.

    Odd degree sums are rejected up front; the prefix inequalities are
    only meaningful for even sums.
    """
    f = sorted(seq, reverse=True)
    if any(d < 0 for d in f) or sum(f) % 2:
        return False
    n = len(f)
    prefix = 0
    for s in range(1, n + 1):
        prefix += f[s - 1]
        rhs = s * (s - 1) + sum(min(s, d) for d in f[s:])
        if prefix > rhs:
            return False
    return True


@dataclass(frozen=True)
class DegreeMatrix:
    """k x n matrix; ``rows[i][v]`` is the degree of vertex v in tree i."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(d) for d in r) for r in self.rows)
        if not rows:
            raise ValueError("a degree matrix needs at least one row")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged degree matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "DegreeMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, idx):
        i, v = idx
        return self.rows[i][v]

    def column(self, v: int) -> Tuple[int, ...]:
        return tuple(r[v] for r in self.rows)

    def columns(self) -> list:
        return [self.column(v) for v in range(self.n)]

    def is_valid(self) -> bool:
        """Every row is a tree degree sequence."""
        return all(is_tree_degree_sequence(r) for r in self.rows)

    def has_common_leaves(self) -> bool:
        return find_common_leaves(self) is not None

    def permuted(self, row_order: Sequence[int], col_order: Sequence[int]) -> "DegreeMatrix":
        """New matrix whose row t is old row ``row_order[t]`` and column j old column ``col_order[j]``."""
        return DegreeMatrix(tuple(tuple(self.rows[i][v] for v in col_order) for i in row_order))

    def to_text(self) -> str:
        lines = [f"{self.k} {self.n}"]
        lines += [" ".join(str(d) for d in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "n": self.n, "rows": [list(r) for r in self.rows]})

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class SumSequence:
    """Column sums sorted non-increasing; ``order[j]`` is the vertex holding ``sums[j]``."""

    sums: Tuple[int, ...]
    order: Tuple[int, ...]


def sum_sequence(m: DegreeMatrix) -> SumSequence:
    totals = [sum(col) for col in m.columns()]
    order = sorted(range(m.n), key=lambda v: (-totals[v], v))
    return SumSequence(tuple(totals[v] for v in order), tuple(order))


def find_common_leaves(m: DegreeMatrix) -> Optional[Tuple[int, int, int]]:
    """First column holding two leaves, as ``(vertex, row_a, row_b)``, or None.

    Columns are scanned left to right and the two smallest row indices
    are reported.
    """
    for v in range(m.n):
        leaf_rows = [i for i in range(m.k) if m.rows[i][v] == 1]
        if len(leaf_rows) >= 2:
            return v, leaf_rows[0], leaf_rows[1]
    return None


def count_never_leaves(m: DegreeMatrix) -> int:
    return sum(1 for col in m.columns() if 1 not in col)


def eg_tail_bound_holds(m: DegreeMatrix, s: int) -> bool:
    """Evaluate the Erdős–Gallai inequality at index ``s`` (1-based) for the sorted column sums."""
    if not 1 <= s <= m.n:
        raise ValueError(f"s must lie in [1, {m.n}], got {s}")
    f = sum_sequence(m).sums
    return sum(f[:s]) <= s * (s - 1) + sum(min(s, d) for d in f[s:])


def all_paths(m: DegreeMatrix) -> bool:
    return all(is_path_degree_sequence(r) for r in m.rows)


# --------------------------------------------------------------------------
# text / JSON formats
# --------------------------------------------------------------------------

def _ints(line: str, lineno: int) -> list:
    out = []
    for tok in re.finditer(r"\S+", line):
        try:
            out.append(int(tok.group()))
        except ValueError:
            raise ParseError(f"expected an integer, got {tok.group()!r}", lineno, tok.start() + 1) from None
    return out


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        yield lineno, line


def _parse_block(lines: Sequence[Tuple[int, str]]) -> DegreeMatrix:
    lineno, header = lines[0]
    head = _ints(header, lineno)
    if len(head) != 2:
        raise ParseError("header must be 'k n'", lineno, 1)
    k, n = head
    if k < 1 or n < 1:
        raise ParseError("k and n must be positive", lineno, 1)
    body = lines[1:]
    if len(body) != k:
        where = body[-1][0] + 1 if body else lineno + 1
        raise ParseError(f"expected {k} rows, found {len(body)}", where)
    rows = []
    for lineno, line in body:
        vals = _ints(line, lineno)
        if len(vals) != n:
            raise ParseError(f"expected {n} entries, found {len(vals)}", lineno, 1)
        for j, d in enumerate(vals):
            if d < 0:
                raise ParseError("degrees must be non-negative", lineno, j + 1)
        rows.append(vals)
    return DegreeMatrix.from_rows(rows)


def parse_degree_matrices(text: str) -> Iterator[DegreeMatrix]:
    """Parse a stream of blank-line separated matrices in the text format."""
    block: list = []
    for lineno, line in _content_lines(text):
        if line:
            block.append((lineno, line))
        elif block:
            yield _parse_block(block)
            block = []
    if block:
        yield _parse_block(block)


def parse_degree_matrix(text: str) -> DegreeMatrix:
    """Parse a single matrix: a ``k n`` header line, then k rows of n integers.

    Text starting with ``{`` is read as the JSON form instead.
    """
    if text.lstrip().startswith("{"):
        return parse_degree_matrix_json(text)
    lines = [(no, line) for no, line in _content_lines(text) if line]
    if not lines:
        raise ParseError("empty input", 1)
    return _parse_block(lines)


def parse_degree_matrix_json(text: str) -> DegreeMatrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    try:
        k, n, rows = obj["k"], obj["n"], obj["rows"]
    except (KeyError, TypeError):
        raise ParseError("JSON matrix needs fields 'k', 'n' and 'rows'") from None
    if not isinstance(rows, list) or len(rows) != k:
        raise ParseError(f"expected {k} rows")
    for i, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != n:
            raise ParseError(f"row {i + 1}: expected {n} entries", i + 1)
        for j, d in enumerate(r):
            if not isinstance(d, int) or isinstance(d, bool) or d < 0:
                raise ParseError(f"row {i + 1}: bad entry {d!r}", i + 1, j + 1)
    return DegreeMatrix.from_rows(rows)
