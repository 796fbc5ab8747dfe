"""The 14 small degree quartets and their bundled realizations."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Dict, List

from .degseq import DegreeMatrix, parse_degree_matrix
from .egraph import ColoredGraph, parse_adjacency_color_matrix


@dataclass(frozen=True)
class Fixture:
    case: int
    matrix: DegreeMatrix
    adjacency_text: str

    @property
    def graph(self) -> ColoredGraph:
        return parse_adjacency_color_matrix(self.adjacency_text, self.matrix.k)


def _parse(text: str) -> List[Fixture]:
    out = []
    case = None
    section = None
    buf: Dict[str, List[str]] = {"degrees": [], "realization": []}

    def flush():
        if case is not None:
            out.append(
                Fixture(
                    case,
                    parse_degree_matrix("\n".join(buf["degrees"])),
                    "\n".join(buf["realization"]) + "\n",
                )
            )

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("case "):
            flush()
            case = int(line.split()[1])
            buf = {"degrees": [], "realization": []}
            section = None
        elif line in buf:
            section = line
        else:
            buf[section].append(line)
    flush()
    return out


@lru_cache(maxsize=1)
def load_fixtures() -> tuple:
    text = resources.files("treepack").joinpath("data/small_quartets.txt").read_text()
    return tuple(_parse(text))


def fixture(case: int) -> Fixture:
    return load_fixtures()[case - 1]
