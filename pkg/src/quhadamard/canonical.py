"""Canonical forms of vertex-colored (di)graphs, and code equivalence built on them.

Canonical labeling is delegated to nauty (through pynauty). The cells of the
coloring are handed over in increasing color order, so the certificate
together with the color histogram is a complete isomorphism invariant.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Optional, Sequence

import numpy as np
import pynauty


@dataclass(frozen=True)
class ColoredGraph:
    vertex_count: int
    colors: tuple
    arcs: frozenset
    directed: bool = False

    def __post_init__(self):
        if len(self.colors) != self.vertex_count:
            raise ValueError("one color per vertex required")
        for u, v in self.arcs:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"arc ({u}, {v}) references a missing vertex")

    @classmethod
    def build(cls, vertex_count: int, colors: Sequence[int], arcs: Iterable[tuple[int, int]],
              directed: bool = False) -> "ColoredGraph":
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        if not directed:
            arcs = frozenset(arcs | {(v, u) for u, v in arcs})
        return cls(vertex_count, tuple(int(c) for c in colors), arcs, directed)

    def adjacency(self) -> dict:
        adj: dict = {}
        for u, v in self.arcs:
            if not self.directed and v < u:
                continue
            adj.setdefault(u, []).append(v)
        return adj

    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Vertex v becomes perm[v]."""
        colors = [0] * self.vertex_count
        for v, c in enumerate(self.colors):
            colors[perm[v]] = c
        arcs = frozenset((perm[u], perm[v]) for u, v in self.arcs)
        return ColoredGraph(self.vertex_count, tuple(colors), arcs, self.directed)

    def to_dimacs(self) -> str:
        lines = [f"p edge {self.vertex_count} {len(self.arcs)}"]
        lines += [f"n {v + 1} {c}" for v, c in enumerate(self.colors)]
        lines += [f"e {u + 1} {v + 1}" for u, v in sorted(self.arcs)]
        return "\n".join(lines) + "\n"


def _cells(colors: Sequence[int]) -> tuple[list[int], list[set]]:
    palette = sorted(set(colors))
    where = {c: i for i, c in enumerate(palette)}
    cells: list[set] = [set() for _ in palette]
    for v, c in enumerate(colors):
        cells[where[c]].add(v)
    return palette, cells


def _nauty_graph(g: ColoredGraph) -> pynauty.Graph:
    _, cells = _cells(g.colors)
    return pynauty.Graph(g.vertex_count, directed=g.directed, adjacency_dict=g.adjacency(),
                         vertex_coloring=cells)


def canonical_form(g: ColoredGraph) -> bytes:
    palette, cells = _cells(g.colors)
    header = struct.pack(f"<3q{2 * len(palette)}q", g.vertex_count, int(g.directed), len(palette),
                         *[x for c, cell in zip(palette, cells) for x in (c, len(cell))])
    if g.vertex_count == 0:
        return header
    return header + pynauty.certificate(_nauty_graph(g))


def isomorphic(g1: ColoredGraph, g2: ColoredGraph) -> bool:
    return canonical_form(g1) == canonical_form(g2)


def automorphisms(g: ColoredGraph) -> list[list[int]]:
    """Generators of the color-preserving automorphism group."""
    if g.vertex_count == 0:
        return []
    gens, *_ = pynauty.autgrp(_nauty_graph(g))
    return [list(p) for p in gens]


def brute_force_isomorphic(g1: ColoredGraph, g2: ColoredGraph) -> bool:
    """Exhaustive check over all bijections; for tiny graphs only."""
    if g1.vertex_count != g2.vertex_count or g1.directed != g2.directed:
        return False
    if sorted(g1.colors) != sorted(g2.colors) or len(g1.arcs) != len(g2.arcs):
        return False
    n = g1.vertex_count
    if n > 9:
        raise ValueError("brute force limited to 9 vertices")
    for p in permutations(range(n)):
        if any(g1.colors[v] != g2.colors[p[v]] for v in range(n)):
            continue
        if all((p[u], p[v]) in g2.arcs for u, v in g1.arcs):
            return True
    return False


# ------------------------------------------------------------ binary codes

def literal_graph(words: np.ndarray, n: int) -> ColoredGraph:
    """Codeword vertices (color 0) and literal vertices (j, bit) (color 1).

    Codeword c is joined to (j, c_j) for every j, and (j, 0) is joined to (j, 1).
    Color-preserving isomorphisms are exactly coordinate permutations combined
    with a translation, so for codes containing 0 isomorphism coincides with
    equivalence under permutation and translation by a codeword.
    """
    m = len(words)
    lit0 = m  # vertex of (j, b) is m + 2j + b
    arcs = [(m + 2 * j, m + 2 * j + 1) for j in range(n)]
    for i, w in enumerate(words.tolist()):
        for j in range(n):
            arcs.append((i, lit0 + 2 * j + ((w >> j) & 1)))
    return ColoredGraph.build(m + 2 * n, [0] * m + [1] * (2 * n), arcs)


def code_canonical_form(code) -> bytes:
    """Invariant of a binary code under coordinate permutation plus translation."""
    cached = code.__dict__.get("_canonical")
    if cached is None:
        cached = canonical_form(literal_graph(np.asarray(code.words), code.n))
        object.__setattr__(code, "_canonical", cached)
    return cached


def codes_equivalent(c1, c2) -> bool:
    if c1.n != c2.n or len(c1) != len(c2):
        return False
    return code_canonical_form(c1) == code_canonical_form(c2)
