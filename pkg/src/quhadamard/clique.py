"""Mate graphs and a bitset branch-and-bound clique solver.

A mate of H for a set of allowed absolute inner products is a Hadamard K whose
rows x all satisfy |x . h_i| in the allowed set. Sign-normalizing rows of K on
the first coordinate and sorting them by their next two coordinates puts K in
the fixed three-column form, so candidate rows split into four parts by prefix
and K is an n-clique of the orthogonality graph on candidates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np
from numba import njit

from .signmatrix import (
    PairClassification,
    PairKind,
    SignMatrix,
    as_sign_matrix,
    classify_pair,
    feasible_qub_params,
    is_hadamard,
)

PREFIXES = ((1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1))
MAX_MATE_ORDER = 32


class BudgetExhausted(RuntimeError):
    pass


def bitsets_from_bool(mat: np.ndarray) -> list[int]:
    """Row i -> int with bit j set iff mat[i, j]."""
    out = []
    for row in np.asarray(mat, dtype=bool):
        out.append(int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little"))
    return out


def _popcount(x: int) -> int:
    return x.bit_count()


def _color_order(adj: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Greedy sequential coloring of the candidate set p.

    Returns vertices and their color numbers in nondecreasing color order.
    """
    order, colors = [], []
    color = 0
    uncolored = p
    while uncolored:
        color += 1
        q = uncolored
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~adj[v] & ~low
            uncolored &= ~low
            order.append(v)
            colors.append(color)
    return order, colors


def iter_k_cliques(adj: Sequence[int], cand: int, k: int, counter=None, budget: Optional[int] = None,
                   base: tuple = ()) -> Iterator[list[int]]:
    """Yield every k-clique inside the candidate bitset, each once, in
    increasing vertex order. Pruned by greedy coloring."""
    if counter is None:
        counter = [0]

    def rec(r: list[int], p: int):
        counter[0] += 1
        if budget is not None and counter[0] > budget:
            raise BudgetExhausted(f"clique enumeration exceeded {budget} nodes")
        need = k - len(r)
        if need == 0:
            yield list(r)
            return
        if _popcount(p) < need:
            return
        _, colors = _color_order(adj, p)
        if colors[-1] < need:
            return
        while p:
            if _popcount(p) < need:
                return
            low = p & -p
            v = low.bit_length() - 1
            p &= ~low
            r.append(v)
            yield from rec(r, p & adj[v])
            r.pop()

    yield from rec(list(base), cand)


@dataclass
class CliqueResult:
    size: int
    witness: list
    exhausted: bool = False
    nodes: int = 0


def max_clique_bitsets(adj: Sequence[int], budget: Optional[int] = None, target: Optional[int] = None,
                       within: Optional[int] = None) -> CliqueResult:
    """Maximum clique by branch and bound with a coloring bound (MCQ style).

    Vertices are relabeled by nonincreasing degree so the coloring sees dense
    vertices first. With `target`, the search stops as soon as a clique of that
    size is found. With a budget, an exhausted search returns the best clique
    seen so far flagged as a lower bound.
    """
    nv = len(adj)
    if within is None:
        within = (1 << nv) - 1
    verts = [v for v in range(nv) if (within >> v) & 1]
    if not verts:
        return CliqueResult(0, [])
    deg = {v: _popcount(adj[v] & within) for v in verts}
    order = sorted(verts, key=lambda v: (-deg[v], v))
    pos = {v: i for i, v in enumerate(order)}
    radj = [0] * len(order)
    for v in order:
        m = adj[v] & within
        b = 0
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m &= ~low
            b |= 1 << pos[u]
        radj[pos[v]] = b
    best: list[int] = []
    nodes = [0]

    class _Stop(Exception):
        pass

    def expand(r: list[int], p: int):
        nonlocal best
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise BudgetExhausted
        order_p, colors = _color_order(radj, p)
        for i in range(len(order_p) - 1, -1, -1):
            if len(r) + colors[i] <= len(best):
                return
            v = order_p[i]
            r.append(v)
            np_ = p & radj[v]
            if np_:
                expand(r, np_)
            elif len(r) > len(best):
                best = list(r)
                if target is not None and len(best) >= target:
                    raise _Stop
            r.pop()
            p &= ~(1 << v)

    exhausted = False
    try:
        expand([], (1 << len(order)) - 1)
    except _Stop:
        pass
    except BudgetExhausted:
        exhausted = True
    witness = sorted(order[i] for i in best)
    return CliqueResult(len(best), witness, exhausted, nodes[0])


# ------------------------------------------------------------ mate graphs

@njit(cache=True)
def _gray_scan(h, base, allowed, free_start):
    """Walk all sign patterns of the free coordinates in Gray-code order,
    updating the n inner products by +-2 h_j per flip. Returns the Gray codes
    (bit k set = free coordinate k negated) of rows passing the filter."""
    n = h.shape[0]
    nfree = h.shape[1] - free_start
    total = 1 << nfree
    ip = base.copy()
    sign = np.ones(nfree, dtype=np.int64)
    cap = 1024
    out = np.empty(cap, dtype=np.int64)
    cnt = 0
    for t in range(total):
        if t > 0:
            k = 0
            tt = t
            while (tt & 1) == 0:
                tt >>= 1
                k += 1
            col = free_start + k
            for i in range(n):
                ip[i] -= 2 * sign[k] * h[i, col]
            sign[k] = -sign[k]
        ok = True
        for i in range(n):
            v = ip[i]
            if v < 0:
                v = -v
            if not allowed[v]:
                ok = False
                break
        if ok:
            if cnt == cap:
                cap *= 2
                bigger = np.empty(cap, dtype=np.int64)
                bigger[:cnt] = out[:cnt]
                out = bigger
            out[cnt] = t ^ (t >> 1)
            cnt += 1
    return out[:cnt]


def candidate_rows(h: SignMatrix, values: Sequence[int], prefix: Sequence[int]) -> np.ndarray:
    """All +-1 rows with the given prefix whose |inner products| with every row of H lie in values."""
    h = as_sign_matrix(h)
    n = h.order
    a = h.as_int()
    p = len(prefix)
    allowed = np.zeros(n + 1, dtype=np.bool_)
    for v in values:
        if 0 <= v <= n:
            allowed[v] = True
    base = a[:, :p] @ np.asarray(prefix, dtype=np.int64) + a[:, p:].sum(axis=1)
    codes = _gray_scan(np.ascontiguousarray(a), base.astype(np.int64), allowed, p)
    rows = np.ones((len(codes), n), dtype=np.int8)
    rows[:, :p] = prefix
    shifts = np.arange(n - p, dtype=np.int64)
    rows[:, p:] = 1 - 2 * ((codes[:, None] >> shifts[None, :]) & 1)
    return rows


@dataclass
class MateGraph:
    n: int
    values: tuple
    vectors: np.ndarray  # N x n int8
    part_of: np.ndarray  # part index 0..3 per vertex
    adj: list = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return len(self.vectors)

    def part(self, j: int) -> np.ndarray:
        return np.flatnonzero(self.part_of == j)

    def part_mask(self, j: int) -> int:
        return sum(1 << int(v) for v in self.part(j))

    def matrix(self, clique: Sequence[int]) -> SignMatrix:
        idx = sorted(clique, key=lambda v: (int(self.part_of[v]), tuple(-self.vectors[v])))
        return SignMatrix(self.vectors[idx])


def _orthogonality_bitsets(vecs: np.ndarray, chunk: int = 4096) -> list[int]:
    v = vecs.astype(np.float32)
    out = []
    for s in range(0, len(v), chunk):
        out += bitsets_from_bool(np.abs(v[s:s + chunk] @ v.T) < 0.5)
    return out


def build_mate_graph(h: SignMatrix, values: Sequence[int]) -> MateGraph:
    """Candidate rows split by three-coordinate prefix, edges between orthogonal rows.

    `values` are the allowed absolute inner products: the pair {a, b} for weak
    kinds, or {0, sqrt(a)} for quasi-unbiased mates.
    """
    h = as_sign_matrix(h)
    if not is_hadamard(h):
        raise ValueError("H must be Hadamard")
    n = h.order
    if n > MAX_MATE_ORDER or n < 4:
        raise ValueError(f"mate graphs supported for 4 <= n <= {MAX_MATE_ORDER}")
    parts = [candidate_rows(h, values, y) for y in PREFIXES]
    vecs = np.concatenate(parts) if parts else np.zeros((0, n), np.int8)
    part_of = np.concatenate([np.full(len(p), j, dtype=np.int64) for j, p in enumerate(parts)])
    return MateGraph(n, tuple(sorted(values)), vecs, part_of, _orthogonality_bitsets(vecs))


def max_clique(g: MateGraph, budget: Optional[int] = None, target: Optional[int] = None,
               within: Optional[int] = None) -> CliqueResult:
    return max_clique_bitsets(g.adj, budget=budget, target=target, within=within)


def prescreen(g: MateGraph, budget: Optional[int] = None) -> bool:
    """Each part must hold an (n/4)-clique for an n-clique to exist."""
    k = g.n // 4
    for j in range(4):
        res = max_clique(g, budget=budget, target=k, within=g.part_mask(j))
        if res.size < k:
            return False
    return True


def iter_mates(g: MateGraph, budget: Optional[int] = None) -> Iterator[list[int]]:
    """Every n-clique, i.e. every mate as a set of normalized rows."""
    yield from iter_k_cliques(g.adj, (1 << g.vertex_count) - 1, g.n, budget=budget)


def _sigma_values(sigma) -> tuple:
    a, b = sorted(sigma)
    if a <= 0:
        raise ValueError("sigma values must be positive")
    return (a, b)


def find_mate(h: SignMatrix, sigma, budget: Optional[int] = None,
              strategy: str = "clique") -> Optional[SignMatrix]:
    """A Hadamard K with sigma(H, K) equal to the given pair, or None."""
    a, b = _sigma_values(sigma)
    kind = PairKind.WeaklyUnbiased if a % 4 == 2 else PairKind.TypeIIWeaklyUnbiased
    g = build_mate_graph(h, (a, b))
    if strategy not in ("clique", "backtrack"):
        raise ValueError("strategy must be 'clique' or 'backtrack'")
    for clique in iter_mates(g, budget=budget):
        k = g.matrix(clique)
        c = classify_pair(h, k)
        if c.kind == kind and c.sigma == (a, b):
            return k
    return None


def _check_qub_feasible(n: int, l: int, a: int) -> int:
    for p in feasible_qub_params(n):
        if (p.l, p.a) == (l, a):
            return p.alpha
    raise ValueError(f"(l, a) = ({l}, {a}) is not feasible for n = {n}")


def find_qub_mate(h: SignMatrix, l: int, a: int, budget: Optional[int] = None) -> Optional[SignMatrix]:
    h = as_sign_matrix(h)
    alpha = _check_qub_feasible(h.order, l, a)
    g = build_mate_graph(h, (0, 2 * alpha))
    want = PairClassification.qub(l, a)
    for clique in iter_mates(g, budget=budget):
        k = g.matrix(clique)
        if classify_pair(h, k).matches(want):
            return k
    return None


@dataclass
class MateCensus:
    n: int
    l: int
    a: int
    mates: list  # SignMatrix per row set, in three-column form
    extendable_pairs: int

    @property
    def row_sets(self) -> int:
        return len(self.mates)

    @property
    def three_col_matrices(self) -> int:
        """Matrices in three-column form with a free choice of first row among
        the n/4 rows of the first part and the remaining rows sorted."""
        return self.n // 4 * len(self.mates)

    @property
    def f_max(self) -> int:
        if not self.mates:
            return 1
        return 2 if self.extendable_pairs == 0 else 3


def qub_mate_census(h: SignMatrix, l: int, a: int, budget: Optional[int] = None) -> MateCensus:
    """Enumerate all mates of H and test every pair of them for a triple."""
    h = as_sign_matrix(h)
    alpha = _check_qub_feasible(h.order, l, a)
    g = build_mate_graph(h, (0, 2 * alpha))
    want = PairClassification.qub(l, a)
    mates = []
    for clique in iter_mates(g, budget=budget):
        k = g.matrix(clique)
        if classify_pair(h, k).matches(want):
            mates.append(k)
    ext = 0
    if len(mates) > 1:
        stack = np.stack([m.as_int() for m in mates]).astype(np.int32)
        ok_vals = {0, 2 * alpha}
        for i in range(len(mates) - 1):
            prod = np.abs(np.einsum("ij,mkj->mik", stack[i], stack[i + 1:]))
            good = np.isin(prod, list(ok_vals)).all(axis=(1, 2))
            for j in np.flatnonzero(good):
                if classify_pair(mates[i], mates[i + 1 + j]).matches(want):
                    ext += 1
    return MateCensus(h.order, l, a, mates, ext)


def weak_triple_exists(ms: Sequence[SignMatrix], expected: PairClassification) -> bool:
    from .signmatrix import check_mutual

    return any(check_mutual(t, expected) for t in itertools.combinations(ms, 3))
