"""Linear codes over Z4: enumeration, Lee metric, Gray map, ZRM(1,m), the
quasi-unbiased and (Type II) weakly unbiased conditions, and the digraph used
for equivalence testing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .binary import BinaryCode, DistanceDistribution, _data_text, distribution_from_ints
from .canonical import ColoredGraph, automorphisms, canonical_form

MAX_Z4_WORDS = 1 << 14


class Z4Error(ValueError):
    pass


def pack_z4(words: np.ndarray) -> np.ndarray:
    """Two bits per coordinate, coordinate j at bits 2j, 2j+1."""
    words = np.atleast_2d(np.asarray(words, dtype=np.uint64))
    shifts = (2 * np.arange(words.shape[1])).astype(np.uint64)
    return np.bitwise_or.reduce(words << shifts, axis=1)


def z4_vector(v: Union[str, Sequence[int]]) -> np.ndarray:
    if isinstance(v, str):
        v = [int(ch) for ch in v if not ch.isspace() and ch != ","]
    a = np.asarray(v, dtype=np.int64)
    if a.size and (a.min() < 0 or a.max() > 3):
        raise Z4Error(f"entries must lie in 0..3: {v}")
    return a.astype(np.uint8)


def _span(n: int, gens: Sequence[np.ndarray]) -> np.ndarray:
    words = np.zeros((1, n), dtype=np.uint8)
    for g in gens:
        if len(words) * 4 > 4 * MAX_Z4_WORDS:
            raise Z4Error(f"code exceeds {MAX_Z4_WORDS} words")
        stacked = np.concatenate([(words + k * g) % 4 for k in range(4)]).astype(np.uint8)
        _, idx = np.unique(pack_z4(stacked), return_index=True)
        words = stacked[np.sort(idx)]
    if len(words) > MAX_Z4_WORDS:
        raise Z4Error(f"code exceeds {MAX_Z4_WORDS} words")
    return words


@dataclass(frozen=True)
class Z4LinearCode:
    n: int
    generators: tuple  # tuple of tuples over 0..3, verbatim
    words: np.ndarray = field(compare=False, repr=False)

    @classmethod
    def from_generators(cls, gens: Sequence, n: Optional[int] = None) -> "Z4LinearCode":
        rows = [z4_vector(g) for g in gens]
        if n is None:
            if not rows:
                raise Z4Error("length required for the zero code")
            n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise Z4Error("generators of unequal length")
        if n > 32:
            raise Z4Error("lengths above 32 are not supported")
        words = _span(n, rows)
        words.setflags(write=False)
        return cls(n, tuple(tuple(int(x) for x in r) for r in rows), words)

    def __len__(self):
        return len(self.words)

    @property
    def log_size(self) -> int:
        return len(self).bit_length() - 1

    @property
    def keys(self) -> frozenset:
        cached = self.__dict__.get("_keys")
        if cached is None:
            cached = frozenset(pack_z4(self.words).tolist())
            object.__setattr__(self, "_keys", cached)
        return cached

    def __contains__(self, v) -> bool:
        return int(pack_z4(z4_vector(v))[0]) in self.keys

    def extend(self, *vectors) -> "Z4LinearCode":
        return Z4LinearCode.from_generators(list(self.generators) + [z4_vector(v) for v in vectors], self.n)

    def contains_code(self, other: "Z4LinearCode") -> bool:
        return all(g in self for g in other.generators)


# ------------------------------------------------------------------ metrics

def component_counts(words: np.ndarray) -> np.ndarray:
    """(M, 4) array of n_0, n_1, n_2, n_3 per word."""
    words = np.atleast_2d(words)
    return np.stack([(words == k).sum(axis=1) for k in range(4)], axis=1)


def lee_weights(words: np.ndarray) -> np.ndarray:
    c = component_counts(words)
    return c[:, 1] + 2 * c[:, 2] + c[:, 3]


def hamming_weights(words: np.ndarray) -> np.ndarray:
    return (np.atleast_2d(words) != 0).sum(axis=1)


def lee_distribution(code: Z4LinearCode) -> DistanceDistribution:
    # linear code: the distance distribution is the weight distribution
    counts = np.bincount(lee_weights(code.words), minlength=2 * code.n + 1)
    return distribution_from_ints(2 * code.n, counts.tolist())


def min_lee_distance(code: Z4LinearCode) -> int:
    w = lee_weights(code.words)
    return int(w[w > 0].min())


def min_hamming_distance(code: Z4LinearCode) -> int:
    w = hamming_weights(code.words)
    return int(w[w > 0].min())


_GRAY = np.array([[0, 0], [0, 1], [1, 1], [1, 0]], dtype=np.uint8)


def gray_image(words: np.ndarray) -> np.ndarray:
    """0/1 rows of length 2n; coordinate j goes to positions 2j, 2j+1."""
    words = np.atleast_2d(words)
    return _GRAY[words].reshape(len(words), -1)


def gray_map(code: Z4LinearCode) -> BinaryCode:
    return BinaryCode.from_rows(gray_image(code.words))


def n0_minus_n2(words: np.ndarray) -> np.ndarray:
    c = component_counts(words)
    return c[:, 0] - c[:, 2]


# --------------------------------------------------------------- fixtures

def zrm_generators(m: int) -> list[np.ndarray]:
    """All-ones row over twice the binary coordinate rows, as in the fixed m = 4 display."""
    if m == 4:
        text = _data_text("zrm14.z4")
        return [z4_vector(r) for r in text.split()[2:]]
    if m not in (2, 3):
        raise Z4Error("ZRM(1,m) fixtures exist for m = 2, 3, 4")
    n = 1 << m
    rows = [np.ones(n, dtype=np.uint8)]
    rows += [np.array([2 * ((j >> b) & 1) for j in range(n)], dtype=np.uint8) for b in range(m)]
    return rows


def zrm_fixture(m: int) -> Z4LinearCode:
    return Z4LinearCode.from_generators(zrm_generators(m))


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def contains_zrm(code: Z4LinearCode) -> bool:
    if not _is_power_of_two(code.n) or code.n < 4:
        return False
    m = code.n.bit_length() - 1
    return all(g in code for g in zrm_generators(m))


def check_z4_qub(code: Z4LinearCode) -> Optional[int]:
    """beta when {(n0 - n2)^2} = {0, beta^2, n^2} and ZRM(1,m) is a subcode."""
    if not contains_zrm(code):
        return None
    n = code.n
    vals = set(np.abs(n0_minus_n2(code.words)).tolist())
    rest = vals - {0, n}
    if vals >= {0, n} and len(rest) == 1:
        beta = rest.pop()
        if 0 < beta < n:
            return beta
    return None


def check_z4_weak(code: Z4LinearCode, parity: str) -> Optional[tuple[int, int]]:
    """(a, b) for the weak (parity "odd") or Type II (parity "even") conditions."""
    if parity not in ("odd", "even"):
        raise ValueError("parity must be 'odd' or 'even'")
    if not contains_zrm(code):
        return None
    n = code.n
    d = np.abs(n0_minus_n2(code.words))
    vals = set(d.tolist())
    rest = sorted(vals - {0, n})
    if not vals >= {0, n} or len(rest) != 2:
        return None
    a, b = rest
    want = 1 if parity == "odd" else 0
    if a % 2 != want or b % 2 != want:
        return None
    if int((d == 0).sum()) != 4 * n - 2:
        return None
    return a, b


# --------------------------------------------------------------- equivalence

def gamma_digraph(code: Z4LinearCode) -> ColoredGraph:
    """Nonzero codewords (color 0) point to (j, c_j); (j, 2) <-> (j, 1), (j, 3)."""
    n = code.n
    keys = pack_z4(code.words)
    nz = code.words[keys != 0]
    m = len(nz)

    def cv(j, x):
        return m + 3 * j + (x - 1)

    arcs = []
    for j in range(n):
        for x in (1, 3):
            arcs.append((cv(j, x), cv(j, 2)))
            arcs.append((cv(j, 2), cv(j, x)))
    rows, cols = np.nonzero(nz)
    vals = nz[rows, cols]
    arcs.extend(zip(rows.tolist(), (m + 3 * cols + vals.astype(np.int64) - 1).tolist()))
    return ColoredGraph.build(m + 3 * n, [0] * m + [1] * (3 * n), arcs, directed=True)


def gamma_graph(code: Z4LinearCode) -> ColoredGraph:
    """Undirected form of the digraph used for canonical labeling.

    Vertex layout matches gamma_digraph. The (j, 2) vertices get their own
    color and the gadget arcs become edges; color-preserving isomorphisms of
    this graph are again exactly the monomial equivalences, and nauty refines
    it far better than the directed version.
    """
    d = gamma_digraph(code)
    m = d.vertex_count - 3 * code.n
    colors = list(d.colors)
    for j in range(code.n):
        colors[m + 3 * j + 1] = 2
    arcs = {(min(u, v), max(u, v)) for u, v in d.arcs}
    return ColoredGraph.build(d.vertex_count, colors, arcs)


def z4_canonical_form(code: Z4LinearCode) -> bytes:
    cached = code.__dict__.get("_canonical")
    if cached is None:
        cached = canonical_form(gamma_graph(code))
        object.__setattr__(code, "_canonical", cached)
    return cached


def z4_equivalent(c1: Z4LinearCode, c2: Z4LinearCode) -> bool:
    if c1.n != c2.n or len(c1) != len(c2):
        return False
    return z4_canonical_form(c1) == z4_canonical_form(c2)


def monomial_action(perm: Sequence[int], signs: Sequence[int]):
    """The map y -> y' with y'[perm[j]] = signs[j] * y[j] (mod 4)."""
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    s = np.asarray(signs, dtype=np.int64)[inv]

    def act(words: np.ndarray) -> np.ndarray:
        words = np.atleast_2d(words).astype(np.int64)
        return ((words[:, inv] * s) % 4).astype(np.uint8)

    return act


def apply_monomial(code: Z4LinearCode, perm: Sequence[int], signs: Sequence[int]) -> Z4LinearCode:
    act = monomial_action(perm, signs)
    return Z4LinearCode.from_generators(list(act(np.array(code.generators, dtype=np.uint8))), code.n)


def automorphism_actions(code: Z4LinearCode) -> list:
    """Monomial maps generating Aut(code), read off automorphisms of the digraph."""
    g = gamma_graph(code)
    m = g.vertex_count - 3 * code.n
    acts = []
    for p in automorphisms(g):
        perm, signs = [], []
        for j in range(code.n):
            img = p[m + 3 * j] - m  # image of (j, 1)
            jj, x = divmod(img, 3)
            perm.append(jj)
            signs.append(1 if x == 0 else -1)
        acts.append(monomial_action(perm, signs))
    return acts


# ------------------------------------------------------------------- Kerdock

def kerdock_fixture(m: int = 4) -> Z4LinearCode:
    """K(4) from the Galois ring GR(4, 4) built on the Hensel lift of x^4 + x + 1.

    Coordinates run over the Teichmueller set {0, 1, xi, ..., xi^14}; the
    generators are the all-ones word and t -> Tr(xi^i t) for i = 0..3.
    """
    if m != 4:
        raise Z4Error("only K(4) is bundled")
    # y^4 = 2y^2 + y + 3 over Z4, i.e. y^4 + 2y^2 + 3y + 1 = 0
    low = np.array([3, 1, 2, 0], dtype=np.int64)
    comp = np.zeros((4, 4), dtype=np.int64)
    for k in range(3):
        comp[k + 1, k] = 1
    comp[:, 3] = low

    def mat_of(v):
        cols = [v]
        for _ in range(3):
            cols.append(comp @ cols[-1] % 4)
        return np.stack(cols, axis=1) % 4

    one = np.array([1, 0, 0, 0], dtype=np.int64)
    powers = [one]
    for _ in range(15):
        powers.append(comp @ powers[-1] % 4)
    if not np.array_equal(powers[15], one):
        raise Z4Error("lifted polynomial is not basic primitive")
    teich = [np.zeros(4, dtype=np.int64)] + powers[:15]
    gens = [np.ones(16, dtype=np.uint8)]
    for i in range(4):
        lam = powers[i]
        row = [int(np.trace(mat_of(lam) @ mat_of(t)) % 4) for t in teich]
        gens.append(np.array(row, dtype=np.uint8))
    return Z4LinearCode.from_generators(gens)


# --------------------------------------------------------------------- I/O

def parse_z4_code(text: str) -> Z4LinearCode:
    """Header "n k" then k generator rows of digits 0..3."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    n, k = (int(t) for t in lines[0].split())
    rows = [z4_vector(r) for r in lines[1:]]
    if len(rows) != k:
        raise Z4Error(f"header says {k} generators, found {len(rows)}")
    return Z4LinearCode.from_generators(rows, n)


def format_z4_code(code: Z4LinearCode) -> str:
    return f"{code.n} {len(code.generators)}\n" + "".join(
        "".join(str(x) for x in g) + "\n" for g in code.generators)


def load_z4_code(path: Union[str, Path]) -> Z4LinearCode:
    return parse_z4_code(Path(path).read_text())
