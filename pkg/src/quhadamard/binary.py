"""Binary codes: distance distributions, Hadamard codes C(H), the psi map back
to matrices, and the condition checkers for quasi-unbiased, weakly unbiased and
Type II weakly unbiased code families.

Words are packed into uint64 with coordinate j stored in bit j.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from importlib import resources
from math import isqrt
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .signmatrix import SignMatrix, as_sign_matrix, is_hadamard, is_normalized

MAX_LENGTH = 64


class CodeError(ValueError):
    pass


def _pack_rows(rows: np.ndarray) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.uint64)
    weights = np.left_shift(np.uint64(1), np.arange(rows.shape[1], dtype=np.uint64))
    return (rows * weights).sum(axis=1, dtype=np.uint64)


def unpack_words(words: np.ndarray, n: int) -> np.ndarray:
    words = np.asarray(words, dtype=np.uint64)
    shifts = np.arange(n, dtype=np.uint64)
    return ((words[:, None] >> shifts[None, :]) & np.uint64(1)).astype(np.uint8)


def word_from_string(s: str) -> int:
    return sum(1 << j for j, c in enumerate(s) if c == "1")


def word_to_string(w: int, n: int) -> str:
    return "".join("1" if (w >> j) & 1 else "0" for j in range(n))


def word_from_support(supp: Iterable[int]) -> int:
    """1-based support, as printed in coset tables."""
    return sum(1 << (i - 1) for i in supp)


@dataclass(frozen=True, eq=False)
class BinaryCode:
    n: int
    words: np.ndarray

    def __post_init__(self):
        if not 0 < self.n <= MAX_LENGTH:
            raise CodeError(f"length must be in 1..{MAX_LENGTH}")
        w = np.array(self.words, dtype=np.uint64).reshape(-1)
        if self.n < 64 and (w >> np.uint64(self.n)).any():
            raise CodeError("word exceeds code length")
        if len(np.unique(w)) != len(w):
            raise CodeError("duplicate codewords")
        w.setflags(write=False)
        object.__setattr__(self, "words", w)

    # construction helpers
    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BinaryCode":
        rows = [r.strip() for r in rows if r.strip()]
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise CodeError("ragged code rows")
        return cls(n, np.array([word_from_string(r) for r in rows], dtype=np.uint64))

    @classmethod
    def from_rows(cls, rows) -> "BinaryCode":
        rows = np.asarray(rows)
        return cls(rows.shape[1], _pack_rows(rows))

    @classmethod
    def span(cls, n: int, generators: Sequence[int]) -> "BinaryCode":
        words = {0}
        for g in generators:
            words |= {w ^ int(g) for w in words}
        return cls(n, np.array(sorted(words), dtype=np.uint64))

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return (int(w) for w in self.words)

    def __contains__(self, w) -> bool:
        return int(w) in self.word_set

    def __repr__(self):
        return f"BinaryCode(n={self.n}, size={len(self)})"

    @cached_property
    def word_set(self) -> frozenset:
        return frozenset(int(w) for w in self.words)

    @cached_property
    def all_ones(self) -> int:
        return (1 << self.n) - 1

    def to_strings(self) -> list[str]:
        return [word_to_string(int(w), self.n) for w in self.words]

    def to_array(self) -> np.ndarray:
        return unpack_words(self.words, self.n)

    def translate(self, u: int) -> "BinaryCode":
        return BinaryCode(self.n, self.words ^ np.uint64(u))

    def union(self, *others: "BinaryCode") -> "BinaryCode":
        return BinaryCode(self.n, np.concatenate([self.words] + [o.words for o in others]))

    def same_set(self, other: "BinaryCode") -> bool:
        return self.n == other.n and self.word_set == other.word_set

    @cached_property
    def distribution(self) -> "DistanceDistribution":
        return distance_distribution(self)


def translates(base: BinaryCode, us: Iterable[int]) -> BinaryCode:
    """Union of u + base over the given translation vectors."""
    return BinaryCode(base.n, np.concatenate([base.words ^ np.uint64(u) for u in us]))


# --------------------------------------------------------------- distances

def pairwise_distances(code: BinaryCode) -> np.ndarray:
    w = code.words
    return np.bitwise_count(w[:, None] ^ w[None, :]).astype(np.int64)


def weights(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(np.asarray(words, dtype=np.uint64)).astype(np.int64)


@dataclass(frozen=True)
class DistanceDistribution:
    n: int
    counts: tuple  # Fractions A_0..A_n

    @property
    def support(self) -> frozenset:
        """S(C): nonzero distances that occur."""
        return frozenset(i for i, a in enumerate(self.counts) if i and a)

    @property
    def degree(self) -> int:
        return len(self.support)

    def as_ints(self) -> tuple:
        if any(a.denominator != 1 for a in self.counts):
            raise ValueError("distribution is not integral")
        return tuple(int(a) for a in self.counts)

    def total(self) -> Fraction:
        return sum(self.counts, Fraction(0))

    def __getitem__(self, i):
        return self.counts[i]


def distance_distribution(code: BinaryCode) -> DistanceDistribution:
    if len(code) == 0:
        raise CodeError("empty code")
    hist = np.bincount(pairwise_distances(code).ravel(), minlength=code.n + 1)
    m = len(code)
    return DistanceDistribution(code.n, tuple(Fraction(int(c), m) for c in hist))


def distribution_from_ints(n: int, counts: Sequence[int]) -> DistanceDistribution:
    return DistanceDistribution(n, tuple(Fraction(c) for c in counts))


def min_distance(code: BinaryCode) -> int:
    if len(code) < 2:
        raise CodeError("need at least two codewords")
    return min(code.distribution.support)


def is_self_complementary(code: BinaryCode) -> bool:
    ones = np.uint64(code.all_ones)
    return all(int(w) in code.word_set for w in code.words ^ ones)


# -------------------------------------------------------------- C(H) and psi

def code_of_hadamard(h: SignMatrix) -> BinaryCode:
    """Rows of (H+J)/2 and (-H+J)/2 for a normalized Hadamard H."""
    h = as_sign_matrix(h)
    if not is_hadamard(h) or not is_normalized(h):
        raise CodeError("code_of_hadamard requires a normalized Hadamard matrix")
    return matrices_to_code([h])


def matrices_to_code(ms: Sequence[SignMatrix]) -> BinaryCode:
    """Union over the matrices of the 2n words (+-rows mapped by +1 -> 1, -1 -> 0)."""
    parts = []
    for m in ms:
        a = as_sign_matrix(m).as_int()
        pos = _pack_rows((a == 1).astype(np.uint8))
        parts += [pos, pos ^ np.uint64((1 << a.shape[0]) - 1)]
    return BinaryCode(as_sign_matrix(ms[0]).order, np.concatenate(parts))


def _antipodal_pairs(code: BinaryCode) -> list[int]:
    """One representative per {v, complement v}: the lexicographically smaller string."""
    if not is_self_complementary(code):
        raise CodeError("code is not self-complementary")
    # lexicographic order on strings puts coordinate 0 first; smaller has bit 0 clear
    return sorted({int(w) if not int(w) & 1 else int(w) ^ code.all_ones for w in code.words})


def antipodal_blocks(code: BinaryCode, f: Optional[int] = None, budget: int = 2_000_000) -> list[list[int]]:
    """Partition a self-complementary code into blocks of 2n words, each a
    Hadamard code (pairwise distances n/2 or n).

    Inter-block distances may also equal n/2, so blocks are found by an exact
    cover search over n-cliques of the antipodal-pair graph.
    """
    from .clique import bitsets_from_bool, iter_k_cliques

    n = code.n
    reps = _antipodal_pairs(code)
    if len(reps) % n:
        raise CodeError("code size is not a multiple of 2n")
    if f is not None and len(reps) != f * n:
        raise CodeError(f"expected {2 * f * n} words, got {len(code)}")
    arr = np.array(reps, dtype=np.uint64)
    d = np.bitwise_count(arr[:, None] ^ arr[None, :])
    adj = bitsets_from_bool(d == n // 2)
    counter = [0]

    def solve(free: int) -> Optional[list[int]]:
        if not free:
            return []
        p = (free & -free).bit_length() - 1
        cand = adj[p] & free
        for clique in iter_k_cliques(adj, cand, n - 1, counter=counter, budget=budget):
            mask = (1 << p) | sum(1 << v for v in clique)
            rest = solve(free & ~mask)
            if rest is not None:
                return [mask] + rest
        return None

    sol = solve((1 << len(reps)) - 1)
    if sol is None:
        raise CodeError("no decomposition into antipodal Hadamard blocks")
    blocks = []
    for mask in sol:
        idx = [i for i in range(len(reps)) if (mask >> i) & 1]
        blocks.append([reps[i] for i in idx])
    return blocks


def _block_to_matrix(reps: Sequence[int], n: int) -> SignMatrix:
    rows = sorted(word_to_string(int(v), n) for v in reps)
    return SignMatrix(np.array([[1 if c == "0" else -1 for c in r] for r in rows], dtype=np.int8))


def psi_matrices(code: BinaryCode, blocks: Optional[Sequence[Sequence[int]]] = None) -> list[SignMatrix]:
    """One Hadamard matrix per antipodal block.

    `blocks` may list the words of each block (either all 2n words or one per
    antipodal pair); otherwise the decomposition is searched for.
    """
    n = code.n
    if blocks is None:
        blocks = antipodal_blocks(code)
    out = []
    ones = code.all_ones
    for blk in blocks:
        reps = sorted({int(w) if not int(w) & 1 else int(w) ^ ones for w in blk})
        m = _block_to_matrix(reps, n)
        if not is_hadamard(m):
            raise CodeError("block does not give a Hadamard matrix")
        out.append(m)
    return out


def _block_split(code: BinaryCode, f: int, blocks) -> Optional[list]:
    if blocks is not None:
        if len(blocks) != f:
            return None
        ones = code.all_ones
        seen = set()
        for blk in blocks:
            b = {int(w) for w in blk} | {int(w) ^ ones for w in blk}
            if len(b) != 2 * code.n or not b <= code.word_set or b & seen:
                return None
            seen |= b
            sub = BinaryCode(code.n, np.array(sorted(b), dtype=np.uint64))
            if sub.distribution.support - {code.n // 2, code.n}:
                return None
        return list(blocks)
    try:
        return antipodal_blocks(code, f)
    except CodeError:
        return None


def check_F2(code: BinaryCode, alpha: int, f: int, blocks=None) -> bool:
    n = code.n
    if not 0 < alpha < n / 2 or len(code) != 2 * f * n:
        return False
    if not is_self_complementary(code):
        return False
    if code.distribution.support != frozenset({n // 2 - alpha, n // 2, n // 2 + alpha, n}):
        return False
    return _block_split(code, f, blocks) is not None


def predicted_distribution(n: int, f: int, l: int) -> DistanceDistribution:
    r = isqrt(l)
    if r * r != l or n % (2 * r):
        raise ValueError("l must be (n / 2alpha)^2 for an integer alpha")
    alpha = n // (2 * r)
    counts = [0] * (n + 1)
    counts[0] = counts[n] = 1
    counts[n // 2] = 2 * n - 2 + (f - 1) * (2 * n - 2 * l)
    if f > 1:
        counts[n // 2 - alpha] += (f - 1) * l
        counts[n // 2 + alpha] += (f - 1) * l
    return distribution_from_ints(n, counts)


def _check_weak_family(code: BinaryCode, a: int, b: int, f: int, parity: int, blocks) -> bool:
    n = code.n
    if not 0 < a < b < n / 2 or a % 2 != parity or b % 2 != parity:
        return False
    if len(code) != 2 * f * n or not is_self_complementary(code):
        return False
    h = n // 2
    dd = code.distribution
    if dd.support != frozenset({h - b, h - a, h, h + a, h + b, n}):
        return False
    if dd[h] != 2 * n - 2:
        return False
    return _block_split(code, f, blocks) is not None


def check_weakF2(code: BinaryCode, a: int, b: int, blocks=None) -> bool:
    return _check_weak_family(code, a, b, 2, 1, blocks)


def check_weakIIF2(code: BinaryCode, a: int, b: int, f: int, blocks=None) -> bool:
    return _check_weak_family(code, a, b, f, 0, blocks)


def weak_offsets(code: BinaryCode) -> Optional[tuple[int, int]]:
    """The offset pair (a, b) read off the support set, if it has that shape."""
    h = code.n // 2
    offs = sorted({abs(d - h) for d in code.distribution.support if d != code.n} - {0})
    return tuple(offs) if len(offs) == 2 else None


# ------------------------------------------------------------------ fixtures

def _data_text(name: str) -> str:
    return resources.files("quhadamard").joinpath("data").joinpath(name).read_text()


def rm_generators(m: int) -> list[str]:
    if m not in (3, 4, 5):
        raise ValueError("RM(1,m) fixtures exist for m = 3, 4, 5")
    return [ln.replace(" ", "") for ln in _data_text(f"rm1{m}.gen").split() if ln]


def rm_fixture(m: int) -> BinaryCode:
    gens = rm_generators(m)
    return BinaryCode.span(len(gens[0]), [word_from_string(g) for g in gens])


# ------------------------------------------------------------------- file I/O

def parse_code(text: str) -> BinaryCode:
    """Header "n M" then M rows of 0/1 characters or "supp: i j k" lines (1-based)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    n, m = (int(t) for t in lines[0].split())
    rows = lines[1:]
    if len(rows) != m:
        raise CodeError(f"header says {m} words, found {len(rows)}")
    words = []
    for r in rows:
        if r.startswith("supp:"):
            words.append(word_from_support(int(t) for t in r[5:].split()))
        else:
            if len(r) != n or set(r) - {"0", "1"}:
                raise CodeError(f"bad code row {r!r}")
            words.append(word_from_string(r))
    return BinaryCode(n, np.array(words, dtype=np.uint64))


def format_code(code: BinaryCode) -> str:
    return f"{code.n} {len(code)}\n" + "".join(s + "\n" for s in code.to_strings())


def load_code(path: Union[str, Path]) -> BinaryCode:
    return parse_code(Path(path).read_text())
