"""Sign matrices, Hadamard/weighing checks, pair classification and the
explicit constructions used to build quasi-unbiased and weakly unbiased pairs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

MAX_ORDER = 256

_CHAR_TO_SIGN = {"+": 1, "-": -1, "0": 0}
_SIGN_TO_CHAR = {1: "+", -1: "-", 0: "0"}


class SignMatrixError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SignMatrix:
    """Square matrix over {+1, -1, 0}.

    Entries live in a read-only int8 array. Products are computed with int64
    numpy matmul, which beats popcount bit-planes in CPython.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.int8, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise SignMatrixError(f"matrix must be square, got shape {a.shape}")
        if a.shape[0] == 0:
            raise SignMatrixError("empty matrix")
        if a.shape[0] > MAX_ORDER:
            raise SignMatrixError(f"order {a.shape[0]} exceeds library limit {MAX_ORDER}")
        if not np.isin(a, (-1, 0, 1)).all():
            raise SignMatrixError("entries must be in {+1,-1,0}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def as_int(self) -> np.ndarray:
        return self.entries.astype(np.int64)

    def __eq__(self, other):
        if not isinstance(other, SignMatrix):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.order, self.entries.tobytes()))

    def __repr__(self):
        return f"SignMatrix(order={self.order})"

    def to_text(self) -> str:
        return "".join("".join(_SIGN_TO_CHAR[int(v)] for v in row) + "\n" for row in self.entries)

    def planes(self) -> tuple[list[int], list[int]]:
        """Row-wise (sign, support) bit-planes; bit j set if entry j is -1 / nonzero."""
        sign, supp = [], []
        for row in self.entries:
            s = t = 0
            for j, v in enumerate(row):
                if v:
                    t |= 1 << j
                    if v < 0:
                        s |= 1 << j
            sign.append(s)
            supp.append(t)
        return sign, supp

    def transpose(self) -> "SignMatrix":
        return SignMatrix(self.entries.T)


def as_sign_matrix(m: Union[SignMatrix, np.ndarray, Sequence]) -> SignMatrix:
    return m if isinstance(m, SignMatrix) else SignMatrix(np.asarray(m))


def parse_matrix(text: str) -> SignMatrix:
    """Parse the +/-/0 text format; blank lines and trailing spaces are ignored."""
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise SignMatrixError("no matrix rows")
    width = len(rows[0])
    out = []
    for i, r in enumerate(rows):
        if len(r) != width:
            raise SignMatrixError(f"ragged line {i + 1}: length {len(r)} != {width}")
        try:
            out.append([_CHAR_TO_SIGN[c] for c in r])
        except KeyError as exc:
            raise SignMatrixError(f"bad character {exc} on line {i + 1}") from None
    return SignMatrix(np.array(out, dtype=np.int8))


def load_matrix(path: Union[str, Path]) -> SignMatrix:
    return parse_matrix(Path(path).read_text())


def save_matrix(m: SignMatrix, path: Union[str, Path]) -> None:
    Path(path).write_text(m.to_text())


def sign_vector(row: Union[str, Sequence[int]]) -> np.ndarray:
    if isinstance(row, str):
        return np.array([_CHAR_TO_SIGN[c] for c in row.strip()], dtype=np.int8)
    return np.asarray(row, dtype=np.int8)


# ---------------------------------------------------------------- predicates

def is_hadamard(m: SignMatrix) -> bool:
    m = as_sign_matrix(m)
    a = m.as_int()
    if (a == 0).any():
        return False
    n = m.order
    return bool(np.array_equal(a @ a.T, n * np.eye(n, dtype=np.int64)))


def is_weighing(m: SignMatrix, k: int) -> bool:
    m = as_sign_matrix(m)
    a = m.as_int()
    n = m.order
    if not np.array_equal(a @ a.T, k * np.eye(n, dtype=np.int64)):
        return False
    nz = a != 0
    return bool((nz.sum(axis=1) == k).all() and (nz.sum(axis=0) == k).all())


# ------------------------------------------------------------ classification

class PairKind(Enum):
    NotHadamardPair = "NotHadamardPair"
    QuasiUnbiased = "QuasiUnbiased"
    WeaklyUnbiased = "WeaklyUnbiased"
    TypeIIWeaklyUnbiased = "TypeIIWeaklyUnbiased"
    Irregular = "Irregular"


@dataclass(frozen=True)
class PairClassification:
    kind: PairKind
    l: Optional[int] = None
    a: Optional[int] = None
    sigma: Optional[tuple[int, int]] = None
    n_a: Optional[int] = None
    # multiset of |entries| for Irregular results; not part of equality
    diagnostic: Optional[dict] = field(default=None, compare=False)

    @classmethod
    def qub(cls, l: int, a: int) -> "PairClassification":
        return cls(PairKind.QuasiUnbiased, l=l, a=a)

    @classmethod
    def weak(cls, a: int, b: int, n_a: Optional[int] = None) -> "PairClassification":
        return cls(PairKind.WeaklyUnbiased, sigma=(a, b), n_a=n_a)

    @classmethod
    def weak2(cls, a: int, b: int, n_a: Optional[int] = None) -> "PairClassification":
        return cls(PairKind.TypeIIWeaklyUnbiased, sigma=(a, b), n_a=n_a)

    def matches(self, other: "PairClassification") -> bool:
        """Kind and parameters agree; an unset n_a on either side is a wildcard."""
        if self.kind != other.kind:
            return False
        if self.kind == PairKind.QuasiUnbiased:
            return (self.l, self.a) == (other.l, other.a)
        if self.kind in (PairKind.WeaklyUnbiased, PairKind.TypeIIWeaklyUnbiased):
            if self.sigma != other.sigma:
                return False
            return self.n_a is None or other.n_a is None or self.n_a == other.n_a
        return True

    def to_record(self) -> dict:
        rec = {"kind": self.kind.value}
        if self.kind == PairKind.QuasiUnbiased:
            rec.update(l=self.l, a=self.a)
        elif self.sigma is not None:
            rec.update(sigma=list(self.sigma), n_a=self.n_a)
        if self.diagnostic:
            rec["diagnostic"] = self.diagnostic
        return rec


def classify_product(p: np.ndarray) -> PairClassification:
    """Classify from the product P = H K^T alone (H, K assumed Hadamard)."""
    n = p.shape[0]
    absval = np.abs(p)
    vals = sorted(int(v) for v in np.unique(absval))
    nonzero = [v for v in vals if v]
    if len(nonzero) == 1:
        c = nonzero[0]
        if (n * n) % (c * c) == 0:
            return PairClassification.qub(n * n // (c * c), c * c)
    if len(vals) == 2 and vals[0] > 0:
        a, b = vals
        counts = (absval == a).sum(axis=1)
        if (counts == counts[0]).all():
            n_a = int(counts[0])
            if a % 4 == 2 and b % 4 == 2:
                return PairClassification.weak(a, b, n_a)
            if a % 4 == 0 and b % 4 == 0:
                return PairClassification.weak2(a, b, n_a)
    hist = {int(v): int((absval == v).sum()) for v in vals}
    return PairClassification(PairKind.Irregular, diagnostic={"abs_counts": hist})


def classify_pair(h: SignMatrix, k: SignMatrix) -> PairClassification:
    h, k = as_sign_matrix(h), as_sign_matrix(k)
    if h.order != k.order or not is_hadamard(h) or not is_hadamard(k):
        return PairClassification(PairKind.NotHadamardPair)
    return classify_product(h.as_int() @ k.as_int().T)


def check_mutual(ms: Sequence[SignMatrix], expected: PairClassification) -> bool:
    ms = [as_sign_matrix(m) for m in ms]
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            if not classify_pair(ms[i], ms[j]).matches(expected):
                return False
    return True


# ------------------------------------------------------------ normalizations

def normalize(h: SignMatrix) -> SignMatrix:
    """Negate columns then rows so the first row and column are all +."""
    h = as_sign_matrix(h)
    if not is_hadamard(h):
        raise SignMatrixError("normalize requires a Hadamard matrix")
    a = h.as_int()
    a = a * a[0][None, :]
    a = a * a[:, 0][:, None]
    return SignMatrix(a)


def is_normalized(h: SignMatrix) -> bool:
    e = as_sign_matrix(h).entries
    return bool((e[0] == 1).all() and (e[:, 0] == 1).all())


def circulant_bordered(first_row: Union[str, Sequence[int]]) -> SignMatrix:
    """All-+ border around the circulant R with R[i][j] = r[(j - i) mod m]."""
    r = sign_vector(first_row)
    m = len(r)
    idx = (np.arange(m)[None, :] - np.arange(m)[:, None]) % m
    out = np.ones((m + 1, m + 1), dtype=np.int8)
    out[1:, 1:] = r[idx]
    return SignMatrix(out)


def sylvester(n: int) -> SignMatrix:
    """Sylvester Hadamard matrix, entry (i, j) = (-1)^{popcount(i & j)}."""
    if n < 1 or n & (n - 1):
        raise SignMatrixError("Sylvester order must be a power of two")
    i = np.arange(n)
    par = np.array([bin(v).count("1") & 1 for v in range(n)])
    return SignMatrix(1 - 2 * par[i[:, None] & i[None, :]])


# ------------------------------------------------------------- constructions

def kronecker_qub(hs: Sequence[SignMatrix], ks: Sequence[SignMatrix]) -> list[SignMatrix]:
    hs = [as_sign_matrix(h) for h in hs]
    ks = [as_sign_matrix(k) for k in ks]
    if len(hs) != len(ks) or not hs:
        raise SignMatrixError("hs and ks must be nonempty and of equal length")
    for group in (hs, ks):
        if not all(is_hadamard(m) for m in group):
            raise SignMatrixError("all inputs must be Hadamard")
        if len({m.order for m in group}) != 1:
            raise SignMatrixError("orders within a family must agree")
        if len(group) > 1:
            c = classify_pair(group[0], group[1])
            if c.kind != PairKind.QuasiUnbiased or not check_mutual(group, c):
                raise SignMatrixError("family is not mutually quasi-unbiased")
    return [SignMatrix(np.kron(h.as_int(), k.as_int())) for h, k in zip(hs, ks)]


def m_construction(h: SignMatrix, k: SignMatrix) -> SignMatrix:
    """M(H,K) = 1/2 (H1 + H2) (x) K1 + 1/2 (H1 - H2) (x) K2.

    H1, H2 are the left/right column halves of H, K1, K2 the top/bottom row
    halves of K. For orders 4m and 4n the result has order 8mn.
    """
    h, k = as_sign_matrix(h), as_sign_matrix(k)
    if not (is_hadamard(h) and is_hadamard(k)):
        raise SignMatrixError("m_construction requires Hadamard inputs")
    if h.order % 2 or k.order % 2:
        raise SignMatrixError("orders must be even to split in halves")
    a, b = h.as_int(), k.as_int()
    ch, rk = h.order // 2, k.order // 2
    h1, h2 = a[:, :ch], a[:, ch:]
    k1, k2 = b[:rk], b[rk:]
    out = np.kron((h1 + h2) // 2, k1) + np.kron((h1 - h2) // 2, k2)
    return SignMatrix(out)


def m_construction_set(hs: Sequence[SignMatrix], k: SignMatrix) -> list[SignMatrix]:
    return [m_construction(h, k) for h in hs]


def negate_first_column(h: SignMatrix) -> SignMatrix:
    h = as_sign_matrix(h)
    if not is_hadamard(h):
        raise SignMatrixError("negate_first_column requires a Hadamard matrix")
    if h.order < 8:
        raise SignMatrixError("order must be at least 8")
    a = h.as_int().copy()
    a[:, 0] *= -1
    return SignMatrix(a)


# -------------------------------------------------------------- feasibility

class QubStatus(Enum):
    Open = "Open"
    RuledOut = "RuledOut"


class RuledOutReason(Enum):
    AlphaParityProp = "AlphaParityProp"
    Mod8Corollary = "Mod8Corollary"
    FourPrimeCorollary = "FourPrimeCorollary"


@dataclass(frozen=True)
class QubParams:
    l: int
    a: int
    alpha: int
    status: QubStatus
    reason: Optional[RuledOutReason] = None

    def __iter__(self):
        return iter((self.l, self.a, self.alpha, self.status))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _ruled_out(n: int, alpha: int) -> Optional[RuledOutReason]:
    if n == 4 * alpha * alpha:
        return None
    if n % 4 == 0 and _is_prime(n // 4) and n // 4 >= 5:
        return RuledOutReason.FourPrimeCorollary
    if n % 8 == 4 and n >= 12 and alpha == n // 4:
        return RuledOutReason.Mod8Corollary
    if alpha % 2:
        return RuledOutReason.AlphaParityProp
    return None


def feasible_qub_params(n: int) -> list[QubParams]:
    """All (l, a) = ((n/2alpha)^2, 4alpha^2) with 2alpha | n and n <= 4alpha^2."""
    if n < 2 or (n != 2 and n % 4):
        raise ValueError("n must be 2 or a multiple of 4")
    out = []
    for alpha in range(1, n // 2 + 1):
        if n % (2 * alpha) or n > 4 * alpha * alpha:
            continue
        l = (n // (2 * alpha)) ** 2
        reason = _ruled_out(n, alpha) if l > 1 else None
        status = QubStatus.RuledOut if reason else QubStatus.Open
        out.append(QubParams(l, 4 * alpha * alpha, alpha, status, reason))
    out.sort(key=lambda p: -p.l)
    return out


def feasible_weak_params(n: int, modulus: int) -> list[tuple[int, int, int]]:
    """Integer solutions of a^2 n_a + b^2 (n - n_a) = n^2 with a = b = modulus mod 4."""
    if modulus not in (0, 2):
        raise ValueError("modulus must be 0 or 2")
    out = []
    start = 4 if modulus == 0 else 2
    for a in range(start, n, 4):
        for b in range(a + 4, n, 4):
            num = b * b * n - n * n
            den = b * b - a * a
            if num % den:
                continue
            n_a = num // den
            if 0 < n_a < n:
                out.append((a, b, n_a))
    return out


def random_monomial(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random signed permutation matrix."""
    p = np.zeros((n, n), dtype=np.int64)
    p[np.arange(n), rng.permutation(n)] = rng.choice((-1, 1), size=n)
    return p


def stack(ms: Iterable[SignMatrix]) -> np.ndarray:
    return np.stack([as_sign_matrix(m).as_int() for m in ms])
