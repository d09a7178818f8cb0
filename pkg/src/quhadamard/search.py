"""Classification engines.

Binary: codes C1 u (u_2 + C1) u ... u (u_f + C1) grown one translate at a
time, level by level, keeping one representative per equivalence class.

Z4: linear codes <ZRM(1,m), x_1, ..., x_r> grown one generator at a time.
Every coset of ZRM(1,m) is classified once by a compiled scan (cached on
disk); a code qualifies exactly when all of its nonzero ZRM-cosets carry
compatible classes.
"""
from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
from numba import njit
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import z4 as z4mod
from .binary import (BinaryCode, CodeError, _data_text, check_F2, check_weakF2, check_weakIIF2,
                     distance_distribution, format_code, min_distance, parse_code, rm_fixture,
                     translates, word_from_support)
from .canonical import code_canonical_form

log = logging.getLogger("quhadamard.search")

KINDS = ("F2", "weak", "weakII")


# ======================================================== binary translates

@njit(cache=True)
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True)
def _mask_ok(mask, half, kind):
    if (mask >> half) & 1:
        return False  # translates overlap
    if kind == 0:
        rest = mask & ~np.int64(1)
        return rest != 0 and (rest & (rest - 1)) == 0
    if mask & 1:
        return False
    m = mask
    c = 0
    while m:
        m &= m - 1
        c += 1
    if c != 2:
        return False
    odd = np.int64(0)
    for i in range(1, 64, 2):
        odd |= np.int64(1) << i
    if kind == 1:
        return (mask & ~odd) == 0
    return (mask & odd) == 0


@njit(cache=True)
def _translate_scan(s_half, n, free, kind, cap):
    """Gray-code walk over vectors supported on `free`; keeps those whose
    offsets against s_half pass the pair test for `kind`."""
    half = n // 2
    m = s_half.shape[0]
    w = np.empty(m, np.int64)
    for i in range(m):
        w[i] = _popcount64(s_half[i])
    out_u = np.empty(cap, np.uint64)
    out_m = np.empty(cap, np.int64)
    cnt = 0
    u = np.uint64(0)
    total = np.int64(1) << free.shape[0]
    for step in range(total):
        if step > 0:
            b = 0
            t = step
            while (t & 1) == 0:
                t >>= 1
                b += 1
            p = np.uint64(free[b])
            u ^= np.uint64(1) << p
            ub = (u >> p) & np.uint64(1)
            for i in range(m):
                if ((s_half[i] >> p) & np.uint64(1)) != ub:
                    w[i] += 1
                else:
                    w[i] -= 1
        mask = np.int64(0)
        for i in range(m):
            mask |= np.int64(1) << abs(w[i] - half)
        if _mask_ok(mask, half, kind):
            if cnt < cap:
                out_u[cnt] = u
                out_m[cnt] = mask
            cnt += 1
    return out_u, out_m, cnt


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


class TranslateSpace:
    """Translates u + C1 of a seed code, with the offset masks between them.

    The mask of a difference vector v is the set of |d - n/2| over distances d
    realised between C1 and v + C1; it only depends on v through C1 + C1.
    """

    def __init__(self, seed: BinaryCode):
        if 0 not in seed:
            raise CodeError("seed code must contain the zero word")
        self.seed = seed
        self.n = seed.n
        w = np.asarray(seed.words, dtype=np.uint64)
        self.sumset = np.unique((w[:, None] ^ w[None, :]).ravel())
        self.linear = len(self.sumset) == len(w)
        self._basis: list[tuple[int, int]] = []
        if self.linear:
            self._basis = self._reduced_basis([int(x) for x in w])
        ones = (1 << self.n) - 1 if self.n < 64 else (1 << 64) - 1
        self.self_complementary = ones in seed
        top = np.uint64(1) << np.uint64(self.n - 1)
        self.s_half = self.sumset[(self.sumset & top) == 0] if self.self_complementary else self.sumset

    @staticmethod
    def _reduced_basis(words: list[int]) -> list[tuple[int, int]]:
        basis: list[tuple[int, int]] = []  # (pivot, row), fully reduced
        for v in words:
            for p, r in basis:
                if v >> p & 1:
                    v ^= r
            if v:
                p = (v & -v).bit_length() - 1
                basis = [(q, r ^ v if r >> p & 1 else r) for q, r in basis]
                basis.append((p, v))
        return basis

    @property
    def pivots(self) -> list[int]:
        return sorted(p for p, _ in self._basis)

    def free_positions(self) -> list[int]:
        piv = set(self.pivots)
        return [j for j in range(self.n) if j not in piv]

    def key(self, u: int) -> int:
        """Identifies the translate u + C1."""
        if self.linear:
            for p, r in self._basis:
                if u >> p & 1:
                    u ^= r
            return u
        return int((np.uint64(u) ^ self.seed.words).min())

    def mask(self, v: int) -> int:
        d = np.bitwise_count(np.uint64(v) ^ self.sumset).astype(np.int64)
        m = 0
        for off in np.unique(np.abs(d - self.n // 2)).tolist():
            m |= 1 << off
        return m

    def candidates(self, kind: str) -> dict[int, tuple[int, int]]:
        """key -> (translate vector, mask) for every translate whose pair with C1 passes `kind`."""
        kcode = KINDS.index(kind)
        free = np.array(self.free_positions() if self.linear else range(self.n), dtype=np.int64)
        cap = 1 << 16
        while True:
            us, ms, cnt = _translate_scan(self.s_half, self.n, free, kcode, cap)
            if cnt <= cap:
                break
            cap = int(cnt)
        out: dict[int, tuple[int, int]] = {}
        for u, m in zip(us[:cnt].tolist(), ms[:cnt].tolist()):
            out.setdefault(self.key(u), (u, m))
        return out

    def code(self, us: Sequence[int]) -> BinaryCode:
        return translates(self.seed, [0, *us])


def _params_of(kind: str, mask: int) -> tuple:
    b = _bits(mask)
    if kind == "F2":
        return (b[-1],)
    return tuple(b)


def _pair_ok(kind: str, param: tuple, mask: int) -> bool:
    if kind == "F2":
        return mask in (1 << param[0], 1 | 1 << param[0])
    return mask == (1 << param[0] | 1 << param[1])


@dataclass
class LevelRecord:
    param: tuple
    level: int
    count: int
    wall: float
    representatives: list = field(default_factory=list, repr=False)


@dataclass
class Classification:
    seed: str
    condition: str
    levels: list = field(default_factory=list)  # LevelRecord

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r in self.levels:
            out[r.level] = out.get(r.level, 0) + r.count
        return dict(sorted(out.items()))

    def counts_by_param(self) -> dict[tuple, dict[int, int]]:
        out: dict[tuple, dict[int, int]] = {}
        for r in self.levels:
            out.setdefault(r.param, {})[r.level] = r.count
        return out

    def representatives(self, level: int) -> list:
        return [c for r in self.levels if r.level == level for c in r.representatives]

    def to_record(self) -> dict:
        return {"seed": self.seed, "condition": self.condition,
                "counts": {str(k): v for k, v in self.counts().items()},
                "levels": [{"param": list(r.param), "level": r.level, "count": r.count,
                            "wall": round(r.wall, 3)} for r in self.levels]}


class _Manifest:
    """JSON manifest plus representative files; lets an interrupted run resume."""

    def __init__(self, out_dir: Optional[Path], seed: str, condition: str):
        self.dir = Path(out_dir) if out_dir else None
        self.data = {"seed": seed, "condition": condition, "levels": []}
        if self.dir:
            self.dir.mkdir(parents=True, exist_ok=True)
            path = self.dir / "manifest.json"
            if path.exists():
                old = json.loads(path.read_text())
                if old.get("seed") == seed and old.get("condition") == condition:
                    self.data = old

    def done(self, param: tuple) -> list[dict]:
        return sorted((e for e in self.data["levels"] if tuple(e["param"]) == tuple(param)),
                      key=lambda e: e["level"])

    def finished(self, param: tuple) -> bool:
        return tuple(param) in {tuple(p) for p in self.data.get("finished", [])}

    def record(self, param: tuple, level: int, count: int, wall: float, texts: list[str], ext: str):
        files = []
        if self.dir:
            tag = "_".join(str(x) for x in param) or "all"
            for i, t in enumerate(texts):
                name = f"rep_{tag}_L{level}_{i + 1}.{ext}"
                (self.dir / name).write_text(t)
                files.append(name)
        self.data["levels"].append({"param": list(param), "level": level, "count": count,
                                    "wall": round(wall, 3), "files": files})
        self._flush()

    def finish(self, param: tuple):
        self.data.setdefault("finished", []).append(list(param))
        self._flush()

    def _flush(self):
        if self.dir:
            (self.dir / "manifest.json").write_text(json.dumps(self.data, indent=1))


def _translates_text(space: TranslateSpace, us: Sequence[int]) -> str:
    rows = [" ".join(str(j + 1) for j in range(space.n) if u >> j & 1) for u in us]
    return f"{space.n} {len(rows)}\n" + "".join(f"supp: {r}\n" for r in rows)


def _read_translates(text: str) -> tuple[int, ...]:
    return tuple(int(w) for w in parse_code(text).words) if text.split()[1] != "0" else ()


def classify_binary_extensions(seed: BinaryCode, condition: str, f_max: Optional[int] = None,
                               params: Optional[Sequence[tuple]] = None, seed_name: str = "seed",
                               out_dir=None, shuffle_seed: Optional[int] = None,
                               progress: Optional[Callable[[str], None]] = None) -> Classification:
    """Level-by-level classification of unions of translates of `seed`.

    condition is "F2" (quasi-unbiased, parameter alpha), "weak" (odd offsets
    a < b, two translates) or "weakII" (even offsets a < b). Counts are
    summed over all parameters the seed admits unless `params` narrows them.
    Level f holds codes made of f translates; level 1 is the seed itself.
    """
    if condition not in KINDS:
        raise ValueError(f"condition must be one of {KINDS}")
    say = progress or (lambda s: log.info(s))
    space = TranslateSpace(seed)
    t0 = time.time()
    cands = space.candidates(condition)
    say(f"{seed_name}: {len(cands)} admissible translates ({time.time() - t0:.1f}s)")
    found = sorted({_params_of(condition, m) for _, m in cands.values()})
    if params is not None:
        found = [tuple(p) for p in params if tuple(p) in found]
    if condition == "weak":
        f_max = 2 if f_max is None else min(f_max, 2)
    manifest = _Manifest(out_dir, seed_name, condition)
    result = Classification(seed_name, condition)
    if not found:
        result.levels.append(LevelRecord((), 2, 0, time.time() - t0))
    rng = np.random.default_rng(shuffle_seed) if shuffle_seed is not None else None
    zero_key = space.key(0)
    for param in found:
        pc = [(k, u) for k, (u, m) in cands.items() if _pair_ok(condition, param, m)]
        if rng is not None:
            pc = [pc[i] for i in rng.permutation(len(pc))]
        reps: list[tuple[int, ...]] = [()]
        level = 1
        for e in manifest.done(param):  # resume
            reps = [_read_translates((manifest.dir / f).read_text()) for f in e["files"]]
            level = e["level"]
            result.levels.append(LevelRecord(param, level, e["count"], e["wall"],
                                             [space.code(r) for r in reps]))
        if manifest.finished(param):
            continue
        while reps and (f_max is None or level < f_max):
            level += 1
            t1 = time.time()
            seen_sets: set = set()
            classes: dict[bytes, tuple[int, ...]] = {}
            for r in reps:
                used = {zero_key, *(space.key(t) for t in r)}
                for k, u in pc:
                    if k in used:
                        continue
                    if not all(_pair_ok(condition, param, space.mask(u ^ t)) for t in r):
                        continue
                    ident = frozenset(used | {k})
                    if ident in seen_sets:
                        continue
                    seen_sets.add(ident)
                    new = (*r, u)
                    form = code_canonical_form(space.code(new))
                    classes.setdefault(form, new)
            reps = [classes[f] for f in sorted(classes)]
            wall = time.time() - t1
            if not reps:
                manifest.record(param, level, 0, wall, [], "supp")
                result.levels.append(LevelRecord(param, level, 0, wall, []))
                break
            manifest.record(param, level, len(reps), wall, [_translates_text(space, r) for r in reps], "supp")
            result.levels.append(LevelRecord(param, level, len(reps), wall, [space.code(r) for r in reps]))
            say(f"{seed_name} {condition}{param} f={level}: {len(reps)} classes "
                f"from {len(seen_sets)} codes ({wall:.1f}s)")
        manifest.finish(param)
    result.levels.sort(key=lambda r: (r.level, r.param))
    return result


# ================================================================ Z4 cosets

def _zrm_layout(m: int) -> tuple[int, list[int], list[int]]:
    n = 1 << m
    pivots = [1 << k for k in range(m)]
    free = [j for j in range(1, n) if j not in pivots]
    return n, pivots, free


def z4_coset_keys(words: np.ndarray, m: int) -> np.ndarray:
    """Key of the ZRM(1,m)-coset of each row: pivot bits low, then base-4 free digits."""
    n, pivots, free = _zrm_layout(m)
    y = (np.atleast_2d(words).astype(np.int64) - np.atleast_2d(words)[:, :1].astype(np.int64)) % 4
    key = np.zeros(len(y), dtype=np.int64)
    for k, p in enumerate(pivots):
        flip = y[:, p] >= 2
        bitk = ((np.arange(n) >> k) & 1).astype(np.int64)
        y = np.where(flip[:, None], (y - 2 * bitk) % 4, y)
        key |= y[:, p] << k
    for i, p in enumerate(free):
        key |= y[:, p] << (m + 2 * i)
    return key


def z4_coset_vectors(keys: np.ndarray, m: int) -> np.ndarray:
    n, pivots, free = _zrm_layout(m)
    keys = np.asarray(keys, dtype=np.int64)
    y = np.zeros((len(keys), n), dtype=np.uint8)
    for k, p in enumerate(pivots):
        y[:, p] = (keys >> k) & 1
    for i, p in enumerate(free):
        y[:, p] = (keys >> (m + 2 * i)) & 3
    return y


@njit(cache=True)
def _z4_class_scan(m, out):
    n = 1 << m
    nfree = n - 1 - m
    free = np.empty(nfree, np.int64)
    c = 0
    for j in range(1, n):
        if j & (j - 1) != 0:
            free[c] = j
            c += 1
    re = np.empty(n, np.int64)
    im = np.empty(n, np.int64)
    total = out.shape[0]
    for key in range(total):
        for j in range(n):
            re[j] = 0
            im[j] = 0
        for k in range(m):
            y = (key >> k) & 1
            if y == 0:
                re[1 << k] = 1
            else:
                im[1 << k] = 1
        re[0] = 1
        for i in range(nfree):
            y = (key >> (m + 2 * i)) & 3
            j = free[i]
            if y == 0:
                re[j] = 1
            elif y == 1:
                im[j] = 1
            elif y == 2:
                re[j] = -1
            else:
                im[j] = -1
        h = 1
        while h < n:
            for s in range(0, n, 2 * h):
                for j in range(s, s + h):
                    a, b = re[j], re[j + h]
                    re[j], re[j + h] = a + b, a - b
                    a, b = im[j], im[j + h]
                    im[j], im[j + h] = a + b, a - b
            h *= 2
        mask = np.int64(0)
        for j in range(n):
            mask |= np.int64(1) << abs(re[j])
            mask |= np.int64(1) << abs(im[j])
        out[key] = _encode_class(mask, n)


@njit(cache=True)
def _encode_class(mask, n):
    """0: unusable; 1..n-1: values within {0, beta} (beta given);
    >= n: no zero and at most two values a <= b, stored as n + a*n + b."""
    if (mask >> n) & 1:
        return 0
    vals = np.empty(3, np.int64)
    c = 0
    for v in range(1, n):
        if (mask >> v) & 1:
            if c == 2:
                return 0
            vals[c] = v
            c += 1
    if c == 0:
        return 0
    if mask & 1:
        return vals[0] if c == 1 else 0
    if c == 1:
        return n + vals[0] * n + vals[0]
    return n + vals[0] * n + vals[1]


def _cache_dir() -> Path:
    base = os.environ.get("QUHADAMARD_CACHE") or os.path.join(os.path.expanduser("~"), ".cache", "quhadamard")
    return Path(base)


def z4_coset_classes(m: int, cache: bool = True) -> np.ndarray:
    """Class code of every ZRM(1,m)-coset, indexed by coset key (uint16)."""
    n, _, free = _zrm_layout(m)
    nkeys = 1 << (m + 2 * len(free))
    path = _cache_dir() / f"z4classes_m{m}_v1.npy"
    if cache and path.exists():
        arr = np.load(path, mmap_mode=None)
        if arr.shape == (nkeys,):
            return arr
    out = np.zeros(nkeys, dtype=np.uint16)
    t0 = time.time()
    _z4_class_scan(m, out)
    log.info(f"scanned {nkeys} ZRM(1,{m}) cosets in {time.time() - t0:.1f}s")
    if cache:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp.npy")
        np.save(tmp, out)
        os.replace(tmp, path)
    return out


def decode_class(code: int, n: int) -> tuple:
    """("qub", beta) or ("pair", a, b) or ("bad",)."""
    if code == 0:
        return ("bad",)
    if code < n:
        return ("qub", int(code))
    a, b = divmod(int(code) - n, n)
    return ("pair", a, b)


def _class_table(n: int, condition: str, param: tuple) -> np.ndarray:
    """Boolean table over class codes: which cosets are admissible for (condition, param)."""
    size = n + n * n + n
    ok = np.zeros(size, dtype=bool)
    for code in range(1, size):
        d = decode_class(code, n)
        if condition == "qub":
            (beta,) = param
            ok[code] = d == ("qub", beta) or d == ("pair", beta, beta)
        elif d[0] == "pair":
            a, b = param
            ok[code] = set(d[1:]) <= {a, b}
    return ok


def _z4_params(classes: np.ndarray, n: int, condition: str) -> list[tuple]:
    present = np.unique(classes)
    out = set()
    for code in present.tolist():
        d = decode_class(code, n)
        if condition == "qub":
            if d[0] == "qub" or (d[0] == "pair" and d[1] == d[2]):
                out.add((d[1],))
        elif d[0] == "pair" and d[1] < d[2]:
            want = 1 if condition == "weak" else 0
            if d[1] % 2 == want and d[2] % 2 == want:
                out.add((d[1], d[2]))
    return sorted(out)


def _orbit_reps(ids: np.ndarray, images: list[np.ndarray]) -> np.ndarray:
    """Indices of one member per orbit; images[g][i] is the id of generator g applied to item i."""
    k = len(ids)
    if k == 0:
        return np.zeros(0, dtype=np.int64)
    order = np.argsort(ids)
    rows, cols = [], []
    for img in images:
        pos = np.searchsorted(ids[order], img)
        pos = np.clip(pos, 0, k - 1)
        hit = ids[order][pos] == img
        rows.append(np.nonzero(hit)[0])
        cols.append(order[pos[hit]])
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
    else:
        r = c = np.zeros(0, dtype=np.int64)
    g = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(k, k))
    _, labels = connected_components(g, directed=True, connection="weak")
    _, first = np.unique(labels, return_index=True)
    return np.sort(first)


def _z4_accept(code: z4mod.Z4LinearCode, condition: str, param: tuple) -> bool:
    if condition == "qub":
        return z4mod.check_z4_qub(code) == param[0]
    return z4mod.check_z4_weak(code, "odd" if condition == "weak" else "even") == tuple(param)


def classify_z4_extensions(condition: str, m: int = 4, max_level: Optional[int] = None,
                           params: Optional[Sequence[tuple]] = None, out_dir=None,
                           shuffle_seed: Optional[int] = None,
                           progress: Optional[Callable[[str], None]] = None) -> Classification:
    """Classify linear Z4-codes containing ZRM(1,m) under "qub", "weak" or "weakII".

    Levels are log2 of the code size; level m+2 is ZRM(1,m) itself.
    A code's count at a level is kept only if it meets the full condition
    (exact value set and, for the weak kinds, the zero-count rule); growth
    continues through every code whose cosets are admissible.
    """
    if condition not in ("qub", "weak", "weakII"):
        raise ValueError("condition must be qub, weak or weakII")
    if m not in (2, 3, 4):
        raise ValueError("m must be 2, 3 or 4")
    say = progress or (lambda s: log.info(s))
    n = 1 << m
    zrm = z4mod.zrm_fixture(m)
    classes = z4_coset_classes(m)
    all_params = _z4_params(classes, n, condition)
    if params is not None:
        all_params = [tuple(p) for p in params if tuple(p) in all_params]
    manifest = _Manifest(out_dir, f"ZRM(1,{m})", condition)
    result = Classification(f"ZRM(1,{m})", condition)
    base = m + 2
    rng = np.random.default_rng(shuffle_seed) if shuffle_seed is not None else None
    for param in all_params:
        ok = _class_table(n, condition, param)
        good = np.nonzero(ok[classes])[0].astype(np.int64)
        if rng is not None:
            good = good[rng.permutation(len(good))]
        good_vecs = z4_coset_vectors(good, m)
        double_keys = z4_coset_keys((2 * good_vecs.astype(np.int64)) % 4, m)
        say(f"Z4 {condition}{param}: {len(good)} admissible cosets")
        reps = [zrm]
        level = base
        for e in manifest.done(param):
            reps = [z4mod.load_z4_code(manifest.dir / f) for f in e["files"]]
            level = e["level"]
            result.levels.append(LevelRecord(param, level, e["count"], e["wall"], reps))
        if manifest.finished(param):
            continue
        while reps and (max_level is None or level < max_level):
            level += 1
            t1 = time.time()
            grown: dict[bytes, z4mod.Z4LinearCode] = {}
            tried = 0
            for c in reps:
                qkeys = np.unique(z4_coset_keys(c.words, m))
                qvecs = z4_coset_vectors(qkeys, m).astype(np.int64)
                sel = np.isin(double_keys, qkeys) & ~np.isin(good, qkeys)
                xs = good_vecs[sel].astype(np.int64)
                alive = np.ones(len(xs), dtype=bool)
                ids = np.full(len(xs), np.iinfo(np.int64).max, dtype=np.int64)
                for q in qvecs:
                    kk = z4_coset_keys((xs + q) % 4, m)
                    alive &= ok[classes[kk]]
                    ids = np.minimum(ids, kk)
                xs, ids = xs[alive], ids[alive]
                ids, first = np.unique(ids, return_index=True)
                xs = xs[first]
                images = []
                for act in z4mod.automorphism_actions(c):
                    gx = act(xs).astype(np.int64)
                    img = np.full(len(xs), np.iinfo(np.int64).max, dtype=np.int64)
                    for q in qvecs:
                        img = np.minimum(img, z4_coset_keys((gx + q) % 4, m))
                    images.append(img)
                pick = _orbit_reps(ids, images)
                tried += len(pick)
                for i in pick:
                    new = c.extend(xs[i])
                    grown.setdefault(z4mod.z4_canonical_form(new), new)
            reps = [grown[k] for k in sorted(grown)]
            kept = [c for c in reps if _z4_accept(c, condition, param)]
            wall = time.time() - t1
            manifest.record(param, level, len(kept), wall, [z4mod.format_z4_code(c) for c in reps], "z4")
            result.levels.append(LevelRecord(param, level, len(kept), wall, kept))
            say(f"Z4 {condition}{param} k={level}: {len(kept)} classes "
                f"({len(reps)} grown, {tried} orbit candidates, {wall:.1f}s)")
        manifest.finish(param)
    result.levels.sort(key=lambda r: (r.level, r.param))
    return result


# =========================================================== fixture audit

@dataclass
class AuditItem:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class AuditReport:
    items: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.items.append(AuditItem(name, bool(ok), detail))

    def failures(self) -> list:
        return [i for i in self.items if not i.ok]

    def to_record(self) -> dict:
        return {"ok": self.ok, "items": [{"name": i.name, "ok": i.ok, "detail": i.detail} for i in self.items]}


def fixture_tables() -> dict:
    return json.loads(_data_text("fixtures.json"))


def fixture_matrix(name: str):
    from .signmatrix import parse_matrix
    return parse_matrix(_data_text(f"{name}.txt"))


def _supp_words(name: str) -> list[int]:
    return [int(w) for w in parse_code(_data_text(name)).words]


def b8_code(name: str) -> BinaryCode:
    xs = _supp_words("rm13_transversal.supp")
    return translates(rm_fixture(3), [xs[i - 1] for i in fixture_tables()["B8"][name]["X"]])


def b16_code(name: str) -> BinaryCode:
    xs = _supp_words("rm14_reps.supp")
    return translates(rm_fixture(4), [xs[i - 1] for i in fixture_tables()["B16"][name]["X"]])


def c24_code() -> BinaryCode:
    from .binary import code_of_hadamard
    return translates(code_of_hadamard(fixture_matrix("H24_2")), _supp_words("c24_translates.supp"))


def d_code(name: str) -> BinaryCode:
    from .binary import code_of_hadamard
    spec = fixture_tables()["D_codes"][name]
    seed = spec["seed"]
    base = rm_fixture(int(seed[-1])) if seed.startswith("rm") else code_of_hadamard(fixture_matrix(seed))
    return translates(base, [0] + [word_from_support(s) for s in spec["u"]])


def z4_fixture_code(name: str) -> z4mod.Z4LinearCode:
    t = fixture_tables()
    entry = t["Z4"].get(name) or t["Z4_typeII"][name]
    return z4mod.zrm_fixture(4).extend(*entry["x"])


def verify_fixture_tables() -> AuditReport:
    from .signmatrix import PairClassification, check_mutual
    from .binary import psi_matrices
    rep = AuditReport()
    t = fixture_tables()
    for name, e in t["B8"].items():
        c = b8_code(name)
        f = len(e["X"])
        rep.add(name, len(c) == 16 * f and min_distance(c) == 2 and check_F2(c, 2, f),
                f"|C|={len(c)} d_H={min_distance(c)}")
    for name, e in t["B16"].items():
        c = b16_code(name)
        f = len(e["X"])
        d = min_distance(c)
        rep.add(name, len(c) == 32 * f and d == e["d_H"] and check_F2(c, 8 - d, f),
                f"|C|={len(c)} d_H={d} (table {e['d_H']})")
    c = c24_code()
    ok = len(c) == 768 and min_distance(c) == 8 and check_F2(c, 4, 16)
    ms = psi_matrices(c) if ok else []
    ok = ok and len(ms) == 16 and check_mutual(ms, PairClassification.qub(9, 64))
    rep.add("C24", ok, f"|C|={len(c)} d_H={min_distance(c)} matrices={len(ms)}")
    for name, dist in t["weak_distributions"].items():
        if name not in t["D_codes"]:
            continue
        c = d_code(name)
        got = list(distance_distribution(c).as_ints())
        offs = sorted({abs(i - c.n // 2) for i, a in enumerate(got) if a and i not in (0, c.n)} - {0})
        rep.add(name, got == dist and check_weakF2(c, *offs), f"distribution {got}")
    for name, e in t["Z4"].items():
        c = z4_fixture_code(name)
        beta = z4mod.check_z4_qub(c)
        got = (beta * beta if beta else None, z4mod.min_hamming_distance(c), z4mod.min_lee_distance(c))
        rep.add(name, got == (e["beta2"], e["d_H"], e["d_L"]), f"beta^2, d_H, d_L = {got}")
    for name, e in t["Z4_typeII"].items():
        c = z4_fixture_code(name)
        ab = z4mod.check_z4_weak(c, "even")
        got = ([ab[0] ** 2, ab[1] ** 2] if ab else None, z4mod.min_hamming_distance(c), z4mod.min_lee_distance(c))
        g = z4mod.gray_map(c)
        f = len(c) // (4 * c.n)
        okII = ab is not None and check_weakIIF2(g, ab[0] * 1, ab[1] * 1, f)
        rep.add(name, got == (e["a2b2"], e["d_H"], e["d_L"]) and okII, f"(a^2,b^2), d_H, d_L = {got}")
    return rep
