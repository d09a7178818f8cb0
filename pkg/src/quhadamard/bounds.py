"""Krawtchouk polynomials, annihilator expansions, absolute and LP bounds for
self-complementary codes, and a symmetric association-scheme axiom checker.

Everything here is exact: integers and Fractions only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Optional

import numpy as np


@lru_cache(maxsize=None)
def krawtchouk(n: int, i: int, z: int) -> int:
    """K_i(z) = sum_j (-1)^j C(z, j) C(n - z, i - j)."""
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    return sum((-1) ** j * comb(z, j) * comb(n - z, i - j) for j in range(i + 1))


@dataclass(frozen=True)
class KrawtchoukExpansion:
    n: int
    coeffs: dict = field(default_factory=dict)  # degree -> Fraction

    def __call__(self, z: int) -> Fraction:
        return sum((c * krawtchouk(self.n, i, z) for i, c in self.coeffs.items()), Fraction(0))

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs.get(i, Fraction(0))

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=0)


def _check_distance_set(n: int, s: Iterable[int]) -> list[int]:
    s = sorted(set(s))
    if n not in s:
        raise ValueError("distance set must contain n")
    for d in s:
        if not 0 < d <= n:
            raise ValueError(f"distance {d} out of range")
        if d != n and (n - d) not in s:
            raise ValueError(f"distance set not symmetric: {d} present, {n - d} missing")
    return s


def annihilator_poly(n: int, s: Iterable[int]):
    """z -> prod_{i in S minus n} (1 - z/i), as an exact callable."""
    roots = [d for d in _check_distance_set(n, s) if d != n]

    def poly(z: int) -> Fraction:
        v = Fraction(1)
        for r in roots:
            v *= 1 - Fraction(z, r)
        return v

    return poly


def annihilator_expansion(n: int, s: Iterable[int]) -> KrawtchoukExpansion:
    """Coefficients of the annihilator in the Krawtchouk basis.

    Uses orthogonality: sum_z C(n,z) K_i(z) K_j(z) = 2^n C(n,i) [i == j].
    """
    s = _check_distance_set(n, s)
    poly = annihilator_poly(n, s)
    deg = len(s) - 1
    values = [poly(z) for z in range(n + 1)]
    coeffs = {}
    for i in range(deg + 1):
        acc = sum((comb(n, z) * values[z] * krawtchouk(n, i, z) for z in range(n + 1)), Fraction(0))
        c = acc / (2 ** n * comb(n, i))
        if c:
            coeffs[i] = c
    return KrawtchoukExpansion(n, coeffs)


def absolute_bound(n: int, s: int) -> int:
    if not 1 <= s <= n:
        raise ValueError("need 1 <= s <= n")
    return 2 * sum(comb(n, i) for i in range(s) if i % 2 == (s - 1) % 2)


@dataclass(frozen=True)
class LPResult:
    expansion: KrawtchoukExpansion
    delta: int
    bound: Optional[int]  # None when the hypothesis fails
    reason: str = ""


def lp_bound_detail(n: int, s: Iterable[int]) -> LPResult:
    s = _check_distance_set(n, s)
    exp = annihilator_expansion(n, s)
    delta = 1 if len(s) % 2 == 0 else 0
    a_delta = exp.coefficient(delta)
    negative = [i for i, c in exp.coeffs.items() if c < 0]
    if negative:
        return LPResult(exp, delta, None, f"negative coefficient at degree {negative[0]}")
    if a_delta <= 0:
        return LPResult(exp, delta, None, f"alpha_{delta} is not positive")
    return LPResult(exp, delta, int(Fraction(2) / a_delta))


def lp_bound(n: int, s: Iterable[int]) -> Optional[int]:
    return lp_bound_detail(n, s).bound


@dataclass(frozen=True)
class QubBounds:
    n: int
    alpha: int
    absolute_raw: int
    absolute_refined: int
    table_absolute: int
    lp: Optional[int]

    @property
    def absolute(self) -> int:
        return self.absolute_refined


def qub_bounds(n: int, alpha: int) -> QubBounds:
    """Matrix-count bounds for mutually quasi-unbiased sets with 4alpha^2 = a.

    The refined value drops the raw bound by one when it is an integer and
    4alpha^2 != 3n - 8 (equality is impossible then). The published table
    applies the drop only to the l = 4 rows, n = 4alpha; table_absolute
    follows that convention.
    """
    if not 0 < alpha < n / 2 + 1e-9:
        raise ValueError("need 0 < alpha <= n/2")
    raw = Fraction(n * n - 3 * n + 8, 6)
    floor_raw = raw.numerator // raw.denominator
    refined = floor_raw
    if raw.denominator == 1 and 4 * alpha * alpha != 3 * n - 8:
        refined -= 1
    table = refined if n == 4 * alpha else floor_raw
    den = 3 * n - 4 * alpha * alpha - 2
    lp = (n * n - 4 * alpha * alpha) // den if den > 0 else None
    return QubBounds(n, alpha, floor_raw, refined, table, lp)


def qub_distance_set(n: int, alpha: int) -> list[int]:
    return sorted({n // 2 - alpha, n // 2, n // 2 + alpha, n})


@dataclass(frozen=True)
class WeakIIBounds:
    n: int
    a: int
    b: int
    absolute: int
    lp: Optional[int]


def weakII_bounds(n: int, a: int, b: int) -> WeakIIBounds:
    """a, b are the binary offsets (half of the matrix-level sigma values)."""
    if not 0 < a < b < n / 2:
        raise ValueError("need 0 < a < b < n/2")
    absolute = (n ** 4 - 10 * n ** 3 + 55 * n ** 2 - 110 * n + 184) // 120
    num = 15 * n * n - 30 * n + 16 - 4 * (3 * n - 2) * (a * a + b * b) + 16 * a * a * b * b
    lp = None
    if num > 0 and 5 * (n - 2) - 2 * a * a - 2 * b * b >= 0:
        lp = (n * n - 4 * a * a) * (n * n - 4 * b * b) // num
    return WeakIIBounds(n, a, b, absolute, lp)


def weakII_distance_set(n: int, a: int, b: int) -> list[int]:
    h = n // 2
    return sorted({h - b, h - a, h, h + a, h + b, n})


# ------------------------------------------------------- association schemes

@dataclass
class SchemeReport:
    valid: bool
    distances: list
    failure: Optional[str] = None
    intersection_numbers: dict = field(default_factory=dict)  # (i, j, k) -> int

    def to_record(self) -> dict:
        return {
            "valid": self.valid,
            "distances": self.distances,
            "failure": self.failure,
            "p": {f"{i},{j},{k}": v for (i, j, k), v in sorted(self.intersection_numbers.items())},
        }


MAX_SCHEME_SIZE = 1024


def verify_association_scheme(code) -> SchemeReport:
    """Check the symmetric association-scheme axioms on the distance classes of a code."""
    from .binary import pairwise_distances

    if len(code) > MAX_SCHEME_SIZE:
        raise ValueError(f"code too large for scheme check (> {MAX_SCHEME_SIZE})")
    dist = pairwise_distances(code)
    ds = sorted(int(v) for v in np.unique(dist))
    if len(ds) > 5:
        raise ValueError(f"degree {len(ds) - 1} exceeds 4")
    m = len(code)
    mats = [(dist == d).astype(np.float64) for d in ds]
    report = SchemeReport(True, ds)
    if ds[0] != 0 or not np.array_equal(mats[0], np.eye(m)):
        report.valid, report.failure = False, "A_0 is not the identity"
        return report
    if not np.array_equal(sum(mats), np.ones((m, m))):
        report.valid, report.failure = False, "classes do not partition X x X"
        return report
    for i, a in enumerate(mats):
        if not np.array_equal(a, a.T):
            report.valid, report.failure = False, f"A_{i} not symmetric"
            return report
    for i in range(len(ds)):
        for j in range(i, len(ds)):
            prod = mats[i] @ mats[j]  # exact: entries are small integers
            rebuilt = np.zeros_like(prod)
            for k, ak in enumerate(mats):
                vals = np.unique(prod[ak == 1])
                if len(vals) != 1:
                    report.valid = False
                    report.failure = f"A_{i} A_{j} not constant on class {k}"
                    return report
                p = vals[0]
                if p < 0 or p != int(p):
                    report.valid, report.failure = False, f"p_{i},{j}^{k} = {p} not a nonnegative integer"
                    return report
                report.intersection_numbers[(i, j, k)] = int(p)
                report.intersection_numbers[(j, i, k)] = int(p)
                rebuilt += p * ak
            if not np.array_equal(rebuilt, prod):
                report.valid, report.failure = False, f"A_{i} A_{j} outside the span"
                return report
    return report
