"""Plain-text renderings of the feasibility and bound tables for n = 4..48."""
from __future__ import annotations

from importlib import resources
from typing import Iterable

from .bounds import qub_bounds, weakII_bounds
from .signmatrix import QubStatus, feasible_qub_params, feasible_weak_params

ORDERS = tuple(range(4, 49, 4))

# Orders where a computer search showed that no Type II weakly unbiased pair
# exists; their rows are left out of the weakIIUB bound table.
WEAKII_NO_PAIR = {(28, 4, 8, 21)}


def _star(v) -> str:
    return "*" if v is None else str(v)


def table1_rows(orders: Iterable[int] = ORDERS) -> list[tuple]:
    """(n, l, a, ruled_out) for every l > 1, in increasing l."""
    rows = []
    for n in orders:
        for p in sorted(feasible_qub_params(n), key=lambda p: p.l):
            if p.l > 1:
                rows.append((n, p.l, p.a, p.status is QubStatus.RuledOut))
    return rows


def table2_rows(orders: Iterable[int] = ORDERS) -> list[tuple]:
    """(n, l, a, absolute, lp) for the open rows of table 1."""
    rows = []
    for n, l, a, out in table1_rows(orders):
        if out:
            continue
        b = qub_bounds(n, int(round(a ** 0.5)) // 2)
        rows.append((n, l, a, b.table_absolute, b.lp))
    return rows


def weak_rows(modulus: int, orders: Iterable[int] = ORDERS) -> list[tuple]:
    return [(n, *t) for n in orders for t in feasible_weak_params(n, modulus)]


def weakIIUB_rows(orders: Iterable[int] = ORDERS) -> list[tuple]:
    """(n, a, b, n_a, absolute, lp); a, b are matrix-level values."""
    rows = []
    for n, a, b, na in weak_rows(0, orders):
        if (n, a, b, na) in WEAKII_NO_PAIR:
            continue
        w = weakII_bounds(n, a // 2, b // 2)
        rows.append((n, a, b, na, w.absolute, w.lp))
    return rows


def render(name: str) -> str:
    name = str(name)
    if name == "1":
        lines = ["# n (l,a) status"]
        lines += [f"{n} ({l},{a}) {'-' if out else 'open'}" for n, l, a, out in table1_rows()]
    elif name == "2":
        lines = ["# n (l,a) absolute lp"]
        lines += [f"{n} ({l},{a}) {ab} {_star(lp)}" for n, l, a, ab, lp in table2_rows()]
    elif name in ("8", "9"):
        lines = ["# n (a,b,n_a)"]
        lines += [f"{n} ({a},{b},{na})" for n, a, b, na in weak_rows(2 if name == "8" else 0)]
    elif name.lower() == "weakiiub":
        lines = ["# n (a,b,n_a) absolute lp"]
        lines += [f"{n} ({a},{b},{na}) {ab} {_star(lp)}" for n, a, b, na, ab, lp in weakIIUB_rows()]
    else:
        raise ValueError(f"unknown table {name!r}; choose 1, 2, 8, 9 or weakIIUB")
    return "\n".join(lines) + "\n"


def golden(name: str) -> str:
    return resources.files("quhadamard").joinpath("data").joinpath(f"table{name}.txt").read_text()
