"""Command-line entry point.

Exit codes: 0 success, 1 a verification failed, 2 bad arguments or inputs,
3 a search ran out of budget. Results go to stdout (JSON with --json),
progress and notices to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional

from . import binary, bounds, clique, search, signmatrix, tables
from . import z4 as z4mod

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("quhadamard")


class UsageError(Exception):
    pass


class Context:
    def __init__(self, args):
        self.json = args.json
        self.config = _read_config(args.config) if args.config else {}
        self.data_dir = os.environ.get("HADAMARD_DATA") or self.config.get("data")
        budget = args.budget if args.budget is not None else self.config.get("budget")
        self.budget = int(budget) if budget is not None else None
        threads = args.threads if args.threads is not None else self.config.get("threads")
        if threads is not None:
            _set_threads(int(threads))

    def emit(self, record: dict, text: str):
        """One record feeds both output styles."""
        if self.json:
            print(json.dumps(record, sort_keys=False))
        else:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read_config(path) -> dict:
    out = {}
    for i, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{i}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _set_threads(k: int):
    if k < 1:
        raise UsageError("--threads must be positive")
    import numba
    numba.set_num_threads(min(k, numba.config.NUMBA_NUM_THREADS))


def _pair_arg(s: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'a,b', got {s!r}")
    return a, b


# ------------------------------------------------------------ resolution

def _data_notice(name: str):
    print(f"external data absent: {name} needs HADAMARD_DATA pointing at the matrix library",
          file=sys.stderr)


def resolve_matrix(ctx: Context, name: str) -> signmatrix.SignMatrix:
    """A file path, a bundled matrix name (H12, K12, K24_1, ...) or an external library name."""
    p = Path(name)
    if p.is_file():
        return signmatrix.load_matrix(p)
    stem = p.name
    try:
        return search.fixture_matrix(stem)
    except (FileNotFoundError, OSError):
        pass
    if stem.startswith("had."):
        if not ctx.data_dir:
            _data_notice(stem)
            raise UsageError(f"external data absent: {stem}")
        q = Path(ctx.data_dir) / stem
        if not q.is_file():
            _data_notice(stem)
            raise UsageError(f"external data absent: {q}")
        return signmatrix.load_matrix(q)
    raise UsageError(f"no matrix named {name!r}")


def resolve_code(ctx: Context, name: str) -> binary.BinaryCode:
    """rmM, C(NAME) for the code of a matrix, a B8/B16/D fixture name, or a code file."""
    p = Path(name)
    if p.is_file():
        return binary.load_code(p)
    if name.lower() in ("rm13", "rm14", "rm15"):
        return binary.rm_fixture(int(name[-1]))
    if name.startswith("C(") and name.endswith(")"):
        inner = name[2:-1]
        if inner == "H8":
            return binary.code_of_hadamard(signmatrix.sylvester(8))
        return binary.code_of_hadamard(signmatrix.normalize(resolve_matrix(ctx, inner)))
    t = search.fixture_tables()
    if name in t["B8"]:
        return search.b8_code(name)
    if name in t["B16"]:
        return search.b16_code(name)
    if name in t["D_codes"]:
        return search.d_code(name)
    if name == "C24":
        return search.c24_code()
    raise UsageError(f"no code named {name!r}")


# -------------------------------------------------------------- commands

def cmd_verify_pair(ctx, args) -> int:
    h, k = resolve_matrix(ctx, args.H), resolve_matrix(ctx, args.K)
    c = signmatrix.classify_pair(h, k)
    rec = c.to_record()
    if c.kind is signmatrix.PairKind.QuasiUnbiased:
        text = f"QuasiUnbiased l={c.l} a={c.a}"
    elif c.sigma is not None:
        text = f"{c.kind.value} sigma={{{c.sigma[0]},{c.sigma[1]}}} n_a={c.n_a}"
    else:
        text = c.kind.value
    ctx.emit(rec, text)
    return EXIT_FAIL if c.kind in (signmatrix.PairKind.NotHadamardPair, signmatrix.PairKind.Irregular) else EXIT_OK


def cmd_params(ctx, args) -> int:
    n = args.n
    if args.kind == "qub":
        rows = [p for p in signmatrix.feasible_qub_params(n) if p.l > 1]
        rows.sort(key=lambda p: p.l)
        rec = {"n": n, "kind": "qub", "rows": [
            {"l": p.l, "a": p.a, "alpha": p.alpha, "status": p.status.value,
             "reason": p.reason.value if p.reason else None} for p in rows]}
        text = "\n".join(f"{n} ({p.l},{p.a}) " + (f"- {p.reason.value}" if p.reason else "open")
                         for p in rows) or f"{n} none"
    else:
        if n % 4:
            raise UsageError("n must be a multiple of 4")
        rows = signmatrix.feasible_weak_params(n, 2 if args.kind == "weak" else 0)
        # existence is a search result, so the column stays empty here
        rec = {"n": n, "kind": args.kind, "rows": [{"a": a, "b": b, "n_a": na, "existence": None}
                                                    for a, b, na in rows]}
        text = "\n".join(f"{n} ({a},{b},{na})" for a, b, na in rows) or f"{n} none"
    ctx.emit(rec, text)
    return EXIT_OK


def cmd_bounds(ctx, args) -> int:
    if args.kind == "qub":
        if len(args.values) != 1:
            raise UsageError("bounds qub takes <n> <alpha>")
        b = bounds.qub_bounds(args.n, args.values[0])
        rec = {"n": b.n, "alpha": b.alpha, "absolute": b.absolute, "absolute_table": b.table_absolute,
               "absolute_raw": b.absolute_raw, "lp": b.lp}
        text = f"absolute {b.absolute} (unrefined {b.absolute_raw})  lp {'*' if b.lp is None else b.lp}"
    else:
        if len(args.values) != 2:
            raise UsageError("bounds weakII takes <n> <a> <b>")
        a, bb = args.values
        if a % 4 or bb % 4:
            raise UsageError("Type II values a, b must be multiples of 4")
        w = bounds.weakII_bounds(args.n, a // 2, bb // 2)
        rec = {"n": w.n, "a": a, "b": bb, "absolute": w.absolute, "lp": w.lp}
        text = f"absolute {w.absolute}  lp {'*' if w.lp is None else w.lp}"
    ctx.emit(rec, text)
    return EXIT_OK


def cmd_table(ctx, args) -> int:
    text = tables.render(args.which)
    rows = [ln for ln in text.splitlines() if not ln.startswith("#")]
    ctx.emit({"table": args.which, "rows": rows}, text)
    return EXIT_OK


def _budget_guard(fn):
    try:
        return fn(), False
    except clique.BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return None, True


def cmd_search_mate(ctx, args) -> int:
    h = resolve_matrix(ctx, args.H)
    if (args.sigma is None) == (args.qub is None):
        raise UsageError("give exactly one of --sigma a,b or --qub l,a")
    if args.sigma:
        k, out = _budget_guard(lambda: clique.find_mate(h, args.sigma, budget=ctx.budget))
        want = {"sigma": list(args.sigma)}
    else:
        l, a = args.qub
        k, out = _budget_guard(lambda: clique.find_qub_mate(h, l, a, budget=ctx.budget))
        want = {"l": l, "a": a}
    if out:
        ctx.emit({"found": None, "budget_exhausted": True, **want}, "budget exhausted")
        return EXIT_BUDGET
    if k is None:
        ctx.emit({"found": False, **want}, "no mate")
        return EXIT_FAIL
    if args.out:
        signmatrix.save_matrix(k, args.out)
    ctx.emit({"found": True, **want, "pair": signmatrix.classify_pair(h, k).to_record(),
              "matrix": k.to_text().splitlines()}, k.to_text())
    return EXIT_OK


def cmd_clique(ctx, args) -> int:
    h = resolve_matrix(ctx, args.H)
    g = clique.build_mate_graph(h, args.sigma)
    print(f"mate graph: {g.vertex_count} vertices", file=sys.stderr)
    rec = {"sigma": list(args.sigma), "vertices": g.vertex_count}
    if args.prescreen:
        passed, out = _budget_guard(lambda: clique.prescreen(g, budget=ctx.budget))
        if out:
            ctx.emit({**rec, "budget_exhausted": True}, "budget exhausted")
            return EXIT_BUDGET
        rec["prescreen"] = passed
        if not passed:
            ctx.emit({**rec, "max_clique": None}, "prescreen: no part holds an n/4-clique")
            return EXIT_OK
    res = clique.max_clique(g, budget=ctx.budget)
    rec.update(max_clique=res.size, exhausted=res.exhausted, nodes=res.nodes)
    text = f"max clique {'>= ' if res.exhausted else ''}{res.size}"
    ctx.emit(rec, text)
    return EXIT_BUDGET if res.exhausted else EXIT_OK


def cmd_classify(ctx, args) -> int:
    say = lambda s: print(s, file=sys.stderr, flush=True)  # noqa: E731
    if args.target == "binary":
        if not args.seed:
            raise UsageError("classify binary needs --seed")
        if args.condition not in search.KINDS:
            raise UsageError(f"binary conditions: {', '.join(search.KINDS)}")
        seed = resolve_code(ctx, args.seed)
        res = search.classify_binary_extensions(seed, args.condition, f_max=args.max_level,
                                                seed_name=args.seed, out_dir=args.out, progress=say)
    else:
        if args.condition not in ("qub", "weak", "weakII"):
            raise UsageError("z4 conditions: qub, weak, weakII")
        res = search.classify_z4_extensions(args.condition, args.m, max_level=args.max_level,
                                            out_dir=args.out, progress=say)
    rec = res.to_record()
    text = "\n".join(f"level {k}: {v}" for k, v in res.counts().items())
    ctx.emit(rec, text)
    return EXIT_OK


def cmd_fixtures(ctx, args) -> int:
    rep = search.verify_fixture_tables()
    lines = [f"{'ok  ' if i.ok else 'FAIL'} {i.name}  {i.detail}" for i in rep.items]
    lines.append(f"{len(rep.items) - len(rep.failures())}/{len(rep.items)} fixtures verified")
    ctx.emit(rep.to_record(), "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_scheme(ctx, args) -> int:
    code = resolve_code(ctx, args.code)
    rep = bounds.verify_association_scheme(code)
    text = f"{'association scheme' if rep.valid else 'not a scheme'}: distances {rep.distances}"
    if rep.failure:
        text += f" ({rep.failure})"
    ctx.emit(rep.to_record(), text)
    return EXIT_OK if rep.valid else EXIT_FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    common.add_argument("--config", help="key=value file (data, budget, threads)")
    common.add_argument("--threads", type=int, help="cap on worker threads")
    common.add_argument("--budget", type=int, help="node budget for clique searches")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="quhadamard", parents=[common],
                                description="Quasi-unbiased and weakly unbiased Hadamard matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="classify a pair, or audit fixtures")
    vs = v.add_subparsers(dest="what", required=True)
    vp = vs.add_parser("pair", parents=[common])
    vp.add_argument("H")
    vp.add_argument("K")
    vp.set_defaults(func=cmd_verify_pair)
    vs.add_parser("fixtures", parents=[common], help="same as 'fixtures verify'").set_defaults(func=cmd_fixtures)

    pa = sub.add_parser("params", parents=[common], help="feasible parameters for order n")
    pa.add_argument("kind", choices=["qub", "weak", "weakII"])
    pa.add_argument("n", type=int)
    pa.set_defaults(func=cmd_params)

    b = sub.add_parser("bounds", parents=[common], help="absolute and LP bounds")
    b.add_argument("kind", choices=["qub", "weakII"])
    b.add_argument("n", type=int)
    b.add_argument("values", type=int, nargs="+", help="alpha for qub; a b for weakII")
    b.set_defaults(func=cmd_bounds)

    t = sub.add_parser("table", parents=[common], help="regenerate a table for n = 4..48")
    t.add_argument("which", choices=["1", "2", "8", "9", "weakIIUB"])
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("search", parents=[common], help="search for a mate of H")
    ss = s.add_subparsers(dest="what", required=True)
    sm = ss.add_parser("mate", parents=[common])
    sm.add_argument("H")
    sm.add_argument("--sigma", type=_pair_arg)
    sm.add_argument("--qub", type=_pair_arg, metavar="l,a")
    sm.add_argument("--out", help="write the mate here")
    sm.set_defaults(func=cmd_search_mate)

    c = sub.add_parser("clique", parents=[common], help="maximum clique of the mate graph")
    c.add_argument("H")
    c.add_argument("--sigma", type=_pair_arg, required=True)
    c.add_argument("--prescreen", action="store_true")
    c.set_defaults(func=cmd_clique)

    cl = sub.add_parser("classify", parents=[common], help="code classifications")
    cl.add_argument("target", choices=["binary", "z4"])
    cl.add_argument("--seed", help="rm13, rm14, rm15, C(H12), ... or a code file")
    cl.add_argument("--condition", required=True, help="F2, weak, weakII (binary); qub, weak, weakII (z4)")
    cl.add_argument("--m", type=int, default=4)
    cl.add_argument("--max-level", type=int)
    cl.add_argument("--out", help="manifest directory (enables resume)")
    cl.set_defaults(func=cmd_classify)

    f = sub.add_parser("fixtures", parents=[common], help="audit the bundled code tables")
    fs = f.add_subparsers(dest="what", required=True)
    fs.add_parser("verify", parents=[common]).set_defaults(func=cmd_fixtures)

    sc = sub.add_parser("scheme", parents=[common], help="association-scheme axioms")
    scs = sc.add_subparsers(dest="what", required=True)
    chk = scs.add_parser("check", parents=[common])
    chk.add_argument("code")
    chk.set_defaults(func=cmd_scheme)
    return p


def run(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    try:
        ctx = Context(args)
        return args.func(ctx, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, signmatrix.SignMatrixError, binary.CodeError, z4mod.Z4Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
