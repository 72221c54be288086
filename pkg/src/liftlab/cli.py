"""``liftlab`` command line.

Exit codes: 0 success, 2 domain error, 3 truncation audit failure
(BoundTooSmall), 4 unparseable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from . import __version__
from .betti import betti_table, strongly_indispensable
from .cm import cm_threshold, is_tangent_cone_cm
from .errors import BoundTooSmall, LiftlabError
from .semigroup import NumericalSemigroup, is_valid_k, lift, parse_generators
from .tangent_cone import KoszulMode, koszul_betti, koszul_betti_with_audit
from .toric import indispensable_binomials, minimal_generators

CACHE_ENV = "LIFTLAB_CACHE"
CACHE_FORMAT_VERSION = 1

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_BOUND = 3
EXIT_PARSE = 4


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def _gens(text: str) -> list[int]:
    try:
        return parse_generators(text)
    except ValueError as exc:
        raise ParseError(f"cannot parse generator list {text!r}: {exc}") from None


def parse_k_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive), ``"a,b,c"`` or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if lo < 1 or hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        ks = [int(x) for x in text.split(",") if x.strip()]
        if not ks or min(ks) < 1:
            raise ValueError
        return ks
    except ValueError:
        raise ParseError(f"cannot parse k range {text!r}") from None


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _binomials_json(bs) -> list[dict]:
    return [
        {"binomial": str(b), "degree": b.s_degree, "exponents": b.to_json()}
        for b in bs
    ]


# -- single-semigroup commands -------------------------------------------------
def cmd_analyze(args) -> int:
    S = NumericalSemigroup(_gens(args.gens))
    mg = minimal_generators(S)
    ind = indispensable_binomials(S)
    cm = is_tangent_cone_cm(S)
    k0 = cm_threshold(S)
    ring = betti_table(S)
    gr = koszul_betti(S, KoszulMode.TANGENT_CONE, args.sdeg_bound)
    strong = strongly_indispensable(S, ring)
    if args.json:
        print(_dump({
            "generators": list(S.generators),
            "apery": S.apery_set(),
            "frobenius": S.frobenius,
            "mingens": _binomials_json(mg),
            "indispensable": _binomials_json(ind),
            "cm": cm.to_json(),
            "k0": k0,
            "betti": ring.to_json(),
            "betti_gr": gr.to_json(),
            "betti_vector": list(ring.vector()),
            "betti_gr_vector": list(gr.vector()),
            "strong": strong.to_json(),
            "characteristic": 0,
        }))
        return EXIT_OK
    out = [
        f"S = {S}",
        f"Apery set (w.r.t. {S.m1}): {S.apery_set()}",
        f"Frobenius: {S.frobenius}",
        f"Minimal generators ({len(mg)}):",
        *(f"  {b}    [deg {b.s_degree}]" for b in mg),
        f"Indispensable ({len(ind)}):",
        *(f"  {b}    [deg {b.s_degree}]" for b in ind),
        f"CM: {'yes' if cm.is_cm else 'no'}, k0: {k0}",
        *(
            f"  witness M={w.M} bestN={w.best_N} deficit={w.deficit} kThreshold={w.k_threshold}"
            for w in cm.witnesses
        ),
        f"Betti (semigroup ring): {_vec(ring.vector())}",
        f"Betti (tangent cone): {_vec(gr.vector())}",
        f"Homogeneous type: {'yes' if ring.vector() == gr.vector() else 'no'}",
        f"Strongly indispensable: {strong.describe()}",
    ]
    print("\n".join(out))
    return EXIT_OK


def cmd_lift(args) -> int:
    S = NumericalSemigroup(_gens(args.gens))
    Sk = lift(S, args.k)
    if args.json:
        print(_dump({"generators": list(S.generators), "k": args.k, "lifted": list(Sk.generators)}))
    else:
        print(Sk.canonical())
    return EXIT_OK


def cmd_mingens(args) -> int:
    S = NumericalSemigroup(_gens(args.gens))
    bs = minimal_generators(S)
    if args.json:
        print(_dump(_binomials_json(bs)))
    else:
        for b in bs:
            print(f"{b}    [deg {b.s_degree}]")
    return EXIT_OK


def cmd_indisp(args) -> int:
    S = NumericalSemigroup(_gens(args.gens))
    bs = indispensable_binomials(S)
    if args.json:
        print(_dump(_binomials_json(bs)))
    else:
        for b in bs:
            print(f"{b}    [deg {b.s_degree}]")
    return EXIT_OK


def cmd_cm(args) -> int:
    S = NumericalSemigroup(_gens(args.gens))
    rep = is_tangent_cone_cm(S, verbose=args.verbose)
    if args.json:
        print(_dump(rep.to_json(verbose=args.verbose)))
        return EXIT_OK
    print(f"CM: {'yes' if rep.is_cm else 'no'}, k0: {rep.k0}")
    for w in rep.witnesses:
        print(f"  witness M={w.M} bestN={w.best_N} deficit={w.deficit} kThreshold={w.k_threshold}")
        if args.verbose:
            for N in w.candidates:
                print(f"    N={N} deg={N.total_degree}")
    return EXIT_OK


def cmd_cm_threshold(args) -> int:
    S = NumericalSemigroup(_gens(args.gens))
    k0 = cm_threshold(S)
    valid = [k for k in range(k0, k0 + 10) if is_valid_k(S, k)]
    if args.json:
        print(_dump({"k0": k0, "valid_from_k0": valid}))
    else:
        print(k0)
        print(f"valid liftings from k0: {','.join(map(str, valid))},...")
    return EXIT_OK


def cmd_betti(args) -> int:
    S = NumericalSemigroup(_gens(args.gens))
    if args.tangent_cone:
        table, audit = koszul_betti_with_audit(S, KoszulMode.TANGENT_CONE, args.sdeg_bound)
        if not audit.ok:
            if args.json:
                print(_dump({"betti": table.to_json(), "audit": audit.to_json()}))
            raise BoundTooSmall(
                f"Euler audit failed; rerun with a larger --sdeg-bound"
            )
    else:
        table = betti_table(S)
        audit = None
    if args.json:
        out = {"betti": table.to_json(), "vector": list(table.vector()), "characteristic": 0}
        if audit is not None:
            out["audit"] = audit.to_json()
        print(_dump(out))
    elif args.format == "csv":
        print("i,sdeg,tdeg,mult" if table.bigraded else "i,b,multiplicity")
        for row in table.csv_rows():
            print(row)
    else:
        print(_vec(table.vector()))
    return EXIT_OK


def cmd_strong(args) -> int:
    S = NumericalSemigroup(_gens(args.gens))
    rep = strongly_indispensable(S)
    if args.json:
        print(_dump(rep.to_json()))
    else:
        print(rep.describe())
    return EXIT_OK


# -- sweep -----------------------------------------------------------------------
def _cache_path(cache_dir: str, gens: tuple, k: int, s_bound) -> str:
    tag = f"v{CACHE_FORMAT_VERSION}_{'-'.join(map(str, gens))}_k{k}"
    if s_bound is not None:
        tag += f"_b{s_bound}"
    return os.path.join(cache_dir, tag + ".json")


def _cache_load(path: str, key: dict) -> Optional[dict]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    if data.get("format_version") != CACHE_FORMAT_VERSION or data.get("key") != key:
        return None
    return data["row"]


def _cache_store(path: str, key: dict, row: dict) -> None:
    directory = os.path.dirname(path)
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump({"format_version": CACHE_FORMAT_VERSION, "key": key, "row": row}, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def compute_row(gens: tuple, k: int, s_bound: Optional[int] = None) -> dict:
    """One sweep row for the k-lifting of ``<gens>``; JSON-ready."""
    S = NumericalSemigroup(gens)
    row = {"k": k, "valid": is_valid_k(S, k)}
    if not row["valid"]:
        return row
    Sk = lift(S, k)
    row["cm"] = is_tangent_cone_cm(Sk).is_cm
    row["threshold_reached"] = k >= cm_threshold(S)
    table, audit = koszul_betti_with_audit(Sk, KoszulMode.TANGENT_CONE, s_bound)
    row["betti_gr"] = table.totals() if audit.ok else None
    row["betti_ring"] = betti_table(Sk).totals()
    return row


def sweep_row(gens: tuple, k: int, s_bound: Optional[int] = None) -> dict:
    cache_dir = os.environ.get(CACHE_ENV)
    if not cache_dir:
        return compute_row(gens, k, s_bound)
    key = {"format_version": CACHE_FORMAT_VERSION, "gens": list(gens), "k": k, "s_bound": s_bound}
    path = _cache_path(cache_dir, gens, k, s_bound)
    row = _cache_load(path, key)
    if row is None:
        row = compute_row(gens, k, s_bound)
        _cache_store(path, key, row)
    return row


def _sweep_worker(job):
    return sweep_row(*job)


def run_sweep(gens, ks, threads: int = 1, s_bound: Optional[int] = None) -> list[dict]:
    gens = tuple(gens)
    jobs = [(gens, k, s_bound) for k in ks]
    if threads <= 1 or len(jobs) <= 1:
        return [_sweep_worker(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_sweep_worker, jobs))


def sweep_csv(rows: list[dict], n: int) -> str:
    header = ["k", "valid", "cm", "threshold_reached"]
    header += [f"beta_gr_{i}" for i in range(1, n + 1)]
    header += [f"beta_ring_{i}" for i in range(1, n)]
    lines = [",".join(header)]
    width = len(header) - 2

    def flag(x):
        return "true" if x else "false"

    for r in rows:
        if not r["valid"]:
            lines.append(",".join([str(r["k"]), "false"] + [""] * width))
            continue
        cells = [str(r["k"]), "true", flag(r["cm"]), flag(r["threshold_reached"])]
        gr = r["betti_gr"]
        if gr is None:
            cells += ["?"] * n
        else:
            cells += [str(x) for x in (gr + [0] * n)[:n]]
        cells += [str(x) for x in (r["betti_ring"] + [0] * n)[: n - 1]]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    gens = tuple(_gens(args.gens))
    ks = parse_k_range(args.k)
    S = NumericalSemigroup(gens)
    k0 = cm_threshold(S)
    t0 = time.perf_counter()
    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    rows = run_sweep(gens, ks, threads=max(1, threads), s_bound=args.sdeg_bound)
    if args.format == "json" or args.json:
        text = _dump({"generators": list(gens), "k0": k0, "rows": rows}) + "\n"
    else:
        text = sweep_csv(rows, S.n)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.timing:
        print(f"elapsed: {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    if any(r["valid"] and r["betti_gr"] is None for r in rows):
        print("BoundTooSmall: tangent-cone Betti numbers failed the Euler audit in some rows",
              file=sys.stderr)
        return EXIT_BOUND
    return EXIT_OK


# -- entry point -------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="liftlab", description="Liftings of numerical semigroups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--gens", required=True, help="generators m_1,...,m_n")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.set_defaults(func=func)
        return sp

    sp = add("analyze", cmd_analyze, "full report for one semigroup")
    sp.add_argument("--sdeg-bound", type=int, default=None)
    sp = add("lift", cmd_lift, "generators of the k-lifting")
    sp.add_argument("-k", type=int, required=True)
    add("mingens", cmd_mingens, "minimal binomial generators of the toric ideal")
    add("indisp", cmd_indisp, "indispensable binomials")
    sp = add("cm", cmd_cm, "Cohen-Macaulayness of the tangent cone")
    sp.add_argument("--verbose", action="store_true", help="list every candidate N")
    add("cm-threshold", cmd_cm_threshold, "least k with CM tangent cone from then on")
    sp = add("betti", cmd_betti, "Betti numbers of K[S] or of its tangent cone")
    sp.add_argument("--tangent-cone", action="store_true")
    sp.add_argument("--sdeg-bound", type=int, default=None)
    sp.add_argument("--format", choices=["vector", "csv"], default="vector")
    add("strong", cmd_strong, "strong indispensability of the minimal resolution")
    sp = add("sweep", cmd_sweep, "tabulate liftings over a range of k")
    sp.add_argument("--k", required=True, help="range a..b or list a,b,c")
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--sdeg-bound", type=int, default=None)
    sp.add_argument("--timing", action="store_true", help="report elapsed time on stderr")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LiftlabError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
