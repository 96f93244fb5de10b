"""Command line entry point: ``permop counts|verify|export|compose|iterate``.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import cellcx, geometry, operadcalc, seqcomb, trees
from .suites import SUITES, run_suite

DEFAULT_SEED = 20240607
MAX_N = 5


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    n: int = 3
    space: str = "both"
    suite: str = "all"
    format: str = "json"
    out: str | None = None
    seed: int = DEFAULT_SEED
    per_k: bool = False
    allow_large: bool = False
    subdivision: str | None = None
    threads: int = 1

    def validate(self, max_n: int = MAX_N) -> None:
        if not 1 <= self.n <= max_n:
            raise UsageError(f"-n must be between 1 and {max_n}")
        if self.suite != "all" and self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}")


def _threads_default() -> int:
    try:
        return max(1, int(os.environ.get("PERMOP_THREADS", "1")))
    except ValueError:
        return 1


# ------------------------------------------------------------------ counts


def counts_report(cfg: RunConfig) -> dict:
    n = cfg.n
    rep: dict = {"n": n}
    if cfg.space in ("milgram", "both"):
        rep["milgram"] = seqcomb.build_J_n(n).f_vector()
    if cfg.space in ("cact", "both"):
        by_deg = trees.trees_by_degree(range(1, n + 1))
        rep["cact"] = [len(by_deg[d]) for d in range(n)]
    desc = tuple(range(n, 0, -1))
    if n >= 2:
        rep["top_cells_per_sigma"] = {"sigma": "".join(map(str, desc)), "count": len(trees.T_sigma(desc, n - 1)),
                                      "double_factorial": trees.double_factorial(2 * n - 3)}
    if cfg.per_k and n >= 2:
        ft = trees.face_top_bijection(desc)
        rep["per_k"] = {str(k): v for k, v in sorted(ft.domain_sizes.items())}
        rep["per_k_total"] = sum(ft.domain_sizes.values())
        rep["face_top_bijective"] = ft.bijective
        dec = trees.decomposition(desc)
        rep["decomposition_pieces"] = {str(k): len(v) for k, v in sorted(dec.items())}
    return rep


def _print_counts(rep: dict, out) -> None:
    print(f"n = {rep['n']}", file=out)
    for space in ("milgram", "cact"):
        if space in rep:
            f = rep[space]
            print(f"{space}: " + " / ".join(map(str, f)) + f"  (total {sum(f)})", file=out)
    if "top_cells_per_sigma" in rep:
        t = rep["top_cells_per_sigma"]
        print(f"top cells of T_{t['sigma']}: {t['count']} ((2n-3)!! = {t['double_factorial']})", file=out)
    if "per_k" in rep:
        for k, v in rep["per_k"].items():
            print(f"k={k}: {v}", file=out)
        print(f"total: {rep['per_k_total']}", file=out)
        print(f"face/top bijection: {'bijective' if rep['face_top_bijective'] else 'NOT bijective'}", file=out)


def cmd_counts(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    cfg.validate()
    rep = counts_report(cfg)
    if cfg.format == "json":
        print(json.dumps(rep, indent=1), file=out)
    else:
        _print_counts(rep, out)
    return 0


# ------------------------------------------------------------------ verify


def _run(args):
    name, n, seed, allow_large = args
    return run_suite(name, n, seed, allow_large).to_dict()


def cmd_verify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    cfg.validate()
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    jobs = [(s, cfg.n, cfg.seed, cfg.allow_large) for s in names]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(_run, jobs))
    else:
        results = [_run(j) for j in jobs]
    ok = all(r["pass"] for r in results)
    report = {"n": cfg.n, "seed": cfg.seed, "pass": ok, "suites": results}
    text = json.dumps(report, indent=1, default=str)
    _emit(text, cfg.out, out)
    return 0 if ok else 1


# ------------------------------------------------------------------ export


def _emit(text: str, path: str | None, out) -> None:
    if path is None:
        out.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_export(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    if cfg.subdivision:
        sigma = seqcomb.NrSequence.parse(cfg.subdivision)
        if len(sigma) > 4:
            raise UsageError("geometry export requires n <= 4")
        if cfg.format == "off":
            text = geometry.export_off(sigma)
        elif cfg.format == "json":
            text = geometry.export_json(sigma)
        else:
            raise UsageError("subdivision export supports --format off|json")
    elif cfg.format == "off":
        cfg.validate(4)
        text = geometry.export_off(n=cfg.n)
    else:
        cfg.validate()
        if cfg.space == "both":
            raise UsageError("export needs --space milgram or --space cact")
        if cfg.space == "milgram":
            cx = cellcx.build_milgram(cfg.n)
        else:
            cx = cellcx.build_cact(cfg.n, allow_large=cfg.allow_large)
        text = cx.to_json() if cfg.format == "json" else cx.to_csv()
    _emit(text, cfg.out, out)
    return 0


# ------------------------------------------------------------------- operad


def cmd_compose(u: str, i: int, v: str, out=None) -> int:
    out = out or sys.stdout
    fs = operadcalc.compose(u, i, v)
    for line in fs.lines():
        print(line, file=out)
    return 0


def cmd_iterate(n: int, side: str, out=None) -> int:
    out = out or sys.stdout
    if not 2 <= n <= 6:
        raise UsageError("-n must be between 2 and 6")
    rep = operadcalc.dyer_lashof_right(n) if side == "right" else operadcalc.dyer_lashof_left(n)
    for line in rep.chain.lines():
        print(line, file=out)
    print(f"# support {len(rep.chain)}, expected {len(rep.expected)}, {'pass' if rep.ok else 'FAIL'}", file=out)
    return 0 if rep.ok else 1


# --------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="permop", description="Permutahedral cell models of little 2-cubes.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_choices, fmt_default):
        sp.add_argument("-n", type=int, default=3)
        sp.add_argument("--space", choices=["milgram", "cact", "both"], default="both")
        sp.add_argument("--format", choices=fmt_choices, default=fmt_default)
        sp.add_argument("--out", default=None)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--allow-large", action="store_true")
        sp.add_argument("--threads", type=int, default=None, help="worker processes (default: PERMOP_THREADS or 1)")

    c = sub.add_parser("counts", help="graded cell counts and decomposition sizes")
    common(c, ["text", "json"], "text")
    c.add_argument("--per-k", action="store_true")

    v = sub.add_parser("verify", help="run invariant suites, JSON report")
    common(v, ["json"], "json")
    v.add_argument("--suite", default="all", help="one of " + ", ".join(SUITES + ("all",)))

    e = sub.add_parser("export", help="write complexes or geometry")
    common(e, ["off", "json", "csv"], "json")
    e.add_argument("--subdivision", default=None, help="permutation, e.g. 4321")

    k = sub.add_parser("compose", help="u o_i v on cactus words")
    k.add_argument("u")
    k.add_argument("i", type=int)
    k.add_argument("v")

    it = sub.add_parser("iterate", help="iterated two-lobe composition")
    it.add_argument("-n", type=int, default=3)
    it.add_argument("--side", choices=["right", "left"], default="right")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "compose":
            return cmd_compose(args.u, args.i, args.v)
        if args.command == "iterate":
            return cmd_iterate(args.n, args.side)
        cfg = RunConfig(
            n=args.n,
            space=args.space,
            format=args.format,
            out=args.out,
            seed=args.seed,
            allow_large=args.allow_large,
            threads=args.threads if args.threads is not None else _threads_default(),
        )
        if args.command == "counts":
            cfg.per_k = args.per_k
            return cmd_counts(cfg)
        if args.command == "verify":
            cfg.suite = args.suite
            return cmd_verify(cfg)
        cfg.subdivision = args.subdivision
        return cmd_export(cfg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"permop: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
