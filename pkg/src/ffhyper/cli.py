"""Command-line interface: ``ffhyper {field,eval,verify,bench,export}``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 capacity or I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .characters import parse_character
from .errors import CacheError, CapacityError, DomainError, FFHyperError
from .field import parse_element, prime_power
from .fieldcache import default_cache_dir, ensure_field_cache, load_field

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
SCHEMA_VERSION = 1
SUITE_GROUPS = {
    "reductions": ("reduction_split", "reduction_cov1", "reduction_cov2",
                   "eps_reduction", "equal_reduction"),
    "genfunc": ("genfunc_forward", "genfunc_reversed", "genfunc_local"),
}


class UsageError(FFHyperError):
    """Bad command-line input that argparse itself cannot detect."""


@dataclass
class RunConfig:
    """Everything a command needs, with paths resolved; saved and loaded as JSON."""

    command: str
    options: dict = field(default_factory=dict)
    cache_dir: str = ""
    jobs: int = 1
    fmt: str = "json"

    def to_file(self, path: Path | str) -> None:
        Path(path).write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")

    @classmethod
    def from_file(cls, path: Path | str) -> "RunConfig":
        data = json.loads(Path(path).read_text())
        return cls(**data)


_GLOBAL_KEYS = {"command", "cache_dir", "jobs", "fmt", "config", "save_config", "subcommand"}
_PATH_KEYS = {"out", "plot"}


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    command = ns.command
    if command == "export":
        command = f"export-{ns.subcommand}"
    options = {}
    for key, val in vars(ns).items():
        if key in _GLOBAL_KEYS:
            continue
        if key in _PATH_KEYS and val is not None:
            val = str(Path(val).expanduser().resolve())
        options[key] = val
    cache = Path(ns.cache_dir).expanduser().resolve() if ns.cache_dir else default_cache_dir()
    return RunConfig(command=command, options=options, cache_dir=str(cache),
                     jobs=ns.jobs, fmt=ns.fmt or "")


# -- parsing helpers -------------------------------------------------------

def _field(cfg: RunConfig, q: int):
    p, r = prime_power(q)
    return load_field(p, r, cfg.cache_dir)


def _split(text: str | None) -> list[str]:
    if text is None or text.strip() == "":
        return []
    return [s for s in (part.strip() for part in text.split(",")) if s]


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in _split(text)]
    except ValueError as exc:
        raise UsageError(f"expected a comma separated list of integers, got {text!r}") from exc


def _suite(text: str) -> list[str]:
    from .identities import IDENTITIES
    names: list[str] = []
    for part in _split(text):
        if part == "all":
            names.extend(IDENTITIES)
        elif part in SUITE_GROUPS:
            names.extend(SUITE_GROUPS[part])
        elif part in IDENTITIES:
            names.append(part)
        else:
            raise UsageError(f"unknown suite {part!r}; choose all, "
                             f"{', '.join(SUITE_GROUPS)} or one of {', '.join(IDENTITIES)}")
    if not names:
        raise UsageError("empty suite")
    return list(dict.fromkeys(names))


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class _Output:
    """Text sink that is either stdout or a file opened on entry."""

    def __init__(self, path: str | None):
        self.path = path
        self._fh = None

    def __enter__(self):
        if self.path is None:
            return sys.stdout
        Path(self.path).parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self.path, "w", newline="")
        return self._fh

    def __exit__(self, *exc):
        if self._fh is not None:
            self._fh.close()
        return False


def _plot_path(opts: dict) -> Path | None:
    if opts.get("no_plot"):
        return None
    if opts.get("plot"):
        return Path(opts["plot"])
    if opts.get("out"):
        return Path(opts["out"]).with_suffix(".png")
    return None


# -- commands --------------------------------------------------------------

def cmd_field(cfg: RunConfig) -> int:
    o = cfg.options
    res = ensure_field_cache(o["p"], o["r"], cfg.cache_dir)
    if cfg.fmt == "human":
        msg = {"created": "cache created", "unchanged": "cache valid, unchanged",
               "rebuilt": "cache rebuilt"}[res.status]
        print(f"{msg}: {res.path} (sha256 {res.checksum})")
    else:
        print(_dumps({"p": o["p"], "r": o["r"], "q": res.ctx.q, "status": res.status,
                      "path": str(res.path), "checksum": res.checksum,
                      "modulus": list(res.ctx.modulus), "generator": res.ctx.generator}))
    return EXIT_OK


def cmd_eval(cfg: RunConfig) -> int:
    from .hypergeometric import SeriesParams, lauricella_fa
    o = cfg.options
    ctx = _field(cfg, o["q"])
    A = parse_character(ctx, o["A"])
    Bs = [parse_character(ctx, s) for s in _split(o["B"])]
    Cs = [parse_character(ctx, s) for s in _split(o["C"])]
    xs = [parse_element(ctx, s) for s in _split(o["x"])]
    n = o.get("n") or len(Bs)
    if not (len(Bs) == len(Cs) == len(xs) == n) or n < 1:
        raise UsageError(f"--B, --C and --x must each list n={n} >= 1 entries")
    params = SeriesParams(A, tuple(Bs), tuple(Cs), tuple(xs))
    routes = ["direct", "charsum"] if o["route"] == "both" else [o["route"]]
    values = {r: lauricella_fa(params, route=r) for r in routes}
    agree = len(set(values.values())) == 1
    if cfg.fmt == "human":
        for r, v in values.items():
            z = complex(v)
            print(f"{r:8s} {' '.join(v.serialize())}   ~ {z.real:.10g}{z.imag:+.10g}i")
        if len(values) > 1:
            print(f"agreement: {str(agree).lower()}")
    elif cfg.fmt == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["route", "value", "re", "im"])
        for r, v in values.items():
            z = complex(v)
            w.writerow([r, " ".join(v.serialize()), repr(z.real), repr(z.imag)])
    else:
        out = {"q": ctx.q, "n": n, "params": params.to_json(), "values": {
            r: {"value": v.serialize(), "complex": [complex(v).real, complex(v).imag]}
            for r, v in values.items()}}
        if len(values) > 1:
            out["agree"] = agree
        print(_dumps(out))
    return EXIT_OK if agree else EXIT_FAIL


def cmd_verify(cfg: RunConfig) -> int:
    from .identities import sweep
    o = cfg.options
    suite = _suite(o["suite"])
    qs = _int_list(o["q"])
    if not qs:
        raise UsageError("--q needs at least one field order")
    for q in qs:
        _field(cfg, q)
    if o["n"] < 1:
        raise UsageError("--n must be at least 1")
    human = cfg.fmt == "human"
    with _Output(o.get("out")) as fh:
        def emit(rep):
            if human:
                status = "PASS" if rep.equal else "FAIL"
                fh.write(f"{status} {rep.identity_id} q={rep.q} n={rep.n} "
                         f"{_dumps(rep.to_json()['params'])} {_dumps(rep.extras)}\n")
            else:
                fh.write(_dumps(rep.to_json(timings=o["timings"])) + "\n")

        result = sweep(suite, qs, o["n"], mode="exhaustive" if o["exhaustive"] else "sample",
                       count=o["count"], seed=o["seed"], jobs=cfg.jobs, budget=o["budget"],
                       fail_fast=o["fail_fast"], form=o["form"], float_check=not o["no_float"],
                       keep_reports=False, on_report=emit)
        summary = result.summary()
        summary.update({"schema_version": SCHEMA_VERSION, "form": o["form"], "qs": qs,
                        "n": o["n"], "seed": o["seed"],
                        "mode": "exhaustive" if o["exhaustive"] else "sample"})
        if human:
            for t in summary["identities"]:
                fh.write(f"{t['identity']}: {t['passed']}/{t['checked']} passed\n")
            fh.write("ALL PASS\n" if result.ok else "FAILURES\n")
        else:
            fh.write(_dumps(summary) + "\n")
    plot = _plot_path(o)
    if plot is not None:
        from .plotting import plot_verify
        plot_verify(summary["identities"], plot,
                    title=f"{o['form']} forms, q={','.join(map(str, qs))}, n={o['n']}")
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_bench(cfg: RunConfig) -> int:
    from .bench import run_bench
    o = cfg.options
    if o["n"] < 1:
        raise UsageError("--n must be at least 1")
    if o["count"] < 1:
        raise UsageError("--count must be at least 1")
    _field(cfg, o["q"])
    res = run_bench(o["q"], o["n"], o["count"], o["seed"], o["repeat"])
    with _Output(o.get("out")) as fh:
        csv.writer(fh, lineterminator="\n").writerows(res.csv_rows())
    print(f"q={res.q} n={res.n} instances={len(res.rows)} direct={res.direct_total * 1e3:.2f}ms "
          f"charsum={res.charsum_total * 1e3:.2f}ms setup={res.setup_s * 1e3:.2f}ms "
          f"agree={str(res.all_agree).lower()}", file=sys.stderr)
    plot = _plot_path(o)
    if plot is not None:
        from .plotting import plot_bench
        plot_bench([r.direct_s for r in res.rows], [r.charsum_s for r in res.rows], plot,
                   title=f"q={res.q}, n={res.n}, {len(res.rows)} instances")
    return EXIT_OK if res.all_agree else EXIT_FAIL


def cmd_export_binom(cfg: RunConfig) -> int:
    from .charsums import build_binom_table
    o = cfg.options
    ctx = _field(cfg, o["q"])
    table = build_binom_table(ctx)
    m = ctx.order
    with _Output(o.get("out")) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["row", "col", "value", "re", "im"])
        for i in range(m):
            for j in range(m):
                v = table.lookup(i, j)
                z = complex(v)
                w.writerow([i, j, " ".join(v.serialize()), repr(z.real), repr(z.imag)])
    return EXIT_OK


COMMANDS = {"field": cmd_field, "eval": cmd_eval, "verify": cmd_verify,
            "bench": cmd_bench, "export-binom": cmd_export_binom}


# -- argument parsing ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ffhyper", description=(
        "Exact finite-field hypergeometric functions and identity verification."))
    ap.add_argument("--cache-dir", help="field cache directory (default $FFHYPER_CACHE_DIR "
                                        "or ~/.cache/ffhyper)")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    ap.add_argument("--format", dest="fmt", choices=("json", "csv", "human"),
                    help="output format (JSON and CSV are the stable contract)")
    ap.add_argument("--config", help="run a configuration saved with --save-config")
    ap.add_argument("--save-config", help="write the resolved configuration to this file")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("field", help="build or validate the cached tables of F_{p^r}")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, default=1)

    p = sub.add_parser("eval", help="evaluate F_A^(n)(A; B; C | x)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--A", required=True, help="top character, e.g. chi1")
    p.add_argument("--B", required=True, help="comma separated, e.g. chi1,chi2")
    p.add_argument("--C", required=True)
    p.add_argument("--x", required=True, help="comma separated element indices or polynomials")
    p.add_argument("--route", choices=("direct", "charsum", "telescoped", "both"), default="both")

    p = sub.add_parser("verify", help="check identities over sampled or all instances")
    p.add_argument("--suite", default="all")
    p.add_argument("--q", required=True, help="comma separated field orders")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--count", type=int, default=500, help="instances per identity and q")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--budget", type=int, help="refuse sweeps larger than this")
    p.add_argument("--fail-fast", action="store_true")
    p.add_argument("--form", choices=("corrected", "literal"), default="corrected")
    p.add_argument("--no-float", action="store_true", help="skip the floating point cross-check")
    p.add_argument("--timings", action="store_true", help="include elapsed seconds per check")
    p.add_argument("--out", help="JSON-lines output file (default stdout)")
    p.add_argument("--plot", help="pass/fail figure (default next to --out)")
    p.add_argument("--no-plot", action="store_true")

    p = sub.add_parser("bench", help="time the direct and charsum routes")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--repeat", type=int, default=3, help="best-of repetitions per instance")
    p.add_argument("--out", help="CSV output file (default stdout)")
    p.add_argument("--plot", help="timing figure (default next to --out)")
    p.add_argument("--no-plot", action="store_true")

    p = sub.add_parser("export", help="export precomputed tables")
    ex = p.add_subparsers(dest="subcommand", required=True)
    b = ex.add_parser("binom", help="all binomial coefficients of F_q as CSV")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--out")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if ns.config:
            cfg = RunConfig.from_file(ns.config)
        elif ns.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        else:
            cfg = _config_from_args(ns)
        if ns.save_config:
            cfg.to_file(ns.save_config)
        if cfg.command not in COMMANDS:
            raise UsageError(f"unknown command {cfg.command!r}")
        if not cfg.fmt:
            cfg.fmt = "human" if cfg.command == "field" else "json"
        return COMMANDS[cfg.command](cfg)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, CacheError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        if ns.config:
            print(f"error: malformed configuration {ns.config}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        raise


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
