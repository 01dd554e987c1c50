"""Command-line front end: regenerate figure data as CSV and run the checks.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
Every CSV is written atomically and accompanied by ``<out>.manifest.json``.
"""

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field
from math import log, log10

import numpy as np

from . import __version__, cramer, gaussian, primes, series, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

FIGURE_KINDS = ("motivation", "convergence", "gaps", "hyperbolas", "shifted", "loglog")
SIGN_NAMES = {1: "positive", -1: "negative", 0: "zero"}


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    parameters: dict = field(default_factory=dict)
    seed: int | None = None
    output_path: str = ""
    tool_version: str = __version__


def fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, header, rows, manifest: RunManifest):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    _write_atomic(path, buf.getvalue())
    manifest.output_path = str(path)
    _write_atomic(f"{path}.manifest.json", json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n")


def parse_checkpoints(text):
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"bad checkpoint list {text!r}") from None
    if not values:
        raise UsageError("empty checkpoint list")
    return [int(v) if v.is_integer() else v for v in values]


def default_checkpoints(top):
    """Powers of ten below ``top``, then ``top`` itself."""
    out = []
    k = 1
    while 10**k < top:
        out.append(10**k)
        k += 1
    out.append(top)
    return out


# figure -------------------------------------------------------------------


def _log10_abs(d):
    return "" if d == 0 else log10(abs(d))


def figure_rows(kind, limit_n):
    table = primes.table_with_count(limit_n + 1)
    s = series.build_series(table, limit_n)
    n = s.n.tolist()
    if kind in ("motivation", "loglog"):
        diff = s.diff.tolist()
        signs = [SIGN_NAMES[v] for v in s.sign.tolist()]
        if kind == "motivation":
            header = ["n", "log10_n", "abs_diff", "log10_abs_diff", "sign"]
            rows = [(k, log10(k), abs(d), _log10_abs(d), sg) for k, d, sg in zip(n, diff, signs)]
        else:
            header = ["n", "log10_n", "log10_abs_corrected_diff", "sign"]
            rows = [(k, log10(k), _log10_abs(d), sg) for k, d, sg in zip(n, diff, signs)]
    elif kind == "convergence":
        header = ["n", "key_ratio", "expansion_value"]
        rows = [(k, r, series.expansion_value(k) if k >= 3 else "") for k, r in zip(n, s.scaled_ratio.tolist())]
    elif kind == "gaps":
        header = ["n", "log_n", "scaled_gap_value", "gap"]
        _, values = series.scaled_gap_series(table, limit_n)
        rows = zip(n, s.log_n.tolist(), values.tolist(), s.gap.tolist())
    elif kind == "hyperbolas":
        header = ["n", "log_n", "uncorrected_diff", "gap"]
        _, values = series.uncorrected_diff(table, limit_n)
        rows = zip(n, s.log_n.tolist(), values.tolist(), s.gap.tolist())
    elif kind == "shifted":
        header = ["n", "log_n", "corrected_diff", "gap", "sign"]
        signs = [SIGN_NAMES[v] for v in s.sign.tolist()]
        rows = zip(n, s.log_n.tolist(), s.diff.tolist(), s.gap.tolist(), signs)
    else:
        raise UsageError(f"unknown figure kind {kind!r}")
    return header, rows


def cmd_figure(args):
    if args.limit_n < 10:
        raise UsageError("--limit-n must be >= 10")
    header, rows = figure_rows(args.kind, args.limit_n)
    manifest = RunManifest(command=f"figure {args.kind}", parameters={"limit_n": args.limit_n})
    write_csv(args.out, header, rows, manifest)
    return EXIT_OK


# cramer -------------------------------------------------------------------


def _seeds(args):
    if args.seeds < 1:
        raise UsageError("--seeds must be >= 1")
    return list(range(args.seed, args.seed + args.seeds))


def cmd_cramer(args):
    params = {"limit": args.limit, "variant": args.variant}
    if args.action == "simulate":
        seq = cramer.generate(cramer.CramerConfig(args.limit, args.seed, args.variant))
        rows = ((i, v) for i, v in enumerate(seq.values.tolist(), start=1))
        manifest = RunManifest("cramer simulate", params, seed=args.seed)
        write_csv(args.out, ["index", "value"], rows, manifest)
    elif args.action == "error-sweep":
        checkpoints = parse_checkpoints(args.checkpoints) if args.checkpoints else default_checkpoints(args.limit)
        if max(checkpoints) > args.limit:
            raise UsageError("checkpoints must not exceed --limit")
        if min(checkpoints) < 2:
            raise UsageError("checkpoints must be >= 2")
        rows = []
        for s in _seeds(args):
            seq = cramer.generate(cramer.CramerConfig(args.limit, s, args.variant))
            for x, e in zip(checkpoints, cramer.error_sweep(seq, args.alpha, checkpoints)):
                rows.append((s, x, args.alpha, e))
        params.update(alpha=args.alpha, checkpoints=checkpoints, seeds=args.seeds)
        manifest = RunManifest("cramer error-sweep", params, seed=args.seed)
        write_csv(args.out, ["seed", "x", "alpha", "error"], rows, manifest)
    else:  # figure
        seq = cramer.generate(cramer.CramerConfig(args.limit, args.seed, args.variant))
        max_n = len(seq.values) - 1
        if max_n < 2:
            raise UsageError("realization too short; raise --limit")
        s = series.build_series(cramer.as_prime_table(seq), max_n)
        rows = (
            (k, r, d, _log10_abs(d), SIGN_NAMES[sg])
            for k, r, d, sg in zip(s.n.tolist(), s.scaled_ratio.tolist(), s.diff.tolist(), s.sign.tolist())
        )
        manifest = RunManifest("cramer figure", params, seed=args.seed)
        write_csv(args.out, ["n", "key_ratio", "corrected_diff", "log10_abs_corrected_diff", "sign"], rows, manifest)
    return EXIT_OK


# gaussian -----------------------------------------------------------------


def _gauss_checkpoints(args):
    cps = parse_checkpoints(args.checkpoints) if args.checkpoints else default_checkpoints(args.max_norm)
    if max(cps) > args.max_norm or min(cps) < 2:
        raise UsageError("checkpoints must lie in [2, --max-norm]")
    return cps


def fmt_x(x):
    return int(x) if float(x).is_integer() else x


def cmd_gaussian(args):
    if args.max_norm < 2:
        raise UsageError("--max-norm must be >= 2")
    params = {"max_norm": args.max_norm}
    if args.action == "model-walk":
        checkpoints = _gauss_checkpoints(args)
        rows = []
        for s in _seeds(args):
            sample = gaussian.generate_model(s, args.max_norm)
            rows.extend((s, x, gaussian.model_walk(sample, x)) for x in checkpoints)
        params.update(checkpoints=checkpoints, seeds=args.seeds)
        write_csv(args.out, ["seed", "x", "X"], rows, RunManifest("gaussian model-walk", params, seed=args.seed))
        return EXIT_OK

    gp = gaussian.enumerate_primes(args.max_norm)
    if args.action == "enumerate":
        rows = zip(gp.re.tolist(), gp.im.tolist(), gp.norm.tolist(), gp.angle.tolist())
        write_csv(args.out, ["re", "im", "norm", "angle"], rows, RunManifest("gaussian enumerate", params))
    elif args.action == "walk":
        checkpoints = _gauss_checkpoints(args)
        rows = []
        for cp in gaussian.walk(gp, args.exponent, checkpoints):
            rows.append((fmt_x(cp.x), cp.sum_real, cp.count, cp.x**0.6, cp.x / log(cp.x)))
        params.update(exponent=args.exponent, checkpoints=checkpoints)
        write_csv(
            args.out, ["x", "sum_real", "count", "x_pow_06", "x_over_logx"], rows,
            RunManifest("gaussian walk", params),
        )
    elif args.action == "sectors":
        k = args.sectors_k
        if k < 1:
            raise UsageError("--sectors-k must be >= 1")
        width = 2 * np.pi / k
        rows = []
        for j in range(k):
            lo, hi = j * width, min((j + 1) * width, 2 * np.pi)
            rows.append((j, lo, hi, gaussian.sector_count(gp, args.max_norm, lo, hi)))
        params.update(sectors_k=k)
        write_csv(args.out, ["k", "lo", "hi", "count"], rows, RunManifest("gaussian sectors", params))
    elif args.action == "fourth":
        checkpoints = _gauss_checkpoints(args)
        rows = [(fmt_x(x), gaussian.fourth_power_sum(gp, x)) for x in checkpoints]
        params.update(checkpoints=checkpoints)
        write_csv(args.out, ["x", "sum"], rows, RunManifest("gaussian fourth", params))
    return EXIT_OK


# verify -------------------------------------------------------------------


def cmd_verify(args):
    def progress(res):
        print(res.line(), flush=True)

    results = verify.run_suite(args.suite, progress=progress)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


# parser -------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="primecurtains", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="series data behind the prime-sum figures")
    fig.add_argument("kind", choices=FIGURE_KINDS)
    fig.add_argument("--limit-n", type=int, default=10**5, help="largest index n (default: 100000)")
    fig.add_argument("--out", required=True, help="output CSV path")
    fig.set_defaults(func=cmd_figure)

    cr = sub.add_parser("cramer", help="Cramér random model runs")
    cr.add_argument("action", choices=("simulate", "error-sweep", "figure"))
    cr.add_argument("--limit", type=int, default=10**5, help="largest candidate value (default: 100000)")
    cr.add_argument("--seed", type=int, default=0, help="seed, or first seed of a sweep (default: 0)")
    cr.add_argument("--seeds", type=int, default=20, help="number of consecutive seeds for error-sweep (default: 20)")
    cr.add_argument("--alpha", type=float, default=0.0, help="power in sum p^alpha (default: 0)")
    cr.add_argument("--checkpoints", help="comma list of x values (default: powers of 10 up to --limit)")
    cr.add_argument(
        "--variant", choices=cramer.VARIANTS, default=None,
        help="model variant (default: classic for error-sweep, modified_odd otherwise)",
    )
    cr.add_argument("--out", required=True, help="output CSV path")
    cr.set_defaults(func=cmd_cramer)

    ga = sub.add_parser("gaussian", help="Gaussian-prime statistics")
    ga.add_argument("action", choices=("enumerate", "walk", "sectors", "fourth", "model-walk"))
    ga.add_argument("--max-norm", type=int, default=10**4, help="norm bound (default: 10000)")
    ga.add_argument("--exponent", type=float, default=4.0, help="exponent n in exp(i n theta) (default: 4)")
    ga.add_argument("--sectors-k", type=int, default=8, help="number of equal sectors of the circle (default: 8)")
    ga.add_argument("--checkpoints", help="comma list of norm cutoffs (default: powers of 10 up to --max-norm)")
    ga.add_argument("--seed", type=int, default=0, help="first model seed (default: 0)")
    ga.add_argument("--seeds", type=int, default=1, help="number of consecutive model seeds (default: 1)")
    ga.add_argument("--out", required=True, help="output CSV path")
    ga.set_defaults(func=cmd_gaussian)

    ve = sub.add_parser("verify", help="run the acceptance checks")
    ve.add_argument("suite", nargs="?", default="all", choices=("series", "cramer", "gaussian", "numerics", "all"))
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "variant", "unset") is None:
        args.variant = "classic" if args.action == "error-sweep" else "modified_odd"
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
