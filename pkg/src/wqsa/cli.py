"""Command-line front end: ``wqsa run | sweep | verify | encode``.

Single runs print one JSON object per line; sweeps print CSV.  Floats are
printed with 12 significant digits, so identical flags give byte-identical
output.  Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, fields

from . import codebook, verify
from .analysis import angles_for, speedup_table, theory_residual
from .engine import SearchConfig, Variant, run_search
from .errors import DomainError
from .haar import index_to_scale, scale_to_index

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SWEEP_HEADER = "n,lambda,L,N1,m_wqsa,m_grover,ratio,sqrtL"


def fmt_float(x: float) -> str:
    return f"{x:.12g}"


def _round12(x):
    return float(fmt_float(x)) if isinstance(x, float) else x


@dataclass(frozen=True)
class RunRecord:
    n: int
    variant: str
    k: int | None
    lambda_: int | None
    j: int | None
    target: int
    m_star: int
    p_star: float
    oracle_calls: int
    theory_residual: float | None
    wall_time_ms: float | None

    @staticmethod
    def field_names() -> list[str]:
        return [f.name.rstrip("_") for f in fields(RunRecord)]

    def to_dict(self) -> dict:
        return {key.rstrip("_"): _round12(v) for key, v in asdict(self).items()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def to_csv_row(self) -> str:
        cells = []
        for v in self.to_dict().values():
            if v is None:
                cells.append("")
            elif isinstance(v, float):
                cells.append(fmt_float(v))
            else:
                cells.append(str(v))
        return ",".join(cells)

    @classmethod
    def from_dict(cls, data: dict) -> "RunRecord":
        return cls(**{f.name: data[f.name.rstrip("_")] for f in fields(cls)})

    @classmethod
    def from_csv_row(cls, row: str) -> "RunRecord":
        data = {}
        for f, cell in zip(fields(cls), row.split(",")):
            if cell == "":
                data[f.name] = None
            elif f.name in ("variant",):
                data[f.name] = cell
            elif f.name in ("p_star", "theory_residual", "wall_time_ms"):
                data[f.name] = float(cell)
            else:
                data[f.name] = int(cell)
        return cls(**data)


class UsageError(Exception):
    pass


def parse_lambdas(text: str, n: int) -> list[int]:
    """``"all"``, ``"a..b"``, or a comma list such as ``"2,4,7"``."""
    text = text.strip()
    if text == "all":
        return list(range(1, n + 1))
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                a, b = part.split("..", 1)
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"cannot parse lambda list {text!r}") from None
    if any(lam < 1 for lam in out):
        raise UsageError("lambdas must be >= 1")
    return sorted(set(out))


def run_record(args: argparse.Namespace, out=sys.stdout, err=sys.stderr) -> RunRecord:
    variant = Variant(args.variant)
    lam = j = k = None
    if variant is Variant.WQSA:
        if args.k is not None:
            if args.lam is not None or args.j is not None:
                raise UsageError("give either --k or --lambda/--j, not both")
            k = args.k
            idx = index_to_scale(args.n, k)
            lam, j = idx.lam, idx.j
        elif args.lam is not None and args.j is not None:
            lam, j = args.lam, args.j
            k = scale_to_index(lam, j)
        else:
            raise UsageError("wqsa needs --k or both --lambda and --j")
    config = SearchConfig(
        args.n, args.target, variant, k if k is not None else 0, args.max_iterations
    )
    inside = variant is Variant.GROVER or index_to_scale(args.n, config.k).contains(args.target)
    if not inside:
        print(
            f"warning: target {args.target} lies outside the block selected by k={k}; "
            "its probability stays 0",
            file=err,
        )
    start = time.perf_counter()
    trace = run_search(config)
    elapsed = (time.perf_counter() - start) * 1e3
    residual = theory_residual(trace, angles_for(config)) if inside else None
    return RunRecord(
        n=args.n,
        variant=variant.value,
        k=k,
        lambda_=lam,
        j=j,
        target=args.target,
        m_star=trace.m_star,
        p_star=trace.p_star,
        oracle_calls=trace.steps[trace.m_star].oracle_calls,
        theory_residual=residual,
        wall_time_ms=elapsed if args.timing else None,
    )


def cmd_run(args, out=sys.stdout, err=sys.stderr) -> int:
    record = run_record(args, out, err)
    print(record.to_json(), file=out)
    return EXIT_OK


def cmd_sweep(args, out=sys.stdout, err=sys.stderr) -> int:
    lambdas = parse_lambdas(args.lambdas, args.n)
    keep = [lam for lam in lambdas if lam <= args.n]
    rows = {r.lam: r for r in speedup_table(args.n, keep, j=args.j)} if keep else {}
    print(SWEEP_HEADER, file=out)
    for lam in lambdas:
        if lam not in rows:
            print(f"# skipped lambda={lam} > n", file=out)
            continue
        r = rows[lam]
        cells = [r.n, r.lam, r.L, r.n1, r.m_wqsa, r.m_grover, fmt_float(r.ratio), fmt_float(r.sqrtL)]
        print(",".join(str(c) for c in cells), file=out)
    return EXIT_OK


def cmd_verify(args, out=sys.stdout, err=sys.stderr, transform=None) -> int:
    kw = {} if transform is None else {"transform": transform}
    if args.max_n is not None:
        kw.update(
            max_dense_n=min(args.max_n, 10),
            max_residual_n=args.max_n,
            max_stationary_n=min(args.max_n, 8),
        )
    results = verify.run_all(samples=args.samples, seed=args.seed, **kw)
    for r in results:
        print(r.line(), file=out)
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"failed suites: {', '.join(failed)}", file=out)
        return EXIT_FAIL
    return EXIT_OK


def cmd_encode(args, out=sys.stdout, err=sys.stderr) -> int:
    if args.z is not None:
        if args.lam is not None or args.j is not None:
            raise UsageError("give either --z or --lambda/--j, not both")
        print(json.dumps(list(codebook.encode(args.n, args.z).digits), separators=(",", ":")), file=out)
    elif args.lam is not None and args.j is not None:
        block = codebook.decode_digit(args.n, args.lam, args.j)
        print(json.dumps({"lo": block.lo, "hi": block.hi}, separators=(",", ":")), file=out)
    else:
        raise UsageError("encode needs --z, or --lambda and --j")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wqsa", description="Wavelet-initialized Grover search simulator."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for any randomized choice")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="run one search, print a JSON record")
    run.add_argument("--n", type=int, required=True)
    run.add_argument("--variant", choices=[v.value for v in Variant], default="wqsa")
    run.add_argument("--target", type=int, required=True)
    run.add_argument("--k", type=int)
    run.add_argument("--lambda", dest="lam", type=int)
    run.add_argument("--j", type=int)
    run.add_argument("--max-iterations", type=int, default=None)
    run.add_argument("--timing", action="store_true", help="fill wall_time_ms (breaks byte determinism)")
    run.set_defaults(func=cmd_run)

    sweep = sub.add_parser("sweep", parents=[common], help="speedup table as CSV")
    sweep.add_argument("--n", type=int, required=True)
    sweep.add_argument("--lambdas", default="all", help='"all", "a..b", or "2,4,7"')
    sweep.add_argument("--j", type=int, default=1)
    sweep.set_defaults(func=cmd_sweep)

    ver = sub.add_parser("verify", parents=[common], help="run invariant suites")
    ver.add_argument("--max-n", type=int, default=None)
    ver.add_argument("--samples", type=int, default=200)
    ver.set_defaults(func=cmd_verify)

    enc = sub.add_parser("encode", parents=[common], help="item code digits or digit block")
    enc.add_argument("--n", type=int, required=True)
    enc.add_argument("--z", type=int)
    enc.add_argument("--lambda", dest="lam", type=int)
    enc.add_argument("--j", type=int)
    enc.set_defaults(func=cmd_encode)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out=out, err=err)
    except (UsageError, DomainError) as exc:
        print(f"wqsa {args.command}: error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
