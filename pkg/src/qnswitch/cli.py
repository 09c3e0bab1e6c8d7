"""Command-line front end: holevo, table1, sweep, verify.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
All numeric CSV output is printed with 6 significant digits, so repeated
runs with identical flags are byte-identical. Set QNSWITCH_WORKERS to
compute sweep rows in parallel; rows are still emitted in grid order.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import SizeLimitError
from .holevo import HolevoReport, holevo_information
from .verify import run_verification

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

PROB_SUM_SLACK = 1e-9


def _fmt(value: float) -> str:
    return format(float(value) + 0.0, ".6g")


def _parse_floats(text: str) -> list[float]:
    text = text.strip()
    if not text:
        return []
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"not a comma-separated list of numbers: {text!r}") from exc


def _parse_ints(text: str) -> list[int]:
    return [int(round(v)) for v in _parse_floats(text)]


def _validate_q(values: Sequence[float]) -> list[float]:
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"transparency {v} outside [0, 1]")
    return list(values)


def _resolve_probs(text: str, n: int) -> tuple[float, ...]:
    """'uniform' or a normalized comma list of n! probabilities."""
    nf = math.factorial(n)
    if text.strip() == "uniform":
        return (1.0 / nf,) * nf
    values = _parse_floats(text)
    if len(values) != nf:
        raise ValueError(f"expected {nf} probabilities for n={n}, got {len(values)}")
    if any(v < 0.0 for v in values):
        raise ValueError("probabilities must be nonnegative")
    total = math.fsum(values)
    if abs(total - 1.0) > PROB_SUM_SLACK:
        raise ValueError(f"probabilities must sum to 1, got {total}")
    return tuple(v / total for v in values)


def _csv_header(n: int) -> str:
    nf = math.factorial(n)
    qcols = ",".join(f"q{j}" for j in range(1, n + 1))
    pcols = ",".join(f"p{k}" for k in range(1, nf + 1))
    return f"n,d,{qcols},{pcols},h_min,h_control,chi"


def _csv_row(report: HolevoReport) -> str:
    fields = [str(report.n), str(report.d)]
    fields += [_fmt(v) for v in report.q]
    fields += [_fmt(v) for v in report.probs]
    fields += [_fmt(report.h_min), _fmt(report.h_control), _fmt(report.chi)]
    return ",".join(fields)


# ---------------------------------------------------------------------------
# holevo
# ---------------------------------------------------------------------------


def cmd_holevo(args: argparse.Namespace) -> int:
    q = _validate_q(_parse_floats(args.q))
    if len(q) != args.n:
        raise ValueError(f"expected {args.n} transparencies, got {len(q)}")
    probs = _resolve_probs(args.p, args.n)
    report = holevo_information(args.n, args.d, q, probs)
    print(_csv_header(args.n))
    print(_csv_row(report))
    return EXIT_OK


# ---------------------------------------------------------------------------
# table1
# ---------------------------------------------------------------------------


def cmd_table1(args: argparse.Namespace) -> int:
    if args.d_max < 2:
        raise ValueError(f"--d-max must be >= 2, got {args.d_max}")
    print("d,chi_q2s,chi_q3s,ratio")
    ratios = []
    for d in range(2, args.d_max + 1):
        chi2 = holevo_information(2, d, (0.0, 0.0), (0.5, 0.5)).chi
        chi3 = holevo_information(3, d, (0.0, 0.0, 0.0), (1.0 / 6,) * 6).chi
        ratio = chi3 / chi2
        ratios.append(ratio)
        print(f"{d},{_fmt(chi2)},{_fmt(chi3)},{_fmt(ratio)}")
    arr = np.asarray(ratios)
    print(f"ratio_mean,,,{_fmt(arr.mean())}")
    print(f"ratio_stddev,,,{_fmt(arr.std(ddof=1) if arr.size > 1 else 0.0)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    """A rectangular parameter grid and where to write its rows.

    ``q_axes`` carries one value list per channel (the grid is their
    cartesian product, channel 1 slowest); ``q_linked`` carries a single
    list applied to every channel simultaneously. Exactly one is set.
    """

    n: int
    d_values: tuple[int, ...]
    q_axes: tuple[tuple[float, ...], ...] | None
    q_linked: tuple[float, ...] | None
    p_vectors: tuple[tuple[float, ...], ...]
    output_path: str

    def __post_init__(self):
        if (self.q_axes is None) == (self.q_linked is None):
            raise ValueError("exactly one of per-channel and linked q grids must be set")
        if self.q_axes is not None and len(self.q_axes) != self.n:
            raise ValueError(f"expected {self.n} per-channel q lists, got {len(self.q_axes)}")
        for d in self.d_values:
            if d < 2:
                raise ValueError(f"dimension must be >= 2, got {d}")
        if not self.output_path:
            raise ValueError("an output path is required")

    def q_tuples(self) -> Iterable[tuple[float, ...]]:
        if self.q_linked is not None:
            for v in self.q_linked:
                yield (v,) * self.n
        else:
            yield from product(*self.q_axes)

    def points(self) -> Iterable[tuple[int, tuple[float, ...], tuple[float, ...]]]:
        """Grid points in row-major order: d slowest, then q, then p."""
        for d in self.d_values:
            for qs in self.q_tuples():
                for probs in self.p_vectors:
                    yield d, qs, probs


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
                key, _, value = line.partition("=")
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise ValueError(f"cannot read config file {path}: {exc}") from exc
    return values


def _build_sweep_spec(args: argparse.Namespace) -> SweepSpec:
    config = _read_config(args.config) if args.config else {}

    n = args.n if args.n is not None else (int(config["n"]) if "n" in config else None)
    if n is None:
        raise ValueError("the number of channels is required (--n or config key 'n')")
    if n < 1:
        raise ValueError(f"--n must be >= 1, got {n}")

    if args.d is not None:
        d_values = tuple(_parse_ints(args.d))
    elif "d" in config:
        d_values = tuple(_parse_ints(config["d"]))
    else:
        raise ValueError("dimension list is required (--d or config key 'd')")

    q_axes = None
    q_linked = None
    if args.q and args.q_linked is not None:
        raise ValueError("--q and --q-linked are mutually exclusive")
    if args.q:
        q_axes = tuple(tuple(_validate_q(_parse_floats(text))) for text in args.q)
    elif args.q_linked is not None:
        q_linked = tuple(_validate_q(_parse_floats(args.q_linked)))
    elif "q_linked" in config:
        q_linked = tuple(_validate_q(_parse_floats(config["q_linked"])))
    elif any(f"q{j}" in config for j in range(1, n + 1)):
        axes = []
        for j in range(1, n + 1):
            key = f"q{j}"
            if key not in config:
                raise ValueError(f"config is missing per-channel grid key '{key}'")
            axes.append(tuple(_validate_q(_parse_floats(config[key]))))
        q_axes = tuple(axes)
    else:
        raise ValueError("a q grid is required (--q per channel, --q-linked, or config)")

    p_text = args.p if args.p else ([config["p"]] if "p" in config else ["uniform"])
    p_vectors: list[tuple[float, ...]] = []
    for chunk in p_text:
        for vec in chunk.split(";"):
            vec = vec.strip()
            if vec:
                p_vectors.append(_resolve_probs(vec, n))

    output = args.out if args.out is not None else config.get("output")
    if not output:
        raise ValueError("an output path is required (--out or config key 'output')")

    return SweepSpec(
        n=n,
        d_values=d_values,
        q_axes=q_axes,
        q_linked=q_linked,
        p_vectors=tuple(p_vectors),
        output_path=output,
    )


def _worker_count() -> int:
    raw = os.environ.get("QNSWITCH_WORKERS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = _build_sweep_spec(args)
    points = list(spec.points())

    def evaluate(point):
        d, qs, probs = point
        return holevo_information(spec.n, d, qs, probs)

    workers = _worker_count()
    if workers > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(evaluate, points))
    else:
        reports = [evaluate(point) for point in points]

    try:
        with open(spec.output_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(_csv_header(spec.n) + "\n")
            for report in reports:
                handle.write(_csv_row(report) + "\n")
    except OSError as exc:
        print(f"error: cannot write {spec.output_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_verification(
        seed=args.seed, budget=args.budget, inject_fault=args.self_test_fault
    )
    failures = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        failures += 0 if res.passed else 1
        print(f"{status}  {res.name}: {res.detail}")
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnswitch",
        description=(
            "Holevo information of N depolarizing channels applied in a "
            "coherently controlled superposition of causal orders."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    holevo = sub.add_parser("holevo", help="one evaluation, CSV row on stdout")
    holevo.add_argument("--n", type=int, required=True, help="number of channels")
    holevo.add_argument("--d", type=int, required=True, help="target dimension")
    holevo.add_argument("--q", required=True, help="comma list of transparencies q_j")
    holevo.add_argument(
        "--p", default="uniform", help="'uniform' or comma list of n! order probabilities"
    )
    holevo.set_defaults(func=cmd_holevo)

    table1 = sub.add_parser(
        "table1", help="chi for 2 and 3 fully depolarizing channels over d"
    )
    table1.add_argument("--d-max", type=int, default=10, help="largest dimension")
    table1.set_defaults(func=cmd_table1)

    sweep = sub.add_parser("sweep", help="grid sweep, CSV written to a file")
    sweep.add_argument("--config", help="key = value file; flags override it")
    sweep.add_argument("--n", type=int, help="number of channels")
    sweep.add_argument("--d", help="comma list of dimensions")
    sweep.add_argument(
        "--q",
        action="append",
        help="per-channel grid; repeat the flag once per channel",
    )
    sweep.add_argument("--q-linked", help="shared grid with q1 = ... = qN")
    sweep.add_argument(
        "--p",
        action="append",
        help="'uniform' or probability vectors, ';'-separated within one flag",
    )
    sweep.add_argument("--out", help="output CSV path")
    sweep.set_defaults(func=cmd_sweep)

    verify = sub.add_parser("verify", help="run the built-in verification suites")
    verify.add_argument("--seed", type=int, default=42, help="seed for randomized checks")
    verify.add_argument("--budget", type=int, help="index-tuple cap for brute-force sums")
    verify.add_argument(
        "--self-test-fault", action="store_true", help=argparse.SUPPRESS
    )
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
