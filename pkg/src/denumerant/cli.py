"""Command-line front end.

    denumerant compute --a 2,3,3,6 --all
    denumerant eval --a 2,3,3,6 --t 8
    denumerant check --a 3,5,7 --tmax 500 --samples 100
    denumerant decompose --a 10,11,5,17
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from . import cone
from .knapsack import ct_knapsack, oracle_counts, seq_gcd

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_SEQUENCE = 2
EXIT_GCD = 3
EXIT_BAD_T = 4
EXIT_BAD_ARGS = 5


class CLIError(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


@dataclass
class RunConfig:
    a: tuple[int, ...]
    mode: str
    top: int | None = None
    t: int | None = None
    tmax: int = 1000
    samples: int = 100
    format: str = "text"
    out: str | None = None
    reduce: bool = False
    seed: int | None = None
    f: int | None = None


def parse_sequence(text: str) -> tuple[int, ...]:
    try:
        a = tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise CLIError(f"malformed sequence {text!r}: expected comma-separated integers", EXIT_BAD_SEQUENCE)
    if not a:
        raise CLIError("malformed sequence: no entries", EXIT_BAD_SEQUENCE)
    if any(x <= 0 for x in a):
        raise CLIError(f"malformed sequence {text!r}: entries must be positive", EXIT_BAD_SEQUENCE)
    return a


def _reduced(cfg: RunConfig) -> tuple[tuple[int, ...], int]:
    d = seq_gcd(cfg.a)
    if d != 1 and not cfg.reduce:
        raise CLIError(f"gcd of the sequence is {d}, not 1; pass --reduce to compute E(a/{d}; t)", EXIT_GCD)
    return tuple(x // d for x in cfg.a), d


def _mset(cfg: RunConfig, n: int) -> list[int]:
    if cfg.top is None:
        return list(range(n + 1))
    if not 0 <= cfg.top <= n:
        raise CLIError(f"--top must lie in [0, N] = [0, {n}]", EXIT_BAD_ARGS)
    return list(range(n - cfg.top, n + 1))


def _seed(cfg: RunConfig) -> dict:
    # the seed only matters when the slack search falls back to random vectors
    return {} if cfg.seed is None else {"seed": cfg.seed}


def _compute(cfg: RunConfig) -> str:
    a, d = _reduced(cfg)
    q = ct_knapsack(a, _mset(cfg, len(a) - 1), **_seed(cfg))
    if cfg.format == "json":
        data = q.to_dict()
        if d != 1:
            data["reduced_by"] = d
        return json.dumps(data, indent=2)
    text = q.to_text()
    if d != 1:
        text = (f"# gcd(a) = {d}: E(a; t) = E(a/{d}; t/{d}) when {d} divides t, and 0 otherwise\n"
                + text)
    return text


def _eval(cfg: RunConfig) -> str:
    if cfg.t is None:
        raise CLIError("eval needs --t", EXIT_BAD_ARGS)
    if cfg.t < 0:
        raise CLIError(f"t must be nonnegative, got {cfg.t}", EXIT_BAD_T)
    a, d = _reduced(cfg)
    if cfg.t % d:
        return "0"
    value = ct_knapsack(a, **_seed(cfg)).evaluate(cfg.t // d)
    assert value.denominator == 1
    return str(value.numerator)


def _check(cfg: RunConfig) -> tuple[int, str]:
    if cfg.tmax < 0:
        raise CLIError(f"t must be nonnegative, got tmax = {cfg.tmax}", EXIT_BAD_T)
    a, d = _reduced(cfg)
    q = ct_knapsack(a, **_seed(cfg))
    rng = random.Random(cfg.seed or 0)
    ts = sorted(rng.randint(0, cfg.tmax) for _ in range(cfg.samples))
    table = oracle_counts(cfg.a, cfg.tmax)
    lines, failures = [], 0
    for t in ts:
        got = q.evaluate(t // d) if t % d == 0 else 0
        ok = got == table[t]
        failures += not ok
        lines.append(f"{'PASS' if ok else 'FAIL'} t={t} quasi={got} oracle={table[t]}")
    lines.append(f"{len(ts) - failures}/{len(ts)} samples agree")
    return (EXIT_OK if failures == 0 else EXIT_CHECK_FAILED), "\n".join(lines)


def _decompose(cfg: RunConfig) -> str:
    if cfg.f is None:
        f, alist = cfg.a[0], cfg.a[1:]
    else:
        f, alist = cfg.f, tuple(x for x in cfg.a if x % cfg.f)
    if not alist:
        raise CLIError("nothing to decompose: every entry is divisible by f", EXIT_BAD_ARGS)
    if seq_gcd((f,) + tuple(alist)) != 1:
        raise CLIError("gcd(f, alist) must be 1 for the knapsack cone", EXIT_GCD)
    return cone.cones_to_json(cone.decompose_denumerant_cone(f, alist))


def run(cfg: RunConfig) -> tuple[int, str]:
    try:
        if cfg.mode == "compute":
            return EXIT_OK, _compute(cfg)
        if cfg.mode == "eval":
            return EXIT_OK, _eval(cfg)
        if cfg.mode == "check":
            return _check(cfg)
        if cfg.mode == "decompose":
            return EXIT_OK, _decompose(cfg)
        raise CLIError(f"unknown mode {cfg.mode!r}", EXIT_BAD_ARGS)
    except CLIError as exc:
        return exc.status, f"error: {exc}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="denumerant", description="Sylvester denumerant quasi-polynomials")
    sub = parser.add_subparsers(dest="mode", required=True)

    def common(p):
        p.add_argument("--a", required=True, help="comma-separated positive integers")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write output to this file")
        p.add_argument("--reduce", action="store_true", help="divide out gcd(a) > 1")
        p.add_argument("--seed", type=int, help="seed for check sampling and the slack-vector fallback")

    p = sub.add_parser("compute", help="quasi-polynomial coefficients as step polynomials")
    common(p)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--top", type=int, metavar="K", help="coefficients E_(N-K) .. E_N")
    which.add_argument("--all", action="store_true", help="all coefficients (default)")

    p = sub.add_parser("eval", help="exact E(a; t)")
    common(p)
    p.add_argument("--t", type=int, required=True)

    p = sub.add_parser("check", help="compare against brute-force counting")
    common(p)
    p.add_argument("--tmax", type=int, default=1000)
    p.add_argument("--samples", type=int, default=100)

    p = sub.add_parser("decompose", help="dump a knapsack cone decomposition as JSON")
    common(p)
    p.add_argument("--f", type=int, help="decompose the cone for this f (default: f = first entry)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        a = parse_sequence(args.a)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.status
    cfg = RunConfig(
        a=a,
        mode=args.mode,
        top=getattr(args, "top", None),
        t=getattr(args, "t", None),
        tmax=getattr(args, "tmax", 1000),
        samples=getattr(args, "samples", 100),
        format=args.format,
        out=args.out,
        reduce=args.reduce,
        seed=args.seed,
        f=getattr(args, "f", None),
    )
    status, output = run(cfg)
    if status not in (EXIT_OK, EXIT_CHECK_FAILED):
        print(output, file=sys.stderr)
        return status
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(output + "\n")
    else:
        print(output)
    return status


if __name__ == "__main__":
    sys.exit(main())
