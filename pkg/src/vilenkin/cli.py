"""Experiment runner: verification suites, convergence sweeps, benchmarks.

Subcommands
    verify       run the identity/bound suite, exit 1 on any residual breach
    converge     tabulate mean-vs-function errors as CSV
    bench        time the fast transform against the literal-sum oracle
    kernel-dump  write one kernel table as CSV

Configuration may come from a flat ``key=value`` file (``--config``); flags
given on the command line win.  Exit codes: 0 ok, 1 tolerance failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import analysis, summability, transform
from .corpus import corpus
from .group import VilenkinBase
from .summability import (
    WeightSequence,
    dirichlet,
    fejer_kernel,
    kernel_for,
    make_weights,
    mean,
    norlund_kernel,
    t_kernel,
    verify_block_kernel_split,
    verify_dirichlet_complement,
    weights_from_spec,
)
from .transform import StepFunction, forward, forward_naive, inverse

EXACT_TOL = 1e-12
COMPOSED_TOL = 1e-10
DEFAULT_CAP = 4096
DEFAULT_WEIGHTS = "constant,cesaro:0.5,valpha:0.5,riesz_log,norlund_log,blog:0.5:1"

CONFIG_KEYS = {
    "base", "depth", "weights", "corpus", "n", "p", "points",
    "seed", "out", "cap", "reps", "kind", "order",
}


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)


def parse_n_list(text: str, upper: int) -> list[int]:
    """Parse "1..8,16,64" into an explicit order list, bounded by ``upper``."""
    out: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if ".." in token:
            lo_text, hi_text = token.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if lo > hi:
                raise ValueError(f"empty range {token!r}")
            out.extend(range(lo, hi + 1))
        elif token:
            out.append(int(token))
    if not out:
        raise ValueError(f"no orders in {text!r}")
    for n in out:
        if not 1 <= n <= upper:
            raise ValueError(f"order {n} outside [1, {upper}]")
    return out


def parse_p_list(text: str) -> list[float]:
    out = []
    for token in text.split(","):
        token = token.strip().lower()
        out.append(math.inf if token == "inf" else float(token))
    return out


def parse_int_list(text: str) -> list[int]:
    return [int(token) for token in text.split(",") if token.strip()]


def _resolve_base(args) -> VilenkinBase:
    base = VilenkinBase.parse(args.base, args.depth)
    cap = int(args.cap)
    if base.size > cap:
        raise ValueError(f"M_N = {base.size} exceeds the cap {cap}")
    return base


def _weight_list(text: str) -> list[WeightSequence]:
    return [weights_from_spec(token) for token in text.split(",") if token.strip()]


def _open_out(args):
    if args.out:
        return open(args.out, "w", encoding="ascii", newline="\n")
    return sys.stdout


# ---------------------------------------------------------------- verify --


def _sample_orders(size: int, base: VilenkinBase) -> list[int]:
    orders = {1, 2, 3, 5, 8, 13, size} | set(base.cumprod)
    return sorted(n for n in orders if 1 <= n <= size)


def run_verify(base: VilenkinBase, weight_specs: list[WeightSequence], seed: int) -> list[Check]:
    """Execute every identity and bound check; one Check per named residual."""
    checks: list[Check] = []
    rng = np.random.default_rng(seed)
    f = StepFunction(base, rng.uniform(-1, 1, base.size) + 1j * rng.uniform(-1, 1, base.size))

    # Transform layer.
    if base.size <= 256:
        block = transform.character_block(base, 0, base.size)
        gram = block @ np.conj(block).T / base.size
        checks.append(Check(
            "orthonormality", float(np.max(np.abs(gram - np.eye(base.size)))), EXACT_TOL
        ))
    spec = forward(f)
    checks.append(Check(
        "fast_vs_naive",
        float(np.max(np.abs(spec.coeffs - forward_naive(f).coeffs))),
        EXACT_TOL,
    ))
    checks.append(Check(
        "round_trip", float(np.max(np.abs(inverse(spec).values - f.values))), EXACT_TOL
    ))
    checks.append(Check(
        "parseval",
        abs(np.mean(np.abs(f.values) ** 2) - np.sum(np.abs(spec.coeffs) ** 2)),
        EXACT_TOL,
    ))
    g = StepFunction(base, rng.uniform(-1, 1, base.size))
    conv_direct = transform.convolve(f, g)
    conv_spectral = transform.convolve_spectral(f, g)
    checks.append(Check(
        "convolution_direct_vs_spectral",
        float(np.max(np.abs(conv_direct.values - conv_spectral.values))),
        COMPOSED_TOL,
    ))
    young = max(
        max(0.0, analysis.lp_norm(conv_direct, p) - analysis.lp_norm(f, p) * analysis.lp_norm(g, 1))
        for p in (1.0, 2.0, math.inf)
    )
    checks.append(Check("young_inequality", young, EXACT_TOL))

    # Dirichlet kernels: unit integral for every order, complement identity.
    running = np.zeros(base.size, dtype=np.complex128)
    worst = 0.0
    for n in range(1, base.size + 1):
        running += transform.character_values(base, n - 1)
        worst = max(worst, abs(running.mean() / 1.0 - 1.0))
    checks.append(Check("dirichlet_integral", worst, EXACT_TOL))
    worst = 0.0
    for r in range(base.depth + 1):
        m_r = base.cumprod[r]
        js = range(m_r) if m_r <= 128 else np.unique(np.linspace(0, m_r - 1, 128, dtype=int))
        for j in js:
            worst = max(worst, verify_dirichlet_complement(base, r, int(j)))
    checks.append(Check("dirichlet_complement", worst, COMPOSED_TOL))

    # Weight families: Abel identities, kernel mass, path agreement.
    horizon = 512
    orders = _sample_orders(base.size, base)
    for w in weight_specs:
        tag = w.kind
        worst = 0.0
        for n in range(1, horizon + 1):
            q = w.q_prefix(n)
            Qn = w.Q(n)
            if Qn <= 0:
                continue
            rebuilt = q[0] * n + sum(
                (q[n - j] - q[n - j - 1]) * j for j in range(1, n)
            )
            worst = max(worst, abs(rebuilt - Qn) / Qn)
        checks.append(Check(f"abel_prefix_sum[{tag}]", worst, COMPOSED_TOL))

        worst_mass = 0.0
        worst_kernel_abel = 0.0
        worst_paths = 0.0
        for n in orders:
            if w.Q(n) <= 0:
                continue
            table = kernel_for(w, base, n)
            if w.mean_type == "norlund":
                expected_mass = 1.0
            else:
                expected_mass = 1.0 - w.q(0) / w.Q(n)
            worst_mass = max(worst_mass, abs(table.integral() - expected_mass))
            if w.mean_type == "norlund":
                q = w.q_prefix(n)
                combo = np.zeros(base.size, dtype=np.complex128)
                for j in range(1, n):
                    combo += (q[n - j] - q[n - j - 1]) * j * fejer_kernel(base, j).values
                combo += q[0] * n * fejer_kernel(base, n).values
                worst_kernel_abel = max(
                    worst_kernel_abel,
                    float(np.max(np.abs(combo / w.Q(n) - table.values))),
                )
            direct = mean(f, w, n, method="direct")
            for method in ("kernel", "abel"):
                other = mean(f, w, n, method=method)
                worst_paths = max(
                    worst_paths, float(np.max(np.abs(other.values - direct.values)))
                )
        checks.append(Check(f"kernel_mass[{tag}]", worst_mass, EXACT_TOL))
        if w.mean_type == "norlund":
            checks.append(Check(f"kernel_abel_identity[{tag}]", worst_kernel_abel, COMPOSED_TOL))
        checks.append(Check(f"mean_path_agreement[{tag}]", worst_paths, COMPOSED_TOL))

        if w.monotonicity == "non-increasing":
            worst = max(
                verify_block_kernel_split(w, base, r) for r in range(1, base.depth + 1)
            )
            checks.append(Check(f"block_kernel_split[{tag}]", worst, COMPOSED_TOL))
    return checks


def cmd_verify(args) -> int:
    base = _resolve_base(args)
    weight_specs = _weight_list(args.weights)
    checks = run_verify(base, weight_specs, int(args.seed))
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.name} residual={check.residual:.3e} tol={check.tolerance:.0e}")
    passed = all(check.passed for check in checks)
    if args.out:
        report = {
            "base": base.spec(),
            "passed": passed,
            "checks": [
                {
                    "name": c.name,
                    "residual": float(c.residual),
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                }
                for c in checks
            ],
        }
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if not passed:
        failing = [c.name for c in checks if not c.passed]
        print(f"FAILED: {', '.join(failing)}", file=sys.stderr)
        return 1
    return 0


# --------------------------------------------------------------- converge --


def cmd_converge(args) -> int:
    base = _resolve_base(args)
    f = corpus(args.corpus, base, int(args.seed))
    w = weights_from_spec(args.weights)
    n_list = parse_n_list(args.n, base.size)
    p_list = parse_p_list(args.p)
    points = parse_int_list(args.points)
    records = analysis.convergence_sweep(f, w, n_list, p_list, points)
    out = _open_out(args)
    try:
        analysis.records_to_csv(records, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# ------------------------------------------------------------------ bench --


def cmd_bench(args) -> int:
    base = _resolve_base(args)
    rng = np.random.default_rng(int(args.seed))
    f = StepFunction(base, rng.uniform(-1, 1, base.size))
    reps = max(1, int(args.reps))

    forward(f)  # warm the stage tables
    fast = min(_time_once(forward, f) for _ in range(reps))
    naive_reps = max(1, min(reps, 3))
    naive = min(_time_once(forward_naive, f) for _ in range(naive_reps))
    report = {
        "base": base.spec(),
        "m_n": base.size,
        "reps": reps,
        "fast_seconds": fast,
        "naive_seconds": naive,
        "speedup": naive / fast if fast > 0 else math.inf,
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    print(text, end="")
    return 0


def _time_once(fn, *args) -> float:
    start = time.perf_counter()
    fn(*args)
    return time.perf_counter() - start


# ------------------------------------------------------------ kernel-dump --


def cmd_kernel_dump(args) -> int:
    base = _resolve_base(args)
    n = int(args.order)
    kind = args.kind
    w = weights_from_spec(args.weights) if args.weights else None
    if kind == "auto":
        kind = ("norlund" if w.mean_type == "norlund" else "tmean") if w else "dirichlet"
    if kind == "dirichlet":
        table = dirichlet(base, n)
    elif kind == "fejer":
        table = fejer_kernel(base, n)
    elif kind in ("norlund", "tmean"):
        if w is None:
            raise ValueError(f"kernel kind {kind!r} needs --weights")
        table = norlund_kernel(w, base, n) if kind == "norlund" else t_kernel(w, base, n)
    else:
        raise ValueError(f"unknown kernel kind {kind!r}")
    out = _open_out(args)
    try:
        table.to_csv(out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# ------------------------------------------------------------------- main --


def _read_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            out[key] = value.strip()
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vilenkin",
        description="Vilenkin-group harmonic analysis experiments",
    )
    parser.add_argument("--config", help="flat key=value config file; flags win")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value config file; flags win")
    common.add_argument("--base", default="2,3,2", help="comma-separated radices")
    common.add_argument("--depth", type=int, default=None, help="cycle radices to this depth")
    common.add_argument("--seed", default="0", help="seed for random corpora")
    common.add_argument("--cap", default=str(DEFAULT_CAP), help="largest allowed M_N")
    common.add_argument("--out", default=None, help="output path (default: stdout)")

    sub = parser.add_subparsers(dest="command", required=True)
    p_verify = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p_verify.add_argument("--weights", default=DEFAULT_WEIGHTS, help="comma-joined weight specs")
    p_verify.set_defaults(func=cmd_verify)

    p_conv = sub.add_parser("converge", parents=[common], help="convergence sweep CSV")
    p_conv.add_argument("--weights", default="constant", help="one weight spec")
    p_conv.add_argument("--corpus", default="smooth2", help="test-function name")
    p_conv.add_argument("--n", default="1..16", help="orders, e.g. 1..512 or 4,16,64")
    p_conv.add_argument("--p", default="1,2,inf", help="norm exponents")
    p_conv.add_argument("--points", default="0", help="ranks for pointwise errors")
    p_conv.set_defaults(func=cmd_converge)

    p_bench = sub.add_parser("bench", parents=[common], help="fast vs naive timings")
    p_bench.add_argument("--reps", default="5", help="fast-path repetitions")
    p_bench.set_defaults(func=cmd_bench)

    p_dump = sub.add_parser("kernel-dump", parents=[common], help="write a kernel CSV")
    p_dump.add_argument("--weights", default=None, help="weight spec for norlund/tmean kinds")
    p_dump.add_argument("--order", default="1", help="kernel order n")
    p_dump.add_argument(
        "--kind", default="auto", choices=["auto", "dirichlet", "fejer", "norlund", "tmean"]
    )
    p_dump.set_defaults(func=cmd_kernel_dump)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    parser = _build_parser()
    if known.config:
        try:
            parser.set_defaults(**_read_config(known.config))
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
