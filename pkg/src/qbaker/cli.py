"""Command-line front end: export matrices, states, and circuits, run
trajectories, produce spectrum/localization reports, verify, and benchmark.

One binary with subcommands, flags only; every run is reproducible from its
command line (seeded randomness, seed echoed).  Exit codes: 0 success,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from .analysis import (
    check_strict_localization,
    eigenphases,
    max_contiguous_cut_entropy,
    position_support,
)
from .bakermap import (
    apply_baker_last,
    apply_baker_fast,
    baker_composed,
    emit_circuit,
)
from .classical import label_shift
from .lattice import Dimensions, DotLabel
from .qfourier import (
    StateVector,
    antiperiodic_dft,
    displacement_u,
    displacement_v,
    dot_state_product,
    dot_state_transform,
    partial_transform,
)
from .verify import DEFAULT_SEED, random_product_state, random_state, run_all

DENSE_CAP = 12
FAST_CAP = 20


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _parse_label(parser: argparse.ArgumentParser, text: str) -> DotLabel:
    try:
        return DotLabel.parse(text)
    except ValueError as exc:
        parser.error(f"malformed label: {exc}")


def _target_matrix(parser, target: str, N: int, n: int | None) -> np.ndarray:
    if N > DENSE_CAP:
        parser.error(f"dense commands are capped at N={DENSE_CAP}, got N={N}")
    dims = Dimensions(N)
    if target == "G":
        if n is None:
            parser.error("--target G needs --n")
        if not 0 <= n <= N:
            parser.error(f"--n must lie in [0, {N}] for target G")
        return partial_transform(dims, n)
    if target == "B":
        if n is None:
            parser.error("--target B needs --n")
        if not 1 <= n <= N:
            parser.error(f"--n must lie in [1, {N}] for target B")
        return baker_composed(dims, n)
    if target == "U":
        return displacement_u(dims)
    if target == "V":
        return displacement_v(dims)
    return antiperiodic_dft(dims.D)  # F


def _matrix_csv(mat: np.ndarray) -> str:
    lines = ["row,col,re,im"]
    for r in range(mat.shape[0]):
        for c in range(mat.shape[1]):
            z = mat[r, c]
            lines.append(f"{r},{c},{_fmt(z.real)},{_fmt(z.imag)}")
    return "\n".join(lines) + "\n"


def _matrix_json(mat: np.ndarray) -> str:
    nested = [[[z.real, z.imag] for z in row] for row in mat]
    return json.dumps(nested) + "\n"


def cmd_matrix(args, parser) -> int:
    mat = _target_matrix(parser, args.target, args.N, args.n)
    text = _matrix_csv(mat) if args.format == "csv" else _matrix_json(mat)
    _write(text, args.out)
    return 0


def cmd_state(args, parser) -> int:
    label = _parse_label(parser, args.label)
    state = dot_state_product(label) if args.route == "product" else dot_state_transform(label)
    if args.format == "csv":
        lines = ["index,re,im"]
        for j, z in enumerate(state.amps):
            lines.append(f"{j},{_fmt(z.real)},{_fmt(z.imag)}")
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps({"N": state.N, "amps": [[z.real, z.imag] for z in state.amps]}) + "\n"
    _write(text, args.out)
    return 0


def _read_state_file(parser, path: str) -> StateVector:
    try:
        rows = Path(path).read_text(encoding="utf-8").strip().splitlines()
    except OSError as exc:
        parser.error(f"cannot read state file: {exc}")
    if rows and rows[0].lower().startswith("index"):
        rows = rows[1:]
    amps_by_index = {}
    for row in rows:
        parts = row.split(",")
        if len(parts) != 3:
            parser.error(f"state file rows must be 'index,re,im', got {row!r}")
        amps_by_index[int(parts[0])] = float(parts[1]) + 1j * float(parts[2])
    size = len(amps_by_index)
    if size < 2 or size & (size - 1) or set(amps_by_index) != set(range(size)):
        parser.error("state file must list every index 0..2^N-1 exactly once")
    amps = np.array([amps_by_index[j] for j in range(size)])
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > 1e-8:
        parser.error(f"input state is not normalized: |norm-1| = {abs(norm - 1.0):.3e}")
    return StateVector(N=size.bit_length() - 1, amps=amps)


def cmd_evolve(args, parser) -> int:
    given = [args.label is not None, args.state_file is not None, args.random_product]
    if sum(given) != 1:
        parser.error("give exactly one of --label, --state-file, --random-product")
    label = None
    if args.label is not None:
        label = _parse_label(parser, args.label)
        if args.N is not None and args.N != label.N:
            parser.error(f"--N {args.N} contradicts label with N={label.N}")
        state = dot_state_transform(label)
    elif args.state_file is not None:
        state = _read_state_file(parser, args.state_file)
        if args.N is not None and args.N != state.N:
            parser.error(f"--N {args.N} contradicts state file with N={state.N}")
    else:
        if args.N is None:
            parser.error("--random-product needs --N")
        state = random_product_state(args.N, np.random.default_rng(args.seed))
    N = state.N
    if N > FAST_CAP:
        parser.error(f"evolve is capped at N={FAST_CAP}, got N={N}")
    if args.steps < 0:
        parser.error("--steps must be non-negative")
    if args.map == "BN":
        map_index = N
    elif args.n is not None:
        map_index = args.n
    elif label is not None and label.n >= 1:
        map_index = label.n
    else:
        parser.error("give --n (or --map BN) to pick the map")
    if not 1 <= map_index <= N:
        parser.error(f"map index n={map_index} out of range [1, {N}]")

    step_fn = apply_baker_last if args.map == "BN" else (lambda s: apply_baker_fast(s, map_index))
    lines = []
    if args.random_product:
        lines.append(f"# seed={args.seed}")
    lines.append("step,norm,support_size,max_cut_entropy,label")

    def row(step: int, s: StateVector, matched: DotLabel | None) -> str:
        support = position_support(s, args.tol).size
        entropy = max_contiguous_cut_entropy(s) if N >= 2 else 0.0
        text = matched.text() if matched is not None else ""
        return f"{step},{_fmt(s.norm())},{support},{_fmt(entropy)},{text}"

    current = label
    lines.append(row(0, state, current))
    for step in range(1, args.steps + 1):
        state = step_fn(state)
        matched = None
        if current is not None and current.n == map_index:
            candidate = label_shift(current)
            overlap = np.vdot(dot_state_transform(candidate).amps, state.amps)
            if overlap.real >= 1.0 - 1e-10:
                matched = candidate
        current = matched
        lines.append(row(step, state, matched))
    _write("\n".join(lines) + "\n", args.out)
    return 0


def cmd_spectrum(args, parser) -> int:
    mat = _target_matrix(parser, args.target, args.N, args.n)
    report = eigenphases(mat)
    lines = ["index,phase,spacing"]
    for i, (phase, gap) in enumerate(zip(report.phases, report.spacings)):
        lines.append(f"{i},{_fmt(phase)},{_fmt(gap)}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def cmd_localize(args, parser) -> int:
    label = _parse_label(parser, args.label)
    if args.N is not None and args.N != label.N:
        parser.error(f"--N {args.N} contradicts label with N={label.N}")
    if args.n is not None and args.n != label.n:
        parser.error(f"--n {args.n} contradicts label with n={label.n}")
    report = check_strict_localization(label)
    payload = {
        "label": label.text(),
        "N": label.N,
        "n": label.n,
        "support": list(report.support),
        "uniform_modulus_dev": report.uniform_modulus_dev,
        "window_mass": report.window_mass,
    }
    _write(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _gate_record(gate) -> dict:
    record: dict = {"kind": gate.kind, "targets": list(gate.targets)}
    if gate.matrix is not None:
        record["matrix"] = [[[z.real, z.imag] for z in row] for row in gate.matrix]
    if gate.angle is not None:
        record["angle"] = gate.angle
    return record


def cmd_circuit(args, parser) -> int:
    if args.N > DENSE_CAP:
        parser.error(f"circuit lowering is capped at N={DENSE_CAP}, got N={args.N}")
    if not 1 <= args.n <= args.N:
        parser.error(f"--n must lie in [1, {args.N}]")
    gl = emit_circuit(Dimensions(args.N), args.n)
    payload = {"N": gl.N, "gates": [_gate_record(g) for g in gl.gates]}
    _write(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def cmd_verify(args, parser) -> int:
    results = run_all(max_n=args.max_N, seed=args.seed, perturb=args.perturb)
    for r in results:
        status = "SKIP" if r.skipped else ("PASS" if r.passed else "FAIL")
        bound = "<=" if r.sense == "max<=" else ">="
        line = f"{status} {r.name}: observed {r.observed:.3e} {bound} {r.tolerance:.3e}"
        if r.details:
            line += f" ({r.details})"
        print(line)
    failed = [r for r in results if not r.skipped and not r.passed]
    if args.report:
        payload = {
            "seed": args.seed,
            "max_N": args.max_N,
            "perturb": args.perturb,
            "all_passed": not failed,
            "checks": [r.to_dict() for r in results],
        }
        Path(args.report).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    skipped = sum(r.skipped for r in results)
    summary = f"{len(results) - len(failed) - skipped}/{len(results) - skipped} checks passed"
    if skipped:
        summary += f" ({skipped} skipped)"
    print(summary)
    return 1 if failed else 0


def cmd_bench(args, parser) -> int:
    rng = np.random.default_rng(args.seed)
    lines = [f"# seed={args.seed}", "N,n,dense_ms,fast_ms,speedup,max_abs_err"]
    for N in args.N:
        if not 1 <= N <= FAST_CAP:
            parser.error(f"bench sizes must lie in [1, {FAST_CAP}], got {N}")
        n = min(args.n, N)
        state = random_state(N, rng)
        apply_baker_fast(state, n)  # warm caches before timing
        fast_t = min(
            _timed(lambda: apply_baker_fast(state, n)) for _ in range(args.reps)
        )
        if N <= DENSE_CAP:
            dense = baker_composed(Dimensions(N), n)
            dense_t = min(_timed(lambda: dense @ state.amps) for _ in range(args.reps))
            err = float(np.abs(apply_baker_fast(state, n).amps - dense @ state.amps).max())
            lines.append(
                f"{N},{n},{_fmt(dense_t * 1e3)},{_fmt(fast_t * 1e3)},"
                f"{_fmt(dense_t / fast_t)},{_fmt(err)}"
            )
        else:
            lines.append(f"{N},{n},,{_fmt(fast_t * 1e3)},,")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbaker",
        description="Quantum baker's maps as shifts on a finite qubit string.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("matrix", help="export a dense operator matrix")
    p.add_argument("--target", required=True, choices=["G", "B", "U", "V", "F"])
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    add_out(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("state", help="export the amplitudes of a dot-basis state")
    p.add_argument("--label", required=True, help="dot label, e.g. 01.10")
    p.add_argument("--route", choices=["transform", "product"], default="transform")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    add_out(p)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("evolve", help="iterate a map and log per-step diagnostics")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="map index (default: label's n)")
    p.add_argument("--label", default=None, help="dot label giving the initial state")
    p.add_argument("--state-file", default=None, help="CSV amplitude file (index,re,im)")
    p.add_argument("--random-product", action="store_true", help="seeded random product state")
    p.add_argument("--map", choices=["Bn", "BN"], default="Bn")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=1e-12, help="support threshold")
    add_out(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("spectrum", help="export sorted eigenphases and spacings")
    p.add_argument("--target", required=True, choices=["G", "B", "U", "V", "F"])
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    add_out(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("localize", help="localization report for a dot-basis state")
    p.add_argument("--label", required=True)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    add_out(p)
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("circuit", help="lower a map to a gate list (JSON)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    add_out(p)
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--max-N", type=int, default=None, dest="max_N")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--perturb", type=float, default=0.0,
                   help="inject this much noise into one G_n entry (self-test)")
    p.add_argument("--report", default=None, help="write a JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time fast apply against the dense matvec")
    p.add_argument("--N", type=int, nargs="+", required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    add_out(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    raise SystemExit(main())
