"""Command-line front end.

Exit codes: 0 success or YES, 1 NO, 2 usage/validation error (including
displacement gates), 3 INDETERMINATE, 4 capacity exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bqp, gbir, measurement, sim, symplectic
from . import compiler as C
from .decompose import decompose_multicontrols
from .errors import CapacityError, CircuitValidationError, ParseError, SymplectiqError
from .kernels import configure_threads

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INDETERMINATE, EXIT_CAPACITY = 0, 1, 2, 3, 4

CONVENTIONS = """\
conventions:
  Ry(theta) = exp(-i theta Y / 2). A beamsplitter of time t compiles to
  Ry(4t) on a register qubit; a phase gate of time t to Ry(-4t) on the
  symplectic qubit. Qubit 0 is the symplectic qubit (0 = position block,
  1 = momentum block); register qubit k carries bit k of the mode index
  m - 1, with bit 1 the least significant. Modes are numbered from 1.
  Moment vectors are whitespace-separated (q_1..q_M, p_1..p_M).
"""


@dataclass
class RunConfig:
    inputs: tuple = ()
    output: str | None = None
    seed: int = 0
    trace_every: int = 1
    capacity_limit_qubits: int = sim.DEFAULT_CAPACITY
    lcu_step: float = C.DEFAULT_LCU_STEP

    def __post_init__(self):
        if not 0 < self.lcu_step <= 0.1:
            raise ValueError("--lcu-step must lie in (0, 0.1]")
        if not 1 <= self.capacity_limit_qubits <= sim.MAX_CAPACITY:
            raise ValueError(f"--capacity must lie in 1..{sim.MAX_CAPACITY}")
        if self.trace_every < 0:
            raise ValueError("--trace-every must be >= 0")


def _config(args) -> RunConfig:
    return RunConfig(
        inputs=(args.input,) if getattr(args, "input", None) else (),
        output=getattr(args, "output", None),
        seed=getattr(args, "seed", 0),
        trace_every=getattr(args, "trace_every", 1),
        capacity_limit_qubits=getattr(args, "capacity", sim.DEFAULT_CAPACITY),
        lcu_step=getattr(args, "lcu_step", C.DEFAULT_LCU_STEP),
    )


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_vector(path: str) -> np.ndarray:
    return np.array(_read(path).split(), dtype=float)


def _load_matrix(path: str, dtype=float) -> np.ndarray:
    rows = [line.split() for line in _read(path).splitlines() if line.strip() and not line.startswith("#")]
    return np.array(rows, dtype=dtype)


def _fmt_vector(v) -> str:
    return "".join(f"{x:.17g}\n" for x in v)


def _load_circuit(path: str):
    """GB circuit (``modes`` header) or qubit circuit (``qubits`` header)."""
    text = _read(path)
    for line in text.splitlines():
        head = line.split("#", 1)[0].split()
        if head:
            if head[0] == "qubits":
                return C.parse_qubit_circuit(text)
            return gbir.parse(text)
    return gbir.parse(text)


def cmd_compile(args) -> int:
    cfg = _config(args)
    gb = gbir.parse(_read(args.input))
    qc = C.compile(gb, squeeze=args.squeeze, lcu_step=cfg.lcu_step)
    if args.decompose:
        qc = decompose_multicontrols(qc)
    if args.counts:
        print(json.dumps(C.gate_counts(qc), sort_keys=True), file=sys.stderr)
    _emit(C.serialize_qubit_circuit(qc) if gb.gates else "", cfg.output)
    return EXIT_OK


def _qubit_circuit(circ, squeeze: str, step: float) -> C.QubitCircuit:
    if isinstance(circ, gbir.GbCircuit):
        return C.compile(circ, squeeze=squeeze, lcu_step=step)
    return circ


def cmd_run(args) -> int:
    cfg = _config(args)
    qc = _qubit_circuit(_load_circuit(args.input), args.squeeze, cfg.lcu_step)
    sim.check_capacity(qc.qubits, cfg.capacity_limit_qubits)
    if args.z:
        s0 = sim.encode_mean(_load_vector(args.z), cfg.capacity_limit_qubits)
    else:
        s0 = sim.basis_state(qc.n, args.x, cfg.capacity_limit_qubits)
    s, traj = sim.run(qc, s0, cfg.trace_every, cfg.capacity_limit_qubits, in_place=True)
    if args.trajectory:
        traj.write_csv(args.trajectory)
    if args.snapshot:
        sim.save_snapshot(s, args.snapshot)
    summary = {"n": s.n, "scale": s.scale, "success_log": s.success_log, "overlap": float(s.amplitudes[0])}
    print(json.dumps(summary), file=sys.stderr)
    _emit(_fmt_vector(sim.decode_mean(s)), cfg.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    gb = gbir.parse(_read(args.input))
    z = _load_vector(args.z)
    M = gb.modes
    if M > symplectic.MAX_ORACLE_MODES:
        raise ValueError(f"oracle supports at most {symplectic.MAX_ORACLE_MODES} modes")
    problems = gbir.validate(gb)
    if problems:
        raise CircuitValidationError(problems)
    out = symplectic.as_moment_vector(z, M)
    for g in gb.gates:
        out = symplectic.propagator(gbir.generator_of(g, M), gbir.gate_time(g)) @ out
    _emit(_fmt_vector(out), args.output)
    if args.diff:
        qc = C.compile(gb, squeeze=args.squeeze, lcu_step=args.lcu_step)
        s, _ = sim.run(qc, sim.encode_mean(z))
        dev = float(np.max(np.abs(sim.decode_mean(s) - out)))
        print(f"max_abs_deviation {dev:.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.kind == "h":
        gen = symplectic.k_from_particle_preserving(_load_matrix(args.input, complex))
        kind = symplectic.classify_generator(gen.K)
    elif args.kind == "delta":
        gen = symplectic.k_from_non_particle_preserving(_load_matrix(args.input, complex))
        kind = symplectic.classify_generator(gen.K)
    elif args.kind == "k":
        kind = symplectic.GeneratorMatrix.from_matrix(_load_matrix(args.input)).kind
    else:
        gb = gbir.parse(_read(args.input))
        K = sum((gbir.generator_of(g, gb.modes).K for g in gb.gates), np.zeros((2 * gb.modes,) * 2))
        kind = symplectic.classify_generator(K)
    print(kind.value)
    return EXIT_OK


def cmd_bqp_gen(args) -> int:
    if args.planted:
        inst = bqp.planted_instance(args.n, args.depth, args.planted == "yes", args.seed, args.x)
    else:
        inst = bqp.random_instance(args.n, args.depth, args.seed, args.x)
    _emit(bqp.serialize_instance(inst), args.output)
    return EXIT_OK


_DECISION_EXIT = {
    bqp.Decision.YES: EXIT_OK,
    bqp.Decision.NO: EXIT_NO,
    bqp.Decision.INDETERMINATE: EXIT_INDETERMINATE,
}


def cmd_bqp_run(args) -> int:
    cfg = _config(args)
    inst = bqp.parse_instance(_read(args.input))
    result = bqp.run_instance(inst, capacity=cfg.capacity_limit_qubits)
    if args.trajectory:
        result.trajectory.write_csv(args.trajectory)
    print(f"{result.decision.value} q1_over_x={result.q1_over_x:.17g}")
    return _DECISION_EXIT[result.decision]


def _parse_reverse(text: str):
    n = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if tokens[0] == "qubits":
            n = int(tokens[1])
            continue
        kv = gbir.parse_keyvalues(tokens[1:], lineno)
        try:
            if tokens[0] == "cry":
                gates.append(("cry", int(kv["ctrl"]), int(kv["tgt"]), float(kv["tau"])))
            else:
                gates.append((tokens[0], int(kv["q"]), float(kv["tau"])))
        except KeyError as exc:
            raise ParseError(lineno, f"missing {exc.args[0]}=") from None
    if n is None:
        raise ParseError(0, "missing 'qubits' header")
    return gates, n


def cmd_reverse(args) -> int:
    gates, n = _parse_reverse(_read(args.input))
    gb = bqp.reverse_compile(gates, n)
    _emit(gbir.serialize(gb), args.output)
    return EXIT_OK


def cmd_sample(args) -> int:
    z = _load_vector(args.input)
    sigma = _load_matrix(args.sigma) if args.sigma else None
    lines = []
    if args.kind == "photon":
        draws = measurement.sample_photon_counts(z, args.seed, args.shots, sigma)
        for shot, row in enumerate(draws):
            for m, c in enumerate(row, start=1):
                lines.append(json.dumps({"seed": args.seed, "shot": shot, "mode": m, "value": int(c)}))
    else:
        draws = measurement.sample_homodyne(z, sigma, args.mode, args.theta, args.seed, args.shots)
        for shot, v in enumerate(draws):
            rec = {"seed": args.seed, "shot": shot, "mode": args.mode, "theta": args.theta, "value": float(v)}
            lines.append(json.dumps(rec))
    _emit("".join(line + "\n" for line in lines), args.output)
    return EXIT_OK


def cmd_measure(args) -> int:
    if args.snapshot:
        s = sim.load_snapshot(args.input)
        z = sim.decode_mean(s)
    else:
        z = _load_vector(args.input)
        s = sim.encode_mean(z)
    e = measurement.mode_energies(z)
    rec = {
        "energies": [float(v) for v in e],
        "total_energy": float(e.sum()),
        "symplectic_fraction": measurement.symplectic_fraction(s),
        "register_halves_fraction": measurement.register_halves_fraction(s),
    }
    _emit(json.dumps(rec) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.RawDescriptionHelpFormatter
    p = argparse.ArgumentParser(
        prog="symplectiq",
        description="Compile and simulate Gaussian bosonic circuits as real qubit circuits.",
        epilog=CONVENTIONS,
        formatter_class=fmt,
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, description=help_, epilog=CONVENTIONS, formatter_class=fmt)
        sp.set_defaults(func=func)
        return sp

    def common(sp, squeeze=True):
        sp.add_argument("-o", "--output", help="output file (default: stdout)")
        sp.add_argument("--capacity", type=int, default=sim.DEFAULT_CAPACITY,
                        help="largest dense qubit count to simulate (default: %(default)s, max 30)")
        if squeeze:
            sp.add_argument("--squeeze", choices=("lcu", "exact"), default="lcu",
                            help="heralded LCU blocks or simulator-native exact squeezing")
            sp.add_argument("--lcu-step", type=float, default=C.DEFAULT_LCU_STEP,
                            help="largest squeeze time per LCU block (default: %(default)s)")

    sp = add("compile", cmd_compile, "translate a GB circuit file into a qubit circuit file")
    sp.add_argument("input")
    common(sp)
    sp.add_argument("--decompose", action="store_true", help="expand multi-controlled gates")
    sp.add_argument("--counts", action="store_true", help="print gate counts as JSON on stderr")

    sp = add("run", cmd_run, "simulate a GB or qubit circuit on a moment vector")
    sp.add_argument("input")
    common(sp)
    sp.add_argument("--z", help="moment vector file (default: x times the first basis vector)")
    sp.add_argument("--x", type=float, default=1.0, help="displacement of mode 1 when --z is absent")
    sp.add_argument("--trace-every", type=int, default=1, help="trajectory sampling interval in gates")
    sp.add_argument("--trajectory", help="write trajectory CSV here")
    sp.add_argument("--snapshot", help="write the final state snapshot here")

    sp = add("oracle", cmd_oracle, "evolve a moment vector with dense propagators (M <= 64)")
    sp.add_argument("input")
    common(sp)
    sp.add_argument("--z", required=True, help="moment vector file")
    sp.add_argument("--diff", action="store_true", help="also simulate and print the max abs deviation")

    sp = add("classify", cmd_classify, "report the generator class of h, Delta, K or a GB circuit")
    sp.add_argument("input")
    sp.add_argument("--kind", choices=("h", "delta", "k", "circuit"), default="circuit")

    sp = add("bqp-gen", cmd_bqp_gen, "generate a bit-structured interferometer instance")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--x", type=float, default=1.0)
    sp.add_argument("--planted", choices=("yes", "no"), help="plant a known answer")
    sp.add_argument("-o", "--output")

    sp = add("bqp-run", cmd_bqp_run, "decide an instance: exit 0 YES, 1 NO, 3 INDETERMINATE")
    sp.add_argument("input")
    sp.add_argument("--trajectory", help="write per-layer trajectory CSV here")
    sp.add_argument("--capacity", type=int, default=sim.DEFAULT_CAPACITY)

    sp = add("reverse-compile", cmd_reverse, "map an {rz, ry, cry} qubit circuit to a GB circuit")
    sp.add_argument("input")
    sp.add_argument("-o", "--output")

    sp = add("sample", cmd_sample, "draw photon counts or homodyne outcomes as JSON lines")
    sp.add_argument("input", help="moment vector file")
    sp.add_argument("--kind", choices=("photon", "homodyne"), default="photon")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--shots", type=int, default=1)
    sp.add_argument("--mode", type=int, default=1)
    sp.add_argument("--theta", type=float, default=0.0, help="homodyne angle (0 = position)")
    sp.add_argument("--sigma", help="covariance matrix file (default: coherent)")
    sp.add_argument("-o", "--output")

    sp = add("measure", cmd_measure, "energies and qubit-side fractions of a moment vector")
    sp.add_argument("input", help="moment vector file, or snapshot with --snapshot")
    sp.add_argument("--snapshot", action="store_true")
    sp.add_argument("-o", "--output")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        configure_threads()
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (SymplectiqError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
