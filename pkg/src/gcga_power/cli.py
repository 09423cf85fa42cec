"""Command line entry point: ``gcga-power analyze|compensate|waveform``.

Exit codes: 0 ok, 2 invalid input, 3 computation error, 4 infeasible design.
"""
from __future__ import annotations

import argparse
import sys

from .circuit import CircuitFile, load_circuit
from .errors import (
    CircuitFileError,
    ConsistencyError,
    InfeasibleDesignError,
    PowerFactorUndefined,
    SingularAdmittanceError,
    SpectrumError,
)
from .report import (
    analyze,
    compensate,
    render_csv,
    render_json,
    render_table,
    render_waveform,
    waveform_rows,
)

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE, EXIT_INFEASIBLE = 0, 2, 3, 4

RENDERERS = {"table": render_table, "json": render_json, "csv": render_csv}


def run_analyze(circuit: CircuitFile, fmt: str = "table") -> str:
    return RENDERERS[fmt](analyze(circuit))


def run_compensate(circuit: CircuitFile, mode=None, poles=None, fmt: str = "table") -> str:
    return RENDERERS[fmt](compensate(circuit, mode, poles))


def run_waveform(circuit: CircuitFile, samples: int = 512, cycles: int = 1) -> str:
    return render_waveform(waveform_rows(circuit, samples, cycles))


def _poles(text: str) -> list[float]:
    try:
        return [float(k) for k in text.split(",") if k.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"poles must be comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcga-power",
        description="Multivector apparent-power analysis and passive compensation of single-port loads.")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="decompose the apparent power of a circuit file")
    a.add_argument("file")
    a.add_argument("--format", choices=sorted(RENDERERS), default="table")

    c = sub.add_parser("compensate", help="design a shunt compensator and compare before/after")
    c.add_argument("file")
    c.add_argument("--mode", choices=["cap", "lc"])
    c.add_argument("--poles", type=_poles, help="pole multipliers k1,k2,... (lc mode)")
    c.add_argument("--format", choices=sorted(RENDERERS), default="table")

    w = sub.add_parser("waveform", help="sample u(t), i(t) and p(t) as CSV")
    w.add_argument("file")
    w.add_argument("--samples", type=int, default=512)
    w.add_argument("--cycles", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        circuit = load_circuit(args.file)
        if args.command == "analyze":
            out = run_analyze(circuit, args.format)
        elif args.command == "compensate":
            out = run_compensate(circuit, args.mode, args.poles, args.format)
        else:
            if args.samples < 2 or args.cycles < 1:
                print("error: --samples must be >= 2 and --cycles >= 1", file=sys.stderr)
                return EXIT_INPUT
            out = run_waveform(circuit, args.samples, args.cycles)
    except (OSError, CircuitFileError, SpectrumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InfeasibleDesignError, SingularAdmittanceError) as exc:
        print(f"infeasible design: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (PowerFactorUndefined, ConsistencyError, ArithmeticError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
