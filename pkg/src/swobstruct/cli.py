"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 inapplicable, 4 paper-verification failure.
"""

from __future__ import annotations

import argparse
import csv
import enum
import io
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .homeo import Inapplicable, KStrategy, Unsupported, exotic_pair_search, freedman_type
from .lattice import LatticeError
from .obstructions import obstruction_report
from .report import dumps, envelope, to_markdown, verify_paper
from .riemannian_functionals import Unclassified, bounds_table, keen_samples, verify_keen_minimum
from .surface_algebra import SpecError, parse_spec

EXIT_OK, EXIT_PARSE, EXIT_INAPPLICABLE, EXIT_VERIFY = 0, 2, 3, 4


class Command(enum.Enum):
    Info = "info"
    Obstruct = "obstruct"
    Bounds = "bounds"
    VerifyMinimum = "verify-minimum"
    Homeo = "homeo"
    SearchExotic = "search-exotic"
    VerifyPaper = "verify-paper"
    KeenCsv = "keen-csv"


class OutputFormat(enum.Enum):
    JSON = "json"
    Markdown = "markdown"


@dataclass
class RunConfig:
    command: Command
    specs: list[str] = field(default_factory=list)
    output: OutputFormat = OutputFormat.JSON
    grid_size: int = 10**6
    seed: int = 0

    def __post_init__(self):
        if self.grid_size < 1000:
            raise ValueError("grid_size must be >= 1000")


def parse_range(text: str) -> range:
    """``9..20`` (inclusive) or a single integer."""
    if ".." in text:
        a, b = text.split("..", 1)
        return range(int(a), int(b) + 1)
    return range(int(text), int(text) + 1)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "markdown"], default="json", dest="output")

    p = argparse.ArgumentParser(prog="swobstruct", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="characteristic numbers of a surface recipe")
    s.add_argument("spec")

    s = sub.add_parser("obstruct", parents=[common], help="Einstein obstruction report")
    s.add_argument("spec")
    s.add_argument("--assume-sw", action="store_true",
                   help="assert a nonzero Seiberg-Witten invariant for the root (e.g. symplectic)")

    s = sub.add_parser("bounds", parents=[common], help="curvature bound table")
    s.add_argument("spec")
    s.add_argument("--beta", default="1")
    s.add_argument("--eps", default="1/3")

    s = sub.add_parser("verify-minimum", parents=[common], help="grid certificate for 32/57")
    s.add_argument("--grid-size", type=int, default=10**6)

    s = sub.add_parser("homeo", parents=[common], help="Freedman homeomorphism test")
    s.add_argument("spec_a")
    s.add_argument("spec_b")

    s = sub.add_parser("search-exotic", parents=[common], help="search homeomorphic exotic pairs")
    s.add_argument("--l-range", type=parse_range, default=range(0))
    s.add_argument("--m-range", type=parse_range, default=range(0))
    s.add_argument("--strategy", choices=["noether", "min"], default="noether")

    s = sub.add_parser("verify-paper", parents=[common], help="reproduce the worked examples")
    s.add_argument("--grid-size", type=int, default=10**6)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("keen-csv", help="CSV samples of the keen quadratic")
    s.add_argument("--samples", type=int, default=200)
    return p


def _emit(cfg: RunConfig, result, out) -> None:
    payload = envelope(cfg.command.value, result)
    if cfg.output is OutputFormat.Markdown:
        out.write(to_markdown(payload, f"swobstruct {cfg.command.value}"))
    else:
        out.write(dumps(payload) + "\n")


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    command = Command(args.command)
    try:
        if command is Command.KeenCsv:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["beta", "f"])
            for b, f in keen_samples(args.samples):
                w.writerow([repr(b), repr(f)])
            out.write(buf.getvalue())
            return EXIT_OK

        specs = [getattr(args, n) for n in ("spec", "spec_a", "spec_b") if hasattr(args, n)]
        try:
            cfg = RunConfig(command, specs, OutputFormat(args.output),
                            getattr(args, "grid_size", 10**6), getattr(args, "seed", 0))
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_PARSE

        if command is Command.Info:
            spec = parse_spec(cfg.specs[0])
            _emit(cfg, {"spec": str(spec), "char_numbers": spec.evaluate().to_dict()}, out)
        elif command is Command.Obstruct:
            spec = parse_spec(args.spec)
            report = obstruction_report(spec, assert_sw=args.assume_sw)
            _emit(cfg, report.to_dict(), out)
            if report.any_inapplicable:
                return EXIT_INAPPLICABLE
        elif command is Command.Bounds:
            spec = parse_spec(args.spec)
            try:
                rows = bounds_table(spec, Fraction(args.beta), Fraction(args.eps))
            except (ValueError, Unclassified) as e:
                print(f"inapplicable: {e}", file=sys.stderr)
                return EXIT_INAPPLICABLE
            _emit(cfg, [{"name": r.name.value, "coefficient": r.value, "strict": r.strict,
                         "units": r.units, "inputs": r.inputs} for r in rows], out)
        elif command is Command.VerifyMinimum:
            cert = verify_keen_minimum(cfg.grid_size)
            _emit(cfg, cert.to_dict(), out)
            if not cert.ok:
                return EXIT_VERIFY
        elif command is Command.Homeo:
            a, b = parse_spec(args.spec_a), parse_spec(args.spec_b)
            try:
                ta, tb = freedman_type(a.evaluate()), freedman_type(b.evaluate())
            except (Unsupported, Inapplicable) as e:
                print(f"inapplicable: {e}", file=sys.stderr)
                return EXIT_INAPPLICABLE
            _emit(cfg, {"a": str(a), "b": str(b), "homeomorphic": ta == tb,
                        "type_a": ta.to_dict(), "type_b": tb.to_dict(),
                        "shared_type": ta.to_dict() if ta == tb else None}, out)
        elif command is Command.SearchExotic:
            strategy = KStrategy.NoetherMatch if args.strategy == "noether" else KStrategy.MinThreshold
            pairs = exotic_pair_search(args.l_range, args.m_range, strategy)
            _emit(cfg, [p.to_dict() for p in pairs], out)
        elif command is Command.VerifyPaper:
            checks = verify_paper(cfg.grid_size, cfg.seed)
            _emit(cfg, {"all_ok": all(c.ok for c in checks), "checks": [c.to_dict() for c in checks]}, out)
            failed = [c.name for c in checks if not c.ok]
            if failed:
                print("FAILED: " + "; ".join(failed), file=sys.stderr)
                return EXIT_VERIFY
    except (SpecError, LatticeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
