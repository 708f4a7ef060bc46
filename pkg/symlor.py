import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from config import Config
from src.closedform import degree3_region_table
from src.families import (
    DyckPath,
    chromatic_symmetric,
    elementary,
    indifference_graph,
    mconvex_generating,
    normalized_schur,
)
from src.lorentz import LorentzianTester, Mode
from src.partitions import Partition
from src.symfunc import Basis, SymPoly, convert_basis

logger = logging.getLogger(__name__)

COMMANDS = ("check", "oracle", "convert", "family", "region", "bench")
FAMILIES = ("e", "mconvex", "ns", "chromatic")

EXIT_LORENTZIAN = 0
EXIT_ERROR = 1
EXIT_NOT_LORENTZIAN = 2


@dataclass
class Request:
    """
    One command-line invocation

    Attributes:
        command: check, oracle, convert, family, region or bench
        target: Input JSON path, or the family name for the family command
        inline_json: Input document given inline instead of a path
        mode: function or polynomial
        nvars: Variable count for polynomial mode (and chromatic colors)
        basis: Input basis when the document has none; target basis for convert
        out: json or csv
        shape: Serialized partition for the mconvex and ns families
        path: Dyck path for the chromatic family
        degree: Degree for the e family and the default bench input
        steps: Simplex subdivisions for region
    """

    command: str
    target: Optional[str] = None
    inline_json: Optional[str] = None
    mode: str = "function"
    nvars: Optional[int] = None
    basis: Optional[str] = None
    out: str = "json"
    shape: Optional[str] = None
    path: Optional[str] = None
    degree: Optional[int] = None
    steps: Optional[int] = None

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command '{self.command}' (expected one of {', '.join(COMMANDS)})")
        if self.mode not in ("function", "polynomial"):
            raise ValueError(f"unknown mode '{self.mode}' (expected function or polynomial)")
        if self.mode == "polynomial" and self.nvars is None:
            raise ValueError("polynomial mode requires --nvars")
        if self.out not in ("json", "csv"):
            raise ValueError(f"unknown output format '{self.out}' (expected json or csv)")
        if self.command == "oracle" and self.mode != "polynomial":
            raise ValueError("oracle needs --mode polynomial --nvars N")
        if self.command == "convert" and self.basis is None:
            raise ValueError("convert needs the target basis in --basis")
        if self.command == "family" and self.target not in FAMILIES:
            raise ValueError(f"family needs one of {', '.join(FAMILIES)}, got '{self.target}'")
        if self.steps is not None and self.steps < 1:
            raise ValueError(f"--steps must be at least 1, got {self.steps}")
        if self.command in ("check", "oracle", "convert") and not (self.target or self.inline_json):
            raise ValueError(f"{self.command} needs an input file or --json")

    @property
    def lorentz_mode(self):
        return Mode.parse(self.mode, self.nvars)


def _load_input(request, default_basis=None):
    if request.inline_json is not None:
        text = request.inline_json
    else:
        text = Path(request.target).read_text(encoding="utf-8")
    return SymPoly.from_json(text, default_basis=default_basis)


def _verdict_output(verdict, out):
    if out == "csv":
        kind = verdict.failure.kind.value if verdict.failure else ""
        return f"lorentzian,kind,opCount\n{int(verdict.lorentzian)},{kind},{verdict.op_count}"
    return verdict.to_json()


def _family(request):
    if request.target == "e":
        if request.degree is None:
            raise ValueError("family e needs --degree")
        return elementary(request.degree)
    if request.target in ("mconvex", "ns"):
        if request.shape is None:
            raise ValueError(f"family {request.target} needs --shape, e.g. --shape [3,3]")
        shape = Partition.parse(request.shape)
        return mconvex_generating(shape) if request.target == "mconvex" else normalized_schur(shape)

    if request.path is None:
        raise ValueError("family chromatic needs --path, e.g. --path NNEE")
    path = DyckPath.parse(request.path)
    nvars = request.nvars or path.semilength
    _, symmetric = chromatic_symmetric(indifference_graph(path), nvars)
    return symmetric


def run(request):
    """
    Execute one request

    Args:
        request: Request

    Returns:
        (exit status, output document); on error the output is the diagnostic
    """
    try:
        request.validate()
        command = request.command

        if command in ("check", "oracle"):
            f = _load_input(request, request.basis)
            tester = LorentzianTester(request.lorentz_mode)
            verdict = tester.check(f) if command == "check" else tester.oracle(f)
            status = EXIT_LORENTZIAN if verdict.lorentzian else EXIT_NOT_LORENTZIAN
            return status, _verdict_output(verdict, request.out)

        if command == "convert":
            f = _load_input(request)
            return EXIT_LORENTZIAN, convert_basis(f, request.basis).to_json()

        if command == "family":
            f = _family(request)
            if request.basis is not None:
                f = convert_basis(f, request.basis)
            return EXIT_LORENTZIAN, f.to_json()

        if command == "region":
            logger.info("=" * 60)
            logger.info("Sampling the degree-3 Lorentzian regions")
            logger.info("=" * 60)
            table = degree3_region_table(request.steps)
            table = table.astype({"n2": int, "n5": int, "fn": int})
            return EXIT_LORENTZIAN, table.to_csv(index=False, lineterminator="\n").rstrip("\n")

        # bench
        if request.target or request.inline_json:
            f = _load_input(request, request.basis)
        else:
            f = mconvex_generating(Partition([request.degree or 4]))
        logger.info("=" * 60)
        logger.info(f"Benchmarking degree {f.degree} across n = {list(Config.BENCH_NVARS)}")
        logger.info("=" * 60)
        counts = LorentzianTester(Mode.function()).bench(f)
        document = {"degree": f.degree, "opCount": {str(n): c for n, c in counts.items()}}
        return EXIT_LORENTZIAN, json.dumps(document, indent=2)

    except (ValueError, OSError, KeyError) as e:
        logger.error(f"Error running {request.command}: {e}")
        return EXIT_ERROR, f"error: {e}"


def build_parser():
    parser = argparse.ArgumentParser(
        description="Exact tester for Lorentzian symmetric polynomials and functions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python symlor.py check f.json --mode polynomial --nvars 5
  python symlor.py check --json '{"degree": 2, "basis": "mtilde", "coeffs": {"[2]": "1", "[1,1]": "1"}}'
  python symlor.py oracle f.json --mode polynomial --nvars 4
  python symlor.py convert ns_input.json --basis mtilde
  python symlor.py family ns --shape [3,3]
  python symlor.py family chromatic --path NNEE --nvars 4
  python symlor.py family e --degree 4
  python symlor.py region --steps 140 > cubic_regions.csv
  python symlor.py bench --degree 5
        """
    )

    parser.add_argument("command", choices=COMMANDS, help="What to run")
    parser.add_argument(
        "target",
        nargs="?",
        help="Input JSON file (check/oracle/convert/bench) or family name (e, mconvex, ns, chromatic)"
    )
    parser.add_argument("--json", dest="inline_json", help="Input document given inline")
    parser.add_argument(
        "--mode",
        choices=("function", "polynomial"),
        default="function",
        help="Test the symmetric function or its n-variable polynomial"
    )
    parser.add_argument("--nvars", type=int, help="Number of variables for polynomial mode")
    parser.add_argument(
        "--basis",
        choices=[b.value for b in Basis],
        help="Input basis when the document has none; target basis for convert"
    )
    parser.add_argument("--out", choices=("json", "csv"), default="json", help="Output format")
    parser.add_argument("--shape", help="Partition for the mconvex and ns families, e.g. [3,3]")
    parser.add_argument("--path", help="Dyck path for the chromatic family, e.g. NNEE")
    parser.add_argument("--degree", type=int, help="Degree for family e and the default bench input")
    parser.add_argument("--steps", type=int, help="Simplex subdivisions for region")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log per-μ and per-minor detail")
    return parser


def main(argv=None):
    """
    Main entry point for the CLI
    """
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else Config.LOG_LEVEL,
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )

    try:
        Config.validate()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    request = Request(
        command=args.command,
        target=args.target,
        inline_json=args.inline_json,
        mode=args.mode,
        nvars=args.nvars,
        basis=args.basis,
        out=args.out,
        shape=args.shape,
        path=args.path,
        degree=args.degree,
        steps=args.steps,
    )
    status, output = run(request)
    if status == EXIT_ERROR:
        print(output, file=sys.stderr)
    else:
        print(output)
    return status


if __name__ == "__main__":
    sys.exit(main())
