"""
Unit-Derived Codes
Command-line front end: builds unit schemes and the block, convolutional and
LDPC codes derived from them, runs the distance oracles, writes JSON/alist
artifacts and reproduces the reference constructions (`repro`).

Exit codes: 0 success, 1 usage or malformed input, 2 enumeration budget
exceeded, 3 reproduction mismatch.
"""

import argparse
import logging
import sys
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

import yaml
from tabulate import tabulate

from artifacts import ArtifactWriter, load_block_code, load_json, load_scheme
from block_codes import BlockCode, DEFAULT_CAP, classify, self_dual_from_orthogonal
from conv_codes import (
    PATTERNS, TWISTS, ConvCode, build_memory1_equal, build_memory1_unequal, build_memory2_three_blocks,
    build_memory3, closed_form_equal, closed_form_unequal, conv_report, describe, mixed_rate_builders, split_sizes,
)
from errors import BudgetExceededError, ConstructionError, NonUnitError, ShapeError, UnitCodeError
from field_matrix import Mat, hstack
from finite_field import FieldSpec
from fourier_codes import fourier_scheme, lcd_arrangement, mds_window_code
from group_rings import (
    CHECK_ELEMENT, GroupRingElem, ldpc_conv_memory1, ldpc_conv_memory3, ldpc_derive, random_unit_search,
    repair_check_element, to_alist,
)
from named_units import NAMED_UNITS, named_unit
from repro_catalog import CASE_INDEX, CASES, ReproContext, exit_status, format_matrix, run_all, run_case
from unit_scheme import SchemeSplit, UnitScheme, consecutive_split, derive_block_code

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_MISMATCH = 3

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def setup_logging(log_level: str = "INFO") -> logging.Logger:
    """Configure console and file logging for every module."""
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)

    # Avoid duplicates
    if root.handlers:
        root.handlers.clear()

    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, log_level.upper()))

    file_handler = logging.FileHandler('unit_codes.log')
    file_handler.setLevel(logging.DEBUG)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    console_handler.setFormatter(formatter)
    file_handler.setFormatter(formatter)

    root.addHandler(console_handler)
    root.addHandler(file_handler)

    return logging.getLogger("unit_codes")


logger = logging.getLogger("unit_codes")


@dataclass
class Config:
    """Defaults shared by every subcommand; CLI flags override them."""
    field: str = "gf(2^3)"
    cap: int = DEFAULT_CAP
    depth: Optional[int] = None
    threads: int = 1
    seed: int = 0
    output_dir: str = "output_unit_codes"
    log_level: str = "INFO"
    progress: bool = False
    allow_catastrophic: bool = False

    @classmethod
    def from_yaml(cls, path: str) -> 'Config':
        """Load configuration from a YAML file."""
        try:
            with open(path, 'r') as f:
                data = yaml.safe_load(f) or {}
        except FileNotFoundError:
            logger.warning(f"Config file {path} not found, using defaults")
            return cls()

        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            logger.error(f"Ignoring unknown config keys in {path}: {', '.join(unknown)}")
        return cls(**{key: value for key, value in data.items() if key in known})

    def validate(self) -> bool:
        """Validate the configuration."""
        FieldSpec.from_literal(self.field)
        if self.cap < 1:
            raise ValueError(f"cap must be positive, got {self.cap}")
        if self.depth is not None and self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        if self.log_level.upper() not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {LOG_LEVELS}, got {self.log_level}")
        return True


@dataclass
class JobSpec:
    """One fully resolved CLI invocation."""
    command: str
    field_literal: Optional[str] = None
    default_field: str = "gf(2^3)"
    cap: int = DEFAULT_CAP
    depth: Optional[int] = None
    threads: int = 1
    seed: int = 0
    output_dir: str = "output_unit_codes"
    progress: bool = False
    allow_catastrophic: bool = False
    options: Dict[str, Any] = field(default_factory=dict)

    @property
    def field_spec(self) -> FieldSpec:
        return FieldSpec.from_literal(self.field_literal or self.default_field)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


class UsageError(Exception):
    """Malformed command line."""


class CliParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def parse_index_set(text: str) -> List[int]:
    """Parse 0..3, 0,2,5 or 0..3,7 with inclusive ranges."""
    indices: List[int] = []
    try:
        for part in (p.strip() for p in text.split(",")):
            if not part:
                continue
            if ".." in part:
                lo, hi = part.split("..")
                indices.extend(range(int(lo), int(hi) + 1))
            else:
                indices.append(int(part))
    except ValueError as e:
        raise ShapeError(f"malformed index set {text!r}") from e
    if not indices:
        raise ShapeError(f"empty index set {text!r}")
    return indices


def _print_table(title: str, payload: Dict[str, Any]):
    rows = [[key, value] for key, value in payload.items()]
    print(f"\n{title}")
    print(tabulate(rows, tablefmt="simple"))


def _block_report(code: BlockCode, job: JobSpec) -> Dict[str, Any]:
    report = classify(code, cap=job.cap, threads=job.threads, progress=job.progress)
    summary = report.to_dict()
    _print_table(f"[{report.n},{report.k},{report.d if report.d is not None else '?'}] over {code.spec}", {
        "d": report.d,
        "flags": ", ".join(name for name, on in report.flags.items() if on) or "-",
        "dim(C ∩ C⊥)": report.intersection_dim,
        "css": report.css,
    })
    return summary


def cmd_fourier(job: JobSpec) -> int:
    opts = job.options
    fs = fourier_scheme(opts["n"], job.field_spec)
    split = None
    if opts.get("lcd") is not None:
        code, split = lcd_arrangement(fs, opts["lcd"])
    elif opts.get("rows"):
        code = derive_block_code(fs.scheme, parse_index_set(opts["rows"]))
    else:
        code = mds_window_code(fs, opts.get("start", 0), opts.get("r") or fs.n // 2 + 1, opts.get("step", 1))

    payload: Dict[str, Any] = {"n": fs.n, "field": fs.spec.literal, "omega": fs.omega.rep, "code": code.to_json()}
    if split is not None:
        payload["rows"] = list(split.row_partition[0])
    if opts.get("analyze"):
        payload["report"] = _block_report(code, job)
    ArtifactWriter(job.output_dir).save_json(payload, f"fourier_n{fs.n}.json")
    return EXIT_OK


def cmd_named(job: JobSpec) -> int:
    opts = job.options
    if opts.get("list") or not opts.get("name"):
        rows = [[name, named_unit(name).provenance] for name in NAMED_UNITS]
        print(tabulate(rows, headers=["unit", "provenance"], tablefmt="github"))
        return EXIT_OK

    spec = FieldSpec.from_literal(job.field_literal) if job.field_literal else None
    unit = named_unit(opts["name"], spec)
    U = unit.scheme.U
    payload: Dict[str, Any] = {"unit": unit.to_dict()}

    code: Optional[BlockCode] = None
    if opts.get("self_dual"):
        code = self_dual_from_orthogonal(U)
    elif opts.get("derive") == "I|X":
        code = BlockCode.from_generator(hstack([Mat.identity(U.spec, U.rows), U]))
    elif opts.get("derive"):
        code = derive_block_code(unit.scheme, parse_index_set(opts["derive"]))
    if code is not None:
        payload["code"] = code.to_json()
        if opts.get("analyze"):
            payload["report"] = _block_report(code, job)
    ArtifactWriter(job.output_dir).save_json(payload, f"named_{unit.name}.json")
    return EXIT_OK


def cmd_derive(job: JobSpec) -> int:
    opts = job.options
    scheme = load_scheme(opts["scheme"])
    code = derive_block_code(scheme, parse_index_set(opts["rows"]))
    payload = {"code": code.to_json(), "report": _block_report(code, job)}
    ArtifactWriter(job.output_dir).save_json(payload, "derived_code.json")
    return EXIT_OK


def _conv_scheme(job: JobSpec) -> UnitScheme:
    opts = job.options
    if opts.get("named"):
        spec = FieldSpec.from_literal(job.field_literal) if job.field_literal else None
        scheme = named_unit(opts["named"], spec).scheme
    elif opts.get("fourier"):
        scheme = fourier_scheme(opts["fourier"], job.field_spec).scheme
    elif opts.get("scheme"):
        scheme = load_scheme(opts["scheme"])
    else:
        raise UsageError("conv needs one of --named, --fourier or --scheme")
    if opts.get("order"):
        scheme = scheme.permuted(parse_index_set(opts["order"]))
    return scheme


BLOCKS_FOR_MEMORY = {1: 2, 2: 3, 3: 4}


def build_conv(job: JobSpec) -> Tuple[ConvCode, SchemeSplit]:
    opts = job.options
    scheme = _conv_scheme(job)
    memory = opts.get("memory", 1)
    parts = 4 if opts.get("pattern") else BLOCKS_FOR_MEMORY[memory]
    sizes = split_sizes(opts["split"]) if opts.get("split") else [scheme.n // parts] * parts
    split = consecutive_split(scheme, sizes)
    twist = opts.get("twist", "plain")

    if opts.get("pattern"):
        return mixed_rate_builders(split, opts["pattern"]), split
    if memory == 1:
        if len(sizes) == 2 and sizes[0] == sizes[1]:
            return build_memory1_equal(split, twist), split
        return build_memory1_unequal(split, twist), split
    if memory == 2:
        return build_memory2_three_blocks(split), split
    return build_memory3(split, twist), split


def cmd_conv(job: JobSpec) -> int:
    opts = job.options
    code, split = build_conv(job)
    report = conv_report(code, depth=job.depth, cap=job.cap, threads=job.threads,
                         compute_distance=opts.get("free_distance", False),
                         allow_catastrophic=job.allow_catastrophic, progress=job.progress)
    summary = report.to_dict()
    if opts.get("closed_form"):
        if len(split.sizes) != 2 or opts.get("pattern"):
            raise ConstructionError("closed forms exist for two-block memory-1 builds only")
        equal = split.sizes[0] == split.sizes[1]
        summary["closed_form"] = (closed_form_equal if equal else closed_form_unequal)(split, cap=job.cap)

    _print_table(f"{describe(code)} over {code.spec}", {
        "class": report.classification,
        "non-catastrophic": report.noncatastrophic,
        "d_f": report.free_distance,
        "proven": report.proven,
        "gsb": report.gsb,
        "css": report.css,
        "closed form": summary.get("closed_form"),
    })
    ArtifactWriter(job.output_dir).save_json({"code": code.to_json(), "report": summary}, "conv_code.json")
    return EXIT_OK


def _ldpc_element(job: JobSpec) -> GroupRingElem:
    opts = job.options
    if opts.get("search"):
        v = random_unit_search(opts.get("group_n", 24), opts["search"], seed=job.seed,
                               max_trials=opts.get("max_trials", 1000))
        if v is None:
            raise NonUnitError(f"no 4-cycle-free unit of support {opts['search']} found")
        return v
    v = GroupRingElem.parse(opts.get("element") or CHECK_ELEMENT)
    if opts.get("repair"):
        repaired = repair_check_element(v)
        if repaired is None:
            raise NonUnitError(f"no single-term repair of {v} is a 4-cycle-free unit")
        v = repaired
    return v


def cmd_ldpc(job: JobSpec) -> int:
    opts = job.options
    v = _ldpc_element(job)
    writer = ArtifactWriter(job.output_dir)

    keep_rows = parse_index_set(opts["keep_rows"]) if opts.get("keep_rows") else None
    derivation = ldpc_derive(v, keep_rows=keep_rows, require_girth=opts.get("girth"), rows=opts.get("rows"),
                             seed=job.seed if opts.get("random_rows") else None)
    payload: Dict[str, Any] = {"derivation": derivation.to_dict()}

    memory = opts.get("conv")
    if memory:
        code, census = ldpc_conv_memory1(v, opts.get("rows")) if memory == 1 else ldpc_conv_memory3(v)
        payload["convolutional"] = {
            "parameters": list(code.parameters),
            "cycles": {name: report.to_dict() for name, report in census.items()},
        }

    _print_table(f"LDPC [{derivation.code.n},{derivation.code.r}] from {v}", {
        "four-cycles": derivation.cycle_report.four_cycles,
        "six-cycles": derivation.cycle_report.six_cycles,
        "max column weight": derivation.cycle_report.max_col_weight,
        "max row weight": derivation.cycle_report.max_row_weight,
        "convolutional": describe(code) if memory else "-",
    })
    writer.save_json(payload, "ldpc.json")
    writer.save_text(to_alist(derivation.code.check_matrix), "ldpc_check.alist")
    return EXIT_OK


def cmd_analyze(job: JobSpec) -> int:
    opts = job.options
    writer = ArtifactWriter(job.output_dir)
    if opts.get("conv"):
        code = ConvCode.from_json(load_json(opts["path"]))
        report = conv_report(code, depth=job.depth, cap=job.cap, threads=job.threads,
                             compute_distance=not opts.get("no_distance"),
                             allow_catastrophic=job.allow_catastrophic, progress=job.progress)
        _print_table(f"{describe(code)} over {code.spec}", report.to_dict())
        writer.save_json(report.to_dict(), "analysis.json")
        return EXIT_OK
    code = load_block_code(opts["path"])
    writer.save_json(_block_report(code, job), "analysis.json")
    return EXIT_OK


def cmd_repro(job: JobSpec) -> int:
    opts = job.options
    case_id = opts.get("case", "all")
    if opts.get("list"):
        rows = [[c.case_id, c.title, "slow" if c.slow else ""] for c in CASES]
        print(tabulate(rows, headers=["case", "construction", ""], tablefmt="github"))
        return EXIT_OK

    ctx = ReproContext(cap=job.cap, depth=job.depth, threads=job.threads, progress=job.progress)
    if case_id == "all":
        outcomes = run_all(ctx, include_slow=opts.get("slow", False))
    elif case_id in CASE_INDEX:
        outcomes = [run_case(CASE_INDEX[case_id], ctx)]
    else:
        raise UsageError(f"unknown repro case {case_id!r}; see `repro --list`")

    print(format_matrix(outcomes))
    ArtifactWriter(job.output_dir).save_json([o.to_dict() for o in outcomes], f"repro_{case_id}.json")
    return exit_status(outcomes)


COMMANDS = {
    "fourier": cmd_fourier,
    "named": cmd_named,
    "derive": cmd_derive,
    "conv": cmd_conv,
    "ldpc": cmd_ldpc,
    "analyze": cmd_analyze,
    "repro": cmd_repro,
}


def run(job: JobSpec) -> int:
    """Execute one job and map failures onto exit codes."""
    if job.command not in COMMANDS:
        logger.error(f"Unknown command {job.command!r}")
        return EXIT_USAGE
    try:
        return COMMANDS[job.command](job)
    except BudgetExceededError as e:
        logger.error(f"Budget exceeded: {e}")
        return EXIT_BUDGET
    except UsageError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except (UnitCodeError, FileNotFoundError, KeyError) as e:
        logger.error(f"{job.command} failed: {e}")
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as e:
        logger.error(f"{job.command} failed: {type(e).__name__}: {e}", exc_info=logger.isEnabledFor(logging.DEBUG))
        return EXIT_USAGE


def build_parser() -> CliParser:
    shared = CliParser(add_help=False)
    shared.add_argument("--field", help="Field literal, e.g. 'gf(2^3)' or 'gf(17)'")
    shared.add_argument("--cap", type=int, help="Enumeration cap for the distance oracles")
    shared.add_argument("--depth", type=int, help="Free-distance information degree (default 3μ+2)")
    shared.add_argument("--threads", type=int, help="Worker threads for the oracles")
    shared.add_argument("--seed", type=int, help="Seed for randomised selections")
    shared.add_argument("--out", help="Output directory")
    shared.add_argument("--config", default="config.yaml", help="Path to configuration file")
    shared.add_argument("--log-level", choices=LOG_LEVELS)
    shared.add_argument("--progress", action="store_true", default=None, help="Show oracle progress bars")
    shared.add_argument("--allow-catastrophic", action="store_true", default=None,
                        help="Run the free-distance oracle on catastrophic encoders")

    parser = CliParser(prog="unit-codes", description="Block, convolutional and LDPC codes from unit schemes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fourier", parents=[shared], help="Codes from the Fourier matrix F_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rows", help="Row set, e.g. 0..3")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--r", type=int, help="Window length")
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--lcd", type=int, metavar="R", help="LCD arrangement with parameter r")
    p.add_argument("--analyze", action="store_true")

    p = sub.add_parser("named", parents=[shared], help="Named units")
    p.add_argument("name", nargs="?", choices=sorted(NAMED_UNITS))
    p.add_argument("--list", action="store_true")
    p.add_argument("--derive", help="'I|X' for (I, X), or a row set of U")
    p.add_argument("--self-dual", action="store_true", help="(I, cX) self-dual code from X·Xᵀ = αI")
    p.add_argument("--analyze", action="store_true")

    p = sub.add_parser("derive", parents=[shared], help="Block code from a scheme JSON")
    p.add_argument("--scheme", required=True)
    p.add_argument("--rows", required=True)

    p = sub.add_parser("conv", parents=[shared], help="Convolutional codes from a scheme split")
    p.add_argument("--named", choices=sorted(NAMED_UNITS))
    p.add_argument("--fourier", type=int, metavar="N")
    p.add_argument("--scheme")
    p.add_argument("--order", help="Row permutation applied before splitting")
    p.add_argument("--split", help="Block sizes, e.g. 4,3")
    p.add_argument("--memory", type=int, choices=[1, 2, 3], default=1)
    p.add_argument("--twist", choices=TWISTS, default="plain")
    p.add_argument("--pattern", choices=PATTERNS)
    p.add_argument("--free-distance", action="store_true")
    p.add_argument("--closed-form", action="store_true")

    p = sub.add_parser("ldpc", parents=[shared], help="LDPC codes from GF(2)[C_n x C_4]")
    p.add_argument("--element", help=f"Group ring literal (default: {CHECK_ELEMENT})")
    p.add_argument("--repair", action="store_true", help="Use the nearest 4-cycle-free unit")
    p.add_argument("--search", type=int, metavar="SUPPORT", help="Seeded random unit search")
    p.add_argument("--group-n", type=int, default=24)
    p.add_argument("--max-trials", type=int, default=1000)
    p.add_argument("--rows", type=int, help="Number of generator rows kept")
    p.add_argument("--keep-rows", help="Explicit row set")
    p.add_argument("--random-rows", action="store_true", help="Seeded random row selection")
    p.add_argument("--girth", type=int, choices=[4, 6])
    p.add_argument("--conv", type=int, choices=[1, 3], help="Also build the convolutional LDPC code")

    p = sub.add_parser("analyze", parents=[shared], help="Classify a code JSON")
    p.add_argument("path")
    p.add_argument("--conv", action="store_true", help="The file holds a convolutional code")
    p.add_argument("--no-distance", action="store_true")

    p = sub.add_parser("repro", parents=[shared], help="Rebuild the reference constructions")
    p.add_argument("case", nargs="?", default="all")
    p.add_argument("--list", action="store_true")
    p.add_argument("--slow", action="store_true", help="Include slow cases in 'all'")
    return parser


SHARED_KEYS = {"field", "cap", "depth", "threads", "seed", "out", "config", "log_level", "progress",
               "allow_catastrophic", "command"}


def job_from_args(args: argparse.Namespace, config: Config) -> JobSpec:
    """Merge CLI flags over config values."""
    def pick(name: str, default: Any) -> Any:
        value = getattr(args, name, None)
        return default if value is None else value

    options = {key: value for key, value in vars(args).items() if key not in SHARED_KEYS}
    return JobSpec(
        command=args.command,
        field_literal=args.field,
        default_field=config.field,
        cap=pick("cap", config.cap),
        depth=pick("depth", config.depth),
        threads=pick("threads", config.threads),
        seed=pick("seed", config.seed),
        output_dir=pick("out", config.output_dir),
        progress=pick("progress", config.progress),
        allow_catastrophic=pick("allow_catastrophic", config.allow_catastrophic),
        options=options,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, load configuration and run the job."""
    global logger
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(e, file=sys.stderr)
        return EXIT_USAGE

    config = Config.from_yaml(args.config)
    logger = setup_logging(args.log_level or config.log_level)
    try:
        config.validate()
    except (ValueError, UnitCodeError) as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_USAGE

    job = job_from_args(args, config)
    logger.debug(f"Job: {job.to_dict()}")
    try:
        return run(job)
    except KeyboardInterrupt:
        logger.info("Process interrupted by user")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
