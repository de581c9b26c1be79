"""
Command-line front end.

Commands: count, enumerate, monogenic, thue-mahler, verify, serve. Tables go to
stdout (or --out), logs to stderr. Exit codes: 0 success, 2 invalid input,
3 failed consistency check.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field, ValidationError

from .config import settings
from .exceptions import ConsistencyError, CubicOrdersError, InputError
from .field_core import PrimeContext, make_field, make_prime_context
from .index_form import index_form_order
from .log import configure_logging
from .order_enum import METHODS, count_by_i, cumulative_A, enumerate_orders
from .reporting import FORMATS, Table, render
from .thue_mahler import classify_solution, find_primitive_solutions, run_census
from .verify import (
    DEFAULT_IDENTITY_BOX,
    DEFAULT_MS,
    DEFAULT_N_MAX,
    DEFAULT_PS,
    VerificationGrid,
    run_verification,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONSISTENCY = 3


class RunConfig(BaseModel):
    """Validated command-line options."""
    command: str
    m: Optional[int] = None
    p: Optional[int] = None
    n: Optional[int] = Field(None, ge=0)
    n_max: Optional[int] = Field(None, ge=0)
    method: str = "fast"
    verify_scan: bool = False
    search_bound: int = Field(default_factory=lambda: settings.SEARCH_BOUND, ge=0)
    tm_height: int = Field(default_factory=lambda: settings.TM_HEIGHT, ge=0)
    tm_nmax: int = Field(default_factory=lambda: settings.TM_NMAX, ge=0)
    format: str = "csv"
    out: Optional[str] = None
    ms: List[int] = Field(default_factory=lambda: list(DEFAULT_MS))
    ps: List[int] = Field(default_factory=lambda: list(DEFAULT_PS))
    identity_box: int = Field(DEFAULT_IDENTITY_BOX, ge=0)

    def context(self) -> PrimeContext:
        return make_prime_context(make_field(self.m), self.p)


@dataclass
class CommandResult:
    command: str
    tables: List[Table]
    metadata: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = EXIT_OK


def _field_metadata(ctx: PrimeContext) -> Dict[str, Any]:
    f = ctx.field
    return {
        "m": f.m,
        "h": f.h,
        "k": f.k,
        "p": ctx.p,
        "basis": f.basis,
        "discriminant": f.discriminant,
        "negative_m": f.is_negative,
    }


def cmd_count(config: RunConfig) -> CommandResult:
    ctx = config.context()
    method = config.method
    reports = cumulative_A(ctx, config.n, verify_scan=config.verify_scan, method=method)

    counts = Table("counts", ("n", "by_formula", "by_scan", "cumulative_A"))
    for report in reports:
        counts.add(report.model_dump())
    tables = [counts]

    if config.format == "text":
        distribution = Table("orders_by_i", ("n", "i", "count"))
        for n in range(config.n + 1):
            for i, count in sorted(count_by_i(ctx, n).items()):
                distribution.add({"n": n, "i": i, "count": count})
        tables.append(distribution)

    metadata = {**_field_metadata(ctx), "scan_method": method if config.verify_scan else None}
    return CommandResult("count", tables, metadata)


def cmd_enumerate(config: RunConfig) -> CommandResult:
    ctx = config.context()
    table = Table("orders", ("n", "i", "j", "beta", "A_coeff", "B_coeff", "C_coeff", "D_coeff"))
    for t in enumerate_orders(ctx, config.n, config.method):
        table.add({**t.to_dict(), **index_form_order(t).to_dict()})
    return CommandResult("enumerate", [table], {**_field_metadata(ctx), "method": config.method})


def cmd_monogenic(config: RunConfig) -> CommandResult:
    ctx = config.context()
    summary = run_census(ctx, config.n_max, config.search_bound, config.tm_height, config.tm_nmax)

    census = Table("census", (
        "n", "count_orders", "count_monogenic_found", "cumulative_A", "cumulative_B", "ratio",
    ))
    linked = Table("linked_solutions", ("n", "i", "j", "beta", "x", "y", "U", "V", "N", "sign", "e"))
    for row in summary.rows:
        census.add(row.to_dict())
        for link in row.links:
            linked.add(link.to_dict())

    metadata = {
        **_field_metadata(ctx),
        "search_bound": config.search_bound,
        "tm_height": config.tm_height,
        "tm_nmax": config.tm_nmax,
        **summary.metadata(),
    }
    return CommandResult("monogenic", [census, linked], metadata)


def cmd_thue_mahler(config: RunConfig) -> CommandResult:
    ctx = config.context()
    table = Table("solutions", ("U", "V", "N", "sign", "case", "a", "b"))
    for s in find_primitive_solutions(ctx, config.tm_height, config.tm_nmax):
        table.add({**s.to_dict(), **classify_solution(s, ctx).to_dict()})
    metadata = {**_field_metadata(ctx), "tm_height": config.tm_height, "tm_nmax": config.tm_nmax}
    return CommandResult("thue-mahler", [table], metadata)


def cmd_verify(config: RunConfig) -> CommandResult:
    n_max = DEFAULT_N_MAX if config.n_max is None else config.n_max
    grid = VerificationGrid(
        ms=tuple(config.ms), ps=tuple(config.ps), n_max=n_max, identity_box=config.identity_box,
    )
    results = run_verification(grid)

    table = Table("properties", ("property", "passed", "detail"))
    for result in results:
        table.add(result.to_dict())
    metadata: Dict[str, Any] = {
        "ms": " ".join(map(str, grid.ms)),
        "ps": " ".join(map(str, grid.ps)),
        "n_max": n_max,
        "identity_box": grid.identity_box,
    }
    if not results:
        metadata["status"] = "no cases"
    failed = any(not result.passed for result in results)
    return CommandResult("verify", [table], metadata, EXIT_CONSISTENCY if failed else EXIT_OK)


COMMANDS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "monogenic": cmd_monogenic,
    "thue-mahler": cmd_thue_mahler,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubic-orders",
        description="Orders of prime-power index in pure cubic fields",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def field_args(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--m", type=int, required=True, help="Cube-free integer defining Q(m^(1/3))")
        sub.add_argument("--p", type=int, required=True, help="Prime other than 2 and 3")

    def output_args(sub: argparse.ArgumentParser, default_format: str = "csv") -> None:
        sub.add_argument("--format", choices=FORMATS, default=default_format)
        sub.add_argument("--out", help="Write output to this file instead of stdout")

    count = subparsers.add_parser("count", help="Count orders of index p^t for t <= n")
    field_args(count)
    count.add_argument("--n", type=int, required=True)
    count.add_argument("--verify-scan", action="store_true", help="Cross-check each count by enumeration")
    count.add_argument("--method", choices=METHODS, default="oracle", help="Enumeration used by --verify-scan")
    output_args(count)

    enum = subparsers.add_parser("enumerate", help="List the orders of index p^n")
    field_args(enum)
    enum.add_argument("--n", type=int, required=True)
    enum.add_argument("--method", choices=METHODS, default="fast")
    output_args(enum)

    mono = subparsers.add_parser("monogenic", help="Monogenicity census for n <= n-max")
    field_args(mono)
    mono.add_argument("--n-max", type=int, required=True)
    mono.add_argument("--search-bound", type=int, default=settings.SEARCH_BOUND)
    mono.add_argument("--tm-height", type=int, default=settings.TM_HEIGHT)
    mono.add_argument("--tm-nmax", type=int, default=settings.TM_NMAX)
    output_args(mono)

    tm = subparsers.add_parser("thue-mahler", help="Primitive solutions of kU^3 - hV^3 = +-p^N")
    field_args(tm)
    tm.add_argument("--tm-height", type=int, default=settings.TM_HEIGHT)
    tm.add_argument("--tm-nmax", type=int, default=settings.TM_NMAX)
    output_args(tm)

    check = subparsers.add_parser("verify", help="Cross-check classifiers, counts and index forms")
    check.add_argument("--m", type=int, nargs="*", default=list(DEFAULT_MS), help="Values of m in the grid")
    check.add_argument("--p", type=int, nargs="*", default=list(DEFAULT_PS), help="Primes in the grid")
    check.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    check.add_argument("--identity-box", type=int, default=DEFAULT_IDENTITY_BOX,
                       help="Check the index-form identity for |x|, |y| up to this bound")
    output_args(check, default_format="text")

    serve = subparsers.add_parser("serve", help="Start the HTTP API")
    serve.add_argument("--host", default=settings.HOST)
    serve.add_argument("--port", type=int, default=settings.PORT)

    return parser


def _to_config(args: argparse.Namespace) -> RunConfig:
    values = {key: value for key, value in vars(args).items() if value is not None}
    if args.command == "verify":
        values["ms"], values["ps"] = values.pop("m", []), values.pop("p", [])
    return RunConfig(**values)


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _serve(host: str, port: int) -> int:
    import uvicorn

    uvicorn.run("cubic_orders.api:app", host=host, port=port)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return _serve(args.host, args.port)

    try:
        config = _to_config(args)
        result = COMMANDS[config.command](config)
        _write(render(result.command, result.tables, config.format, result.metadata), config.out)
    except ValidationError as exc:
        print(f"error: InputError: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        logger.error(f"Consistency check failed: {exc}")
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except CubicOrdersError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if result.exit_code != EXIT_OK:
        print(f"error: {result.command} reported failures", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
