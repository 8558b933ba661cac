"""
brauerkit/__main__.py

The brauerkit package main script.

This script serves as the main entry point for the brauerkit command-line tool.
It provides subcommands to compute formal Brauer group laws of complete
intersection and double plane K3 surfaces, run the coboundary elimination
on elliptic K3 surfaces, read off heights, check Landweber exactness and
reproduce the golden table.

Exit codes: 0 on success, 1 on a pipeline error, 2 on a parse error.

For usage and options:
```bash
$ python -m brauerkit -h
"""

import argparse
import logging
import sys
from dataclasses import replace
from typing import List, Optional, Type

from brauerkit import __app_name__, __version__
from brauerkit.config import Config
from brauerkit.errors import BrauerkitError, JobError, ParseError
from brauerkit.jobs import (
    COMPLETE_INTERSECTION,
    DOUBLE_PLANE,
    ELLIPTIC,
    JobSpec,
    override,
    parse_job,
    run,
)
from brauerkit.reproduce import FAIL, reproduce
from brauerkit.utils import (
    format_results,
    read_config,
    read_file,
    write_report,
)

logger = logging.getLogger(__name__)

DEFAULT_OUTPUTS = {
    "stienstra-ci": ("fgl", "height"),
    "stienstra-dp": ("fgl", "height"),
    "artin": ("fgl", "p_series", "height"),
    "height": ("height",),
    "landweber": ("landweber",),
}
KIND_OF = {
    "stienstra-ci": COMPLETE_INTERSECTION,
    "stienstra-dp": DOUBLE_PLANE,
    "artin": ELLIPTIC,
}


class DefaultArgs(argparse.Namespace, Type):
    """Attributes
    ----------
    subcommand : str
        The subcommand to execute.
    config : Optional[str]
        The path to the configuration file.
    prime : Optional[int]
        The working prime.
    order : Optional[int]
        The truncation order.
    hmax : Optional[int]
        The largest height to resolve.
    format : Optional[str]
        Output format, text or machine.
    """

    subcommand: str
    config: Optional[str]
    prime: Optional[int]
    order: Optional[int]
    hmax: Optional[int]
    format: Optional[str]


class PipelineArgs(argparse.Namespace):
    """Namespace class to hold the arguments for the surface subcommands.

    Attributes
    ----------
    job : Optional[str]
        Path to a job document.
    catalog : Optional[str]
        Name of a catalog surface.
    equation : List[str]
        Equations of a complete intersection or the branch sextic.
    coefficient : List[str]
        Weierstrass coefficients as NAME=POLYNOMIAL.
    params : str
        Comma separated parameter names.
    outputs : Optional[str]
        Comma separated outputs, overriding the subcommand defaults.
    """

    job: Optional[str]
    catalog: Optional[str]
    equation: List[str]
    coefficient: List[str]
    params: str
    outputs: Optional[str]


class ReproduceArgs(argparse.Namespace):
    """Namespace class to hold the arguments for the 'reproduce' subcommand.

    Attributes
    ----------
    slow : bool
        Include the long cases.
    report : Optional[str]
        Path of a PDF report to write.
    """

    slow: bool
    report: Optional[str]


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-c", "--config", type=str, help="Path to the configuration file"
    )
    common.add_argument("-p", "--prime", type=int, help="Working prime")
    common.add_argument(
        "-N", "--order", type=int, help="Truncation order of all series"
    )
    common.add_argument(
        "--hmax", type=int, help="Largest height to resolve"
    )
    common.add_argument(
        "--format",
        choices=("text", "machine"),
        help="Output format, defaults to text",
    )
    return common


def _add_surface_arguments(parser: argparse.ArgumentParser, elliptic=False):
    parser.add_argument("-j", "--job", type=str, help="Path to a job document")
    parser.add_argument(
        "--catalog", type=str, help="Name of a catalog surface"
    )
    if elliptic:
        parser.add_argument(
            "-a",
            "--coefficient",
            action="append",
            default=[],
            help="Weierstrass coefficient as NAME=POLYNOMIAL, e.g. a2=3*t^2",
        )
    else:
        parser.add_argument(
            "-e",
            "--equation",
            action="append",
            default=[],
            help="Defining equation in x0, x1, ...; repeat for each one",
        )
    parser.add_argument(
        "--params", type=str, default="", help="Comma separated parameters"
    )
    parser.add_argument(
        "--outputs", type=str, help="Comma separated outputs to compute"
    )


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        description="Formal Brauer groups of K3 surfaces: laws, heights and Landweber exactness."  # noqa: E501
    )
    subparsers = parser.add_subparsers(dest="subcommand", help="Subcommands")

    # Subcommand: stienstra-ci
    parser_ci = subparsers.add_parser(
        "stienstra-ci",
        parents=[common],
        help="Law of a complete intersection K3 surface from its logarithm",
    )
    _add_surface_arguments(parser_ci)

    # Subcommand: stienstra-dp
    parser_dp = subparsers.add_parser(
        "stienstra-dp",
        parents=[common],
        help="Law of a double plane branched along a sextic",
    )
    _add_surface_arguments(parser_dp)

    # Subcommand: artin
    parser_artin = subparsers.add_parser(
        "artin",
        parents=[common],
        help="Law of an elliptic K3 surface by coboundary elimination",
    )
    _add_surface_arguments(parser_artin, elliptic=True)

    # Subcommand: height
    parser_height = subparsers.add_parser(
        "height", parents=[common], help="Height of a job or catalog surface"
    )
    parser_height.add_argument("-j", "--job", type=str, help="Job document")
    parser_height.add_argument("--catalog", type=str, help="Catalog surface")

    # Subcommand: landweber
    parser_lw = subparsers.add_parser(
        "landweber",
        parents=[common],
        help="Landweber exactness report of a family",
    )
    parser_lw.add_argument("-j", "--job", type=str, help="Job document")
    parser_lw.add_argument("--catalog", type=str, help="Catalog surface")

    # Subcommand: reproduce
    parser_rep = subparsers.add_parser(
        "reproduce", parents=[common], help="Run the golden table"
    )
    parser_rep.add_argument(
        "--slow", action="store_true", help="Include the long cases"
    )
    parser_rep.add_argument(
        "--report", type=str, help="Write the table to a PDF report"
    )

    # Default (no subcommand)
    parser.add_argument(
        "-v",
        "--version",
        action="version",
        version=f"{__app_name__} ({__version__})",
    )
    return parser


def _split(value: Optional[str]):
    return tuple(v.strip() for v in (value or "").split(",") if v.strip())


def _load_config(args: DefaultArgs) -> Config:
    config = read_config(args.config) if args.config else Config()
    return config.update(
        prime=args.prime,
        order=args.order,
        hmax=args.hmax,
        format=args.format,
        report=getattr(args, "report", None),
    )


def _coefficients(items: List[str]):
    out = {}
    for item in items:
        name, sep, text = item.partition("=")
        if not sep:
            raise JobError(f"expected NAME=POLYNOMIAL, got {item!r}")
        out[name.strip()] = text
    return out


def build_job(args: PipelineArgs, subcommand: str, config: Config) -> JobSpec:
    """The job described by a job file, a catalog name or inline equations."""
    outputs = _split(getattr(args, "outputs", None))
    if subcommand in ("height", "landweber"):
        outputs = outputs or DEFAULT_OUTPUTS[subcommand]
    if args.job:
        job = parse_job(read_file(args.job), config)
        if outputs:
            job = replace(job, requested=outputs)
        return job
    kind = KIND_OF.get(subcommand, "")
    if args.catalog:
        text = (
            f"[ring]\nprime = {config.prime}\n"
            f"[surface]\ncatalog = {args.catalog}\n"
            f"[outputs]\nrequested = "
            f"{', '.join(outputs or DEFAULT_OUTPUTS[subcommand])}\n"
        )
        return parse_job(text, config)
    if not kind:
        raise JobError(f"{subcommand} needs --job or --catalog")
    if kind == ELLIPTIC:
        polynomials = _coefficients(args.coefficient)
    elif kind == DOUBLE_PLANE:
        if len(args.equation) != 1:
            raise JobError("a double plane needs exactly one sextic")
        polynomials = {"f": args.equation[0]}
    else:
        polynomials = {
            f"f{i}": eq for i, eq in enumerate(args.equation, start=1)
        }
    if not polynomials:
        raise JobError(f"{subcommand} needs equations, --job or --catalog")
    return JobSpec(
        kind=kind,
        prime=config.prime,
        precision=config.precision,
        params=_split(args.params),
        coefficients="integers",
        polynomials=polynomials,
        requested=outputs or DEFAULT_OUTPUTS[subcommand],
        order=config.order,
        hmax=config.hmax,
        max_iter=config.max_iter,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main function to parse arguments and execute the appropriate subcommand."""  # noqa: E501
    parser = build_parser()
    args: DefaultArgs = parser.parse_args(argv)  # type: ignore

    if not args.subcommand:
        parser.print_help()
        return 0

    try:
        config = _load_config(args)
        logging.getLogger().setLevel(config.log_level.upper())
        if args.subcommand == "reproduce":
            rep_args: ReproduceArgs = args  # type: ignore
            logger.debug("Running the golden table")
            results = reproduce(order=args.order,
                                slow=rep_args.slow or config.slow)
            print(format_results(results), end="")
            if config.report:
                write_report(results, config.report)
            return 1 if any(r.status == FAIL for r in results) else 0

        pipeline_args: PipelineArgs = args  # type: ignore
        job = build_job(pipeline_args, args.subcommand, config)
        job = override(job, args.prime, args.order, args.hmax)
        logger.debug(f"Running {args.subcommand} on a {job.kind} job")
        result = run(job)
        print(result.render(config.format), end="")
        return 0
    except ParseError as e:
        print(f"{e.module}: {e}", file=sys.stderr)
        return 2
    except BrauerkitError as e:
        print(f"{e.module}: {e}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(str(e), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
