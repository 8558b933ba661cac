"""
brauerkit/utils.py

This module provides utility functions for the brauerkit package, such as configuration handling, file reading,
golden table formatting and the PDF report.

Functions:
    - read_config: Reads run settings from a file into a `Config` object.
    - read_file: Reads a text file.
    - format_results: Pretty prints golden table results as a formatted table.
    - format_timings: Formats per-case timings.
    - write_report: Renders golden table results into a PDF report.
"""  # noqa: E501

import configparser
import html as html_lib
import logging
import os
from typing import List, Sequence

from brauerkit.config import Config

logger = logging.getLogger(__name__)


def read_config(config_path: str) -> Config:
    """Reads run settings from a file into a `Config` object.

    Args:
        config_path (str): The path to the configuration file.

    Returns:
        Config: The run configuration object.

    Raises:
        FileNotFoundError: If the provided filepath does not exist.
    """
    if not os.path.isfile(config_path):
        raise FileNotFoundError(f"The file '{config_path}' does not exist.")

    config_parser = configparser.ConfigParser()

    try:
        config_parser.read(config_path)
    except configparser.Error as e:
        raise Exception(f"Error reading the config file: {e}")

    defaults = dict(config_parser.defaults())
    for section in config_parser.sections():
        for k, v in config_parser.items(section):
            if k not in defaults:
                defaults[k] = v

    config = Config(**defaults)

    # A relative report path is taken from the working directory
    if config.report and not os.path.isabs(config.report):
        config.report = os.path.abspath(config.report)

    return config


def read_file(filepath: str) -> str:
    """
    Reads a text file and returns its contents.

    Args:
        filepath (str): The path to the file to read.

    Returns:
        str: The file contents.

    Raises:
        FileNotFoundError: If the provided filepath does not exist.
    """
    if not os.path.isfile(filepath):
        raise FileNotFoundError(f"The file '{filepath}' does not exist.")

    with open(filepath, "r", encoding="utf-8") as file:
        return file.read()


def format_results(results: Sequence) -> str:
    """
    Pretty prints golden table results as a table.

    Long expected and computed values are shown in full on their own row
    so the table stays readable in a terminal.

    Args:
        results (Sequence[CaseResult]): Rows returned by `reproduce`.

    Returns:
        str: The string representation of the table of results.
    """
    headers = ["case", "expected", "got", "status"]
    widths = [34, 20, 20, 16]
    row_format = "".join(f"{{:<{w}}}" for w in widths)

    table_str = row_format.format(*headers).rstrip() + "\n"
    table_str += "-" * sum(widths) + "\n"

    for r in results:
        expected, got = r.expected, r.got
        short = len(expected) < widths[1] and len(got) < widths[2]
        if short:
            table_str += row_format.format(
                r.name, expected, got, r.status
            ).rstrip() + "\n"
        else:
            table_str += row_format.format(
                r.name, "(below)", "(below)", r.status
            ).rstrip() + "\n"
            table_str += f"    expected: {expected}\n"
            table_str += f"    got:      {got}\n"

    table_str += "-" * sum(widths) + "\n"
    return table_str


def format_timings(results: Sequence) -> str:
    lines: List[str] = []
    for r in results:
        lines.append(f"{r.name:<40}{r.seconds:.3f}")
    return "\n".join(lines) + "\n"


def write_report(results: Sequence, report_path: str) -> bool:
    """
    Renders golden table results and timings into a PDF using WeasyPrint.

    Args:
        results (Sequence[CaseResult]): Rows returned by `reproduce`.
        report_path (str): The path the PDF report will be saved to.

    Returns:
        bool: Whether the report was written.
    """
    try:
        # ensure the optional report dependency is installed
        import weasyprint
    except ImportError:
        logger.error(
            "Please install the weasyprint dependency. "
            "Run `pip install brauerkit[report]` "
            "or `pip install weasyprint` to install it"
        )
        return False

    # internal package imports
    from brauerkit import __app_name__, __version__
    from brauerkit.templates import report_template

    statuses = [r.status for r in results]
    html = report_template.format(
        app_name=__app_name__,
        version=__version__,
        passed=statuses.count("pass"),
        failed=statuses.count("FAIL"),
        skipped=statuses.count("skipped-by-order"),
        table_str=html_lib.escape(format_results(results)),
        timings_str=format_timings(results),
    )

    ## reset fonttools and weasyprint verbose logs
    logging.getLogger("fontTools").setLevel(logging.ERROR)
    logging.getLogger("weasyprint").setLevel(logging.ERROR)
    weasyprint.HTML(string=html).write_pdf(report_path)
    logger.debug(f"Golden table report saved to {report_path}")
    return True
