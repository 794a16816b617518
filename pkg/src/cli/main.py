"""
Command-line entry point: analyze, verify, sweep and dump.

Exit codes: 0 pass, 1 verification mismatch, 2 invalid input, 3 size cap exceeded, 4 internal fault.
"""

import functools
import logging
from typing import Optional, Tuple

import click
import pandas as pd
from pydantic import ValidationError

from src.analysis_system import AnalysisSystem
from src.config import LOG_FORMAT, LOG_LEVEL
from src.exceptions import FieldSizeError, InvalidParameterError, VerificationError
from src.spectra import boomerang_histogram, derivative_histogram, write_row_csv

from .models import AnalysisReport, AnalyzeRequest, SweepRequest
from .sweep import run_sweep
from .utils import ensure_writable, write_json

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4


def handle_errors(command):
    """Map package errors to exit codes with a one-line message on stderr."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return command(*args, **kwargs)
        except VerificationError as e:
            click.echo(f"FAIL: {e}", err=True)
            ctx.exit(EXIT_MISMATCH)
        except (InvalidParameterError, ValidationError) as e:
            click.echo(f"Invalid input: {e}", err=True)
            ctx.exit(EXIT_INVALID)
        except FieldSizeError as e:
            click.echo(f"Size cap exceeded: {e}", err=True)
            ctx.exit(EXIT_CAP)
        except click.exceptions.Exit:
            raise
        except Exception as e:
            logger.error(f"Error running {command.__name__}: {str(e)}")
            click.echo(f"Internal error: {type(e).__name__}: {e}", err=True)
            ctx.exit(EXIT_INTERNAL)

    return wrapper


def param_options(command):
    """Shared --p/--m/--k/--modulus options."""
    command = click.option("--modulus", default=None, help="Field polynomial, comma-separated low-to-high")(command)
    command = click.option("--k", "k", type=int, required=True, help="Exponent parameter, coprime to q+1")(command)
    command = click.option("--m", "m", type=int, required=True, help="q = p^m")(command)
    command = click.option("--p", "p", type=int, required=True, help="Prime characteristic")(command)
    return command


def report_frame(report: AnalysisReport) -> pd.DataFrame:
    """Brute and predicted counts side by side, one row per (kind, multiplicity)."""
    rows = []
    for kind in ("differential", "boomerang"):
        brute = getattr(report, kind).entries
        predicted = getattr(report.predicted, kind).entries
        for multiplicity in sorted(set(brute) | set(predicted)):
            rows.append(
                {
                    "kind": kind,
                    "multiplicity": multiplicity,
                    "brute": brute.get(multiplicity, 0),
                    "predicted": predicted.get(multiplicity, 0),
                }
            )
    return pd.DataFrame(rows, columns=["kind", "multiplicity", "brute", "predicted"])


@click.group()
def cli():
    """Differential and boomerang spectra of x^(k(q-1)) over F_{q^2}."""


@cli.command()
@param_options
@click.option("--emit", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write here instead of stdout")
@handle_errors
def analyze(p: int, m: int, k: int, modulus: Optional[str], emit: str, out: Optional[str]):
    """Compute both spectra of one power map and attach the predictions."""
    request = AnalyzeRequest(p=p, m=m, k=k, modulus=modulus)
    if out:
        ensure_writable(out)
    report = AnalysisSystem(request.p, request.m, request.k, modulus=request.modulus).analyze()

    if emit == "json":
        if out:
            write_json(out, report)
        else:
            click.echo(report.model_dump_json(indent=2))
    else:
        frame = report_frame(report)
        if out:
            frame.to_csv(out, index=False, lineterminator="\n")
        else:
            click.echo(frame.to_csv(index=False, lineterminator="\n"), nl=False)


@cli.command()
@param_options
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Also write the report as JSON")
@click.option("--perturb", is_flag=True, hidden=True)
@handle_errors
def verify(p: int, m: int, k: int, modulus: Optional[str], out: Optional[str], perturb: bool):
    """Run the full check battery; exit 0 iff every check holds."""
    request = AnalyzeRequest(p=p, m=m, k=k, modulus=modulus)
    if out:
        ensure_writable(out)
    system = AnalysisSystem(request.p, request.m, request.k, modulus=request.modulus, perturb=perturb)
    report = system.analyze()
    if out:
        write_json(out, report)
    if not report.passed:
        raise VerificationError(
            f"{system.power_map}: {report.verdicts.first_mismatch.describe()}",
            mismatch=report.verdicts.first_mismatch,
        )
    click.echo(f"PASS {system.power_map} [{report.predicted.branch.value}] ({len(report.verdicts.checks)} checks)")


@cli.command()
@click.option("--p", "p_list", type=int, multiple=True, help="Characteristic (repeatable)")
@click.option("--m-max", type=int, required=True, help="Largest m")
@click.option("--k-policy", type=click.Choice(["all-coprime", "list"]), default="all-coprime", show_default=True)
@click.option("--k", "ks", type=int, multiple=True, help="k for the list policy (repeatable)")
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="JSON-lines results file")
@click.option("--workers", type=int, default=None, help="Worker processes (default SPECTRA_WORKERS or CPU count)")
@click.option("--quiet", is_flag=True, help="No progress bar")
@handle_errors
def sweep(
    p_list: Tuple[int, ...],
    m_max: int,
    k_policy: str,
    ks: Tuple[int, ...],
    out: str,
    workers: Optional[int],
    quiet: bool,
):
    """Verify every tuple of a grid in parallel and append one record per tuple."""
    request = SweepRequest(p_list=list(p_list), m_max=m_max, k_policy=k_policy, ks=list(ks))
    if workers is not None and workers < 1:
        raise InvalidParameterError(f"--workers must be positive, got {workers}")
    summary = run_sweep(request, out, workers=workers, quiet=quiet)
    click.echo(summary.model_dump_json())
    if summary.failed or summary.errors:
        click.get_current_context().exit(EXIT_MISMATCH)


@cli.command()
@param_options
@click.option("--table", type=click.Choice(["ddt-row", "bct-row"]), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@handle_errors
def dump(p: int, m: int, k: int, modulus: Optional[str], table: str, out: str):
    """Write the a = 1 row as CSV (b_index,count)."""
    request = AnalyzeRequest(p=p, m=m, k=k, modulus=modulus)
    ensure_writable(out)
    system = AnalysisSystem(request.p, request.m, request.k, modulus=request.modulus)
    if table == "ddt-row":
        write_row_csv(out, derivative_histogram(system.ctx, system.power_map), start=0)
    else:
        write_row_csv(out, boomerang_histogram(system.ctx, system.power_map)[1:], start=1)


def main():
    cli(prog_name="spectra")
