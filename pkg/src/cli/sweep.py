"""
Parallel sweep over a (p, m, k) grid.

Workers each build and cache their own fields; the calling process is the only
writer of the results file.
"""

import logging
import time
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

from joblib import Parallel, delayed
from tqdm import tqdm

from src.analysis_system import AnalysisSystem
from src.config import LOG_FORMAT, LOG_LEVEL, default_workers
from src.exceptions import SpectraError

from .models import SweepRecord, SweepRequest, SweepSummary
from .utils import append_jsonl, ensure_writable

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def run_tuple(p: int, m: int, k: int, field_checks: bool = True) -> SweepRecord:
    """Verify one tuple; failures to run are recorded instead of raised."""
    try:
        report = AnalysisSystem(p, m, k, field_checks=field_checks).analyze()
    except SpectraError as e:
        return SweepRecord(p=p, m=m, k=k, status="error", error=str(e))
    except Exception as e:
        logger.error(f"Error running sweep tuple ({p}, {m}, {k}): {str(e)}")
        return SweepRecord(p=p, m=m, k=k, status="error", error=f"{type(e).__name__}: {e}")
    return SweepRecord(p=p, m=m, k=k, status=report.verdicts.status, report=report)


def _with_field_flags(grid: Iterable[Tuple[int, int, int]]) -> List[Tuple[int, int, int, bool]]:
    """Mark the first k of every (p, m) to carry the field-level checks."""
    seen = set()
    tasks = []
    for p, m, k in grid:
        tasks.append((p, m, k, (p, m) not in seen))
        seen.add((p, m))
    return tasks


def run_sweep(
    request: SweepRequest, out: Union[str, Path], workers: Optional[int] = None, quiet: bool = False
) -> SweepSummary:
    """
    Run every tuple of the grid and append one record per tuple to out.

    Args:
        request: Grid description
        out: JSON-lines results file (appended to)
        workers: Worker processes; SPECTRA_WORKERS or the CPU count by default
        quiet: Disable the progress bar

    Returns:
        SweepSummary with pass/fail totals

    Raises:
        InvalidParameterError: If out is not writable
        FieldSizeError: If the grid contains a field above the order cap
    """
    out = ensure_writable(out)
    request.check_orders()
    tasks = _with_field_flags(request.tuples())
    workers = workers or default_workers()
    logger.info(f"Sweeping {len(tasks)} tuples with {workers} workers into {out}")

    start = time.perf_counter()
    counts = {"pass": 0, "fail": 0, "error": 0}
    degenerate = 0
    if workers == 1:
        results = (run_tuple(*task) for task in tasks)
    else:
        results = Parallel(n_jobs=workers, backend="loky", return_as="generator_unordered")(
            delayed(run_tuple)(*task) for task in tasks
        )

    for record in tqdm(results, total=len(tasks), desc="sweep", disable=quiet):
        append_jsonl(out, record)
        counts[record.status] += 1
        if record.report is not None and record.report.degenerate:
            degenerate += 1
        if record.status != "pass":
            logger.warning(f"Tuple ({record.p}, {record.m}, {record.k}) finished with status {record.status}")

    summary = SweepSummary(
        total=len(tasks),
        passed=counts["pass"],
        failed=counts["fail"],
        errors=counts["error"],
        degenerate=degenerate,
        out=str(out),
        elapsed_s=round(time.perf_counter() - start, 3),
    )
    logger.info(f"Sweep finished: {summary.passed} passed, {summary.failed} failed, {summary.errors} errors")
    return summary
