"""
Runtime configuration read from the environment (and an optional .env file).
"""

import logging
import os

from dotenv import load_dotenv

load_dotenv()

# Logging
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
LOG_LEVEL = getattr(logging, os.getenv("SPECTRA_LOG_LEVEL", "INFO").upper(), logging.INFO)

# Hard caps (environment may lower them, never raise them)
ORDER_CAP = 2**24
ORACLE_ORDER_CAP = 2**12

MAX_ORDER = min(int(os.getenv("SPECTRA_MAX_ORDER", ORDER_CAP)), ORDER_CAP)
ORACLE_MAX_ORDER = min(int(os.getenv("SPECTRA_ORACLE_MAX_ORDER", ORACLE_ORDER_CAP)), ORACLE_ORDER_CAP)

# Rows per block when building tables or enumerating pairs
CHUNK_ROWS = int(os.getenv("SPECTRA_CHUNK_ROWS", 2**16))

# Largest q for which the per-b unit-circle quadratic survey runs in verify mode
SURVEY_MAX_Q = 2**8


def default_workers() -> int:
    """Worker count for sweeps: SPECTRA_WORKERS, else the available parallelism."""
    value = os.getenv("SPECTRA_WORKERS")
    if value:
        return max(1, int(value))
    return os.cpu_count() or 1
