"""
Differential and boomerang rows and spectra of x^(k(q-1)) over F_{q^2}.
"""

from .base_spectrum import BaseSpectrum
from .boomerang import BoomerangSpectrum, bct_entry, boomerang_histogram, boomerang_histogram_table, boomerang_spectrum
from .differential import (
    DifferentialSpectrum,
    ddt_entry,
    derivative_histogram,
    derivative_histogram_table,
    derivative_solutions,
    differential_spectrum,
    full_differential_uniformity,
    locally_apn,
    locally_apn_table,
)
from .export import write_row_csv
from .oracle import bct_oracle_entry, bct_oracle_row, ddt_oracle_entry
from .power_map import PowerMapSpec, coprime_ks
from .tables import SpectrumTable, boomerang_uniformity, differential_uniformity

__all__ = [
    "BaseSpectrum",
    "BoomerangSpectrum",
    "DifferentialSpectrum",
    "PowerMapSpec",
    "SpectrumTable",
    "bct_entry",
    "bct_oracle_entry",
    "bct_oracle_row",
    "boomerang_histogram",
    "boomerang_histogram_table",
    "boomerang_spectrum",
    "boomerang_uniformity",
    "coprime_ks",
    "ddt_entry",
    "ddt_oracle_entry",
    "derivative_histogram",
    "derivative_histogram_table",
    "derivative_solutions",
    "differential_spectrum",
    "differential_uniformity",
    "full_differential_uniformity",
    "locally_apn",
    "locally_apn_table",
    "write_row_csv",
]
