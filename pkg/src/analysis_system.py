"""
Analysis system that pairs brute-force spectra with their closed forms and runs the check battery.
"""

import logging
import time
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.cli.models import AnalysisReport, Mismatch, PowerMapParams, Verdict
from src.config import LOG_FORMAT, LOG_LEVEL, ORACLE_MAX_ORDER, SURVEY_MAX_Q
from src.exceptions import VerificationError
from src.field import FieldCtx, build_field
from src.spectra import (
    BoomerangSpectrum,
    DifferentialSpectrum,
    PowerMapSpec,
    SpectrumTable,
    bct_oracle_row,
    derivative_solutions,
    locally_apn_table,
)
from src.theory import (
    PredictedSpectra,
    cube_root_exclusion_mask,
    expected_boomerang_uniformity,
    expected_locally_apn,
    minus_three_field_check,
    moment_identity_check,
    odd_fiber_linkage_check,
    predict_spectra,
    predicted_special_boomerang_values,
    predicted_unit_fiber,
    predicted_zero_fiber,
    unit_quadratic_survey,
)

# Configure logging
logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)
logger = logging.getLogger(__name__)


@lru_cache(maxsize=8)
def get_field(p: int, m: int, modulus: Optional[Tuple[int, ...]] = None) -> FieldCtx:
    """Build F_{p^{2m}} once per process."""
    return build_field(p, m, modulus)


def perturb_boomerang(predicted: PredictedSpectra) -> PredictedSpectra:
    """Move one count from the smallest predicted boomerang multiplicity to that multiplicity + 2."""
    entries = dict(predicted.boomerang.entries)
    smallest = min(entries)
    entries[smallest] -= 1
    entries[smallest + 2] = entries.get(smallest + 2, 0) + 1
    boomerang = SpectrumTable(
        kind="boomerang", order=predicted.boomerang.order, entries={i: c for i, c in entries.items() if c}
    )
    return predicted.model_copy(update={"boomerang": boomerang})


class AnalysisSystem:
    """Computes both rows of one power map and checks them against every available prediction."""

    def __init__(
        self,
        p: int,
        m: int,
        k: int,
        modulus: Optional[Sequence[int]] = None,
        field_checks: bool = True,
        perturb: bool = False,
    ):
        """
        Initialize the analysis system.

        Args:
            p: Prime characteristic
            m: q = p^m
            k: Exponent parameter, coprime to q + 1
            modulus: Optional field polynomial (low-to-high); the canonical one otherwise
            field_checks: Also run the checks that depend only on (p, m)
            perturb: Corrupt the predicted boomerang table (negative control)

        Raises:
            InvalidParameterError: If the parameters are invalid
            GcdError: If gcd(k, q+1) != 1
            FieldSizeError: If p^(2m) exceeds the order cap
        """
        self.power_map = PowerMapSpec(p, m, k)
        self.modulus = tuple(int(c) for c in modulus) if modulus is not None else None
        self.field_checks = field_checks
        self.perturb = perturb
        self.timing_ms: Dict[str, float] = {}

        start = time.perf_counter()
        self.ctx = get_field(self.power_map.p, self.power_map.m, self.modulus)
        self.timing_ms["field"] = (time.perf_counter() - start) * 1000

        self.differential = DifferentialSpectrum(self.ctx, self.power_map)
        self.boomerang = BoomerangSpectrum(self.ctx, self.power_map)

    @property
    def params(self) -> PowerMapParams:
        pm, ctx = self.power_map, self.ctx
        return PowerMapParams(
            p=pm.p,
            m=pm.m,
            k=pm.k,
            q=pm.q,
            n=pm.n,
            d=pm.d,
            order=pm.order,
            modulus=list(ctx.modulus),
            generator=ctx.generator,
        )

    def predicted(self) -> PredictedSpectra:
        predicted = predict_spectra(self.power_map.p, self.power_map.m, self.power_map.k)
        return perturb_boomerang(predicted) if self.perturb else predicted

    # ------------------------------------------------------------------
    # Individual checks; each returns True when the property holds
    # ------------------------------------------------------------------

    def _locally_apn(self) -> bool:
        pm = self.power_map
        return locally_apn_table(self.ctx, self.differential.values) == expected_locally_apn(pm.p, pm.m)

    def _zero_fiber(self) -> bool:
        return np.array_equal(derivative_solutions(self.ctx, self.power_map, 0), predicted_zero_fiber(self.ctx))

    def _unit_fiber(self) -> bool:
        return np.array_equal(derivative_solutions(self.ctx, self.power_map, 1), predicted_unit_fiber(self.ctx))

    def _special_boomerang_values(self) -> bool:
        row = self.boomerang.histogram()
        expected = predicted_special_boomerang_values(self.ctx, self.power_map)
        return all(int(row[b]) == value for b, value in expected.items())

    def _derivative_symmetry(self) -> bool:
        row = self.differential.histogram()
        if self.ctx.p == 2:
            return bool(np.all(row % 2 == 0))
        b = self.ctx.elements()[1:]
        return bool(np.array_equal(row[b], row[self.ctx.neg_array(b)]))

    def _boomerang_dominates(self) -> bool:
        return bool(np.all(self.boomerang.histogram()[1:] >= self.differential.histogram()[1:]))

    def _cube_roots_unhit(self) -> bool:
        w = self.ctx.primitive_cube_root()
        row = self.differential.histogram()
        return int(row[w]) == 0 and int(row[self.ctx.mul(w, w)]) == 0

    def _cube_root_exclusion(self) -> bool:
        mask = cube_root_exclusion_mask(self.ctx)
        return bool(np.all(self.differential.histogram()[mask] != 2))

    def _image_on_unit_circle(self) -> bool:
        values = self.differential.values
        image = np.unique(values[1:])
        return int(values[0]) == 0 and np.array_equal(image, np.sort(self.ctx.unit_circle))

    def _boomerang_oracle(self) -> bool:
        return np.array_equal(self.boomerang.histogram(), bct_oracle_row(self.ctx, self.differential.values, 1))

    def _check_plan(self, brute_ds: SpectrumTable, brute_bs: SpectrumTable, predicted: PredictedSpectra):
        ctx, pm = self.ctx, self.power_map
        plan: List[Tuple[str, Callable[[], bool]]] = [
            ("differential_spectrum", lambda: brute_ds == predicted.differential),
            ("boomerang_spectrum", lambda: brute_bs == predicted.boomerang),
            ("moment_identities", lambda: moment_identity_check(brute_ds, ctx.p, ctx.n)),
            ("locally_apn", self._locally_apn),
            ("boomerang_uniformity", lambda: self.boomerang.uniformity() == expected_boomerang_uniformity(pm.p, pm.m)),
            ("zero_fiber", self._zero_fiber),
            ("unit_fiber", self._unit_fiber),
            ("special_boomerang_values", self._special_boomerang_values),
            ("derivative_symmetry", self._derivative_symmetry),
            ("image_on_unit_circle", self._image_on_unit_circle),
        ]
        if ctx.p == 2:
            plan.append(("boomerang_dominates_differential", self._boomerang_dominates))
            # m = 2 mod 4 hits both cube roots twice
            if ctx.m % 4 != 2:
                plan.append(("cube_roots_unhit", self._cube_roots_unhit))
        else:
            plan.append(("odd_fiber_linkage", lambda: odd_fiber_linkage_check(ctx, pm, self.differential.histogram())))
            if ctx.q % 3 == 2:
                plan.append(("cube_root_exclusion", self._cube_root_exclusion))
        if ctx.order <= ORACLE_MAX_ORDER:
            plan.append(("boomerang_oracle", self._boomerang_oracle))
        if self.field_checks:
            if ctx.q <= SURVEY_MAX_Q:
                plan.append(("unit_quadratic_criterion", lambda: unit_quadratic_survey(ctx).passed))
            if ctx.p > 3:
                plan.append(("minus_three_character", lambda: minus_three_field_check(ctx)))
        return plan

    def _verdict(self, brute_ds: SpectrumTable, brute_bs: SpectrumTable, predicted: PredictedSpectra) -> Verdict:
        checks: Dict[str, bool] = {}
        for name, check in self._check_plan(brute_ds, brute_bs, predicted):
            try:
                checks[name] = bool(check())
            except Exception as e:
                logger.error(f"Error running check {name} for {self.power_map}: {str(e)}")
                raise
            if not checks[name]:
                logger.warning(f"Check {name} failed for {self.power_map}")

        first = next((name for name, ok in checks.items() if not ok), None)
        mismatch = None
        if first is not None:
            mismatch = Mismatch(check=first)
            if first in ("differential_spectrum", "boomerang_spectrum"):
                if first == "differential_spectrum":
                    brute, expected = brute_ds, predicted.differential
                else:
                    brute, expected = brute_bs, predicted.boomerang
                multiplicity, mine, theirs = brute.first_mismatch(expected)
                mismatch = Mismatch(check=first, multiplicity=multiplicity, brute=mine, predicted=theirs)
        return Verdict(checks=checks, status="pass" if first is None else "fail", first_mismatch=mismatch)

    def analyze(self) -> AnalysisReport:
        """
        Compute both spectra, attach predictions and run the check battery.

        Returns:
            AnalysisReport for this power map
        """
        try:
            brute_ds = self.differential.spectrum()
            self.timing_ms["differential"] = self.differential.elapsed_ms
            brute_bs = self.boomerang.spectrum()
            self.timing_ms["boomerang"] = self.boomerang.elapsed_ms
            predicted = self.predicted()

            start = time.perf_counter()
            verdicts = self._verdict(brute_ds, brute_bs, predicted)
            self.timing_ms["checks"] = (time.perf_counter() - start) * 1000
        except Exception as e:
            logger.error(f"Error analysing {self.power_map}: {str(e)}")
            raise

        logger.info(f"Analysed {self.power_map}: {verdicts.status}")
        return AnalysisReport(
            params=self.params,
            differential=brute_ds,
            boomerang=brute_bs,
            predicted=predicted,
            verdicts=verdicts,
            timing_ms={name: round(ms, 3) for name, ms in self.timing_ms.items()},
            degenerate=self.power_map.degenerate,
        )

    def verify(self) -> AnalysisReport:
        """
        Like analyze, but a failing battery raises.

        Raises:
            VerificationError: Carrying the first mismatch, if any check fails
        """
        report = self.analyze()
        if not report.passed:
            mismatch = report.verdicts.first_mismatch
            raise VerificationError(f"{self.power_map}: {mismatch.describe()}", mismatch=mismatch)
        return report


def run_analysis(
    p: int, m: int, k: int, modulus: Optional[Sequence[int]] = None, field_checks: bool = True
) -> AnalysisReport:
    """
    Analyse one (p, m, k).

    Example:
        >>> report = run_analysis(2, 3, 1)
        >>> report.boomerang.entries
        {0: 33, 2: 27, 4: 3}
    """
    return AnalysisSystem(p, m, k, modulus=modulus, field_checks=field_checks).analyze()
