"""
Tests for the differential and boomerang rows, spectra and naive oracles.
"""
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

import numpy as np
import pandas as pd
import pytest
from pydantic import ValidationError

from src.config import ORACLE_MAX_ORDER
from src.exceptions import FieldSizeError, GcdError, InvalidParameterError
from src.field import build_field, lexicographic_irreducibles
from src.spectra import (
    BoomerangSpectrum,
    DifferentialSpectrum,
    PowerMapSpec,
    SpectrumTable,
    bct_entry,
    bct_oracle_entry,
    bct_oracle_row,
    boomerang_histogram,
    boomerang_histogram_table,
    boomerang_spectrum,
    boomerang_uniformity,
    coprime_ks,
    ddt_entry,
    ddt_oracle_entry,
    derivative_histogram,
    derivative_histogram_table,
    derivative_solutions,
    differential_spectrum,
    differential_uniformity,
    full_differential_uniformity,
    locally_apn,
    locally_apn_table,
    write_row_csv,
)

SMALL_MAPS = [(2, 1, 1), (2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 1, 1), (5, 1, 1), (7, 1, 3), (3, 2, 3)]


def setup(p, m, k, modulus=None):
    return build_field(p, m, modulus=modulus), PowerMapSpec(p, m, k)


@pytest.fixture(scope="module")
def f64_map():
    return setup(2, 3, 1)


@pytest.fixture(scope="module")
def f121_map():
    return setup(11, 1, 1)


class TestPowerMapSpec:
    def test_exponent(self):
        spec = PowerMapSpec(2, 2, 1)
        assert spec.q == 4
        assert spec.order == 16
        assert spec.d == 3

    def test_k_reduced(self):
        assert PowerMapSpec(2, 2, 6) == PowerMapSpec(2, 2, 1)
        assert PowerMapSpec(2, 2, 6).k_input == 6

    def test_gcd_error(self):
        with pytest.raises(GcdError) as excinfo:
            PowerMapSpec(5, 1, 2)
        assert isinstance(excinfo.value, InvalidParameterError)

    @pytest.mark.parametrize("p,m,k", [(4, 1, 1), (2, 0, 1), (2, 1, 0)])
    def test_invalid_parameters(self, p, m, k):
        with pytest.raises(InvalidParameterError):
            PowerMapSpec(p, m, k)

    def test_degenerate_flag(self):
        assert PowerMapSpec(2, 1, 1).degenerate
        assert not PowerMapSpec(2, 2, 1).degenerate

    def test_context_mismatch(self):
        with pytest.raises(InvalidParameterError):
            derivative_histogram(build_field(3, 1), PowerMapSpec(2, 1, 1))

    def test_coprime_ks(self):
        assert coprime_ks(4) == [1, 2, 3, 4]
        assert coprime_ks(5) == [1, 5]
        assert coprime_ks(2) == [1, 2]

    def test_values_on_unit_circle(self, f64_map):
        ctx, spec = f64_map
        values = spec.value_table(ctx)
        assert all(spec.apply(ctx, x) == values[x] for x in range(ctx.order))
        circle = set(int(y) for y in ctx.unit_circle)
        assert values[0] == 0
        assert set(int(v) for v in values[1:]) <= circle


class TestDerivativeHistogram:
    def test_totals(self):
        for p, m, k in SMALL_MAPS:
            ctx, spec = setup(p, m, k)
            assert int(derivative_histogram(ctx, spec).sum()) == ctx.order

    def test_known_entries_f64(self, f64_map):
        ctx, spec = f64_map
        histogram = derivative_histogram(ctx, spec)
        assert histogram[0] == 6
        assert histogram[1] == 4

    def test_plus_minus_one_f49(self):
        ctx, spec = setup(7, 1, 1)
        histogram = derivative_histogram(ctx, spec)
        assert histogram[1] == 1
        assert histogram[ctx.neg(1)] == 1

    def test_solutions_match_histogram(self, f64_map):
        ctx, spec = f64_map
        histogram = derivative_histogram(ctx, spec)
        for b in range(ctx.order):
            assert len(derivative_solutions(ctx, spec, b)) == histogram[b]

    def test_even_for_p2(self):
        for p, m, k in [(2, 2, 1), (2, 3, 1), (2, 4, 3)]:
            ctx, spec = setup(p, m, k)
            assert np.all(derivative_histogram(ctx, spec) % 2 == 0)

    def test_symmetric_for_odd_p(self):
        for p, m, k in [(3, 1, 1), (5, 1, 1), (7, 1, 3), (3, 2, 3)]:
            ctx, spec = setup(p, m, k)
            histogram = derivative_histogram(ctx, spec)
            b = np.arange(1, ctx.order)
            assert np.array_equal(histogram[b], histogram[ctx.neg_array(b)])

    @pytest.mark.parametrize("m", [1, 3, 4, 5, 8])
    def test_zero_at_cube_roots_p2(self, m):
        ctx, spec = setup(2, m, 1)
        histogram = derivative_histogram(ctx, spec)
        w = ctx.primitive_cube_root()
        assert histogram[w] == 0
        assert histogram[ctx.mul(w, w)] == 0

    @pytest.mark.parametrize("m", [2, 6])
    def test_cube_roots_hit_twice_when_m_is_2_mod_4(self, m):
        ctx, spec = setup(2, m, 1)
        histogram = derivative_histogram(ctx, spec)
        w = ctx.primitive_cube_root()
        assert histogram[w] == 2
        assert histogram[ctx.mul(w, w)] == 2


class TestDdtEntry:
    def test_row_one(self, f64_map):
        ctx, spec = f64_map
        histogram = derivative_histogram(ctx, spec)
        for b in range(ctx.order):
            assert ddt_entry(ctx, spec, 1, b, histogram) == histogram[b]

    @pytest.mark.parametrize("p,m,k", [(2, 2, 1), (2, 3, 2), (5, 1, 1)])
    def test_matches_naive_count(self, p, m, k):
        ctx, spec = setup(p, m, k)
        table = spec.value_table(ctx)
        histogram = derivative_histogram(ctx, spec)
        rng = np.random.default_rng(p * 100 + m * 10 + k)
        for _ in range(100):
            a = int(rng.integers(1, ctx.order))
            b = int(rng.integers(0, ctx.order))
            assert ddt_entry(ctx, spec, a, b, histogram) == ddt_oracle_entry(ctx, table, a, b)

    def test_generator_with_zero_output(self):
        ctx, spec = setup(3, 1, 1)
        assert ddt_entry(ctx, spec, ctx.generator, 0) == 1

    def test_zero_input_difference(self, f64_map):
        ctx, spec = f64_map
        with pytest.raises(InvalidParameterError):
            ddt_entry(ctx, spec, 0, 1)
        with pytest.raises(InvalidParameterError):
            ddt_oracle_entry(ctx, spec.value_table(ctx), 0, 1)


class TestDifferentialSpectrum:
    @pytest.mark.parametrize(
        "p,m,k,expected",
        [
            (2, 3, 1, {0: 35, 2: 27, 4: 1, 6: 1}),
            (7, 1, 1, {0: 16, 1: 20, 2: 12, 5: 1}),
            (11, 1, 1, {0: 50, 1: 30, 2: 38, 3: 2, 9: 1}),
            (3, 1, 1, {1: 9}),
        ],
    )
    def test_known_spectra(self, p, m, k, expected):
        ctx, spec = setup(p, m, k)
        table = differential_spectrum(ctx, spec)
        assert table.kind == "differential"
        assert table.entries == expected

    def test_moment_identities_hold(self):
        for p, m, k in SMALL_MAPS:
            ctx, spec = setup(p, m, k)
            table = differential_spectrum(ctx, spec)
            assert table.total() == ctx.order
            assert table.weighted_total() == ctx.order
            assert table.check_totals()

    def test_uniformity_and_timing(self, f64_map):
        ctx, spec = f64_map
        computation = DifferentialSpectrum(ctx, spec)
        assert computation.uniformity() == 6
        assert computation.elapsed_ms >= 0

    def test_histogram_cached(self, f64_map):
        ctx, spec = f64_map
        computation = DifferentialSpectrum(ctx, spec)
        assert computation.histogram() is computation.histogram()

    def test_isomorphic_fields_agree(self):
        for p, m in [(2, 2), (2, 3), (3, 1), (5, 1)]:
            spec = PowerMapSpec(p, m, 1)
            first = build_field(p, m)
            second = build_field(p, m, modulus=lexicographic_irreducibles(p, 2 * m, 2)[1])
            assert differential_spectrum(first, spec) == differential_spectrum(second, spec)
            assert boomerang_spectrum(first, spec) == boomerang_spectrum(second, spec)


class TestBoomerang:
    def test_special_values_f64(self, f64_map):
        ctx, spec = f64_map
        histogram = boomerang_histogram(ctx, spec)
        w = ctx.primitive_cube_root()
        for b in (1, w, ctx.mul(w, w)):
            assert histogram[b] == 4

    def test_even_m_values(self):
        ctx, spec = setup(2, 2, 1)
        histogram = boomerang_histogram(ctx, spec)
        assert set(int(v) for v in histogram[1:]) <= {0, 2}
        assert histogram[0] == 0

    @pytest.mark.parametrize(
        "p,m,k,expected",
        [
            (2, 3, 1, {0: 33, 2: 27, 4: 3}),
            (2, 4, 3, {0: 134, 2: 121}),
            (11, 1, 1, {0: 76, 2: 44}),
            (3, 1, 1, {0: 8}),
        ],
    )
    def test_known_spectra(self, p, m, k, expected):
        ctx, spec = setup(p, m, k)
        table = boomerang_spectrum(ctx, spec)
        assert table.kind == "boomerang"
        assert table.entries == expected
        assert table.total() == ctx.order - 1

    @pytest.mark.parametrize("p,m,k", SMALL_MAPS)
    def test_matches_pairwise_oracle(self, p, m, k):
        ctx, spec = setup(p, m, k)
        assert np.array_equal(boomerang_histogram(ctx, spec), bct_oracle_row(ctx, spec.value_table(ctx)))

    @pytest.mark.parametrize("p,m,k", [(2, 6, 2), (7, 2, 3), (5, 2, 7), (61, 1, 1)])
    def test_matches_pairwise_oracle_up_to_cap(self, p, m, k):
        ctx, spec = setup(p, m, k)
        assert ctx.order <= ORACLE_MAX_ORDER
        assert np.array_equal(boomerang_histogram(ctx, spec), bct_oracle_row(ctx, spec.value_table(ctx)))

    def test_entries_match_oracle_f9(self):
        ctx, spec = setup(3, 1, 1)
        histogram = boomerang_histogram(ctx, spec)
        table = spec.value_table(ctx)
        for b in range(1, ctx.order):
            assert histogram[b] == bct_oracle_entry(ctx, table, 1, b)

    def test_reduced_entries_match_oracle(self, f64_map):
        ctx, spec = f64_map
        table = spec.value_table(ctx)
        histogram = boomerang_histogram(ctx, spec)
        rng = np.random.default_rng(5)
        for _ in range(30):
            a, b = (int(v) for v in rng.integers(1, ctx.order, 2))
            assert bct_entry(ctx, spec, a, b, histogram) == bct_oracle_entry(ctx, table, a, b)

    def test_arbitrary_tables_match_oracle(self):
        rng = np.random.default_rng(3)
        for p, m in [(2, 2), (3, 1), (5, 1)]:
            ctx = build_field(p, m)
            table = rng.integers(0, ctx.order, ctx.order)
            for a in (1, ctx.generator):
                assert np.array_equal(boomerang_histogram_table(ctx, table, a), bct_oracle_row(ctx, table, a))

    def test_dominates_differential_p2(self):
        for m, k in [(2, 1), (3, 1), (3, 2)]:
            ctx, spec = setup(2, m, k)
            beta = boomerang_histogram(ctx, spec)
            delta = derivative_histogram(ctx, spec)
            assert np.all(beta[1:] >= delta[1:])

    def test_even_entries_p2(self):
        for m in (2, 3, 4):
            ctx, spec = setup(2, m, 1)
            assert np.all(boomerang_histogram(ctx, spec) % 2 == 0)

    def test_zero_differences_rejected(self, f64_map):
        ctx, spec = f64_map
        table = spec.value_table(ctx)
        with pytest.raises(InvalidParameterError):
            bct_entry(ctx, spec, 1, 0)
        with pytest.raises(InvalidParameterError):
            bct_entry(ctx, spec, 0, 1)
        with pytest.raises(InvalidParameterError):
            bct_oracle_entry(ctx, table, 1, 0)
        with pytest.raises(InvalidParameterError):
            boomerang_histogram_table(ctx, table, 0)

    def test_row_for_spectrum_skips_zero(self, f64_map):
        ctx, spec = f64_map
        computation = BoomerangSpectrum(ctx, spec)
        assert len(computation.row_for_spectrum()) == ctx.order - 1
        assert computation.uniformity() == 4


class TestOracles:
    def test_identity_map(self):
        ctx = build_field(3, 1)
        identity = ctx.elements()
        assert bct_oracle_entry(ctx, identity, 1, 2) == ctx.order
        assert bct_oracle_entry(ctx, identity, ctx.generator, 1) == ctx.order
        histogram = derivative_histogram_table(ctx, identity, 1)
        assert histogram[1] == ctx.order
        assert not locally_apn_table(ctx, identity)

    def test_constant_map(self):
        ctx = build_field(2, 2)
        constant = np.zeros(ctx.order, dtype=np.int64)
        assert bct_oracle_entry(ctx, constant, 1, 1) == 0
        assert not bct_oracle_row(ctx, constant).any()
        assert not boomerang_histogram_table(ctx, constant).any()
        assert derivative_histogram_table(ctx, constant)[0] == ctx.order

    def test_oracle_size_cap(self):
        ctx = build_field(2, 7)
        table = np.zeros(ctx.order, dtype=np.int64)
        with pytest.raises(FieldSizeError):
            bct_oracle_entry(ctx, table, 1, 1)
        with pytest.raises(FieldSizeError):
            full_differential_uniformity(ctx, table)

    def test_bad_table_shape(self):
        ctx = build_field(2, 2)
        with pytest.raises(InvalidParameterError):
            bct_oracle_row(ctx, np.zeros(5, dtype=np.int64))
        with pytest.raises(InvalidParameterError):
            derivative_histogram_table(ctx, np.full(ctx.order, ctx.order))

    @pytest.mark.parametrize("p,m,k", [(2, 2, 1), (2, 3, 1), (5, 1, 1), (3, 2, 3)])
    def test_full_uniformity_matches_row(self, p, m, k):
        ctx, spec = setup(p, m, k)
        full = full_differential_uniformity(ctx, spec.value_table(ctx))
        assert full == differential_uniformity(differential_spectrum(ctx, spec))


class TestUniformity:
    def test_values(self, f64_map):
        ctx, spec = f64_map
        assert differential_uniformity(differential_spectrum(ctx, spec)) == 6
        assert boomerang_uniformity(boomerang_spectrum(ctx, spec)) == 4

    def test_x45_over_f256(self):
        ctx, spec = setup(2, 4, 3)
        assert boomerang_uniformity(boomerang_spectrum(ctx, spec)) == 2

    def test_wrong_kind(self, f64_map):
        ctx, spec = f64_map
        with pytest.raises(InvalidParameterError):
            differential_uniformity(boomerang_spectrum(ctx, spec))
        with pytest.raises(InvalidParameterError):
            boomerang_uniformity(differential_spectrum(ctx, spec))

    def test_empty_table(self):
        with pytest.raises(InvalidParameterError):
            differential_uniformity(SpectrumTable(kind="differential", order=4, entries={}))

    def test_locally_apn(self, f64_map, f121_map):
        assert locally_apn(*f64_map)
        assert locally_apn(*f121_map)
        assert not locally_apn(*setup(2, 1, 1))
        assert not locally_apn(*setup(3, 1, 1))


class TestSpectrumTable:
    def test_from_labels_merges(self):
        table = SpectrumTable.from_labels("differential", 16, [(0, 6), (2, 4), (2, 1), (4, 0)])
        assert table.entries == {0: 6, 2: 5}

    def test_from_histogram(self):
        table = SpectrumTable.from_histogram(np.array([2, 0, 2, 0]), "differential", 4)
        assert table.entries == {0: 2, 2: 2}
        assert table.check_totals()

    def test_rejects_bad_counts(self):
        with pytest.raises(ValidationError):
            SpectrumTable(kind="boomerang", order=4, entries={2: 0})
        with pytest.raises(ValidationError):
            SpectrumTable(kind="boomerang", order=4, entries={-1: 3})
        with pytest.raises(ValidationError):
            SpectrumTable(kind="other", order=4, entries={0: 3})

    def test_totals(self):
        assert SpectrumTable(kind="boomerang", order=4, entries={0: 1, 2: 2}).check_totals()
        assert not SpectrumTable(kind="boomerang", order=4, entries={0: 4}).check_totals()
        assert not SpectrumTable(kind="differential", order=4, entries={0: 4}).check_totals()
        with pytest.raises(InvalidParameterError):
            SpectrumTable(kind="differential", order=4, entries={1: 3}).validate_totals()

    def test_first_mismatch(self):
        left = SpectrumTable(kind="boomerang", order=16, entries={0: 8, 2: 7})
        right = SpectrumTable(kind="boomerang", order=16, entries={0: 7, 2: 6, 4: 2})
        assert left.first_mismatch(left) is None
        assert left.first_mismatch(right) == (0, 8, 7)

    def test_pairs(self):
        table = SpectrumTable.from_pairs("boomerang", 16, [[2, 7], [0, 8]])
        assert table.as_pairs() == [[0, 8], [2, 7]]

    def test_frozen(self):
        table = SpectrumTable(kind="boomerang", order=4, entries={0: 1, 2: 2})
        with pytest.raises(ValidationError):
            table.order = 9


class TestRowExport:
    def test_ddt_row_csv(self, tmp_path):
        ctx, spec = setup(2, 2, 1)
        path = write_row_csv(tmp_path / "row.csv", derivative_histogram(ctx, spec))
        frame = pd.read_csv(path)
        assert list(frame.columns) == ["b_index", "count"]
        assert len(frame) == 16
        assert int(frame["count"].sum()) == 16
        assert b"\r\n" not in path.read_bytes()

    def test_bct_row_starts_at_one(self, tmp_path):
        ctx, spec = setup(2, 2, 1)
        path = write_row_csv(tmp_path / "bct.csv", boomerang_histogram(ctx, spec)[1:], start=1)
        frame = pd.read_csv(path)
        assert frame["b_index"].tolist() == list(range(1, 16))
        assert set(frame["count"]) <= {0, 2}
