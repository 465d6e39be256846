"""Evolution, the integer Taylor oracle, and spectral diagnostics."""

import math
import statistics
from fractions import Fraction

import numpy as np
import pytest

from blockade import bounds
from blockade.dynamics import (
    DimensionBudgetError,
    evolve,
    evolution_records,
    evolution_to_csv,
    g2,
    oracle_records,
    spectral_checks,
    taylor_oracle,
    universal_window,
)
from blockade.series import correlation, density, density_coefficients, local_number
from blockade.words import line, ring


class TestEvolve:
    def test_zero_time_is_exactly_zero(self):
        for model in (ring(6), line(7), ring(8, 2)):
            assert evolve(model, density(), [0.0]).values[0] == 0.0

    def test_short_time_quadratic_growth(self):
        t = 1e-3
        rho = evolve(ring(10), density(), [t]).values[0]
        assert abs(rho / t**2 - 1.0) < 2 * t**2

    def test_matches_truncated_taylor_mid_time(self):
        orc = taylor_oracle(ring(8), density(), 8)
        rho = evolve(ring(8), density(), [0.5]).values[0]
        acc = 0.0
        for c in reversed(orc.coefficients):
            acc = (acc + float(c)) * 0.25
        assert abs(rho - acc) < 1e-6  # measured 3.8e-9
        assert abs(rho - acc) < bounds.error_envelope(8, 1, 1, 0.5)

    @pytest.mark.parametrize("model", [ring(8), ring(9, 2), line(10)])
    def test_density_stays_below_packing_cap(self, model):
        times = np.linspace(0.0, 20.0, 101)
        vals = evolve(model, density(), times).values
        cap = (model.size // (model.blockade_range + 1)) / model.size
        assert all(-1e-12 <= v <= cap + 1e-12 for v in vals)

    def test_solver_choice_is_irrelevant(self):
        a = evolve(ring(9), density(), [0.7, 1.9], solver="numpy").values
        b = evolve(ring(9), density(), [0.7, 1.9], solver="scipy").values
        assert max(abs(x - y) for x, y in zip(a, b)) < 1e-10

    def test_dimension_budget_refusal(self):
        with pytest.raises(DimensionBudgetError) as err:
            evolve(line(21), density(), [0.1])
        assert err.value.dimension == 28657

    def test_late_time_settles_to_small_fluctuations(self):
        early = evolve(ring(14), density(), np.linspace(0.0, 6.0, 121)).values
        late = evolve(ring(14), density(), np.linspace(15.0, 30.0, 151)).values
        swing = max(early) - min(early)
        assert statistics.pstdev(late) < 0.15 * swing
        assert 0.1 < statistics.fmean(late) < 0.4


class TestTaylorOracle:
    def test_leading_coefficient(self):
        assert taylor_oracle(ring(5), density(), 1).coefficients == [Fraction(1)]

    def test_two_site_ring(self):
        got = taylor_oracle(ring(2), density(), 2).coefficients
        assert got == [Fraction(1), Fraction(-2, 3)]

    def test_odd_orders_exactly_zero(self):
        orc = taylor_oracle(ring(6), density(), 3)
        assert all(orc.ad_expectations[m] == 0 for m in (1, 3, 5))

    @pytest.mark.parametrize("lam, jmax", [(1, 5), (2, 3)])
    @pytest.mark.parametrize("L", [3, 6, 9])
    def test_equals_symbolic_engine(self, L, lam, jmax):
        sym = density_coefficients(ring(L, lam), jmax).even_values()
        orc = taylor_oracle(ring(L, lam), density(), jmax).coefficients
        assert sym == orc

    def test_pair_counter_route(self):
        sym = correlation_coefficients_even(ring(7), 2, 4)
        orc = taylor_oracle(ring(7), correlation(2), 4).coefficients
        assert sym == orc

    def test_open_chain_route(self):
        sym = density_coefficients(line(9), 3).even_values()
        orc = taylor_oracle(line(9), density(), 3).coefficients
        assert sym == orc

    def test_work_budget_refusal(self):
        with pytest.raises(DimensionBudgetError):
            taylor_oracle(line(20), density(), 100)


def correlation_coefficients_even(model, d, jmax):
    from blockade.series import correlation_coefficients

    return correlation_coefficients(model, d, jmax).even_values()


class TestG2:
    def test_tends_to_one_and_from_above(self):
        vals = g2(ring(8), 2, [0.05, 0.1]).values
        assert abs(vals[0] - 1.0) < 0.01
        assert abs(vals[1] - 1.0) < 0.05

    def test_blockaded_distance_vanishes(self):
        assert g2(ring(8), 1, [0.5]).values == [0.0]
        assert g2(ring(9, 2), 2, [0.5]).values == [0.0]

    def test_zero_time_rejected(self):
        with pytest.raises(ValueError):
            g2(ring(6), 2, [0.0, 0.5])

    def test_open_chain_site_resolved(self):
        vals = g2(line(8), 2, [0.3], site=2).values
        assert math.isfinite(vals[0]) and vals[0] > 0


class TestSpectralChecks:
    def test_open_chain_witnesses(self):
        rep = spectral_checks(line(8))
        assert rep.spectrum_asymmetry < 1e-10
        assert rep.parity_weight_defect < 1e-8
        assert rep.evenness_defect < 1e-12
        assert rep.parity_anticommutes
        assert rep.norm_defect < 1e-12

    def test_odd_dimension_forces_zero_mode(self):
        rep = spectral_checks(ring(4))  # dimension 7
        assert rep.dimension % 2 == 1
        assert rep.zero_mode is True

    def test_even_dimension_reports_none(self):
        rep = spectral_checks(line(4))  # dimension 8
        assert rep.zero_mode is None


class TestUniversalWindow:
    def test_grows_with_size(self):
        times = np.arange(0.0, 8.0, 0.05)
        small = universal_window(ring(8), ring(10), times, 1e-3)
        large = universal_window(ring(12), ring(14), times, 1e-3)
        assert small is not None and large is not None
        assert 0 < small < large

    def test_no_crossing_returns_none(self):
        assert universal_window(ring(8), ring(10), [0.01, 0.02], 1e-3) is None


class TestExport:
    def test_csv_lines(self):
        res = evolve(ring(6), density(), [0.0, 0.25])
        lines = evolution_to_csv(res)
        assert lines[0] == "t,value"
        assert lines[1].startswith("0.0,")

    def test_oracle_records_schema(self):
        recs = oracle_records(taylor_oracle(ring(4), density(), 2))
        assert recs[0]["source"] == "matrix-oracle"
        assert recs[0]["order"] == 2 and recs[0]["numerator"] == 1
        assert recs[1]["order"] == 4

    def test_evolution_records(self):
        res = evolve(ring(6), density(), [0.0, 0.5])
        recs = evolution_records(res)
        assert recs[0] == {"t": 0.0, "value": 0.0}
        assert set(recs[1]) == {"t", "value"}
