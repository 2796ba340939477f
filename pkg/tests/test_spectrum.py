"""Detector-probed spectra, rationality detection, and spectral responses."""

from __future__ import annotations

import math
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

import btzdet.spectrum as spectrum_mod
import oracles
from btzdet.params import (
    NumericsControl,
    hawking_temperature,
    redshift_gamma,
    redshift_gamma_tilde,
)
from btzdet.specfun import legendre_conical
from btzdet.spectrum import (
    detect_rational_sqrt_mass_ratio,
    interference_from_spectrum,
    response_from_spectrum,
    singular_interference_term,
    w_hat_12,
    w_hat_btz,
)
from btzdet.response import response_interference, response_single
from btzdet.validate import fig3_scenario, fig4_scenario
from btzdet.wightman import single_branch_terms

CTRL = NumericsControl()


@pytest.fixture(scope="module")
def fig3():
    return fig3_scenario(2.0)


@pytest.fixture(scope="module")
def coincident(fig3):
    return replace(fig3, branch2=fig3.branch1)


class TestSingleBranchSpectrum:
    def test_zero_frequency_value(self, fig3):
        sample = w_hat_btz(0.0, fig3.branch1, CTRL)
        assert sample.regular_part == pytest.approx(1.1820841617948754, rel=1e-12)
        assert sample.total == sample.regular_part + sample.singular_part

    def test_zero_frequency_wiring(self, fig3):
        # at K = 0 the thermal factor is exactly 1/2 and the degree is -1/2,
        # so the regular part is (1/(4 gamma)) times the plain Legendre sum
        b = fig3.branch1
        sample = w_hat_btz(0.0, b, CTRL)
        leg_sum = sum(
            w * float(legendre_conical(0.0, a)) for w, a in single_branch_terms(b, CTRL)
        )
        assert sample.regular_part == pytest.approx(
            leg_sum / (4.0 * redshift_gamma(b)), rel=1e-14
        )

    def test_singular_part_is_delta_constant(self, fig3):
        b = fig3.branch1
        for K in (0.0, 0.2, -1.0):
            sample = w_hat_btz(K, b, CTRL)
            assert sample.singular_part == 0.25 / redshift_gamma(b)
        assert w_hat_btz(0.0, b, CTRL).singular_part == pytest.approx(
            0.3608439182435161, rel=1e-15
        )

    def test_matches_fourier_oracle(self, fig3):
        # windowed, tapered numerical Fourier transform of the regulated
        # time-domain correlator
        b = fig3.branch1
        got = w_hat_btz(0.1, b, CTRL).regular_part
        assert got == pytest.approx(0.00018729283150390838, rel=1e-9)
        ref = oracles.ft_spectrum_reference(0.1, b, CTRL)
        assert got == pytest.approx(ref, rel=5e-2)

    def test_evenness_probe(self, fig3):
        b = fig3.branch1
        t_h = hawking_temperature(b)
        for K in (0.1, 0.7):
            plus = w_hat_btz(K, b, CTRL).regular_part * (math.exp(K / t_h) + 1.0)
            minus = w_hat_btz(-K, b, CTRL).regular_part * (math.exp(-K / t_h) + 1.0)
            assert plus == pytest.approx(minus, rel=1e-10)

    def test_detailed_balance_probe(self, fig3):
        b = fig3.branch1
        t_h = hawking_temperature(b)
        for K in (0.05, 0.3):
            ratio = (
                w_hat_btz(K, b, CTRL).regular_part
                / w_hat_btz(-K, b, CTRL).regular_part
            )
            assert ratio == pytest.approx(math.exp(-K / t_h), rel=1e-10)

    def test_mirror_terms_reduce_spectrum(self, fig3):
        dirichlet = replace(fig3.branch1, zeta=1)
        assert (
            w_hat_btz(0.0, dirichlet, CTRL).regular_part
            < w_hat_btz(0.0, fig3.branch1, CTRL).regular_part
        )


class TestCrossSpectrum:
    def test_position_superposition_never_singular(self, fig3):
        for K in (0.0, 0.5, -2.0):
            assert w_hat_12(K, fig3, CTRL).singular_part == 0.0

    def test_mass_superposition_singular_constant(self):
        scn = fig4_scenario(1.5)
        gt1 = redshift_gamma_tilde(scn.branch1)
        gt2 = redshift_gamma_tilde(scn.branch2)
        expected = 11.0 / (4.0 * math.sqrt(gt1 * gt2))
        sample = w_hat_12(0.3, scn, CTRL)
        assert sample.singular_part == pytest.approx(expected, rel=1e-15)
        assert sample.singular_part == pytest.approx(0.2708571103944398, rel=1e-12)

    def test_singular_scales_with_image_count(self):
        scn = fig4_scenario(1.5)
        even = w_hat_12(0.3, scn, NumericsControl(convention="2N")).singular_part
        odd = w_hat_12(0.3, scn, CTRL).singular_part
        assert even / odd == pytest.approx(10.0 / 11.0, rel=1e-15)

    def test_irrational_ratio_not_singular(self):
        base = fig4_scenario(1.5)
        scn = replace(base, branch2=replace(base.branch2, M=base.branch1.M / 2.0))
        assert w_hat_12(0.3, scn, CTRL).singular_part == 0.0

    def test_coincident_matches_single_branch_spectrum(self, coincident):
        root_m = math.sqrt(coincident.branch1.M)
        for k_bar in (0.0, 0.3, 1.0):
            cross = w_hat_12(k_bar, coincident, CTRL)
            single = w_hat_btz(root_m * k_bar, coincident.branch1, CTRL)
            assert cross.total == pytest.approx(root_m * single.total, rel=1e-10)
            assert cross.singular_part == pytest.approx(
                root_m * single.singular_part, rel=1e-12
            )


class TestRationalityDetection:
    def test_exact_rational_fires(self):
        verdict = detect_rational_sqrt_mass_ratio(fig4_scenario(1.5), CTRL)
        assert verdict.is_rational
        assert verdict.p_over_q == Fraction(2, 3)
        assert verdict.residual <= 1e-15

    def test_unit_ratio_excluded(self, coincident):
        verdict = detect_rational_sqrt_mass_ratio(coincident, CTRL)
        assert not verdict.is_rational

    def test_irrational_does_not_fire(self):
        base = fig4_scenario(1.5)
        scn = replace(base, branch2=replace(base.branch2, M=base.branch1.M / 2.0))
        ctrl = NumericsControl(rational_max_den=100)
        verdict = detect_rational_sqrt_mass_ratio(scn, ctrl)
        assert not verdict.is_rational
        assert verdict.residual > 1e-9

    def test_scale_invariance(self):
        base = fig4_scenario(1.5)
        scaled = replace(
            base,
            branch1=replace(base.branch1, M=base.branch1.M * 1.7),
            branch2=replace(base.branch2, M=base.branch2.M * 1.7),
        )
        a = detect_rational_sqrt_mass_ratio(base, CTRL)
        b = detect_rational_sqrt_mass_ratio(scaled, CTRL)
        assert a.is_rational == b.is_rational
        assert a.p_over_q == b.p_over_q


class TestSpectralResponses:
    def test_constant_spectrum_closed_form(self, fig3, monkeypatch):
        def constant(K, b, ctrl):
            return 0.7 * np.ones_like(np.asarray(K, dtype=float))

        monkeypatch.setattr(spectrum_mod, "_regular_btz_many", constant)
        got = response_from_spectrum(fig3, 1, CTRL)
        expected = 0.7 * redshift_gamma(fig3.branch1) * math.sqrt(math.pi)
        assert got == pytest.approx(expected, rel=1e-12)

    def test_single_branch_cross_path(self, fig3):
        spectral = response_from_spectrum(fig3, 1, CTRL)
        direct = response_single(fig3, 1, CTRL)
        assert spectral == pytest.approx(direct, rel=2e-2)

    def test_coincident_interference_reduces(self, coincident):
        f12 = interference_from_spectrum(coincident, CTRL)
        f = response_from_spectrum(coincident, 1, CTRL)
        assert f12 == pytest.approx(f, rel=1e-8)

    def test_mass_superposition_value_and_domination(self):
        scn = fig4_scenario(1.5)
        overlay = singular_interference_term(scn, CTRL)
        assert overlay == pytest.approx(4.679370557675663, rel=1e-9)
        f12 = interference_from_spectrum(scn, CTRL)
        assert f12 == pytest.approx(4.764515714193222, rel=1e-9)
        # removing the singular overlap leaves a small smooth remainder
        assert abs(f12) > 2.0 * abs(f12 - overlay)

    def test_mass_superposition_cross_path(self):
        scn = fig4_scenario(1.5)
        assert interference_from_spectrum(scn, CTRL) == pytest.approx(
            response_interference(scn, CTRL), rel=3e-2
        )

    def test_singular_overlay_is_gaussian_overlap(self):
        scn = fig4_scenario(1.5)
        gt1 = redshift_gamma_tilde(scn.branch1)
        gt2 = redshift_gamma_tilde(scn.branch2)
        constant = CTRL.image_count / (4.0 * math.sqrt(gt1 * gt2))
        overlap = oracles.overlap_quad_reference(scn)
        assert singular_interference_term(scn, CTRL) == pytest.approx(
            constant * overlap, rel=1e-8
        )
