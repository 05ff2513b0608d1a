import math

import pytest

from nlos_sim.direct_link import ThresholdModel, feasibility_ceiling, snr_direct_los
from nlos_sim.geometry import Point2
from nlos_sim.irs_channel import ArrayConfig
from nlos_sim.mr_channel import relay_gain
from nlos_sim.radio import RadioConfig, db_to_linear, linear_to_db


def _friis_oracle(d, radio):
    g_tx = db_to_linear(radio.tx_gain_dbi)
    g_rx = db_to_linear(radio.rx_gain_dbi)
    pr = radio.tx_power_w * g_tx * g_rx * (radio.wavelength_m / (4.0 * math.pi * d)) ** 2
    return pr / radio.noise_power_w


def test_friis_against_inline_oracle():
    radio = RadioConfig()
    for d in (0.5, 2.0, 7.5):
        got = snr_direct_los(Point2(0.0, 0.0), Point2(d, 0.0), radio)
        assert got == pytest.approx(_friis_oracle(d, radio), rel=1e-12)


def test_inverse_square_in_db():
    radio = RadioConfig()
    near = snr_direct_los(Point2(0.0, 0.0), Point2(1.0, 0.0), radio)
    far = snr_direct_los(Point2(0.0, 0.0), Point2(4.0, 0.0), radio)
    drop = linear_to_db(near) - linear_to_db(far)
    # quadrupling the distance costs 20 log10(4) dB
    assert drop == pytest.approx(12.0412, abs=1e-3)


def test_isotropic_when_gains_zeroed():
    radio = RadioConfig(tx_gain_dbi=0.0, rx_gain_dbi=0.0)
    d = 3.0
    expected = radio.tx_power_w * (radio.wavelength_m / (4.0 * math.pi * d)) ** 2
    expected /= radio.noise_power_w
    assert snr_direct_los(Point2(1.0, 1.0), Point2(1.0 + d, 1.0), radio) == pytest.approx(
        expected, rel=1e-12
    )


def test_coincident_rejected():
    with pytest.raises(ValueError):
        snr_direct_los(Point2(1.0, 1.0), Point2(1.0, 1.0), RadioConfig())


class TestFeasibilityCeiling:
    def setup_method(self):
        self.radio = RadioConfig()
        self.array = ArrayConfig(400, self.radio.default_element_area_m2)
        self.src = Point2(0.5, 1.5)
        self.dst = Point2(2.5, 1.5)

    def test_none_model_disables_ceiling(self):
        assert (
            feasibility_ceiling(self.src, self.dst, self.radio, self.array, ThresholdModel.NONE)
            is None
        )

    def test_friis_model_equals_direct_link(self):
        got = feasibility_ceiling(
            self.src, self.dst, self.radio, self.array, ThresholdModel.FRIIS
        )
        assert got == pytest.approx(snr_direct_los(self.src, self.dst, self.radio), rel=1e-12)

    def test_aperture_model_equals_broadside_capture(self):
        d = self.src.distance_to(self.dst)
        expected = self.radio.tx_power_eff_w * relay_gain(d, 0.0, self.array)
        expected /= self.radio.noise_power_w
        got = feasibility_ceiling(
            self.src, self.dst, self.radio, self.array, ThresholdModel.APERTURE
        )
        assert got == pytest.approx(expected, rel=1e-12)

    def test_aperture_is_default(self):
        explicit = feasibility_ceiling(
            self.src, self.dst, self.radio, self.array, ThresholdModel.APERTURE
        )
        assert feasibility_ceiling(self.src, self.dst, self.radio, self.array) == explicit

    def test_aperture_grows_with_elements(self):
        small = feasibility_ceiling(
            self.src, self.dst, self.radio, ArrayConfig(100, 6.25e-6), ThresholdModel.APERTURE
        )
        big = feasibility_ceiling(
            self.src, self.dst, self.radio, ArrayConfig(900, 6.25e-6), ThresholdModel.APERTURE
        )
        assert big > small
