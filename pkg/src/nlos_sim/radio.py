"""Radio-link parameters shared by every channel model in the simulator.

All powers are carried in watts internally.  dBm only appears at the
reporting boundary (CSV export, summaries) and in the thermal-noise
budget, which is naturally written in dBm/Hz terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

THERMAL_NOISE_DBM_PER_HZ = -174.0


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    if value <= 0.0:
        raise ValueError(f"cannot convert non-positive value {value!r} to dB")
    return 10.0 * math.log10(value)


def dbm_to_watts(value_dbm: float) -> float:
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class RadioConfig:
    """Carrier, bandwidth, noise and power budget for one scenario.

    wavelength_m:     carrier wavelength (0.01 m for a 30 GHz carrier)
    bandwidth_hz:     receiver bandwidth used in the noise budget
    noise_figure_db:  receiver noise figure
    tx_power_w:       source transmit power
    mr_power_w:       relay transmit power; None means "same as source"
    tx_gain_dbi:      transmit antenna gain, applied to every transmitter
                      (source and relay) so technology comparisons are not
                      skewed by a one-sided budget term
    rx_gain_dbi:      receive antenna gain of the plain direct link
    """

    wavelength_m: float = 0.01
    bandwidth_hz: float = 1.76e9
    noise_figure_db: float = 6.0
    tx_power_w: float = 1e-3
    mr_power_w: float | None = None
    tx_gain_dbi: float = 6.0
    rx_gain_dbi: float = 0.0

    def __post_init__(self) -> None:
        for name in ("wavelength_m", "bandwidth_hz", "tx_power_w"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.mr_power_w is not None and self.mr_power_w <= 0.0:
            raise ValueError(f"mr_power_w must be positive, got {self.mr_power_w!r}")

    @property
    def noise_power_dbm(self) -> float:
        """Thermal noise floor: -174 dBm/Hz + 10 log10(B) + noise figure."""
        return (
            THERMAL_NOISE_DBM_PER_HZ
            + 10.0 * math.log10(self.bandwidth_hz)
            + self.noise_figure_db
        )

    @property
    def noise_power_w(self) -> float:
        return dbm_to_watts(self.noise_power_dbm)

    @property
    def tx_power_eff_w(self) -> float:
        """Source power scaled by its antenna gain."""
        return self.tx_power_w * db_to_linear(self.tx_gain_dbi)

    @property
    def mr_power_eff_w(self) -> float:
        """Relay power scaled by the same antenna gain as the source."""
        power = self.tx_power_w if self.mr_power_w is None else self.mr_power_w
        return power * db_to_linear(self.tx_gain_dbi)

    @property
    def default_element_area_m2(self) -> float:
        """Area of one quarter-wavelength-square aperture element."""
        return (self.wavelength_m / 4.0) ** 2
