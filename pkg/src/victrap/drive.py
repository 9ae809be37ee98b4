"""Time-dependent Rabi envelopes and chirped detunings.

Pure functions of (t, config); the integrator evaluates these inside its
stepping loop, so everything here is plain scalar math.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ChirpProfile, DriveConfig

__all__ = ["DriveSample", "pulse_envelopes", "chirped_detunings", "drive_sample"]


@dataclass(frozen=True)
class DriveSample:
    """Instantaneous drive values: the two Rabi envelopes and detunings."""

    g1: float
    g2: float
    delta1: float
    delta2: float


def pulse_envelopes(t: float, drive: DriveConfig) -> tuple[float, float]:
    """Gaussian envelopes of the two pulses at time t.

    g1 = g01 * exp(-(t - c1)^2 / tau^2) peaks at the pulse-1 center,
    g2 = g02 * exp(-(t - c2)^2 / tau^2) peaks at the pulse-2 center.
    """
    u1 = (t - drive.center1) / drive.tau
    u2 = (t - drive.center2) / drive.tau
    return drive.g01 * math.exp(-u1 * u1), drive.g02 * math.exp(-u2 * u2)


def chirped_detunings(t: float, drive: DriveConfig) -> tuple[float, float]:
    """Detunings of the two drives at time t.

    With chirping enabled each detuning sweeps by its chi amplitude around
    the static offset, centered on the corresponding pulse; disabled, the
    detunings are the static offsets.
    """
    if not drive.chirp_enabled:
        return drive.static_delta1, drive.static_delta2
    if drive.chirp_profile is ChirpProfile.TANH:
        f1 = math.tanh((t - drive.center1) / drive.chirp_ramp)
        f2 = math.tanh((t - drive.center2) / drive.chirp_ramp)
    else:
        f1 = f2 = 1.0
    return drive.static_delta1 + drive.chi1 * f1, drive.static_delta2 + drive.chi2 * f2


def drive_sample(t: float, drive: DriveConfig) -> DriveSample:
    """Bundle envelopes and detunings for one time point."""
    g1, g2 = pulse_envelopes(t, drive)
    d1, d2 = chirped_detunings(t, drive)
    return DriveSample(g1=g1, g2=g2, delta1=d1, delta2=d2)
