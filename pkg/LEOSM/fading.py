"""
Shadowed-Rician small-scale fading, Doppler/delay rotation and the imperfect-CSI mixing.

Every sampler takes an explicit numpy Generator; nothing here keeps state.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, UsageError

SPEED_OF_LIGHT = 2.998e8


@dataclass(frozen=True)
class FadingParams:
    K: float = 1.0
    m: float = 0.8
    Omega: float = 1.0
    sigmaR: float = 1.0

    def __post_init__(self):
        if self.K < 0:
            raise DomainError(f"Rician factor must be non-negative, got K={self.K}")
        if self.m < 0.5:
            raise DomainError(f"Nakagami shape must be at least 0.5, got m={self.m}")
        if not self.Omega > 0:
            raise DomainError(f"Nakagami spread must be positive, got Omega={self.Omega}")
        if not self.sigmaR > 0:
            raise DomainError(f"Rayleigh scale must be positive, got sigmaR={self.sigmaR}")

    @property
    def mean_power(self):
        """E|h|^2 of one channel entry."""
        return (self.K * self.Omega + 2.0 * self.sigmaR ** 2) / (self.K + 1.0)


@dataclass(frozen=True)
class DopplerParams:
    v: float = 7500.0
    alpha: float = 30.0
    c: float = SPEED_OF_LIGHT
    D: float = 700.0
    eta: float = 1.0 / 3.0 * 1e-6
    Ts: float = 1e-3

    def __post_init__(self):
        if self.v < 0:
            raise DomainError(f"relative speed must be non-negative, got v={self.v}")
        if not 0 <= self.alpha <= 90:
            raise DomainError(f"Doppler elevation must lie in [0, 90], got alpha={self.alpha}")
        if not self.D > 0:
            raise DomainError(f"satellite distance must be positive, got D={self.D}")
        if self.eta < 0:
            raise DomainError(f"delay slope must be non-negative, got eta={self.eta}")
        if not self.Ts > 0:
            raise DomainError(f"slot duration must be positive, got Ts={self.Ts}")


@dataclass(frozen=True)
class ChannelRealization:
    hTrue: np.ndarray
    hEst: np.ndarray
    deltaE2Sq: float

    def __post_init__(self):
        if self.hTrue.shape != self.hEst.shape:
            raise UsageError(f"true and estimated channels differ in shape: "
                             f"{self.hTrue.shape} vs {self.hEst.shape}")
        _check_weight("deltaE2Sq", self.deltaE2Sq)

    @property
    def nr(self):
        return self.hTrue.shape[0]

    @property
    def nt(self):
        return self.hTrue.shape[1]


def _check_weight(name, value):
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value}")


def sample_nakagami(m, Omega, size, rng):
    """
    Nakagami-m amplitudes as the square root of a Gamma(m, Omega/m) power.
    """
    return np.sqrt(rng.gamma(shape=m, scale=Omega / m, size=size))


def sample_channel_matrix(fp, nt, nr, rng):
    """
    Draw an nr x nt shadowed-Rician channel matrix.

    Each entry is sqrt(K/(K+1))|h_LoS|e^{j phi1} + sqrt(1/(K+1))|h_NLoS|e^{j phi2}
    with |h_LoS| ~ Nakagami(m, Omega), |h_NLoS| ~ Rayleigh(sigmaR) and
    independent uniform phases. The number of draws does not depend on K.

    Args:
        fp: FadingParams
        nt: transmit antennas (columns)
        nr: receive antennas (rows)
        rng: numpy.random.Generator

    Returns:
        complex ndarray of shape (nr, nt)
    """
    if nt < 1 or nr < 1:
        raise DomainError(f"channel dimensions must be positive, got nr={nr}, nt={nt}")

    shape = (nr, nt)
    los = sample_nakagami(fp.m, fp.Omega, shape, rng)
    nlos = rng.rayleigh(scale=fp.sigmaR, size=shape)
    phi1 = rng.uniform(0.0, 2.0 * np.pi, size=shape)
    phi2 = rng.uniform(0.0, 2.0 * np.pi, size=shape)

    k_los = math.sqrt(fp.K / (fp.K + 1.0))
    k_nlos = math.sqrt(1.0 / (fp.K + 1.0))

    return k_los * los * np.exp(1j * phi1) + k_nlos * nlos * np.exp(1j * phi2)


def doppler_shift(dp, fc, h0, RE=6371.0):
    """Doppler shift in Hz for a carrier of fc GHz seen from altitude h0 km."""
    return (dp.v / dp.c) * (RE / (RE + h0)) * math.cos(math.radians(dp.alpha)) * fc * 1e9


def propagation_delay(dp):
    """tau = D / c in seconds, D given in km."""
    return dp.D * 1e3 / dp.c


def apply_time_variation(h, fd, fc, t, eta, Ts):
    """
    Rotate a channel to slot t by the Doppler and delay phases.

    tau_t = eta * t * Ts; magnitudes are untouched.
    """
    elapsed = t * Ts
    tau_t = eta * elapsed
    rotation = np.exp(-2j * np.pi * fd * elapsed) * np.exp(-2j * np.pi * fc * 1e9 * tau_t)

    return np.asarray(h) * rotation


def apply_csi_error(hEstBase, deltaE1Sq, deltaE2Sq, rng):
    """
    Build the true/estimated channel pair under imperfect estimation.

    The detector keeps hEstBase as its estimate while the signal travels through
    (1 - deltaE2Sq) * hEstBase + deltaE2Sq * E, with E ~ CN(0, deltaE1Sq) entrywise.
    E is drawn whatever the weights, so runs that differ only in deltaE2Sq stay paired.

    Returns:
        ChannelRealization
    """
    _check_weight("deltaE1Sq", deltaE1Sq)
    _check_weight("deltaE2Sq", deltaE2Sq)

    hEstBase = np.asarray(hEstBase, dtype=complex)
    scale = math.sqrt(deltaE1Sq / 2.0)
    error = scale * (rng.standard_normal(hEstBase.shape) + 1j * rng.standard_normal(hEstBase.shape))

    if deltaE2Sq == 0.0:
        hTrue = hEstBase.copy()
    else:
        hTrue = (1.0 - deltaE2Sq) * hEstBase + deltaE2Sq * error

    return ChannelRealization(hTrue=hTrue, hEst=hEstBase, deltaE2Sq=float(deltaE2Sq))
