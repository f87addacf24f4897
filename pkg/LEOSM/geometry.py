"""
Large-scale link budget of the satellite downlink: slant range, free-space loss,
shadow fading, clutter, atmospheric gases and scintillation.

All functions are pure; the shadow-fading sample is drawn by the caller.
"""

import math
from dataclasses import dataclass

from .exceptions import DomainError

EARTH_RADIUS_KM = 6371.0


@dataclass(frozen=True)
class LinkGeometry:
    h0: float = 780.0
    thetaE: float = 60.0
    fc: float = 28.0
    RE: float = EARTH_RADIUS_KM

    def __post_init__(self):
        if not self.h0 > 0:
            raise DomainError(f"satellite altitude must be positive, got h0={self.h0}")
        if not 0 < self.thetaE <= 90:
            raise DomainError(f"elevation angle must lie in (0, 90], got thetaE={self.thetaE}")
        if not self.fc > 0:
            raise DomainError(f"carrier frequency must be positive, got fc={self.fc}")
        if not self.RE > 0:
            raise DomainError(f"earth radius must be positive, got RE={self.RE}")


@dataclass(frozen=True)
class AtmosphereParams:
    aZenith: float = 0.22
    sigmaSF: float = 1.0
    clutterLoss: float = 0.0
    scintillationLoss: float = 0.13

    def __post_init__(self):
        for name in ("aZenith", "sigmaSF", "clutterLoss", "scintillationLoss"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be non-negative, got {getattr(self, name)}")


@dataclass(frozen=True)
class PathLossBreakdown:
    """
    Link budget terms in dB. lb and total are derived so their sums always hold.
    """
    fspl: float
    sf: float
    cl: float
    lg: float
    ls: float

    @property
    def lb(self):
        return self.fspl + self.sf + self.cl

    @property
    def total(self):
        return self.lb + self.lg + self.ls

    def as_dict(self):
        return {"fspl": self.fspl, "sf": self.sf, "cl": self.cl, "lb": self.lb,
                "lg": self.lg, "ls": self.ls, "total": self.total}


def slant_distance(geo):
    """
    Line-of-sight range from the terminal to the satellite.

    Args:
        geo: LinkGeometry

    Returns:
        distance in km
    """
    re_sin = geo.RE * math.sin(math.radians(geo.thetaE))
    lift = geo.h0 ** 2 + 2.0 * geo.h0 * geo.RE

    # sqrt(re_sin^2 + lift) - re_sin, rationalised against cancellation near zenith
    return lift / (math.sqrt(re_sin ** 2 + lift) + re_sin)


def free_space_path_loss(d, fc):
    """FSPL in dB with d in meters and fc in GHz."""
    if not d > 0 or not fc > 0:
        raise DomainError(f"free-space path loss needs d > 0 and fc > 0, got d={d}, fc={fc}")

    return 32.45 + 20.0 * math.log10(fc) + 20.0 * math.log10(d)


def atmospheric_gas_loss(atm, thetaE):
    if not 0 < thetaE <= 90:
        raise DomainError(f"elevation angle must lie in (0, 90], got thetaE={thetaE}")
    if thetaE == 90:
        return atm.aZenith

    return atm.aZenith / math.sin(math.radians(thetaE))


def total_path_loss(geo, atm, sfSample=0.0):
    """
    Assemble the full path loss for one channel realization.

    Args:
        geo: LinkGeometry
        atm: AtmosphereParams
        sfSample: shadow fading in dB, N(0, sigmaSF^2) drawn by the caller, or 0

    Returns:
        PathLossBreakdown
    """
    d_m = slant_distance(geo) * 1e3
    return PathLossBreakdown(fspl=free_space_path_loss(d_m, geo.fc),
                             sf=float(sfSample),
                             cl=atm.clutterLoss,
                             lg=atmospheric_gas_loss(atm, geo.thetaE),
                             ls=atm.scintillationLoss)


def db_to_linear_amplitude(lossDb):
    """sqrt(10^(-L/10)), the amplitude factor a loss of L dB applies to the signal."""
    return 10.0 ** (-lossDb / 20.0)


def effective_receive_snr_db(snr_db, lossDb):
    return snr_db - lossDb
