"""
Seeded Monte Carlo BER estimation over SNR grids.

Every trial draws from its own generator seeded by (masterSeed, point index,
trial index), and errors are summed as integers, so a sweep gives the same
counts whatever the chunking or the number of worker processes.
"""

import re
import logging
import time
import multiprocessing as mp
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy import stats
from tqdm import tqdm

from .exceptions import ConfigurationError, UsageError
from .fading import (DopplerParams, FadingParams, apply_csi_error, apply_time_variation,
                     doppler_shift, sample_channel_matrix)
from .geometry import AtmosphereParams, LinkGeometry, db_to_linear_amplitude, total_path_loss
from .detection import OpCount, complexity_for, detect, transmit
from .modem import SchemeConfig, bits_per_use, constellation_for, demap, encode
from .utils import process

log = logging.getLogger(__name__)

CHUNK_TRIALS = 2000

# a '#' opens a comment only at the start of a line or after whitespace
COMMENT = re.compile(r"(?:^|\s)#")


def check_text_value(key, value):
    """Free-text values must come back unchanged from a written configuration document."""
    if COMMENT.search(value) or "\n" in value:
        raise ConfigurationError(f"{key} must not hold a line break or a '#' after whitespace, got '{value}'")
    if value != value.strip():
        raise ConfigurationError(f"{key} must not start or end with whitespace, got '{value}'")


class LinkMode(str, Enum):
    NORMALIZED = "normalized"
    ABSOLUTE = "absolute"


@dataclass(frozen=True)
class SweepConfig:
    scheme: SchemeConfig = field(default_factory=SchemeConfig)
    geometry: LinkGeometry = field(default_factory=LinkGeometry)
    atmosphere: AtmosphereParams = field(default_factory=AtmosphereParams)
    fading: FadingParams = field(default_factory=FadingParams)
    doppler: DopplerParams = field(default_factory=DopplerParams)
    deltaE2Sq: float = 0.0
    deltaE1Sq: Optional[float] = None
    snrGridDb: Tuple[float, ...] = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0)
    trialsPerPoint: int = 100000
    masterSeed: int = 0
    linkMode: LinkMode = LinkMode.NORMALIZED
    timeVarying: bool = False
    slotIndex: int = 1
    fadingEnabled: bool = True
    noiseless: bool = False
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "linkMode", LinkMode(self.linkMode))
        object.__setattr__(self, "snrGridDb", tuple(float(s) for s in self.snrGridDb))
        if not self.label:
            object.__setattr__(self, "label", self.scheme.label)
        check_text_value("sweep.label", self.label)

        if self.trialsPerPoint < 1:
            raise ConfigurationError(f"trials must be at least 1, got {self.trialsPerPoint}")
        if not self.snrGridDb:
            raise ConfigurationError("snr grid must not be empty")
        if any(b <= a for a, b in zip(self.snrGridDb, self.snrGridDb[1:])):
            raise ConfigurationError(f"snr grid must be strictly increasing, got {list(self.snrGridDb)}")
        if not 0 <= self.masterSeed < 2 ** 64:
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {self.masterSeed}")
        if self.slotIndex < 0:
            raise ConfigurationError(f"slot index must be non-negative, got {self.slotIndex}")
        for name, value in (("delta_e2_sq", self.deltaE2Sq), ("delta_e1_sq", self.deltaE1Sq)):
            if value is not None and not 0.0 <= value <= 1.0:
                raise ConfigurationError(f"{name} must lie in [0, 1], got {value}")

    @property
    def errorVariance(self):
        """delta_e1^2, tied to delta_e2^2 unless set on its own."""
        return self.deltaE2Sq if self.deltaE1Sq is None else self.deltaE1Sq

    def point_index(self, snrDb):
        try:
            return self.snrGridDb.index(float(snrDb))
        except ValueError:
            raise UsageError(f"snr {snrDb} dB is not on the sweep grid {list(self.snrGridDb)}")


@dataclass(frozen=True)
class BerPoint:
    snrDb: float
    bitsSimulated: int
    bitErrors: int

    def __post_init__(self):
        if not 0 <= self.bitErrors <= self.bitsSimulated:
            raise UsageError(f"{self.bitErrors} errors out of {self.bitsSimulated} bits")

    @property
    def ber(self):
        return self.bitErrors / self.bitsSimulated

    @property
    def halfWidth95(self):
        """Normal-approximation 95 % half-width; reported, never used to stop."""
        ber = self.ber
        return 1.96 * float(np.sqrt(ber * (1.0 - ber) / self.bitsSimulated))


@dataclass(frozen=True)
class SweepResult:
    config: SweepConfig
    points: Tuple[BerPoint, ...]
    seSummary: int
    complexitySummary: OpCount
    wallClock: float


def _substream(cfg, point_index, trial_index):
    return np.random.default_rng([cfg.masterSeed, point_index, trial_index])


def _trial(cfg, point_index, snrDb, trialIndex, con):
    scheme = cfg.scheme
    rng = _substream(cfg, point_index, trialIndex)

    # draw order is fixed so switches and weights never shift the stream
    sf = rng.normal(0.0, cfg.atmosphere.sigmaSF)
    h = sample_channel_matrix(cfg.fading, scheme.nt, scheme.nr, rng)
    if not cfg.fadingEnabled:
        h = np.ones((scheme.nr, scheme.nt), dtype=complex)
    realization = apply_csi_error(h, cfg.errorVariance, cfg.deltaE2Sq, rng)
    bits = rng.integers(0, 2, size=bits_per_use(scheme), dtype=np.uint8)

    h_true = realization.hTrue
    if cfg.timeVarying:
        fd = doppler_shift(cfg.doppler, cfg.geometry.fc, cfg.geometry.h0, cfg.geometry.RE)
        h_true = apply_time_variation(h_true, fd, cfg.geometry.fc, cfg.slotIndex,
                                      cfg.doppler.eta, cfg.doppler.Ts)

    if cfg.linkMode is LinkMode.ABSOLUTE:
        l_amp = db_to_linear_amplitude(total_path_loss(cfg.geometry, cfg.atmosphere, sf).total)
    else:
        l_amp = 1.0
    n0 = 0.0 if cfg.noiseless else 10.0 ** (-snrDb / 10.0)

    tv = encode(bits, scheme, con)
    signal = transmit(h_true, tv, l_amp, 1.0, n0, rng)
    decision = detect(signal, realization.hEst, scheme, con)
    recovered = demap(decision.antennaIndex, decision.symbolIndex, scheme, con)

    return int(np.count_nonzero(recovered != bits))


def run_trial(cfg, snrDb, trialIndex):
    """
    Bit errors of one channel use; a pure function of (masterSeed, snrDb, trialIndex).
    """
    return _trial(cfg, cfg.point_index(snrDb), snrDb, trialIndex, constellation_for(cfg.scheme))


def _run_chunk(task):
    cfg, point_index, snr_db, start, stop = task
    con = constellation_for(cfg.scheme)
    return sum(_trial(cfg, point_index, snr_db, t, con) for t in range(start, stop))


def _chunks(cfg, point_index, snr_db):
    return [(cfg, point_index, snr_db, start, min(start + CHUNK_TRIALS, cfg.trialsPerPoint))
            for start in range(0, cfg.trialsPerPoint, CHUNK_TRIALS)]


def estimate_ber(cfg, snrDb, workers=1, pool=None, progress=False):
    """
    Aggregate trialsPerPoint trials at one SNR.

    Args:
        cfg: SweepConfig
        snrDb: a value of cfg.snrGridDb
        workers: processes to use when no pool is given
        pool: an open multiprocessing pool to reuse
        progress: show a tqdm bar over chunks

    Returns:
        BerPoint
    """
    point_index = cfg.point_index(snrDb)
    tasks = _chunks(cfg, point_index, snrDb)

    if pool is None and workers > 1:
        with mp.Pool(processes=workers) as own_pool:
            return estimate_ber(cfg, snrDb, pool=own_pool, progress=progress)

    if pool is not None:
        results = pool.imap(_run_chunk, tasks)
    else:
        results = map(_run_chunk, tasks)

    if progress:
        results = tqdm(results,
                       total=len(tasks),
                       desc=f"{cfg.label} {snrDb:g} dB",
                       position=1,
                       colour='YELLOW', leave=False)
    errors = sum(results)

    return BerPoint(snrDb=float(snrDb),
                    bitsSimulated=cfg.trialsPerPoint * bits_per_use(cfg.scheme),
                    bitErrors=int(errors))


def run_sweep(cfg, workers=1, progress=False):
    """
    Estimate the BER at every grid point and attach the SE and complexity summaries.

    Returns:
        SweepResult
    """
    start0 = time.time()
    log.info(f"Sweep {cfg.label}: {len(cfg.snrGridDb)} points x {cfg.trialsPerPoint} trials, "
             f"delta_e2_sq={cfg.deltaE2Sq}, seed={cfg.masterSeed}, workers={workers}")
    if not cfg.fadingEnabled:
        log.warning(f"Sweep {cfg.label}: fading disabled (H = 1), validation mode")

    grid = cfg.snrGridDb
    if progress:
        grid = tqdm(grid, desc=cfg.label, position=0, colour='GREEN')

    points = []
    if workers > 1:
        with mp.Pool(processes=workers) as pool:
            for snr in grid:
                points.append(estimate_ber(cfg, snr, pool=pool, progress=progress))
                log.debug(f"{cfg.label} {snr:g} dB: {points[-1].bitErrors}/{points[-1].bitsSimulated}")
            pool.close()
            pool.join()
    else:
        for snr in grid:
            points.append(estimate_ber(cfg, snr, progress=progress))
            log.debug(f"{cfg.label} {snr:g} dB: {points[-1].bitErrors}/{points[-1].bitsSimulated}")

    wall_clock = time.time() - start0
    log.info(f"Sweep {cfg.label} done in {process(wall_clock)}")

    return SweepResult(config=cfg,
                       points=tuple(points),
                       seSummary=bits_per_use(cfg.scheme),
                       complexitySummary=complexity_for(cfg.scheme),
                       wallClock=wall_clock)


def awgn_bpsk_reference(snrDb):
    """Q(sqrt(2 * SNR)), the BPSK bit error rate on an AWGN channel."""
    with np.errstate(over='ignore'):
        snr = np.power(10.0, np.asarray(snrDb, dtype=float) / 10.0)
    ber = stats.norm.sf(np.sqrt(2.0 * snr))

    return float(ber) if np.ndim(ber) == 0 else ber
