"""
Self-checks behind `leosm validate`: the simulator against the analytic AWGN
BPSK curve and the ML detectors against a plain exhaustive search.
"""

import logging

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..detection import detect, transmit
from ..fading import FadingParams, sample_channel_matrix
from ..modem import Scheme, SchemeConfig, bits_per_use, constellation_for, encode
from ..montecarlo import SweepConfig, awgn_bpsk_reference, run_sweep

log = logging.getLogger(__name__)


def exhaustive_search(y, h, cfg, con, l_amp=1.0):
    """
    Reference detector: one explicit hypothesis at a time, first strict minimum wins.
    """
    best, best_metric = None, np.inf
    symbols = [1.0 + 0j] if cfg.scheme is Scheme.SSK else list(con.points)
    for antenna in range(cfg.effective_nt):
        for k, s in enumerate(symbols):
            x = np.zeros(h.shape[1], dtype=complex)
            x[antenna] = s
            metric = np.linalg.norm(y - l_amp * h @ x)
            if metric < best_metric:
                best_metric = metric
                best = (antenna, None if cfg.scheme is Scheme.SSK else k)

    return best


class AwgnOracleCheck:
    """
    TRAD-BPSK with fading disabled against Q(sqrt(2 SNR)).
    """
    def __init__(self, snr_grid=(0.0, 2.0, 4.0, 6.0, 8.0), trials=100000, seed=1, workers=1):
        self.cfg = SweepConfig(scheme=SchemeConfig(scheme=Scheme.TRAD, nt=1, nr=1, mOrder=2),
                               snrGridDb=tuple(snr_grid),
                               trialsPerPoint=trials,
                               masterSeed=seed,
                               fadingEnabled=False,
                               label="AWGN BPSK")
        self.workers = workers

    def run(self):
        result = run_sweep(self.cfg, workers=self.workers)
        rows = []
        for point in result.points:
            reference = awgn_bpsk_reference(point.snrDb)
            expected_errors = reference * point.bitsSimulated
            tolerance = 3.0 * point.halfWidth95
            # too few expected errors make the normal approximation meaningless
            checked = expected_errors >= 20
            passed = (not checked) or abs(point.ber - reference) <= tolerance
            rows.append([point.snrDb, point.ber, reference, tolerance, checked, passed])

        frame = pd.DataFrame(rows, columns=["snr_db", "ber", "reference", "tolerance", "checked", "passed"])
        for row in frame.itertuples():
            if not row.passed:
                log.error(f"AWGN oracle mismatch at {row.snr_db} dB: ber {row.ber} vs {row.reference}")

        return frame


class DetectorOracleCheck:
    """
    ML detector decisions against exhaustive_search on seeded random instances.
    """
    def __init__(self, scheme, instances=1000, snr_db=10.0, seed=2):
        self.scheme = scheme
        self.instances = instances
        self.snr_db = snr_db
        self.seed = seed

    def run(self):
        rng = np.random.default_rng(self.seed)
        con = constellation_for(self.scheme)
        n0 = 10.0 ** (-self.snr_db / 10.0)
        fading = FadingParams()
        mismatches = 0

        for _ in tqdm(range(self.instances), desc=self.scheme.label, position=0, colour='GREEN', leave=False):
            h = sample_channel_matrix(fading, self.scheme.nt, self.scheme.nr, rng)
            bits = rng.integers(0, 2, bits_per_use(self.scheme))
            signal = transmit(h, encode(bits, self.scheme, con), 1.0, 1.0, n0, rng)
            decision = detect(signal, h, self.scheme, con)
            reference = exhaustive_search(signal.y, h, self.scheme, con)
            if (decision.antennaIndex, decision.symbolIndex) != reference:
                mismatches += 1

        if mismatches:
            log.error(f"{self.scheme.label}: {mismatches} of {self.instances} decisions differ from exhaustive search")

        return mismatches


def default_detector_checks(instances=1000):
    return [DetectorOracleCheck(SchemeConfig(scheme=Scheme.SM, nt=4, nr=2, mOrder=4), instances),
            DetectorOracleCheck(SchemeConfig(scheme=Scheme.SSK, nt=8, nr=2), instances)]
