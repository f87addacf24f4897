"""
Received-signal model, exhaustive maximum-likelihood detection and detector
complexity accounting in complex multiplications (CM) and additions (CA).
"""

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import DomainError, UsageError
from .fading import FadingParams, sample_channel_matrix
from .modem import Scheme, bits_per_use, constellation_for, encode


@dataclass(frozen=True, eq=False)
class ReceivedSignal:
    y: np.ndarray
    n0: float
    lAmp: float = 1.0
    esAmp: float = 1.0

    def __post_init__(self):
        if self.n0 < 0:
            raise DomainError(f"noise density must be non-negative, got n0={self.n0}")
        if not self.lAmp > 0:
            raise DomainError(f"path-loss amplitude must be positive, got lAmp={self.lAmp}")

    @property
    def nr(self):
        return len(self.y)


@dataclass(frozen=True)
class DetectionResult:
    antennaIndex: int
    symbolIndex: Optional[int]
    metric: float


@dataclass(frozen=True)
class OpCount:
    cm: int = 0
    ca: int = 0

    @property
    def total(self):
        return self.cm + self.ca

    def __add__(self, other):
        return OpCount(cm=self.cm + other.cm, ca=self.ca + other.ca)


def transmit(hTrue, tv, lAmp, esAmp, n0, rng):
    """
    Pass a transmit vector through the channel and add circular Gaussian noise.

    y = esAmp * lAmp * H x + n, where x already carries the symbol (SM/TRAD) or a
    unit pulse (SSK) and n has total variance n0 per entry. The noise is drawn
    even when n0 = 0 so the random stream advances identically.

    Returns:
        ReceivedSignal
    """
    hTrue = np.asarray(hTrue)
    if hTrue.ndim != 2 or hTrue.shape[1] != tv.nt:
        raise UsageError(f"channel of shape {hTrue.shape} cannot carry a {tv.nt}-antenna transmit vector")
    if n0 < 0:
        raise DomainError(f"noise density must be non-negative, got n0={n0}")

    nr = hTrue.shape[0]
    noise = np.sqrt(n0 / 2.0) * (rng.standard_normal(nr) + 1j * rng.standard_normal(nr))
    y = esAmp * lAmp * hTrue[:, tv.antennaIndex] * tv.symbol + noise

    return ReceivedSignal(y=y, n0=n0, lAmp=lAmp, esAmp=esAmp)


def _check_rows(sig, hEst):
    if hEst.ndim != 2 or hEst.shape[0] != sig.nr:
        raise UsageError(f"received vector of length {sig.nr} does not match channel of shape {hEst.shape}")


def ml_detect_sm(y, hEst, con, nt):
    """
    Exhaustive search over the nt * M (antenna, symbol) hypotheses.

    Hypotheses are laid out antenna-major, so argmin's first-minimum rule breaks
    ties by the lowest (antenna, symbol) pair.
    """
    hEst = np.asarray(hEst)
    _check_rows(y, hEst)

    points = np.asarray(con.points)
    signatures = y.esAmp * y.lAmp * (hEst[:, :nt, None] * points[None, None, :]).reshape(hEst.shape[0], -1)
    metrics = np.sqrt(np.sum(np.abs(y.y[:, None] - signatures) ** 2, axis=0))
    best = int(np.argmin(metrics))
    antenna, symbol = divmod(best, len(points))

    return DetectionResult(antennaIndex=antenna, symbolIndex=symbol, metric=float(metrics[best]))


def ml_detect_ssk(y, hEst, nt):
    hEst = np.asarray(hEst)
    _check_rows(y, hEst)

    signatures = y.esAmp * y.lAmp * hEst[:, :nt]
    metrics = np.sqrt(np.sum(np.abs(y.y[:, None] - signatures) ** 2, axis=0))
    best = int(np.argmin(metrics))

    return DetectionResult(antennaIndex=best, symbolIndex=None, metric=float(metrics[best]))


def detect(y, hEst, cfg, con=None):
    """Dispatch to the ML detector of the configured scheme."""
    if cfg.scheme is Scheme.SSK:
        return ml_detect_ssk(y, hEst, cfg.nt)

    con = con if con is not None else constellation_for(cfg)
    return ml_detect_sm(y, hEst, con, cfg.effective_nt)


def pairwise_snr_metric(hTrue, tvA, tvB, lAmp, n0, esAmp=1.0):
    """
    Instantaneous pairwise SNR between two transmit hypotheses, summed entry by entry.

    Diagnostic only: sum_i sum_l esAmp * lAmp * |h_{l,i} (x_A - x_B)_i| / n0.
    """
    if not n0 > 0:
        raise DomainError(f"pairwise SNR needs n0 > 0, got n0={n0}")

    hTrue = np.asarray(hTrue)
    diff = tvA.asVector - tvB.asVector
    return float(esAmp * lAmp * np.sum(np.abs(hTrue * diff[None, :])) / n0)


def complexity_sm(nt, nr, mOrder):
    per_hypothesis = OpCount(cm=nr * (nt + 2), ca=nr * (nt + 1) - 1)
    loops = nt * mOrder
    return OpCount(cm=per_hypothesis.cm * loops, ca=per_hypothesis.ca * loops)


def complexity_ssk(nt, nr):
    per_hypothesis = OpCount(cm=nr * (nt + 1), ca=nr * (nt + 1) - 1)
    return OpCount(cm=per_hypothesis.cm * nt, ca=per_hypothesis.ca * nt)


def complexity_trad(nr, mOrder):
    """The benchmark detector is the SM detector over a single antenna."""
    return complexity_sm(1, nr, mOrder)


def complexity_for(cfg):
    if cfg.scheme is Scheme.SM:
        return complexity_sm(cfg.nt, cfg.nr, cfg.mOrder)
    if cfg.scheme is Scheme.SSK:
        return complexity_ssk(cfg.nt, cfg.nr)
    return complexity_trad(cfg.nr, cfg.mOrder)


class _OpCounter:
    def __init__(self):
        self.cm = 0
        self.ca = 0

    def mul(self, a, b):
        self.cm += 1
        return a * b

    def add(self, a, b):
        self.ca += 1
        return a + b

    def sub(self, a, b):
        self.ca += 1
        return a - b

    def result(self):
        return OpCount(cm=self.cm, ca=self.ca)


def _counted_metric(counter, y, column_source, v, scalar):
    """
    One hypothesis of the search, counted step by step:
    H v (Nr*Nt CM, Nr*(Nt-1) CA), optional scaling (Nr CM), y - . (Nr CA),
    squared norm (Nr CM, Nr-1 CA).
    """
    nr, nt = column_source.shape
    hv = []
    for l in range(nr):
        acc = counter.mul(column_source[l, 0], v[0])
        for j in range(1, nt):
            acc = counter.add(acc, counter.mul(column_source[l, j], v[j]))
        hv.append(acc)

    if scalar is not None:
        hv = [counter.mul(entry, scalar) for entry in hv]

    residual = [counter.sub(y[l], hv[l]) for l in range(nr)]

    energy = counter.mul(residual[0], residual[0].conjugate()).real
    for l in range(1, nr):
        energy = counter.add(energy, counter.mul(residual[l], residual[l].conjugate()).real)

    return energy


def instrumented_detect(y, hEst, cfg, con=None):
    """
    Literal loop implementation of the ML detector that counts every CM and CA.

    Decisions match detect(); the counters reproduce complexity_sm,
    complexity_ssk and complexity_trad exactly.

    Returns:
        (DetectionResult, OpCount)
    """
    hEst = np.asarray(hEst)
    _check_rows(y, hEst)
    counter = _OpCounter()
    nt = cfg.effective_nt
    channel = hEst[:, :nt]
    samples = [complex(v) for v in y.y]

    best_energy, best = None, None
    if cfg.scheme is Scheme.SSK:
        # the real scale esAmp * lAmp is folded into y once, outside the search
        scale = y.esAmp * y.lAmp
        samples = [v / scale for v in samples]
        for i in range(nt):
            v = [1.0 + 0j if j == i else 0j for j in range(nt)]
            energy = _counted_metric(counter, samples, channel, v, None)
            if best_energy is None or energy < best_energy:
                best_energy, best = energy, (i, None)
        metric = scale * float(np.sqrt(best_energy))
    else:
        con = con if con is not None else constellation_for(cfg)
        for i in range(nt):
            v = [1.0 + 0j if j == i else 0j for j in range(nt)]
            for k, point in enumerate(con.points):
                energy = _counted_metric(counter, samples, channel, v, complex(point) * (y.esAmp * y.lAmp))
                if best_energy is None or energy < best_energy:
                    best_energy, best = energy, (i, k)
        metric = float(np.sqrt(best_energy))

    return DetectionResult(antennaIndex=best[0], symbolIndex=best[1], metric=metric), counter.result()


def measure_detection_runtime(cfg, trials=1000, seed=0, snr_db=10.0, fading=None):
    """
    Mean wall-clock seconds per ML detection over seeded random instances.

    Channels, bits and noise are generated before the timer starts so only the
    detector is measured.
    """
    if trials < 1:
        raise UsageError(f"trials must be at least 1, got {trials}")

    fading = fading if fading is not None else FadingParams()
    rng = np.random.default_rng(seed)
    con = constellation_for(cfg)
    n0 = 10.0 ** (-snr_db / 10.0)
    bits_len = bits_per_use(cfg)

    instances = []
    for _ in range(trials):
        h = sample_channel_matrix(fading, cfg.nt, cfg.nr, rng)
        tv = encode(rng.integers(0, 2, bits_len), cfg, con)
        instances.append((transmit(h, tv, 1.0, 1.0, n0, rng), h))

    start = time.perf_counter()
    for sig, h in instances:
        detect(sig, h, cfg, con)
    elapsed = time.perf_counter() - start

    return elapsed / trials

