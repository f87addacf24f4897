"""
Bit mapping for spatial modulation (SM), space shift keying (SSK) and the
conventional single-antenna benchmark (TRAD).
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .exceptions import ConfigurationError, UsageError


class Scheme(str, Enum):
    SM = "SM"
    SSK = "SSK"
    TRAD = "TRAD"


class ConstellationKind(str, Enum):
    PSK = "PSK"
    QAM = "QAM"


def is_power_of_two(n):
    return isinstance(n, (int, np.integer)) and n >= 1 and (n & (n - 1)) == 0


def gray(n):
    return n ^ (n >> 1)


def bits_to_int(bits):
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def int_to_bits(value, width):
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


@dataclass(frozen=True)
class SchemeConfig:
    scheme: Scheme = Scheme.SM
    nt: int = 4
    nr: int = 2
    mOrder: int = 4
    constellationKind: ConstellationKind = ConstellationKind.PSK

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        object.__setattr__(self, "constellationKind", ConstellationKind(self.constellationKind))

        if not is_power_of_two(self.nt):
            raise ConfigurationError(f"nt must be a power of two, got nt={self.nt}")
        if self.scheme is Scheme.SSK and self.nt < 2:
            raise ConfigurationError(f"SSK needs nt >= 2, got nt={self.nt}")
        if not isinstance(self.nr, (int, np.integer)) or self.nr < 1:
            raise ConfigurationError(f"nr must be a positive integer, got nr={self.nr}")
        if self.scheme is not Scheme.SSK:
            if not is_power_of_two(self.mOrder) or self.mOrder < 2:
                raise ConfigurationError(f"m_order must be a power of two >= 2, got m_order={self.mOrder}")
            if self.constellationKind is ConstellationKind.QAM and not _is_square(self.mOrder):
                raise ConfigurationError(f"QAM needs a square order (4, 16, 64, ...), got m_order={self.mOrder}")

    @property
    def effective_m_order(self):
        """Constellation size the detector searches; SSK has none."""
        return 1 if self.scheme is Scheme.SSK else self.mOrder

    @property
    def effective_nt(self):
        """Antennas that carry information; the benchmark always uses the first one."""
        return 1 if self.scheme is Scheme.TRAD else self.nt

    @property
    def label(self):
        if self.scheme is Scheme.SM:
            return f"SM({self.nt},{self.mOrder})"
        if self.scheme is Scheme.SSK:
            return f"SSK({self.nt})"
        return f"TRAD({self.mOrder})"


def _is_square(m):
    side = math.isqrt(m)
    return side * side == m


@dataclass(frozen=True, eq=False)
class Constellation:
    """
    points[i] is the i-th point in geometric order, labels[i] its Gray label.
    """
    points: np.ndarray
    labels: np.ndarray
    kind: ConstellationKind
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        inverse = np.empty(len(self.points), dtype=np.int64)
        inverse[self.labels] = np.arange(len(self.points))
        inverse.setflags(write=False)
        object.__setattr__(self, "inverse", inverse)

    @property
    def order(self):
        return len(self.points)

    @property
    def bits_per_symbol(self):
        return int(math.log2(self.order))

    def index_of_label(self, label):
        return int(self.inverse[label])


@dataclass(frozen=True)
class TransmitVector:
    antennaIndex: int
    symbolIndex: int
    symbol: complex
    nt: int

    def __post_init__(self):
        if not 0 <= self.antennaIndex < self.nt:
            raise UsageError(f"antenna index {self.antennaIndex} outside [0, {self.nt})")

    @property
    def asVector(self):
        x = np.zeros(self.nt, dtype=complex)
        x[self.antennaIndex] = self.symbol
        return x


@lru_cache(maxsize=None)
def build_constellation(mOrder, kind=ConstellationKind.PSK):
    """
    Unit average energy M-PSK or square M-QAM with Gray labels.

    Args:
        mOrder: constellation order, a power of two >= 2
        kind: ConstellationKind

    Returns:
        Constellation (read-only arrays, cached per (mOrder, kind))
    """
    kind = ConstellationKind(kind)
    if not is_power_of_two(mOrder) or mOrder < 2:
        raise ConfigurationError(f"constellation order must be a power of two >= 2, got {mOrder}")

    if kind is ConstellationKind.PSK:
        if mOrder == 2:
            points = np.array([1.0 + 0j, -1.0 + 0j])
        elif mOrder == 4:
            # exact axes keep QPSK free of rounding residue
            points = np.array([1.0 + 0j, 1j, -1.0 + 0j, -1j])
        else:
            points = np.exp(2j * np.pi * np.arange(mOrder) / mOrder)
        labels = np.array([gray(k) for k in range(mOrder)], dtype=np.int64)
    else:
        if not _is_square(mOrder):
            raise ConfigurationError(f"QAM needs a square order (4, 16, 64, ...), got {mOrder}")
        side = math.isqrt(mOrder)
        axis_bits = int(math.log2(side))
        levels = 2 * np.arange(side) - (side - 1)
        scale = math.sqrt(2.0 * (mOrder - 1) / 3.0)
        points = np.empty(mOrder, dtype=complex)
        labels = np.empty(mOrder, dtype=np.int64)
        for col in range(side):
            for row in range(side):
                i = col * side + row
                points[i] = complex(levels[col], levels[row]) / scale
                labels[i] = (gray(col) << axis_bits) | gray(row)

    points.setflags(write=False)
    labels.setflags(write=False)

    return Constellation(points=points, labels=labels, kind=kind)


def constellation_for(cfg):
    if cfg.scheme is Scheme.SSK:
        return None
    return build_constellation(cfg.mOrder, cfg.constellationKind)


def bits_per_use(cfg):
    """Spectral efficiency in bits per channel use."""
    antenna_bits = int(math.log2(cfg.nt))
    if cfg.scheme is Scheme.SSK:
        return antenna_bits
    symbol_bits = int(math.log2(cfg.mOrder))
    if cfg.scheme is Scheme.SM:
        return antenna_bits + symbol_bits
    return symbol_bits


def encode(bits, cfg, con=None):
    """
    Map one channel use worth of bits onto the transmit vector.

    SM splits the bits into log2(M) symbol bits followed by log2(Nt) antenna bits;
    SSK uses all of them for the antenna, TRAD all of them for the symbol.
    Antenna bits are read as a natural binary index.
    """
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    expected = bits_per_use(cfg)
    if bits.size != expected:
        raise UsageError(f"{cfg.label} carries {expected} bits per use, got {bits.size}")

    if cfg.scheme is Scheme.SSK:
        return TransmitVector(antennaIndex=bits_to_int(bits), symbolIndex=0, symbol=1.0 + 0j, nt=cfg.nt)

    con = con if con is not None else constellation_for(cfg)
    k = con.bits_per_symbol
    symbol_index = con.index_of_label(bits_to_int(bits[:k]))
    antenna = bits_to_int(bits[k:]) if cfg.scheme is Scheme.SM else 0

    return TransmitVector(antennaIndex=antenna,
                          symbolIndex=symbol_index,
                          symbol=complex(con.points[symbol_index]),
                          nt=cfg.nt)


def demap(antennaIndex, symbolIndex, cfg, con=None):
    """
    Recover the bits of a detected (antenna, symbol) pair; the inverse of encode.
    """
    antenna_bits = int(math.log2(cfg.nt))
    if not 0 <= antennaIndex < cfg.effective_nt:
        raise UsageError(f"antenna index {antennaIndex} outside [0, {cfg.effective_nt})")

    if cfg.scheme is Scheme.SSK:
        return int_to_bits(antennaIndex, antenna_bits)

    con = con if con is not None else constellation_for(cfg)
    if symbolIndex is None or not 0 <= symbolIndex < con.order:
        raise UsageError(f"symbol index {symbolIndex} outside [0, {con.order})")

    symbol_bits = int_to_bits(int(con.labels[symbolIndex]), con.bits_per_symbol)
    if cfg.scheme is Scheme.TRAD:
        return symbol_bits

    return np.concatenate([symbol_bits, int_to_bits(antennaIndex, antenna_bits)])
