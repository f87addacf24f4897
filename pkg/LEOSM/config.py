"""
Flat key-value run configuration.

    # comment
    scheme = SM            # short alias of scheme.type
    scheme.nt = 4
    channel.k = 1
    csi.delta_e2_sq = 0.2
    sweep.snr = 0:5:40     # start:step:stop, inclusive, or a comma list
    sweep.trials = 1e5

A document holding any suite.* key describes a ComparisonSuite:

    suite.name = equal_se_4bpcu
    suite.members = SM(4,4), SSK(16), TRAD(16)
    suite.delta_e2_sq = 0, 0.2, 0.5
    suite.equal_se = true

Omitted channel keys take the default LEO downlink parameters
(28 GHz, 780 km, 60 deg elevation, K = 1, m = 0.8, ...).
"""

import re
import math
from dataclasses import dataclass, field, replace
from typing import Tuple

from .exceptions import ConfigurationError
from .fading import DopplerParams, FadingParams
from .geometry import AtmosphereParams, LinkGeometry
from .modem import Scheme, SchemeConfig, bits_per_use
from .montecarlo import COMMENT, LinkMode, SweepConfig, check_text_value

ALIASES = {
    "scheme": "scheme.type",
    "nt": "scheme.nt",
    "nr": "scheme.nr",
    "m_order": "scheme.m_order",
    "kind": "scheme.kind",
    "snr": "sweep.snr",
    "trials": "sweep.trials",
    "seed": "sweep.seed",
}

# key -> (owner, attribute, parser)
SCHEME_KEYS = {
    "scheme.type": ("scheme", "scheme", "scheme"),
    "scheme.nt": ("scheme", "nt", "int"),
    "scheme.nr": ("scheme", "nr", "int"),
    "scheme.m_order": ("scheme", "mOrder", "int"),
    "scheme.kind": ("scheme", "constellationKind", "upper"),
}
CHANNEL_KEYS = {
    "channel.fc": ("geometry", "fc", "float"),
    "channel.h0": ("geometry", "h0", "float"),
    "channel.theta_e": ("geometry", "thetaE", "float"),
    "channel.earth_radius": ("geometry", "RE", "float"),
    "channel.a_zenith": ("atmosphere", "aZenith", "float"),
    "channel.sigma_sf": ("atmosphere", "sigmaSF", "float"),
    "channel.clutter_loss": ("atmosphere", "clutterLoss", "float"),
    "channel.scintillation_loss": ("atmosphere", "scintillationLoss", "float"),
    "channel.k": ("fading", "K", "float"),
    "channel.m": ("fading", "m", "float"),
    "channel.omega": ("fading", "Omega", "float"),
    "channel.sigma_r": ("fading", "sigmaR", "float"),
    "channel.v": ("doppler", "v", "float"),
    "channel.alpha": ("doppler", "alpha", "float"),
    "channel.d": ("doppler", "D", "float"),
    "channel.eta": ("doppler", "eta", "float"),
    "channel.ts": ("doppler", "Ts", "float"),
    "channel.link_mode": ("sweep", "linkMode", "lower"),
    "channel.time_varying": ("sweep", "timeVarying", "bool"),
    "channel.slot_index": ("sweep", "slotIndex", "int"),
    "channel.fading": ("sweep", "fadingEnabled", "bool"),
}
SWEEP_KEYS = {
    "csi.delta_e2_sq": ("sweep", "deltaE2Sq", "float"),
    "csi.delta_e1_sq": ("sweep", "deltaE1Sq", "tied"),
    "sweep.snr": ("sweep", "snrGridDb", "grid"),
    "sweep.trials": ("sweep", "trialsPerPoint", "int"),
    "sweep.seed": ("sweep", "masterSeed", "int"),
    "sweep.noiseless": ("sweep", "noiseless", "bool"),
    "sweep.label": ("sweep", "label", "str"),
}
SUITE_KEYS = ("suite.name", "suite.members", "suite.delta_e2_sq", "suite.equal_se")
KEYS = {**SCHEME_KEYS, **CHANNEL_KEYS, **SWEEP_KEYS}

_MEMBER = re.compile(r"(SM|SSK|TRAD)\s*\(([^()]*)\)", re.IGNORECASE)
# commas outside parentheses separate suite members
_MEMBER_SEPARATOR = re.compile(r",(?![^()]*\))")


@dataclass(frozen=True)
class ComparisonSuite:
    """
    Schemes compared on one SNR grid, each optionally at several delta_e2^2 values.
    """
    name: str
    base: SweepConfig
    schemes: Tuple[SchemeConfig, ...]
    deltas: Tuple[float, ...] = ()
    equalSe: bool = True
    members: Tuple[SweepConfig, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        check_text_value("suite.name", self.name)
        if not self.schemes:
            raise ConfigurationError("suite.members must name at least one scheme")
        for delta in self.deltas:
            if not 0.0 <= delta <= 1.0:
                raise ConfigurationError(f"suite.delta_e2_sq values must lie in [0, 1], got {delta}")
        if self.equalSe:
            se = {s.label: bits_per_use(s) for s in self.schemes}
            if len(set(se.values())) > 1:
                detail = ", ".join(f"{k}={v}" for k, v in se.items())
                raise ConfigurationError(f"equal-SE suite members differ in bits per use: {detail}")

        members = []
        for scheme in self.schemes:
            if self.deltas:
                for delta in self.deltas:
                    members.append(replace(self.base, scheme=scheme, deltaE2Sq=delta,
                                           label=f"{scheme.label} d={delta:g}"))
            else:
                members.append(replace(self.base, scheme=scheme, label=scheme.label))
        object.__setattr__(self, "members", tuple(members))


def _parse_bool(key, value):
    lowered = value.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ConfigurationError(f"{key} must be true or false, got '{value}'")


def _parse_int(key, value):
    try:
        return int(value)
    except ValueError:
        pass
    try:
        number = float(value)
    except ValueError:
        raise ConfigurationError(f"{key} must be an integer, got '{value}'")
    if not number.is_integer():
        raise ConfigurationError(f"{key} must be an integer, got '{value}'")
    return int(number)


def _parse_float(key, value):
    try:
        return float(value)
    except ValueError:
        raise ConfigurationError(f"{key} must be a number, got '{value}'")


def parse_grid(key, value):
    """'0:5:40' (inclusive) or '0, 2.5, 5' into a tuple of floats."""
    value = value.strip()
    if ":" in value:
        parts = value.split(":")
        if len(parts) != 3:
            raise ConfigurationError(f"{key} range must read start:step:stop, got '{value}'")
        start, step, stop = (_parse_float(key, p) for p in parts)
        if not step > 0 or stop < start:
            raise ConfigurationError(f"{key} range needs step > 0 and stop >= start, got '{value}'")
        count = math.floor((stop - start) / step + 1e-9)
        return tuple(start + i * step for i in range(count + 1))

    return tuple(_parse_float(key, p) for p in value.split(",") if p.strip())


def _convert(key, kind, value):
    if kind == "int":
        return _parse_int(key, value)
    if kind == "float":
        return _parse_float(key, value)
    if kind == "bool":
        return _parse_bool(key, value)
    if kind == "grid":
        return parse_grid(key, value)
    if kind == "tied":
        return None if value.strip().lower() == "tied" else _parse_float(key, value)
    if kind == "upper" or kind == "scheme":
        return value.strip().upper()
    if kind == "lower":
        return value.strip().lower()
    return value.strip()


def _parse_members(value, shared):
    members = []
    for token in _MEMBER_SEPARATOR.split(value):
        token = token.strip()
        if not token:
            continue
        match = _MEMBER.fullmatch(token)
        if match is None:
            raise ConfigurationError(f"suite member '{token}' must read SM(nt,m), SSK(nt) or TRAD(m)")
        name, args = match.group(1).upper(), match.group(2)
        numbers = [_parse_int("suite.members", a) for a in args.split(",") if a.strip()]
        try:
            if name == "SM" and len(numbers) == 2:
                members.append(replace(shared, scheme=Scheme.SM, nt=numbers[0], mOrder=numbers[1]))
            elif name == "SSK" and len(numbers) == 1:
                members.append(replace(shared, scheme=Scheme.SSK, nt=numbers[0]))
            elif name == "TRAD" and len(numbers) == 1:
                members.append(replace(shared, scheme=Scheme.TRAD, nt=1, mOrder=numbers[0]))
            else:
                raise ConfigurationError(f"suite member {name}({args}) must read SM(nt,m), SSK(nt) or TRAD(m)")
        except ConfigurationError as e:
            raise ConfigurationError(f"suite member {name}({args}): {e}")
    if not members:
        raise ConfigurationError(f"suite.members names no scheme: '{value}'")
    return tuple(members)


def read_pairs(text):
    """Split a document into {canonical key: raw value}."""
    pairs = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = COMMENT.split(raw, 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {number}: expected 'key = value', got '{raw.strip()}'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = ALIASES.get(key.lower(), key.lower())
        if key not in KEYS and key not in SUITE_KEYS:
            raise ConfigurationError(f"unknown key '{key}' on line {number}")
        if key in pairs:
            raise ConfigurationError(f"key '{key}' given twice (line {number})")
        pairs[key] = value
    return pairs


def parse_config(text):
    """
    Parse a configuration document.

    Returns:
        SweepConfig, or ComparisonSuite when any suite.* key is present
    """
    pairs = read_pairs(text)
    groups = {"scheme": {}, "geometry": {}, "atmosphere": {}, "fading": {}, "doppler": {}, "sweep": {}}
    for key, value in pairs.items():
        if key in KEYS:
            owner, attribute, kind = KEYS[key]
            groups[owner][attribute] = _convert(key, kind, value)

    is_suite = any(key in pairs for key in SUITE_KEYS)
    scheme_fields = groups["scheme"]
    if is_suite:
        # members carry type/nt/m_order, the shared scheme only nr and kind
        scheme_fields = {k: v for k, v in scheme_fields.items() if k in ("nr", "constellationKind")}
    shared = SchemeConfig(**_shared_scheme_fields(scheme_fields))

    sweep_fields = dict(groups["sweep"])
    if "linkMode" in sweep_fields:
        try:
            sweep_fields["linkMode"] = LinkMode(sweep_fields["linkMode"])
        except ValueError:
            raise ConfigurationError(f"channel.link_mode must be normalized or absolute, "
                                     f"got '{sweep_fields['linkMode']}'")

    base = SweepConfig(scheme=shared,
                       geometry=LinkGeometry(**groups["geometry"]),
                       atmosphere=AtmosphereParams(**groups["atmosphere"]),
                       fading=FadingParams(**groups["fading"]),
                       doppler=DopplerParams(**groups["doppler"]),
                       **sweep_fields)
    if not is_suite:
        return base

    if "suite.members" not in pairs:
        raise ConfigurationError("a suite document needs suite.members")
    deltas = tuple(_parse_float("suite.delta_e2_sq", p)
                   for p in pairs.get("suite.delta_e2_sq", "").split(",") if p.strip())
    return ComparisonSuite(name=pairs.get("suite.name", "suite").strip(),
                           base=base,
                           schemes=_parse_members(pairs["suite.members"], shared),
                           deltas=deltas,
                           equalSe=_parse_bool("suite.equal_se", pairs.get("suite.equal_se", "true")))


def _shared_scheme_fields(fields):
    fields = dict(fields)
    if "scheme" in fields:
        try:
            fields["scheme"] = Scheme(fields["scheme"])
        except ValueError:
            raise ConfigurationError(f"scheme must be SM, SSK or TRAD, got '{fields['scheme']}'")
    if "constellationKind" in fields and fields["constellationKind"] not in ("PSK", "QAM"):
        raise ConfigurationError(f"scheme.kind must be PSK or QAM, got '{fields['constellationKind']}'")
    if fields.get("scheme") is Scheme.TRAD and "nt" not in fields:
        fields["nt"] = 1
    return fields


def _format(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "tied"
    if hasattr(value, "value"):
        return str(value.value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ", ".join(_format(v) for v in value)
    return str(value)


def _lines(cfg, with_scheme=True):
    owners = {"scheme": cfg.scheme, "geometry": cfg.geometry, "atmosphere": cfg.atmosphere,
              "fading": cfg.fading, "doppler": cfg.doppler, "sweep": cfg}
    lines = []
    for key, (owner, attribute, _) in KEYS.items():
        if owner == "scheme" and not with_scheme and attribute not in ("nr", "constellationKind"):
            continue
        lines.append(f"{key} = {_format(getattr(owners[owner], attribute))}")
    return lines


def serialize_config(cfg):
    """
    Canonical document of a SweepConfig or ComparisonSuite; parse_config inverts it.
    """
    if isinstance(cfg, ComparisonSuite):
        lines = _lines(cfg.base, with_scheme=False)
        lines.append(f"suite.name = {cfg.name}")
        lines.append(f"suite.members = {', '.join(s.label for s in cfg.schemes)}")
        if cfg.deltas:
            lines.append(f"suite.delta_e2_sq = {_format(tuple(cfg.deltas))}")
        lines.append(f"suite.equal_se = {_format(cfg.equalSe)}")
        return "\n".join(lines) + "\n"

    return "\n".join(_lines(cfg)) + "\n"
