"""
CSV tables and run manifests for sweeps, comparison suites and the analytic tables.
"""

import os
import logging

import pandas as pd
from jinja2 import Environment, FileSystemLoader

from .assets import template_directory
from .config import ComparisonSuite, serialize_config
from .exceptions import UsageError
from .detection import complexity_sm, complexity_ssk, complexity_trad, measure_detection_runtime
from .geometry import effective_receive_snr_db, total_path_loss
from .modem import Scheme, SchemeConfig, bits_per_use
from .montecarlo import LinkMode
from .utils import makedirs
from ._version import __version__

log = logging.getLogger(__name__)

CSV_COLUMNS = ["scheme", "nt", "nr", "m_order", "delta_e2_sq", "snr_db", "bits", "errors",
               "ber", "ci95", "se_bpcu", "complexity_total"]

# Q-sets {Nt, M} of the complexity and spectral-efficiency comparison
DEFAULT_SETS = ((8, 8), (16, 16), (32, 32), (64, 64))


def result_frame(result):
    cfg = result.config
    rows = [[cfg.scheme.scheme.value,
             cfg.scheme.nt,
             cfg.scheme.nr,
             cfg.scheme.effective_m_order,
             cfg.deltaE2Sq,
             point.snrDb,
             point.bitsSimulated,
             point.bitErrors,
             point.ber,
             point.halfWidth95,
             result.seSummary,
             result.complexitySummary.total] for point in result.points]

    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def emit_csv(results, path):
    """
    Write one SweepResult, or a list of them joined in order, as CSV.

    Floats are written at full precision, so re-emitting a result gives the same bytes.
    """
    if not isinstance(results, (list, tuple)):
        results = [results]

    frame = pd.concat([result_frame(r) for r in results], ignore_index=True)
    frame.to_csv(path, index=False)
    log.info(f"CSV written to {path} ({len(frame)} rows)")

    return path


def _manifest_row(result):
    cfg = result.config
    effective = None
    if cfg.linkMode is LinkMode.ABSOLUTE:
        loss = total_path_loss(cfg.geometry, cfg.atmosphere, 0.0).total
        effective = ", ".join(f"{effective_receive_snr_db(s, loss):.2f}" for s in cfg.snrGridDb)

    return {"label": cfg.label,
            "points": len(result.points),
            "wall_clock": result.wallClock,
            "se": result.seSummary,
            "cm": result.complexitySummary.cm,
            "ca": result.complexitySummary.ca,
            "total": result.complexitySummary.total,
            "effective_snr": effective}


def render_manifest(config, results, command):
    """
    Self-contained manifest: metadata as comments followed by the full resolved
    configuration, so the manifest itself re-runs the same outputs.
    """
    if not isinstance(results, (list, tuple)):
        results = [results]

    env = Environment(loader=FileSystemLoader(template_directory()), keep_trailing_newline=True)
    template = env.get_template("manifest.cfg.j2")

    is_suite = isinstance(config, ComparisonSuite)
    seed = config.base.masterSeed if is_suite else config.masterSeed
    reconstruction = None
    if is_suite and config.equalSe:
        reconstruction = f"{config.name}: {bits_per_use(config.schemes[0])} bpcu"

    return template.render(version=__version__,
                           command=command,
                           rerun="compare" if is_suite else "sweep",
                           seed=seed,
                           reconstruction=reconstruction,
                           sweeps=[_manifest_row(r) for r in results],
                           config_text=serialize_config(config))


def write_outputs(config, results, out_dir, stem, command):
    makedirs(out_dir)
    csv_path = emit_csv(results, os.path.join(out_dir, f"{stem}.csv"))
    manifest_path = os.path.join(out_dir, f"{stem}.manifest.cfg")
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_manifest(config, results, command))
    log.info(f"Manifest written to {manifest_path}")

    return csv_path, manifest_path


def parse_sets(text):
    """'8x8,16x16' into ((8, 8), (16, 16)); pairs are (Nt, M)."""
    sets = []
    for token in text.split(","):
        token = token.strip().lower().strip("{}")
        if not token:
            continue
        try:
            nt, m = (int(part) for part in token.split("x"))
        except ValueError:
            raise UsageError(f"set '{token}' must read NtxM, e.g. 16x16")
        sets.append((nt, m))

    return tuple(sets)


def se_table(sets=DEFAULT_SETS):
    rows = []
    for nt, m in sets:
        rows.append([nt, m,
                     bits_per_use(SchemeConfig(scheme=Scheme.SM, nt=nt, nr=1, mOrder=m)),
                     bits_per_use(SchemeConfig(scheme=Scheme.SSK, nt=nt, nr=1)),
                     bits_per_use(SchemeConfig(scheme=Scheme.TRAD, nt=1, nr=1, mOrder=m))])

    return pd.DataFrame(rows, columns=["nt", "m_order", "sm_bpcu", "ssk_bpcu", "trad_bpcu"])


def complexity_table(nr, sets=DEFAULT_SETS):
    rows = []
    for nt, m in sets:
        sm, ssk, trad = complexity_sm(nt, nr, m), complexity_ssk(nt, nr), complexity_trad(nr, m)
        rows.append([nt, m, nr,
                     sm.cm, sm.ca, sm.total,
                     ssk.cm, ssk.ca, ssk.total,
                     trad.cm, trad.ca, trad.total])

    return pd.DataFrame(rows, columns=["nt", "m_order", "nr",
                                       "sm_cm", "sm_ca", "sm_total",
                                       "ssk_cm", "ssk_ca", "ssk_total",
                                       "trad_cm", "trad_ca", "trad_total"])


def runtime_table(nr, sets=DEFAULT_SETS[:3], trials=1000, seed=0):
    """Measured mean seconds per ML detection for each scheme and set."""
    rows = []
    for nt, m in sets:
        timings = [measure_detection_runtime(SchemeConfig(scheme=Scheme.SM, nt=nt, nr=nr, mOrder=m), trials, seed),
                   measure_detection_runtime(SchemeConfig(scheme=Scheme.SSK, nt=nt, nr=nr), trials, seed),
                   measure_detection_runtime(SchemeConfig(scheme=Scheme.TRAD, nt=1, nr=nr, mOrder=m), trials, seed)]
        rows.append([nt, m, nr, *timings])
        log.info(f"runtime {nt}x{m}: SM {timings[0]:.3e} s, SSK {timings[1]:.3e} s, TRAD {timings[2]:.3e} s")

    return pd.DataFrame(rows, columns=["nt", "m_order", "nr", "sm_seconds", "ssk_seconds", "trad_seconds"])
