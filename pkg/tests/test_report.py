import pandas as pd
import pytest

from LEOSM.config import parse_config
from LEOSM.detection import OpCount
from LEOSM.exceptions import UsageError
from LEOSM.modem import Scheme, SchemeConfig
from LEOSM.montecarlo import BerPoint, LinkMode, SweepConfig, SweepResult
from LEOSM.report import (CSV_COLUMNS, complexity_table, emit_csv, parse_sets, render_manifest, runtime_table,
                          se_table, write_outputs)

GRID = (0.0, 5.0, 10.0, 15.0, 20.0)
Q_SETS = ((8, 8), (16, 16), (32, 32), (64, 64))


def _result(scheme=SchemeConfig(), **kwargs):
    cfg = SweepConfig(scheme=scheme, snrGridDb=GRID, trialsPerPoint=1000, **kwargs)
    points = tuple(BerPoint(snrDb=s, bitsSimulated=4000, bitErrors=400 // (i + 1)) for i, s in enumerate(GRID))
    return SweepResult(config=cfg, points=points, seSummary=4, complexitySummary=OpCount(160, 176), wallClock=1.25)


def _suite_text():
    return ("nr = 2\nsweep.snr = 0:5:20\nsweep.trials = 1000\n"
            "suite.name = fair\nsuite.members = SM(4,4), SSK(16), TRAD(16)\n")


class TestCsv:
    def test_single_sweep(self, tmp_path):
        path = emit_csv(_result(), tmp_path / "sm.csv")
        lines = path.read_text().splitlines()
        assert len(lines) == 6
        assert lines[0].split(",") == CSV_COLUMNS
        frame = pd.read_csv(path)
        assert frame["ber"].iloc[0] == pytest.approx(0.1)
        assert (frame["complexity_total"] == 336).all()

    def test_joined_suite(self, tmp_path):
        results = [_result(SchemeConfig(scheme=s, nt=nt, mOrder=m)) for s, nt, m in
                   ((Scheme.SM, 4, 4), (Scheme.SSK, 16, 4), (Scheme.TRAD, 1, 16))]
        path = emit_csv(results, tmp_path / "suite.csv")
        assert len(path.read_text().splitlines()) == 16

    def test_re_emit_is_identical(self, tmp_path):
        result = _result()
        first = emit_csv(result, tmp_path / "a.csv").read_bytes()
        assert emit_csv(result, tmp_path / "b.csv").read_bytes() == first


class TestManifest:
    def test_manifest_is_a_config(self):
        result = _result(deltaE2Sq=0.2, masterSeed=99)
        text = render_manifest(result.config, result, "sweep --config sm.cfg")
        assert "# master seed: 99" in text
        assert "336" in text
        assert parse_config(text) == result.config

    def test_suite_manifest(self):
        suite = parse_config(_suite_text())
        results = [_result(m.scheme) for m in suite.members]
        text = render_manifest(suite, results, "compare --config fair.cfg")
        assert "reconstruction" in text
        assert text.count("# sweep ") == 3
        assert parse_config(text) == suite

    def test_absolute_mode_reports_effective_snr(self):
        result = _result(linkMode=LinkMode.ABSOLUTE)
        assert "effective receive snr -180.7" in render_manifest(result.config, result, "sweep")

    def test_write_outputs(self, tmp_path):
        result = _result()
        csv_path, manifest_path = write_outputs(result.config, result, str(tmp_path / "out"), "sm", "sweep")
        assert csv_path.endswith("sm.csv")
        assert manifest_path.endswith("sm.manifest.cfg")


class TestTables:
    def test_sets(self):
        assert parse_sets("8x8, 16x16,{32x32}") == ((8, 8), (16, 16), (32, 32))

    @pytest.mark.parametrize("text", ["8by8", "8x", "x8x8"])
    def test_bad_sets(self, text):
        with pytest.raises(UsageError):
            parse_sets(text)

    def test_spectral_efficiency(self):
        table = se_table(Q_SETS)
        assert table["sm_bpcu"].tolist() == [6, 8, 10, 12]
        assert table["ssk_bpcu"].tolist() == [3, 4, 5, 6]
        assert table["trad_bpcu"].tolist() == [3, 4, 5, 6]

    def test_complexity(self):
        table = complexity_table(2, Q_SETS)
        assert table["ssk_total"].iloc[0] == 280
        assert table["sm_total"].iloc[0] == (2 * (2 * 8 + 3) - 1) * 8 * 8
        assert (table["sm_cm"] + table["sm_ca"] == table["sm_total"]).all()
        assert (table["ssk_total"] < table["sm_total"]).all()

    def test_runtime(self):
        table = runtime_table(2, ((4, 4),), trials=5)
        assert list(table.columns) == ["nt", "m_order", "nr", "sm_seconds", "ssk_seconds", "trad_seconds"]
        assert (table[["sm_seconds", "ssk_seconds", "trad_seconds"]] > 0).all().all()
