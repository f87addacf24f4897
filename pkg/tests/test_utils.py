import logging
import os

from LEOSM.utils import (OUTPUT_DIR_ENV, SimulationLog, default_output_directory, makedirs, process, release_logs,
                         worker_count)


def test_process_formats_duration():
    assert process(3725) == "1:02:05"


def test_makedirs_is_idempotent(tmp_path):
    target = tmp_path / "a" / "b"
    makedirs(str(target))
    makedirs(str(target))
    assert target.is_dir()


def test_output_directory_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    assert default_output_directory() == str(tmp_path)


def test_output_directory_fallback(monkeypatch):
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)
    assert default_output_directory().endswith(os.path.join("Documents", "LEOSM_Reports"))


def test_worker_count():
    assert worker_count(3) == 3
    assert worker_count(None) in (1, 2, 4)
    assert worker_count(0) in (1, 2, 4)


def test_simulation_log(tmp_path, capsys):
    logger = SimulationLog(str(tmp_path / "logs")).create()
    logging.getLogger("LEOSM.montecarlo").info("sweep started")
    for handler in logger.handlers:
        handler.flush()

    files = list((tmp_path / "logs").glob("sweep-*.log"))
    assert len(files) == 1
    assert "LEOSM.montecarlo - INFO - sweep started" in files[0].read_text()
    captured = capsys.readouterr()
    assert "[INFO]\tsweep started" in captured.err
    assert captured.out == ""


def test_simulation_log_replaces_handler(tmp_path):
    SimulationLog(str(tmp_path / "one")).create()
    logger = SimulationLog(str(tmp_path / "two")).create()
    assert len([h for h in logger.handlers if isinstance(h, logging.handlers.RotatingFileHandler)]) == 1


def test_release_logs(tmp_path):
    SimulationLog(str(tmp_path / "logs")).create()
    logger = release_logs()
    assert not [h for h in logger.handlers if isinstance(h, logging.handlers.RotatingFileHandler)]
