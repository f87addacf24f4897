import os
import sys
import errno
import logging
import logging.handlers
from datetime import datetime, timedelta
from tqdm import tqdm

OUTPUT_DIR_ENV = "LEOSM_OUTPUT_DIR"


class LEOSMLogging(logging.handlers.RotatingFileHandler):
    def emit(self, record):
        """
        Echo the message to stderr without breaking progress bars, then write it to file.
        stdout stays free for tables.
        """
        if record.levelno >= logging.INFO:
            try:
                tqdm.write(f"[{record.levelname}]\t{record.getMessage()}", file=sys.stderr)
            except Exception:
                self.handleError(record)

        super(LEOSMLogging, self).emit(record)


class SimulationLog:
    def __init__(self, log_directory):
        self.dir = log_directory

        makedirs(self.dir)

        now = datetime.today().strftime("%Y%m%d%H%M%S")
        self.file = os.path.join(self.dir, f"sweep-{now}.log")
        if os.path.isfile(self.file):
            os.remove(self.file)

    def create(self):
        logger = release_logs()
        handler = LEOSMLogging(
            self.file,
            maxBytes=1024 * 1024 * 2,
            backupCount=10
        )
        formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.setLevel(logging.DEBUG)

        return logger


def release_logs():
    """Detach and close the file handlers of earlier runs."""
    logger = logging.getLogger("LEOSM")
    for old in [h for h in logger.handlers if isinstance(h, LEOSMLogging)]:
        logger.removeHandler(old)
        old.close()

    return logger


def process(seconds):
    conversion = timedelta(seconds=seconds)
    converted_time = str(conversion)

    return converted_time


def makedirs(folder):
    try:
        return os.makedirs(folder, exist_ok=True)
    except OSError as e:
        if e.errno != errno.EEXIST:
            raise
        if os.path.isfile(folder):
            raise


def default_output_directory():
    """Directory used when the command line gives no --out."""
    env_dir = os.environ.get(OUTPUT_DIR_ENV)
    if env_dir:
        return env_dir

    return os.path.join(os.path.expanduser('~'), "Documents", "LEOSM_Reports")


def worker_count(requested=None):
    """
    Resolve the number of worker processes, 4 at most when nothing is requested
    """
    if requested is not None and requested >= 1:
        return int(requested)

    cpu = os.cpu_count() or 1
    return 4 if cpu >= 4 else (2 if cpu >= 2 else 1)
