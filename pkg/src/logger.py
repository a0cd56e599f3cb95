import datetime
import logging
import sys
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path

from pytz import timezone

SOLITONJITTER_LOG_PATH = "log/solitonjitter.log"  # Default path, will be overridden by config
DEFAULT_LOG_TIMEZONE = "UTC"


class Logger:
    def __init__(self, log_file: str = SOLITONJITTER_LOG_PATH, tz_name: str = DEFAULT_LOG_TIMEZONE):
        self.logger = logging.getLogger("SolitonJitterLogger")
        self.logger.setLevel(logging.DEBUG)
        self.tz_name = tz_name
        self.formatter = logging.Formatter(self._log_format())
        self.formatter.converter = self._converter
        self.log_file = log_file

        # File handler with daily rotation
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        self.file_handler = TimedRotatingFileHandler(
            log_file, when="midnight", interval=1, backupCount=7, encoding="utf-8", delay=True
        )
        self.file_handler.setFormatter(self.formatter)
        self.file_handler.setLevel(logging.DEBUG)

        # Console handler
        self.console_handler = logging.StreamHandler(sys.stdout)
        self.console_handler.setFormatter(self.formatter)
        self.console_handler.setLevel(logging.INFO)

        self.logger.addHandler(self.file_handler)
        self.logger.addHandler(self.console_handler)
        self.console_only = False

    def _log_format(self):
        return "[%(asctime)s] [%(levelname)8s] | %(message)s"

    def _converter(self, *args):
        return datetime.datetime.now(tz=timezone(self.tz_name)).timetuple()

    def info(self, message: str):
        self.logger.info(message)

    def error(self, message: str):
        self.logger.error(message)

    def warning(self, message: str):
        self.logger.warning(message)

    def debug(self, message: str):
        self.logger.debug(message)

    def setup_console_only(self):
        # One-shot commands (run, compare-analytic) log to console only
        if self.console_only:
            return
        self.logger.removeHandler(self.file_handler)
        self.console_only = True

    def set_timezone(self, tz_name: str):
        self.tz_name = tz_name

    def set_verbose(self, verbose: bool):
        self.console_handler.setLevel(logging.DEBUG if verbose else logging.INFO)

    def set_log_path(self, log_path: str):
        """Update the log file path and recreate the file handler."""
        if log_path == self.log_file:
            return  # No change needed

        # Remove old file handler
        if self.file_handler in self.logger.handlers:
            self.logger.removeHandler(self.file_handler)

        # Create new file handler with updated path
        self.log_file = log_path
        Path(log_path).parent.mkdir(parents=True, exist_ok=True)
        self.file_handler = TimedRotatingFileHandler(
            log_path, when="midnight", interval=1, backupCount=7, encoding="utf-8", delay=True
        )
        self.file_handler.setFormatter(self.formatter)
        self.file_handler.setLevel(logging.DEBUG)
        if not self.console_only:
            self.logger.addHandler(self.file_handler)


log = Logger()


def configure_worker_logging(tz_name: str, log_path: str, verbose: bool) -> None:
    """Process-pool initializer: spawned workers start from the module defaults."""
    log.set_timezone(tz_name)
    log.set_log_path(log_path)
    log.set_verbose(verbose)
