"""Logging configuration for the command line.

Multiple log files, timestamps and environment-based levels. The console
handler writes to stderr: stdout carries JSON and DOT documents only.
"""

import logging
import os
import sys

from src.config.oracle_config import get_environment, get_log_dir

LOG_FORMAT = "%(asctime)s - %(name)s - %(filename)s:%(lineno)s - %(levelname)s: %(message)s"

LOG_FILES = ["hyperdyn.log", "metrics.log"]


class MetricsRecordFilter(logging.Filter):
    """Pass only records tagged [Metrics] to the metrics log."""

    def filter(self, record: logging.LogRecord) -> bool:
        return record.getMessage().startswith("[Metrics]")


def configure_logging() -> str:
    """Install file and console handlers on the root logger.

    Returns:
        The environment name the levels were chosen for
    """
    env = get_environment()
    log_dir = get_log_dir()

    # Ensure logs directory exists
    os.makedirs(log_dir, exist_ok=True)

    # Clean up old logs at startup
    for log_file in LOG_FILES:
        log_path = os.path.join(log_dir, log_file)
        if os.path.exists(log_path):
            os.remove(log_path)

    notice = None
    if env == "development":
        file_log_level = logging.DEBUG
        console_level = logging.INFO
    elif env == "production":
        file_log_level = logging.INFO
        console_level = logging.WARNING
    else:
        # Default to development
        file_log_level = logging.DEBUG
        console_level = logging.INFO
        notice = f"Unknown environment '{env}', defaulting to development mode"
        env = "development"

    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    root.setLevel(file_log_level)

    # Main log file handler
    main_file_handler = logging.FileHandler(os.path.join(log_dir, "hyperdyn.log"))
    main_file_handler.setLevel(file_log_level)
    main_file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(main_file_handler)

    # Metrics log file handler (for metrics-specific logging)
    metrics_file_handler = logging.FileHandler(os.path.join(log_dir, "metrics.log"))
    metrics_file_handler.setLevel(logging.INFO)  # Always INFO for metrics
    metrics_file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    metrics_file_handler.addFilter(MetricsRecordFilter())
    root.addHandler(metrics_file_handler)

    # Console handler for immediate feedback
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    root.addHandler(console_handler)

    if notice:
        logging.warning(notice)
    logging.debug(
        f"Logging configured ({env} mode): {log_dir}/hyperdyn.log "
        f"({logging.getLevelName(file_log_level)}), console {logging.getLevelName(console_level)}"
    )
    return env
