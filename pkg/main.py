"""Main entry point for the hyperdyn command line.

Initialises logging, builds the command group and logs the metrics summary
when the command finishes.
"""

import json
import logging

from src.plugins.logging_config import configure_logging
from src.app import create_app


def log_metrics_summary(metrics):
    """Write the metrics summary to the logs (stdout is reserved for documents).

    Args:
        metrics: Dictionary containing metrics from HyperdynMetricsPlugin
    """
    commands = metrics["commands"]
    logging.info(f"[Metrics] Commands run: {commands['total']} {commands['by_name']}")
    logging.info(
        f"[Metrics] Systems analysed: {commands['systems_analysed']}, "
        f"trees analysed: {commands['trees_analysed']}, verdicts: {commands['verdicts']}"
    )

    oracle = metrics["oracle"]
    logging.info(
        f"[Metrics] Oracle reports: {oracle['reports']}, nested pairs: {oracle['nested_pairs_examined']}, "
        f"all pairs: {oracle['all_pairs_examined']}"
    )

    perf = metrics["performance"]
    logging.info(
        f"[Metrics] Durations avg/max/min: {perf['average_duration_seconds']}s / "
        f"{perf['max_duration_seconds']}s / {perf['min_duration_seconds']}s"
    )

    if metrics["errors"]:
        for error in metrics["errors"]:
            logging.info(f"[Metrics] [{error['timestamp']}] {error['error_type']}: {error['error_message']}")
    logging.debug(f"[Metrics] Full summary: {json.dumps(metrics, default=str)}")


def main():
    configure_logging()
    cli, metrics_plugin = create_app()
    try:
        cli.main(prog_name="hyperdyn")
    finally:
        if metrics_plugin:
            log_metrics_summary(metrics_plugin.get_metrics_summary())


if __name__ == "__main__":
    main()
