"""Metrics plugin for hyperdyn observability.

Tracks command invocations, analysed inputs, oracle work and errors. The
command line attaches one instance per process in development mode and logs
the summary when a command finishes.
"""

import logging
import traceback
from datetime import datetime
from typing import Any, Dict, List


class HyperdynMetricsPlugin:
    """Counters, per-command durations and error records.

    Tracks:
    - Command invocations by name
    - Systems and trees analysed, verdicts by result
    - Windows realised, oracle reports and pairs examined
    - Errors with full context (type, message, stack trace, command)
    """

    def __init__(self) -> None:
        """Initialize the metrics plugin with all counters and tracking structures."""
        self.name = "hyperdyn_metrics"

        # Command counters
        self.commands_run: int = 0
        self.command_counts: Dict[str, int] = {}

        # Analysis counters
        self.systems_analysed: int = 0
        self.trees_analysed: int = 0
        self.verdicts: Dict[str, int] = {}

        # Oracle counters
        self.windows_realised: int = 0
        self.oracle_reports: int = 0
        self.nested_pairs_examined: int = 0
        self.all_pairs_examined: int = 0

        # Performance tracking
        self.command_start_times: Dict[str, datetime] = {}
        self.command_durations: List[Dict[str, Any]] = []

        # Error tracking
        self.errors: List[Dict[str, Any]] = []

        logging.info("[Metrics] HyperdynMetricsPlugin initialized")

    def before_command(self, command: str) -> str:
        """Count a command invocation and start timing it.

        Args:
            command: Name of the command about to run

        Returns:
            Timing key to pass to after_command
        """
        self.commands_run += 1
        self.command_counts[command] = self.command_counts.get(command, 0) + 1
        timing_key = f"{command}_{self.commands_run}"
        self.command_start_times[timing_key] = datetime.now()
        logging.debug(f"[Metrics] Command '{command}' starting (total commands: {self.commands_run})")
        return timing_key

    def after_command(self, command: str, timing_key: str) -> None:
        if timing_key not in self.command_start_times:
            logging.debug(f"[Metrics] Command '{command}' completed (no timing data)")
            return
        start_time = self.command_start_times.pop(timing_key)
        duration = (datetime.now() - start_time).total_seconds()
        self.command_durations.append(
            {"command": command, "duration_seconds": duration, "timestamp": start_time.isoformat()}
        )
        logging.info(f"[Metrics] Command '{command}' completed in {duration:.2f}s")

    def record_analysis(self, kind: str, result: str) -> None:
        if kind == "tree":
            self.trees_analysed += 1
        else:
            self.systems_analysed += 1
        self.verdicts[result] = self.verdicts.get(result, 0) + 1
        logging.info(f"[Metrics] Analysed {kind}: {result}")

    def record_oracle(self, nested_only: bool, pairs: int) -> None:
        self.windows_realised += 1
        self.oracle_reports += 1
        if nested_only:
            self.nested_pairs_examined += pairs
        else:
            self.all_pairs_examined += pairs
        logging.debug(f"[Metrics] Oracle report #{self.oracle_reports} examined {pairs} pairs")

    def record_error(self, command: str, error: Exception) -> None:
        """Capture an error with full context for debugging."""
        error_info = {
            "timestamp": datetime.now().isoformat(),
            "error_type": type(error).__name__,
            "error_message": str(error),
            "command": command,
            "traceback": traceback.format_exc(),
        }
        self.errors.append(error_info)
        logging.error(
            f"[Metrics] Error in '{command}': {error_info['error_type']}: {error_info['error_message']}"
        )
        logging.debug(f"[Metrics] Traceback:\n{error_info['traceback']}")

    def get_metrics_summary(self) -> Dict[str, Any]:
        """Get a comprehensive summary of all metrics.

        Returns:
            Dictionary containing all tracked metrics organized by category:
            - commands: invocation counts and analysed inputs
            - oracle: windows, reports and pairs
            - performance: timing statistics
            - errors: error details
        """
        if self.command_durations:
            durations = [d["duration_seconds"] for d in self.command_durations]
            avg_duration = sum(durations) / len(durations)
            max_duration = max(durations)
            min_duration = min(durations)
        else:
            avg_duration = max_duration = min_duration = 0.0

        return {
            "commands": {
                "total": self.commands_run,
                "by_name": dict(self.command_counts),
                "systems_analysed": self.systems_analysed,
                "trees_analysed": self.trees_analysed,
                "verdicts": dict(self.verdicts),
            },
            "oracle": {
                "windows_realised": self.windows_realised,
                "reports": self.oracle_reports,
                "nested_pairs_examined": self.nested_pairs_examined,
                "all_pairs_examined": self.all_pairs_examined,
            },
            "performance": {
                "average_duration_seconds": round(avg_duration, 2),
                "max_duration_seconds": round(max_duration, 2),
                "min_duration_seconds": round(min_duration, 2),
                "command_durations": self.command_durations,
            },
            "errors": self.errors,
        }
