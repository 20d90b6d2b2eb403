# polytransform/run_logging.py
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")


class RunLogger:
    """
    Dual logging for one verify or derive run.

    `run.raw.jsonl` receives one JSON event per line (setup, factor, check, result,
    run_end) for machine consumption; `run.readable.log` receives the same story as
    plain text, which is also streamed to `stream_logger` when one is given.
    """

    def __init__(self, run_id: str, logs_dir: Path, stream_logger: Optional[logging.Logger] = None):
        self.run_id = run_id
        self.stream_logger = stream_logger

        self.run_dir = Path(logs_dir) / run_id
        self.run_dir.mkdir(parents=True, exist_ok=True)

        self.raw_log_file = (self.run_dir / "run.raw.jsonl").open("a", encoding="utf-8")
        self.readable_log_file = (self.run_dir / "run.readable.log").open("a", encoding="utf-8")

    def _write_readable(self, message: str):
        self.readable_log_file.write(message + "\n")
        self.readable_log_file.flush()
        if self.stream_logger:
            self.stream_logger.debug(message.strip())

    def _write_raw(self, event_type: str, data: Dict[str, Any]):
        log_entry = {"event": event_type, "timestamp": _timestamp(), **data}
        self.raw_log_file.write(json.dumps(log_entry, ensure_ascii=False) + "\n")
        self.raw_log_file.flush()

    def log_setup(self, command: str, parameters: Dict[str, Any]):
        self._write_raw("setup", {"run_id": self.run_id, "command": command, "parameters": parameters})
        header = [
            "=" * 70,
            f"POLYTRANSFORM {command.upper()} RUN",
            "=" * 70,
            f"Run ID:      {self.run_id}",
            f"Start Time:  {_timestamp()}",
        ]
        header += [f"{key + ':':<12} {value}" for key, value in parameters.items()]
        header.append("-" * 70)
        self._write_readable("\n".join(header))
        if self.stream_logger:
            self.stream_logger.info(f"Run logs are being written to: {self.run_dir.resolve()}")

    def log_factor(self, index: int, label: str, shape: List[int], real_flops: int):
        self._write_raw("factor", {"index": index, "label": label, "shape": shape, "real_flops": real_flops})
        self._write_readable(f"[factor {index}] {label}  {shape[0]}x{shape[1]}  {real_flops} real flops")

    def log_check(self, name: str, passed: bool, details: Dict[str, Any]):
        self._write_raw("check", {"name": name, "passed": passed, **details})
        rendered = ", ".join(f"{key}={value}" for key, value in details.items())
        self._write_readable(f"[check] {name}: {'PASS' if passed else 'FAIL'} ({rendered})")

    def log_result(self, exit_code: int, relative_error: Optional[float], warnings: List[str]):
        self._write_raw("result", {"exit_code": exit_code, "relative_error": relative_error, "warnings": warnings})
        lines = [f"[result] exit code {exit_code}"]
        if relative_error is not None:
            lines.append(f"  - relative error: {relative_error:.3e}")
        lines += [f"  - warning: {w}" for w in warnings]
        self._write_readable("\n".join(lines))

    def close(self):
        self._write_raw("run_end", {})
        self._write_readable("=" * 70)
        self.raw_log_file.close()
        self.readable_log_file.close()
