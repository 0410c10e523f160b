"""Audit trail of commands, checks and findings."""

import json
import uuid
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional
from dataclasses import dataclass, asdict
from enum import Enum

from config.settings import AUDIT_ENABLED, AUDIT_LOG_PATH


class ActionType(str, Enum):
    """Types of actions that can be logged."""
    COMMAND = "command"
    CHECK_STARTED = "check_started"
    CHECK_RESULT = "check_result"
    FINDING = "finding"
    DEMO = "demo"
    ERROR = "error"


@dataclass
class AuditEntry:
    """A single audit log entry."""
    timestamp: str
    session_id: str
    action_type: str
    action_id: str
    command: Optional[str] = None
    arguments: Optional[Dict[str, Any]] = None
    check: Optional[str] = None
    strategy: Optional[str] = None
    passed: Optional[bool] = None
    witness: Optional[Dict[str, Any]] = None
    seed: Optional[int] = None
    error_message: Optional[str] = None
    metadata: Optional[Dict[str, Any]] = None

    def to_dict(self) -> dict:
        """Convert to dictionary, excluding None values."""
        return {k: v for k, v in asdict(self).items() if v is not None}


class AuditLogger:
    """
    Audit logger for reproducibility.

    Logs every command, check and finding to a JSON Lines file, one complete
    JSON object per line. Reports never carry these timestamps.
    """

    def __init__(self, log_path: Optional[Path] = None, enabled: bool = AUDIT_ENABLED):
        self.log_path = Path(log_path or AUDIT_LOG_PATH)
        self.enabled = enabled
        self.session_id = str(uuid.uuid4())[:8]
        self._entries: List[AuditEntry] = []

        if self.enabled:
            self.log_path.parent.mkdir(parents=True, exist_ok=True)

    def _generate_action_id(self) -> str:
        """Session id plus a short random suffix."""
        return f"{self.session_id}-{uuid.uuid4().hex[:6]}"

    def _entry(self, action_type: ActionType, **fields) -> AuditEntry:
        return AuditEntry(
            timestamp=datetime.now().isoformat(),
            session_id=self.session_id,
            action_type=action_type.value,
            action_id=self._generate_action_id(),
            **fields,
        )

    def _write_entry(self, entry: AuditEntry) -> str:
        """Keep the entry and append it to the log file."""
        self._entries.append(entry)
        if self.enabled:
            with open(self.log_path, "a", encoding="utf-8") as f:
                f.write(json.dumps(entry.to_dict(), default=str) + "\n")
        return entry.action_id

    def log_command(self, command: str, arguments: dict, seed: Optional[int] = None) -> str:
        """Log a CLI command. Returns the action ID."""
        return self._write_entry(self._entry(ActionType.COMMAND, command=command, arguments=arguments, seed=seed))

    def log_check_started(self, check: str, strategy: Optional[str] = None) -> str:
        return self._write_entry(self._entry(ActionType.CHECK_STARTED, check=check, strategy=strategy))

    def log_check_result(self, check: str, passed: bool, strategy: Optional[str] = None,
                         metadata: Optional[dict] = None) -> str:
        """Log the outcome of one checker."""
        return self._write_entry(self._entry(
            ActionType.CHECK_RESULT, check=check, strategy=strategy, passed=passed, metadata=metadata))

    def log_finding(self, check: str, witness: dict, strategy: Optional[str] = None) -> str:
        """Log one violation witness."""
        return self._write_entry(self._entry(ActionType.FINDING, check=check, strategy=strategy, witness=witness))

    def log_demo(self, name: str, arguments: dict, findings: bool) -> str:
        return self._write_entry(self._entry(ActionType.DEMO, command=name, arguments=arguments, passed=not findings))

    def log_error(self, error_message: str, context: Optional[dict] = None) -> str:
        """Log an error."""
        return self._write_entry(self._entry(ActionType.ERROR, error_message=error_message, metadata=context))

    def get_session_entries(self) -> List[dict]:
        """Entries written by this process, oldest first."""
        return [e.to_dict() for e in self._entries]

    def get_session_summary(self) -> dict:
        """Entry counts per action type for this process."""
        return {
            "session_id": self.session_id,
            "total_entries": len(self._entries),
            "action_counts": self._count_actions(),
            "log_path": str(self.log_path),
        }

    def _count_actions(self) -> dict:
        counts = {}
        for entry in self._entries:
            counts[entry.action_type] = counts.get(entry.action_type, 0) + 1
        return counts


_logger: Optional[AuditLogger] = None


def get_audit_logger() -> AuditLogger:
    """Get the singleton audit logger instance."""
    global _logger
    if _logger is None:
        _logger = AuditLogger()
    return _logger


def reset_audit_logger(log_path: Optional[Path] = None, enabled: bool = AUDIT_ENABLED) -> AuditLogger:
    """Replace the singleton, e.g. to point it at a temporary file."""
    global _logger
    _logger = AuditLogger(log_path, enabled)
    return _logger
