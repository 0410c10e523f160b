"""Audit logging of commands, checks and findings."""

from .audit import ActionType, AuditEntry, AuditLogger, get_audit_logger, reset_audit_logger

__all__ = ["ActionType", "AuditEntry", "AuditLogger", "get_audit_logger", "reset_audit_logger"]
