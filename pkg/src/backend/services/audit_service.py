import json
import logging
from typing import List, Optional, Dict, Any

from ..models.audit import RunAudit

logger = logging.getLogger(__name__)


class AuditService:
    """Records completed and failed runs on the audit logger."""

    def __init__(self):
        self.logger = logging.getLogger("magnomech.audit")
        self.entries: List[RunAudit] = []

    def log_action(
        self,
        action: str,
        entity_type: Optional[str] = None,
        entity_id: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> Optional[RunAudit]:
        """Log an action to the audit trail."""
        try:
            entry = RunAudit(
                action=action,
                entity_type=entity_type,
                entity_id=entity_id,
                details=details or {},
            )
            self.entries.append(entry)
            self.logger.info(json.dumps(entry.model_dump(mode="json"), default=str))
            return entry
        except Exception as e:
            # Never let audit logging break a run
            logger.error(f"Failed to create audit log entry: {e}")
            return None

    def log_sweep_action(self, action: str, axis: str, details: Optional[Dict[str, Any]] = None) -> None:
        self.log_action(action=action, entity_type="Sweep", entity_id=axis, details=details)

    def log_figure_action(self, action: str, figure_id: str, details: Optional[Dict[str, Any]] = None) -> None:
        self.log_action(action=action, entity_type="Figure", entity_id=figure_id, details=details)
