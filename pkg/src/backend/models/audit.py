from datetime import datetime, timezone
from typing import Optional, Dict, Any

from pydantic import BaseModel, Field


class RunAudit(BaseModel):
    """One entry of the run audit trail."""

    action: str = Field(max_length=50)
    entity_type: Optional[str] = Field(default=None, max_length=50)
    entity_id: Optional[str] = None

    # Action details
    details: Dict[str, Any] = Field(default_factory=dict)

    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))

    model_config = {
        "json_schema_extra": {
            "example": {
                "action": "SWEEP_COMPLETED",
                "entity_type": "Sweep",
                "entity_id": "delta_m",
                "details": {"points": 201, "unstable": 0, "seconds": 0.84},
            }
        }
    }
