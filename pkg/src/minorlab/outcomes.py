"""Result record shared by the forcing pipelines."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import MinorModel


@dataclass
class ForceResult:
    """``status`` is ``found``, ``not_forced`` or ``failure``.

    ``stages`` holds one JSON-ready record per pipeline stage, in order.
    """

    status: str
    model: MinorModel | None = None
    stages: list[dict] = field(default_factory=list)
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "stages": self.stages,
            "certificate": None if self.model is None else self.model.as_json(),
        }
