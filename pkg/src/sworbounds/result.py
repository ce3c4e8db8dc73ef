from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Literal, Mapping

Kind = Literal["upper", "lower"]


@dataclass(frozen=True)
class BoundResult:
    """A probability bound together with its applicability.

    ``raw`` is the formula value as computed; ``value`` is ``raw`` clamped
    to [0, 1]. When ``applicable`` is false the numbers are meaningless and
    ``reason`` holds a short machine-readable code explaining why.
    """

    name: str
    kind: Kind
    raw: float
    applicable: bool = True
    reason: str = "ok"
    inputs: Mapping[str, Any] = field(default_factory=dict)

    @property
    def value(self) -> float:
        if not self.applicable:
            return float("nan")
        return min(1.0, max(0.0, self.raw))

    @classmethod
    def inapplicable(cls, name: str, kind: Kind, reason: str, **inputs) -> "BoundResult":
        return cls(name, kind, float("nan"), applicable=False, reason=reason, inputs=inputs)
