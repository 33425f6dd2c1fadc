"""Three-valued verdicts with a derivation trace."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple


class Status(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Step:
    """One applied rule: an identifier plus the justification it rests on."""

    rule: str
    note: str = ""

    def to_json(self) -> Dict[str, str]:
        return {"rule": self.rule, "note": self.note}


@dataclass
class Verdict:
    status: Status
    trace: List[Step] = field(default_factory=list)
    reason: Optional[str] = None
    certificate: Optional[Dict[str, Any]] = None
    witness: Any = None

    @classmethod
    def holds(cls, rule: str, note: str = "", **kw) -> "Verdict":
        return cls(Status.HOLDS, [Step(rule, note)], **kw)

    @classmethod
    def fails(cls, rule: str, note: str = "", **kw) -> "Verdict":
        return cls(Status.FAILS, [Step(rule, note)], **kw)

    @classmethod
    def unknown(cls, reason: str, trace: Optional[List[Step]] = None, **kw) -> "Verdict":
        return cls(Status.UNKNOWN, list(trace or []), reason=reason, **kw)

    @property
    def is_holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def is_fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def decided(self) -> bool:
        return self.status is not Status.UNKNOWN

    def with_steps(self, steps: List[Step]) -> "Verdict":
        """Prepend ``steps`` to the trace (returns a new verdict)."""
        return Verdict(self.status, list(steps) + list(self.trace), self.reason,
                       self.certificate, self.witness)

    def rules(self) -> Tuple[str, ...]:
        return tuple(s.rule for s in self.trace)

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "verdict": self.status.value,
            "trace": [s.to_json() for s in self.trace],
        }
        if self.reason:
            out["reason"] = self.reason
        if self.certificate:
            out["certificate"] = self.certificate
        return out

    def __str__(self) -> str:
        text = self.status.value
        if self.reason:
            text += f" ({self.reason})"
        return text
