"""Verdict reports emitted by the claim verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field

VERIFIED = "verified"
REFUTED = "refuted"
NOT_CERTIFIABLE = "not-certifiable"


@dataclass
class TheoremReport:
    id: str
    params: dict
    verdict: str
    left: dict = field(default_factory=dict)
    right: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": self.params,
            "verdict": self.verdict,
            "left": self.left,
            "right": self.right,
            "witnesses": self.witnesses,
            "notes": self.notes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TheoremReport":
        return cls(
            id=data["id"],
            params=dict(data["params"]),
            verdict=data["verdict"],
            left=dict(data.get("left", {})),
            right=dict(data.get("right", {})),
            witnesses=list(data.get("witnesses", [])),
            notes=list(data.get("notes", [])),
        )
