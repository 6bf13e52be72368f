from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of an axiom sweep.

    ``failures`` holds one entry per violated identity, with the basis indices
    that witness it; an empty list means every check passed.
    """

    name: str
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    checked: int = 0

    def check(self, condition: bool, axiom: str, *witness, **detail) -> bool:
        self.checked += 1
        if not condition:
            entry = {"axiom": axiom, "witness": list(witness)}
            if detail:
                entry.update(detail)
            self.failures.append(entry)
        return condition

    def note(self, text: str):
        self.notes.append(text)

    def extend(self, other: "Report"):
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)
        self.checked += other.checked

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def failing(self, axiom: str) -> list:
        return [f for f in self.failures if f["axiom"] == axiom]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.ok else "fail",
            "checked": self.checked,
            "failures": self.failures,
            "notes": self.notes,
        }
