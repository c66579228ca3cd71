"""Pass/fail reports produced by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of an axiom check.  ``witness`` names the first failing basis input."""

    ok: bool = True
    checked: list[str] = field(default_factory=list)
    axiom: str | None = None
    witness: list[str] | None = None
    detail: str | None = None

    def __bool__(self):
        return self.ok

    def fail(self, axiom: str, witness, detail: str | None = None) -> Report:
        self.ok = False
        self.axiom = axiom
        self.witness = list(witness)
        self.detail = detail
        return self

    def passed(self, axiom: str) -> None:
        self.checked.append(axiom)

    def to_json(self) -> dict:
        out: dict = {"ok": self.ok, "checked": self.checked}
        if not self.ok:
            out["axiom"] = self.axiom
            out["witness"] = self.witness
            if self.detail:
                out["detail"] = self.detail
        return out
