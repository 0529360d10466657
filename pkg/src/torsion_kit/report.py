from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .modules import FinModule, Submodule, module_to_dict

PASS, FAIL, UNDETERMINED = "pass", "fail", "undetermined"


@dataclass
class Report:
    """Verdict of one check, with counterexample data and bookkeeping."""

    name: str
    statement: str
    verdict: str = PASS
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL, UNDETERMINED):
            raise ValueError(f"bad verdict {self.verdict!r}")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def fail(self, reason: str, **witness: Any) -> None:
        self.verdict = FAIL
        self.witnesses.append(witness_entry(reason, **witness))

    def note(self, reason: str, **witness: Any) -> None:
        """Attach a witness without changing the verdict."""
        self.witnesses.append(witness_entry(reason, **witness))

    def validate(self) -> "Report":
        if self.verdict == FAIL and not self.witnesses:
            raise AssertionError(f"{self.name}: failing report without a witness")
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "statement": self.statement,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "stats": self.stats,
            "details": _jsonable(self.details),
        }

    def line(self) -> str:
        return f"[{self.verdict.upper():>12}] {self.name}: {self.statement}"


def witness_entry(reason: str, **data: Any) -> dict[str, Any]:
    out: dict[str, Any] = {"reason": reason}
    for k, v in data.items():
        out[k] = _jsonable(v)
    return out


def _jsonable(v: Any) -> Any:
    if isinstance(v, FinModule):
        return module_to_dict(v)
    if isinstance(v, Submodule):
        return {"module": v.module.label, "basis": [list(r) for r in v.basis.rows],
                "order": v.cardinality}
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "ring") and hasattr(v, "basis") and hasattr(v, "group_generators"):
        return {"ideal": [list(g) for g in v.group_generators()]}
    return v


def merge(reports: list[Report]) -> list[Report]:
    """Deterministic order: by check name, then original position."""
    return [r for _, _, r in sorted((r.name, i, r) for i, r in enumerate(reports))]
