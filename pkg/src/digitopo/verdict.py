"""Three-valued answers for semi-decidable questions."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Outcome(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool | None) -> Outcome:
        if flag is None:
            return cls.UNKNOWN
        return cls.YES if flag else cls.NO

    @property
    def exit_code(self) -> int:
        return {Outcome.YES: 0, Outcome.NO: 1, Outcome.UNKNOWN: 2}[self]


@dataclass(frozen=True)
class Verdict:
    """Result of a check.

    ``witness`` backs a Yes (a trace, a mapping, a disk), ``certificate``
    backs a No (invariants or a counterexample).  ``budget_spent`` counts
    candidate moves or candidate sets examined.
    """

    outcome: Outcome
    witness: Any = None
    certificate: Any = None
    budget_spent: int = 0
    note: str = ""

    @classmethod
    def yes(cls, witness: Any = None, budget_spent: int = 0, note: str = "") -> Verdict:
        return cls(Outcome.YES, witness=witness, budget_spent=budget_spent, note=note)

    @classmethod
    def no(cls, certificate: Any = None, budget_spent: int = 0, note: str = "") -> Verdict:
        return cls(Outcome.NO, certificate=certificate, budget_spent=budget_spent, note=note)

    @classmethod
    def unknown(cls, budget_spent: int = 0, note: str = "", certificate: Any = None) -> Verdict:
        return cls(Outcome.UNKNOWN, certificate=certificate, budget_spent=budget_spent, note=note)

    @property
    def is_yes(self) -> bool:
        return self.outcome is Outcome.YES

    @property
    def is_no(self) -> bool:
        return self.outcome is Outcome.NO

    @property
    def is_unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    def __bool__(self) -> bool:
        return self.is_yes

    def as_flag(self) -> bool | None:
        return None if self.is_unknown else self.is_yes

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"outcome": self.outcome.value, "budget_spent": self.budget_spent}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.certificate is not None:
            out["certificate"] = _jsonable(self.certificate)
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class ManifoldVerdict(Verdict):
    """Verdict of a manifold check; on Yes also the dimension and rim verdicts."""

    dim: int | None = None
    rims: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out = super().to_dict()
        if self.dim is not None:
            out["dim"] = self.dim
        if self.rims:
            out["rims"] = _jsonable(self.rims)
        return out


def _jsonable(obj: Any) -> Any:
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    return obj
