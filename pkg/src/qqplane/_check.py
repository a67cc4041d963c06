from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckResult:
    """Outcome of an exhaustive check; truthy iff it passed."""

    ok: bool
    name: str = ""
    counterexample: Any = None
    detail: str = ""
    checked: int = 0
    extra: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict:
        out = {"check": self.name, "ok": self.ok, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = _plain(self.counterexample)
        if self.detail:
            out["detail"] = self.detail
        return out


def _plain(obj):
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    if isinstance(obj, (int, str, float, bool)) or obj is None:
        return obj
    return str(obj)
