"""Check results shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, OVERFLOW = "pass", "fail", "overflow"


@dataclass
class CheckResult:
    name: str
    status: str = PASS
    witness: str | None = None
    checked: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def fail(self, witness: str) -> None:
        # keep the first witness only
        if self.status != FAIL:
            self.status = FAIL
            self.witness = _clip(witness)

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status, "witness": self.witness,
             "checked": self.checked}
        if self.details:
            d["details"] = dict(sorted(self.details.items()))
        return d


@dataclass
class Report:
    title: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name or r.name.startswith(name):
                return r
        raise KeyError(name)

    def failed(self) -> list:
        return [r.name for r in self.results if not r.passed]

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def text(self) -> str:
        lines = [self.title]
        for r in self.results:
            line = f"  {r.status.upper():8s} {r.name}  [{r.checked} checked]"
            if r.details:
                line += "  " + ", ".join(f"{k}={v}" for k, v in sorted(r.details.items()))
            lines.append(line)
            if r.witness:
                lines.append(f"           witness: {r.witness}")
        return "\n".join(lines)


def _clip(s: str, n: int = 300) -> str:
    return s if len(s) <= n else s[: n - 3] + "..."
