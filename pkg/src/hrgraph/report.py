"""Line-oriented check reports: `IDENTITY <name> <instance> OK|FAIL(witness)`."""

import json
from dataclasses import dataclass, field
from typing import List, Optional


@dataclass(frozen=True)
class CheckResult:
    name: str
    instance: str
    ok: bool
    witness: Optional[str] = None

    def line(self):
        inst = self.instance.replace(" ", "")
        if self.ok:
            return f"IDENTITY {self.name} {inst} OK"
        return f"IDENTITY {self.name} {inst} FAIL({self.witness})"

    def record(self):
        return json.dumps(
            {"identity": self.name, "instance": self.instance, "ok": self.ok, "witness": self.witness},
            sort_keys=True,
            ensure_ascii=False,
        )


@dataclass
class Report:
    results: List[CheckResult] = field(default_factory=list)

    def add(self, name, instance, ok, witness=None):
        self.results.append(CheckResult(name, str(instance), bool(ok), None if ok else str(witness)))

    def extend(self, other):
        self.results.extend(other.results)
        return self

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    @property
    def failures(self):
        return [r for r in self.results if not r.ok]

    def __len__(self):
        return len(self.results)

    def render(self, fmt="text"):
        if fmt == "jsonl":
            return "\n".join(r.record() for r in self.results)
        return "\n".join(r.line() for r in self.results)
