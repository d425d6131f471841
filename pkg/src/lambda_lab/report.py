"""Check records and the JSON-lines report format."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable

VERDICTS = ("pass", "fail", "partial")


@dataclass(frozen=True)
class Record:
    check: str
    anchor: str
    instance: str
    verdict: str
    detail: str = ""
    counterexample: Any = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict!r}")

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = "record"
        return d

    def sort_key(self):
        return (self.check, self.instance, self.detail)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def record(check: str, anchor: str, instance: str, ok, *, detail: str = "", counterexample=None) -> Record:
    """Build a record; ``ok`` is a bool or an explicit verdict string."""
    verdict = ok if isinstance(ok, str) else ("pass" if ok else "fail")
    return Record(check, anchor, instance, verdict, detail, counterexample)


@dataclass
class SuiteReport:
    records: list[Record]
    config: dict
    version: str
    notes: list[str] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, int]:
        counts = {v: 0 for v in VERDICTS}
        for r in self.records:
            counts[r.verdict] += 1
        counts["total"] = len(self.records)
        return counts

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[Record]:
        return [r for r in self.records if not r.passed]

    def lines(self) -> Iterable[str]:
        yield _dump({"kind": "header", "config": self.config, "version": self.version})
        for r in sorted(self.records, key=Record.sort_key):
            yield _dump(r.to_dict())
        yield _dump({"kind": "summary", **self.summary})

    def to_jsonl(self) -> str:
        return "".join(line + "\n" for line in self.lines())
