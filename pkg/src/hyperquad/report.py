"""Run reports shared by the verification suites and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

LABEL_ORDER = ("A1", "A2", "A3", "A4", "B1", "B2", "C1", "C2", "C3", "C4")


class VerificationError(AssertionError):
    """A checked property failed; ``witness`` names the offending elements."""

    def __init__(self, check: str, witness: str):
        super().__init__(f"{check}: {witness}")
        self.check = check
        self.witness = witness


@dataclass
class Verdict:
    name: str
    ok: bool
    witness: str | None = None


@dataclass
class RunReport:
    command: str
    n: int
    frame: str
    counts: dict[str, int] = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)
    wall_time: float = 0.0
    seed: int | None = None
    details: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def check(self, name: str, ok: bool, witness: str | None = None) -> bool:
        self.verdicts.append(Verdict(name, bool(ok), None if ok else witness))
        return bool(ok)

    def merge(self, other: RunReport) -> None:
        """Fold in another suite's results; a count present in both describes the same set."""
        self.counts.update(other.counts)
        self.verdicts.extend(other.verdicts)
        for k, v in other.details.items():
            if isinstance(v, dict) and isinstance(self.details.get(k), dict):
                self.details[k].update(v)
            else:
                self.details[k] = v
        self.notes.extend(other.notes)
        self.wall_time += other.wall_time

    def ordered_counts(self) -> dict[str, int]:
        keys = [k for k in LABEL_ORDER if k in self.counts]
        keys += sorted(k for k in self.counts if k not in LABEL_ORDER)
        return {k: self.counts[k] for k in keys}

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "n": self.n,
            "frame": self.frame,
            "counts": self.ordered_counts(),
            "verdicts": [
                {"name": v.name, "ok": v.ok, "witness": v.witness} for v in self.verdicts
            ],
            "ok": self.ok,
            "wall_time": round(self.wall_time, 6),
            "seed": self.seed,
            "details": self.details,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command}  n={self.n}  frame={self.frame}"]
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        for k, v in self.ordered_counts().items():
            lines.append(f"  {k:<12} {v}")
        for v in self.verdicts:
            mark = "PASS" if v.ok else "FAIL"
            line = f"[{mark}] {v.name}"
            if v.witness:
                line += f"  -- witness: {v.witness}"
            lines.append(line)
        lines += [f"note: {s}" for s in self.notes]
        lines.append(f"wall time: {self.wall_time:.3f} s")
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines) + "\n"
