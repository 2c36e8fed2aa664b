"""Named pass/fail checks with residuals, shared by every verifier."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: float | None = None
    detail: str | None = None

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.residual is not None:
            out["residual"] = float(self.residual)
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class VerificationReport:
    title: str
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def merged(self, other: "VerificationReport", prefix: str = "") -> "VerificationReport":
        extra = tuple(
            Check(prefix + c.name, c.passed, c.residual, c.detail) for c in other.checks
        )
        return VerificationReport(self.title, self.checks + extra)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def summary(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            res = "" if c.residual is None else f" (residual {c.residual:.3g})"
            lines.append(f"  [{'ok' if c.passed else 'XX'}] {c.name}{res}")
        return "\n".join(lines)


class ReportBuilder:
    """Accumulates checks in order; ``build()`` freezes them into a report."""

    def __init__(self, title: str):
        self.title = title
        self._checks: list[Check] = []

    def add(self, name, passed, residual=None, detail=None) -> bool:
        self._checks.append(Check(name, bool(passed), residual, detail))
        return bool(passed)

    def extend(self, report: VerificationReport, prefix: str = ""):
        for c in report.checks:
            self._checks.append(Check(prefix + c.name, c.passed, c.residual, c.detail))

    def build(self) -> VerificationReport:
        return VerificationReport(self.title, tuple(self._checks))
