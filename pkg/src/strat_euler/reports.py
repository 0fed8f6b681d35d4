"""Result records for identity checks."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of one verified identity, compared exactly."""

    name: str
    lhs: int
    rhs: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def line(self) -> str:
        tag = "OK" if self.ok else "FAIL"
        extra = f" [{self.detail}]" if self.detail else ""
        return f"{self.name}{extra}: LHS={self.lhs} RHS={self.rhs} {tag}"


@dataclass(frozen=True)
class CheckLine:
    """One row of a verification run: a checked identity or a skipped one.

    ``status`` is OK, FAIL or SKIP.  Skipped rows carry the reason in
    ``note`` and do not count as failures; a census is allowed not to
    declare the data some identity needs.
    """

    name: str
    status: str
    detail: str = ""
    lhs: int | None = None
    rhs: int | None = None
    note: str = ""

    @classmethod
    def from_report(cls, report: IdentityReport) -> "CheckLine":
        return cls(
            name=report.name,
            status="OK" if report.ok else "FAIL",
            detail=report.detail,
            lhs=report.lhs,
            rhs=report.rhs,
        )

    @classmethod
    def skip(cls, name: str, detail: str, note: str) -> "CheckLine":
        return cls(name=name, status="SKIP", detail=detail, note=note)

    def line(self) -> str:
        extra = f" [{self.detail}]" if self.detail else ""
        if self.status == "SKIP":
            return f"{self.name}{extra}: SKIP ({self.note})"
        return f"{self.name}{extra}: LHS={self.lhs} RHS={self.rhs} {self.status}"
