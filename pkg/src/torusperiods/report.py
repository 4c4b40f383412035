"""Check records shared by the verification routines and the command line."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, List


@dataclass(frozen=True)
class CheckRecord:
    name: str
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def relative_error(lhs, rhs) -> float:
    scale = max(abs(lhs), abs(rhs))
    return abs(lhs - rhs) / scale if scale else 0.0


def close_check(name: str, lhs, rhs, tol: float) -> CheckRecord:
    """Record comparing two numbers at relative tolerance ``tol``."""
    lhs, rhs = complex(lhs), complex(rhs)
    if lhs.imag == 0 and rhs.imag == 0:
        lhs, rhs = lhs.real, rhs.real
    rel = relative_error(lhs, rhs)
    return CheckRecord(name, lhs, rhs, abs(lhs - rhs), rel, bool(rel <= tol))


def exact_check(name: str, lhs: int, rhs: int) -> CheckRecord:
    err = abs(lhs - rhs)
    return CheckRecord(name, lhs, rhs, err, relative_error(lhs, rhs), lhs == rhs)


def all_passed(records: Iterable[CheckRecord]) -> bool:
    return all(r.passed for r in records)


def summary(records: List[CheckRecord]) -> dict:
    failed = sum(1 for r in records if not r.passed)
    return {"summary": True, "passed": failed == 0, "checks": len(records), "failed": failed}
