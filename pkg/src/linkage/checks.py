"""Check reports and degreewise comparison of Hilbert functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .hilbert import HFSum, HilbertFunction, exact_window

STATUSES = ("pass", "fail", "precondition_failed", "inconclusive")


class PreconditionFailed(ValueError):
    pass


@dataclass
class CheckReport:
    check_id: str
    status: str
    witness_degree: int | None = None
    lhs_value: Any = None
    rhs_value: Any = None
    detail: str = ""
    window: tuple[int, int] | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        out = {
            "check_id": self.check_id,
            "status": self.status,
            "witness_degree": self.witness_degree,
            "lhs_value": self.lhs_value,
            "rhs_value": self.rhs_value,
        }
        if self.window is not None:
            out["window"] = list(self.window)
        if self.detail:
            out["detail"] = self.detail
        if self.extra:
            out["extra"] = self.extra
        return out


def overall(reports: list[CheckReport]) -> str:
    """``fail`` dominates, then ``precondition_failed``, then ``inconclusive``."""
    statuses = {r.status for r in reports}
    for s in ("fail", "precondition_failed", "inconclusive"):
        if s in statuses:
            return s
    return "pass"


def _as_sum(x) -> HFSum:
    if isinstance(x, HFSum):
        return x
    if isinstance(x, HilbertFunction):
        return HFSum(((1, x),))
    raise TypeError(type(x).__name__)


def _covers(user: tuple[int, int], need: tuple[int, int]) -> bool:
    return user[0] <= need[0] and user[1] >= need[1]


def compare(check_id: str, lhs, rhs, window: tuple[int, int] | None = None) -> CheckReport:
    """Degreewise ``lhs == rhs``.

    Without ``window`` the exact window is used, which proves the identity in
    every degree.  A user window that misses part of the exact window can only
    fail or be inconclusive.
    """
    lhs, rhs = _as_sum(lhs), _as_sum(rhs)
    need = exact_window([lhs, rhs])
    lo, hi = window if window is not None else need
    for mu in range(lo, hi + 1):
        a, b = lhs(mu), rhs(mu)
        if a != b:
            return CheckReport(check_id, "fail", mu, a, rhs_value=b, window=(lo, hi))
    status = "pass" if _covers((lo, hi), need) else "inconclusive"
    detail = "" if status == "pass" else f"window does not cover {need[0]}..{need[1]}"
    return CheckReport(check_id, status, None, lhs.values(lo, hi), rhs.values(lo, hi), detail, (lo, hi))


def _tail_nonnegative(values: list[int]) -> bool:
    """Newton forward differences all nonnegative: the polynomial through
    ``values`` (at consecutive points, stepping outward) stays >= 0 beyond them."""
    row = list(values)
    while row:
        if row[0] < 0:
            return False
        row = [b - a for a, b in zip(row, row[1:])]
    return True


def compare_ge(check_id: str, lhs, rhs, window: tuple[int, int] | None = None) -> CheckReport:
    """Degreewise ``lhs >= rhs`` (as for a graded surjection ``lhs -> rhs``).

    Outside the exact window the difference is a polynomial of degree below
    ``k``; nonnegative forward differences at each edge certify the tails.
    """
    lhs, rhs = _as_sum(lhs), _as_sum(rhs)
    need = exact_window([lhs, rhs])
    lo, hi = window if window is not None else need
    diff = lhs - rhs
    for mu in range(lo, hi + 1):
        if diff(mu) < 0:
            return CheckReport(check_id, "fail", mu, lhs(mu), rhs(mu), window=(lo, hi))
    if not _covers((lo, hi), need):
        return CheckReport(check_id, "inconclusive", None, lhs.values(lo, hi), rhs.values(lo, hi),
                           f"window does not cover {need[0]}..{need[1]}", (lo, hi))
    k = max((h.poles for h in diff.components()), default=0) + 1
    right = [diff(need[1] + t) for t in range(k + 1)]
    left = [diff(need[0] - t) for t in range(k + 1)]
    if _tail_nonnegative(right) and _tail_nonnegative(left):
        return CheckReport(check_id, "pass", None, lhs.values(lo, hi), rhs.values(lo, hi), window=(lo, hi))
    # search a little further for an explicit negative degree
    for t in range(1, 64):
        for mu in (need[1] + t, need[0] - t):
            if diff(mu) < 0:
                return CheckReport(check_id, "fail", mu, lhs(mu), rhs(mu), window=(lo, hi))
    return CheckReport(check_id, "inconclusive", None, lhs.values(lo, hi), rhs.values(lo, hi),
                       "tail sign not certified", (lo, hi))
