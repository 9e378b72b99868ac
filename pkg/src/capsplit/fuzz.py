"""Seeded property runs over the generated case streams."""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import NumericMode, PivotKind, allocate, classify_pivot
from .decomposition import DecompositionMode, decompose_difference
from .oracle import FuzzConfig, allocate_sequential, generate_case, generate_dominance_pair

__all__ = ["SUITES", "allocation_failures", "identity_failures", "FuzzReport", "run_fuzz"]

SUITES = ("oracle_equivalence", "conservation", "pivot", "identity")


def _close(a, b, tol) -> bool:
    return a == b if not tol else abs(a - b) <= tol


def allocation_failures(x, schedule, tolerance=0) -> dict[str, str]:
    """Failed allocation properties for one case, keyed by suite name."""
    closed = allocate(x, schedule)
    poured = allocate_sequential(x, schedule)
    out = {}
    if len(closed.terms) != len(poured.terms) or not all(
        _close(a, b, tolerance) for a, b in zip(closed.terms, poured.terms)
    ):
        out["oracle_equivalence"] = f"closed form {closed.terms!r} vs poured {poured.terms!r}"

    if not _close(closed.total(), x, tolerance):
        out["conservation"] = f"terms sum to {closed.total()!r}, amount is {x!r}"
    elif x < 0 and (closed.terms[0] != x or any(t != 0 for t in closed.terms[1:])):
        out["conservation"] = f"negative amount spread as {closed.terms!r}"

    pivot = classify_pivot(x, schedule)
    s = closed.schedule
    if pivot.kind is PivotKind.INTERIOR:
        i0, sums = pivot.index, s.prefix_sums
        hits = [i for i in range(1, s.m) if sums[i] < x <= sums[i + 1]]
        shape = (
            *s.caps[:i0],
            x - sums[i0],
            *(type(x)(0) for _ in range(s.m - i0 - 1)),
            type(x)(0),
        )
        if hits != [i0]:
            out["pivot"] = f"interior({i0}) but qualifying indices are {hits}"
        elif not all(_close(a, b, tolerance) for a, b in zip(closed.terms, shape)):
            out["pivot"] = f"interior({i0}) allocation {closed.terms!r} != {shape!r}"
    elif pivot.kind is PivotKind.BELOW_FIRST_CAP and not x <= s.caps[0]:
        out["pivot"] = f"below_first_cap but {x!r} > {s.caps[0]!r}"
    elif pivot.kind is PivotKind.AT_OR_ABOVE_TOTAL and not x >= s.total:
        out["pivot"] = f"at_or_above_total but {x!r} < {s.total!r}"
    return out


def identity_failures(pair, tolerance=0) -> dict[str, str]:
    """Failed preconditions or identity for a pair meant to satisfy them."""
    result = decompose_difference(pair, DecompositionMode.UNCHECKED, tolerance)
    # in float mode a constructed pair can miss an inequality by rounding alone
    real = [v for v in result.violations if v.lhs < v.rhs - tolerance]
    if real:
        return {"identity": "preconditions fail: " + "; ".join(map(str, real))}
    if not (result.nonneg_certified and result.identity_holds):
        return {"identity": f"diffs {result.signed_diffs!r} total {result.total!r} expected {result.expected!r}"}
    return {}


@dataclass
class FuzzReport:
    config: FuzzConfig
    tolerance: float = 0
    checked: dict = field(default_factory=lambda: dict.fromkeys(SUITES, 0))
    failures: dict = field(default_factory=lambda: dict.fromkeys(SUITES, 0))
    first_failure: dict | None = None

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def record(self, index: int, failed: dict[str, str], suites):
        for suite in suites:
            self.checked[suite] += 1
        for suite, detail in failed.items():
            self.failures[suite] += 1
            if self.first_failure is None:
                self.first_failure = {
                    "suite": suite,
                    "seed": self.config.seed,
                    "index": index,
                    "detail": detail,
                }

    def as_dict(self) -> dict:
        c = self.config
        return {
            "seed": c.seed,
            "cases": c.cases,
            "max_m": c.max_m,
            "magnitude": str(c.magnitude_bound),
            "mode": c.mode.value,
            "suites": {s: {"checked": self.checked[s], "failures": self.failures[s]} for s in SUITES},
            "first_failure": self.first_failure,
            "status": "pass" if self.ok else "fail",
        }


def run_fuzz(config: FuzzConfig, tolerance=None) -> FuzzReport:
    """Run every suite on ``config.cases`` allocation cases and as many pairs."""
    if tolerance is None:
        tolerance = 0 if config.mode is NumericMode.EXACT else 1e-12
    report = FuzzReport(config, tolerance)
    alloc_suites = ("oracle_equivalence", "conservation", "pivot")
    for index in range(config.cases):
        x, schedule = generate_case(config, index)
        report.record(index, allocation_failures(x, schedule, tolerance), alloc_suites)
        pair = generate_dominance_pair(config, index)
        report.record(index, identity_failures(pair, tolerance), ("identity",))
    return report

