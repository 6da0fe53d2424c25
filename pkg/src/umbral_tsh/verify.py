"""Verification suites over a whole family and the report they produce."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from . import tsh
from .exceptions import DomainError
from .poly import MPoly
from .tsh import CheckResult, TSHPoly
from .umbra import Umbra

SUITES = ("martingale", "appell", "wald", "sheffer", "eq5", "shift", "discrete",
          "complbell", "dtderiv", "prop5", "cumulant")


@dataclass
class Report:
    umbra: str
    order: int
    sign: str
    checks: List[CheckResult] = field(default_factory=list)
    seconds: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def suite_status(self) -> Dict[str, bool]:
        status: Dict[str, bool] = {}
        for c in self.checks:
            status[c.name] = status.get(c.name, True) and c.passed
        return status

    def to_json(self) -> dict:
        return {
            "umbra": self.umbra,
            "order": self.order,
            "sign": self.sign,
            "passed": self.passed,
            "suites": {
                name: {
                    "passed": ok,
                    "seconds": round(self.seconds.get(name, 0.0), 6),
                    "checks": [_check_json(c) for c in self.checks if c.name == name],
                }
                for name, ok in self.suite_status().items()
            },
        }

    def render(self) -> str:
        lines = [f"umbra {self.umbra}, order {self.order}, sign {self.sign}"]
        for name, ok in self.suite_status().items():
            n = sum(1 for c in self.checks if c.name == name)
            lines.append(f"{'PASS' if ok else 'FAIL'}  {name:<11} {n:>3} checks  {self.seconds.get(name, 0.0):.3f}s")
            for c in self.checks:
                if c.name == name and not c.passed:
                    extra = f" ({c.detail})" if c.detail else ""
                    lines.append(f"      k={c.k}{extra}: residual {c.residual}")
        lines.append("ALL PASS" if self.passed else f"{len(self.failures())} FAILED")
        return "\n".join(lines)


def _check_json(c: CheckResult) -> dict:
    out = {"k": c.k, "passed": c.passed}
    if not c.passed:
        out["residual"] = c.residual.to_json()
        if c.detail:
            out["detail"] = c.detail
    return out


def _suite_checks(name: str, alpha: Umbra, order: int, sign: str,
                  polys: Optional[Sequence[TSHPoly]], discrete_n: int) -> List[CheckResult]:
    def poly(k):
        return None if polys is None else polys[k]

    ks = range(order + 1)
    if name == "martingale":
        return [tsh.martingale_check(k, alpha, poly(k), sign) for k in ks]
    if name == "appell":
        family = polys if polys is not None else tsh.tsh_family(alpha, order, sign)
        return [tsh.appell_check(list(family)[: order + 1])]
    if name == "wald":
        if polys is None:
            return [tsh.wald_check(alpha, order, sign)]
        out = []
        for k in ks:
            r = tsh.wald_residual(k, alpha, poly(k), sign)
            out.append(CheckResult("wald", k, r.is_zero(), r))
        return out
    if name == "sheffer":
        return [tsh.sheffer_identity_check(k, alpha, sign, polys) for k in ks]
    if name == "eq5":
        return [tsh.eq5_check(k, alpha, poly(k), sign) for k in ks]
    if name == "shift":
        return [tsh.shift_identity_check(k, alpha, poly(k), sign) for k in ks]
    if name == "discrete":
        return [tsh.discrete_identity_check(k, n, alpha, poly(k), sign)
                for k in ks for n in range(1, discrete_n + 1)]
    if name == "complbell":
        return [tsh.complbell_check(k, alpha, poly(k), sign) for k in ks]
    if name == "dtderiv":
        return [tsh.dt_derivative_check(k, alpha, sign) for k in ks]
    if name == "prop5":
        return [tsh.prop5_check(k, alpha, poly(k), sign) for k in ks]
    if name == "cumulant":
        return [tsh.cumulant_form_check(k, alpha, sign) for k in ks]
    raise DomainError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")


def run_suite(suite: str, alpha: Umbra, order: int, sign: str = "minus",
              polys: Optional[Sequence[TSHPoly]] = None, discrete_n: int = 4) -> Report:
    """Run one suite (or ``"all"``) for every degree ``k <= order``."""
    if order > alpha.order:
        raise DomainError(f"order {order} exceeds the umbra order {alpha.order}")
    if polys is not None and len(polys) < order + 1:
        raise DomainError(f"need Q_0..Q_{order}, got {len(polys)} polynomials")
    names = SUITES if suite == "all" else (suite,)
    report = Report(alpha.label or "custom", order, sign)
    for name in names:
        start = time.perf_counter()
        report.checks.extend(_suite_checks(name, alpha, order, sign, polys, discrete_n))
        report.seconds[name] = time.perf_counter() - start
    return report
