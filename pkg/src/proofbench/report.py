from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .core import Formula, Sequent
from .syntax import print_formula, print_sequent


@dataclass
class CheckReport:
    valid: bool
    conclusion: Optional[Formula] = None
    open_assumptions: list = field(default_factory=list)
    rule_usage: Counter = field(default_factory=Counter)
    diagnostics: list = field(default_factory=list)   # (path, message)
    end_sequent: Optional[Sequent] = None

    def to_json(self) -> dict:
        out = {
            "valid": self.valid,
            "conclusion": print_formula(self.conclusion) if self.conclusion is not None else None,
            "open_assumptions": [print_formula(f) for f in self.open_assumptions],
            "rule_usage": dict(sorted(self.rule_usage.items())),
            "diagnostics": [{"path": p, "message": m} for p, m in self.diagnostics],
        }
        if self.end_sequent is not None:
            out["end_sequent"] = print_sequent(self.end_sequent)
        return out

    def to_text(self) -> str:
        lines = [f"valid: {'yes' if self.valid else 'no'}"]
        if self.end_sequent is not None:
            lines.append(f"end-sequent: {print_sequent(self.end_sequent)}")
        elif self.conclusion is not None:
            lines.append(f"conclusion: {print_formula(self.conclusion)}")
        if self.end_sequent is None:
            opens = ", ".join(print_formula(f) for f in self.open_assumptions) or "(none)"
            lines.append(f"open assumptions: {opens}")
        usage = ", ".join(f"{k}:{v}" for k, v in sorted(self.rule_usage.items())) or "(none)"
        lines.append(f"rule usage: {usage}")
        for p, m in self.diagnostics:
            lines.append(f"  {p}: {m}")
        return "\n".join(lines)


@dataclass
class SubformulaReport:
    passed: bool
    violations: list = field(default_factory=list)    # (path, formula, reason)

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "violations": [{"path": p, "formula": print_formula(f), "reason": r}
                               for p, f, r in self.violations]}

    def to_text(self) -> str:
        lines = [f"subformula property: {'pass' if self.passed else 'fail'}"]
        for p, f, r in self.violations:
            lines.append(f"  {p}: {print_formula(f)} ({r})")
        return "\n".join(lines)
