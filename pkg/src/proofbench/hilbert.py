"""Checker for Hilbert-style line proofs: axiom schemas, modus ponens, generalization."""

from __future__ import annotations

from collections import Counter
from typing import Optional

from .core import Forall, Formula, Imp, Var, alpha_eq, free_vars, match_schema, substitute
from .proofs import HilbertProof
from .report import CheckReport
from .syntax import parse_formula, print_formula

AxiomSet = dict   # schema id -> schema formula; insertion order is the tie-break order

HC_SCHEMAS = [
    ("K", "A -> (B -> A)"),
    ("S", "(A -> (B -> C)) -> ((A -> B) -> (A -> C))"),
    ("OrI1", "A -> A | B"),
    ("OrI2", "B -> A | B"),
    ("OrE", "(A -> C) -> ((B -> C) -> (A | B -> C))"),
    ("AndE1", "A & B -> A"),
    ("AndE2", "A & B -> B"),
    ("AndI", "A -> (B -> A & B)"),
    ("EFQ", "bot -> A"),
    ("LEM", "A | ~A"),
]


def hc_axioms() -> AxiomSet:
    return {k: parse_formula(v) for k, v in HC_SCHEMAS}


HC = hc_axioms()


def axiom_instance(f: Formula, axioms: Optional[AxiomSet] = None) -> Optional[str]:
    axioms = HC if axioms is None else axioms
    for name, schema in axioms.items():
        if match_schema(schema, f) is not None:
            return name
    return None


def check_hilbert(p: HilbertProof, axioms: Optional[AxiomSet] = None) -> CheckReport:
    axioms = HC if axioms is None else axioms
    lines = p.lines
    diags = []
    usage = Counter()
    deps: list = []   # per line: set of Assume line numbers it depends on

    def bad(n, msg):
        diags.append((f"line {n}", msg))

    for n, line in enumerate(lines, 1):
        f = line.formula
        mine = set()
        for r in line.refs:
            if not 1 <= r < n:
                bad(n, f"reference {r} out of range (must name an earlier line)")
        refs_ok = all(1 <= r < n for r in line.refs)
        if refs_ok:
            for r in line.refs:
                mine |= deps[r - 1]

        if line.kind == "assume":
            usage["Assume"] += 1
            mine = {n}
        elif line.kind == "axiom":
            usage[f"axiom:{line.axiom}"] += 1
            schema = axioms.get(line.axiom)
            if schema is None:
                bad(n, f"unknown axiom schema {line.axiom!r}")
            elif match_schema(schema, f) is None:
                bad(n, f"{print_formula(f)} is not an instance of {line.axiom}: {print_formula(schema)}")
        elif line.kind == "mp":
            usage["MP"] += 1
            if refs_ok:
                i, j = line.refs
                minor, major = lines[i - 1].formula, lines[j - 1].formula
                if not alpha_eq(major, Imp(minor, f)):
                    bad(n, f"MP: line {j} is not line {i} -> this line")
        elif line.kind == "gen":
            usage["Gen"] += 1
            if refs_ok:
                (i,) = line.refs
                y = line.var
                if not isinstance(f, Forall):
                    bad(n, "Gen must conclude a universal formula")
                else:
                    if not alpha_eq(substitute(f.body, f.var, Var(y)), lines[i - 1].formula):
                        bad(n, f"Gen: line {i} is not the instance of the body at {y}")
                    if y in free_vars(f):
                        bad(n, f"Gen: {y} occurs free in the conclusion")
                    for a in sorted(mine):
                        if y in free_vars(lines[a - 1].formula):
                            bad(n, f"Gen: {y} occurs free in assumption at line {a}")
        else:
            bad(n, f"malformed justification {line.kind!r}")
        deps.append(mine)

    if not lines:
        diags.append(("proof", "empty proof"))
    return CheckReport(
        valid=not diags,
        conclusion=lines[-1].formula if lines else None,
        open_assumptions=[l.formula for l in lines if l.kind == "assume"],
        rule_usage=usage,
        diagnostics=diags,
    )
