"""User-defined connectives: arity plus schematic introduction and elimination rules."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import Custom, Formula, is_metavar, metavars
from .errors import DefinitionError, ParseError
from .syntax import parse_formula, print_formula

_INDEXED = re.compile(r"^A(\d+)$")
_NAME = re.compile(r"^[a-z][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class RuleSchema:
    """premises: tuple of (hypotheses, conclusion).  For elims premise 0 is the major."""

    name: str
    role: str                 # intro | elim
    premises: tuple
    conclusion: Formula
    major: int | None = None

    def discharge_slots(self) -> list:
        """(premise index, hypothesis schema) per discharge slot, in order."""
        return [(i, h) for i, (hyps, _) in enumerate(self.premises) for h in hyps]

    def to_json(self) -> dict:
        prems = [{"hypotheses": [print_formula(h) for h in hyps], "conclusion": print_formula(c)}
                 if hyps else print_formula(c) for hyps, c in self.premises]
        if self.role == "intro":
            return {"name": self.name, "premises": prems, "conclusion": print_formula(self.conclusion)}
        return {"name": self.name, "major": prems[0], "minors": prems[1:],
                "conclusion": print_formula(self.conclusion)}


@dataclass(frozen=True)
class ConnectiveDef:
    name: str
    arity: int
    intros: tuple = ()
    elims: tuple = ()
    source: dict = field(default=None, compare=False, repr=False)

    def rules(self) -> tuple:
        return self.intros + self.elims

    def rule_names(self) -> list:
        return [r.name for r in self.rules()]

    def to_json(self) -> dict:
        return {"name": self.name, "arity": self.arity,
                "intro": [r.to_json() for r in self.intros],
                "elim": [r.to_json() for r in self.elims]}


def _schema(text, where, conns):
    if not isinstance(text, str):
        raise DefinitionError(f"{where}: expected a formula string")
    try:
        return parse_formula(text, conns)
    except ParseError as e:
        raise DefinitionError(f"{where}: {e}") from e


def _premise(obj, where, conns):
    if isinstance(obj, str):
        return ((), _schema(obj, where, conns))
    if isinstance(obj, dict) and "conclusion" in obj:
        hyps = obj.get("hypotheses", obj.get("discharges", []))
        if not isinstance(hyps, list):
            raise DefinitionError(f"{where}: hypotheses must be a list")
        return (tuple(_schema(h, f"{where}.hypotheses", conns) for h in hyps),
                _schema(obj["conclusion"], f"{where}.conclusion", conns))
    raise DefinitionError(f"{where}: premise must be a formula string or "
                          "{\"hypotheses\": [...], \"conclusion\": ...}")


def _check_head(f, name, arity, where):
    if not (isinstance(f, Custom) and f.connective == name and len(f.args) == arity):
        raise DefinitionError(f"{where}: must be {name} applied to {arity} metavariables")
    if not all(is_metavar(a) for a in f.args):
        raise DefinitionError(f"{where}: arguments of {name} must be metavariables")
    names = [a.name for a in f.args]
    if len(set(names)) != len(names):
        raise DefinitionError(f"{where}: metavariables of {name} must be distinct")


def _check_indices(rule: RuleSchema, arity, where):
    fs = [rule.conclusion] + [c for _, c in rule.premises] + [h for hs, _ in rule.premises for h in hs]
    for f in fs:
        for m in metavars(f):
            k = _INDEXED.match(m)
            if k and int(k.group(1)) >= arity:
                raise DefinitionError(f"{where}: metavariable {m} exceeds arity {arity}")


def define_connective(doc: dict) -> ConnectiveDef:
    if not isinstance(doc, dict):
        raise DefinitionError("connective definition must be a JSON object")
    name = doc.get("name")
    arity = doc.get("arity")
    if not isinstance(name, str) or not _NAME.match(name) or name in ("bot", "forall", "exists"):
        raise DefinitionError(f"bad connective name {name!r} (lowercase identifier required)")
    if not isinstance(arity, int) or isinstance(arity, bool) or arity < 0:
        raise DefinitionError(f"{name}: arity must be a nonnegative integer")
    conns = {name: arity}
    intro_docs = doc.get("intro", [])
    elim_docs = doc.get("elim", [])
    if not isinstance(intro_docs, list) or not isinstance(elim_docs, list):
        raise DefinitionError(f"{name}: intro and elim must be lists")
    if not intro_docs and not elim_docs:
        raise DefinitionError(f"{name}: at least one rule required")

    def rule_name(r, role, i, n):
        if isinstance(r, dict) and isinstance(r.get("name"), str):
            return r["name"]
        suffix = "I" if role == "intro" else "E"
        return f"{name}{suffix}{i + 1 if n > 1 else ''}"

    intros = []
    for i, r in enumerate(intro_docs):
        where = f"{name}.intro[{i}]"
        if not isinstance(r, dict):
            raise DefinitionError(f"{where}: expected an object")
        prems = r.get("premises", [])
        if not isinstance(prems, list):
            raise DefinitionError(f"{where}: premises must be a list")
        concl = _schema(r.get("conclusion"), f"{where}.conclusion", conns)
        _check_head(concl, name, arity, f"{where}.conclusion")
        rule = RuleSchema(rule_name(r, "intro", i, len(intro_docs)), "intro",
                          tuple(_premise(p, f"{where}.premises[{k}]", conns) for k, p in enumerate(prems)),
                          concl)
        _check_indices(rule, arity, where)
        intros.append(rule)

    elims = []
    for i, r in enumerate(elim_docs):
        where = f"{name}.elim[{i}]"
        if not isinstance(r, dict) or "major" not in r:
            raise DefinitionError(f"{where}: expected an object with a major premise")
        major = _schema(r["major"], f"{where}.major", conns)
        _check_head(major, name, arity, f"{where}.major")
        minors = r.get("minors", [])
        if not isinstance(minors, list):
            raise DefinitionError(f"{where}: minors must be a list")
        concl = _schema(r.get("conclusion"), f"{where}.conclusion", conns)
        rule = RuleSchema(rule_name(r, "elim", i, len(elim_docs)), "elim",
                          ((((), major),) + tuple(_premise(p, f"{where}.minors[{k}]", conns)
                                                  for k, p in enumerate(minors))),
                          concl, major=0)
        _check_indices(rule, arity, where)
        elims.append(rule)

    names = [r.name for r in intros + elims]
    if len(set(names)) != len(names):
        raise DefinitionError(f"{name}: duplicate rule names")
    return ConnectiveDef(name, arity, tuple(intros), tuple(elims), source=doc)


# Clones of the primitive connectives, used as audit targets.
BUILTIN_DEFS = {
    "and": {
        "name": "and", "arity": 2,
        "intro": [{"premises": ["A0", "A1"], "conclusion": "and(A0,A1)"}],
        "elim": [{"major": "and(A0,A1)", "minors": [], "conclusion": "A0"},
                 {"major": "and(A0,A1)", "minors": [], "conclusion": "A1"}],
    },
    "or": {
        "name": "or", "arity": 2,
        "intro": [{"premises": ["A0"], "conclusion": "or(A0,A1)"},
                  {"premises": ["A1"], "conclusion": "or(A0,A1)"}],
        "elim": [{"major": "or(A0,A1)",
                  "minors": [{"hypotheses": ["A0"], "conclusion": "C"},
                             {"hypotheses": ["A1"], "conclusion": "C"}],
                  "conclusion": "C"}],
    },
    "imp": {
        "name": "imp", "arity": 2,
        "intro": [{"premises": [{"hypotheses": ["A0"], "conclusion": "A1"}], "conclusion": "imp(A0,A1)"}],
        "elim": [{"major": "imp(A0,A1)", "minors": ["A0"], "conclusion": "A1"}],
    },
    "not": {
        "name": "not", "arity": 1,
        "intro": [{"premises": [{"hypotheses": ["A0"], "conclusion": "bot"}], "conclusion": "not(A0)"}],
        "elim": [{"major": "not(A0)", "minors": ["A0"], "conclusion": "bot"}],
    },
}


def builtin(name: str) -> ConnectiveDef:
    return define_connective(BUILTIN_DEFS[name])
