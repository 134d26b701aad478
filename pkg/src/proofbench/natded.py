"""Natural deduction: NJ, its classical extensions, normalization, subformula audit.

Rule names are ASCII.  The major premise of an elimination is always premise 0;
NotE takes [~A, A] and ImpE takes [A -> B, A].  Discharge slots are positional:

    ImpI, NotI, RAA   slot 0 -> premise 0
    OrE, GOrE         slot 0 -> premise 1 (left case), slot 1 -> premise 2
    CD                slot 0 -> premise 0 ([A]), slot 1 -> premise 1 ([~A])
    ExistsE           slot 0 -> premise 1
    GAndE             slots 0, 1 -> premise 1
    GImpE             slot 0 -> premise 2

A slot holding None discharges vacuously.  A named slot binds the open leaves
with that label in its premise (nearest enclosing binder wins) and must bind at
least one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Optional

from .core import (BOT, And, Atom, Bottom, Custom, Exists, Forall, Formula, Imp, Not, Or, Var,
                   alpha_eq, canonical, free_vars, fresh_name, is_subformula_instance,
                   match_schema, subst_term, substitute, term_vars, _canon, _match_key)
from .errors import ResourceLimit, UnsupportedError
from .proofs import NDNode, format_path, nd_at, nd_walk
from .report import CheckReport, SubformulaReport

BASE_RULES = ("AndI", "AndE1", "AndE2", "OrI1", "OrI2", "OrE", "ImpI", "ImpE", "NotI", "NotE",
              "BotE", "ForallI", "ForallE", "ExistsI", "ExistsE")
GE_RULES = ("GAndE", "GImpE", "GOrE")
CLASSICAL_RULES = ("DNE", "LEM", "RAA", "CD")
ALL_ND_RULES = BASE_RULES + GE_RULES + CLASSICAL_RULES

N_PREMISES = {"AndI": 2, "AndE1": 1, "AndE2": 1, "OrI1": 1, "OrI2": 1, "OrE": 3, "GOrE": 3,
              "ImpI": 1, "ImpE": 2, "NotI": 1, "NotE": 2, "BotE": 1, "ForallI": 1, "ForallE": 1,
              "ExistsI": 1, "ExistsE": 2, "DNE": 1, "LEM": 0, "RAA": 1, "CD": 2, "GAndE": 2,
              "GImpE": 3}
SLOTS = {"ImpI": (0,), "NotI": (0,), "RAA": (0,), "OrE": (1, 2), "GOrE": (1, 2), "CD": (0, 1),
         "ExistsE": (1,), "GAndE": (1, 1), "GImpE": (2,)}
EIGEN_RULES = ("ForallI", "ExistsE")
TERM_RULES = ("ForallE", "ExistsI")

# introduction rule -> eliminations it can meet as a detour
DETOURS = {"AndI": ("AndE1", "AndE2", "GAndE"), "OrI1": ("OrE", "GOrE"), "OrI2": ("OrE", "GOrE"),
           "ImpI": ("ImpE", "GImpE"), "NotI": ("NotE",), "ForallI": ("ForallE",),
           "ExistsI": ("ExistsE",)}
ELIM_RULES = ("AndE1", "AndE2", "OrE", "GOrE", "ImpE", "NotE", "ForallE", "ExistsE", "GAndE",
              "GImpE", "BotE")
SEGMENT_RULES = ("OrE", "GOrE", "ExistsE", "GAndE", "GImpE")

RULESET_NAMES = {"NJ": None, "NK": "DNE", "NK-DNE": "DNE", "NK-LEM": "LEM", "NK-RAA": "RAA",
                 "NK-CD": "CD", "NJ+DNE": "DNE", "NJ+LEM": "LEM", "NJ+RAA": "RAA", "NJ+CD": "CD"}


@dataclass(frozen=True)
class NDRuleset:
    classical: Optional[str] = None      # None (NJ) | DNE | LEM | RAA | CD | "all" (internal)
    ge: bool = False
    connectives: tuple = ()

    @property
    def name(self) -> str:
        base = "NJ" if self.classical is None else f"NK-{self.classical}"
        return base + (" +GE" if self.ge else "")

    def allowed(self) -> set:
        out = set(BASE_RULES)
        if self.ge:
            out |= set(GE_RULES)
        if self.classical == "all":
            out |= set(CLASSICAL_RULES)
        elif self.classical:
            out.add(self.classical)
        for d in self.connectives:
            out |= set(d.rule_names())
        return out

    def custom_rules(self) -> dict:
        return {r.name: r for d in self.connectives for r in d.rules()}


def ruleset(name: str = "NJ", ge: bool = False, connectives=()) -> NDRuleset:
    if name not in RULESET_NAMES:
        raise ValueError(f"unknown natural-deduction ruleset {name!r}")
    return NDRuleset(RULESET_NAMES[name], ge, tuple(connectives))


NJ = NDRuleset()
PERMISSIVE = NDRuleset("all", True)


# ---------------------------------------------------------------- checking

class _Checker:
    def __init__(self, rs: NDRuleset):
        self.rs = rs
        self.allowed = rs.allowed()
        self.custom = rs.custom_rules()
        self.diags = []
        self.usage = Counter()

    def err(self, path, msg):
        self.diags.append((format_path(path), msg))

    def check(self, n: NDNode, path) -> list:
        """Returns the open (label, formula) leaf occurrences of n."""
        if n.is_hyp:
            if n.premises:
                self.err(path, "hypothesis leaf has premises")
            return [(n.label, n.formula)]
        self.usage[n.rule] += 1
        subs = [self.check(q, path + (i,)) for i, q in enumerate(n.premises)]
        rule = n.rule

        if rule not in self.allowed:
            if rule in CLASSICAL_RULES:
                self.err(path, f"classical rule {rule} is not available in {self.rs.name}")
            elif rule in GE_RULES:
                self.err(path, f"general elimination {rule} requires the GE toggle")
            else:
                self.err(path, f"rule {rule} is not available in {self.rs.name}")

        schema = self.custom.get(rule)
        if schema is not None:
            slots = tuple(i for i, _ in schema.discharge_slots())
            nprem = len(schema.premises)
        elif rule in N_PREMISES:
            slots = SLOTS.get(rule, ())
            nprem = N_PREMISES[rule]
        else:
            self.err(path, f"unknown rule {rule}")
            return [o for s in subs for o in s]

        if len(n.premises) != nprem:
            self.err(path, f"{rule} takes {nprem} premises, got {len(n.premises)}")
            return [o for s in subs for o in s]
        if len(n.discharges) != len(slots):
            self.err(path, f"{rule} has {len(slots)} discharge slots, got {len(n.discharges)}")
            return [o for s in subs for o in s]
        named = [d for d in n.discharges if d is not None]
        if len(set(named)) != len(named):
            self.err(path, "discharge labels must be distinct within one node")
        if n.eigen is not None and rule not in EIGEN_RULES:
            self.err(path, f"{rule} takes no eigenvariable")
        if n.term is not None and rule not in TERM_RULES:
            self.err(path, f"{rule} takes no witness term")

        bound = []   # per slot: formulas of the discharged leaves
        for slot, (k, label) in enumerate(zip(slots, n.discharges)):
            if label is None:
                bound.append([])
                continue
            leaves = [f for l, f in subs[k] if l == label]
            if not leaves:
                self.err(path, f"dangling discharge label {label!r}")
            bound.append(leaves)
        for k, label in zip(slots, n.discharges):
            if label is not None:
                subs[k] = [(l, f) for l, f in subs[k] if l != label]

        prem = [q.formula for q in n.premises]
        if schema is not None:
            msg = self.check_custom(n, schema, prem, bound)
        else:
            msg = self.check_shape(n, prem, bound, subs)
        if msg:
            self.err(path, f"{rule}: {msg}")
        return [o for s in subs for o in s]

    def check_shape(self, n, P, bound, subs) -> Optional[str]:
        A = n.formula
        rule = n.rule

        def disch(slot, expect):
            for f in bound[slot]:
                if not alpha_eq(f, expect):
                    return f"discharged hypothesis does not match the required formula"
            return None

        if rule == "AndI":
            if not isinstance(A, And) or not (alpha_eq(P[0], A.left) and alpha_eq(P[1], A.right)):
                return "premises must be the conjuncts of the conclusion"
        elif rule in ("AndE1", "AndE2"):
            if not isinstance(P[0], And):
                return "major premise must be a conjunction"
            part = P[0].left if rule == "AndE1" else P[0].right
            if not alpha_eq(part, A):
                return "conclusion must be the selected conjunct"
        elif rule in ("OrI1", "OrI2"):
            if not isinstance(A, Or):
                return "conclusion must be a disjunction"
            if not alpha_eq(P[0], A.left if rule == "OrI1" else A.right):
                return "premise must be the selected disjunct"
        elif rule in ("OrE", "GOrE"):
            if not isinstance(P[0], Or):
                return "major premise must be a disjunction"
            if not (alpha_eq(P[1], A) and alpha_eq(P[2], A)):
                return "minor premises must both be the conclusion"
            return disch(0, P[0].left) or disch(1, P[0].right)
        elif rule == "ImpI":
            if not isinstance(A, Imp) or not alpha_eq(P[0], A.right):
                return "premise must be the consequent of the conclusion"
            return disch(0, A.left)
        elif rule == "ImpE":
            if not isinstance(P[0], Imp):
                return "major premise must be an implication"
            if not alpha_eq(P[0].left, P[1]) or not alpha_eq(P[0].right, A):
                return "minor premise or conclusion does not fit the implication"
        elif rule == "NotI":
            if not isinstance(A, Not) or not isinstance(P[0], Bottom):
                return "concludes ~A from bot"
            return disch(0, A.body)
        elif rule == "NotE":
            if not isinstance(A, Bottom):
                return "conclusion must be bot"
            if not isinstance(P[0], Not) or not alpha_eq(P[0].body, P[1]):
                return "premises must be ~A and A"
        elif rule == "BotE":
            if not isinstance(P[0], Bottom):
                return "premise must be bot"
        elif rule == "ForallI":
            if not isinstance(A, Forall):
                return "conclusion must be universal"
            y = n.eigen
            if y is None:
                return "eigenvariable required"
            if not alpha_eq(substitute(A.body, A.var, Var(y)), P[0]):
                return f"premise is not the body instantiated at {y}"
            if y in free_vars(A):
                return f"eigenvariable {y} occurs free in the conclusion"
            for _, f in subs[0]:
                if y in free_vars(f):
                    return f"eigenvariable {y} occurs free in an open assumption"
        elif rule == "ForallE":
            if not isinstance(P[0], Forall):
                return "major premise must be universal"
            if not _is_instance(P[0], A, n.term):
                return "conclusion is not an instance of the premise"
        elif rule == "ExistsI":
            if not isinstance(A, Exists):
                return "conclusion must be existential"
            if not _is_instance(A, P[0], n.term):
                return "premise is not an instance of the conclusion"
        elif rule == "ExistsE":
            if not isinstance(P[0], Exists):
                return "major premise must be existential"
            if not alpha_eq(P[1], A):
                return "minor premise must be the conclusion"
            y = n.eigen
            if y is None:
                return "eigenvariable required"
            msg = disch(0, substitute(P[0].body, P[0].var, Var(y)))
            if msg:
                return msg
            if y in free_vars(A) or y in free_vars(P[0]):
                return f"eigenvariable {y} occurs free in the conclusion or major premise"
            for _, f in subs[1]:
                if y in free_vars(f):
                    return f"eigenvariable {y} occurs free in an open assumption"
        elif rule == "DNE":
            if not (isinstance(P[0], Not) and isinstance(P[0].body, Not)
                    and alpha_eq(P[0].body.body, A)):
                return "concludes A from ~~A"
        elif rule == "LEM":
            if not (isinstance(A, Or) and isinstance(A.right, Not) and alpha_eq(A.left, A.right.body)):
                return "conclusion must have the form A | ~A"
        elif rule == "RAA":
            if not isinstance(P[0], Bottom):
                return "premise must be bot"
            return disch(0, Not(A))
        elif rule == "CD":
            if not (alpha_eq(P[0], A) and alpha_eq(P[1], A)):
                return "both premises must be the conclusion"
            cases = bound[0] + [f.body for f in bound[1] if isinstance(f, Not)]
            if any(not isinstance(f, Not) for f in bound[1]):
                return "second case must discharge a negation"
            if cases and not all(alpha_eq(c, cases[0]) for c in cases):
                return "the two cases must discharge A and ~A"
        elif rule == "GAndE":
            if not isinstance(P[0], And):
                return "major premise must be a conjunction"
            if not alpha_eq(P[1], A):
                return "minor premise must be the conclusion"
            return disch(0, P[0].left) or disch(1, P[0].right)
        elif rule == "GImpE":
            if not isinstance(P[0], Imp):
                return "major premise must be an implication"
            if not alpha_eq(P[1], P[0].left):
                return "second premise must be the antecedent"
            if not alpha_eq(P[2], A):
                return "third premise must be the conclusion"
            return disch(0, P[0].right)
        return None

    def check_custom(self, n, schema, P, bound) -> Optional[str]:
        sigma = match_schema(schema.conclusion, n.formula)
        if sigma is None:
            return "conclusion does not fit the rule"
        for (hyps, concl), f in zip(schema.premises, P):
            sigma = match_schema(concl, f, sigma)
            if sigma is None:
                return "premise does not fit the rule"
        for (k, h), leaves in zip(schema.discharge_slots(), bound):
            for f in leaves:
                sigma = match_schema(h, f, sigma)
                if sigma is None:
                    return "discharged hypothesis does not fit the rule"
        return None


def _is_instance(q: Formula, inst: Formula, term=None) -> bool:
    """inst is q's body with the bound variable replaced by some (or the given) term."""
    if term is not None:
        return alpha_eq(substitute(q.body, q.var, term), inst)
    return instance_term(q, inst) is not False


def instance_term(q: Formula, inst: Formula):
    """The witness t with body(x/t) = inst; None when x is vacuous; False if no match."""
    binding = {}
    if not _match_key(_canon(q.body, {}, 0, frozenset([q.var])), canonical(inst), binding):
        return False
    key = binding.get(q.var)
    return None if key is None else _key_term(key)


def _key_term(k):
    from .core import Fun
    if k[0] == "v":
        return Var(k[1])
    return Fun(k[1], tuple(_key_term(a) for a in k[2]))


def open_assumptions(p: NDNode, rs: Optional[NDRuleset] = None) -> list:
    """Open (label, formula) pairs, one per distinct pair."""
    c = _Checker(PERMISSIVE if rs is None else replace(PERMISSIVE, connectives=rs.connectives))
    seen, out = set(), []
    for label, f in c.check(p, ()):
        key = (label, canonical(f))
        if key not in seen:
            seen.add(key)
            out.append((label, f))
    return sorted(out, key=lambda lf: (str(lf[0]), repr(canonical(lf[1]))))


def check_nd(p: NDNode, rs: Optional[NDRuleset] = None) -> CheckReport:
    rs = NJ if rs is None else rs
    c = _Checker(rs)
    opens = c.check(p, ())
    seen, assumptions = set(), []
    for label, f in opens:
        key = (label, canonical(f))
        if key not in seen:
            seen.add(key)
            assumptions.append((label, f))
    assumptions.sort(key=lambda lf: (str(lf[0]), repr(canonical(lf[1]))))
    return CheckReport(valid=not c.diags, conclusion=p.formula,
                       open_assumptions=[f for _, f in assumptions],
                       rule_usage=c.usage, diagnostics=c.diags)


def rule_usage(p: NDNode) -> Counter:
    return Counter(n.rule for _, n in nd_walk(p) if not n.is_hyp)


# ---------------------------------------------------------------- detours

def _custom_pairs(rs: NDRuleset) -> dict:
    out = {}
    for d in rs.connectives:
        for i in d.intros:
            out[i.name] = tuple(e.name for e in d.elims)
    return out


def maximal_formulas(p: NDNode, rs: Optional[NDRuleset] = None) -> list:
    """Paths of I-rule conclusions that are the major premise of a matching E-rule."""
    rs = PERMISSIVE if rs is None else rs
    rep = check_nd(p, rs)
    if not rep.valid:
        raise ValueError("maximal_formulas needs a valid proof: " + "; ".join(m for _, m in rep.diagnostics))
    pairs = dict(DETOURS)
    pairs.update(_custom_pairs(rs))
    out = []
    for path, n in nd_walk(p):
        if n.is_hyp or not n.premises:
            continue
        major = n.premises[0]
        if n.rule in pairs.get(major.rule, ()):
            out.append(path + (0,))
    return out


# ---------------------------------------------------------------- proof surgery

def labels_in(p: NDNode) -> set:
    out = set()
    for _, n in nd_walk(p):
        if n.is_hyp:
            out.add(n.label)
        out.update(d for d in n.discharges if d is not None)
    return out


def eigens_in(p: NDNode) -> set:
    return {n.eigen for _, n in nd_walk(p) if n.eigen is not None}


def vars_in(p: NDNode) -> set:
    out = set()
    for _, n in nd_walk(p):
        out |= free_vars(n.formula)
        if n.eigen:
            out.add(n.eigen)
        if n.term is not None:
            out |= term_vars(n.term)
    return out


def _slot_premises(n: NDNode) -> tuple:
    return SLOTS.get(n.rule, ())


def rename_label(p: NDNode, old: str, new: str) -> NDNode:
    """Rename the open leaves labelled old (respecting inner rebinding)."""
    if p.is_hyp:
        return replace(p, label=new) if p.label == old else p
    prems = list(p.premises)
    for i, q in enumerate(prems):
        rebound = any(k == i and d == old for k, d in zip(_slot_premises(p), p.discharges))
        if not rebound:
            prems[i] = rename_label(q, old, new)
    return p.with_premises(prems)


def subst_hyp(p: NDNode, label: str, repl: NDNode) -> NDNode:
    """Replace the open leaves labelled `label` by `repl`, avoiding capture."""
    repl_labels = {l for l, _ in open_assumptions(repl)}
    repl_vars = vars_in(repl)
    avoid = labels_in(p) | labels_in(repl)
    return _subst_hyp(p, label, repl, repl_labels, repl_vars, avoid)


def _subst_hyp(p, label, repl, repl_labels, repl_vars, avoid):
    if p.is_hyp:
        return repl if p.label == label else p
    if p.eigen is not None and p.eigen in repl_vars:
        p = rename_eigen(p, fresh_name(p.eigen, repl_vars | vars_in(p)))
    prems = list(p.premises)
    discharges = list(p.discharges)
    for slot, (k, d) in enumerate(zip(_slot_premises(p), p.discharges)):
        if d is not None and d in repl_labels and d != label:
            new = fresh_name(d, avoid)
            avoid.add(new)
            prems[k] = rename_label(prems[k], d, new)
            discharges[slot] = new
    for i, q in enumerate(prems):
        rebound = any(k == i and d == label for k, d in zip(_slot_premises(p), discharges))
        if not rebound:
            prems[i] = _subst_hyp(q, label, repl, repl_labels, repl_vars, avoid)
    return replace(p, premises=tuple(prems), discharges=tuple(discharges))


def subst_var(p: NDNode, y: str, t) -> NDNode:
    """Replace free y by term t in every formula of p (eigenvariables assumed distinct)."""
    def go(n):
        f = substitute(n.formula, y, t)
        term = subst_term(n.term, y, t) if n.term is not None else None
        eigen = n.eigen
        if eigen == y:
            eigen = t.name if isinstance(t, Var) else eigen
        return NDNode(n.rule, f, tuple(go(q) for q in n.premises), n.discharges, n.label, eigen, term)
    return go(p)


def rename_eigen(n: NDNode, new: str) -> NDNode:
    """Rename the eigenvariable of n (a ForallI or ExistsE node) within its scope."""
    y = n.eigen
    k = 0 if n.rule == "ForallI" else 1
    prems = list(n.premises)
    prems[k] = subst_var(prems[k], y, Var(new))
    return replace(n, premises=tuple(prems), eigen=new)


def freshen_eigens(p: NDNode, avoid: set) -> NDNode:
    """Make every eigenvariable distinct and outside avoid (inner nodes first)."""
    used = set(avoid) | vars_in(p)

    def go(n):
        if n.is_hyp:
            return n
        n = n.with_premises(go(q) for q in n.premises)
        if n.eigen is not None:
            new = fresh_name(n.eigen, used)
            used.add(new)
            n = rename_eigen(n, new)
        return n
    return go(p)


def clean_dangling(p: NDNode) -> NDNode:
    """Turn named discharges that bind nothing into vacuous ones."""
    if p.is_hyp:
        return p
    prems = tuple(clean_dangling(q) for q in p.premises)
    ds = list(p.discharges)
    for slot, (k, d) in enumerate(zip(_slot_premises(p), ds)):
        if d is not None and not _has_open(prems[k], d):
            ds[slot] = None
    return replace(p, premises=prems, discharges=tuple(ds))


def _has_open(p: NDNode, label: str) -> bool:
    if p.is_hyp:
        return p.label == label
    for i, q in enumerate(p.premises):
        rebound = any(k == i and d == label for k, d in zip(_slot_premises(p), p.discharges))
        if not rebound and _has_open(q, label):
            return True
    return False


def _maybe_subst(p, label, repl):
    return p if label is None else subst_hyp(p, label, repl)


def _reduce(e: NDNode) -> Optional[NDNode]:
    """One conversion at e if e is a redex, else None."""
    if e.is_hyp or e.rule not in ELIM_RULES:
        return None
    m = e.premises[0]
    rest = e.premises[1:]
    # detours
    if e.rule in DETOURS.get(m.rule, ()):
        if m.rule == "AndI":
            if e.rule == "AndE1":
                return m.premises[0]
            if e.rule == "AndE2":
                return m.premises[1]
            c = _maybe_subst(e.premises[1], e.discharges[0], m.premises[0])
            return _maybe_subst(c, e.discharges[1], m.premises[1])
        if m.rule in ("OrI1", "OrI2"):
            k = 0 if m.rule == "OrI1" else 1
            return _maybe_subst(e.premises[1 + k], e.discharges[k], m.premises[0])
        if m.rule == "ImpI":
            body = _maybe_subst(m.premises[0], m.discharges[0], e.premises[1])
            if e.rule == "ImpE":
                return body
            return _maybe_subst(e.premises[2], e.discharges[0], body)
        if m.rule == "NotI":
            return _maybe_subst(m.premises[0], m.discharges[0], e.premises[1])
        if m.rule == "ForallI":
            t = e.term if e.term is not None else instance_term(m.formula, e.formula)
            if t is None:
                t = Var(m.eigen)
            inner = freshen_eigens(m.premises[0], term_vars(t) | {m.eigen})
            return subst_var(inner, m.eigen, t)
        if m.rule == "ExistsI":
            t = m.term if m.term is not None else instance_term(m.formula, m.premises[0].formula)
            y = e.eigen
            minor = freshen_eigens(e.premises[1], (term_vars(t) if t is not None else set()) | {y})
            if t is not None:
                minor = subst_var(minor, y, t)
            return _maybe_subst(minor, e.discharges[0], m.premises[0])
    # bot collapse
    if m.rule == "BotE":
        if isinstance(e.formula, Bottom):
            return m.premises[0]
        return NDNode("BotE", e.formula, (m.premises[0],))
    # permutations
    if m.rule in SEGMENT_RULES:
        minors = {"OrE": (1, 2), "GOrE": (1, 2), "ExistsE": (1,), "GAndE": (1,), "GImpE": (2,)}[m.rule]
        rest_labels = set()
        rest_vars = set(free_vars(e.formula))
        for r in rest:
            rest_labels |= {l for l, _ in open_assumptions(r)}
            rest_vars |= vars_in(r)
        if m.eigen is not None and m.eigen in rest_vars:
            m = rename_eigen(m, fresh_name(m.eigen, rest_vars | vars_in(m)))
        prems = list(m.premises)
        ds = list(m.discharges)
        avoid = labels_in(m) | labels_in(e)
        for slot, (k, d) in enumerate(zip(_slot_premises(m), ds)):
            if d is not None and d in rest_labels:
                new = fresh_name(d, avoid)
                avoid.add(new)
                prems[k] = rename_label(prems[k], d, new)
                ds[slot] = new
        for k in minors:
            prems[k] = replace(e, premises=(prems[k],) + rest)
        return NDNode(m.rule, e.formula, tuple(prems), tuple(ds), eigen=m.eigen, term=m.term)
    return None


def _find_redex(p: NDNode, path=()):
    # post-order, right to left: innermost-rightmost
    for i in reversed(range(len(p.premises))):
        r = _find_redex(p.premises[i], path + (i,))
        if r is not None:
            return r
    red = _reduce(p)
    if red is not None:
        return path, red
    return None


def _replace_at(p: NDNode, path, new: NDNode) -> NDNode:
    if not path:
        return new
    prems = list(p.premises)
    prems[path[0]] = _replace_at(prems[path[0]], path[1:], new)
    return p.with_premises(prems)


@dataclass
class NormalizationResult:
    proof: NDNode
    steps: int
    trace: list = field(default_factory=list)    # (path, rule pair)


def normalize(p: NDNode, rs: Optional[NDRuleset] = None, max_steps: int = 10000,
              trace: bool = False):
    """Prawitz normalization of an NJ proof; returns the normal proof."""
    return normalize_with_trace(p, rs, max_steps).proof


def normalize_with_trace(p: NDNode, rs: Optional[NDRuleset] = None,
                         max_steps: int = 10000) -> NormalizationResult:
    for _, n in nd_walk(p):
        if n.rule in CLASSICAL_RULES:
            raise UnsupportedError("classical residue: not normalizable in this engine "
                                   f"(uses {n.rule})")
        if not n.is_hyp and n.rule not in N_PREMISES:
            raise UnsupportedError(f"rule {n.rule} is not normalizable in this engine")
    rs = NDRuleset(None, True) if rs is None else rs
    rep = check_nd(p, rs)
    if not rep.valid:
        raise ValueError("normalize needs a valid NJ proof: " + "; ".join(m for _, m in rep.diagnostics))
    p = freshen_eigens(p, set()) if eigens_in(p) else p
    steps, log = 0, []
    while True:
        found = _find_redex(p)
        if found is None:
            return NormalizationResult(p, steps, log)
        path, new = found
        if steps >= max_steps:
            raise ResourceLimit(f"normalization exceeded {max_steps} steps")
        old = nd_at(p, path)
        log.append((format_path(path), f"{old.premises[0].rule}/{old.rule}"))
        p = clean_dangling(_replace_at(p, path, new))
        eig = [n.eigen for _, n in nd_walk(p) if n.eigen is not None]
        if len(eig) != len(set(eig)):
            p = freshen_eigens(p, set())
        steps += 1


# ---------------------------------------------------------------- subformula property

def nd_subformula_check(p: NDNode, rs: Optional[NDRuleset] = None) -> SubformulaReport:
    """Every formula must be a subformula-instance of the conclusion or an open assumption."""
    rs = PERMISSIVE if rs is None else rs
    rep = check_nd(p, rs)
    sources = [p.formula] + list(rep.open_assumptions)
    violations = []
    seen = {}
    for path, n in nd_walk(p):
        f = n.formula
        if isinstance(f, Bottom):
            continue
        key = canonical(f)
        if key not in seen:
            seen[key] = any(is_subformula_instance(f, s) for s in sources)
        if not seen[key]:
            where = "hypothesis" if n.is_hyp else f"conclusion of {n.rule}"
            violations.append((format_path(path), f, f"{where} is not a subformula of the end formula "
                                                    "or an open assumption"))
    return SubformulaReport(not violations, violations)


def bote_targets_atomic(p: NDNode) -> bool:
    return all(isinstance(n.formula, (Atom, Bottom)) for _, n in nd_walk(p) if n.rule == "BotE")


# ---------------------------------------------------------------- negation translation

def translate_neg(f: Formula) -> Formula:
    if isinstance(f, Not):
        return Imp(translate_neg(f.body), BOT)
    if isinstance(f, (And, Or, Imp)):
        return type(f)(translate_neg(f.left), translate_neg(f.right))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, translate_neg(f.body))
    if isinstance(f, Custom):
        return Custom(f.connective, tuple(translate_neg(a) for a in f.args))
    return f


# ---------------------------------------------------------------- classical laws

CLASSICAL_FIXTURES = [
    ("NK-DNE", "lem.ndproof"),
    ("NK-LEM", "dne_from_lem.ndproof"),
    ("NK-RAA", "dne_from_raa.ndproof"),
    ("NK-CD", "lem_from_cd.ndproof"),
]


def classical_equivalences() -> list:
    """(ruleset name, theorem, proof) for each classical extension of NJ."""
    from .fixtures import load_fixture

    out = []
    for rs_name, fname in CLASSICAL_FIXTURES:
        doc = load_fixture(fname)
        out.append((rs_name, doc.root.formula, doc.root))
    return out
