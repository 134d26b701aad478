"""Harmony audits for user-defined connectives.

Three checks, each run on instances at distinct fresh atoms:

local soundness      every intro/elim detour can be flattened: the elim's
                     conclusion follows from what the intro premises supply
local completeness   from c(A0..An) the elim rules recover enough to rebuild
                     c(A0..An) with an intro rule
conservativeness     NJ plus the rules proves nothing new in the base
                     vocabulary (certified by a definitional translation, or
                     probed on small sequents)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .connectives import BUILTIN_DEFS, ConnectiveDef, RuleSchema, builtin, define_connective
from .core import (BOT, And, Atom, Bottom, Custom, Formula, Imp, Not, Or, Sequent, SchemaAssignment,
                   atoms_of, canonical, instantiate, is_metavar, match_schema, metavars)
from .decide import SearchBudget, enumerate_formulas, prove_int
from .proofs import NDNode, hyp, nd, nd_walk
from .syntax import print_formula, print_sequent

__all__ = ["define_connective", "builtin", "local_soundness", "local_completeness",
           "conservativeness_audit", "audit", "AuditReport", "Component"]

DEFAULT_POOL = tuple("abcdefgh")


@dataclass
class Component:
    name: str
    passed: bool
    details: list = field(default_factory=list)     # (label, ok, text)
    witness: object = None
    witness_sequent: Optional[Sequent] = None
    note: str = ""

    def to_json(self) -> dict:
        from .syntax import nd_to_json

        out = {"passed": self.passed, "note": self.note,
               "details": [{"case": c, "ok": ok, "info": t} for c, ok, t in self.details]}
        if self.witness_sequent is not None:
            out["witness_sequent"] = print_sequent(self.witness_sequent)
        if isinstance(self.witness, NDNode):
            out["witness_proof"] = nd_to_json(self.witness)
        return out


@dataclass
class AuditReport:
    connective: str
    locally_sound: Component
    locally_complete: Component
    conservative: Component
    elim_subformula: Component

    @property
    def harmonious(self) -> bool:
        return self.locally_sound.passed and self.locally_complete.passed and self.conservative.passed

    @property
    def verdict(self) -> str:
        if self.harmonious:
            return "harmonious"
        failed = [c.name for c in (self.locally_sound, self.locally_complete, self.conservative)
                  if not c.passed]
        return "disharmonious (" + ", ".join(failed) + ")"

    def to_json(self) -> dict:
        return {"connective": self.connective, "verdict": self.verdict,
                "harmonious": self.harmonious,
                "locally_sound": self.locally_sound.to_json(),
                "locally_complete": self.locally_complete.to_json(),
                "conservative": self.conservative.to_json(),
                "elim_subformula": self.elim_subformula.to_json()}

    def to_text(self) -> str:
        lines = [f"connective {self.connective}: {self.verdict}"]
        for c in (self.locally_sound, self.locally_complete, self.conservative, self.elim_subformula):
            lines.append(f"  {c.name}: {'pass' if c.passed else 'FAIL'}" + (f" ({c.note})" if c.note else ""))
            for case, ok, text in c.details:
                lines.append(f"    {'ok ' if ok else 'bad'} {case}: {text}")
        return "\n".join(lines)


# ---------------------------------------------------------------- instantiation helpers

class _Fresh:
    def __init__(self, pool):
        self.pool = list(pool)
        self.i = 0

    def __call__(self) -> Atom:
        if self.i < len(self.pool):
            name = self.pool[self.i]
        else:
            name = f"{self.pool[-1]}{self.i}"
        self.i += 1
        return Atom(name)


def _metas_of_rule(r: RuleSchema) -> list:
    out = []
    fs = [r.conclusion] + [c for _, c in r.premises] + [h for hs, _ in r.premises for h in hs]
    for f in fs:
        for m in sorted(metavars(f)):
            if m not in out:
                out.append(m)
    return out


def _head_args(f: Custom) -> list:
    return [a.name for a in f.args]


def _assign(r: RuleSchema, head: Custom, shared: list, fresh) -> SchemaAssignment:
    """Bind head metavariables positionally to shared atoms, the rest to fresh atoms."""
    s = SchemaAssignment()
    for name, a in zip(_head_args(head), shared):
        s.formula_vars[name] = a
    for m in _metas_of_rule(r):
        if m not in s.formula_vars:
            s.formula_vars[m] = fresh()
    return s


def _grant(hyps, concl) -> Formula:
    f = concl
    for h in reversed(hyps):
        f = Imp(h, f)
    return f


def _intro_head(r: RuleSchema) -> Custom:
    return r.conclusion


def _elim_head(r: RuleSchema) -> Custom:
    return r.premises[r.major or 0][1]


# ---------------------------------------------------------------- local soundness

def local_soundness(d: ConnectiveDef, pool=DEFAULT_POOL) -> Component:
    comp = Component("locally_sound", True)
    if not d.intros or not d.elims:
        comp.note = "nothing to pair (no intro or no elim rules)"
        return comp
    for I in d.intros:
        for E in d.elims:
            fresh = _Fresh(pool)
            shared = [fresh() for _ in range(d.arity)]
            si = _assign(I, _intro_head(I), shared, fresh)
            se = _assign(E, _elim_head(E), shared, fresh)
            grants = [_grant([instantiate(h, si) for h in hs], instantiate(c, si)) for hs, c in I.premises]
            grants += [_grant([instantiate(h, se) for h in hs], instantiate(c, se))
                       for k, (hs, c) in enumerate(E.premises) if k != (E.major or 0)]
            goal = instantiate(E.conclusion, se)
            s = Sequent(tuple(grants), (goal,))
            v = prove_int(s)
            ok = v.proved
            case = f"{I.name}/{E.name}"
            comp.details.append((case, ok, print_sequent(s) + (" derivable" if ok else " not derivable")))
            if ok and comp.witness is None:
                comp.witness = v.proof
            if not ok:
                if comp.passed:
                    comp.witness, comp.witness_sequent = None, s
                comp.passed = False
    return comp


# ---------------------------------------------------------------- local completeness

class _RuleSearch:
    """Bounded goal-directed search using only the connective's own rules.

    The hypothesis ``h0`` (the connective formula) may only feed an elim as its
    major premise, so the trivial one-line proof is excluded.
    """

    def __init__(self, d: ConnectiveDef, top: Formula, pool_atoms: list, max_nodes=20000):
        self.d = d
        self.top = top
        self.cands = pool_atoms
        self.nodes = 0
        self.max_nodes = max_nodes
        self.labels = 0

    def fresh_label(self) -> str:
        self.labels += 1
        return f"d{self.labels}"

    def search(self, depth) -> Optional[NDNode]:
        self.labels = 0
        for k in range(1, depth + 1):
            p = self.goal(self.top, (), k, need_intro=True)
            if p is not None:
                return p
        return None

    def _budget(self):
        self.nodes += 1
        return self.nodes <= self.max_nodes

    def goal(self, g, hyps, depth, need_intro=False):
        if depth <= 0 or not self._budget():
            return None
        if not need_intro:
            for lab, f in hyps:
                if canonical(f) == canonical(g):
                    return hyp(lab, f)
        for r in self.d.intros:
            s = match_schema(r.conclusion, g)
            if s is None:
                continue
            p = self.apply(r, s, g, hyps, depth, major=None)
            if p is not None:
                return p
        for r in self.d.elims:
            s = match_schema(r.conclusion, g)
            if s is None:
                continue
            p = self.apply(r, s, g, hyps, depth, major=r.major or 0)
            if p is not None and (not need_intro or self.uses_intro(p)):
                return p
        return None

    def uses_intro(self, p) -> bool:
        names = {r.name for r in self.d.intros}
        return any(n.rule in names for _, n in nd_walk(p))

    def apply(self, r, s, g, hyps, depth, major):
        unbound = [m for m in _metas_of_rule(r) if m not in s.formula_vars]
        for combo in itertools.product(self.cands, repeat=len(unbound)):
            s2 = s.copy()
            for m, a in zip(unbound, combo):
                s2.formula_vars[m] = a
            prems, discharges = [], []
            ok = True
            for k, (hs, c) in enumerate(r.premises):
                target = instantiate(c, s2)
                if major is not None and k == major and canonical(target) == canonical(self.top):
                    prems.append(hyp("h0", self.top))
                    continue
                new = []
                for h in hs:
                    lab = self.fresh_label()
                    new.append((lab, instantiate(h, s2)))
                    discharges.append(lab)
                p = self.goal(target, hyps + tuple(new), depth - 1)
                if p is None:
                    ok = False
                    break
                prems.append(p)
            if ok:
                return nd(r.name, g, *prems, discharges=tuple(discharges))
        return None


def local_completeness(d: ConnectiveDef, depth: int = 6, pool=DEFAULT_POOL) -> Component:
    from .natded import check_nd, ruleset

    comp = Component("locally_complete", False)
    if not d.intros or not d.elims:
        comp.note = "needs both intro and elim rules"
        return comp
    fresh = _Fresh(pool)
    atoms = [fresh() for _ in range(d.arity)]
    top = Custom(d.name, tuple(atoms))
    eng = _RuleSearch(d, top, atoms + [fresh()])
    p = eng.search(depth)
    if p is None:
        comp.details.append((print_formula(top), False, f"no expansion within depth {depth}"))
        comp.note = "elimination rules too weak to rebuild the connective"
        return comp
    rep = check_nd(p, ruleset("NJ", connectives=[d]))
    opens_ok = all(canonical(f) == canonical(top) for f in rep.open_assumptions)
    comp.passed = rep.valid and opens_ok and canonical(rep.conclusion) == canonical(top)
    comp.witness = p
    comp.details.append((print_formula(top), comp.passed,
                         f"expansion with {sum(1 for _, n in nd_walk(p) if not n.is_hyp)} rule nodes"))
    if not comp.passed:
        comp.note = "expansion failed kernel re-check: " + "; ".join(m for _, m in rep.diagnostics)
    return comp


# ---------------------------------------------------------------- conservativeness

def _translate(f: Formula, name: str, phi: Formula) -> Formula:
    if isinstance(f, Custom):
        args = [_translate(a, name, phi) for a in f.args]
        if f.connective == name:
            s = SchemaAssignment({f"A{k}": a for k, a in enumerate(args)})
            return instantiate(phi, s)
        return Custom(f.connective, tuple(args))
    if isinstance(f, Not):
        return Not(_translate(f.body, name, phi))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(_translate(f.left, name, phi), _translate(f.right, name, phi))
    return f


def _definitions(arity: int, max_nodes: int = 2):
    """Candidate base-vocabulary definitions over A0..A(n-1), smallest first."""
    names = [f"A{k}" for k in range(arity)]
    seen = set()
    for f in itertools.chain([BOT], enumerate_formulas(max_nodes, names) if names else []):
        k = canonical(f)
        if k not in seen:
            seen.add(k)
            yield f


def definitional_certificate(d: ConnectiveDef, pool=DEFAULT_POOL) -> Optional[Formula]:
    """A base formula φ such that every rule of d is NJ-derivable reading c as φ."""
    for phi in _definitions(d.arity):
        ok = True
        for r in d.rules():
            fresh = _Fresh(pool)
            s = SchemaAssignment({m: fresh() for m in _metas_of_rule(r)})
            tr = lambda f: _translate(instantiate(f, s), d.name, phi)   # noqa: E731
            grants = [_grant([tr(h) for h in hs], tr(c)) for hs, c in r.premises]
            if not prove_int(Sequent(tuple(grants), (tr(r.conclusion),)), kernel=False).proved:
                ok = False
                break
        if ok:
            return phi
    return None


class _ExtSearch:
    """Bounded ND search in NJ plus the connective's rules."""

    def __init__(self, d: ConnectiveDef, cands: list, max_nodes: int):
        self.d = d
        self.cands = cands
        self.max_nodes = max_nodes
        self.nodes = 0
        self.labels = 0

    def label(self):
        self.labels += 1
        return f"e{self.labels}"

    def run(self, s: Sequent, depth: int) -> Optional[NDNode]:
        hyps = tuple((f"g{i + 1}", f) for i, f in enumerate(s.antecedent))
        goal = s.succedent[0] if s.succedent else BOT
        for k in range(1, depth + 1):
            self.labels = 0
            p = self.goal(goal, hyps, k)
            if p is not None or self.nodes > self.max_nodes:
                return p
        return None

    def goal(self, g, hyps, depth) -> Optional[NDNode]:
        if depth <= 0:
            return None
        self.nodes += 1
        if self.nodes > self.max_nodes:
            return None
        for lab, f in hyps:
            if canonical(f) == canonical(g):
                return hyp(lab, f)
        for lab, f in hyps:
            if isinstance(f, Bottom):
                return nd("BotE", g, hyp(lab, f))
        if isinstance(g, Imp):
            lab = self.label()
            p = self.goal(g.right, hyps + ((lab, g.left),), depth - 1)
            return None if p is None else nd("ImpI", g, p, discharges=(lab,))
        if isinstance(g, Not):
            lab = self.label()
            p = self.goal(BOT, hyps + ((lab, g.body),), depth - 1)
            return None if p is None else nd("NotI", g, p, discharges=(lab,))
        if isinstance(g, And):
            a = self.goal(g.left, hyps, depth - 1)
            b = a and self.goal(g.right, hyps, depth - 1)
            return nd("AndI", g, a, b) if a and b else None
        if isinstance(g, Or):
            for rule, part in (("OrI1", g.left), ("OrI2", g.right)):
                p = self.goal(part, hyps, depth - 1)
                if p is not None:
                    return nd(rule, g, p)
        for lab, f in hyps:
            p = self.from_hyp(lab, f, g, hyps, depth)
            if p is not None:
                return p
        for r in self.d.intros:
            s = match_schema(r.conclusion, g)
            if s is not None:
                p = self.custom(r, s, g, hyps, depth)
                if p is not None:
                    return p
        for r in self.d.elims:
            s = match_schema(r.conclusion, g)
            if s is not None:
                p = self.custom(r, s, g, hyps, depth)
                if p is not None:
                    return p
        return None

    def from_hyp(self, lab, f, g, hyps, depth):
        h = hyp(lab, f)
        key = canonical(g)
        if isinstance(f, And):
            if canonical(f.left) == key:
                return nd("AndE1", g, h)
            if canonical(f.right) == key:
                return nd("AndE2", g, h)
        if isinstance(f, Imp) and canonical(f.right) == key:
            a = self.goal(f.left, hyps, depth - 1)
            if a is not None:
                return nd("ImpE", g, h, a)
        if isinstance(f, Not) and isinstance(g, Bottom):
            a = self.goal(f.body, hyps, depth - 1)
            if a is not None:
                return nd("NotE", g, h, a)
        if isinstance(f, Or):
            l1, l2 = self.label(), self.label()
            rest = tuple(x for x in hyps if x[0] != lab)
            a = self.goal(g, rest + ((l1, f.left),), depth - 1)
            b = a and self.goal(g, rest + ((l2, f.right),), depth - 1)
            if a and b:
                return nd("OrE", g, h, a, b, discharges=(l1, l2))
        return None

    def custom(self, r, s, g, hyps, depth):
        unbound = [m for m in _metas_of_rule(r) if m not in s.formula_vars]
        for combo in itertools.product(self.cands, repeat=len(unbound)):
            s2 = s.copy()
            for m, a in zip(unbound, combo):
                s2.formula_vars[m] = a
            prems, discharges = [], []
            for hs, c in r.premises:
                new = []
                for hf in hs:
                    lab = self.label()
                    new.append((lab, instantiate(hf, s2)))
                    discharges.append(lab)
                p = self.goal(instantiate(c, s2), hyps + tuple(new), depth - 1)
                if p is None:
                    break
                prems.append(p)
            else:
                return nd(r.name, g, *prems, discharges=tuple(discharges))
        return None


def _probes(probe_size: int):
    p, q = Atom("p"), Atom("q")
    yield Sequent((p,), (q,))
    for f in enumerate_formulas(probe_size, ["p", "q"]):
        yield Sequent((), (f,))


def conservativeness_audit(d: ConnectiveDef, probe_size: int = 4, depth: int = 8,
                           certificate: bool = True, max_probes: Optional[int] = None,
                           probe_nodes: int = 400) -> Component:
    from .natded import check_nd, ruleset

    comp = Component("conservative", True)
    rs = ruleset("NJ", connectives=[d])
    # the p => q probe always runs first: it is the cheapest way to see a collapse
    phi = definitional_certificate(d) if certificate else None
    probes = list(itertools.islice(_probes(probe_size), 1)) if phi is not None else _probes(probe_size)
    tried = 0
    for s in probes:
        if max_probes is not None and tried >= max_probes:
            break
        tried += 1
        if prove_int(s, kernel=False).proved:
            continue
        atoms = sorted({a for f in s.formulas() for a in atoms_of(f)} | {"p", "q"})
        eng = _ExtSearch(d, [Atom(a) for a in atoms], probe_nodes)
        proof = eng.run(s, depth)
        if proof is None:
            continue
        rep = check_nd(proof, rs)
        opens_ok = all(any(canonical(a) == canonical(b) for b in s.antecedent)
                       for a in rep.open_assumptions)
        if rep.valid and opens_ok:
            comp.passed = False
            comp.witness, comp.witness_sequent = proof, s
            n = sum(1 for _, x in nd_walk(proof) if not x.is_hyp)
            comp.details.append((print_sequent(s), False,
                                 f"derivable with {n} rule nodes in NJ+{d.name}, not in NJ"))
            comp.note = f"new base theorem {print_sequent(s)}"
            return comp
    if phi is not None:
        comp.note = f"definitional translation {d.name}({', '.join(f'A{k}' for k in range(d.arity))}) := " \
                    f"{print_formula(phi)}"
        comp.details.append(("certificate", True, comp.note))
    else:
        comp.note = f"no new theorem among {tried} probes (formulas <= {probe_size} nodes, depth {depth})"
    return comp


# ---------------------------------------------------------------- elimination subformula check

def _is_sub(sub: Formula, sup: Formula) -> bool:
    if canonical(sub) == canonical(sup):
        return True
    if isinstance(sup, Custom):
        return any(_is_sub(sub, a) for a in sup.args)
    if isinstance(sup, Not):
        return _is_sub(sub, sup.body)
    if isinstance(sup, (And, Or, Imp)):
        return _is_sub(sub, sup.left) or _is_sub(sub, sup.right)
    return False


def elim_subformula_check(d: ConnectiveDef) -> Component:
    """Each elim's conclusion and discharged hypotheses come from inside the major premise.

    A metavariable absent from the major premise (the C of ∨E) is a free
    parameter and is exempt.  This is informational and not part of the verdict.
    """
    comp = Component("elim_subformula", True)
    for r in d.elims:
        major = _elim_head(r)
        params = set(_metas_of_rule(r)) - metavars(major)
        checks = [("conclusion", r.conclusion)] + [("discharged", h) for hs, _ in r.premises for h in hs]
        for what, f in checks:
            if is_metavar(f) and f.name in params:
                continue
            if not _is_sub(f, major):
                comp.passed = False
                comp.details.append((r.name, False, f"{what} {print_formula(f)} is not a subformula of "
                                                    f"the major premise {print_formula(major)}"))
    if comp.passed:
        comp.note = "all elimination outputs lie inside the major premise"
    return comp


def audit(d: ConnectiveDef, probe_size: int = 4, depth: int = 8, pool=DEFAULT_POOL) -> AuditReport:
    return AuditReport(d.name, local_soundness(d, pool), local_completeness(d, pool=pool),
                       conservativeness_audit(d, probe_size, depth), elim_subformula_check(d))


def builtin_defs() -> dict:
    return {k: builtin(k) for k in BUILTIN_DEFS}
