"""Decision procedures and oracles for propositional goals.

truth_table_valid   exhaustive classical evaluation
prove_lk            cut-free classical search (G3c), rendered as a G1 proof
prove_int           Dyckhoff's contraction-free calculus (G4ip), rendered as an NJ proof
prove_fragment      the same intuitionistic engine limited to a connective fragment

Every Proved verdict carries a proof that has already been re-checked by the
kernel (check_sk or check_nd).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import (BOT, And, Atom, Bottom, Custom, Formula, Imp, Not, Or, Sequent, atoms_of,
                   canonical, is_propositional)
from .errors import ProofbenchError, ResourceLimit, UnsupportedError
from .proofs import NDNode, SKNode, hyp, nd
from .syntax import parse_formula, parse_sequent, print_formula

FRAGMENT_NAMES = {
    "and": "and", "conj": "and", "&": "and", "∧": "and",
    "or": "or", "disj": "or", "|": "or", "∨": "or",
    "imp": "imp", "->": "imp", "→": "imp",
    "not": "not", "neg": "not", "~": "not", "¬": "not",
    "bot": "bot", "⊥": "bot",
}
ALL_FRAGMENT = frozenset({"and", "or", "imp", "not", "bot"})


class VocabularyError(ProofbenchError):
    """Goal mentions a connective outside the requested fragment."""


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 10_000
    max_nodes: int = 1_000_000
    fragment: Optional[frozenset] = None

    def __post_init__(self):
        if self.max_depth <= 0 or self.max_nodes <= 0:
            raise ValueError("search bounds must be positive")
        if self.fragment is not None:
            object.__setattr__(self, "fragment", parse_fragment(self.fragment))


def parse_fragment(spec) -> frozenset:
    items = spec.split(",") if isinstance(spec, str) else list(spec)
    out = set()
    for it in items:
        it = it.strip()
        if not it:
            continue
        if it not in FRAGMENT_NAMES:
            raise ValueError(f"unknown fragment connective {it!r}")
        out.add(FRAGMENT_NAMES[it])
    return frozenset(out)


@dataclass
class Verdict:
    status: str                        # proved | refuted | exhausted
    proof: object = None
    countermodel: Optional[dict] = None
    note: str = ""
    goal: Optional[Sequent] = None
    stats: dict = field(default_factory=dict)

    @property
    def proved(self) -> bool:
        return self.status == "proved"

    @property
    def refuted(self) -> bool:
        return self.status == "refuted"

    @property
    def exhausted(self) -> bool:
        return self.status == "exhausted"


def as_sequent(goal) -> Sequent:
    if isinstance(goal, Sequent):
        return goal
    if isinstance(goal, Formula):
        return Sequent((), (goal,))
    if isinstance(goal, str):
        return parse_sequent(goal) if "=>" in goal else Sequent((), (parse_formula(goal),))
    raise TypeError(f"cannot read a goal from {type(goal).__name__}")


def _propositional(s: Sequent, allow_custom=False):
    for f in s.formulas():
        if not is_propositional(f):
            raise UnsupportedError(f"not propositional: {print_formula(f)}")
        if not allow_custom and _has_custom(f):
            raise UnsupportedError(f"user-defined connective in {print_formula(f)}")


def _has_custom(f: Formula) -> bool:
    if isinstance(f, Custom):
        return True
    return any(_has_custom(g) for g in _kids(f))


def _kids(f):
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (And, Or, Imp)):
        return (f.left, f.right)
    return ()


# ---------------------------------------------------------------- truth tables

def evaluate(f: Formula, v: dict) -> bool:
    if isinstance(f, Atom):
        return v[f.name]
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not evaluate(f.body, v)
    if isinstance(f, And):
        return evaluate(f.left, v) and evaluate(f.right, v)
    if isinstance(f, Or):
        return evaluate(f.left, v) or evaluate(f.right, v)
    if isinstance(f, Imp):
        return (not evaluate(f.left, v)) or evaluate(f.right, v)
    raise UnsupportedError(f"cannot evaluate {print_formula(f)}")


def sequent_atoms(s: Sequent) -> list:
    out = set()
    for f in s.formulas():
        out |= set(atoms_of(f))
    return sorted(out)


def truth_table_valid(goal) -> Verdict:
    """Classical validity by exhaustive evaluation; the first falsifying row is returned."""
    s = as_sequent(goal)
    _propositional(s)
    names = sequent_atoms(s)
    for row in itertools.product((False, True), repeat=len(names)):
        v = dict(zip(names, row))
        if all(evaluate(f, v) for f in s.antecedent) and not any(evaluate(f, v) for f in s.succedent):
            return Verdict("refuted", countermodel=v, goal=s)
    return Verdict("proved", note="valid on all assignments", goal=s)


# ---------------------------------------------------------------- classical search

def _is_atomic(f) -> bool:
    return isinstance(f, (Atom, Bottom))


class _LK:
    def __init__(self, b: SearchBudget):
        self.b = b
        self.nodes = 0

    def run(self, ant: tuple, suc: tuple, depth=0):
        """(proof, None) or (None, countermodel)."""
        from .sequent import fit

        self.nodes += 1
        if self.nodes > self.b.max_nodes or depth > self.b.max_depth:
            raise ResourceLimit("classical search budget exhausted")
        target = Sequent(ant, suc)
        if any(isinstance(f, Bottom) for f in ant):
            return fit(SKNode("LBot", Sequent((BOT,), ())), target), None
        for f in ant:
            if isinstance(f, Atom) and f in suc:
                return fit(SKNode("Ax", Sequent((f,), (f,))), target), None
        for i, X in enumerate(ant):
            if _is_atomic(X):
                continue
            rest = ant[:i] + ant[i + 1:]
            if isinstance(X, And):
                p, cm = self.run((X.left, X.right) + rest, suc, depth + 1)
                if p is None:
                    return None, cm
                s1 = SKNode("LAnd1", Sequent((X, X.right) + rest, suc), (p,))
                s2 = SKNode("LAnd2", Sequent((X, X) + rest, suc), (s1,))
                return SKNode("LC", target, (s2,)), None
            if isinstance(X, Or):
                p1, cm = self.run((X.left,) + rest, suc, depth + 1)
                if p1 is None:
                    return None, cm
                p2, cm = self.run((X.right,) + rest, suc, depth + 1)
                if p2 is None:
                    return None, cm
                return SKNode("LOr", target, (p1, p2)), None
            if isinstance(X, Imp):
                p1, cm = self.run(rest, suc + (X.left,), depth + 1)
                if p1 is None:
                    return None, cm
                p2, cm = self.run((X.right,) + rest, suc, depth + 1)
                if p2 is None:
                    return None, cm
                return SKNode("LImp", target, (p1, p2)), None
            if isinstance(X, Not):
                p, cm = self.run(rest, suc + (X.body,), depth + 1)
                if p is None:
                    return None, cm
                return SKNode("LNot", target, (p,)), None
        for i, Y in enumerate(suc):
            if _is_atomic(Y):
                continue
            rest = suc[:i] + suc[i + 1:]
            if isinstance(Y, And):
                p1, cm = self.run(ant, rest + (Y.left,), depth + 1)
                if p1 is None:
                    return None, cm
                p2, cm = self.run(ant, rest + (Y.right,), depth + 1)
                if p2 is None:
                    return None, cm
                return SKNode("RAnd", target, (p1, p2)), None
            if isinstance(Y, Or):
                p, cm = self.run(ant, rest + (Y.left, Y.right), depth + 1)
                if p is None:
                    return None, cm
                s1 = SKNode("ROr1", Sequent(ant, rest + (Y, Y.right)), (p,))
                s2 = SKNode("ROr2", Sequent(ant, rest + (Y, Y)), (s1,))
                return SKNode("RC", target, (s2,)), None
            if isinstance(Y, Imp):
                p, cm = self.run((Y.left,) + ant, rest + (Y.right,), depth + 1)
                if p is None:
                    return None, cm
                return SKNode("RImp", target, (p,)), None
            if isinstance(Y, Not):
                p, cm = self.run((Y.body,) + ant, rest, depth + 1)
                if p is None:
                    return None, cm
                return SKNode("RNot", target, (p,)), None
        # open atomic leaf: make the antecedent atoms true, everything else false
        true = {f.name for f in ant if isinstance(f, Atom)}
        return None, true


def prove_lk(goal, b: Optional[SearchBudget] = None, kernel: bool = True) -> Verdict:
    from .sequent import check_sk

    s = as_sequent(goal)
    _propositional(s)
    b = SearchBudget() if b is None else b
    eng = _LK(b)
    try:
        proof, true = eng.run(tuple(s.antecedent), tuple(s.succedent))
    except ResourceLimit as e:
        return Verdict("exhausted", note=str(e), goal=s, stats={"nodes": eng.nodes})
    stats = {"nodes": eng.nodes}
    if proof is None:
        cm = {a: a in true for a in sequent_atoms(s)}
        return Verdict("refuted", countermodel=cm, goal=s, stats=stats)
    if kernel:
        rep = check_sk(proof)
        if not rep.valid or proof.sequent != s:
            raise AssertionError(f"classical search produced an invalid proof: {rep.diagnostics}")
    return Verdict("proved", proof=proof, goal=s, stats=stats)


# ---------------------------------------------------------------- intuitionistic search (G4ip)

def _imp_parts(f):
    """(antecedent, consequent) of an implication-like formula; ¬A reads as A → ⊥."""
    if isinstance(f, Imp):
        return f.left, f.right
    if isinstance(f, Not):
        return f.body, BOT
    return None


def _mk_imp(a, b, neg):
    return Not(a) if neg else Imp(a, b)


def _sort_key(f):
    return repr(canonical(f))


class _G4:
    """Backward search; derivations are nested tuples translated to NJ afterwards."""

    def __init__(self, b: SearchBudget, efq: bool = True):
        self.b = b
        self.efq = efq
        self.memo = {}
        self.nodes = 0

    def atomic(self, f) -> bool:
        if isinstance(f, (Atom, Custom)):
            return True
        return isinstance(f, Bottom) and not self.efq

    def prove(self, gamma: frozenset, goal, depth=0):
        key = (gamma, goal)
        if key in self.memo:
            return self.memo[key]
        self.nodes += 1
        if self.nodes > self.b.max_nodes or depth > self.b.max_depth:
            raise ResourceLimit("intuitionistic search budget exhausted")
        self.memo[key] = None          # cycles cannot arise, but stay safe
        d = self._prove(gamma, goal, depth)
        self.memo[key] = d
        return d

    def _prove(self, gamma, goal, depth):
        nxt = depth + 1
        if goal in gamma:
            return ("ax", goal)
        if self.efq and BOT in gamma:
            return ("botL", goal)
        ip = _imp_parts(goal)
        if ip is not None:
            d = self.prove(gamma | {ip[0]}, ip[1], nxt)
            return None if d is None else ("impR", goal, d)
        if isinstance(goal, And):
            d1 = self.prove(gamma, goal.left, nxt)
            if d1 is None:
                return None
            d2 = self.prove(gamma, goal.right, nxt)
            return None if d2 is None else ("andR", goal, d1, d2)
        ordered = sorted(gamma, key=_sort_key)
        for X in ordered:
            rest = gamma - {X}
            if isinstance(X, And):
                d = self.prove(rest | {X.left, X.right}, goal, nxt)
                return None if d is None else ("andL", X, d)
            if isinstance(X, Or):
                d1 = self.prove(rest | {X.left}, goal, nxt)
                if d1 is None:
                    return None
                d2 = self.prove(rest | {X.right}, goal, nxt)
                return None if d2 is None else ("orL", X, d1, d2)
            ip = _imp_parts(X)
            if ip is None:
                continue
            a, b = ip
            neg = isinstance(X, Not)
            if self.atomic(a) and a in gamma:
                d = self.prove(rest | {b}, goal, nxt)
                return None if d is None else ("l0", X, a, d)
            if isinstance(a, And):
                Y = Imp(a.left, _mk_imp(a.right, b, neg))
                d = self.prove(rest | {Y}, goal, nxt)
                return None if d is None else ("landimp", X, Y, d)
            if isinstance(a, Or):
                Y1, Y2 = _mk_imp(a.left, b, neg), _mk_imp(a.right, b, neg)
                d = self.prove(rest | {Y1, Y2}, goal, nxt)
                return None if d is None else ("lorimp", X, Y1, Y2, d)
            if isinstance(a, Bottom) and self.efq:
                d = self.prove(rest, goal, nxt)
                return None if d is None else ("lbotimp", X, d)
        if isinstance(goal, Or):
            d = self.prove(gamma, goal.left, nxt)
            if d is not None:
                return ("orR1", goal, d)
            d = self.prove(gamma, goal.right, nxt)
            if d is not None:
                return ("orR2", goal, d)
        for X in ordered:
            ip = _imp_parts(X)
            if ip is None:
                continue
            a, b = ip
            inner = _imp_parts(a)
            if inner is None:
                continue
            c, dd = inner
            Y = _mk_imp(dd, b, isinstance(X, Not))
            rest = gamma - {X}
            d1 = self.prove(rest | {Y}, a, nxt)
            if d1 is None:
                continue
            d2 = self.prove(rest | {b}, goal, nxt)
            if d2 is not None:
                return ("limpimp", X, Y, d1, d2)
        return None


class _ToNJ:
    """Derivation of Γ ⇒ G into an NJ proof of G whose open hypotheses lie in Γ."""

    def __init__(self):
        self.labels = {}

    def lab(self, f) -> str:
        k = canonical(f)
        if k not in self.labels:
            self.labels[k] = f"h{len(self.labels) + 1}"
        return self.labels[k]

    def h(self, f) -> NDNode:
        return hyp(self.lab(f), f)

    def app(self, major: NDNode, arg: NDNode, X) -> NDNode:
        if isinstance(X, Not):
            return nd("NotE", BOT, major, arg)
        return nd("ImpE", X.right, major, arg)

    def abst(self, target, a, body: NDNode) -> NDNode:
        if isinstance(target, Not):
            return nd("NotI", target, body, discharges=(self.lab(a),))
        return nd("ImpI", target, body, discharges=(self.lab(a),))

    def sub(self, p: NDNode, f, repl: NDNode) -> NDNode:
        from .natded import subst_hyp
        return subst_hyp(p, self.lab(f), repl)

    def tr(self, d) -> NDNode:
        kind = d[0]
        if kind == "ax":
            return self.h(d[1])
        if kind == "botL":
            g = d[1]
            return self.h(BOT) if isinstance(g, Bottom) else nd("BotE", g, self.h(BOT))
        if kind == "impR":
            g, sub = d[1], d[2]
            return self.abst(g, _imp_parts(g)[0], self.tr(sub))
        if kind == "andR":
            return nd("AndI", d[1], self.tr(d[2]), self.tr(d[3]))
        if kind == "orR1":
            return nd("OrI1", d[1], self.tr(d[2]))
        if kind == "orR2":
            return nd("OrI2", d[1], self.tr(d[2]))
        if kind == "andL":
            X, p = d[1], self.tr(d[2])
            p = self.sub(p, X.left, nd("AndE1", X.left, self.h(X)))
            return self.sub(p, X.right, nd("AndE2", X.right, self.h(X)))
        if kind == "orL":
            X, p1, p2 = d[1], self.tr(d[2]), self.tr(d[3])
            l1, l2 = self.lab(X.left), self.lab(X.right)
            if l1 == l2:
                # A | A: the two slots need distinct labels
                from .natded import rename_label
                l2 = l1 + "r"
                p2 = rename_label(p2, l1, l2)
            return nd("OrE", p1.formula, self.h(X), p1, p2, discharges=(l1, l2))
        if kind == "l0":
            X, a, p = d[1], d[2], self.tr(d[3])
            return self.sub(p, _imp_parts(X)[1], self.app(self.h(X), self.h(a), X))
        if kind == "landimp":
            X, Y, p = d[1], d[2], self.tr(d[3])
            a = _imp_parts(X)[0]
            inner = Y.right
            body = self.app(self.h(X), nd("AndI", a, self.h(a.left), self.h(a.right)), X)
            proof_y = self.abst(Y, a.left, self.abst(inner, a.right, body))
            return self.sub(p, Y, proof_y)
        if kind == "lorimp":
            X, Y1, Y2, p = d[1], d[2], d[3], self.tr(d[4])
            a = _imp_parts(X)[0]
            y1 = self.abst(Y1, a.left, self.app(self.h(X), nd("OrI1", a, self.h(a.left)), X))
            y2 = self.abst(Y2, a.right, self.app(self.h(X), nd("OrI2", a, self.h(a.right)), X))
            return self.sub(self.sub(p, Y1, y1), Y2, y2)
        if kind == "lbotimp":
            return self.tr(d[2])
        if kind == "limpimp":
            X, Y, d1, d2 = d[1], d[2], d[3], d[4]
            a, b = _imp_parts(X)
            c, dd = _imp_parts(a)
            # Y = D → B from X: λd. X (λc. d)
            lam_c = self.abst_vacuous(a, self.h(dd))
            proof_y = self.abst(Y, dd, self.app(self.h(X), lam_c, X))
            p1 = self.sub(self.tr(d1), Y, proof_y)
            proof_b = self.app(self.h(X), p1, X)
            return self.sub(self.tr(d2), b, proof_b)
        raise ValueError(f"unknown derivation step {kind}")

    def abst_vacuous(self, target, body: NDNode) -> NDNode:
        rule = "NotI" if isinstance(target, Not) else "ImpI"
        return nd(rule, target, body, discharges=(None,))


def _vocabulary(s: Sequent) -> set:
    names = {And: "and", Or: "or", Imp: "imp", Not: "not"}
    out = set()

    def go(f):
        if isinstance(f, Bottom):
            out.add("bot")
        for cls, n in names.items():
            if isinstance(f, cls):
                out.add(n)
        for g in _kids(f):
            go(g)
    for f in s.formulas():
        go(f)
    return out


def _int_search(s: Sequent, b: SearchBudget, efq: bool, allow_custom: bool) -> Verdict:
    from .natded import NJ, check_nd, clean_dangling

    _propositional(s, allow_custom=allow_custom)
    if len(s.succedent) > 1:
        raise UnsupportedError("intuitionistic search takes at most one succedent formula")
    goal = s.succedent[0] if s.succedent else BOT
    eng = _G4(b, efq=efq)
    try:
        d = eng.prove(frozenset(s.antecedent), goal)
    except ResourceLimit as e:
        return Verdict("exhausted", note=str(e), goal=s, stats={"nodes": eng.nodes})
    stats = {"nodes": eng.nodes}
    if d is None:
        tt = None
        if not allow_custom or not any(_has_custom(f) for f in s.formulas()):
            tt = truth_table_valid(s)
        if tt is not None and tt.refuted:
            return Verdict("refuted", countermodel=tt.countermodel, goal=s, stats=stats,
                           note="classical countermodel")
        return Verdict("refuted", goal=s, stats=stats,
                       note="search space exhausted without proof (no classical countermodel)")
    proof = clean_dangling(_ToNJ().tr(d))
    return Verdict("proved", proof=proof, goal=s, stats=stats)


def _kernel_nd(v: Verdict, rs=None):
    from .natded import NJ, check_nd

    if not v.proved:
        return v
    rs = NJ if rs is None else rs
    rep = check_nd(v.proof, rs)
    opens_ok = all(any(canonical(a) == canonical(g) for g in v.goal.antecedent)
                   for a in rep.open_assumptions)
    goal = v.goal.succedent[0] if v.goal.succedent else BOT
    if not rep.valid or not opens_ok or canonical(rep.conclusion) != canonical(goal):
        raise AssertionError(f"intuitionistic search produced an invalid proof: {rep.diagnostics}")
    return v


def prove_int(goal, b: Optional[SearchBudget] = None, kernel: bool = True) -> Verdict:
    s = as_sequent(goal)
    v = _int_search(s, SearchBudget() if b is None else b, efq=True, allow_custom=True)
    return _kernel_nd(v) if kernel else v


def prove_fragment(goal, b: SearchBudget, kernel: bool = True) -> Verdict:
    """Intuitionistic search using only the rules of the fragment's connectives.

    Without ``bot`` in the fragment there is no ex falso, so negation is minimal.
    """
    s = as_sequent(goal)
    frag = ALL_FRAGMENT if b.fragment is None else b.fragment
    vocab = _vocabulary(s)
    # ⊥ may occur as the body of ¬ without enabling ex falso
    extra = vocab - frag - ({"bot"} if "not" in frag else set())
    if extra:
        raise VocabularyError(f"goal uses {', '.join(sorted(extra))} outside fragment "
                              f"{{{', '.join(sorted(frag))}}}")
    v = _int_search(s, b, efq="bot" in frag, allow_custom=False)
    if v.refuted:
        v.note = "no proof in the fragment (terminating search)"
        v.countermodel = v.countermodel if "bot" in frag else v.countermodel
    if v.proved and kernel:
        _kernel_nd(v)
        used = {n.rule for _, n in _walk(v.proof)}
        allowed = _fragment_rules(frag)
        if not used <= allowed:
            raise AssertionError(f"fragment search used rules {sorted(used - allowed)}")
    return v


def _walk(p):
    from .proofs import nd_walk
    return ((path, n) for path, n in nd_walk(p) if not n.is_hyp)


def _fragment_rules(frag) -> set:
    table = {"and": {"AndI", "AndE1", "AndE2"}, "or": {"OrI1", "OrI2", "OrE"},
             "imp": {"ImpI", "ImpE"}, "not": {"NotI", "NotE"}, "bot": {"BotE"}}
    out = set()
    for c in frag:
        out |= table[c]
    return out


def prove(goal, logic: str = "classical", b: Optional[SearchBudget] = None) -> Verdict:
    if logic == "classical":
        return prove_lk(goal, b)
    if logic == "intuitionistic":
        return prove_int(goal, b) if b is None or b.fragment is None else prove_fragment(goal, b)
    raise ValueError(f"unknown logic {logic!r}")


# ---------------------------------------------------------------- oracle-equivalence harness

class KripkeBank:
    """A fixed family of finite Kripke models used as a semantic fingerprint.

    Values are per-model bitmasks of the worlds forcing a formula.  The four
    one-world models come first, so the fingerprint contains the truth table.
    """

    def __init__(self, atoms, n_random: int = 48, seed: int = 0):
        import random

        rng = random.Random(seed)
        self.atoms = list(atoms)
        models = []
        for row in itertools.product((0, 1), repeat=len(self.atoms)):
            models.append((1, (1,), tuple(row)))
        for _ in range(n_random):
            n = rng.randint(2, 6)
            le = [[i == j or (i < j and rng.random() < 0.4) for j in range(n)] for i in range(n)]
            for k in range(n):
                for i in range(n):
                    for j in range(n):
                        if le[i][k] and le[k][j]:
                            le[i][j] = True
            up = tuple(sum(1 << j for j in range(n) if le[i][j]) for i in range(n))
            vals = []
            for _a in self.atoms:
                s = 0
                for i in reversed(range(n)):
                    if rng.random() < 0.5:
                        s |= up[i]
                vals.append(s)
            models.append((n, up, tuple(vals)))
        self.models = models
        self.top = tuple((1 << m[0]) - 1 for m in models)
        self.bot = tuple(0 for _ in models)
        self.n_classical = 2 ** len(self.atoms)

    def atom(self, name):
        k = self.atoms.index(name)
        return tuple(m[2][k] for m in self.models)

    def imp(self, a, b):
        out = []
        for (n, up, _), x, y in zip(self.models, a, b):
            bad = x & ~y
            out.append(sum(1 << i for i in range(n) if not up[i] & bad))
        return tuple(out)

    def neg(self, a):
        return self.imp(a, self.bot)

    @staticmethod
    def conj(a, b):
        return tuple(x & y for x, y in zip(a, b))

    @staticmethod
    def disj(a, b):
        return tuple(x | y for x, y in zip(a, b))

    def classical_valid(self, v) -> bool:
        return all(x == 1 for x in v[:self.n_classical])


@dataclass
class EnumerationReport:
    max_nodes: int
    atoms: tuple
    formulas: int = 0
    per_size: dict = field(default_factory=dict)
    classes: int = 0
    combinations: int = 0
    classically_valid: int = 0
    intuitionistically_valid: int = 0
    gap: int = 0                                  # classically valid, intuitionistically refuted
    gap_examples: list = field(default_factory=list)
    lk_disagreements: int = 0
    disagreement_examples: list = field(default_factory=list)
    int_not_classical: int = 0
    kripke_violations: int = 0
    glivenko_nodes: int = 0
    glivenko_checked: int = 0
    glivenko_failures: int = 0
    lem_in_gap: Optional[bool] = None
    kernel_checked: int = 0
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return (self.lk_disagreements == 0 and self.int_not_classical == 0
                and self.kripke_violations == 0 and self.glivenko_failures == 0)

    def to_json(self) -> dict:
        out = {k: v for k, v in self.__dict__.items()
               if k not in ("gap_examples", "disagreement_examples", "elapsed")}
        out["atoms"] = list(self.atoms)
        out["per_size"] = {str(k): v for k, v in self.per_size.items()}
        out["gap_examples"] = [print_formula(f) for f in self.gap_examples]
        out["disagreement_examples"] = [print_formula(f) for f in self.disagreement_examples]
        out["ok"] = self.ok
        return out

    def to_text(self) -> str:
        lines = [
            f"formulas: {self.formulas} (<= {self.max_nodes} connective nodes over {', '.join(self.atoms)})",
            f"per size: " + ", ".join(f"{k}:{v}" for k, v in sorted(self.per_size.items())),
            f"equivalence classes: {self.classes}; engine combinations: {self.combinations}",
            f"classically valid: {self.classically_valid}; intuitionistically valid: "
            f"{self.intuitionistically_valid}; gap: {self.gap}",
            f"prove_lk vs truth table disagreements: {self.lk_disagreements}",
            f"prove_int proved but classically invalid: {self.int_not_classical}",
            f"Kripke-model violations: {self.kripke_violations}",
            f"Glivenko (<= {self.glivenko_nodes} nodes): {self.glivenko_checked} checked, "
            f"{self.glivenko_failures} failures",
        ]
        if self.lem_in_gap is not None:
            lines.append(f"p | ~p in gap: {'yes' if self.lem_in_gap else 'no'}")
        if self.gap_examples:
            lines.append("gap examples: " + "; ".join(print_formula(f) for f in self.gap_examples))
        if self.disagreement_examples:
            lines.append("disagreements: " + "; ".join(print_formula(f) for f in self.disagreement_examples))
        lines.append("result: " + ("ok" if self.ok else "FAILED"))
        return "\n".join(lines)


def enumerate_formulas(max_nodes: int, atoms):
    """Every formula with at most max_nodes connectives (¬, ∧, ∨, →) over atoms, by size."""
    levels = [[Atom(a) for a in sorted(atoms)]]
    yield from levels[0]
    for n in range(1, max_nodes + 1):
        cur = [Not(f) for f in levels[n - 1]]
        for i in range(n):
            for a in levels[i]:
                for b in levels[n - 1 - i]:
                    cur.extend((And(a, b), Or(a, b), Imp(a, b)))
        levels.append(cur)
        yield from cur


def enumerate_verify(max_nodes: int, atoms, glivenko_nodes: int = 5, kernel: bool = False,
                     progress=None) -> EnumerationReport:
    """Compare prove_lk, prove_int and truth tables over every formula up to max_nodes.

    Intuitionistic equivalence is a congruence, and every verdict checked here is
    invariant under it.  Formulas are therefore grouped, level by level, into
    classes keyed by (connective, class of each immediate subformula); each
    distinct combination is decided once on a representative by the real
    engines and weighted by the number of formulas it stands for.  Classes are
    merged only when prove_int shows the two representatives equivalent and a
    bank of Kripke models agrees.
    """
    import time

    if not isinstance(max_nodes, int) or max_nodes < 0:
        raise ValueError("max_nodes must be a nonnegative integer")
    atoms = tuple(sorted(set(atoms)))
    if not atoms:
        raise ValueError("at least one atom is required")
    t0 = time.perf_counter()
    rep = EnumerationReport(max_nodes, atoms, glivenko_nodes=min(glivenko_nodes, max_nodes))
    bank = KripkeBank(atoms)
    g4 = _G4(SearchBudget(max_nodes=10 ** 9, max_depth=10 ** 6))

    def int_valid(f) -> bool:
        return g4.prove(frozenset(), f) is not None

    reps, fps, buckets = [], [], {}

    def classify(g, fp) -> int:
        for c in buckets.get(fp, ()):
            r = reps[c]
            if int_valid(Imp(g, r)) and int_valid(Imp(r, g)):
                return c
        reps.append(g)
        fps.append(fp)
        buckets.setdefault(fp, []).append(len(reps) - 1)
        return len(reps) - 1

    def judge(g, fp, mult, size):
        rep.combinations += 1
        lk = prove_lk(g, kernel=kernel)
        tt = truth_table_valid(g)
        iv = int_valid(g)
        if kernel:
            rep.kernel_checked += 1
            if iv:
                _kernel_nd(prove_int(g))
                rep.kernel_checked += 1
        if lk.proved != tt.proved:
            rep.lk_disagreements += mult
            if len(rep.disagreement_examples) < 5:
                rep.disagreement_examples.append(g)
        if tt.proved != bank.classical_valid(fp):
            rep.lk_disagreements += mult
        if tt.proved:
            rep.classically_valid += mult
        if iv:
            rep.intuitionistically_valid += mult
            if not tt.proved:
                rep.int_not_classical += mult
            if fp != bank.top:
                rep.kripke_violations += mult
        elif tt.proved:
            rep.gap += mult
            if len(rep.gap_examples) < 5 and g not in rep.gap_examples:
                rep.gap_examples.append(g)
        if size <= rep.glivenko_nodes:
            rep.glivenko_checked += mult
            if int_valid(Not(Not(g))) != tt.proved:
                rep.glivenko_failures += mult

    levels = []          # per size: {class: multiplicity}
    for n in range(max_nodes + 1):
        last = n == max_nodes
        level = Counter()
        combos = []
        if n == 0:
            combos = [(Atom(a), bank.atom(a), 1) for a in atoms]
        else:
            for c, m in levels[n - 1].items():
                combos.append((Not(reps[c]), bank.neg(fps[c]), m))
            for i in range(n):
                for ca, ma in levels[i].items():
                    for cb, mb in levels[n - 1 - i].items():
                        a, b, fa, fb = reps[ca], reps[cb], fps[ca], fps[cb]
                        m = ma * mb
                        combos.append((And(a, b), bank.conj(fa, fb), m))
                        combos.append((Or(a, b), bank.disj(fa, fb), m))
                        combos.append((Imp(a, b), bank.imp(fa, fb), m))
        for g, fp, m in combos:
            judge(g, fp, m, n)
            if not last:
                level[classify(g, fp)] += m
        rep.per_size[n] = sum(m for _, _, m in combos)
        levels.append(level)
        if progress:
            progress(n, rep)
    rep.formulas = sum(rep.per_size.values())
    rep.classes = len(reps)
    if "p" in atoms and max_nodes >= 2:
        lem = Or(Atom("p"), Not(Atom("p")))
        rep.lem_in_gap = truth_table_valid(lem).proved and not int_valid(lem)
    rep.elapsed = time.perf_counter() - t0
    return rep
