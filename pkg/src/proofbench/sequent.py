"""G1-style sequent calculus (LK, and LJ as its single-succedent restriction).

Contexts are shared between the premises of two-premise rules.  For LImp and
Cut the left premise may also be written without the right context (Γ ⇒ A),
which is the shape LJ needs; both shapes are accepted in either mode.

Cut elimination follows Gentzen: each uppermost cut is replaced by a mix
(which deletes every occurrence of the cut formula) and the mix is pushed
upward; the mix device never appears in output.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import Optional

from .core import (And, Bottom, Exists, Forall, Formula, Imp, Not, Or, Sequent, Var, alpha_eq,
                   canonical, free_vars, fresh_name, is_subformula_instance, ms_count,
                   ms_remove, subst_term, substitute, term_vars)
from .errors import ResourceLimit, UnsupportedError
from .proofs import NDNode, SKNode, format_path, nd_walk, sk_walk
from .report import CheckReport, SubformulaReport
from .syntax import print_formula

SK_RULES = ("Ax", "LBot", "LAnd1", "LAnd2", "RAnd", "LOr", "ROr1", "ROr2", "LImp", "RImp",
            "LNot", "RNot", "LForall", "RForall", "LExists", "RExists", "LW", "RW", "LC", "RC",
            "Cut")
LOGICAL_RIGHT = {"RAnd": And, "ROr1": Or, "ROr2": Or, "RImp": Imp, "RNot": Not,
                 "RForall": Forall, "RExists": Exists}
LOGICAL_LEFT = {"LAnd1": And, "LAnd2": And, "LOr": Or, "LImp": Imp, "LNot": Not,
                "LForall": Forall, "LExists": Exists}
N_PREMISES = {"Ax": 0, "LBot": 0, "RAnd": 2, "LOr": 2, "LImp": 2, "Cut": 2}


@dataclass(frozen=True)
class SKSystem:
    mode: str = "LK"       # LK | LJ

    @property
    def lj(self) -> bool:
        return self.mode.upper() == "LJ"


LK = SKSystem("LK")
LJ = SKSystem("LJ")


def system(mode: str) -> SKSystem:
    m = mode.upper()
    if m not in ("LK", "LJ"):
        raise ValueError(f"unknown sequent system {mode!r}")
    return SKSystem(m)


@dataclass(frozen=True)
class Inference:
    """A rule instance split into context, principal formulas and per-premise actives.

    parts[i] = (left actives, right actives, carries right context).
    """

    rule: str
    ctx_l: tuple
    ctx_r: tuple
    prin_l: tuple
    prin_r: tuple
    parts: tuple
    eigen: Optional[str] = None
    term: object = None
    cut: Optional[Formula] = None


def _seq(l, r) -> Sequent:
    return Sequent(tuple(l), tuple(r))


def _distinct(fs):
    seen, out = set(), []
    for f in fs:
        k = canonical(f)
        if k not in seen:
            seen.add(k)
            out.append(f)
    return out


def compose(inf: Inference, premises) -> SKNode:
    concl = _seq(inf.ctx_l + inf.prin_l, inf.ctx_r + inf.prin_r)
    return SKNode(inf.rule, concl, tuple(premises), None, inf.eigen, inf.term)


def premise_sequents(inf: Inference) -> list:
    out = []
    for al, ar, carries in inf.parts:
        out.append(_seq(inf.ctx_l + tuple(al), (inf.ctx_r if carries else ()) + tuple(ar)))
    return out


def _instance(q: Formula, f: Formula, term) -> Optional[object]:
    from .natded import instance_term

    if term is not None:
        return term if alpha_eq(substitute(q.body, q.var, term), f) else None
    t = instance_term(q, f)
    if t is False:
        return None
    return Var(q.var) if t is None else t


def analyze(n: SKNode):
    """Inference for n, or an error message if n is not a rule instance."""
    rule, C, P = n.rule, n.sequent, [q.sequent for q in n.premises]
    if rule not in SK_RULES:
        return f"unknown rule {rule}"
    want = N_PREMISES.get(rule, 1)
    if len(P) != want:
        return f"{rule} takes {want} premises, got {len(P)}"
    if rule == "Ax":
        if len(C.antecedent) == 1 and len(C.succedent) == 1 and alpha_eq(C.antecedent[0], C.succedent[0]):
            return Inference(rule, (), (), C.antecedent, C.succedent, ())
        return "axiom must have the form A => A"
    if rule == "LBot":
        if len(C.antecedent) == 1 and isinstance(C.antecedent[0], Bottom) and not C.succedent:
            return Inference(rule, (), (), C.antecedent, (), ())
        return "LBot must have the form bot =>"
    if rule == "Cut":
        return _analyze_cut(n, C, P)

    side = "L" if rule[0] == "L" else "R"
    pool = C.antecedent if side == "L" else C.succedent
    cands = _distinct(pool)
    if n.principal is not None:
        cands = [f for f in cands if alpha_eq(f, n.principal)]
    kind = LOGICAL_LEFT.get(rule) or LOGICAL_RIGHT.get(rule)
    if kind is not None:
        cands = [f for f in cands if isinstance(f, kind)]
    last = f"no principal formula fits {rule}"
    for X in cands:
        ctx = ms_remove(pool, [X])
        ctx_l, ctx_r = (ctx, C.succedent) if side == "L" else (C.antecedent, ctx)
        res = _try_rule(n, rule, X, tuple(ctx_l), tuple(ctx_r), P, C)
        if isinstance(res, Inference):
            return res
        if res:
            last = res
    return last


def _try_rule(n, rule, X, cl, cr, P, C):
    def parts_match(parts, **kw):
        inf = Inference(rule, cl, cr, (X,) if rule[0] == "L" else (), (X,) if rule[0] == "R" else (),
                        tuple(parts), **kw)
        if all(p == q for p, q in zip(premise_sequents(inf), P)):
            return inf
        return None

    if rule == "LAnd1":
        return parts_match([((X.left,), (), True)])
    if rule == "LAnd2":
        return parts_match([((X.right,), (), True)])
    if rule == "RAnd":
        return parts_match([((), (X.left,), True), ((), (X.right,), True)])
    if rule == "LOr":
        return parts_match([((X.left,), (), True), ((X.right,), (), True)])
    if rule == "ROr1":
        return parts_match([((), (X.left,), True)])
    if rule == "ROr2":
        return parts_match([((), (X.right,), True)])
    if rule == "LImp":
        return (parts_match([((), (X.left,), True), ((X.right,), (), True)])
                or parts_match([((), (X.left,), False), ((X.right,), (), True)]))
    if rule == "RImp":
        return parts_match([((X.left,), (X.right,), True)])
    if rule == "LNot":
        return parts_match([((), (X.body,), True)])
    if rule == "RNot":
        return parts_match([((X.body,), (), True)])
    if rule in ("LW", "RW"):
        return parts_match([((), (), True)])
    if rule == "LC":
        return parts_match([((X, X), (), True)])
    if rule == "RC":
        return parts_match([((), (X, X), True)])
    if rule in ("LForall", "RExists", "RForall", "LExists"):
        # the active formula is whatever the premise adds to the context
        prem = P[0]
        left_side = rule in ("LForall", "LExists")
        extra = ms_remove(prem.antecedent, cl) if left_side else ms_remove(prem.succedent, cr)
        rest = ms_remove(prem.succedent, cr) if left_side else ms_remove(prem.antecedent, cl)
        stay = prem.succedent if left_side else prem.antecedent
        if extra is None or len(extra) != 1 or rest != () or len(stay) != len(cr if left_side else cl):
            return None
        act = ((extra[0],), (), True) if left_side else ((), (extra[0],), True)
        if rule in ("LForall", "RExists"):
            t = _instance(X, extra[0], n.term)
            if t is None:
                return "active formula is not an instance of the principal formula"
            return parts_match([act], term=t)
        y = n.eigen
        if y is None:
            t = _instance(X, extra[0], None)
            if not isinstance(t, Var):
                return "active formula is not an instance at a variable"
            y = t.name
        if not alpha_eq(substitute(X.body, X.var, Var(y)), extra[0]):
            return f"active formula is not the instance at {y}"
        if y in C.free_vars():
            return f"eigenvariable {y} occurs free in the conclusion"
        return parts_match([act], eigen=y)
    return f"unhandled rule {rule}"


def _analyze_cut(n, C, P):
    left, right = P
    cands = _distinct(right.antecedent)
    if n.principal is not None:
        cands = [f for f in cands if alpha_eq(f, n.principal)]
    for A in cands:
        for carries in (True, False):
            inf = Inference("Cut", C.antecedent, C.succedent, (), (),
                            (((), (A,), carries), ((A,), (), True)), cut=A)
            if all(p == q for p, q in zip(premise_sequents(inf), P)):
                return inf
    return "premises do not fit Cut: expected G => D, A and A, G => D"


def check_sk(p: SKNode, sys: Optional[SKSystem] = None) -> CheckReport:
    sys = LK if sys is None else sys
    diags, usage = [], Counter()
    for path, n in sk_walk(p):
        usage[n.rule] += 1
        res = analyze(n)
        if isinstance(res, str):
            diags.append((format_path(path), f"{n.rule}: {res}"))
        if sys.lj and len(n.sequent.succedent) > 1:
            diags.append((format_path(path), f"LJ allows at most one succedent formula, found "
                                             f"{len(n.sequent.succedent)}"))
    return CheckReport(valid=not diags, conclusion=None, open_assumptions=[],
                       rule_usage=usage, diagnostics=diags, end_sequent=p.sequent)


def has_cut(p: SKNode) -> bool:
    return any(n.rule == "Cut" for _, n in sk_walk(p))


# ---------------------------------------------------------------- structural helpers

def fit(p: SKNode, target: Sequent) -> SKNode:
    """Contract, then weaken, p's conclusion into target (support must be included)."""
    s = p.sequent
    have_l, have_r = ms_count(s.antecedent), ms_count(s.succedent)
    want_l, want_r = ms_count(target.antecedent), ms_count(target.succedent)
    rep = {canonical(f): f for f in list(s.formulas()) + list(target.formulas())}
    for k in have_l:
        if want_l[k] == 0:
            raise ValueError(f"fit: {print_formula(rep[k])} missing from target antecedent")
    for k in have_r:
        if want_r[k] == 0:
            raise ValueError(f"fit: {print_formula(rep[k])} missing from target succedent")
    ant, suc = list(s.antecedent), list(s.succedent)

    def step(rule, new_ant, new_suc, principal):
        nonlocal p
        p = SKNode(rule, _seq(new_ant, new_suc), (p,), None)

    for k, n in sorted(have_l.items(), key=lambda kv: repr(kv[0])):
        for _ in range(n - want_l[k]):
            ant = list(ms_remove(ant, [rep[k]]))
            step("LC", ant, suc, rep[k])
    for k, n in sorted(have_r.items(), key=lambda kv: repr(kv[0])):
        for _ in range(n - want_r[k]):
            suc = list(ms_remove(suc, [rep[k]]))
            step("RC", ant, suc, rep[k])
    have_l, have_r = ms_count(ant), ms_count(suc)
    for k, n in sorted(want_l.items(), key=lambda kv: repr(kv[0])):
        for _ in range(n - have_l[k]):
            ant = [rep[k]] + ant
            step("LW", ant, suc, rep[k])
    for k, n in sorted(want_r.items(), key=lambda kv: repr(kv[0])):
        for _ in range(n - have_r[k]):
            suc = suc + [rep[k]]
            step("RW", ant, suc, rep[k])
    return p


def _remove_all(fs, M) -> tuple:
    return tuple(f for f in fs if not alpha_eq(f, M))


def sk_vars(p: SKNode) -> set:
    out = set()
    for _, n in sk_walk(p):
        out |= n.sequent.free_vars()
        if n.eigen:
            out.add(n.eigen)
        if n.term is not None:
            out |= term_vars(n.term)
    return out


def sk_subst_var(p: SKNode, y: str, t) -> SKNode:
    def go(n):
        s = n.sequent
        seq = _seq([substitute(f, y, t) for f in s.antecedent], [substitute(f, y, t) for f in s.succedent])
        eigen = n.eigen
        if eigen == y and isinstance(t, Var):
            eigen = t.name
        term = subst_term(n.term, y, t) if n.term is not None else None
        principal = substitute(n.principal, y, t) if n.principal is not None else None
        return SKNode(n.rule, seq, tuple(go(q) for q in n.premises), principal, eigen, term)
    return go(p)


def sk_freshen(p: SKNode, avoid: set) -> SKNode:
    """Give every eigenvariable a distinct fresh name (inner nodes first)."""
    used = set(avoid) | sk_vars(p)

    def go(n):
        n = replace(n, premises=tuple(go(q) for q in n.premises))
        if n.eigen is not None:
            new = fresh_name(n.eigen, used)
            used.add(new)
            n = replace(n, premises=(sk_subst_var(n.premises[0], n.eigen, Var(new)),), eigen=new)
        return n
    return go(p)


# ---------------------------------------------------------------- cut elimination

class _Mixer:
    def __init__(self, max_steps: int):
        self.max_steps = max_steps
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.max_steps:
            raise ResourceLimit(f"cut elimination exceeded {self.max_steps} steps")

    def inf(self, p: SKNode) -> Inference:
        res = analyze(p)
        if isinstance(res, str):
            raise ValueError(f"invalid inference {p.rule}: {res}")
        return res

    def mix(self, p1: SKNode, p2: SKNode, M: Formula) -> SKNode:
        """Proof of a sequent whose support lies within Γ, Π* ⇒ Δ*, Λ."""
        self.tick()
        G, D = p1.sequent.antecedent, p1.sequent.succedent
        Pi, L = p2.sequent.antecedent, p2.sequent.succedent
        mk = lambda f: any(alpha_eq(f, M) for f in f)   # noqa: E731
        if not mk(D):
            return p1
        if not mk(Pi):
            return p2
        if mk(L):
            return p1
        if mk(G):
            return p2
        if p1.rule == "Ax":
            return p2
        if p2.rule == "Ax":
            return p1
        i1 = self.inf(p1)
        if not (i1.rule in LOGICAL_RIGHT and alpha_eq(i1.prin_r[0], M)):
            return self.permute_left(p1, i1, p2, M)
        i2 = self.inf(p2)
        if not (i2.rule in LOGICAL_LEFT and alpha_eq(i2.prin_l[0], M)):
            return self.permute_right(p1, p2, i2, M)
        # both sides principal; first clear other occurrences above
        if mk(i1.ctx_r) or any(mk(ar) for _, ar, _ in i1.parts):
            return self.rank_left(p1, i1, p2, M)
        if mk(i2.ctx_l) or any(mk(al) for al, _, _ in i2.parts):
            return self.rank_right(p1, p2, i2, M)
        return self.logical(p1, i1, p2, i2, M)

    def _avoid_eigen(self, p: SKNode, avoid: set) -> SKNode:
        if p.eigen is not None and p.eigen in avoid:
            new = fresh_name(p.eigen, avoid | sk_vars(p))
            p = replace(p, premises=(sk_subst_var(p.premises[0], p.eigen, Var(new)),), eigen=new)
        return p

    def permute_left(self, p1, i1, p2, M):
        if i1.rule in ("RW", "RC") and alpha_eq(i1.prin_r[0], M):
            return self.mix(p1.premises[0], p2, M)
        Pi_s = _remove_all(p2.sequent.antecedent, M)
        L = p2.sequent.succedent
        if i1.eigen is not None and i1.eigen in sk_vars(p2):
            p1 = self._avoid_eigen(p1, sk_vars(p2) | p1.sequent.free_vars())
            i1 = self.inf(p1)
        ctx_l = i1.ctx_l + Pi_s
        ctx_r = _remove_all(i1.ctx_r, M) + L
        new_prems = []
        for (al, ar, carries), sigma in zip(i1.parts, p1.premises):
            if carries:
                tau = self.mix(sigma, p2, M)
                target = _seq(ctx_l + tuple(al), ctx_r + tuple(ar))
            else:
                tau = sigma
                target = _seq(ctx_l + tuple(al), tuple(ar))
            new_prems.append(fit(tau, target))
        new = replace(i1, ctx_l=ctx_l, ctx_r=ctx_r)
        return compose(new, new_prems)

    def permute_right(self, p1, p2, i2, M):
        if i2.rule in ("LW", "LC") and alpha_eq(i2.prin_l[0], M):
            return self.mix(p1, p2.premises[0], M)
        G = p1.sequent.antecedent
        D_s = _remove_all(p1.sequent.succedent, M)
        if i2.eigen is not None and i2.eigen in sk_vars(p1):
            p2 = self._avoid_eigen(p2, sk_vars(p1) | p2.sequent.free_vars())
            i2 = self.inf(p2)
        ctx_l = G + _remove_all(i2.ctx_l, M)
        ctx_r = D_s + i2.ctx_r
        parts = list(i2.parts)
        new_prems = []
        for k, ((al, ar, carries), rho) in enumerate(zip(i2.parts, p2.premises)):
            tau = self.mix(p1, rho, M)
            if not carries and D_s:
                carries = True
                parts[k] = (al, ar, True)
            if carries:
                target = _seq(ctx_l + tuple(al), ctx_r + tuple(ar))
            else:
                target = _seq(ctx_l + tuple(al), tuple(ar))
            new_prems.append(fit(tau, target))
        new = replace(i2, ctx_l=ctx_l, ctx_r=ctx_r, parts=tuple(parts))
        return compose(new, new_prems)

    def rank_left(self, p1, i1, p2, M):
        # mix the premises of p1 first, rebuild the principal inference, mix again
        Pi_s = _remove_all(p2.sequent.antecedent, M)
        L = p2.sequent.succedent
        if i1.eigen is not None and i1.eigen in sk_vars(p2):
            p1 = self._avoid_eigen(p1, sk_vars(p2) | p1.sequent.free_vars())
            i1 = self.inf(p1)
        ctx_l = i1.ctx_l + Pi_s
        ctx_r = _remove_all(i1.ctx_r, M) + L
        new_prems = []
        for (al, ar, carries), sigma in zip(i1.parts, p1.premises):
            tau = self.mix(sigma, p2, M)
            new_prems.append(fit(tau, _seq(ctx_l + tuple(al), ctx_r + tuple(ar))))
        p1n = compose(replace(i1, ctx_l=ctx_l, ctx_r=ctx_r), new_prems)
        return self.mix(p1n, p2, M)

    def rank_right(self, p1, p2, i2, M):
        G = p1.sequent.antecedent
        D_s = _remove_all(p1.sequent.succedent, M)
        if i2.eigen is not None and i2.eigen in sk_vars(p1):
            p2 = self._avoid_eigen(p2, sk_vars(p1) | p2.sequent.free_vars())
            i2 = self.inf(p2)
        ctx_l = G + _remove_all(i2.ctx_l, M)
        ctx_r = D_s + i2.ctx_r
        parts = list(i2.parts)
        new_prems = []
        for k, ((al, ar, carries), rho) in enumerate(zip(i2.parts, p2.premises)):
            tau = self.mix(p1, rho, M)
            if not carries and D_s:
                carries = True
                parts[k] = (al, ar, True)
            target = _seq(ctx_l + tuple(al), (ctx_r if carries else ()) + tuple(ar))
            new_prems.append(fit(tau, target))
        p2n = compose(replace(i2, ctx_l=ctx_l, ctx_r=ctx_r, parts=tuple(parts)), new_prems)
        return self.mix(p1, p2n, M)

    def logical(self, p1, i1, p2, i2, M):
        r1, r2 = i1.rule, i2.rule
        s1, s2 = p1.premises, p2.premises
        if isinstance(M, And):
            k = 0 if r2 == "LAnd1" else 1
            return self.mix(s1[k], s2[0], M.left if k == 0 else M.right)
        if isinstance(M, Or):
            k = 0 if r1 == "ROr1" else 1
            return self.mix(s1[0], s2[k], M.left if k == 0 else M.right)
        if isinstance(M, Imp):
            a = self.mix(s2[0], s1[0], M.left)
            return self.mix(a, s2[1], M.right)
        if isinstance(M, Not):
            return self.mix(s2[0], s1[0], M.body)
        if isinstance(M, Forall):
            t = i2.term
            sigma = sk_freshen(s1[0], term_vars(t) | {i1.eigen})
            sigma = sk_subst_var(sigma, i1.eigen, t)
            return self.mix(sigma, s2[0], substitute(M.body, M.var, t))
        if isinstance(M, Exists):
            t = i1.term
            rho = sk_freshen(s2[0], term_vars(t) | {i2.eigen})
            rho = sk_subst_var(rho, i2.eigen, t)
            return self.mix(s1[0], rho, substitute(M.body, M.var, t))
        raise UnsupportedError(f"no reduction for {r1}/{r2}")


def _uppermost_rightmost_cut(p: SKNode, path=()):
    for i in reversed(range(len(p.premises))):
        r = _uppermost_rightmost_cut(p.premises[i], path + (i,))
        if r is not None:
            return r
    return path if p.rule == "Cut" else None


def _replace_at(p: SKNode, path, new: SKNode) -> SKNode:
    if not path:
        return new
    prems = list(p.premises)
    prems[path[0]] = _replace_at(prems[path[0]], path[1:], new)
    return replace(p, premises=tuple(prems))


def _at(p, path):
    for i in path:
        p = p.premises[i]
    return p


def cut_eliminate(p: SKNode, max_steps: int = 200000) -> SKNode:
    """Cut-free proof of the same end-sequent."""
    rep = check_sk(p)
    if not rep.valid:
        raise ValueError("cut_eliminate needs a valid proof: " + "; ".join(m for _, m in rep.diagnostics))
    if not has_cut(p):
        return p
    mixer = _Mixer(max_steps)
    p = sk_freshen(p, set()) if any(n.eigen for _, n in sk_walk(p)) else p
    while True:
        path = _uppermost_rightmost_cut(p)
        if path is None:
            return p
        node = _at(p, path)
        inf = analyze(node)
        left, right = node.premises
        res = mixer.mix(left, right, inf.cut)
        p = _replace_at(p, path, fit(res, node.sequent))
        if any(n.eigen for _, n in sk_walk(p)):
            eig = [n.eigen for _, n in sk_walk(p) if n.eigen]
            if len(eig) != len(set(eig)):
                p = sk_freshen(p, set())


# ---------------------------------------------------------------- subformula property

def sk_subformula_check(p: SKNode) -> SubformulaReport:
    ends = list(p.sequent.formulas())
    violations, seen = [], {}
    for path, n in sk_walk(p):
        where = format_path(path)
        if n.rule == "Cut":
            inf = analyze(n)
            cut = inf.cut if isinstance(inf, Inference) else n.premises[1].sequent.antecedent[0]
            violations.append((where, cut, "cut formula"))
            continue
        for f in n.sequent.formulas():
            k = canonical(f)
            if k not in seen:
                seen[k] = any(is_subformula_instance(f, e) for e in ends)
            if not seen[k]:
                why = "introduced by weakening" if n.rule in ("LW", "RW") else "not a subformula of the end-sequent"
                violations.append((where, f, why))
                seen[k] = True   # report each formula once
    return SubformulaReport(not violations, violations)


# ---------------------------------------------------------------- natural deduction to sequents

class _NDTranslator:
    def __init__(self, root: NDNode):
        from .natded import freshen_eigens

        self.root = freshen_eigens(root, set()) if any(n.eigen for _, n in nd_walk(root)) else root

    def opens(self, n: NDNode) -> tuple:
        from .natded import open_assumptions

        return tuple(_distinct(f for _, f in open_assumptions(n)))

    def run(self) -> SKNode:
        return self.tr(self.root)

    def weak_ax(self, f: Formula, ctx: tuple, extra_r=()) -> SKNode:
        return fit(SKNode("Ax", _seq([f], [f])), _seq((f,) + ctx, (f,) + tuple(extra_r)))

    def cut(self, left: SKNode, right: SKNode, A: Formula, G: tuple, C: tuple) -> SKNode:
        left = fit(left, _seq(G, (A,)))
        right = fit(right, _seq((A,) + G, C))
        return SKNode("Cut", _seq(G, C), (left, right))

    def tr(self, n: NDNode) -> SKNode:
        if n.is_hyp:
            return SKNode("Ax", _seq([n.formula], [n.formula]))
        G = self.opens(n)
        A = n.formula
        r = n.rule
        sub = [self.tr(q) for q in n.premises]
        P = [q.formula for q in n.premises]

        def at(k, extra_l=()):
            return fit(sub[k], _seq(tuple(extra_l) + G, (P[k],)))

        if r == "AndI":
            return SKNode("RAnd", _seq(G, (A,)), (at(0), at(1)))
        if r in ("OrI1", "OrI2"):
            return SKNode("ROr1" if r == "OrI1" else "ROr2", _seq(G, (A,)), (at(0),))
        if r == "ImpI":
            return SKNode("RImp", _seq(G, (A,)), (at(0, (A.left,)),))
        if r == "NotI":
            body = fit(sub[0], _seq((A.body,) + G, (P[0],)))
            bot = fit(SKNode("LBot", _seq([P[0]], [])), _seq((P[0], A.body) + G, ()))
            inner = SKNode("Cut", _seq((A.body,) + G, ()), (body, bot))
            return SKNode("RNot", _seq(G, (A,)), (inner,))
        if r == "ForallI":
            return SKNode("RForall", _seq(G, (A,)), (at(0),), eigen=n.eigen)
        if r == "ExistsI":
            from .natded import instance_term
            t = n.term if n.term is not None else instance_term(A, P[0])
            t = Var(A.var) if t is None or t is False else t
            return SKNode("RExists", _seq(G, (A,)), (at(0),), term=t)
        if r in ("AndE1", "AndE2"):
            part = P[0].left if r == "AndE1" else P[0].right
            right = SKNode("LAnd1" if r == "AndE1" else "LAnd2", _seq((P[0],) + G, (A,)),
                           (self.weak_ax(part, G),))
            return self.cut(sub[0], right, P[0], G, (A,))
        if r == "ImpE":
            minor = at(1)
            right = SKNode("LImp", _seq((P[0],) + G, (A,)), (minor, self.weak_ax(A, G)))
            return self.cut(sub[0], right, P[0], G, (A,))
        if r == "NotE":
            lnot = SKNode("LNot", _seq((P[0],) + G, ()), (at(1),))
            right = SKNode("RW", _seq((P[0],) + G, (A,)), (lnot,))
            return self.cut(sub[0], right, P[0], G, (A,))
        if r == "BotE":
            right = fit(SKNode("LBot", _seq([P[0]], [])), _seq((P[0],) + G, (A,)))
            return self.cut(sub[0], right, P[0], G, (A,))
        if r in ("OrE", "GOrE"):
            D = P[0]
            c1 = fit(sub[1], _seq((D.left,) + G, (A,)))
            c2 = fit(sub[2], _seq((D.right,) + G, (A,)))
            right = SKNode("LOr", _seq((D,) + G, (A,)), (c1, c2))
            return self.cut(sub[0], right, D, G, (A,))
        if r == "GAndE":
            D = P[0]
            c = fit(sub[1], _seq((D.left, D.right) + G, (A,)))
            s1 = SKNode("LAnd1", _seq((D, D.right) + G, (A,)), (c,))
            s2 = SKNode("LAnd2", _seq((D, D) + G, (A,)), (s1,))
            right = SKNode("LC", _seq((D,) + G, (A,)), (s2,))
            return self.cut(sub[0], right, D, G, (A,))
        if r == "GImpE":
            D = P[0]
            c = fit(sub[2], _seq((D.right,) + G, (A,)))
            right = SKNode("LImp", _seq((D,) + G, (A,)), (at(1), c))
            return self.cut(sub[0], right, D, G, (A,))
        if r == "ForallE":
            from .natded import instance_term
            t = n.term if n.term is not None else instance_term(P[0], A)
            t = Var(P[0].var) if t is None or t is False else t
            right = SKNode("LForall", _seq((P[0],) + G, (A,)), (self.weak_ax(A, G),), term=t)
            return self.cut(sub[0], right, P[0], G, (A,))
        if r == "ExistsE":
            D = P[0]
            inst = substitute(D.body, D.var, Var(n.eigen))
            c = fit(sub[1], _seq((inst,) + G, (A,)))
            right = SKNode("LExists", _seq((D,) + G, (A,)), (c,), eigen=n.eigen)
            return self.cut(sub[0], right, D, G, (A,))
        if r == "DNE":
            # ~~A => A, via => A, ~A
            ax = SKNode("Ax", _seq([A], [A]))
            rn = SKNode("RNot", _seq([], [A, Not(A)]), (ax,))
            ln = SKNode("LNot", _seq([P[0]], [A]), (rn,))
            return self.cut(sub[0], fit(ln, _seq((P[0],) + G, (A,))), P[0], G, (A,))
        raise UnsupportedError(f"nd_to_sk does not translate {r}")


def nd_to_sk(p: NDNode) -> SKNode:
    """Sequent proof of open(p) => conclusion(p); NJ input gives an LJ proof."""
    from .natded import PERMISSIVE, check_nd

    rep = check_nd(p, PERMISSIVE)
    if not rep.valid:
        raise ValueError("nd_to_sk needs a valid proof")
    for _, n in nd_walk(p):
        if n.rule in ("LEM", "RAA", "CD") or (not n.is_hyp and n.rule not in _ND_OK):
            raise UnsupportedError(f"nd_to_sk does not translate {n.rule}")
    out = _NDTranslator(p).run()
    return fit(out, _seq(tuple(rep.open_assumptions), (p.formula,)))


_ND_OK = {"AndI", "AndE1", "AndE2", "OrI1", "OrI2", "OrE", "GOrE", "ImpI", "ImpE", "NotI", "NotE",
          "BotE", "ForallI", "ForallE", "ExistsI", "ExistsE", "GAndE", "GImpE", "DNE"}
