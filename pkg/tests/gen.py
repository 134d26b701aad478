"""Shared generators for the test suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from proofbench.core import (BOT, And, Atom, Exists, Forall, Fun, Imp, Not, Or, Sequent, Var,
                             free_vars)
from proofbench.decide import prove_lk
from proofbench.proofs import SKNode, hyp, nd, sk

PROP_ATOMS = ("p", "q", "r")


# ---------------------------------------------------------------- formulas

def prop_formulas(atoms=PROP_ATOMS, bot=True, max_leaves=12):
    leaves = st.sampled_from([Atom(a) for a in atoms])
    if bot:
        leaves = leaves | st.just(BOT)
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Not),
            st.tuples(sub, sub).map(lambda t: And(*t)),
            st.tuples(sub, sub).map(lambda t: Or(*t)),
            st.tuples(sub, sub).map(lambda t: Imp(*t)),
        ),
        max_leaves=max_leaves,
    )


VARS = ("x", "y", "z")
terms = st.recursive(
    st.sampled_from([Var(v) for v in VARS] + [Fun("c"), Fun("d")]),
    lambda sub: st.lists(sub, min_size=1, max_size=2).map(lambda a: Fun("f", tuple(a))),
    max_leaves=3,
)


def _fo_atom():
    return st.one_of(
        st.tuples(st.sampled_from(["P", "Q"]), st.lists(terms, min_size=1, max_size=2))
        .map(lambda t: Atom(t[0], tuple(t[1]))),
        st.sampled_from([Atom("p"), Atom("q"), BOT]),
    )


fo_formulas = st.recursive(
    _fo_atom(),
    lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda t: And(*t)),
        st.tuples(sub, sub).map(lambda t: Or(*t)),
        st.tuples(sub, sub).map(lambda t: Imp(*t)),
        st.tuples(st.sampled_from(VARS), sub).map(lambda t: Forall(*t)),
        st.tuples(st.sampled_from(VARS), sub).map(lambda t: Exists(*t)),
    ),
    max_leaves=8,
)


def random_formula(rng: random.Random, atoms=("p", "q"), depth=2):
    if depth == 0 or rng.random() < 0.3:
        return Atom(rng.choice(atoms))
    k = rng.randrange(4)
    if k == 0:
        return Not(random_formula(rng, atoms, depth - 1))
    op = (And, Or, Imp)[k - 1]
    return op(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1))


# ---------------------------------------------------------------- NJ proofs with detours

class DetourGen:
    """Random NJ proofs of a target formula, built around injected detours.

    Open hypotheses are labelled by formula so equal labels never disagree.
    All BotE conclusions are atomic.
    """

    def __init__(self, rng: random.Random, atoms=("p", "q", "r")):
        self.rng = rng
        self.atoms = atoms
        self.n = 0

    def fresh(self):
        self.n += 1
        return f"d{self.n}"

    def formula(self, depth=1):
        return random_formula(self.rng, self.atoms, depth)

    def leaf(self, f):
        return hyp("o_" + repr(f).replace(" ", ""), f)

    def proof_of(self, f, budget):
        rng = self.rng
        if budget <= 0:
            return self.leaf(f)
        k = rng.randrange(7)
        b = budget - 1
        if k == 0:
            g = self.formula()
            return nd("AndE1", f, nd("AndI", And(f, g), self.proof_of(f, b // 2), self.proof_of(g, b // 3)))
        if k == 1:
            g = self.formula()
            return nd("AndE2", f, nd("AndI", And(g, f), self.proof_of(g, b // 3), self.proof_of(f, b // 2)))
        if k == 2:
            # (->I discharging h:g over a body that uses h) applied to a proof of g
            g = self.formula()
            h = self.fresh()
            body = nd("AndE1", f, nd("AndI", And(f, g), self.proof_of(f, b // 3), hyp(h, g)))
            return nd("ImpE", f, nd("ImpI", Imp(g, f), body, discharges=(h,)), self.proof_of(g, b // 3))
        if k == 3:
            g, g2 = self.formula(), self.formula()
            h1, h2 = self.fresh(), self.fresh()
            left = rng.random() < 0.5
            major = nd("OrI1" if left else "OrI2", Or(g, g2), self.proof_of(g if left else g2, b // 3))
            m1 = nd("AndE1", f, nd("AndI", And(f, g), self.proof_of(f, b // 4), hyp(h1, g)))
            m2 = nd("AndE1", f, nd("AndI", And(f, g2), self.proof_of(f, b // 4), hyp(h2, g2)))
            return nd("OrE", f, major, m1, m2, discharges=(h1, h2))
        if k == 4 and isinstance(f, Atom):
            # ~I / ~E detour feeding an atomic BotE
            g = self.formula()
            h = self.fresh()
            bot = nd("NotE", BOT, self.leaf(Not(g)), hyp(h, g))
            return nd("BotE", f, nd("NotE", BOT, nd("NotI", Not(g), bot, discharges=(h,)),
                                    self.proof_of(g, b // 2)))
        if k == 5 and isinstance(f, Imp):
            h = self.fresh()
            body = nd("AndE1", f.right, nd("AndI", And(f.right, f.left), self.proof_of(f.right, b // 2),
                                           hyp(h, f.left)))
            return nd("ImpI", f, body, discharges=(h,))
        if k == 6 and isinstance(f, And):
            return nd("AndI", f, self.proof_of(f.left, b // 2), self.proof_of(f.right, b // 2))
        return self.proof_of(f, b - 1)

    def proof(self, max_nodes=30):
        while True:
            f = self.formula(self.rng.randrange(3))
            p = self.proof_of(f, self.rng.randrange(2, 9))
            if 3 <= p.size() <= max_nodes and p.rule != "Hyp":
                return p


# ---------------------------------------------------------------- cut insertion

def _sub(s: Sequent, left=(), right=()):
    return Sequent(tuple(s.antecedent) + tuple(left), tuple(s.succedent) + tuple(right))


def insert_cuts(p: SKNode, rng: random.Random, n_cuts: int = 2) -> SKNode:
    """Replace random subproofs of Gamma => Delta by cuts that still end in Gamma => Delta."""
    for _ in range(n_cuts):
        p = _insert_once(p, rng)
    return p


def _nodes(p, path=()):
    yield path, p
    for i, q in enumerate(p.premises):
        yield from _nodes(q, path + (i,))


def _replace(p, path, new):
    if not path:
        return new
    prems = list(p.premises)
    prems[path[0]] = _replace(prems[path[0]], path[1:], new)
    return SKNode(p.rule, p.sequent, tuple(prems), p.principal, p.eigen, p.term)


def _cut_formula(s: Sequent, rng: random.Random):
    pool = [f for f in s.formulas() if not free_vars(f)]
    atoms = sorted({a for f in pool for a in _atom_names(f)}) or ["p"]
    if pool and rng.random() < 0.5:
        f = rng.choice(pool)
        return rng.choice([f, And(f, f), Or(f, Atom(rng.choice(atoms))), Imp(Atom(rng.choice(atoms)), f)])
    return random_formula(rng, tuple(atoms), rng.randrange(1, 3))


def _atom_names(f):
    from proofbench.core import atoms_of
    return atoms_of(f)


def _insert_once(p, rng):
    cands = [(path, n) for path, n in _nodes(p) if not free_vars_seq(n.sequent)]
    path, n = rng.choice(cands)
    s = n.sequent
    a = _cut_formula(s, rng)
    style = rng.randrange(3)
    if style == 0:
        left = sk("RW", _sub(s, right=[a]), n)
        right = prove_lk(_sub(s, left=[a])).proof
    elif style == 1:
        left = prove_lk(_sub(s, right=[a])).proof
        right = sk("LW", _sub(s, left=[a]), n)
    else:
        left = prove_lk(_sub(s, right=[a])).proof
        right = prove_lk(_sub(s, left=[a])).proof
    return _replace(p, path, sk("Cut", s, left, right))


def free_vars_seq(s: Sequent):
    return s.free_vars()
