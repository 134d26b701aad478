"""Terms, formulas and sequents, plus the operations every checker relies on.

All values are immutable.  Checkers compare formulas with `alpha_eq`, never
with raw `==`, so renaming a bound variable never changes proof identity.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be nonempty")


@dataclass(frozen=True)
class Fun:
    name: str
    args: tuple = ()

    def __post_init__(self):
        if not self.name:
            raise ValueError("function name must be nonempty")
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


Term = Var | Fun


def const(name: str) -> Fun:
    return Fun(name, ())


# ---------------------------------------------------------------- formulas

class Formula:
    """Base class for formula nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str
    args: tuple = ()

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom name must be nonempty")
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Custom(Formula):
    connective: str
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


BOT = Bottom()
BINARY = (And, Or, Imp)
QUANT = (Forall, Exists)


def atom(name: str, *args) -> Atom:
    return Atom(name, tuple(args))


def children(f: Formula) -> tuple:
    """Immediate subformulas (quantifier bodies keep the bound variable)."""
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, QUANT):
        return (f.body,)
    if isinstance(f, Custom):
        return f.args
    return ()


def size(f: Formula) -> int:
    """Number of AST nodes, atoms and ⊥ included."""
    return 1 + sum(size(c) for c in children(f))


def connective_count(f: Formula) -> int:
    if isinstance(f, (Atom, Bottom)):
        return 0
    return 1 + sum(connective_count(c) for c in children(f))


def is_propositional(f: Formula) -> bool:
    if isinstance(f, Atom):
        return not f.args
    if isinstance(f, QUANT):
        return False
    return all(is_propositional(c) for c in children(f))


def atoms_of(f: Formula) -> set:
    """Names of propositional atoms occurring in f."""
    if isinstance(f, Atom):
        return {f.name}
    out = set()
    for c in children(f):
        out |= atoms_of(c)
    return out


def customs_of(f: Formula) -> set:
    out = {f.connective} if isinstance(f, Custom) else set()
    for c in children(f):
        out |= customs_of(c)
    return out


# ---------------------------------------------------------------- variables

def term_vars(t: Term) -> set:
    if isinstance(t, Var):
        return {t.name}
    out = set()
    for a in t.args:
        out |= term_vars(a)
    return out


def free_vars(f: Formula) -> set:
    if isinstance(f, Atom):
        out = set()
        for t in f.args:
            out |= term_vars(t)
        return out
    if isinstance(f, QUANT):
        return free_vars(f.body) - {f.var}
    out = set()
    for c in children(f):
        out |= free_vars(c)
    return out


def all_vars(f: Formula) -> set:
    """Every variable name, free or bound."""
    if isinstance(f, Atom):
        return free_vars(f)
    out = {f.var} if isinstance(f, QUANT) else set()
    for c in children(f):
        out |= all_vars(c)
    return out


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """base', base'', ... first name not in avoid."""
    avoid = set(avoid)
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


# ---------------------------------------------------------------- substitution

def subst_term(t: Term, x: str, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.name == x else t
    return Fun(t.name, tuple(subst_term(a, x, s) for a in t.args))


def substitute(f: Formula, x: str, t: Term) -> Formula:
    """Capture-avoiding f(x/t)."""
    if x not in free_vars(f):
        return f
    return _subst(f, x, t, term_vars(t))


def _subst(f, x, t, tv):
    if isinstance(f, Atom):
        return Atom(f.name, tuple(subst_term(a, x, t) for a in f.args))
    if isinstance(f, Bottom):
        return f
    if isinstance(f, Not):
        return Not(_subst(f.body, x, t, tv))
    if isinstance(f, BINARY):
        return type(f)(_subst(f.left, x, t, tv), _subst(f.right, x, t, tv))
    if isinstance(f, QUANT):
        if f.var == x or x not in free_vars(f.body):
            return f
        var, body = f.var, f.body
        if var in tv:
            new = fresh_name(var, tv | all_vars(body) | {x})
            body = _subst(body, var, Var(new), {new})
            var = new
        return type(f)(var, _subst(body, x, t, tv))
    if isinstance(f, Custom):
        return Custom(f.connective, tuple(_subst(a, x, t, tv) for a in f.args))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------- alpha equivalence

def _canon_term(t, env, depth, metas):
    if isinstance(t, Var):
        if t.name in env:
            return ("b", depth - env[t.name])
        if t.name in metas:
            return ("m", t.name)
        return ("v", t.name)
    return ("f", t.name, tuple(_canon_term(a, env, depth, metas) for a in t.args))


def _canon(f, env, depth, metas):
    if isinstance(f, Atom):
        return ("A", f.name, tuple(_canon_term(a, env, depth, metas) for a in f.args))
    if isinstance(f, Bottom):
        return ("bot",)
    if isinstance(f, Not):
        return ("~", _canon(f.body, env, depth, metas))
    if isinstance(f, BINARY):
        return (type(f).__name__, _canon(f.left, env, depth, metas),
                _canon(f.right, env, depth, metas))
    if isinstance(f, QUANT):
        inner = dict(env)
        inner[f.var] = depth + 1
        return (type(f).__name__, _canon(f.body, inner, depth + 1, metas))
    if isinstance(f, Custom):
        return ("C", f.connective, tuple(_canon(a, env, depth, metas) for a in f.args))
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=1 << 16)
def canonical(f: Formula) -> tuple:
    """Nameless key: bound variables become binder distances."""
    return _canon(f, {}, 0, frozenset())


def alpha_eq(f: Formula, g: Formula) -> bool:
    return f is g or f == g or canonical(f) == canonical(g)


# ---------------------------------------------------------------- sequents

def multiset_key(fs: Iterable[Formula]) -> tuple:
    return tuple(sorted((canonical(f) for f in fs), key=repr))


@dataclass(frozen=True, eq=False)
class Sequent:
    """Γ ⇒ Δ over multisets; equality is multiset equality up to α."""

    antecedent: tuple = ()
    succedent: tuple = ()
    _key: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "antecedent", tuple(self.antecedent))
        object.__setattr__(self, "succedent", tuple(self.succedent))
        object.__setattr__(self, "_key", (multiset_key(self.antecedent),
                                          multiset_key(self.succedent)))

    def __eq__(self, other):
        return isinstance(other, Sequent) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def formulas(self) -> Iterator[Formula]:
        yield from self.antecedent
        yield from self.succedent

    def free_vars(self) -> set:
        out = set()
        for f in self.formulas():
            out |= free_vars(f)
        return out


def ms_count(fs: Iterable[Formula]) -> Counter:
    return Counter(canonical(f) for f in fs)


def ms_remove(fs: Iterable[Formula], removals: Iterable[Formula]) -> Optional[tuple]:
    """Multiset difference, or None if some removal is absent."""
    rest = list(fs)
    for r in removals:
        for i, f in enumerate(rest):
            if alpha_eq(f, r):
                del rest[i]
                break
        else:
            return None
    return tuple(rest)


def ms_contains(fs: Iterable[Formula], f: Formula) -> bool:
    return any(alpha_eq(g, f) for g in fs)


def ms_equal(a: Iterable[Formula], b: Iterable[Formula]) -> bool:
    return multiset_key(a) == multiset_key(b)


def ms_subset(a: Iterable[Formula], b: Iterable[Formula]) -> bool:
    ca, cb = ms_count(a), ms_count(b)
    return all(cb[k] >= n for k, n in ca.items())


# ---------------------------------------------------------------- subformulas

def subformulas(f: Formula) -> set:
    """Reflexive-transitive closure of `children`."""
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        stack.extend(children(g))
    return out


def _match_term_key(pat, tgt, binding):
    if pat[0] == "m":
        if any(_has_bound(tgt)):
            return False
        prev = binding.get(pat[1])
        if prev is None:
            binding[pat[1]] = tgt
            return True
        return prev == tgt
    if pat[0] != tgt[0]:
        return False
    if pat[0] == "f":
        return (pat[1] == tgt[1] and len(pat[2]) == len(tgt[2])
                and all(_match_term_key(p, t, binding) for p, t in zip(pat[2], tgt[2])))
    return pat == tgt


def _has_bound(tk):
    if tk[0] == "b":
        yield True
    elif tk[0] == "f":
        for a in tk[2]:
            yield from _has_bound(a)


def _match_key(pat, tgt, binding):
    if pat[0] != tgt[0]:
        return False
    tag = pat[0]
    if tag == "A":
        return (pat[1] == tgt[1] and len(pat[2]) == len(tgt[2])
                and all(_match_term_key(p, t, binding) for p, t in zip(pat[2], tgt[2])))
    if tag == "bot":
        return True
    if tag == "C":
        if pat[1] != tgt[1] or len(pat[2]) != len(tgt[2]):
            return False
        return all(_match_key(p, t, binding) for p, t in zip(pat[2], tgt[2]))
    return all(_match_key(p, t, binding) for p, t in zip(pat[1:], tgt[1:]))


def is_subformula_instance(sub: Formula, sup: Formula) -> bool:
    """sub is a subformula of sup, quantified bodies instantiable by any term."""
    target = canonical(sub)

    def walk(g, metas):
        if _match_key(_canon(g, {}, 0, metas), target, {}):
            return True
        if isinstance(g, QUANT):
            return walk(g.body, metas | {g.var})
        return any(walk(c, metas) for c in children(g))

    return walk(sup, frozenset())


def subformula_of_any(sub: Formula, sups: Iterable[Formula]) -> bool:
    return any(is_subformula_instance(sub, s) for s in sups)


# ---------------------------------------------------------------- schemas

META_RE = re.compile(r"^[A-Z][0-9]*$")


def is_metavar(f: Formula) -> bool:
    return isinstance(f, Atom) and not f.args and bool(META_RE.match(f.name))


def metavars(f: Formula) -> set:
    if is_metavar(f):
        return {f.name}
    out = set()
    for c in children(f):
        out |= metavars(c)
    return out


@dataclass
class SchemaAssignment:
    formula_vars: dict = field(default_factory=dict)
    term_vars: dict = field(default_factory=dict)

    def copy(self) -> "SchemaAssignment":
        return SchemaAssignment(dict(self.formula_vars), dict(self.term_vars))


def instantiate(schema: Formula, sigma: SchemaAssignment) -> Formula:
    if is_metavar(schema) and schema.name in sigma.formula_vars:
        return sigma.formula_vars[schema.name]
    if isinstance(schema, Atom):
        if not sigma.term_vars:
            return schema
        return Atom(schema.name, tuple(_inst_term(t, sigma.term_vars) for t in schema.args))
    if isinstance(schema, Bottom):
        return schema
    if isinstance(schema, Not):
        return Not(instantiate(schema.body, sigma))
    if isinstance(schema, BINARY):
        return type(schema)(instantiate(schema.left, sigma), instantiate(schema.right, sigma))
    if isinstance(schema, QUANT):
        return type(schema)(schema.var, instantiate(schema.body, sigma))
    if isinstance(schema, Custom):
        return Custom(schema.connective, tuple(instantiate(a, sigma) for a in schema.args))
    raise TypeError(f"not a formula: {schema!r}")


def _inst_term(t, tv):
    if isinstance(t, Var):
        return tv.get(t.name, t)
    return Fun(t.name, tuple(_inst_term(a, tv) for a in t.args))


def match_schema(schema: Formula, f: Formula, sigma: Optional[SchemaAssignment] = None,
                 term_metas: Iterable[str] = ()) -> Optional[SchemaAssignment]:
    """One-sided first-order matching; extends sigma (copied) or returns None."""
    out = sigma.copy() if sigma is not None else SchemaAssignment()
    if _match(schema, f, out, frozenset(term_metas), {}):
        return out
    return None


def _match(p, f, s, tmetas, bound):
    # bound maps schema bound vars to target bound vars
    if is_metavar(p):
        prev = s.formula_vars.get(p.name)
        if prev is None:
            if free_vars(f) & set(bound.values()):
                return False
            s.formula_vars[p.name] = f
            return True
        return alpha_eq(prev, f)
    if type(p) is not type(f):
        return False
    if isinstance(p, Atom):
        return (p.name == f.name and len(p.args) == len(f.args)
                and all(_match_t(a, b, s, tmetas, bound) for a, b in zip(p.args, f.args)))
    if isinstance(p, Bottom):
        return True
    if isinstance(p, Not):
        return _match(p.body, f.body, s, tmetas, bound)
    if isinstance(p, BINARY):
        return _match(p.left, f.left, s, tmetas, bound) and _match(p.right, f.right, s, tmetas, bound)
    if isinstance(p, QUANT):
        inner = dict(bound)
        inner[p.var] = f.var
        return _match(p.body, f.body, s, tmetas, inner)
    if isinstance(p, Custom):
        return (p.connective == f.connective and len(p.args) == len(f.args)
                and all(_match(a, b, s, tmetas, bound) for a, b in zip(p.args, f.args)))
    return False


def _match_t(p, t, s, tmetas, bound):
    if isinstance(p, Var):
        if p.name in bound:
            return isinstance(t, Var) and t.name == bound[p.name]
        if isinstance(t, Var) and t.name in bound.values():
            return False
        if p.name in tmetas:
            prev = s.term_vars.get(p.name)
            if prev is None:
                s.term_vars[p.name] = t
                return True
            return prev == t
        return isinstance(t, Var) and t.name == p.name
    return (isinstance(t, Fun) and p.name == t.name and len(p.args) == len(t.args)
            and all(_match_t(a, b, s, tmetas, bound) for a, b in zip(p.args, t.args)))
