"""Surface grammar, printer and proof-document format.

    formula := imp
    imp     := disj ["->" imp]
    disj    := conj {"|" conj}
    conj    := neg {"&" neg}
    neg     := "~" neg | atom
    atom    := "bot" | IDENT ["(" term {"," term} ")"] | "(" formula ")"
             | ("forall" | "exists") VAR "." formula

A quantifier's scope extends as far right as possible.  Inside a term, a bare
identifier is a variable when an enclosing quantifier binds it or when it
starts with one of u..z; otherwise it is a constant.  Identifiers may end in
primes, which is how fresh names are spelled.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Mapping, Optional

from .core import (BINARY, BOT, QUANT, And, Atom, Bottom, Custom, Exists, Forall, Formula,
                   Fun, Imp, Not, Or, Sequent, Var)
from .errors import FormatError, ParseError, ProofReferenceError
from .proofs import HilbertLine, HilbertProof, NDNode, ProofDocument, SKNode

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>=>)
  | (?P<imp>->)
  | (?P<op>[~&|(),.])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)
""", re.VERBOSE)

KEYWORDS = {"bot", "forall", "exists"}
VAR_INITIALS = set("uvwxyz")


def _tokenize(text: str):
    toks = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        val = m.group()
        if kind != "ws":
            if kind == "op" or kind in ("arrow", "imp"):
                kind = val
            elif val in KEYWORDS:
                kind = val
            toks.append((kind, val, line, col))
        for ch in val:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    toks.append(("EOF", "", line, col))
    return toks


def _arities(connectives) -> dict:
    if connectives is None:
        return {}
    if isinstance(connectives, Mapping):
        return {k: (v if isinstance(v, int) else v.arity) for k, v in connectives.items()}
    return {c.name: c.arity for c in connectives}


class _Parser:
    def __init__(self, text: str, connectives=None):
        self.toks = _tokenize(text)
        self.i = 0
        self.arity = _arities(connectives)
        self.bound: list = []

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, expected):
        kind, val, line, col = self.tok
        found = "end of input" if kind == "EOF" else repr(val)
        raise ParseError(f"unexpected {found}", line, col, expected)

    def eat(self, kind):
        if self.tok[0] != kind:
            self.fail([kind])
        t = self.tok
        self.i += 1
        return t

    def at(self, kind) -> bool:
        return self.tok[0] == kind

    def end(self):
        if not self.at("EOF"):
            self.fail(["EOF", "->", "|", "&"])

    def formula(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.i += 1
            return Imp(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.at("|"):
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.neg()
        while self.at("&"):
            self.i += 1
            f = And(f, self.neg())
        return f

    def neg(self) -> Formula:
        if self.at("~"):
            self.i += 1
            return Not(self.neg())
        return self.atom()

    def atom(self) -> Formula:
        kind = self.tok[0]
        if kind == "bot":
            self.i += 1
            return BOT
        if kind == "(":
            self.i += 1
            f = self.formula()
            self.eat(")")
            return f
        if kind in ("forall", "exists"):
            self.i += 1
            var = self.eat("ident")[1]
            self.eat(".")
            self.bound.append(var)
            try:
                body = self.formula()
            finally:
                self.bound.pop()
            return (Forall if kind == "forall" else Exists)(var, body)
        if kind == "ident":
            name = self.tok[1]
            self.i += 1
            if name in self.arity and self.at("("):
                self.i += 1
                args = [self.formula()]
                while self.at(","):
                    self.i += 1
                    args.append(self.formula())
                self.eat(")")
                if len(args) != self.arity[name]:
                    _, _, line, col = self.toks[self.i - 1]
                    raise ParseError(f"{name} takes {self.arity[name]} arguments, got {len(args)}",
                                     line, col)
                return Custom(name, tuple(args))
            if self.at("("):
                return Atom(name, self.term_args())
            return Atom(name, ())
        self.fail(["~", "(", "bot", "forall", "exists", "ident"])

    def term_args(self) -> tuple:
        self.eat("(")
        args = [self.term()]
        while self.at(","):
            self.i += 1
            args.append(self.term())
        self.eat(")")
        return tuple(args)

    def term(self):
        name = self.eat("ident")[1]
        if self.at("("):
            return Fun(name, self.term_args())
        if name in self.bound or name[0] in VAR_INITIALS:
            return Var(name)
        return Fun(name, ())

    def formula_list(self, stop) -> list:
        if self.at(stop):
            return []
        out = [self.formula()]
        while self.at(","):
            self.i += 1
            out.append(self.formula())
        return out


def parse_formula(text: str, connectives=None) -> Formula:
    p = _Parser(text, connectives)
    f = p.formula()
    p.end()
    return f


def parse_sequent(text: str, connectives=None) -> Sequent:
    p = _Parser(text, connectives)
    left = p.formula_list("=>")
    p.eat("=>")
    right = p.formula_list("EOF")
    p.end()
    return Sequent(tuple(left), tuple(right))


def parse_term(text: str, bound=()):
    p = _Parser(text)
    p.bound = list(bound)
    t = p.term()
    p.end()
    return t


# ---------------------------------------------------------------- printing

def print_term(t) -> str:
    if isinstance(t, Var) or not t.args:
        return t.name
    return f"{t.name}({', '.join(print_term(a) for a in t.args)})"


def print_formula(f: Formula) -> str:
    return _pr(f, 1, True)


def _pr(f, ctx, tail_free):
    # ctx: 1 imp, 2 disj, 3 conj, 4 neg/atom
    if isinstance(f, Atom):
        if not f.args:
            return f.name
        return f"{f.name}({', '.join(print_term(a) for a in f.args)})"
    if isinstance(f, Bottom):
        return "bot"
    if isinstance(f, Custom):
        return f"{f.connective}({', '.join(_pr(a, 1, True) for a in f.args)})"
    if isinstance(f, Not):
        return "~" + _pr(f.body, 4, tail_free)
    if isinstance(f, QUANT):
        kw = "forall" if isinstance(f, Forall) else "exists"
        s = f"{kw} {f.var}. {_pr(f.body, 1, True)}"
        return s if tail_free else f"({s})"
    if isinstance(f, BINARY):
        level, sym = {Imp: (1, "->"), Or: (2, "|"), And: (3, "&")}[type(f)]
        paren = ctx > level
        tf = True if paren else tail_free
        if isinstance(f, Imp):
            s = f"{_pr(f.left, 2, False)} -> {_pr(f.right, 1, tf)}"
        else:
            s = f"{_pr(f.left, level, False)} {sym} {_pr(f.right, level + 1, tf)}"
        return f"({s})" if paren else s
    raise TypeError(f"not a formula: {f!r}")


def print_sequent(s: Sequent) -> str:
    left = ", ".join(print_formula(f) for f in s.antecedent)
    right = ", ".join(print_formula(f) for f in s.succedent)
    return (left + " " if left else "") + "=>" + (" " + right if right else "")


# ---------------------------------------------------------------- documents

SYSTEMS = ("hilbert", "nd", "sequent")


def _req(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise FormatError(f"{where}: field {key!r} has wrong type")
    return val


_DOC_KEYS = {"system", "ruleset", "declarations", "proof", "lines", "literal"}
_ND_KEYS = {"rule", "formula", "premises", "discharges", "eigenvariable", "term"}
_HYP_KEYS = {"rule", "label", "formula"}
_SK_KEYS = {"rule", "sequent", "premises", "principal", "eigenvariable", "term"}
_LINE_KEYS = {"formula", "just"}


def _only(obj, allowed, where):
    extra = sorted(set(obj) - allowed)
    if extra:
        raise FormatError(f"{where}: unknown field {extra[0]!r}")


def _parse_in(text, where, fn, connectives):
    if not isinstance(text, str):
        raise FormatError(f"{where}: expected a grammar string")
    try:
        return fn(text, connectives)
    except ParseError as e:
        raise FormatError(f"{where}: {e}") from e


def load_declarations(decls, base_dir: Optional[Path] = None) -> list:
    from .connectives import define_connective

    out = []
    if not isinstance(decls, list):
        raise FormatError("declarations must be a list")
    for i, d in enumerate(decls):
        if isinstance(d, str):
            path = Path(d) if base_dir is None else Path(base_dir) / d
            try:
                d = json.loads(path.read_text(encoding="utf-8"))
            except OSError as e:
                raise FormatError(f"declarations[{i}]: cannot read {path}: {e}") from e
            except json.JSONDecodeError as e:
                raise FormatError(f"declarations[{i}]: invalid JSON: {e}") from e
        out.append(define_connective(d))
    return out


def load_proof(data, base_dir: Optional[Path] = None) -> ProofDocument:
    """Parse a proof document (bytes, str or already-decoded dict)."""
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise FormatError(f"document is not UTF-8: {e}") from e
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise FormatError(f"invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise FormatError("document must be a JSON object")
    system = _req(data, "system", "document", str)
    if system not in SYSTEMS:
        raise FormatError(f"unknown system {system!r}")
    _only(data, _DOC_KEYS, "document")
    ruleset = _req(data, "ruleset", "document", str)
    decls = load_declarations(data.get("declarations", []), base_dir)
    conns = {d.name: d for d in decls}

    if system == "hilbert":
        src = data["proof"] if "proof" in data else data
        if src is not data:
            _only(src, {"lines"}, "proof")
        root = _load_hilbert(_req(src, "lines", "document", list), conns)
    elif system == "nd":
        root = _load_nd(_req(data, "proof", "document"), "proof", conns)
        _check_labels(root)
    else:
        root = _load_sk(_req(data, "proof", "document"), "proof", conns)
    return ProofDocument(system, ruleset, root, decls)


def _known_nd_rules(conns) -> set:
    from .natded import ALL_ND_RULES

    names = set(ALL_ND_RULES)
    for d in conns.values():
        names |= set(d.rule_names())
    return names


def _load_nd(obj, where, conns, known=None) -> NDNode:
    known = known if known is not None else _known_nd_rules(conns)
    rule = _req(obj, "rule", where, str)
    formula = _parse_in(_req(obj, "formula", where), f"{where}.formula", parse_formula, conns)
    if rule == "Hyp":
        _only(obj, _HYP_KEYS, where)
        label = _req(obj, "label", where, str)
        if obj.get("premises"):
            raise FormatError(f"{where}: hypothesis leaf has premises")
        return NDNode("Hyp", formula, label=label)
    if rule not in known:
        raise ProofReferenceError(f"{where}: unknown rule {rule!r}")
    _only(obj, _ND_KEYS, where)
    prems = _req(obj, "premises", where, list)
    discharges = _req(obj, "discharges", where)
    if not isinstance(discharges, list) or not all(d is None or isinstance(d, str) for d in discharges):
        raise FormatError(f"{where}: discharges must be a list of labels or null")
    eigen = obj.get("eigenvariable")
    if eigen is not None and not isinstance(eigen, str):
        raise FormatError(f"{where}: eigenvariable must be a string")
    term = obj.get("term")
    if term is not None:
        term = _parse_in(term, f"{where}.term", lambda t, c: parse_term(t), conns)
    children = tuple(_load_nd(p, f"{where}.premises[{i}]", conns, known) for i, p in enumerate(prems))
    return NDNode(rule, formula, children, tuple(discharges), eigen=eigen, term=term)


def _check_labels(root: NDNode):
    from .proofs import nd_walk

    labels = {n.label for _, n in nd_walk(root) if n.is_hyp}
    for _, n in nd_walk(root):
        for d in n.discharges:
            if d is not None and d not in labels:
                raise ProofReferenceError(f"undefined hypothesis label {d!r} discharged by {n.rule}")


def _load_sk(obj, where, conns) -> SKNode:
    from .sequent import SK_RULES

    rule = _req(obj, "rule", where, str)
    if rule not in SK_RULES:
        raise ProofReferenceError(f"{where}: unknown rule {rule!r}")
    _only(obj, _SK_KEYS, where)
    seq = _parse_in(_req(obj, "sequent", where), f"{where}.sequent", parse_sequent, conns)
    prems = _req(obj, "premises", where, list)
    principal = obj.get("principal")
    if principal is not None:
        principal = _parse_in(principal, f"{where}.principal", parse_formula, conns)
    eigen = obj.get("eigenvariable")
    if eigen is not None and not isinstance(eigen, str):
        raise FormatError(f"{where}: eigenvariable must be a string")
    term = obj.get("term")
    if term is not None:
        term = _parse_in(term, f"{where}.term", lambda t, c: parse_term(t), conns)
    children = tuple(_load_sk(p, f"{where}.premises[{i}]", conns) for i, p in enumerate(prems))
    return SKNode(rule, seq, children, principal, eigen, term)


_JUST_RE = re.compile(r"^(?:axiom:(?P<ax>\S+)|mp:(?P<i>\d+),(?P<j>\d+)|gen:(?P<g>\d+),(?P<v>[a-z][A-Za-z0-9_]*'*)|(?P<assume>assume))$")


def parse_justification(text: str):
    m = _JUST_RE.match(text.strip()) if isinstance(text, str) else None
    if not m:
        raise FormatError(f"malformed justification {text!r}")
    if m.group("ax"):
        return "axiom", (), m.group("ax"), None
    if m.group("i"):
        return "mp", (int(m.group("i")), int(m.group("j"))), None, None
    if m.group("g"):
        return "gen", (int(m.group("g")),), None, m.group("v")
    return "assume", (), None, None


def _load_hilbert(lines, conns) -> HilbertProof:
    out = []
    for n, obj in enumerate(lines, 1):
        where = f"lines[{n}]"
        f = _parse_in(_req(obj, "formula", where), f"{where}.formula", parse_formula, conns)
        _only(obj, _LINE_KEYS, where)
        kind, refs, ax, var = parse_justification(_req(obj, "just", where, str))
        out.append(HilbertLine(f, kind, refs, ax, var))
    return HilbertProof(tuple(out))


# ---------------------------------------------------------------- dumping

def nd_to_json(p: NDNode) -> dict:
    if p.is_hyp:
        return {"rule": "Hyp", "label": p.label, "formula": print_formula(p.formula)}
    out = {"rule": p.rule, "formula": print_formula(p.formula),
           "premises": [nd_to_json(q) for q in p.premises],
           "discharges": list(p.discharges)}
    if p.eigen is not None:
        out["eigenvariable"] = p.eigen
    if p.term is not None:
        out["term"] = print_term(p.term)
    return out


def sk_to_json(p: SKNode) -> dict:
    out = {"rule": p.rule, "sequent": print_sequent(p.sequent),
           "premises": [sk_to_json(q) for q in p.premises]}
    if p.principal is not None:
        out["principal"] = print_formula(p.principal)
    if p.eigen is not None:
        out["eigenvariable"] = p.eigen
    if p.term is not None:
        out["term"] = print_term(p.term)
    return out


def document_to_json(doc: ProofDocument) -> dict:
    out = {"system": doc.system, "ruleset": doc.ruleset}
    if doc.declarations:
        out["declarations"] = [d.to_json() for d in doc.declarations]
    if doc.system == "nd":
        out["proof"] = nd_to_json(doc.root)
    elif doc.system == "sequent":
        out["proof"] = sk_to_json(doc.root)
    else:
        out["lines"] = [_hline_json(l) for l in doc.root.lines]
    return out


def _hline_json(l: HilbertLine) -> dict:
    if l.kind == "axiom":
        just = f"axiom:{l.axiom}"
    elif l.kind == "mp":
        just = f"mp:{l.refs[0]},{l.refs[1]}"
    elif l.kind == "gen":
        just = f"gen:{l.refs[0]},{l.var}"
    else:
        just = "assume"
    return {"formula": print_formula(l.formula), "just": just}


def dump_document(doc: ProofDocument) -> str:
    return json.dumps(document_to_json(doc), indent=2, ensure_ascii=False) + "\n"


# indented text dumps, one node per line with premises nested below

def nd_to_text(p: NDNode, indent: int = 0) -> str:
    pad = "  " * indent
    if p.is_hyp:
        return f"{pad}[{p.label}] {print_formula(p.formula)}"
    extra = ""
    if any(d is not None for d in p.discharges):
        extra = " discharging " + ", ".join(d for d in p.discharges if d is not None)
    if p.eigen:
        extra += f" eigen {p.eigen}"
    lines = [f"{pad}{print_formula(p.formula)}    by {p.rule}{extra}"]
    lines += [nd_to_text(q, indent + 1) for q in p.premises]
    return "\n".join(lines)


def sk_to_text(p: SKNode, indent: int = 0) -> str:
    pad = "  " * indent
    extra = f" eigen {p.eigen}" if p.eigen else ""
    lines = [f"{pad}{print_sequent(p.sequent)}    by {p.rule}{extra}"]
    lines += [sk_to_text(q, indent + 1) for q in p.premises]
    return "\n".join(lines)
