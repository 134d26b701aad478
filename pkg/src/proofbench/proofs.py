"""Proof data types shared by the checkers, engines and document loader."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Optional

from .core import Formula, Sequent, Term


@dataclass(frozen=True)
class NDNode:
    """A natural-deduction node.  Hypothesis leaves have rule "Hyp" and a label.

    `discharges` is positional: slot i belongs to a fixed premise of the rule,
    and None marks a vacuous discharge.
    """

    rule: str
    formula: Formula
    premises: tuple = ()
    discharges: tuple = ()
    label: Optional[str] = None
    eigen: Optional[str] = None
    term: Optional[Term] = None

    @property
    def is_hyp(self) -> bool:
        return self.rule == "Hyp"

    def with_premises(self, premises) -> "NDNode":
        return replace(self, premises=tuple(premises))

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)


def hyp(label: str, formula: Formula) -> NDNode:
    return NDNode("Hyp", formula, label=label)


def nd(rule: str, formula: Formula, *premises, discharges=(), eigen=None, term=None) -> NDNode:
    return NDNode(rule, formula, tuple(premises), tuple(discharges), eigen=eigen, term=term)


def nd_walk(p: NDNode, path=()) -> Iterator[tuple]:
    """Preorder (path, node) pairs."""
    yield path, p
    for i, q in enumerate(p.premises):
        yield from nd_walk(q, path + (i,))


def nd_at(p: NDNode, path) -> NDNode:
    for i in path:
        p = p.premises[i]
    return p


@dataclass(frozen=True)
class SKNode:
    rule: str
    sequent: Sequent
    premises: tuple = ()
    principal: Optional[Formula] = None
    eigen: Optional[str] = None
    term: Optional[Term] = None

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)


def sk(rule: str, sequent: Sequent, *premises, principal=None, eigen=None, term=None) -> SKNode:
    return SKNode(rule, sequent, tuple(premises), principal, eigen, term)


def sk_walk(p: SKNode, path=()) -> Iterator[tuple]:
    yield path, p
    for i, q in enumerate(p.premises):
        yield from sk_walk(q, path + (i,))


@dataclass(frozen=True)
class HilbertLine:
    formula: Formula
    kind: str                   # axiom | mp | gen | assume
    refs: tuple = ()            # 1-based line numbers
    axiom: Optional[str] = None
    var: Optional[str] = None


@dataclass(frozen=True)
class HilbertProof:
    lines: tuple


@dataclass
class ProofDocument:
    system: str                 # hilbert | nd | sequent
    ruleset: str
    root: object
    declarations: list = field(default_factory=list)


def format_path(path) -> str:
    return ".".join(["root"] + [str(i) for i in path])
