import copy
import json

import pytest
from hypothesis import given, settings

from gen import fo_formulas, prop_formulas
from proofbench.core import BOT, And, Atom, Forall, Imp, Not, Or, Sequent, alpha_eq
from proofbench.errors import FormatError, ParseError, ProofReferenceError, ProofbenchError
from proofbench.fixtures import fixture_names, fixture_path, load_fixture, read_fixture
from proofbench.syntax import (document_to_json, dump_document, load_proof, parse_formula,
                               parse_sequent, print_formula, print_sequent)

A, B = Atom("A"), Atom("B")


def test_parse_examples():
    assert parse_formula("A & B -> A") == Imp(And(A, B), A)
    assert parse_formula("~~A -> A") == Imp(Not(Not(A)), A)
    f = parse_formula("forall x. P(x) -> Q")
    assert isinstance(f, Forall) and f.body == Imp(Atom("P", (parse_formula("P(x)").args[0],)), Atom("Q"))


def test_precedence_and_associativity():
    assert parse_formula("p -> q -> r") == parse_formula("p -> (q -> r)")
    assert parse_formula("p | q & r") == Or(Atom("p"), And(Atom("q"), Atom("r")))
    assert parse_formula("~p & q") == And(Not(Atom("p")), Atom("q"))
    assert parse_formula("p & q & r") == And(And(Atom("p"), Atom("q")), Atom("r"))


def test_parse_sequent_examples():
    assert parse_sequent("A => A") == Sequent((A,), (A,))
    assert parse_sequent("=> A | ~A") == Sequent((), (Or(A, Not(A)),))
    assert parse_sequent("bot =>") == Sequent((BOT,), ())
    assert parse_sequent("A, B => ") == Sequent((A, B), ())


def test_print_examples():
    assert print_formula(Imp(And(A, B), A)) == "A & B -> A"
    assert print_formula(Not(Not(A))) == "~~A"
    assert print_formula(Or(A, Imp(A, B))) == "A | (A -> B)"
    assert print_sequent(Sequent((), (Or(A, Not(A)),))) == "=> A | ~A"


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_formula("A &\n  -> B")
    assert (e.value.line, e.value.column) == (2, 3)
    assert e.value.expected
    with pytest.raises(ParseError):
        parse_formula("(A")
    with pytest.raises(ParseError):
        parse_formula("")


@settings(max_examples=10000, deadline=None)
@given(fo_formulas)
def test_round_trip(f):
    assert alpha_eq(parse_formula(print_formula(f)), f)


def _paren_pairs(s):
    stack, out = [], []
    for i, ch in enumerate(s):
        if ch == "(":
            stack.append(i)
        elif ch == ")":
            out.append((stack.pop(), i))
    return out


@settings(max_examples=1500, deadline=None)
@given(prop_formulas(max_leaves=8))
def test_no_redundant_parentheses(f):
    text = print_formula(f)
    for i, j in _paren_pairs(text):
        cut = text[:i] + text[i + 1:j] + text[j + 1:]
        try:
            g = parse_formula(cut)
        except ParseError:
            continue
        assert not alpha_eq(g, f), f"redundant parentheses in {text!r}"


def test_load_fixture_examples():
    doc = load_fixture("detour.ndproof")
    assert doc.system == "nd" and doc.root.formula == A
    assert doc.root.rule == "AndE1" and doc.root.premises[0].rule == "AndI"
    doc = load_fixture("lem.skproof")
    assert doc.root.sequent == parse_sequent("=> A | ~A")


def test_undeclared_custom_rule_is_reference_error():
    doc = {"system": "nd", "ruleset": "NJ",
           "proof": {"rule": "tonkI", "formula": "p", "premises": [
               {"rule": "Hyp", "label": "h", "formula": "p"}], "discharges": []}}
    with pytest.raises(ProofReferenceError):
        load_proof(json.dumps(doc))


def test_undefined_discharge_label():
    doc = {"system": "nd", "ruleset": "NJ",
           "proof": {"rule": "ImpI", "formula": "p -> p", "premises": [
               {"rule": "Hyp", "label": "h", "formula": "p"}], "discharges": ["k"]}}
    with pytest.raises(ProofReferenceError):
        load_proof(json.dumps(doc))


def test_bad_documents():
    for raw in (b"\xff\xfe", b"not json", b"[]", b'{"system": "tableau", "ruleset": "x"}'):
        with pytest.raises(FormatError):
            load_proof(raw)


def test_dump_round_trip():
    for name in fixture_names():
        if name.endswith((".ndproof", ".skproof", ".hproof")):
            doc = load_fixture(name)
            again = load_proof(dump_document(doc), base_dir=fixture_path(name).parent)
            assert document_to_json(again) == document_to_json(doc)


# ---------------------------------------------------------------- mutated fixtures

def _paths(d, pre=()):
    if isinstance(d, dict):
        for k, v in d.items():
            yield pre + (k,)
            yield from _paths(v, pre + (k,))
    elif isinstance(d, list):
        for i, v in enumerate(d):
            yield from _paths(v, pre + (i,))


def _mutants(doc):
    for path in _paths(doc):
        for mode in ("delete", "rename"):
            d = copy.deepcopy(doc)
            cur = d
            for k in path[:-1]:
                cur = cur[k]
            v = cur.pop(path[-1])
            if mode == "rename":
                cur[path[-1] + "_renamed"] = v
            yield path, mode, d


def test_mutated_fixtures_rejected():
    n = 0
    for name in fixture_names():
        if not name.endswith((".ndproof", ".skproof", ".hproof")):
            continue
        for path, mode, d in _mutants(read_fixture(name)):
            n += 1
            with pytest.raises(ProofbenchError):
                load_proof(json.dumps(d), base_dir=fixture_path(name).parent)
    assert n > 500
