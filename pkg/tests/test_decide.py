import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import prop_formulas, random_formula
from kripke import kripke_valid
from proofbench.core import Atom, Not, Or, Sequent
from proofbench.decide import (SearchBudget, VocabularyError, enumerate_formulas,
                               enumerate_verify, parse_fragment, prove, prove_fragment, prove_int,
                               prove_lk, truth_table_valid)
from proofbench.errors import ProofbenchError
from proofbench.natded import NJ, check_nd
from proofbench.sequent import LK, check_sk, has_cut, sk_subformula_check
from proofbench.syntax import parse_formula as F
from proofbench.syntax import parse_sequent as S

PEIRCE = "((p -> q) -> p) -> p"
GAP = [PEIRCE, "~~p -> p", "p | ~p", "p | (p -> q)"]


def test_truth_table_examples():
    assert truth_table_valid("=> p | ~p").proved
    assert truth_table_valid(PEIRCE).proved
    v = truth_table_valid("=> p -> q")
    assert v.refuted and v.countermodel == {"p": True, "q": False}
    assert truth_table_valid("p, ~p =>").proved
    with pytest.raises(ProofbenchError):
        truth_table_valid("forall x. P(x)")


def test_prove_lk_examples():
    v = prove_lk("=> A | ~A")
    assert v.proved and check_sk(v.proof, LK).valid and sk_subformula_check(v.proof).passed
    assert prove_lk("=> A | (A -> B)").proved
    v = prove_lk("p => q")
    assert v.refuted and v.countermodel == {"p": True, "q": False}


def test_prove_int_examples():
    assert prove_int(PEIRCE).refuted
    v = prove_int("~~(p | ~p)")
    assert v.proved
    rep = check_nd(v.proof, NJ)
    assert rep.valid and rep.open_assumptions == [] and rep.conclusion == F("~~(p | ~p)")
    assert prove_int("p -> p").proved


def test_prove_int_repeated_disjunct():
    v = prove_int("q | q => q")
    assert v.proved
    assert check_nd(v.proof, NJ).valid


def test_prove_int_sequent_goal():
    v = prove_int("p, p -> q => q")
    assert v.proved
    rep = check_nd(v.proof, NJ)
    assert set(rep.open_assumptions) <= {F("p"), F("p -> q")}


def test_gap_formulas():
    for g in GAP:
        assert prove_int(g).refuted, g
        v = prove_lk(g)
        assert v.proved and check_sk(v.proof).valid and not has_cut(v.proof), g


def test_prove_fragment_examples():
    assert prove_fragment(PEIRCE, SearchBudget(fragment="imp")).refuted
    assert prove_fragment("p | (p -> q)", SearchBudget(fragment="or,imp")).refuted
    v = prove_fragment("p -> (q -> p)", SearchBudget(fragment="imp"))
    assert v.proved and set(r.rule for r in _nodes(v.proof)) <= {"ImpI", "ImpE", "Hyp"}
    with pytest.raises(VocabularyError):
        prove_fragment("p & q", SearchBudget(fragment="imp"))
    assert prove_fragment("~~(p | ~p)", SearchBudget(fragment="or,not")).proved


def _nodes(p):
    yield p
    for q in p.premises:
        yield from _nodes(q)


def test_parse_fragment():
    assert parse_fragment("imp") == parse_fragment("->") == parse_fragment(["imp"])
    assert parse_fragment("or, imp") == parse_fragment("disj,->")
    with pytest.raises(ValueError):
        parse_fragment("xor")


def test_budgets():
    with pytest.raises(ValueError):
        SearchBudget(max_depth=0)
    with pytest.raises(ValueError):
        SearchBudget(max_nodes=-1)
    v = prove_lk("=> " + " -> ".join(["p"] * 12), SearchBudget(max_nodes=2))
    assert v.exhausted
    v = prove_int("((p -> q) -> p) -> p", SearchBudget(max_nodes=1))
    assert v.exhausted


def test_prove_dispatch():
    assert prove("p | ~p", "classical").proved
    assert prove("p | ~p", "intuitionistic").refuted
    with pytest.raises(ValueError):
        prove("p", "modal")


# ---------------------------------------------------------------- properties

@settings(max_examples=600, deadline=None)
@given(prop_formulas(atoms=("p", "q"), max_leaves=7))
def test_prove_lk_matches_truth_table(f):
    v, t = prove_lk(f), truth_table_valid(f)
    assert v.proved == t.proved
    if v.proved:
        assert v.proof.sequent == Sequent((), (f,))
        assert check_sk(v.proof).valid and sk_subformula_check(v.proof).passed
    else:
        assert t.refuted


@settings(max_examples=600, deadline=None)
@given(prop_formulas(atoms=("p", "q"), max_leaves=6))
def test_prove_int_sound_and_kernel_checked(f):
    v = prove_int(f)
    if v.proved:
        rep = check_nd(v.proof, NJ)
        assert rep.valid and rep.open_assumptions == [] and rep.conclusion == f
        assert truth_table_valid(f).proved
        assert kripke_valid(f, ["p", "q"])


@settings(max_examples=300, deadline=None)
@given(prop_formulas(atoms=("p", "q"), max_leaves=5))
def test_glivenko(f):
    assert truth_table_valid(f).proved == prove_int(Not(Not(f))).proved


@settings(max_examples=300, deadline=None)
@given(st.lists(prop_formulas(atoms=("p", "q"), bot=False, max_leaves=4), max_size=3),
       prop_formulas(atoms=("p", "q"), bot=False, max_leaves=4))
def test_prove_int_sequents(gamma, goal):
    v = prove_int(Sequent(tuple(gamma), (goal,)))
    if v.proved:
        rep = check_nd(v.proof, NJ)
        assert rep.valid and rep.conclusion == goal
        assert all(a in gamma for a in rep.open_assumptions)
    assert truth_table_valid(Sequent(tuple(gamma), (goal,))).proved or not v.proved


def test_prove_int_matches_independent_kripke_oracle():
    for f in enumerate_formulas(3, ["p", "q"]):
        assert prove_int(f, kernel=False).proved == kripke_valid(f, ["p", "q"]), f


# ---------------------------------------------------------------- enumeration harness

def test_enumerate_examples():
    rep = enumerate_verify(0, ["p"])
    assert rep.formulas == 1 and rep.classically_valid == 0 and rep.intuitionistically_valid == 0
    assert rep.ok
    rep = enumerate_verify(3, ["p"])
    assert rep.ok and rep.lk_disagreements == 0


def _brute(max_nodes, atoms):
    """Per-formula oracle: every formula decided directly, no class compression."""
    n = cv = iv = dis = bad = gl = 0
    for f in enumerate_formulas(max_nodes, atoms):
        n += 1
        t = truth_table_valid(f).proved
        k = kripke_valid(f, atoms)
        cv += t
        iv += k
        dis += prove_lk(f, kernel=False).proved != t
        bad += k and not t
        gl += prove_int(Not(Not(f)), kernel=False).proved != t
    return n, cv, iv, dis, bad, gl


def test_enumeration_counts_frozen():
    # frozen from the brute-force oracle (_brute) with the independent Kripke checker
    assert _brute(3, ["p"]) == (277, 96, 78, 0, 0, 0)
    assert _brute(3, ["p", "q"]) == (3152, 758, 588, 0, 0, 0)


def test_class_harness_matches_brute_force():
    for atoms in (["p"], ["p", "q"]):
        rep = enumerate_verify(3, atoms, glivenko_nodes=3)
        n, cv, iv, dis, bad, gl = _brute(3, atoms)
        assert (rep.formulas, rep.classically_valid, rep.intuitionistically_valid) == (n, cv, iv)
        assert rep.gap == cv - iv
        assert rep.lk_disagreements == dis == 0
        assert rep.int_not_classical == bad == 0
        assert rep.glivenko_failures == gl == 0 and rep.glivenko_checked == n


def test_class_harness_four_nodes():
    rep = enumerate_verify(4, ["p", "q"], glivenko_nodes=4, kernel=True)
    assert rep.formulas == 56842 and rep.ok
    n = cv = iv = 0
    for f in enumerate_formulas(4, ["p", "q"]):
        n += 1
        t = truth_table_valid(f).proved
        cv += t
        iv += t and prove_int(f, kernel=False).proved
    assert (rep.classically_valid, rep.intuitionistically_valid) == (cv, iv)


def test_enumerate_report_stable():
    a = enumerate_verify(2, ["p", "q"]).to_json()
    b = enumerate_verify(2, ["p", "q"]).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert "elapsed" not in a


def test_enumerate_bad_bounds():
    with pytest.raises(ValueError):
        enumerate_verify(-1, ["p"])
    with pytest.raises(ValueError):
        enumerate_verify(2, [])


def test_random_verdict_proofs_recheck():
    rng = random.Random(11)
    for _ in range(200):
        f = random_formula(rng, ("p", "q", "r"), 3)
        v = prove_lk(f)
        if v.proved:
            assert check_sk(v.proof).valid and v.proof.sequent == S("=> " + _print(f))
        w = prove_int(f)
        if w.proved:
            assert check_nd(w.proof, NJ).valid


def _print(f):
    from proofbench.syntax import print_formula
    return print_formula(f)


def test_lem_in_gap_six_nodes_marker():
    # the at-scale run lives in the acceptance suite; here only the marker logic
    rep = enumerate_verify(2, ["p"])
    assert rep.lem_in_gap
    assert Or(Atom("p"), Not(Atom("p"))) in rep.gap_examples
