import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import DetourGen
from proofbench import natded
from proofbench.core import BOT, Atom, Fun, Imp, Not, Sequent, Var
from proofbench.decide import prove_int, truth_table_valid
from proofbench.errors import ResourceLimit, UnsupportedError
from proofbench.fixtures import fixture_names, load_fixture
from proofbench.natded import (NJ, check_nd, maximal_formulas, nd_subformula_check, normalize,
                               normalize_with_trace, open_assumptions, rule_usage, ruleset,
                               translate_neg)
from proofbench.proofs import hyp, nd
from proofbench.syntax import parse_formula as F

NK = ["NK-DNE", "NK-LEM", "NK-RAA", "NK-CD"]
p, q = Atom("p"), Atom("q")


def _fx(name):
    return load_fixture(name).root


def test_peirce_nk():
    rep = check_nd(_fx("peirce.ndproof"), ruleset("NK-DNE"))
    assert rep.valid and rep.conclusion == F("((A -> B) -> A) -> A")
    assert rep.open_assumptions == []
    assert {"NotE", "BotE", "DNE", "ImpI", "ImpE"} <= set(rep.rule_usage)


def test_disj_imp_nk():
    rep = check_nd(_fx("disj_imp.ndproof"), ruleset("NK-RAA"))
    assert rep.valid and rep.conclusion == F("A | (A -> B)") and rep.open_assumptions == []
    assert {"NotE", "BotE"} <= set(rep.rule_usage)


def test_single_hypothesis():
    rep = check_nd(hyp("h", F("A")))
    assert rep.valid and rep.conclusion == F("A") and rep.open_assumptions == [F("A")]
    assert rule_usage(hyp("h", F("A"))) == Counter()


def test_rule_usage_detour():
    assert rule_usage(_fx("detour.ndproof")) == Counter({"AndI": 1, "AndE1": 1})


def test_unknown_rule_and_wrong_shapes():
    bad = nd("AndI", F("A & B"), hyp("h", F("A")), hyp("k", F("A")))
    rep = check_nd(bad)
    assert not rep.valid and rep.diagnostics[0][0] == "root"
    assert not check_nd(nd("Frob", F("A"), hyp("h", F("A")))).valid
    assert not check_nd(nd("DNE", F("A"), hyp("h", F("~~A")))).valid
    assert check_nd(nd("DNE", F("A"), hyp("h", F("~~A"))), ruleset("NK-DNE")).valid
    assert not check_nd(nd("LEM", F("A | ~A")), ruleset("NK-DNE")).valid
    assert check_nd(nd("LEM", F("A | ~A")), ruleset("NK-LEM")).valid


def test_discharge_discipline():
    # ImpI must discharge a hypothesis of the antecedent formula
    wrong = nd("ImpI", F("p -> p"), hyp("h", F("p")), discharges=("k",))
    assert not check_nd(wrong).valid
    vacuous = nd("ImpI", F("q -> p"), hyp("h", F("p")), discharges=(None,))
    rep = check_nd(vacuous)
    assert rep.valid and rep.open_assumptions == [F("p")]
    mismatch = nd("ImpI", F("q -> p"), hyp("h", F("p")), discharges=("h",))
    assert not check_nd(mismatch).valid


def test_eigenvariable_conditions():
    good = nd("ForallI", F("forall x. (P(x) -> P(x))"),
              nd("ImpI", F("P(y) -> P(y)"), hyp("h", F("P(y)")), discharges=("h",)), eigen="y")
    assert check_nd(good).valid
    bad = nd("ForallI", F("forall x. P(x)"), hyp("h", F("P(y)")), eigen="y")
    rep = check_nd(bad)
    assert not rep.valid and "eigen" in rep.diagnostics[0][1]
    # exists-elim: eigenvariable may not escape into the conclusion
    esc = nd("ExistsE", F("P(y)"), hyp("e", F("exists x. P(x)")), hyp("h", F("P(y)")),
             discharges=("h",), eigen="y")
    assert not check_nd(esc).valid
    ok = nd("ExistsE", F("exists z. P(z)"), hyp("e", F("exists x. P(x)")),
            nd("ExistsI", F("exists z. P(z)"), hyp("h", F("P(y)")), term=Var("y")),
            discharges=("h",), eigen="y")
    assert check_nd(ok).valid
    inst = nd("ForallE", F("P(c)"), hyp("a", F("forall x. P(x)")), term=Fun("c"))
    assert check_nd(inst).valid


def test_maximal_formulas_examples():
    d = _fx("detour.ndproof")
    assert maximal_formulas(d) == [(0,)]
    assert maximal_formulas(normalize(d)) == []
    imp = nd("ImpE", p, nd("ImpI", Imp(p, p), hyp("h", p), discharges=("h",)), hyp("k", p))
    assert maximal_formulas(imp) == [(0,)]
    with pytest.raises(ValueError):
        maximal_formulas(nd("AndI", F("A & B"), hyp("h", F("A")), hyp("k", F("A"))))


def test_normalize_detour():
    n = normalize(_fx("detour.ndproof"))
    assert n.is_hyp and n.formula == F("A")


def test_normalize_fixed_point():
    for name in ("identity.ndproof",):
        d = _fx(name)
        assert normalize(d) == d


def test_normalize_imp_reduct():
    # (->I [h:p] (p & q via AndI(h, k)) ) applied to a proof of p: h is replaced by that proof
    body = nd("AndI", F("p & q"), hyp("h", p), hyp("k", q))
    arg = nd("AndE1", p, nd("AndI", F("p & q"), hyp("m", p), hyp("k", q)))
    red = nd("ImpE", F("p & q"), nd("ImpI", F("p -> p & q"), body, discharges=("h",)), arg)
    res = normalize_with_trace(red)
    out = res.proof
    # independent check of the reduct: left conjunct is the hypothesis m after both reductions
    assert out == nd("AndI", F("p & q"), hyp("m", p), hyp("k", q))
    assert res.steps == 2
    assert check_nd(out).valid


def test_normalize_refuses_classical():
    with pytest.raises(UnsupportedError, match="classical residue"):
        normalize(_fx("peirce.ndproof"), ruleset("NK-DNE"))


def test_normalize_step_ceiling():
    with pytest.raises(ResourceLimit):
        normalize(_fx("detour.ndproof"), max_steps=0)


def test_subformula_examples():
    assert nd_subformula_check(normalize(_fx("detour.ndproof"))).passed
    assert nd_subformula_check(hyp("h", F("A"))).passed
    rep = nd_subformula_check(_fx("peirce.ndproof"), ruleset("NK-DNE"))
    assert not rep.passed
    assert {F("~A"), F("~~A")} <= {f for _, f, _ in rep.violations}


def test_translate_neg():
    assert translate_neg(F("~p")) == F("p -> bot")
    assert translate_neg(F("~~p")) == F("(p -> bot) -> bot")
    assert translate_neg(F("p & q")) == F("p & q")


def test_classical_equivalences():
    got = natded.classical_equivalences()
    assert [(r, t) for r, t, _ in got] == [
        ("NK-DNE", F("A | ~A")), ("NK-LEM", F("~~p -> p")),
        ("NK-RAA", F("~~p -> p")), ("NK-CD", F("A | ~A"))]
    for rs, _, proof in got:
        assert check_nd(proof, ruleset(rs)).valid
        assert not check_nd(proof, NJ).valid
        assert check_nd(proof, ruleset(rs)).open_assumptions == []
    assert check_nd(_fx("identity.ndproof"), NJ).valid


def test_ge_rules_need_flag():
    ge = nd("GAndE", F("B"), hyp("a", F("A & B")), hyp("k", F("B")), discharges=(None, "k"))
    assert not check_nd(ge).valid
    assert check_nd(ge, ruleset("NJ", ge=True)).valid


# ---------------------------------------------------------------- properties

def _nd_fixtures():
    for name in fixture_names():
        if name.endswith(".ndproof"):
            yield name, load_fixture(name)


def test_soundness_bridge_fixtures():
    for name, doc in _nd_fixtures():
        rs = ruleset(doc.ruleset, connectives=doc.declarations)
        rep = check_nd(doc.root, rs)
        assert rep.valid, name
        if doc.declarations:
            continue
        goal = Sequent(tuple(rep.open_assumptions), (rep.conclusion,))
        assert truth_table_valid(goal).proved, name
        if doc.ruleset == "NJ":
            assert prove_int(goal).proved, name


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_random_proofs_sound_and_monotone(seed):
    pr = DetourGen(random.Random(seed)).proof()
    rep = check_nd(pr)
    assert rep.valid
    goal = Sequent(tuple(rep.open_assumptions), (rep.conclusion,))
    assert truth_table_valid(goal).proved
    assert prove_int(goal).proved
    for name in NK:
        assert check_nd(pr, ruleset(name)).valid


def test_monotonicity_fixtures():
    for name, doc in _nd_fixtures():
        if doc.ruleset == "NJ" and not doc.declarations:
            for rs in NK:
                assert check_nd(doc.root, ruleset(rs)).valid


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_normalization_postconditions(seed):
    pr = DetourGen(random.Random(seed)).proof()
    before = check_nd(pr)
    out = normalize(pr)
    after = check_nd(out)
    assert after.valid and out.formula == pr.formula
    assert not (Counter(map(repr, after.open_assumptions)) - Counter(map(repr, before.open_assumptions)))
    assert maximal_formulas(out) == []
    assert nd_subformula_check(out).passed


def test_open_assumptions_pairs():
    pr = nd("AndI", F("p & p"), hyp("a", p), hyp("b", p))
    assert [label for label, _ in open_assumptions(pr)] == ["a", "b"]
    pr = nd("AndI", F("p & p"), hyp("a", p), hyp("a", p))
    assert open_assumptions(pr) == [("a", p)]


def test_bote_and_not_rules():
    pr = nd("BotE", q, nd("NotE", BOT, hyp("n", Not(p)), hyp("h", p)))
    rep = check_nd(pr)
    assert rep.valid and set(rep.open_assumptions) == {Not(p), p}
