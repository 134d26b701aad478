import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import DetourGen, insert_cuts, random_formula
from proofbench import natded
from proofbench.core import Sequent, Var
from proofbench.decide import prove_lk, truth_table_valid
from proofbench.errors import ResourceLimit, UnsupportedError
from proofbench.fixtures import fixture_names, load_fixture
from proofbench.proofs import hyp, sk, sk_walk
from proofbench.sequent import (LJ, LK, check_sk, cut_eliminate, fit, has_cut, nd_to_sk,
                                sk_subformula_check)
from proofbench.syntax import parse_formula as F
from proofbench.syntax import parse_sequent as S

SK_FIXTURES = ["cut_pp.skproof", "disj_imp.skproof", "lem.skproof", "peirce.skproof",
               "peirce_cut.skproof"]
LJ_EXPECT = {"cut_pp.skproof": True, "disj_imp.skproof": False, "lem.skproof": False,
             "peirce.skproof": False, "peirce_cut.skproof": False}


def _fx(name):
    return load_fixture(name).root


def test_fixture_verdicts():
    assert sorted(n for n in fixture_names() if n.endswith(".skproof")) == SK_FIXTURES
    for name in SK_FIXTURES:
        assert check_sk(_fx(name), LK).valid, name
        assert check_sk(_fx(name), LJ).valid == LJ_EXPECT[name], name


def test_lem_fixture_shape():
    p = _fx("lem.skproof")
    assert [n.rule for _, n in sk_walk(p)] == ["RC", "ROr2", "ROr1", "RNot", "Ax"]
    rep = check_sk(p, LJ)
    assert not rep.valid
    paths = [d[0] for d in rep.diagnostics]
    bad_nodes = {path for path, n in sk_walk(p) if len(n.sequent.succedent) > 1}
    assert (0, 0, 0) in bad_nodes and "root.0.0.0" in paths


def test_axiom_alone():
    assert check_sk(sk("Ax", S("A => A"))).valid
    assert not check_sk(sk("Ax", S("A => B"))).valid
    assert check_sk(sk("LBot", S("bot =>"))).valid
    assert not check_sk(sk("LBot", S("bot, A => B"))).valid


def test_rule_mismatch_diagnostic():
    bad = sk("RAnd", S("=> A & B"), sk("Ax", S("A => A")), sk("Ax", S("B => B")))
    rep = check_sk(bad)
    assert not rep.valid and rep.diagnostics[0][0] == "root"


def test_eigenvariable_condition():
    bad = sk("RForall", S("P(y) => forall x. P(x)"), sk("Ax", S("P(y) => P(y)")), eigen="y")
    assert not check_sk(bad).valid
    good = sk("LExists", S("exists x. P(x) => exists x. P(x)"),
              sk("RExists", S("P(y) => exists x. P(x)"), sk("Ax", S("P(y) => P(y)")), term=Var("y")),
              eigen="y")
    assert check_sk(good).valid


def _quantified_cut():
    l = sk("RForall", S("forall x. (P(x) & Q(x)) => forall x. (Q(x) & P(x))"),
           sk("LForall", S("forall x. (P(x) & Q(x)) => Q(y) & P(y)"),
              sk("RAnd", S("P(y) & Q(y) => Q(y) & P(y)"),
                 sk("LAnd2", S("P(y) & Q(y) => Q(y)"), sk("Ax", S("Q(y) => Q(y)"))),
                 sk("LAnd1", S("P(y) & Q(y) => P(y)"), sk("Ax", S("P(y) => P(y)")))),
              term=Var("y")), eigen="y")
    r = sk("LW", S("forall x. (Q(x) & P(x)), forall x. (P(x) & Q(x)) => forall x. P(x)"),
           sk("RForall", S("forall x. (Q(x) & P(x)) => forall x. P(x)"),
              sk("LForall", S("forall x. (Q(x) & P(x)) => P(y)"),
                 sk("LAnd2", S("Q(y) & P(y) => P(y)"), sk("Ax", S("P(y) => P(y)"))), term=Var("y")),
              eigen="y"))
    return sk("Cut", S("forall x. (P(x) & Q(x)) => forall x. P(x)"), l, r)


def test_cut_elimination_examples():
    p = _fx("cut_pp.skproof")
    out = cut_eliminate(p)
    assert out.sequent == S("=> p -> p") and not has_cut(out) and check_sk(out).valid
    lem = _fx("lem.skproof")
    assert cut_eliminate(lem) == lem
    pc = _fx("peirce_cut.skproof")
    out = cut_eliminate(pc)
    assert out.sequent == S("=> ((A -> B) -> A) -> A") and not has_cut(out)
    assert check_sk(out).valid and sk_subformula_check(out).passed


def test_cut_elimination_quantified():
    c = _quantified_cut()
    assert check_sk(c).valid
    out = cut_eliminate(c)
    assert out.sequent == c.sequent and not has_cut(out) and check_sk(out, LJ).valid
    assert sk_subformula_check(out).passed


def test_cut_elimination_ceiling():
    with pytest.raises(ResourceLimit):
        cut_eliminate(_fx("peirce_cut.skproof"), max_steps=0)


def test_cut_elimination_rejects_invalid():
    with pytest.raises(ValueError):
        cut_eliminate(sk("Ax", S("A => B")))


def test_subformula_examples():
    assert sk_subformula_check(_fx("lem.skproof")).passed
    rep = sk_subformula_check(_fx("cut_pp.skproof"))
    assert not rep.passed
    assert rep.violations[0][0] == "root.0" and "cut" in rep.violations[0][2]
    w = sk("RW", S("A => A, B"), sk("Ax", S("A => A")))
    assert sk_subformula_check(w).passed
    w = sk("RImp", S("=> A -> A"), sk("LW", S("A, C => A"), sk("Ax", S("A => A"))))
    rep = sk_subformula_check(w)
    assert not rep.passed and "weakening" in rep.violations[0][2]


def test_fit():
    p = sk("Ax", S("A => A"))
    out = fit(p, S("A, B => A, C"))
    assert out.sequent == S("A, B => A, C") and check_sk(out).valid
    with pytest.raises(ValueError):
        fit(p, S("B => A"))


# ---------------------------------------------------------------- nd_to_sk

def test_nd_to_sk_examples():
    d = load_fixture("detour.ndproof").root
    out = nd_to_sk(d)
    assert out.sequent == S("A, B => A") and check_sk(out, LJ).valid
    assert nd_to_sk(hyp("h", F("A"))) == sk("Ax", S("A => A"))
    pe = nd_to_sk(load_fixture("peirce.ndproof").root)
    assert pe.sequent == S("=> ((A -> B) -> A) -> A") and check_sk(pe, LK).valid
    with pytest.raises(UnsupportedError):
        nd_to_sk(load_fixture("disj_imp.ndproof").root)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_nd_to_sk_preserves_provability(seed):
    pr = DetourGen(random.Random(seed)).proof()
    rep = natded.check_nd(pr)
    out = nd_to_sk(pr)
    assert out.sequent == Sequent(tuple(rep.open_assumptions), (pr.formula,))
    assert check_sk(out, LJ).valid


# ---------------------------------------------------------------- properties

@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_lj_valid_implies_lk_valid(seed):
    rng = random.Random(seed)
    pr = nd_to_sk(DetourGen(rng).proof())
    if rng.random() < 0.5:
        pr = insert_cuts(pr, rng, 1)
    if check_sk(pr, LJ).valid:
        assert check_sk(pr, LK).valid


def test_lj_implies_lk_fixtures():
    for name in SK_FIXTURES:
        if check_sk(_fx(name), LJ).valid:
            assert check_sk(_fx(name), LK).valid


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_soundness_bridge(seed):
    rng = random.Random(seed)
    f = random_formula(rng, ("p", "q"), 3)
    v = prove_lk(Sequent((), (f,)))
    if v.proved:
        pr = insert_cuts(v.proof, rng, rng.randrange(1, 3))
        assert check_sk(pr).valid
        for _, n in sk_walk(pr):
            assert truth_table_valid(n.sequent).proved


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_cut_elimination_property(seed):
    rng = random.Random(seed)
    base = _fx(rng.choice(SK_FIXTURES))
    pr = insert_cuts(base, rng, rng.randrange(1, 5))
    out = cut_eliminate(pr)
    assert out.sequent == pr.sequent and not has_cut(out)
    assert check_sk(out).valid and sk_subformula_check(out).passed


def test_cut_elimination_preserves_lj():
    rng = random.Random(5)
    for _ in range(40):
        pr = nd_to_sk(DetourGen(rng).proof())
        assert check_sk(pr, LJ).valid
        out = cut_eliminate(pr)
        assert out.sequent == pr.sequent and not has_cut(out)
        assert check_sk(out, LJ).valid
