import json

import pytest

from proofbench.connectives import BUILTIN_DEFS, builtin, define_connective
from proofbench.core import Atom, Custom, Imp, Sequent
from proofbench.decide import prove_int
from proofbench.errors import DefinitionError
from proofbench.fixtures import load_connective, read_fixture
from proofbench.harmony import (audit, conservativeness_audit, definitional_certificate,
                                elim_subformula_check, local_completeness, local_soundness)
from proofbench.natded import check_nd, ruleset
from proofbench.proofs import NDNode
from proofbench.syntax import parse_sequent as S

OTHER_POOL = tuple("ijklmnor")


def test_define_examples():
    t = load_connective("tonk.json")
    assert (t.name, t.arity) == ("tonk", 2)
    assert t.elims[0].conclusion.name == "A1"
    c = load_connective("candB.json")
    assert (c.name, c.arity) == ("candB", 2)
    with pytest.raises(DefinitionError):
        load_connective("candB_bad.json")


def test_define_rejects_malformed():
    for doc in ({"name": "Bad", "arity": 2, "intro": []},
                {"name": "x", "arity": -1, "intro": [{"premises": [], "conclusion": "x"}]},
                {"name": "x", "arity": 1},
                {"name": "x", "arity": 1, "intro": [{"premises": ["A3"], "conclusion": "x(A0)"}]},
                {"name": "x", "arity": 1, "intro": [{"premises": ["A0"], "conclusion": "y(A0)"}]}):
        with pytest.raises(DefinitionError):
            define_connective(doc)


def test_local_soundness_examples():
    assert local_soundness(builtin("and")).passed
    assert local_soundness(builtin("imp")).passed
    assert not local_soundness(load_connective("tonk.json")).passed


def test_local_completeness_examples():
    assert local_completeness(builtin("and")).passed
    c = local_completeness(builtin("or"))
    assert c.passed
    if isinstance(c.witness, NDNode):
        d = builtin("or")
        assert check_nd(c.witness, ruleset("NJ", connectives=[d])).valid
    assert not local_completeness(load_connective("fst.json")).passed


def test_conservativeness_examples():
    t = conservativeness_audit(load_connective("tonk.json"), probe_size=3)
    assert not t.passed and t.witness_sequent == S("p => q")
    assert conservativeness_audit(load_connective("candB.json")).passed
    assert conservativeness_audit(load_connective("fst.json")).passed


def test_tonk_witness_genuine():
    d = load_connective("tonk.json")
    c = conservativeness_audit(d)
    w, seq = c.witness, c.witness_sequent
    rep = check_nd(w, ruleset("NJ", connectives=[d]))
    assert rep.valid and rep.conclusion == seq.succedent[0]
    assert all(a in seq.antecedent for a in rep.open_assumptions)
    assert sum(1 for n in _nodes(w) if not n.is_hyp) <= 4
    assert prove_int(seq).refuted
    assert not check_nd(w, ruleset("NJ")).valid


def _nodes(p):
    yield p
    for q in p.premises:
        yield from _nodes(q)


def test_audit_examples():
    t = audit(load_connective("tonk.json"))
    assert not t.harmonious and t.verdict == "disharmonious (locally_sound, conservative)"
    for name in ("and", "or", "imp", "not"):
        assert audit(builtin(name)).harmonious, name
    f = audit(load_connective("fst.json"))
    assert f.verdict == "disharmonious (locally_complete)"
    assert audit(load_connective("candB.json")).harmonious


def test_certificates():
    assert definitional_certificate(builtin("and")) is not None
    assert definitional_certificate(load_connective("tonk.json")) is None
    assert definitional_certificate(load_connective("fst.json")) is not None


def test_elim_subformula_informational():
    assert elim_subformula_check(builtin("and")).passed
    assert not elim_subformula_check(builtin("not")).passed
    assert audit(builtin("not")).harmonious


def test_literal_tonk_differs():
    lit = define_connective({k: v for k, v in read_fixture("tonk.json.paper-literal").items()
                             if k != "literal"})
    assert lit.elims[0].conclusion.name == "A0"
    assert audit(lit).harmonious


# ---------------------------------------------------------------- properties

def _defs():
    out = {k: builtin(k) for k in BUILTIN_DEFS}
    for name in ("tonk.json", "candB.json", "fst.json"):
        d = load_connective(name)
        out[d.name] = d
    return out


def test_audit_determinism():
    for name, d in _defs().items():
        a, b = audit(d).to_json(), audit(d).to_json()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True), name


def test_disjoint_atom_pools():
    for name, d in _defs().items():
        a, b = audit(d), audit(d, pool=OTHER_POOL)
        for comp in ("locally_sound", "locally_complete", "conservative", "elim_subformula"):
            assert getattr(a, comp).passed == getattr(b, comp).passed, (name, comp)
        assert a.verdict == b.verdict


def test_pinned_regressions():
    expect = {"and": True, "or": True, "imp": True, "not": True, "candB": True,
              "tonk": False, "fst": False}
    assert {n: audit(d).harmonious for n, d in _defs().items()} == expect


def test_custom_formula_in_decide():
    # customs are opaque atoms to prove_int
    t = Custom("tonk", (Atom("p"), Atom("q")))
    assert prove_int(Sequent((), (Imp(t, t),))).proved
    assert prove_int(Sequent((t,), (Atom("q"),))).refuted
