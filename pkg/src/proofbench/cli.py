"""proofbench command line.

Exit codes: 0 valid / proved / harmonious, 1 invalid / refuted / disharmonious,
2 input error (I/O, parse, malformed document, bad bounds).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import decide, harmony, hilbert, natded, sequent
from .errors import ProofbenchError
from .fixtures import fixture_path, load_connective, load_fixture
from .proofs import ProofDocument, SKNode, nd_at, sk_walk
from .syntax import (dump_document, load_proof, nd_to_json, nd_to_text,
                     print_formula, print_sequent, sk_to_json, sk_to_text)


class Output:
    def __init__(self, fmt: str, quiet: bool):
        self.fmt = fmt
        self.quiet = quiet

    def emit(self, text: str, data: dict):
        if self.quiet:
            return
        if self.fmt == "json":
            print(json.dumps(data, indent=2, ensure_ascii=False))
        else:
            print(text)


def _read_doc(path: str) -> ProofDocument:
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as e:
        raise ProofbenchError(f"cannot read {path}: {e.strerror or e}") from e
    return load_proof(raw, base_dir=p.parent)


def _nd_ruleset(doc: ProofDocument, name=None, ge=False):
    return natded.ruleset(name or doc.ruleset, ge=ge, connectives=doc.declarations)


def _sk_system(doc: ProofDocument, mode=None):
    return sequent.system(mode or (doc.ruleset if doc.ruleset.upper() in ("LK", "LJ") else "LK"))


_SYSTEM_ALIASES = {"nd": "nd", "natded": "nd", "sequent": "sequent", "sk": "sequent",
                   "hilbert": "hilbert"}


# ---------------------------------------------------------------- commands

def cmd_check(args, out: Output) -> int:
    doc = _read_doc(args.file)
    if args.system and _SYSTEM_ALIASES[args.system] != doc.system:
        raise ProofbenchError(f"document is a {doc.system} proof, not {args.system}")
    if doc.system == "nd":
        rs = _nd_ruleset(doc, args.ruleset, args.ge)
        rep = natded.check_nd(doc.root, rs)
        label = rs.name
    elif doc.system == "sequent":
        sys_ = _sk_system(doc, args.mode)
        rep = sequent.check_sk(doc.root, sys_)
        label = sys_.mode
    else:
        rep = hilbert.check_hilbert(doc.root)
        label = "Hc"
    data = {"file": args.file, "system": doc.system, "ruleset": label, **rep.to_json()}
    out.emit(f"{args.file} [{doc.system}, {label}]\n{rep.to_text()}", data)
    return 0 if rep.valid else 1


def cmd_normalize(args, out: Output) -> int:
    doc = _read_doc(args.file)
    if doc.system != "nd":
        raise ProofbenchError("normalize takes a natural-deduction document")
    rs = _nd_ruleset(doc, args.ruleset, True)
    rep = natded.check_nd(doc.root, rs)
    if not rep.valid:
        out.emit("input proof is invalid\n" + rep.to_text(), {"valid": False, **rep.to_json()})
        return 1
    before = natded.maximal_formulas(doc.root, rs)
    res = natded.normalize_with_trace(doc.root, rs, max_steps=args.max_steps)
    after = natded.maximal_formulas(res.proof, rs)
    new_doc = ProofDocument("nd", doc.ruleset, res.proof, doc.declarations)
    if args.output:
        Path(args.output).write_text(dump_document(new_doc), encoding="utf-8")
    text = [f"maximal formulas before: {len(before)}", f"reduction steps: {res.steps}",
            f"maximal formulas after: {len(after)}"]
    if args.trace:
        text += [f"  step {i + 1}: {pair} at {path}" for i, (path, pair) in enumerate(res.trace)]
    text += ["normal form:", nd_to_text(res.proof, 1)]
    data = {"maximal_before": len(before), "steps": res.steps, "maximal_after": len(after),
            "trace": [{"path": a, "reduction": b} for a, b in res.trace] if args.trace else None, "proof": nd_to_json(res.proof)}
    out.emit("\n".join(text), data)
    return 0


def cmd_cutelim(args, out: Output) -> int:
    doc = _read_doc(args.file)
    if doc.system != "sequent":
        raise ProofbenchError("cutelim takes a sequent-calculus document")
    sys_ = _sk_system(doc, args.mode)
    rep = sequent.check_sk(doc.root, sys_)
    if not rep.valid:
        out.emit("input proof is invalid\n" + rep.to_text(), {"valid": False, **rep.to_json()})
        return 1
    cuts = sum(1 for _, n in sk_walk(doc.root) if n.rule == "Cut")
    res = sequent.cut_eliminate(doc.root, max_steps=args.max_steps)
    sub = sequent.sk_subformula_check(res)
    if args.output:
        Path(args.output).write_text(dump_document(ProofDocument("sequent", doc.ruleset, res, [])),
                                     encoding="utf-8")
    text = [f"end-sequent: {print_sequent(res.sequent)}", f"cuts before: {cuts}",
            f"cuts after: {sum(1 for _, n in sk_walk(res) if n.rule == 'Cut')}",
            f"size: {doc.root.size()} -> {res.size()} nodes",
            f"subformula property: {'pass' if sub.passed else 'fail'}",
            "cut-free proof:", sk_to_text(res, 1)]
    data = {"end_sequent": print_sequent(res.sequent), "cuts_before": cuts, "cuts_after": 0,
            "size_before": doc.root.size(), "size_after": res.size(), "subformula": sub.passed,
            "proof": sk_to_json(res)}
    out.emit("\n".join(text), data)
    return 0


def cmd_subformula(args, out: Output) -> int:
    doc = _read_doc(args.file)
    if doc.system == "nd":
        rs = _nd_ruleset(doc, args.ruleset, True)
        rep = natded.nd_subformula_check(doc.root, rs)
    elif doc.system == "sequent":
        rep = sequent.sk_subformula_check(doc.root)
    else:
        raise ProofbenchError("subformula takes a natural-deduction or sequent document")
    out.emit(rep.to_text(), rep.to_json())
    return 0 if rep.passed else 1


def cmd_prove(args, out: Output) -> int:
    goal = decide.as_sequent(args.goal)
    b = decide.SearchBudget(max_depth=args.max_depth, max_nodes=args.max_nodes,
                            fragment=args.fragment)
    if args.logic == "classical":
        if b.fragment is not None:
            raise ProofbenchError("--fragment applies to intuitionistic search only")
        v = decide.prove_lk(goal, b)
    elif b.fragment is not None:
        v = decide.prove_fragment(goal, b)
    else:
        v = decide.prove_int(goal, b)
    text = [f"goal: {print_sequent(goal)}", f"logic: {args.logic}"
            + (f" (fragment {','.join(sorted(b.fragment))})" if b.fragment else ""),
            f"verdict: {v.status}"]
    if v.countermodel:
        text.append("countermodel: " + ", ".join(f"{k}={'T' if x else 'F'}"
                                                 for k, x in sorted(v.countermodel.items())))
    if v.note:
        text.append(f"note: {v.note}")
    data = {"goal": print_sequent(goal), "logic": args.logic, "verdict": v.status,
            "countermodel": v.countermodel, "note": v.note}
    if v.proved and args.show_proof:
        if isinstance(v.proof, SKNode):
            text += ["proof:", sk_to_text(v.proof, 1)]
            data["proof"] = sk_to_json(v.proof)
        else:
            text += ["proof:", nd_to_text(v.proof, 1)]
            data["proof"] = nd_to_json(v.proof)
    out.emit("\n".join(text), data)
    return 0 if v.proved else 1


def _load_def(args):
    if args.builtin:
        return harmony.builtin(args.builtin)
    p = Path(args.definition)
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except OSError as e:
        raise ProofbenchError(f"cannot read {args.definition}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise ProofbenchError(f"{args.definition}: invalid JSON: {e}") from e
    return harmony.define_connective(doc)


def cmd_audit(args, out: Output) -> int:
    if args.probe_size < 0 or args.depth <= 0:
        raise ProofbenchError("probe size must be >= 0 and depth > 0")
    d = _load_def(args)
    rep = harmony.audit(d, probe_size=args.probe_size, depth=args.depth)
    out.emit(rep.to_text(), rep.to_json())
    return 0 if rep.harmonious else 1


def cmd_enumerate(args, out: Output) -> int:
    atoms = [a.strip() for a in args.atoms.split(",") if a.strip()]
    if args.nodes < 0 or not atoms or args.glivenko_nodes < 0:
        raise ProofbenchError("--nodes and --glivenko-nodes must be >= 0 and --atoms nonempty")
    rep = decide.enumerate_verify(args.nodes, atoms, glivenko_nodes=args.glivenko_nodes,
                                  kernel=args.kernel)
    out.emit(rep.to_text(), rep.to_json())
    return 0 if rep.ok else 1


# ---------------------------------------------------------------- demos

def _literal_note(name) -> list:
    """Compare a shipped fixture with the figure exactly as printed."""
    lit = name + ".paper-literal"
    path = fixture_path(lit)
    if not path.exists():
        return []
    if name.endswith(".json"):
        try:
            lit_def = load_connective(lit)
        except ProofbenchError as e:
            return [f"printed form ({lit}) does not load: {e}"]
        rep = harmony.audit(lit_def)
        return [f"printed form ({lit}): {rep.verdict}",
                f"the corrected definition {name} is used instead"]
    try:
        doc = load_proof(path.read_bytes(), base_dir=path.parent)
    except ProofbenchError as e:
        return [f"printed form ({lit}) does not load: {e}", f"the corrected fixture {name} is used instead"]
    fixed = load_fixture(name)
    if doc.system == "nd":
        rep = natded.check_nd(doc.root, natded.ruleset(doc.ruleset, connectives=doc.declarations))
    else:
        rep = sequent.check_sk(doc.root, _sk_system(doc))
    if not rep.valid:
        path_, msg = rep.diagnostics[0]
        return [f"printed form ({lit}) does not check: {path_}: {msg}",
                f"the corrected fixture {name} is used instead"]
    if doc.system == "nd" and rep.open_assumptions:
        opens = ", ".join(print_formula(f) for f in rep.open_assumptions)
        return [f"printed form ({lit}) checks but leaves {opens} open",
                f"the corrected fixture {name} is used instead"]
    if doc.system == "nd" and doc.root.formula != fixed.root.formula:
        return [f"printed form ({lit}) proves {print_formula(doc.root.formula)} instead"]
    return [f"printed form ({lit}) also checks"]


def _nd_verdicts(name, systems):
    doc = load_fixture(name)
    lines, ok = [], True
    for rsname, expect in systems:
        rep = natded.check_nd(doc.root, natded.ruleset(rsname, connectives=doc.declarations))
        lines.append(f"{name} under {rsname}: {'valid' if rep.valid else 'invalid'}")
        ok &= rep.valid == expect
    return doc, lines, ok


def _demo_detour():
    doc, lines, ok = _nd_verdicts("detour.ndproof", [("NJ", True)])
    peaks = natded.maximal_formulas(doc.root, natded.NJ)
    res = natded.normalize_with_trace(doc.root, natded.NJ)
    lines.append(f"maximal formulas: {len(peaks)} ({', '.join(print_formula(nd_at(doc.root, p).formula) for p in peaks)})")
    lines.append(f"normalized in {res.steps} step(s); normal form:")
    lines.append(nd_to_text(res.proof, 1))
    after = natded.maximal_formulas(res.proof, natded.NJ)
    ok &= len(peaks) == 1 and not after
    return ok, "an introduction followed at once by its elimination is a removable detour", lines


def _demo_peirce_nd():
    doc, lines, ok = _nd_verdicts("peirce.ndproof", [("NK-DNE", True), ("NJ", False)])
    v = decide.prove_fragment(doc.root.formula, decide.SearchBudget(fragment="imp"))
    lines.append(f"->-fragment search: {v.status}")
    w = decide.prove_int(doc.root.formula)
    lines.append(f"intuitionistic search: {w.status}")
    ok &= v.refuted and w.refuted
    return ok, "Peirce's law needs a classical rule and cannot be proved with -> rules alone", \
        lines + _literal_note("peirce.ndproof")


def _sk_verdicts(name):
    doc = load_fixture(name)
    lk = sequent.check_sk(doc.root, sequent.LK)
    lj = sequent.check_sk(doc.root, sequent.LJ)
    lines = [f"{name}: end-sequent {print_sequent(doc.root.sequent)}",
             f"  LK: {'valid' if lk.valid else 'invalid'}", f"  LJ: {'valid' if lj.valid else 'invalid'}"]
    if not lj.valid:
        lines.append(f"  LJ rejects at {lj.diagnostics[0][0]}: {lj.diagnostics[0][1]}")
    sub = sequent.sk_subformula_check(doc.root)
    lines.append(f"  cut-free subformula property: {'pass' if sub.passed else 'fail'}")
    return doc, lines, lk.valid and not lj.valid and sub.passed


def _demo_peirce_lk():
    doc, lines, ok = _sk_verdicts("peirce.skproof")
    cdoc = load_fixture("peirce_cut.skproof")
    res = sequent.cut_eliminate(cdoc.root)
    same = res.sequent == cdoc.root.sequent
    lines.append(f"peirce_cut.skproof: cut eliminated, end-sequent {'unchanged' if same else 'CHANGED'}, "
                 f"{cdoc.root.size()} -> {res.size()} nodes")
    ok &= same and not sequent.has_cut(res)
    return ok, "Peirce's law has a cut-free LK proof that needs two formulas on the right", \
        lines + _literal_note("peirce.skproof")


def _demo_disj_imp_nd():
    doc, lines, ok = _nd_verdicts("disj_imp.ndproof", [("NK-RAA", True), ("NJ", False)])
    v = decide.prove_fragment(doc.root.formula, decide.SearchBudget(fragment="or,imp"))
    lines.append(f"{{|,->}}-fragment search: {v.status}")
    ok &= v.refuted
    return ok, "A | (A -> B) is classical and not provable from the | and -> rules alone", \
        lines + _literal_note("disj_imp.ndproof")


def _demo_disj_imp_lk():
    doc, lines, ok = _sk_verdicts("disj_imp.skproof")
    return ok, "the LK proof of A | (A -> B) uses a two-formula succedent, so LJ rejects it", \
        lines + _literal_note("disj_imp.skproof")


def _demo_lem_nd():
    doc, lines, ok = _nd_verdicts("lem.ndproof", [("NK-DNE", True), ("NJ", False)])
    w = decide.prove_int(doc.root.formula)
    lines.append(f"intuitionistic search: {w.status}")
    ok &= w.refuted
    return ok, "excluded middle follows from double-negation elimination but not in NJ", \
        lines + _literal_note("lem.ndproof")


def _demo_lem_lk():
    doc, lines, ok = _sk_verdicts("lem.skproof")
    return ok, "the LK proof of A | ~A passes through => A, ~A, which LJ forbids", \
        lines + _literal_note("lem.skproof")


def _demo_tonk():
    d = load_connective("tonk.json")
    rep = harmony.audit(d)
    lines = [f"audit verdict: {rep.verdict}",
             f"local soundness: {'pass' if rep.locally_sound.passed else 'fail'}",
             f"conservativeness: {'pass' if rep.conservative.passed else 'fail'}"
             + (f", witness {print_sequent(rep.conservative.witness_sequent)}"
                if rep.conservative.witness_sequent is not None else "")]
    if rep.conservative.witness is not None:
        lines += ["witness derivation:", nd_to_text(rep.conservative.witness, 1)]
    doc, more, ok = _nd_verdicts("tonk_pq.ndproof", [("NJ", True)])
    lines += more + _literal_note("tonk.json")
    ok &= (not rep.conservative.passed and rep.conservative.witness_sequent is not None
           and print_sequent(rep.conservative.witness_sequent) == "p => q")
    return ok, "tonk makes every formula derivable from every other", lines


def _demo_classical():
    lines, ok = [], True
    for rsname, name in natded.CLASSICAL_FIXTURES:
        doc = load_fixture(name)
        a = natded.check_nd(doc.root, natded.ruleset(rsname))
        b = natded.check_nd(doc.root, natded.NJ)
        lines.append(f"{name}: {print_formula(doc.root.formula)} valid under {rsname}: "
                     f"{'yes' if a.valid else 'no'}; under NJ: {'yes' if b.valid else 'no'}")
        ok &= a.valid and not b.valid
    return ok, "DNE, LEM, RAA and CD each give classical logic over NJ", lines


DEMOS = {
    "detour": _demo_detour,
    "peirce-nd": _demo_peirce_nd,
    "peirce-lk": _demo_peirce_lk,
    "disj-imp-nd": _demo_disj_imp_nd,
    "disj-imp-lk": _demo_disj_imp_lk,
    "lem-nd": _demo_lem_nd,
    "lem-lk": _demo_lem_lk,
    "tonk": _demo_tonk,
    "classical-equivalences": _demo_classical,
}


def cmd_demo(args, out: Output) -> int:
    if args.id not in DEMOS:
        raise ProofbenchError(f"unknown demo {args.id!r}; choose from {', '.join(DEMOS)}")
    ok, claim, lines = DEMOS[args.id]()
    text = [f"demo {args.id}", f"claim: {claim}", *lines, f"result: {'as expected' if ok else 'UNEXPECTED'}"]
    out.emit("\n".join(text), {"demo": args.id, "claim": claim, "lines": lines, "as_expected": ok})
    return 0 if ok else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="proofbench", parents=[common],
                                description="Proof checkers, normalizers and audits.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check a proof document")
    c.add_argument("file")
    c.add_argument("--system", choices=sorted(_SYSTEM_ALIASES))
    c.add_argument("--ruleset", help="ND ruleset (NJ, NK-DNE, NK-LEM, NK-RAA, NK-CD)")
    c.add_argument("--ge", action="store_true", help="allow general elimination rules")
    c.add_argument("--mode", choices=("lk", "lj", "LK", "LJ"))
    c.set_defaults(func=cmd_check)

    n = sub.add_parser("normalize", parents=[common], help="normalize an NJ proof")
    n.add_argument("file")
    n.add_argument("--ruleset")
    n.add_argument("--trace", action="store_true")
    n.add_argument("--max-steps", type=int, default=10000)
    n.add_argument("--output")
    n.set_defaults(func=cmd_normalize)

    k = sub.add_parser("cutelim", parents=[common], help="eliminate cuts from a sequent proof")
    k.add_argument("file")
    k.add_argument("--mode", choices=("lk", "lj", "LK", "LJ"))
    k.add_argument("--max-steps", type=int, default=200000)
    k.add_argument("--output")
    k.set_defaults(func=cmd_cutelim)

    s = sub.add_parser("subformula", parents=[common], help="check the subformula property")
    s.add_argument("file")
    s.add_argument("--ruleset")
    s.set_defaults(func=cmd_subformula)

    v = sub.add_parser("prove", parents=[common], help="search for a proof")
    v.add_argument("--logic", choices=("classical", "intuitionistic"), default="classical")
    v.add_argument("--goal", required=True)
    v.add_argument("--fragment")
    v.add_argument("--max-depth", type=int, default=10000)
    v.add_argument("--max-nodes", type=int, default=1000000)
    v.add_argument("--show-proof", action="store_true")
    v.set_defaults(func=cmd_prove)

    a = sub.add_parser("audit", parents=[common], help="audit a connective definition")
    g = a.add_mutually_exclusive_group(required=True)
    g.add_argument("--def", dest="definition")
    g.add_argument("--builtin", choices=sorted(harmony.BUILTIN_DEFS))
    a.add_argument("--probe-size", type=int, default=4)
    a.add_argument("--depth", type=int, default=8)
    a.set_defaults(func=cmd_audit)

    d = sub.add_parser("demo", parents=[common], help="replay a shipped figure")
    d.add_argument("id")
    d.set_defaults(func=cmd_demo)

    e = sub.add_parser("enumerate-verify", parents=[common], help="oracle-equivalence run")
    e.add_argument("--nodes", type=int, required=True)
    e.add_argument("--atoms", default="p,q")
    e.add_argument("--glivenko-nodes", type=int, default=5)
    e.add_argument("--kernel", action="store_true", help="re-check every engine proof")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    out = Output(getattr(args, "format", "text"), getattr(args, "quiet", False))
    try:
        return args.func(args, out)
    except (ProofbenchError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:   # exit codes stay total
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
