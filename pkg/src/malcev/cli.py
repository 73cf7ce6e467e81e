"""Command-line front end.

Exit status: 0 for definitive answers, 2 when a verdict is Unknown or
NotAtBound, 1 on input errors. With --json the output is a single JSON
document with sorted keys, so identical configurations (including the seed)
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fileio
from .fbcheck import check_finite_basis, witness_ascending_chain
from .freering import ModuleVec, NCPoly
from .membership import (
    NOT_AT_BOUND,
    UNKNOWN,
    default_bound,
    equal_in_variety,
    ideal_member,
    submodule_member,
)
from .models import SearchParams, find_separating_model
from .normalform import nf_equal, normalize
from .presentation import present_module, present_ring, synthesize_basis
from .interp import canonicalize
from .terms import parse_term

SCHEMA_VERSION = 1


def _env_seed() -> int:
    try:
        return int(os.environ.get("MALCEV_SEED", "0"))
    except ValueError:
        return 0


def _search_params(args) -> SearchParams:
    return SearchParams(
        max_q=args.max_q,
        max_dim=args.max_dim,
        trials=args.trials,
        seed=args.seed,
    )


def _add_search_flags(p):
    p.add_argument("--seed", type=int, default=_env_seed())
    p.add_argument("--max-q", type=int, default=5)
    p.add_argument("--max-dim", type=int, default=4)
    p.add_argument("--trials", type=int, default=200)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="malcev",
        description="normal forms, presentations, and finite-basis checks "
        "for abelian Mal'cev varieties",
    )
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="canonical normal form of a term")
    p.add_argument("--sig", required=True, help="signature file or inline 'l=.. n=..'")
    p.add_argument("--term", required=True)

    p = sub.add_parser("equal-u", help="decide equality in the ambient variety")
    p.add_argument("--sig", required=True)
    p.add_argument("--term-a", required=True)
    p.add_argument("--term-b", required=True)

    p = sub.add_parser("equal", help="decide equality in a presented subvariety")
    p.add_argument("--basis", required=True)
    p.add_argument("--term-a", required=True)
    p.add_argument("--term-b", required=True)
    p.add_argument("--degree-bound", type=int, default=None)
    _add_search_flags(p)

    p = sub.add_parser("present", help="ring and module presentations of a basis")
    p.add_argument("--basis", required=True)

    p = sub.add_parser("synthesize", help="identity basis from presentations")
    p.add_argument("--ring", required=True)
    p.add_argument("--module", required=True)

    p = sub.add_parser("member", help="bounded ideal or submodule membership")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--ring", action="store_true")
    kind.add_argument("--module", action="store_true")
    p.add_argument("--target", required=True, help="target as JSON")
    p.add_argument("--gens", required=True, help="generator file (JSON)")
    p.add_argument("--degree-bound", type=int, default=None)

    p = sub.add_parser("check-fb", help="finite-basis report for a basis")
    p.add_argument("--basis", required=True)
    p.add_argument("--degree-bound", type=int, default=None)

    p = sub.add_parser("chain", help="ascending-chain independence report")
    p.add_argument("--schema", required=True, help="builtin name or JSON family file")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--degree-bound", type=int, required=True)

    p = sub.add_parser("separate", help="search for a separating finite model")
    p.add_argument("--basis", required=True)
    p.add_argument("--term-a", required=True)
    p.add_argument("--term-b", required=True)
    _add_search_flags(p)

    p = sub.add_parser("interpret", help="translate a general presentation")
    p.add_argument("--general", required=True)

    return parser


def cmd_normalize(args):
    sig = fileio.load_signature(args.sig)
    t = parse_term(args.term, sig)
    nf = normalize(t, sig)
    report = {"normal_form": nf.to_json()}
    human = [f"normal form: {nf}"]
    return report, human, 0


def cmd_equal_u(args):
    sig = fileio.load_signature(args.sig)
    a = parse_term(args.term_a, sig)
    b = parse_term(args.term_b, sig)
    same = nf_equal(a, b, sig)
    word = "equal" if same else "distinct"
    return {"result": word}, [word], 0


def cmd_equal(args):
    vp = fileio.load_basis(args.basis)
    a = parse_term(args.term_a, vp.sig)
    b = parse_term(args.term_b, vp.sig)
    verdict = equal_in_variety(a, b, vp, bound=args.degree_bound, search=_search_params(args))
    report = {"verdict": verdict.to_json()}
    human = [f"verdict: {verdict.status} (degree bound {verdict.bound})"]
    if verdict.model is not None:
        human.append(f"separating model: {json.dumps(verdict.model.to_json(), sort_keys=True)}")
    return report, human, 0 if verdict.status != UNKNOWN else 2


def cmd_present(args):
    vp = fileio.load_basis(args.basis)
    rp = present_ring(vp)
    mp = present_module(vp)
    report = {"ring_presentation": rp.to_json(), "module_presentation": mp.to_json()}
    human = [
        f"ring: {rp.n} generators, {len(rp.relations)} relations",
        *[f"  rel: {p}" for p in rp.relations],
        f"module: {mp.ell} generators, {len(mp.relations)} relations",
        *[f"  rel: {v}" for v in mp.relations],
    ]
    return report, human, 0


def cmd_synthesize(args):
    rp = fileio.load_ring_presentation(args.ring)
    mp = fileio.load_module_presentation(args.module)
    vp = synthesize_basis(rp, mp)
    text = fileio.dump_identity_text(vp)
    return {"identity_file": text}, text.splitlines(), 0


def cmd_member(args):
    n, ell, ideal_gens, module_gens = fileio.load_gens_file(args.gens)
    target_data = json.loads(args.target)
    if args.ring:
        target = NCPoly.from_json(n, target_data)
        bound = args.degree_bound or default_bound(
            target.degree(), *[g.degree() for g in ideal_gens]
        )
        verdict = ideal_member(target, ideal_gens, max(bound, target.degree()))
    else:
        target = ModuleVec.from_json(ell, n, target_data)
        degs = [target.degree()] + [g.degree() for g in ideal_gens]
        degs += [v.degree() for v in module_gens]
        bound = args.degree_bound or default_bound(*degs)
        verdict = submodule_member(target, module_gens, ideal_gens, max(bound, target.degree()))
    report = {"verdict": verdict.to_json()}
    human = [f"verdict: {verdict.status} (degree bound {verdict.bound})"]
    return report, human, 0 if verdict.status != NOT_AT_BOUND else 2


def cmd_check_fb(args):
    vp = fileio.load_basis(args.basis)
    fb = check_finite_basis(vp, bound=args.degree_bound)
    report = {"report": fb.to_json()}
    human = [
        f"conclusion: {fb.conclusion}",
        f"ring: {fb.ring.n} generators, {len(fb.ring.relations)} relations",
        f"module: {fb.module.ell} generators, {len(fb.module.relations)} relations",
        f"consistency condition on module generators: {fb.fic.condition_e()}",
    ]
    return report, human, 0


def cmd_chain(args):
    n, family = fileio.load_chain_family(args.schema)
    report_obj = witness_ascending_chain(family, args.kmax, args.degree_bound)
    report = {"chain": report_obj.to_json()}
    human = [report_obj.summary()]
    for step in report_obj.steps:
        human.append(f"  k={step.k}: {step.target} -> {step.verdict.status}")
    code = 0 if all(s.verdict.status != NOT_AT_BOUND for s in report_obj.steps) else 2
    return report, human, code


def cmd_separate(args):
    vp = fileio.load_basis(args.basis)
    a = parse_term(args.term_a, vp.sig)
    b = parse_term(args.term_b, vp.sig)
    model = find_separating_model(a, b, vp, _search_params(args))
    if model is None:
        return {"model": None}, ["no separating model found in the search space"], 2
    return {"model": model.to_json()}, [f"model: {json.dumps(model.to_json(), sort_keys=True)}"], 0


def cmd_interpret(args):
    gp = fileio.load_general(args.general)
    imap, vp = canonicalize(gp)
    text = fileio.dump_identity_text(vp)
    report = {"interpretation": imap.to_json(), "identity_file": text}
    human = [
        f"canonical signature: {vp.sig.header()}",
        *[f"  u{i + 1} realizes {src}" for i, src in enumerate(imap.u_sources)],
        *[f"  r{i + 1} is the {src}" for i, src in enumerate(imap.r_sources)],
        "translated identities:",
        *[f"  {line}" for line in text.splitlines()[1:]],
    ]
    return report, human, 0


COMMANDS = {
    "normalize": cmd_normalize,
    "equal-u": cmd_equal_u,
    "equal": cmd_equal,
    "present": cmd_present,
    "synthesize": cmd_synthesize,
    "member": cmd_member,
    "check-fb": cmd_check_fb,
    "chain": cmd_chain,
    "separate": cmd_separate,
    "interpret": cmd_interpret,
}

NOTES = {
    "normalize": "canonical ring/module normal form of a term",
    "equal-u": "normal-form equality decides validity in the ambient variety",
    "equal": "slice membership in the extracted congruence, with model search",
    "present": "ring and module presentations extracted from an identity basis",
    "synthesize": "identity basis rebuilt from presentation data",
    "member": "bounded-degree exact membership with integer certificates",
    "check-fb": "finite basis yields finite ring and module presentations",
    "chain": "per-step independence of an ascending relation family",
    "separate": "finite affine counterexample search",
    "interpret": "slice decomposition into the canonical signature",
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, human, code = COMMANDS[args.command](args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.json:
        report = {"schema_version": SCHEMA_VERSION, "command": args.command, **report}
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in human:
            print(line)
        print(f"[{NOTES[args.command]}]")
    return code


if __name__ == "__main__":
    sys.exit(main())
