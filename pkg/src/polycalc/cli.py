"""Command-line front end: ``polycalc <command> ...``.

Every command reads formulas and terms in the concrete syntax of
:mod:`polycalc.concrete`.  Contexts are ``x: A; y: B`` lists, given inline
or as a file of ``x : A`` lines (``--ctx`` accepts either; ``--ctx-file``
forces a file).  Term and judgment arguments may likewise be file paths.
A judgment is ``<context> |- <term>``; a judgment without a turnstile is a
bare term typed under ``--ctx``.  Output is plain text, or JSON with
``--json`` where it makes sense.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .concrete import ParseError, parse_context_decls, parse_formula, parse_term, show
from .expansion import c_expansion, expansion_pair, weak_expansion
from .fragments import FRAGMENTS, in_fragment
from .kripke import countermodel_search, three_world_countermodel
from .rewrite import (
    RewriteTrace, beta_eta_normalize, beta_normalize, bounded_join, equiv_beta_eta, normalize_trace, replay,
    verify_trace,
)
from .syntax import alpha_eq
from .proofs import atomization_chain, eta_eps_trace
from .translations import TRANSLATIONS, target_context, translate
from .typecheck import TypingError, typecheck

MODES = {"rp": "RP", "ff": "FF", "eps": "EPS", "esf": "ESF"}
RULE_SETS = {"beta": ("ImpBeta", "ForallBeta"),
             "betaeta": ("ImpBeta", "ForallBeta", "ImpEta", "ForallEta"),
             "betaetaeps": ("ImpBeta", "ForallBeta", "ImpEta", "ForallEta", "Epsilon")}


def _text(arg: str) -> str:
    """An argument that names an existing file stands for that file's contents."""
    try:
        path = Path(arg)
        if "\n" not in arg and len(arg) < 4096 and path.is_file():
            return path.read_text()
    except OSError:
        pass
    return arg


def _ctx(args) -> dict:
    src = _text(args.ctx) if args.ctx else ""
    if getattr(args, "ctx_file", None):
        src += "\n" + Path(args.ctx_file).read_text()
    return parse_context_decls(src)


def _add_ctx(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ctx", default="", help="typing context, inline ('x: Y \\/ Z; f: Y -> W') or a file")
    p.add_argument("--ctx-file", help="file with one 'x : A' declaration per line")


def _judgment(args, src: str):
    """Context and term of a judgment argument (``ctx |- term``, or a bare term under --ctx)."""
    src = _text(src)
    ctx = _ctx(args)
    for turnstile in ("|-", "\u22a2"):
        if turnstile in src:
            left, right = src.split(turnstile, 1)
            ctx.update(parse_context_decls(left))
            return ctx, parse_term(right.strip())
    return ctx, parse_term(src.strip())


def _out(args, data, text: str) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False) if getattr(args, "json", False) else text)


def cmd_classify(args) -> int:
    a = parse_formula(_text(args.formula))
    if args.fragment:
        if args.fragment not in FRAGMENTS:
            raise ValueError(f"unknown fragment {args.fragment!r}; known: {', '.join(FRAGMENTS)}")
        print("true" if in_fragment(a, args.fragment) else "false")
        return 0
    tags = {tag: in_fragment(a, tag) for tag in FRAGMENTS}
    _out(args, {"formula": show(a), "fragments": tags},
         f"{show(a)}\n" + "\n".join(f"  {t:8} {'yes' if v else 'no'}" for t, v in tags.items()))
    return 0


def cmd_check(args) -> int:
    ctx, t = _judgment(args, args.term)
    try:
        ty = typecheck(ctx, t, args.system)
    except TypingError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    data = {"ctx": {x: show(a) for x, a in ctx.items()}, "term": show(t), "type": show(ty),
            "system": args.system}
    if args.emit_judgment == "json":
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        _out(args, data, show(ty))
    return 0


def cmd_expand(args) -> int:
    src = args.formula_opt or args.formula
    if not src:
        raise ValueError("expand needs a formula (positional or --formula)")
    a = parse_formula(_text(src))
    if args.functor:
        u = parse_term(args.context or "[]")
        out = c_expansion(a, args.functor, u)
        _out(args, {"formula": show(a), "variable": args.functor, "context": show(u), "expansion": show(out)},
             show(out))
        return 0
    p = expansion_pair(a)
    data = {"formula": show(a), "elim": show(p.elim), "intro": show(p.intro), "atom": p.atom,
            "weak_expansion": show(weak_expansion(a))}
    _out(args, data, "\n".join(f"{k}: {v}" for k, v in data.items()))
    return 0


def _source_system(ctx: dict, t) -> str:
    """NI2RP when the source avoids connectives, NI2P otherwise."""
    try:
        typecheck(ctx, t, "NI2RP")
        return "NI2RP"
    except TypingError:
        return "NI2P"


def cmd_translate(args) -> int:
    ctx, t = _judgment(args, args.term)
    tag = MODES[args.mode] if args.mode else args.to
    src_sys = _source_system(ctx, t)
    if tag in ("FF", "EPS") and src_sys != "NI2RP":
        tag += "_TOTAL"
    out = translate(tag, ctx, t)
    out_ctx = target_context(tag, ctx)
    data = {"translation": tag, "term": show(out)}
    traces: dict[str, RewriteTrace | None] = {}
    if args.then_normalize:
        tr = normalize_trace(out, args.then_normalize, out_ctx)
        out = tr.end
        data["normal_form"] = show(out)
        traces["normalize"] = tr
    if args.emit_trace:
        if tag == "EPS":
            traces["eta_eps"] = eta_eps_trace(ctx, t)
        if tag in ("FF_TOTAL", "EPS_TOTAL"):
            traces["ff_to_eps"], traces["eps_to_esf"] = atomization_chain(ctx, t)
        if not traces:
            raise ValueError(f"no trace relates the {args.mode or args.to} image to its source; "
                             "add --then-normalize")
        data["traces"] = {k: (v.to_json() if v is not None else None) for k, v in traces.items()}
    if args.typed:
        data["source_type"] = show(typecheck(ctx, t, src_sys))
        data["type"] = show(typecheck(out_ctx, out, "NI2P"))
    if args.emit_trace:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        _out(args, data, show(out) + (f"\n  : {data['type']}" if args.typed else ""))
    return 0


def _rules(args) -> str:
    if args.rules:
        return args.rules
    return "betaeta" if getattr(args, "eta", False) else "beta"


def cmd_normalize(args) -> int:
    t = parse_term(_text(args.term))
    rules = _rules(args)
    if rules not in ("beta", "betaeta"):
        raise ValueError("normalize supports --rules beta or betaeta")
    out = beta_eta_normalize(t) if rules == "betaeta" else beta_normalize(t)
    _out(args, {"term": show(out), "rules": rules}, show(out))
    return 0


def cmd_equiv(args) -> int:
    a, b = parse_term(_text(args.left)), parse_term(_text(args.right))
    rules = args.rules or "betaeta"
    if args.bounded is not None:
        ctx = _ctx(args)
        tr = bounded_join(a, b, rules=RULE_SETS[rules], max_steps=args.bounded, ctx=ctx)
        data = {"equivalent": tr is not None, "rules": rules, "bounded": args.bounded,
                "trace": tr.to_json() if tr is not None else None}
        _out(args, data, ("joinable" if tr is not None else f"no join within {args.bounded} steps"))
        return 0 if tr is not None else 1
    if rules == "betaeta":
        same = equiv_beta_eta(a, b)
        na, nb = beta_eta_normalize(a), beta_eta_normalize(b)
    elif rules == "beta":
        na, nb = beta_normalize(a), beta_normalize(b)
        same = alpha_eq(na, nb)
    else:
        raise ValueError(f"--rules {rules} is only searchable: add --bounded N")
    _out(args, {"equivalent": same, "rules": rules, "left": show(na), "right": show(nb)},
         "equivalent" if same else "not equivalent")
    return 0 if same else 1


def cmd_replay(args) -> int:
    tr = RewriteTrace.from_json(Path(args.trace).read_text())
    r = verify_trace(tr, check_types=not args.untyped)
    if args.show and r.ok:
        for t in replay(tr, check_types=not args.untyped):
            print("  " + show(t))
    _out(args, {"ok": r.ok, "failed_at": r.failed_at, "reason": r.reason, "steps": len(tr.steps)},
         "trace verifies" if r.ok else f"trace fails at step {r.failed_at}: {r.reason}")
    return 0 if r.ok else 1


def cmd_kripke(args) -> int:
    a = parse_formula(args.formula)
    if args.search:
        m = countermodel_search(a, args.search)
        if m is None:
            print(json.dumps({"formula": show(a), "countermodel": None}, ensure_ascii=False))
            return 1
        print(json.dumps({"formula": show(a), "forced_at_bottom": False, **m.to_json()},
                         indent=2, ensure_ascii=False))
        return 0
    m = three_world_countermodel()
    print(json.dumps({"formula": show(a), "forced_at_bottom": m.forces(m.bottom, a), **m.to_json()},
                     indent=2, ensure_ascii=False))
    return 0


def cmd_verify(args) -> int:
    from .suites import SUITES, SuiteConfig, run_suite
    if args.list:
        for s in SUITES.values():
            tag = f"[{s.criterion}]" if s.criterion else "[-]"
            print(f"{s.name:28} {tag:5} {s.description}")
        return 0
    names = list(SUITES) if args.all or not args.suite else args.suite
    cfg = SuiteConfig(size=args.size, seed=args.seed, extra=args.extra)
    reports = []
    for n in names:
        r = run_suite(n, config=cfg)
        reports.append(r)
        if not args.json:
            print(r.summary(), flush=True)
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2, ensure_ascii=False))
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polycalc", description="Polynomial connectives, their second-order "
                                "encodings, atomic translations and the checks relating them.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="which formula fragments a formula belongs to")
    s.add_argument("formula")
    s.add_argument("--fragment", metavar="TAG", help="print true/false for membership in one fragment")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("check", help="typecheck a term or judgment (exit 1 on a type error)")
    s.add_argument("term", help="term, 'ctx |- term' judgment, or a file holding either")
    s.add_argument("--system", default="NI2P")
    _add_ctx(s)
    s.add_argument("--emit-judgment", choices=["json"], help="print the derived judgment")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("expand", help="expansion pair of a formula, or C-expansion of a context")
    s.add_argument("formula", nargs="?")
    s.add_argument("--formula", dest="formula_opt", metavar="A", help="same as the positional formula")
    s.add_argument("--functor", metavar="X", help="read the formula as strongly positive in X and expand --context")
    s.add_argument("--context", help="single-hole context for --functor (default [])")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_expand)

    s = sub.add_parser("translate", help="translate a term or judgment")
    s.add_argument("term", help="term, 'ctx |- term' judgment, or a file holding either")
    s.add_argument("--mode", choices=list(MODES), help="rp, ff, eps or esf (ff/eps of a term with "
                   "connectives go through rp first)")
    s.add_argument("--to", choices=TRANSLATIONS, default="RP")
    s.add_argument("--then-normalize", choices=["beta", "betaeta"], help="normalize the image")
    s.add_argument("--emit-trace", choices=["json"], help="print the rewrite traces relating source, "
                   "image and normal form")
    s.add_argument("--typed", action="store_true", help="also typecheck source and image")
    _add_ctx(s)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_translate)

    s = sub.add_parser("normalize", help="beta (or beta-eta) normal form")
    s.add_argument("term")
    s.add_argument("--rules", choices=["beta", "betaeta"])
    s.add_argument("--eta", action="store_true", help="same as --rules betaeta")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_normalize)

    s = sub.add_parser("equiv", help="decide equivalence of two connective-free terms, "
                       "or search for a bounded join")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--rules", choices=list(RULE_SETS))
    s.add_argument("--bounded", type=int, metavar="N", help="search a conversion trace of at most N steps")
    _add_ctx(s)
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_equiv)

    s = sub.add_parser("replay", help="replay and verify a JSON rewrite trace")
    s.add_argument("trace")
    s.add_argument("--untyped", action="store_true", help="skip typing side conditions")
    s.add_argument("--show", action="store_true", help="print every intermediate term")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_replay)

    s = sub.add_parser("kripke", help="forcing in the three-world countermodel, or countermodel search")
    s.add_argument("--formula", required=True)
    s.add_argument("--search", type=int, metavar="N", help="search regular models with up to N worlds")
    s.set_defaults(fn=cmd_kripke)

    s = sub.add_parser("verify", help="run verification suites")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--suite", action="append", metavar="NAME")
    g.add_argument("--all", action="store_true")
    g.add_argument("--list", action="store_true")
    s.add_argument("--size", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--extra", type=int, default=0, help="random sizes above the exhaustive bound")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, TypingError, ValueError, KeyError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
