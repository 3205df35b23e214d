"""Named verification suites: each one checks a whole family of claims over a corpus.

A suite yields :class:`Case` objects in increasing size; :func:`run_suite`
evaluates them and keeps the failures, so the first failure reported is also
the smallest one (shrinking by re-enumeration in size order).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .concrete import parse_context_decls, parse_formula, parse_term, show
from .corpus import Corpus, enumerate_formulas, enumerate_judgments
from .expansion import c_expansion, expansion_pair
from .fragments import atomic_witnesses_only, in_fragment
from .kripke import (
    DISJUNCTION_FIXTURE_A, DISJUNCTION_FIXTURE_B, DISJUNCTION_FIXTURE_TERM, OVERFLOW_REFUTED,
    RP_OR_REFUTED, build_iso_contexts, check_countermodel_facts, countermodel_search, forces,
    iter_models, three_world_countermodel, y_curly_z,
)
from .proofs import atomization_chain, conjunction_eta_trace, eta_eps_trace, translated_conversion_trace
from .rewrite import (
    Step, apply_step, beta_normalize, bounded_join, context_at, equiv_beta_eta, replay, verify_trace,
)
from .syntax import (
    OR, App, Conn, Forall, Formula, Hole, Imp, Lam, TApp, Term, TLam, TVar, Var, alpha_eq,
    ast_size, fill_avoiding, fill_capturing, formula_size, imps, lams, replace_at, subst_type_in_term,
    subterm_paths,
)
from .translations import (
    eps_atomize, esf_translate, ff_atomize, rp_context, rp_formula, rp_term, translate_context,
)
from .typecheck import TypingError, typecheck, typecheck_context

DEFAULT_SIZES = {"NIP": 7, "NI2RP": 6}


@dataclass(frozen=True)
class SuiteConfig:
    size: int | None = None          # overrides the default corpus bounds
    seed: int = 0
    extra: int = 0                   # seeded random layer above the exhaustive bound
    keep_failures: int = 10

    def bound(self, system: str) -> int:
        return self.size if self.size is not None else DEFAULT_SIZES[system]


@dataclass
class Case:
    label: str
    size: int
    check: Callable[[], bool | tuple[bool, str]]


@dataclass
class Failure:
    index: int
    label: str
    size: int
    reason: str

    def to_json(self) -> dict:
        return {"index": self.index, "label": self.label, "size": self.size, "reason": self.reason}


@dataclass
class SuiteReport:
    name: str
    cases: int = 0
    failures: list[Failure] = field(default_factory=list)
    failure_count: int = 0
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failure_count == 0 and self.cases > 0

    @property
    def minimal(self) -> Failure | None:
        return min(self.failures, key=lambda f: (f.size, f.index)) if self.failures else None

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name}: {self.cases} cases, {self.failure_count} failures, {self.wall_time:.2f}s"
        if self.minimal:
            line += f"\n    smallest failure: {self.minimal.label} ({self.minimal.reason})"
        return line

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "cases": self.cases, "failure_count": self.failure_count,
                "failures": [f.to_json() for f in self.failures], "wall_time": round(self.wall_time, 3)}


@dataclass(frozen=True)
class Suite:
    name: str
    criterion: int | None
    description: str
    cases: Callable[[SuiteConfig, Corpus | None], Iterable[Case]]


class UnknownSuite(KeyError):
    pass


SUITES: dict[str, Suite] = {}


def suite(name: str, criterion: int | None, description: str):
    def deco(fn):
        SUITES[name] = Suite(name, criterion, description, fn)
        return fn
    return deco


@lru_cache(maxsize=None)
def corpus_for(system: str, size: int, seed: int = 0, extra: int = 0, with_conversions: bool = True) -> Corpus:
    return enumerate_judgments(system, size, seed=seed, extra=extra, with_conversions=with_conversions)


def _corpus(cfg: SuiteConfig, system: str, given: Corpus | None, with_conversions: bool = True) -> Corpus:
    if given is not None and given.system == system:
        return given
    return corpus_for(system, cfg.bound(system), cfg.seed, cfg.extra, with_conversions)


def _label(j) -> str:
    ctx = ", ".join(f"{x}:{show(a)}" for x, a in j.ctx)
    return f"{ctx} |- {show(j.term)} : {show(j.type)}"


def _pair_label(p) -> str:
    return f"{p.rule} at {list(p.step.address)}: {show(p.source.term)} ~> {show(p.target.term)}"


def _same(a: Formula, b: Formula) -> bool:
    return alpha_eq(a, b)


# --------------------------------------------------------------------------
# translations preserve typing

@suite("typing-preservation", 1,
       "RP, FF-, eps- and ESF-translations of every corpus judgment typecheck at the translated type, "
       "FF/eps/ESF inside the atomic system")
def _typing_preservation(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    for j in _corpus(cfg, "NIP", given, False).judgments:
        def check(j=j):
            ctx = j.context
            cs, star, a = rp_context(ctx), rp_term(ctx, j.term), rp_formula(j.type)
            for sys_, t, what in [("NI2RP", star, "RP"), ("NI2AT", ff_atomize(cs, star), "FF"),
                                  ("NI2AT", eps_atomize(cs, star), "eps"),
                                  ("NI2AT", esf_translate(ctx, j.term), "ESF")]:
                if not _same(typecheck(cs, t, sys_), a):
                    return False, f"{what} image has the wrong type"
            return True
        yield Case("NIP " + _label(j), ast_size(j.term), check)
    for j in _corpus(cfg, "NI2RP", None, False).judgments:
        def check(j=j):
            ctx = j.context
            for t, what in [(ff_atomize(ctx, j.term), "FF"), (eps_atomize(ctx, j.term), "eps")]:
                if not _same(typecheck(ctx, t, "NI2AT"), j.type):
                    return False, f"{what} image has the wrong type"
            return True
        yield Case("NI2RP " + _label(j), ast_size(j.term), check)


# --------------------------------------------------------------------------
# the three atomizations agree up to beta

@suite("atomization-beta-chain", 2,
       "FF-atomized RP image beta-reduces to the eps-atomized one, which beta-reduces to the ESF image; "
       "traces are found, replayed and checked, and the three beta normal forms coincide")
def _beta_chain(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    for j in _corpus(cfg, "NIP", given, False).judgments:
        def check(j=j):
            ff_eps, eps_esf = atomization_chain(j.context, j.term)
            if ff_eps is None or eps_esf is None:
                return False, "no beta trace found"
            for tr, what in [(ff_eps, "FF -> eps"), (eps_esf, "eps -> ESF")]:
                r = verify_trace(tr)
                if not r:
                    return False, f"{what}: {r.reason}"
            n1, n2, n3 = (beta_normalize(t) for t in (ff_eps.start, ff_eps.end, eps_esf.end))
            if not (alpha_eq(n1, n2) and alpha_eq(n2, n3)):
                return False, "beta normal forms differ"
            return True
        yield Case(_label(j), ast_size(j.term), check)


# --------------------------------------------------------------------------
# every RP-term is eta-eps-convertible to its eps-atomization

@suite("eta-eps-traces", 3,
       "for every judgment of the universal-polynomial fragment, a transcribed eta/eps trace from u to "
       "its eps-atomization replays and typechecks")
def _eta_eps(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    for j in _corpus(cfg, "NI2RP", given, False).judgments:
        def check(j=j):
            tr = eta_eps_trace(j.context, j.term)
            if not alpha_eq(tr.end, eps_atomize(j.context, j.term)):
                return False, "trace does not end at the eps-atomization"
            r = verify_trace(tr)
            return r.ok, r.reason
        yield Case(_label(j), ast_size(j.term), check)


# --------------------------------------------------------------------------
# ESF respects beta, eta and gamma

@suite("esf-conversion-equivalence", 4,
       "for every primitive beta/eta/gamma conversion pair, the ESF images are beta-eta equivalent")
def _esf_equiv(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    for p in _corpus(cfg, "NIP", given).conversion_pairs:
        if p.rule == "ConnGammaPlus":
            continue
        def check(p=p):
            return equiv_beta_eta(esf_translate(p.source.context, p.source.term),
                                  esf_translate(p.target.context, p.target.term))
        yield Case(_pair_label(p), ast_size(p.source.term), check)


# --------------------------------------------------------------------------
# RP respects every conversion, up to beta-eta-eps

@suite("conversion-joins", 5,
       "for every primitive beta/eta/gamma/gamma+ pair, a transcribed beta-eta-eps trace joins the RP images; "
       "for beta and gamma pairs a bounded bidirectional search also finds a verified join on its own")
def _conversion_joins(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    for p in _corpus(cfg, "NIP", given).conversion_pairs:
        def check(p=p):
            ctx = p.source.context
            tr = translated_conversion_trace(ctx, p.source.term, p.step)
            if not (alpha_eq(tr.start, rp_term(ctx, p.source.term))
                    and alpha_eq(tr.end, rp_term(p.target.context, p.target.term))):
                return False, "transcribed trace has the wrong endpoints"
            r = verify_trace(tr)
            if not r:
                return False, f"transcribed trace: {r.reason}"
            if p.rule in ("ImpBeta", "ForallBeta", "ConnBeta", "ConnGamma"):
                a, b = tr.start, tr.end
                found = bounded_join(a, b, max_steps=64, ctx=tr.ctx)
                if found is None:
                    return False, "bounded search found no join"
                r = verify_trace(found)
                if not r:
                    return False, f"search trace: {r.reason}"
            return True
        yield Case(_pair_label(p), ast_size(p.source.term), check)


# --------------------------------------------------------------------------
# a generalized permutation the atomic translations do not respect

GAMMA_PLUS_CTX = "x: Y \\/ Z; c: W; f: W -> U"
GAMMA_PLUS_SOURCE = "f (case#or[W](x; y1 => c | y2 => c))"
GAMMA_PLUS_TARGET = "case#or[U](x; y1 => f c | y2 => f c)"
GAMMA_PLUS_CONTEXT = "f []"


def gamma_plus_counterexample() -> dict:
    """The atomic instance of gamma+ and the verdicts on its translated images."""
    ctx = parse_context_decls(GAMMA_PLUS_CTX)
    src, tgt = parse_term(GAMMA_PLUS_SOURCE), parse_term(GAMMA_PLUS_TARGET)
    step = Step("ConnGammaPlus", (), context=parse_term(GAMMA_PLUS_CONTEXT))
    cs = rp_context(ctx)
    esf = (esf_translate(ctx, src), esf_translate(ctx, tgt))
    ff = (ff_atomize(cs, rp_term(ctx, src)), ff_atomize(cs, rp_term(ctx, tgt)))
    return {
        "ctx": ctx, "source": src, "target": tgt, "step": step,
        "is_instance": alpha_eq(apply_step(src, step, ctx), tgt),
        "esf": esf, "ff": ff,
        "esf_equivalent": equiv_beta_eta(*esf),
        "ff_equivalent": equiv_beta_eta(*ff),
    }


@suite("gamma-plus-counterexample", 6,
       "the displayed atomic gamma+ instance has beta-eta-inequivalent ESF and FF images, and it is the only "
       "case among the corpus conversion pairs plus this instance where ESF equivalence fails")
def _gamma_plus(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    def check():
        r = gamma_plus_counterexample()
        if not r["is_instance"]:
            return False, "the pair is not a gamma+ step"
        if r["esf_equivalent"] or r["ff_equivalent"]:
            return False, "images are unexpectedly equivalent"
        return True
    yield Case(f"{GAMMA_PLUS_SOURCE} ~> {GAMMA_PLUS_TARGET}", 3, check)

    def only_one():
        inequivalent = [p for p in _corpus(cfg, "NIP", given).conversion_pairs if p.rule != "ConnGammaPlus"
                        and not equiv_beta_eta(esf_translate(p.source.context, p.source.term),
                                               esf_translate(p.target.context, p.target.term))]
        if inequivalent:
            return False, f"{len(inequivalent)} other pairs fail, e.g. {_pair_label(inequivalent[0])}"
        return True
    yield Case("no other beta/eta/gamma pair fails ESF equivalence", 99, only_one)


# --------------------------------------------------------------------------
# the three-world countermodel

@suite("kripke-countermodel", 7,
       "forcing in the three-world model reproduces the fact table behind the refutation; "
       "the bounded search refutes the RP-encoded disjunction elimination within 5 seconds")
def _kripke(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    m = three_world_countermodel()
    for i, ((w, x, src, want), _) in enumerate(check_countermodel_facts(m)):
        def check(w=w, x=x, src=src, want=want):
            env = {"X": frozenset({x})} if x else None
            got = m.forces(w, parse_formula(src), env)
            return got == want, f"forced={got}"
        tag = f" [X={{{x}}}]" if x else ""
        yield Case(f"{w}{tag} {'forces' if want else 'does not force'} {src}", formula_size(parse_formula(src)), check)

    def regular():
        return m.regular and not m.violations(), "model is not a regular Kripke model"
    yield Case("the countermodel is regular", 0, regular)

    def search():
        t = time.perf_counter()
        found = countermodel_search(RP_OR_REFUTED, 3)
        dt = time.perf_counter() - t
        if found is None:
            return False, "no countermodel within 3 worlds"
        if found.forces(found.bottom, RP_OR_REFUTED):
            return False, "returned model forces the formula"
        return dt < 5.0, f"search took {dt:.2f}s"
    yield Case(f"search refutes {show(RP_OR_REFUTED)}", formula_size(RP_OR_REFUTED), search)


# --------------------------------------------------------------------------
# formulas and their encodings

def _lp_corpus_formulas(cfg: SuiteConfig, given: Corpus | None) -> list[Formula]:
    seen, out = set(), []
    for a in enumerate_formulas(4, "LP"):
        seen.add(a)
        out.append(a)
    for j in _corpus(cfg, "NIP", given, False).judgments:
        for a in [j.type, *(b for _, b in j.ctx)]:
            if a not in seen:
                seen.add(a)
                out.append(a)
    return sorted(out, key=formula_size)


def _positive_connectives_only(a: Formula, positive: bool = True) -> bool:
    if isinstance(a, TVar):
        return True
    if isinstance(a, Imp):
        return _positive_connectives_only(a.ante, not positive) and _positive_connectives_only(a.cons, positive)
    if isinstance(a, Forall):
        return _positive_connectives_only(a.body, positive)
    return positive and all(_positive_connectives_only(b, positive) for b in a.args)


@suite("iso-contexts", 8,
       "build_iso_contexts gives contexts A* |- A and A |- A* for every propositional corpus formula; "
       "the disjunction-property derivation typechecks atomically; instantiation overflow fails in the "
       "three-world model and is blocked by the atomic restriction")
def _iso(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    for a in _lp_corpus_formulas(cfg, given):
        def check(a=a):
            c, d = build_iso_contexts(a)
            star = rp_formula(a)
            if not _same(typecheck_context({}, star, c, "NI2P"), a):
                return False, "C has the wrong type"
            if not _same(typecheck_context({}, a, d, "NI2P"), star):
                return False, "D has the wrong type"
            if in_fragment(a, "LVEE") and _positive_connectives_only(a):
                if not atomic_witnesses_only(d):
                    return False, "D uses a non-atomic witness"
                if not _same(typecheck_context({}, a, d, "NI2VEEAT"), star):
                    return False, "D does not typecheck atomically"
            return True
        yield Case(show(a), formula_size(a), check)

    def disjunction():
        a, b = parse_formula(DISJUNCTION_FIXTURE_A), parse_formula(DISJUNCTION_FIXTURE_B)
        t = parse_term(DISJUNCTION_FIXTURE_TERM)
        return _same(typecheck({}, t, "NI2AT"), rp_formula(Conn(OR, (a, b)))), "wrong type"
    yield Case("disjunction-property derivation of (A \\/ B)*", 20, disjunction)

    def overflow_model():
        m = three_world_countermodel()
        return not m.forces(m.bottom, OVERFLOW_REFUTED), "overflow formula is forced at the bottom world"
    yield Case(f"countermodel refutes {show(OVERFLOW_REFUTED)}", formula_size(OVERFLOW_REFUTED), overflow_model)

    def overflow_typing():
        a = Conn(OR, (TVar("Y"), TVar("Z")))
        c, _ = build_iso_contexts(a)
        if not _same(typecheck_context({}, rp_formula(a), c, "NI2VEE"), a):
            return False, "C fails without the atomic restriction"
        try:
            typecheck_context({}, rp_formula(a), c, "NI2VEEAT")
        except TypingError:
            return True
        return False, "C typechecks in the atomic system"
    yield Case("C for Y \\/ Z needs a non-atomic witness", 3, overflow_typing)


# --------------------------------------------------------------------------
# expansion pairs, substitution into translated contexts, C-expansion, multicontexts

def expansion_law_holds(a: Formula) -> bool:
    x = "x0"
    p = expansion_pair(a, avoid={x})
    t = fill_capturing(p.intro, fill_capturing(p.elim, Var(x)))
    if not _same(typecheck({x: a}, t, "NI2"), a):
        return False
    return alpha_eq(beta_normalize(t), Var(x)) or equiv_beta_eta(t, Var(x))


def rp_context_cases(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    """(U[t])* = U*[t*] at every term position of every corpus judgment."""
    for j in _corpus(cfg, "NIP", given, False).judgments:
        def check(j=j):
            ctx, u, lhs = j.context, j.term, rp_term(j.context, j.term)
            for path, t in subterm_paths(u):
                if not path:
                    continue
                inner = context_at(ctx, u, path)
                try:
                    a = typecheck(inner, t, "NIP")
                except TypingError:
                    continue
                rhs = fill_capturing(translate_context("RP", ctx, a, replace_at(u, path, Hole())), rp_term(inner, t))
                if not alpha_eq(lhs, rhs):
                    return False, f"differs at {list(path)}"
            return True
        yield Case("(U[t])* at every position of " + _label(j), ast_size(j.term), check)


def c_expansion_instances() -> Iterator[tuple[str, dict, Formula, Term, tuple, Term]]:
    """(label, ctx, C, U, binders, t) for the C-expansion law on small sp-X formulas."""
    y, z, w = TVar("Y"), TVar("Z"), TVar("W")
    x = TVar("X")
    for b, c2 in [(y, w), (w, w), (y, y)]:
        ctx = {"f": Imp(b, c2), "b": b, "g": Imp(y, b), "k": Imp(z, b), "w": w, "h": Imp(w, Imp(b, c2))}
        us = [App(Var("f"), Hole()),
              App(Lam("n", b, App(Var("f"), Var("n"))), Hole()),
              App(Lam("n", w, App(App(Var("h"), Var("n")), Hole())), Var("w"))]
        if b == c2:
            us.append(Hole())
        for antes in [(), (y,), (z,), (y, z), (y, y), (Imp(y, z),)]:
            cf = imps(antes, x)
            xs = tuple((f"x{i}", a) for i, a in enumerate(antes, 1))
            ts = [Var("b")] + [App(Var("g" if a == y else "k"), Var(v)) for v, a in xs if a in (y, z)]
            for u in us:
                for t in ts:
                    yield f"C={show(cf)} U={show(u)} t={show(t)}", ctx, cf, u, xs, t


def c_expansion_law(ctx: dict, cf: Formula, u: Term, xs: tuple, t: Term) -> tuple[bool, str]:
    b = typecheck({**ctx, **dict(xs)}, t, "NI2")
    phi = c_expansion(cf, "X", u, avoid=set(ctx) | {v for v, _ in xs})
    c2 = typecheck_context(ctx, b, u, "NI2")
    from .syntax import subst_formula
    if not _same(typecheck_context(ctx, subst_formula(cf, "X", b), phi, "NI2"), subst_formula(cf, "X", c2)):
        return False, "C-expansion has the wrong type"
    want = beta_normalize(lams(xs, fill_avoiding(u, t)))
    if not alpha_eq(beta_normalize(fill_avoiding(phi, lams(xs, t))), want):
        return False, "avoiding variant"
    if not alpha_eq(beta_normalize(fill_capturing(phi, lams(xs, t))), want):
        return False, "capturing variant"
    return True, ""


_H_FORMULAS = ["Y -> W", "Y -> Y -> W", "forall V. Y -> V", "(Y -> W) -> W", "forall V. (Y -> V) -> V", "W"]


def multicontext_instances() -> Iterator[tuple[str, dict, Formula, Term, Term, dict]]:
    """(label, ctx, A, principal context C, multicontext M over X, {hole: u}) for the commutation law."""
    x = TVar("X")
    ys = TVar("Y")
    multis = [
        (Hole("a"), {"a": {}}),
        (App(Lam("d", ys, Hole("a")), Var("y0")), {"a": {"d": ys}}),
        (App(App(Lam("p", x, Lam("q", x, Var("q"))), Hole("a")), Hole("b")), {"a": {}, "b": {}}),
        (App(TApp(TLam("V", Lam("p", x, Var("p"))), ys), App(Lam("d", ys, Hole("a")), Var("y0"))), {"a": {"d": ys}}),
    ]
    for src in _H_FORMULAS:
        a = parse_formula(src)
        ctx = {"y0": ys, "a0": a, "a1": Imp(ys, a)}
        # principal contexts: every prefix of an elimination chain with atomic witnesses
        chains: list[tuple[Term, Formula]] = [(Hole(), a)]
        frontier = [(Hole(), a)]
        while frontier:
            c, ty = frontier.pop()
            nxt = []
            if isinstance(ty, Imp):
                v = f"v{len(ctx)}"
                ctx[v] = ty.ante
                nxt.append((App(c, Var(v)), ty.cons))
            elif isinstance(ty, Forall):
                from .syntax import subst_formula
                nxt += [(TApp(c, TVar(wi)), subst_formula(ty.body, ty.var, TVar(wi))) for wi in ("Y", "W")]
            chains += nxt
            frontier += nxt
        for c, _ in chains:
            for m, holes in multis:
                us_per_hole = []
                for lbl, delta in holes.items():
                    us = [Var("a0"), App(Var("a1"), Var("y0"))] + [App(Var("a1"), Var(d)) for d in delta]
                    us_per_hole.append([(lbl, u) for u in us])
                import itertools
                for combo in itertools.product(*us_per_hole):
                    yield f"A={src} C={show(c)} M={show(m)}", dict(ctx), a, c, m, dict(combo)


def multicontext_law(ctx: dict, a: Formula, c: Term, m: Term, us: dict) -> tuple[bool, str]:
    b = typecheck_context(ctx, a, c, "NI2AT")
    avoid = set(ctx) | m.names | c.names | {n for u in us.values() for n in u.names} | {"X"}
    pa, pb = expansion_pair(a, avoid), expansion_pair(b, avoid)
    m_a = subst_type_in_term(m, "X", TVar(pa.atom))
    m_b = subst_type_in_term(m, "X", TVar(pb.atom))
    lhs = fill_capturing(c, fill_capturing(pa.intro, fill_capturing(m_a, {k: fill_capturing(pa.elim, u) for k, u in us.items()})))
    rhs = fill_capturing(pb.intro, fill_capturing(m_b, {k: fill_capturing(pb.elim, fill_capturing(c, u)) for k, u in us.items()}))
    for side, t in (("left", lhs), ("right", rhs)):
        if not _same(typecheck(ctx, t, "NI2AT"), b):
            return False, f"{side} side has the wrong type"
    ok = alpha_eq(beta_normalize(lhs), beta_normalize(rhs))
    return ok, "" if ok else "beta normal forms differ"


@suite("expansion-laws", 9,
       "intro{elim[x]} is beta-eta equal to x for every second-order formula up to size 5; translation commutes "
       "with filling contexts; C-expansion of a context applied to an abstraction beta-reduces to the abstraction "
       "of the filled context; principal contexts commute with multicontexts through expansion pairs")
def _expansion_laws(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    for a in enumerate_formulas(5, "L2"):
        yield Case(f"expansion pair of {show(a)}", formula_size(a), lambda a=a: expansion_law_holds(a))
    for label, ctx, cf, u, xs, t in c_expansion_instances():
        yield Case(label, formula_size(cf), lambda ctx=ctx, cf=cf, u=u, xs=xs, t=t: c_expansion_law(ctx, cf, u, xs, t))
    for label, ctx, a, c, m, us in multicontext_instances():
        yield Case(label, formula_size(a), lambda ctx=ctx, a=a, c=c, m=m, us=us: multicontext_law(ctx, a, c, m, us))
    yield from rp_context_cases(cfg, given)


# --------------------------------------------------------------------------
# surjective pairing from beta, eta and gamma+

@suite("conjunction-eta-chain", 10,
       "the trace deriving <fst t, snd t> = t from beta, connective eta and gamma+ replays step by step "
       "through the displayed chain of terms")
def _conj_eta(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    tr, chain = conjunction_eta_trace()

    def whole():
        r = verify_trace(tr)
        return r.ok, r.reason
    yield Case("trace verifies", 0, whole)
    terms = replay(tr)
    for i, (got, want) in enumerate(zip(terms, chain)):
        yield Case(f"term {i}: {show(want)}", i + 1, lambda got=got, want=want: alpha_eq(got, want))
    yield Case("chain length", len(chain) + 1, lambda: len(terms) == len(chain))


# --------------------------------------------------------------------------
# extra semantic properties (not acceptance criteria)

@suite("kripke-monotonicity", None,
       "forcing is upward closed for every second-order formula with disjunction up to size 5, "
       "in the countermodel and in all regular models of at most 2 worlds")
def _monotone(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    models = [three_world_countermodel()] + list(iter_models(("Y", "Z"), 2))
    for a in enumerate_formulas(5, "L2VEE"):
        def check(a=a):
            for m in models:
                if not m.is_upset(m.extent(a)):
                    return False, f"not upward closed in {m.dumps()}"
            return True
        yield Case(show(a), formula_size(a), check)


@suite("kripke-soundness", None,
       "no regular model with at most 3 worlds refutes a closed theorem of the atomic system with disjunction")
def _soundness(cfg: SuiteConfig, given: Corpus | None) -> Iterator[Case]:
    seen = set()
    for j in corpus_for("NI2VEEAT", 4, with_conversions=False).judgments:
        if j.ctx or j.type in seen:
            continue
        seen.add(j.type)
        yield Case(f"|- {show(j.type)}", formula_size(j.type),
                   lambda a=j.type: countermodel_search(a, 3) is None)


ACCEPTANCE = tuple(sorted((s for s in SUITES.values() if s.criterion is not None), key=lambda s: s.criterion))


def run_suite(name: str, corpus: Corpus | None = None, config: SuiteConfig | None = None) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    cfg = config or SuiteConfig()
    report = SuiteReport(name)
    t0 = time.perf_counter()
    cases = sorted(enumerate(SUITES[name].cases(cfg, corpus)), key=lambda ic: (ic[1].size, ic[0]))
    for i, case in cases:
        report.cases += 1
        try:
            res = case.check()
        except Exception as e:  # a crash is a failure of this case, not of the run
            ok, reason = False, f"{type(e).__name__}: {e}"
        else:
            ok, reason = (res if isinstance(res, tuple) else (bool(res), ""))
        if not ok:
            report.failure_count += 1
            if len(report.failures) < cfg.keep_failures:
                report.failures.append(Failure(i, case.label, case.size, reason or "check failed"))
    report.wall_time = time.perf_counter() - t0
    return report


def run_all(config: SuiteConfig | None = None, names: Iterable[str] | None = None) -> list[SuiteReport]:
    return [run_suite(n, None, config) for n in (names or SUITES)]
