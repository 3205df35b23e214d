"""Executable versions of the simulation arguments, as replayable rewrite traces.

* :func:`eta_eps_trace` -- ``u`` to its epsilon-atomization by eta-expansions
  and one naturality step per non-atomic witness.
* :func:`translated_conversion_trace` -- a conversion ``u -> v`` of the
  propositional calculus lifted to a beta/eta/epsilon trace between the encodings.
* :func:`atomization_chain` -- beta-only traces linking the two atomizations of
  an encoded term and the direct translation.
* :func:`conjunction_eta_trace` -- the surjective-pairing law for conjunction
  obtained from beta, eta, and generalized permutations.
"""
from __future__ import annotations

from typing import Mapping

from .concrete import parse_formula, parse_term
from .fragments import polynomial_components
from .rewrite import (
    RewriteTrace, Step, apply_step, beta_steps, context_at, find_beta_trace,
)
from .syntax import (
    App, Case, Forall, Formula, Hole, Imp, Inj, Lam, TApp, Term, TLam, TVar, Var,
    children, fresh, replace_at, subst_formula, subterm, subterm_paths,
)
from .translations import (
    eps_atomize, esf_translate, ff_atomize, rp_context, rp_term, translate_context,
)
from .typecheck import typecheck

Ctx = Mapping[str, Formula]


class _Recorder:
    def __init__(self, ctx: Ctx, start: Term):
        self.ctx = dict(ctx)
        self.start = start
        self.cur = start
        self.steps: list[Step] = []

    def emit(self, st: Step) -> None:
        self.cur = apply_step(self.cur, st, self.ctx)
        self.steps.append(st)

    def type_at(self, path) -> Formula:
        return typecheck(context_at(self.ctx, self.cur, path), subterm(self.cur, path))

    def fresh(self, base: str) -> str:
        taken = set(self.cur.names) | set(self.ctx)
        for a in self.ctx.values():
            taken |= a.names
        return fresh(base, taken)

    def expand_imp(self, path) -> None:
        r = subterm(self.cur, path)
        t = self.type_at(path)
        y = self.fresh("y")
        self.emit(Step("ImpEta", path, "backward", redex=Lam(y, t.ante, App(r, Var(y)))))

    def expand_forall(self, path) -> None:
        r = subterm(self.cur, path)
        x = self.fresh("X")
        self.emit(Step("ForallEta", path, "backward", redex=TLam(x, TApp(r, TVar(x)))))

    def trace(self, end: Term | None = None) -> RewriteTrace:
        return RewriteTrace(self.start, self.steps, self.cur if end is None else end, self.ctx)


# --------------------------------------------------------------------------
# u  ~eta,eps~  u with every witness atomic

def eta_eps_trace(ctx: Ctx, u: Term) -> RewriteTrace:
    """Trace from ``u`` (RP fragment) to its epsilon-atomization.

    At each instantiation ``t B`` with B non-atomic: eta-expand ``t B`` along
    its K premises and then along B until an atom is reached, which exposes
    ``El_B[(t B) <y>]``; one Epsilon step with U = El_B turns this into
    ``t Z <Phi(El_B)[y_k]>``; finally recurse into ``t``.
    """
    rec = _Recorder(ctx, u)

    def go(path: tuple[int, ...], node: Term) -> None:
        if isinstance(node, Var):
            return
        if isinstance(node, (Lam, TLam)):
            go(path + (0,), node.body)
        elif isinstance(node, App):
            go(path + (0,), node.fun)
            go(path + (1,), node.arg)
        elif isinstance(node, TApp):
            b = node.witness
            if isinstance(b, TVar):
                go(path + (0,), node.fun)
                return
            _, comps = polynomial_components(rec.type_at(path + (0,)))
            q = path
            for _ in comps:
                rec.expand_imp(q)
                q = q + (0,)
            frames = 0
            cur_t = b
            while not isinstance(cur_t, TVar):
                if isinstance(cur_t, Imp):
                    rec.expand_imp(q)
                    cur_t = cur_t.cons
                elif isinstance(cur_t, Forall):
                    rec.expand_forall(q)
                    x = subterm(rec.cur, q).var
                    cur_t = subst_formula(cur_t.body, cur_t.var, TVar(x))
                else:
                    raise ValueError(f"witness {b} is outside the connective-free language")
                q = q + (0,)
                frames += 1
            u_ctx = replace_at(subterm(rec.cur, q), (0,) * frames, Hole())
            rec.emit(Step("Epsilon", q, context=u_ctx))
            go(q + (0,) * len(comps) + (0,), node.fun)
        else:
            raise ValueError(f"{type(node).__name__} is outside the RP fragment")

    go((), u)
    return rec.trace(eps_atomize(ctx, u))


# --------------------------------------------------------------------------
# conversions of the propositional calculus, through the encoding

def rp_address(u: Term, path) -> tuple[int, ...]:
    """Where the subterm of ``u`` at ``path`` sits inside the RP translation of ``u``."""
    out: list[int] = []
    t = u
    for i in path:
        if isinstance(t, Inj):
        # /\X. \x_1..x_K. x_k <t_j>: argument i sits in the application spine
            n = len(t.args)
            out += [0] + [0] * t.sig.size_k + [0] * (n - 1 - i) + [1]
        elif isinstance(t, Case):
            kk = t.sig.size_k
            if i == 0:
                out += [0] * kk + [0]
            else:
                out += [0] * (kk - i) + [1] + [0] * len(t.branches[i - 1].binders)
        else:
            out.append(i)
        t = children(t)[i]
    return tuple(out)


def _arg_address(base: tuple[int, ...], k: int, kk: int) -> tuple[int, ...]:
    """Address of the k-th (1-based) of kk arguments in an application spine at ``base``."""
    return base + (0,) * (kk - k) + (1,)


def translated_conversion_trace(ctx: Ctx, u: Term, conv: Step) -> RewriteTrace:
    """Lift a forward conversion step on ``u`` to a trace from ``u*`` to ``v*``.

    The step must be a primitive beta, eta, permutation or generalized
    permutation instance.
    """
    if conv.direction != "forward":
        raise ValueError("only forward conversions are lifted")
    v = apply_step(u, conv, ctx)
    ctx_t = rp_context(ctx)
    start = rp_term(ctx, u)
    rec = _Recorder(ctx_t, start)
    q = rp_address(u, conv.address)
    r = subterm(u, conv.address)
    rule = conv.rule
    if rule in ("ImpBeta", "ForallBeta", "ImpEta", "ForallEta"):
        rec.emit(Step(rule, q))
    elif rule == "ConnBeta":
        kk, h = r.sig.size_k, r.scrutinee.k
        n = len(r.scrutinee.args)
        rec.emit(Step("ForallBeta", q + (0,) * kk))
        for i in range(kk):
            rec.emit(Step("ImpBeta", q + (0,) * (kk - 1 - i)))
        for i in range(n):
            rec.emit(Step("ImpBeta", q + (0,) * (n - 1 - i)))
    elif rule == "ConnEta":
        _conn_eta(rec, q, r.sig)
    elif rule in ("ConnGamma", "ConnGammaPlus"):
        sctx = context_at(ctx, u, conv.address)
        d_path = next(p for p, s in subterm_paths(conv.context) if isinstance(s, Hole))
        d = subterm(r, d_path)
        u_star = translate_context("RP", sctx, typecheck(sctx, d), conv.context)
        rec.emit(Step("Epsilon", q, context=u_star))
        holes = [p for p, s in subterm_paths(u_star) if isinstance(s, Hole)]
        kk = d.sig.size_k
        for k, br in enumerate(d.branches, 1):
            n = len(br.binders)
            body = _arg_address(q, k, kk) + (0,) * n
            for hp in holes:
                for i in range(n):
                    rec.emit(Step("ImpBeta", body + hp + (0,) * (n - 1 - i)))
    else:
        raise ValueError(f"no lifting for {rule}")
    return rec.trace(rp_term(ctx, v))


def _conn_eta(rec: _Recorder, q: tuple[int, ...], sig) -> None:
    """case(v, <y. inj_k y>)* back to v* with eta-expansions, one Epsilon, betas, eta-contractions."""
    kk = sig.size_k
    rec.expand_forall(q)
    for i in range(kk):
        rec.expand_imp(q + (0,) + (0,) * i)
    base = q + (0,) * (kk + 1)
    u_ctx = replace_at(subterm(rec.cur, base), (0,) * (kk + 1), Hole())
    rec.emit(Step("Epsilon", base, context=u_ctx))
    for k in range(1, kk + 1):
        n = sig.arity(k)
        phi = _arg_address(base, k, kk)
        steps, rec_cur = beta_steps(rec.cur, phi + (0,) * n)
        for st in steps:
            rec.emit(st)
        for i in range(n):
            rec.emit(Step("ImpEta", phi + (0,) * (n - 1 - i)))
    for i in range(kk):
        rec.emit(Step("ImpEta", q + (0,) + (0,) * (kk - 1 - i)))
    rec.emit(Step("ForallEta", q))


# --------------------------------------------------------------------------
# beta chain between the atomizations

def atomization_chain(ctx: Ctx, u: Term) -> tuple[RewriteTrace | None, RewriteTrace | None]:
    """Beta-only traces  u*FF -> u*eps  and  u*eps -> u-direct  (``None`` where not found)."""
    ctx_t = rp_context(ctx)
    star = rp_term(ctx, u)
    ff = ff_atomize(ctx_t, star)
    ep = eps_atomize(ctx_t, star)
    sh = esf_translate(ctx, u)
    s1 = find_beta_trace(ff, ep)
    s2 = find_beta_trace(ep, sh)
    return (RewriteTrace(ff, s1, ep, ctx_t) if s1 is not None else None,
            RewriteTrace(ep, s2, sh, ctx_t) if s2 is not None else None)


# --------------------------------------------------------------------------
# surjective pairing for conjunction

CONJ_ETA_CTX = {"t": "Y /\\ Z"}

_PAIR = "inj#and.1[Y, Z]"
CONJ_ETA_CHAIN = [
    f"{_PAIR}(case#and[Y](t; y1 y2 => y1), case#and[Z](t; y3 y4 => y4))",
    f"case#and[Y /\\ Z](t; y1 y2 => {_PAIR}(y1, case#and[Z](t; y3 y4 => y4)))",
    f"case#and[Y /\\ Z](t; y1 y2 => case#and[Y /\\ Z](t; y3 y4 => {_PAIR}(y1, y4)))",
    f"case#and[Y /\\ Z](case#and[Y /\\ Z](t; z1 z2 => {_PAIR}(z1, z2)); "
    f"y1 y2 => case#and[Y /\\ Z](t; y3 y4 => {_PAIR}(y1, y4)))",
    f"case#and[Y /\\ Z](case#and[Y /\\ Z](t; z1 z2 => {_PAIR}(z1, z2)); "
    f"y1 y2 => case#and[Y /\\ Z](case#and[Y /\\ Z](t; z1 z2 => {_PAIR}(z1, z2)); y3 y4 => {_PAIR}(y1, y4)))",
    f"case#and[Y /\\ Z](t; z1 z2 => case#and[Y /\\ Z]({_PAIR}(z1, z2); "
    f"y1 y2 => case#and[Y /\\ Z]({_PAIR}(z1, z2); y3 y4 => {_PAIR}(y1, y4))))",
    f"case#and[Y /\\ Z](t; z1 z2 => case#and[Y /\\ Z]({_PAIR}(z1, z2); y1 y2 => {_PAIR}(y1, z2)))",
    f"case#and[Y /\\ Z](t; z1 z2 => {_PAIR}(z1, z2))",
    "t",
]


def conjunction_eta_trace() -> tuple[RewriteTrace, list[Term]]:
    """The pairing law  <fst t, snd t> = t  as a trace, plus the displayed intermediate terms."""
    ctx = {x: parse_formula(a) for x, a in CONJ_ETA_CTX.items()}
    terms = [parse_term(s) for s in CONJ_ETA_CHAIN]
    eta_t = parse_term(f"case#and[Y /\\ Z](t; z1 z2 => {_PAIR}(z1, z2))")
    steps = [
        Step("ConnGammaPlus", (), context=parse_term(f"{_PAIR}([], case#and[Z](t; y3 y4 => y4))")),
        Step("ConnGammaPlus", (1,), context=parse_term(f"{_PAIR}(y1, [])")),
        Step("ConnEta", (0,), "backward", redex=eta_t),
        Step("ConnEta", (1, 0), "backward", redex=eta_t),
        Step("ConnGammaPlus", (), context=parse_term(
            f"case#and[Y /\\ Z]([]; y1 y2 => case#and[Y /\\ Z]([]; y3 y4 => {_PAIR}(y1, y4)))")),
        Step("ConnBeta", (1, 1), k=1),
        Step("ConnBeta", (1,), k=1),
        Step("ConnEta", ()),
    ]
    return RewriteTrace(terms[0], steps, terms[-1], ctx), terms
