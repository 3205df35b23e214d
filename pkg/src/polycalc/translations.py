"""The encoding of connectives into second-order formulas and the three atomizations.

* :func:`rp_formula` / :func:`rp_term` -- connectives as universal polynomial types.
* :func:`ff_atomize` -- removes non-atomic witnesses by re-abstraction.
* :func:`eps_atomize` -- removes them by one expansion pair per witness.
* :func:`esf_translate` -- direct translation of propositional terms into the atomic fragment.
"""
from __future__ import annotations

from typing import Mapping

from .expansion import expansion_pair
from .fragments import polynomial_components
from .syntax import (
    App, Branch, Case, Conn, Forall, Formula, Hole, Imp, Inj, Lam, TApp, Term, TLam, TVar, Var,
    apps, fill_avoiding, fill_capturing, fresh, imps, lams, subst_formula, substitute,
)
from .typecheck import hole_variable, typecheck

Ctx = Mapping[str, Formula]

TRANSLATIONS = ("RP", "FF", "EPS", "ESF", "FF_TOTAL", "EPS_TOTAL")


def rp_formula(a: Formula) -> Formula:
    if isinstance(a, TVar):
        return a
    if isinstance(a, Imp):
        return Imp(rp_formula(a.ante), rp_formula(a.cons))
    if isinstance(a, Forall):
        return Forall(a.var, rp_formula(a.body))
    args = tuple(rp_formula(b) for b in a.args)
    x = fresh("X", frozenset().union(*(b.ftv for b in args)))
    comps = [imps(a.sig.premise_formulas(k, args), TVar(x)) for k in range(1, a.sig.size_k + 1)]
    return Forall(x, imps(comps, TVar(x)))


def rp_context(ctx: Ctx) -> dict[str, Formula]:
    return {x: rp_formula(a) for x, a in ctx.items()}


def _ctx_ftv(ctx: Ctx) -> set[str]:
    out: set[str] = set()
    for a in ctx.values():
        out |= a.ftv
    return out


def _fresh_many(base: str, n: int, taken: set[str]) -> list[str]:
    out = []
    for _ in range(n):
        x = fresh(base, taken)
        taken.add(x)
        out.append(x)
    return out


def _scrutinee_conn(ctx: Ctx, t: Term) -> Conn:
    s = typecheck(ctx, t)
    if not isinstance(s, Conn):
        raise TypeError(f"case scrutinee has non-connective type {s}")
    return s


def _translate_inj(u: Inj, ctx: Ctx, scope: frozenset[str], sub) -> Term:
    """/\\X. \\x_1 ... x_K. x_k0 <t_j>, with X and the x_k fresh.

    ``scope`` holds type variables free in declarations introduced by the
    translation itself around ``u``; the abstraction over X must avoid them.
    """
    targs = tuple(rp_formula(a) for a in u.type_args)
    x = fresh("X", _ctx_ftv(ctx) | scope | u.names)
    inner = scope | {x} | u.ftv
    args = [sub(ctx, t, inner) for t in u.args]
    xs = _fresh_many("x", u.sig.size_k, set(ctx) | u.fv)
    comps = [imps(u.sig.premise_formulas(k, targs), TVar(x)) for k in range(1, u.sig.size_k + 1)]
    return TLam(x, lams(zip(xs, comps), apps(Var(xs[u.k - 1]), args)))


_EMPTY: frozenset[str] = frozenset()


def rp_term(ctx: Ctx, u: Term) -> Term:
    """Translation of a checked term; ``ctx`` is the source typing context."""
    return _rp(ctx, u, _EMPTY)


def _rp(ctx: Ctx, u: Term, scope: frozenset[str]) -> Term:
    if isinstance(u, (Var, Hole)):
        return u
    if isinstance(u, Lam):
        return Lam(u.var, rp_formula(u.annot), _rp({**ctx, u.var: u.annot}, u.body, scope))
    if isinstance(u, App):
        return App(_rp(ctx, u.fun, scope), _rp(ctx, u.arg, scope))
    if isinstance(u, TLam):
        return TLam(u.var, _rp(ctx, u.body, scope))
    if isinstance(u, TApp):
        return TApp(_rp(ctx, u.fun, scope), rp_formula(u.witness))
    if isinstance(u, Inj):
        return _translate_inj(u, ctx, scope, _rp)
    if isinstance(u, Case):
        s = _scrutinee_conn(ctx, u.scrutinee)
        head = TApp(_rp(ctx, u.scrutinee, scope), rp_formula(u.motive))
        brs = []
        for k, br in enumerate(u.branches, 1):
            prem = s.sig.premise_formulas(k, s.args)
            inner = {**ctx, **dict(zip(br.binders, prem))}
            brs.append(lams(zip(br.binders, (rp_formula(a) for a in prem)), _rp(inner, br.body, scope)))
        return apps(head, brs)
    raise TypeError(f"not a term: {u!r}")


def esf_translate(ctx: Ctx, u: Term) -> Term:
    """As :func:`rp_term` except at case analyses, which go through an expansion pair
    of the translated motive so that only an atomic instantiation remains."""
    return _esf(ctx, u, _EMPTY)


def _esf(ctx: Ctx, u: Term, scope: frozenset[str]) -> Term:
    if isinstance(u, (Var, Hole)):
        return u
    if isinstance(u, Lam):
        return Lam(u.var, rp_formula(u.annot), _esf({**ctx, u.var: u.annot}, u.body, scope))
    if isinstance(u, App):
        return App(_esf(ctx, u.fun, scope), _esf(ctx, u.arg, scope))
    if isinstance(u, TLam):
        return TLam(u.var, _esf(ctx, u.body, scope))
    if isinstance(u, TApp):
        return TApp(_esf(ctx, u.fun, scope), rp_formula(u.witness))
    if isinstance(u, Inj):
        return _translate_inj(u, ctx, scope, _esf)
    if isinstance(u, Case):
        s = _scrutinee_conn(ctx, u.scrutinee)
        motive = rp_formula(u.motive)
        avoid = set(ctx) | _ctx_ftv(ctx) | scope | u.names
        for br in u.branches:
            avoid |= set(br.binders)
        pair = expansion_pair(motive, avoid)
        inner_scope = scope | motive.ftv | set(pair.type_vars)
        scrut = _esf(ctx, u.scrutinee, inner_scope)
        brs = []
        for k, br in enumerate(u.branches, 1):
            prem = s.sig.premise_formulas(k, s.args)
            body = _esf({**ctx, **dict(zip(br.binders, prem))}, br.body, inner_scope)
            brs.append(lams(zip(br.binders, (rp_formula(a) for a in prem)), fill_avoiding(pair.elim, body)))
        core = apps(TApp(scrut, TVar(pair.atom)), brs)
        return fill_capturing(pair.intro, core)
    raise TypeError(f"not a term: {u!r}")


def _components(ctx: Ctx, t: Term) -> tuple[str, list[list[Formula]]]:
    return polynomial_components(typecheck(ctx, t))


def ff_atomize(ctx: Ctx, u: Term) -> Term:
    """Atomization by re-abstraction; input is a checked term of the RP fragment."""
    return _ff(ctx, u, _EMPTY)


def _ff(ctx: Ctx, u: Term, scope: frozenset[str]) -> Term:
    if isinstance(u, (Var, Hole)):
        return u
    if isinstance(u, Lam):
        return Lam(u.var, u.annot, _ff({**ctx, u.var: u.annot}, u.body, scope))
    if isinstance(u, App):
        return App(_ff(ctx, u.fun, scope), _ff(ctx, u.arg, scope))
    if isinstance(u, TLam):
        return TLam(u.var, _ff(ctx, u.body, scope))
    if isinstance(u, TApp):
        b = u.witness
        if isinstance(b, TVar):
            return TApp(_ff(ctx, u.fun, scope), b)
        t = u.fun
        _, comps = _components(ctx, t)
        taken = set(ctx) | u.fv
        ys = _fresh_many("y", len(comps), taken)
        ydecl = [imps(comp, b) for comp in comps]
        inner_ctx = {**ctx, **dict(zip(ys, ydecl))}
        ty_scope = scope | u.ftv
        if isinstance(b, Imp):
            x = fresh("x", taken)
            taken.add(x)
            inner = _ff({**inner_ctx, x: b.ante}, TApp(t, b.cons), ty_scope)
            extra: Term | Formula = Var(x)
        elif isinstance(b, Forall):
            xv = fresh(b.var, _ctx_ftv(ctx) | ty_scope | u.names)
            body = b.body if xv == b.var else subst_formula(b.body, b.var, TVar(xv))
            inner = _ff(inner_ctx, TApp(t, body), ty_scope | {xv})
            extra = TVar(xv)
        else:
            raise TypeError(f"witness {b} is outside the connective-free language")
        args = []
        for y, comp in zip(ys, comps):
            zs = _fresh_many("z", len(comp), set(taken))
            call = apps(Var(y), [Var(z) for z in zs])
            call = App(call, extra) if isinstance(extra, Var) else TApp(call, extra)
            args.append(lams(zip(zs, comp), call))
        core = apps(inner, args)
        core = Lam(x, b.ante, core) if isinstance(b, Imp) else TLam(xv, core)
        return lams(zip(ys, ydecl), core)
    raise TypeError(f"{type(u).__name__} is outside the RP fragment")


def eps_atomize(ctx: Ctx, u: Term) -> Term:
    """Atomization through the expansion pair of each non-atomic witness."""
    return _eps(ctx, u, _EMPTY)


def _eps(ctx: Ctx, u: Term, scope: frozenset[str]) -> Term:
    if isinstance(u, (Var, Hole)):
        return u
    if isinstance(u, Lam):
        return Lam(u.var, u.annot, _eps({**ctx, u.var: u.annot}, u.body, scope))
    if isinstance(u, App):
        return App(_eps(ctx, u.fun, scope), _eps(ctx, u.arg, scope))
    if isinstance(u, TLam):
        return TLam(u.var, _eps(ctx, u.body, scope))
    if isinstance(u, TApp):
        b = u.witness
        if isinstance(b, TVar):
            return TApp(_eps(ctx, u.fun, scope), b)
        _, comps = _components(ctx, u.fun)
        taken = set(ctx) | _ctx_ftv(ctx) | scope | u.names
        ys = _fresh_many("y", len(comps), taken)
        pair = expansion_pair(b, taken)
        taken |= set(pair.term_vars) | set(pair.type_vars)
        t = _eps(ctx, u.fun, scope | u.ftv | set(pair.type_vars))
        args = []
        for y, comp in zip(ys, comps):
            zs = _fresh_many("z", len(comp), taken)
            args.append(lams(zip(zs, comp), fill_avoiding(pair.elim, apps(Var(y), [Var(z) for z in zs]))))
        core = apps(TApp(t, TVar(pair.atom)), args)
        return lams(zip(ys, (imps(c, b) for c in comps)), fill_capturing(pair.intro, core))
    raise TypeError(f"{type(u).__name__} is outside the RP fragment")


_TERM_TRANSLATIONS = {"RP": rp_term, "FF": ff_atomize, "EPS": eps_atomize, "ESF": esf_translate}


def translate(tag: str, ctx: Ctx, u: Term) -> Term:
    """Apply a translation; composites run the RP translation first."""
    if tag == "FF_TOTAL":
        return ff_atomize(rp_context(ctx), rp_term(ctx, u))
    if tag == "EPS_TOTAL":
        return eps_atomize(rp_context(ctx), rp_term(ctx, u))
    try:
        fn = _TERM_TRANSLATIONS[tag]
    except KeyError:
        raise ValueError(f"unknown translation {tag!r}") from None
    return fn(ctx, u)


def target_context(tag: str, ctx: Ctx) -> dict[str, Formula]:
    """Typing context of the image of a judgment under ``tag``."""
    return dict(ctx) if tag in ("FF", "EPS") else rp_context(ctx)


def translate_context(tag: str, ctx: Ctx, hole_type: Formula, c: Term) -> Term:
    """Translate a context by translating it at a fresh variable standing for the hole."""
    labels = c.holes
    if len(labels) != 1:
        raise ValueError("translate_context expects holes with a single label")
    lbl = next(iter(labels))
    x = hole_variable(c, ctx, hole_type)
    body = fill_capturing(c, {lbl: Var(x)})
    out = translate(tag, {**ctx, x: hole_type}, body)
    return substitute(out, terms={x: Hole(lbl)})
