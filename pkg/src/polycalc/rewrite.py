"""Conversion steps, normalization, equivalence checking and rewrite traces.

A step is addressed by a path of child indices (see :func:`polycalc.syntax.children`).
Steps that cannot be read off the redex alone (permutations, the naturality
step ``Epsilon`` and the generalized extensionality step) carry a context
``U`` with holes; backward steps carry the redex they re-introduce.
"""
from __future__ import annotations

import json
import sys
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .fragments import polynomial_components
from .syntax import (
    App, Branch, Case, Conn, Formula, Hole, Inj, Lam, TApp, Term, TLam, TVar, Var,
    alpha_eq, alpha_key, apps, children, fill_avoiding, fresh, lams, replace_at, rescope,
    subst_term, subst_type_in_term, substitute, subterm, subterm_paths, term_size,
)
from .typecheck import TypingError, typecheck

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

RULES = ("ImpBeta", "ForallBeta", "ConnBeta", "ImpEta", "ForallEta", "ConnEta",
         "ConnEtaPlus", "ConnGamma", "ConnGammaPlus", "Epsilon")
BETA = frozenset({"ImpBeta", "ForallBeta", "ConnBeta"})
ETA = frozenset({"ImpEta", "ForallEta"})
NEEDS_CONTEXT = frozenset({"ConnEtaPlus", "ConnGamma", "ConnGammaPlus", "Epsilon"})

Ctx = Mapping[str, Formula]


class RewriteError(Exception):
    pass


class PatternMismatch(RewriteError):
    pass


class IllegalAux(RewriteError):
    pass


class FuelExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class Step:
    rule: str
    address: tuple[int, ...] = ()
    direction: str = "forward"
    context: Term | None = None
    redex: Term | None = None
    k: int | None = None

    def __post_init__(self) -> None:
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.direction not in ("forward", "backward"):
            raise ValueError(f"bad direction {self.direction!r}")
        object.__setattr__(self, "address", tuple(self.address))

    def shifted(self, prefix: Iterable[int]) -> "Step":
        return Step(self.rule, tuple(prefix) + self.address, self.direction, self.context, self.redex, self.k)


# --------------------------------------------------------------------------
# typing along an address

def context_at(ctx: Ctx, t: Term, path: Iterable[int]) -> dict[str, Formula]:
    """Typing context in force at ``path`` inside ``t``."""
    out = dict(ctx)
    for i in path:
        if isinstance(t, Lam) and i == 0:
            out[t.var] = t.annot
        elif isinstance(t, Case) and i >= 1:
            s = typecheck(out, t.scrutinee)
            if not isinstance(s, Conn):
                raise PatternMismatch("case on a non-connective type")
            out.update(zip(t.branches[i - 1].binders, s.sig.premise_formulas(i, s.args)))
        t = children(t)[i]
    return out


def _hole_paths(u: Term) -> list[tuple[int, ...]]:
    return [p for p, s in subterm_paths(u) if isinstance(s, Hole)]


def _single_label(u: Term) -> str:
    if len(u.holes) != 1:
        raise IllegalAux("context must have holes with exactly one label")
    return next(iter(u.holes))


def is_elimination_context(u: Term) -> bool:
    """[] | E u | E B | case(E, ...): the hole path passes only through heads."""
    paths = _hole_paths(u)
    if len(paths) != 1:
        return False
    t = u
    for i in paths[0]:
        if i != 0 or not isinstance(t, (App, TApp, Case)):
            return False
        t = children(t)[i]
    return True


def is_introduction_context(u: Term) -> bool:
    paths = _hole_paths(u)
    if len(paths) != 1:
        return False
    t = u
    for i in paths[0]:
        if not isinstance(t, (Lam, TLam, Inj)):
            return False
        t = children(t)[i]
    return True


def is_principal_context(u: Term) -> bool:
    paths = _hole_paths(u)
    if len(paths) != 1:
        return False
    t = u
    for i in paths[0]:
        ok = (isinstance(t, (App, TApp, Case)) and i == 0) or isinstance(t, (Lam, TLam, Inj))
        if not ok:
            return False
        t = children(t)[i]
    return True


def _match_context(r: Term, u: Term) -> Term:
    """The term h with U[h] alpha-equal to r (same h in every hole)."""
    paths = _hole_paths(u)
    if not paths:
        raise IllegalAux("context has no hole")
    try:
        h = subterm(r, paths[0])
    except IndexError:
        raise PatternMismatch("redex does not have the shape of the context") from None
    lbl = _single_label(u)
    if not alpha_eq(fill_avoiding(u, {lbl: h}), r):
        raise PatternMismatch("redex is not the context filled with one term")
    return h


# --------------------------------------------------------------------------
# contraction of a redex

def contract(ctx: Ctx, r: Term, rule: str, context: Term | None = None, k: int | None = None) -> Term:
    """Forward contraction of the redex ``r`` typed under ``ctx``."""
    if rule == "ImpBeta":
        if isinstance(r, App) and isinstance(r.fun, Lam):
            return subst_term(r.fun.body, r.fun.var, r.arg)
        raise PatternMismatch("ImpBeta needs (\\x.t) s")
    if rule == "ForallBeta":
        if isinstance(r, TApp) and isinstance(r.fun, TLam):
            return subst_type_in_term(r.fun.body, r.fun.var, r.witness)
        raise PatternMismatch("ForallBeta needs (/\\X.t) B")
    if rule == "ConnBeta":
        if isinstance(r, Case) and isinstance(r.scrutinee, Inj) and r.scrutinee.sig == r.sig:
            h = r.scrutinee.k
            if k is not None and k != h:
                raise PatternMismatch(f"ConnBeta({k}) on an injection of component {h}")
            br = r.branches[h - 1]
            return substitute(br.body, terms=dict(zip(br.binders, r.scrutinee.args)))
        raise PatternMismatch("ConnBeta needs case(inj(...), ...)")
    if rule == "ImpEta":
        if (isinstance(r, Lam) and isinstance(r.body, App) and r.body.arg == Var(r.var)
                and r.var not in r.body.fun.fv):
            return r.body.fun
        raise PatternMismatch("ImpEta needs \\x. t x with x not free in t")
    if rule == "ForallEta":
        if (isinstance(r, TLam) and isinstance(r.body, TApp) and r.body.witness == TVar(r.var)
                and r.var not in r.body.fun.ftv):
            return r.body.fun
        raise PatternMismatch("ForallEta needs /\\X. t X with X not free in t")
    if rule == "ConnEta":
        if not isinstance(r, Case):
            raise PatternMismatch("ConnEta needs a case")
        for kk, br in enumerate(r.branches, 1):
            b = br.body
            if not (isinstance(b, Inj) and b.sig == r.sig and b.k == kk
                    and b.args == tuple(Var(y) for y in br.binders)):
                raise PatternMismatch(f"ConnEta: branch {kk} is not the {kk}-th injection of its binders")
        if not alpha_eq(typecheck(ctx, r.scrutinee), r.motive):
            raise PatternMismatch("ConnEta: motive differs from the scrutinee type")
        return r.scrutinee
    if context is None:
        raise IllegalAux(f"{rule} needs a context")
    lbl = _single_label(context)
    if rule == "ConnEtaPlus":
        if not isinstance(r, Case):
            raise PatternMismatch("ConnEtaPlus needs a case")
        s = typecheck(ctx, r.scrutinee)
        if not isinstance(s, Conn):
            raise PatternMismatch("ConnEtaPlus: scrutinee is not of connective type")
        for kk, br in enumerate(r.branches, 1):
            if set(br.binders) & context.fv:
                raise IllegalAux("ConnEtaPlus: context mentions a branch variable")
            want = fill_avoiding(context, {lbl: Inj(r.sig, kk, tuple(Var(y) for y in br.binders), s.args)})
            if not alpha_eq(want, br.body):
                raise PatternMismatch(f"ConnEtaPlus: branch {kk} is not U[inj_{kk}(y)]")
        return fill_avoiding(context, {lbl: r.scrutinee})
    if rule in ("ConnGamma", "ConnGammaPlus"):
        if rule == "ConnGamma" and not is_elimination_context(context):
            raise IllegalAux("ConnGamma needs an elimination context")
        d = _match_context(r, context)
        if not isinstance(d, Case):
            raise PatternMismatch(f"{rule}: the hole does not hold a case")
        motive = typecheck(ctx, r)
        brs = []
        for br in d.branches:
            binders, body = _rebind(br, context.fv | context.ftv)
            brs.append(Branch(binders, fill_avoiding(context, {lbl: body})))
        return Case(d.sig, d.scrutinee, motive, tuple(brs))
    if rule == "Epsilon":
        h = _match_context(r, context)
        us: list[Term] = []
        while isinstance(h, App):
            us.append(h.arg)
            h = h.fun
        us.reverse()
        if not isinstance(h, TApp):
            raise PatternMismatch("Epsilon: the hole does not hold t C <u_k>")
        t = h.fun
        try:
            _, comps = polynomial_components(typecheck(ctx, t))
        except ValueError:
            raise PatternMismatch("Epsilon: the instantiated term is not of universal polynomial type") from None
        if len(comps) != len(us):
            # the spine may continue past the K arguments: fold the surplus back into U
            raise PatternMismatch(f"Epsilon: expected {len(comps)} arguments, found {len(us)}")
        d = typecheck(ctx, r)
        taken = set(context.names) | set().union(*(u.names for u in us)) | t.names | set(ctx)
        args = []
        for u, comp in zip(us, comps):
            zs = []
            for _ in comp:
                z = fresh("z", taken)
                taken.add(z)
                zs.append(z)
            args.append(lams(zip(zs, comp), fill_avoiding(context, {lbl: apps(u, [Var(z) for z in zs])})))
        return apps(TApp(t, d), args)
    raise IllegalAux(f"unknown rule {rule}")


def _rebind(br: Branch, avoid: frozenset[str]) -> tuple[tuple[str, ...], Term]:
    if not set(br.binders) & avoid:
        return br.binders, br.body
    taken = set(avoid) | br.body.names | set(br.binders)
    ren, out = {}, []
    for y in br.binders:
        if y in avoid:
            n = fresh(y, taken)
            taken.add(n)
            ren[y] = Var(n)
            out.append(n)
        else:
            out.append(y)
    return tuple(out), substitute(br.body, terms=ren)


def apply_step(t: Term, st: Step, ctx: Ctx | None = None, check_types: bool = True) -> Term:
    """Apply one step to the whole term ``t``."""
    ctx = dict(ctx or {})
    try:
        sub = subterm(t, st.address)
    except IndexError as e:
        raise PatternMismatch(f"address {list(st.address)} does not exist") from e
    sctx = context_at(ctx, t, st.address)
    if st.direction == "forward":
        new = contract(sctx, sub, st.rule, st.context, st.k)
        new = rescope(new, frozenset().union(*(a.ftv for a in sctx.values())))
    else:
        if st.redex is None:
            raise IllegalAux("backward steps need the redex they introduce")
        if not alpha_eq(contract(sctx, st.redex, st.rule, st.context, st.k), sub):
            raise PatternMismatch("backward step: the redex does not contract to the subterm")
        new = st.redex
    if check_types:
        try:
            before = typecheck(sctx, sub)
            after = typecheck(sctx, new)
        except TypingError as e:
            raise RewriteError(f"ill-typed step: {e}") from e
        if not alpha_eq(before, after):
            raise RewriteError(f"step changes the type from {before} to {after}")
    return replace_at(t, st.address, new)


def step(t: Term, rule: str, address: Iterable[int] = (), aux: Mapping | None = None,
         ctx: Ctx | None = None, direction: str = "forward") -> Term:
    aux = dict(aux or {})
    st = Step(rule, tuple(address), direction, aux.get("context"), aux.get("redex"), aux.get("k"))
    return apply_step(t, st, ctx)


# --------------------------------------------------------------------------
# normalization

class _Fuel:
    def __init__(self, n: int):
        self.n = n

    def tick(self) -> None:
        self.n -= 1
        if self.n < 0:
            raise FuelExhausted("normalization fuel exhausted")


def _whnf(t: Term, fuel: _Fuel) -> Term:
    while True:
        if isinstance(t, App):
            f = _whnf(t.fun, fuel)
            if isinstance(f, Lam):
                fuel.tick()
                t = subst_term(f.body, f.var, t.arg)
                continue
            return App(f, t.arg) if f is not t.fun else t
        if isinstance(t, TApp):
            f = _whnf(t.fun, fuel)
            if isinstance(f, TLam):
                fuel.tick()
                t = subst_type_in_term(f.body, f.var, t.witness)
                continue
            return TApp(f, t.witness) if f is not t.fun else t
        if isinstance(t, Case):
            s = _whnf(t.scrutinee, fuel)
            if isinstance(s, Inj) and s.sig == t.sig:
                fuel.tick()
                br = t.branches[s.k - 1]
                t = substitute(br.body, terms=dict(zip(br.binders, s.args)))
                continue
            return Case(t.sig, s, t.motive, t.branches) if s is not t.scrutinee else t
        return t


def _nf(t: Term, fuel: _Fuel) -> Term:
    t = _whnf(t, fuel)
    if isinstance(t, (Var, Hole)):
        return t
    if isinstance(t, Lam):
        return Lam(t.var, t.annot, _nf(t.body, fuel))
    if isinstance(t, TLam):
        return TLam(t.var, _nf(t.body, fuel))
    if isinstance(t, App):
        return App(_nf(t.fun, fuel), _nf(t.arg, fuel))
    if isinstance(t, TApp):
        return TApp(_nf(t.fun, fuel), t.witness)
    if isinstance(t, Inj):
        return Inj(t.sig, t.k, tuple(_nf(a, fuel) for a in t.args), t.type_args)
    return Case(t.sig, _nf(t.scrutinee, fuel), t.motive,
                tuple(Branch(b.binders, _nf(b.body, fuel)) for b in t.branches))


DEFAULT_FUEL = 10 ** 6


def beta_normalize(t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    return _nf(t, _Fuel(fuel))


def eta_contract(t: Term) -> Term:
    """Exhaustive bottom-up contraction of implication and quantifier eta-redexes."""
    if isinstance(t, Lam):
        b = eta_contract(t.body)
        if isinstance(b, App) and b.arg == Var(t.var) and t.var not in b.fun.fv:
            return b.fun
        return Lam(t.var, t.annot, b)
    if isinstance(t, TLam):
        b = eta_contract(t.body)
        if isinstance(b, TApp) and b.witness == TVar(t.var) and t.var not in b.fun.ftv:
            return b.fun
        return TLam(t.var, b)
    if isinstance(t, App):
        return App(eta_contract(t.fun), eta_contract(t.arg))
    if isinstance(t, TApp):
        return TApp(eta_contract(t.fun), t.witness)
    if isinstance(t, Inj):
        return Inj(t.sig, t.k, tuple(eta_contract(a) for a in t.args), t.type_args)
    if isinstance(t, Case):
        return Case(t.sig, eta_contract(t.scrutinee), t.motive,
                    tuple(Branch(b.binders, eta_contract(b.body)) for b in t.branches))
    return t


def beta_eta_normalize(t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    cur = beta_normalize(t, fuel)
    while True:
        nxt = beta_normalize(eta_contract(cur), fuel)
        if nxt == cur:
            return cur
        cur = nxt


def _connective_free(t: Term) -> bool:
    return not any(isinstance(s, (Inj, Case)) for _, s in subterm_paths(t))


def equiv_beta_eta(a: Term, b: Term, fuel: int = DEFAULT_FUEL) -> bool:
    """Decide beta-eta equivalence of connective-free terms via normal forms."""
    if not (_connective_free(a) and _connective_free(b)):
        raise ValueError("equiv_beta_eta is decided on connective-free terms only")
    return alpha_eq(beta_eta_normalize(a, fuel), beta_eta_normalize(b, fuel))


# --------------------------------------------------------------------------
# traced beta reduction

def beta_redex_rule(t: Term) -> str | None:
    if isinstance(t, App) and isinstance(t.fun, Lam):
        return "ImpBeta"
    if isinstance(t, TApp) and isinstance(t.fun, TLam):
        return "ForallBeta"
    if isinstance(t, Case) and isinstance(t.scrutinee, Inj) and t.scrutinee.sig == t.sig:
        return "ConnBeta"
    return None


def first_beta_redex(t: Term, prefix: tuple[int, ...] = ()) -> tuple[tuple[int, ...], str] | None:
    for p, s in subterm_paths(t, prefix):
        r = beta_redex_rule(s)
        if r:
            return p, r
    return None


def beta_steps(t: Term, at: tuple[int, ...] = (), fuel: int = 100_000) -> tuple[list[Step], Term]:
    """Leftmost-outermost beta reduction of the subterm at ``at``, step by step."""
    steps: list[Step] = []
    cur = t
    for _ in range(fuel):
        hit = first_beta_redex(subterm(cur, at), tuple(at))
        if hit is None:
            return steps, cur
        p, rule = hit
        st = Step(rule, p)
        cur = apply_step(cur, st, check_types=False)
        steps.append(st)
    raise FuelExhausted("traced beta reduction did not terminate")


def _first_mismatch(a: Term, b: Term, path=(), ea=None, eb=None, ta=None, tb=None):
    """Address (in ``a``) of the first node, in pre-order, where a and b differ up to alpha."""
    ea, eb, ta, tb = ea or {}, eb or {}, ta or {}, tb or {}

    def same_formula(f, g):
        return _fk(f, ta, 0) == _fk(g, tb, 0)

    if type(a) is not type(b):
        return path
    if isinstance(a, Var):
        ka = ("b", ea[a.name]) if a.name in ea else ("f", a.name)
        kb = ("b", eb[b.name]) if b.name in eb else ("f", b.name)
        return None if ka == kb else path
    if isinstance(a, Hole):
        return None if a.label == b.label else path
    if isinstance(a, Lam):
        if not same_formula(a.annot, b.annot):
            return path
        n = len(ea)
        return _first_mismatch(a.body, b.body, path + (0,), {**ea, a.var: n}, {**eb, b.var: n}, ta, tb)
    if isinstance(a, TLam):
        n = len(ta)
        return _first_mismatch(a.body, b.body, path + (0,), ea, eb, {**ta, a.var: n}, {**tb, b.var: n})
    if isinstance(a, App):
        return (_first_mismatch(a.fun, b.fun, path + (0,), ea, eb, ta, tb)
                or _first_mismatch(a.arg, b.arg, path + (1,), ea, eb, ta, tb))
    if isinstance(a, TApp):
        if not same_formula(a.witness, b.witness):
            return path
        return _first_mismatch(a.fun, b.fun, path + (0,), ea, eb, ta, tb)
    if isinstance(a, Inj):
        if a.sig != b.sig or a.k != b.k or not all(same_formula(x, y) for x, y in zip(a.type_args, b.type_args)):
            return path
        for i, (x, y) in enumerate(zip(a.args, b.args)):
            m = _first_mismatch(x, y, path + (i,), ea, eb, ta, tb)
            if m is not None:
                return m
        return None
    if isinstance(a, Case):
        if a.sig != b.sig or not same_formula(a.motive, b.motive):
            return path
        m = _first_mismatch(a.scrutinee, b.scrutinee, path + (0,), ea, eb, ta, tb)
        if m is not None:
            return m
        for i, (x, y) in enumerate(zip(a.branches, b.branches), 1):
            n = len(ea)
            xa = {**ea, **{v: n + j for j, v in enumerate(x.binders)}}
            xb = {**eb, **{v: n + j for j, v in enumerate(y.binders)}}
            m = _first_mismatch(x.body, y.body, path + (i,), xa, xb, ta, tb)
            if m is not None:
                return m
        return None
    return path


def _fk(f: Formula, env: Mapping[str, object], depth: int):
    from .syntax import Forall as _A, Imp as _I
    if isinstance(f, TVar):
        return ("b", env[f.name]) if f.name in env else ("f", f.name)
    if isinstance(f, _I):
        return ("->", _fk(f.ante, env, depth), _fk(f.cons, env, depth))
    if isinstance(f, _A):
        return ("A", _fk(f.body, {**env, f.var: ("q", depth)}, depth + 1))
    return ("#", f.sig, tuple(_fk(x, env, depth) for x in f.args))


def _beta_candidates(t: Term, p: tuple[int, ...]) -> list[tuple[tuple[int, ...], str]]:
    """Redexes worth firing when ``t`` first disagrees with the goal at ``p``."""
    out = []
    if p and p[-1] == 0:
        r = beta_redex_rule(subterm(t, p[:-1]))
        if r:
            out.append((p[:-1], r))
    for q, s in subterm_paths(subterm(t, p), p):
        r = beta_redex_rule(s)
        if r:
            out.append((q, r))
    for n in range(len(p) - 1, -1, -1):
        r = beta_redex_rule(subterm(t, p[:n]))
        if r:
            out.append((p[:n], r))
    seen: set = set()
    return [c for c in out if not (c[0] in seen or seen.add(c[0]))]


def find_beta_trace(a: Term, b: Term, max_steps: int = 2_000, max_nodes: int = 5_000) -> list[Step] | None:
    """A beta-only reduction from ``a`` to ``b`` (up to alpha), or ``None``.

    Reduces at the first point of disagreement, preferring the redex whose
    head is that point; dead ends are retried with the other candidates, in a
    depth-first search limited to ``max_nodes`` visited terms.
    """
    budget = [max_nodes]
    dead: set = set()

    def go(cur: Term, depth: int) -> list[Step] | None:
        p = _first_mismatch(cur, b)
        if p is None:
            return []
        key = alpha_key(cur)
        if key in dead or depth >= max_steps or budget[0] <= 0:
            return None
        budget[0] -= 1
        for q, rule in _beta_candidates(cur, p):
            nxt = apply_step(cur, Step(rule, q), check_types=False)
            rest = go(nxt, depth + 1)
            if rest is not None:
                return [Step(rule, q)] + rest
        dead.add(key)
        return None

    import sys
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * max_steps + 1000))
    try:
        return go(a, 0)
    finally:
        sys.setrecursionlimit(limit)


# --------------------------------------------------------------------------
# traces

@dataclass
class RewriteTrace:
    start: Term
    steps: list[Step]
    end: Term
    ctx: dict[str, Formula] = field(default_factory=dict)

    def to_json(self) -> dict:
        from .concrete import show
        def st(s: Step) -> dict:
            aux = {}
            if s.context is not None:
                aux["context"] = show(s.context)
            if s.redex is not None:
                aux["redex"] = show(s.redex)
            if s.k is not None:
                aux["k"] = s.k
            return {"rule": s.rule, "dir": s.direction, "address": list(s.address), "aux": aux}
        return {"start": show(self.start), "end": show(self.end),
                "ctx": {x: show(a) for x, a in self.ctx.items()},
                "steps": [st(s) for s in self.steps]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, data: dict | str) -> "RewriteTrace":
        from .concrete import parse_formula, parse_term
        if isinstance(data, str):
            data = json.loads(data)
        steps = []
        for s in data["steps"]:
            aux = s.get("aux") or {}
            steps.append(Step(s["rule"], tuple(s.get("address", ())), s.get("dir", "forward"),
                              parse_term(aux["context"]) if "context" in aux else None,
                              parse_term(aux["redex"]) if "redex" in aux else None,
                              aux.get("k")))
        ctx = {x: parse_formula(a) for x, a in (data.get("ctx") or {}).items()}
        return cls(parse_term(data["start"]), steps, parse_term(data["end"]), ctx)


@dataclass
class TraceCheck:
    ok: bool
    failed_at: int | None = None
    reason: str = ""
    final: Term | None = None

    def __bool__(self) -> bool:
        return self.ok


def replay(trace: RewriteTrace, check_types: bool = True) -> list[Term]:
    """All intermediate terms, start first."""
    terms = [trace.start]
    for st in trace.steps:
        terms.append(apply_step(terms[-1], st, trace.ctx, check_types))
    return terms


def verify_trace(trace: RewriteTrace, check_types: bool = True) -> TraceCheck:
    cur = trace.start
    for i, st in enumerate(trace.steps):
        try:
            cur = apply_step(cur, st, trace.ctx, check_types)
        except (RewriteError, TypingError, IndexError) as e:
            return TraceCheck(False, i, f"{st.rule} at {list(st.address)}: {e}", cur)
    if not alpha_eq(cur, trace.end):
        return TraceCheck(False, len(trace.steps), "replay does not end at the stated term", cur)
    return TraceCheck(True, None, "", cur)


# --------------------------------------------------------------------------
# bounded joinability

def _eps_moves(ctx: Ctx, t: Term) -> Iterable[Step]:
    """Epsilon instances whose context is a single-hole slice above the kernel."""
    for p, s in subterm_paths(t):
        us = 0
        h = s
        while isinstance(h, App):
            h = h.fun
            us += 1
        if not isinstance(h, TApp):
            continue
        try:
            sctx = context_at(ctx, t, p)
            _, comps = polynomial_components(typecheck(sctx, h.fun))
        except (TypingError, ValueError, RewriteError):
            continue
        if len(comps) != us:
            continue
        for n in range(len(p) - 1, -1, -1):
            q = p[:n]
            u = replace_at(subterm(t, q), p[n:], Hole())
            yield Step("Epsilon", q, context=u)


def _gamma_moves(t: Term, plus: bool) -> Iterable[Step]:
    for p, s in subterm_paths(t):
        if not isinstance(s, Case):
            continue
        for n in range(len(p) - 1, -1, -1):
            q = p[:n]
            u = replace_at(subterm(t, q), p[n:], Hole())
            if plus or is_elimination_context(u):
                yield Step("ConnGammaPlus" if plus else "ConnGamma", q, context=u)
            if not plus and not is_elimination_context(u):
                break


def _simple_moves(ctx: Ctx, t: Term, rules: frozenset[str]) -> Iterable[Step]:
    for p, s in subterm_paths(t):
        for r in ("ImpBeta", "ForallBeta", "ConnBeta", "ImpEta", "ForallEta", "ConnEta"):
            if r not in rules:
                continue
            try:
                contract(context_at(ctx, t, p) if r == "ConnEta" else {}, s, r)
            except (RewriteError, TypingError):
                continue
            yield Step(r, p)


def _moves(ctx: Ctx, t: Term, rules: frozenset[str]) -> Iterable[Step]:
    yield from _simple_moves(ctx, t, rules - BETA)
    if "Epsilon" in rules:
        yield from _eps_moves(ctx, t)
    if "ConnGamma" in rules:
        yield from _gamma_moves(t, False)
    if "ConnGammaPlus" in rules:
        yield from _gamma_moves(t, True)


def _normalize_traced(ctx: Ctx, t: Term, rules: frozenset[str], budget: int) -> tuple[list[Step], Term] | None:
    if not rules & BETA:
        return [], t
    steps: list[Step] = []
    cur = t
    while len(steps) <= budget:
        hit = None
        for p, s in subterm_paths(cur):
            r = beta_redex_rule(s)
            if r and r in rules:
                hit = (p, r)
                break
        if hit is None:
            return steps, cur
        p, r = hit
        cur = apply_step(cur, Step(r, p), ctx, check_types=False)
        steps.append(Step(r, p))
    return None


def normalize_trace(t: Term, rules: str = "beta", ctx: Ctx | None = None,
                    budget: int = 100_000) -> RewriteTrace:
    """Leftmost-outermost normalization recorded as a trace.

    ``rules`` is ``"beta"`` or ``"betaeta"``; with eta, beta redexes are
    always contracted first and eta contractions only on beta-normal terms.
    """
    if rules not in ("beta", "betaeta"):
        raise ValueError(f"unknown rule set {rules!r} (expected beta or betaeta)")
    ctx = dict(ctx or {})
    eta = frozenset({"ImpEta", "ForallEta"}) if rules == "betaeta" else frozenset()
    steps: list[Step] = []
    cur = t
    while len(steps) <= budget:
        hit = first_beta_redex(cur)
        st = Step(hit[1], hit[0]) if hit else next(iter(_simple_moves(ctx, cur, eta)), None)
        if st is None:
            return RewriteTrace(t, steps, cur, ctx)
        cur = apply_step(cur, st, ctx, check_types=False)
        steps.append(st)
    raise FuelExhausted(f"no normal form within {budget} steps")


def _binders_along(t: Term, path) -> tuple[list[str], list[str]]:
    terms: list[str] = []
    types: list[str] = []
    for i in path:
        if isinstance(t, Lam):
            terms.append(t.var)
        elif isinstance(t, TLam):
            types.append(t.var)
        elif isinstance(t, Case) and i >= 1:
            terms.extend(t.branches[i - 1].binders)
        t = children(t)[i]
    return terms, types


def _transport(r: Term, src: Term, dst: Term, path) -> Term:
    """Rename the free names of ``r``, written for the position ``path`` of
    ``src``, to the binder names used at the same position of the alpha-variant ``dst``."""
    sv, st = _binders_along(src, path)
    dv, dt = _binders_along(dst, path)
    terms = {a: Var(b) for a, b in zip(sv, dv)}  # inner binders overwrite outer ones
    types = {a: TVar(b) for a, b in zip(st, dt)}
    terms = {a: v for a, v in terms.items() if v.name != a}
    types = {a: v for a, v in types.items() if v.name != a}
    return substitute(r, terms=terms, types=types) if terms or types else r


def _join_trace(a: Term, b: Term, ha: list[tuple[Step, Term]], hb: list[tuple[Step, Term]], ctx: Ctx) -> RewriteTrace:
    """Forward steps from ``a`` to the meeting point, then the steps from ``b``
    undone in reverse, with each undone redex renamed into the current term's binders."""
    steps = [st for st, _ in ha]
    cur = a
    for st in steps:
        cur = apply_step(cur, st, ctx, check_types=False)
    after = b
    for st, _ in hb:
        after = apply_step(after, st, ctx, check_types=False)
    # walk b's history backwards: ``mirror`` is the b-side term, ``cur`` its alpha-variant
    mirror = after
    for st, before in reversed(hb):
        redex = _transport(subterm(before, st.address), mirror, cur, st.address)
        u = _transport(st.context, mirror, cur, st.address) if st.context is not None else None
        back = Step(st.rule, st.address, "backward", u, redex, st.k)
        cur = apply_step(cur, back, ctx, check_types=False)
        steps.append(back)
        mirror = before
    return RewriteTrace(a, steps, b, ctx)


def bounded_join(a: Term, b: Term, rules: Iterable[str] = ("ImpBeta", "ForallBeta", "ImpEta", "ForallEta", "Epsilon"),
                 max_steps: int = 64, max_size: int | None = None, ctx: Ctx | None = None,
                 max_nodes: int = 4000) -> RewriteTrace | None:
    """Search for a conversion trace between ``a`` and ``b``.

    Both sides are explored breadth-first; every node is kept beta-normal
    (when beta rules are allowed), and edges are single non-beta steps
    followed by beta normalization.  Returns ``None`` when no join is found
    within the bounds.
    """
    ctx = dict(ctx or {})
    if alpha_eq(a, b):
        return RewriteTrace(a, [], b, ctx)
    rules = frozenset(rules)
    if max_size is None:
        max_size = 4 * max(term_size(a), term_size(b))

    def start(t):
        r = _normalize_traced(ctx, t, rules, max_steps)
        if r is None:
            return None
        steps, nf = r
        hist, cur = [], t
        for st in steps:
            hist.append((st, cur))
            cur = apply_step(cur, st, ctx, check_types=False)
        return nf, hist

    sa, sb = start(a), start(b)
    if sa is None or sb is None:
        return None
    ka, kb = alpha_key(sa[0]), alpha_key(sb[0])
    if ka == kb:
        return _join_trace(a, b, sa[1], sb[1], ctx)
    seen = [{ka: sa}, {kb: sb}]
    frontier = [deque([sa]), deque([sb])]
    nodes = 2
    while True:
        if not frontier[0] and not frontier[1]:
            return None
        side = 0 if (frontier[0] and (len(frontier[0]) <= len(frontier[1]) or not frontier[1])) else 1
        t, hist = frontier[side].popleft()
        for mv in _moves(ctx, t, rules):
            try:
                nxt = apply_step(t, mv, ctx, check_types=False)
            except (RewriteError, TypingError, IndexError):
                continue
            r = _normalize_traced(ctx, nxt, rules, max_steps)
            if r is None:
                continue
            bsteps, nf = r
            if term_size(nf) > max_size:
                continue
            h2 = hist + [(mv, t)]
            cur = nxt
            for st in bsteps:
                h2.append((st, cur))
                cur = apply_step(cur, st, ctx, check_types=False)
            if len(h2) > max_steps:
                continue
            key = alpha_key(nf)
            if key in seen[side]:
                continue
            seen[side][key] = (nf, h2)
            if key in seen[1 - side]:
                ha, hb = (h2, seen[1][key][1]) if side == 0 else (seen[0][key][1], h2)
                if len(ha) + len(hb) <= max_steps:
                    return _join_trace(a, b, ha, hb, ctx)
            frontier[side].append((nf, h2))
            nodes += 1
            if nodes > max_nodes:
                return None
