"""Exhaustive, deterministic enumeration of small well-typed terms and conversion instances.

Terms are generated type-directed over a *scene*: a typing context, some
target types, and a small universe of formulas used for annotations,
antecedents, witnesses and scrutinee types.  Size counts non-variable nodes
(:func:`polycalc.syntax.ast_size`), so ``x`` costs 0 and ``\\x:A. x`` costs 1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .concrete import parse_formula
from .rewrite import RULES, RewriteError, Step, apply_step
from .syntax import (
    App, Branch, Case, Conn, Forall, Formula, Imp, Inj, Lam, TApp, Term, TLam, TVar, Var,
    alpha_key, fresh, subst_formula, subterm, subterm_paths, ast_size,
)
from .typecheck import Judgment, TypingError, typecheck

SIZE_CAP = 9
ATOMS = ("Y", "Z", "W")


@dataclass(frozen=True)
class Scene:
    """A typing context plus the formula universe its terms are drawn from.

    ``max_size`` caps this scene below the corpus bound: exhaustive enumeration
    grows roughly tenfold per size step once case analyses can nest.
    """

    ctx: tuple[tuple[str, Formula], ...]
    targets: tuple[Formula, ...]
    antecedents: tuple[Formula, ...]
    witnesses: tuple[Formula, ...] = ()
    scrutinees: tuple[Formula, ...] = ()
    max_size: int = SIZE_CAP


def _scene(ctx: Mapping[str, str], targets: Iterable[str], antecedents: Iterable[str] = (),
           witnesses: Iterable[str] = (), scrutinees: Iterable[str] = (), max_size: int = SIZE_CAP) -> Scene:
    f = parse_formula
    return Scene(tuple((x, f(a)) for x, a in ctx.items()), tuple(map(f, targets)),
                 tuple(map(f, antecedents)), tuple(map(f, witnesses)), tuple(map(f, scrutinees)), max_size)


_OR = "Y \\/ Z"
_OR_STAR = "forall X. (Y -> X) -> (Z -> X) -> X"
_AND_STAR = "forall X. (Y -> Z -> X) -> X"
_BULLET_STAR = "forall X. (Y -> Z -> X) -> (W -> X) -> X"

SCENES: dict[str, tuple[Scene, ...]] = {
    "NIP": (
        _scene({"x": _OR}, [_OR], scrutinees=[_OR], max_size=4),
        _scene({"y": "Y", "f": "Y -> Y"}, ["Y"], ["Y"], max_size=5),
        _scene({"x": _OR, "f": "Y -> W", "g": "Z -> W"}, ["W"], ["Y", "Z"], scrutinees=[_OR], max_size=5),
        _scene({"p": "Y /\\ Z"}, ["Z /\\ Y"], scrutinees=["Y /\\ Z"], max_size=4),
        _scene({"x": _OR, "w": "W", "f": "W -> Y"}, ["Y"], ["W"], scrutinees=[_OR], max_size=4),
        _scene({}, ["Y -> Y \\/ Z", "(Y -> W) -> Y -> W"], ["Y"]),
        _scene({"e": "bot"}, ["W"], scrutinees=["bot"]),
        _scene({}, ["top"], max_size=3),
        _scene({"b": "bullet(Y, Z, W)"}, ["bullet(Y, Z, W)"], scrutinees=["bullet(Y, Z, W)"], max_size=3),
        _scene({"t": "#triangle(Y, Z, W, Y, Z)"}, ["#triangle(Y, Z, W, Y, Z)"],
               scrutinees=["#triangle(Y, Z, W, Y, Z)"], max_size=2),
        _scene({"x": _OR, "y": "Y"}, ["Y /\\ (Y \\/ Z)"], scrutinees=[_OR], max_size=3),
    ),
    "NI2RP": (
        _scene({"x": _OR_STAR}, ["(Y -> W -> W) -> (Z -> W -> W) -> W -> W"],
               ["Y -> W -> W", "Z -> W -> W", "W"], ["W", "W -> W"]),
        _scene({"x": _OR_STAR}, [f"(Y -> {_OR_STAR}) -> (Z -> {_OR_STAR}) -> {_OR_STAR}"],
               [f"Y -> {_OR_STAR}", f"Z -> {_OR_STAR}"], [_OR_STAR]),
        _scene({"x": _OR_STAR, "f": "Y -> W -> W", "g": "Z -> W -> W", "w": "W"}, ["W"],
               ["Y -> W -> W", "Z -> W -> W", "W"], ["W", "W -> W"], max_size=5),
        _scene({"x": _OR_STAR}, [_OR_STAR], ["Y -> X", "Z -> X"], ["X", _OR_STAR]),
        _scene({"p": _AND_STAR}, ["(Y -> Z -> W -> W) -> W -> W"], ["Y -> Z -> W -> W", "W"], ["W", "W -> W"]),
        _scene({"p": _AND_STAR}, ["(Y -> Z -> forall X. X -> X) -> forall X. X -> X"],
               ["Y -> Z -> forall X. X -> X"], ["forall X. X -> X"]),
        _scene({"b": _BULLET_STAR}, ["(Y -> Z -> W -> W) -> (W -> W -> W) -> W -> W"],
               ["Y -> Z -> W -> W", "W -> W -> W", "W"], ["W", "W -> W"]),
        _scene({"b": _BULLET_STAR, "w": "W", "h": "Y -> Z -> W -> W", "k": "W -> W -> W"}, ["W"],
               ["Y -> Z -> W -> W", "W -> W -> W", "W"], ["W", "W -> W"], max_size=5),
        _scene({}, ["forall X. X -> X", "forall X. (Y -> X) -> X"], ["Y"], ["Y", "Y -> Y"]),
    ),
    "NIVEE": (
        _scene({"x": _OR}, [_OR], scrutinees=[_OR], max_size=4),
        _scene({"x": _OR, "w": "W", "f": "W -> W"}, ["W"], ["W"], scrutinees=[_OR], max_size=3),
    ),
    "NI2": (
        _scene({}, ["forall X. X -> X", "forall X. X -> (X -> X) -> X"], ["Y"], ["Y", "Y -> Y"], max_size=6),
        _scene({"x": "forall X. X"}, ["Y", "Y -> Z"], ["Y"], ["Y", "Y -> Z"], max_size=5),
    ),
    "NI2VEEAT": (
        _scene({}, ["Y -> Y \\/ Z", "Y \\/ Z -> Z \\/ Y", "(Y -> W) -> Y -> W", "forall X. X -> X \\/ Y"],
               ["Y", "Z"], ["Y", "X"], scrutinees=[_OR], max_size=5),
        _scene({"x": "forall X. X"}, ["Y \\/ Z"], [], ["Y", "Z"], max_size=3),
    ),
}
SCENES["NI2P"] = SCENES["NIP"] + SCENES["NI2RP"]
SCENES["NI2AT"] = SCENES["NI2"]
SCENES["NI2VEE"] = SCENES["NIVEE"]


def splits(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for i in range(total + 1):
        for rest in splits(total - i, parts - 1):
            yield (i,) + rest


class _Generator:
    def __init__(self, scene: Scene, system: str):
        self.scene = scene
        self.system = system
        self.atomic = system.endswith("AT")
        self.memo: dict = {}
        conns = {alpha_key(a): a for a in scene.scrutinees}
        self.scrutinees = list(conns.values())
        foralls = [a for _, a in scene.ctx if isinstance(a, Forall)]
        foralls += [a for a in scene.targets if isinstance(a, Forall)]
        self.foralls = list({alpha_key(a): a for a in foralls}.values())
        self.witnesses = [w for w in scene.witnesses if not self.atomic or isinstance(w, TVar)]

    def gen(self, ctx: tuple[tuple[str, Formula], ...], t: Formula, n: int) -> list[Term]:
        key = (tuple((x, alpha_key(a)) for x, a in ctx), alpha_key(t), n)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = list(self._gen(ctx, t, n))
        return hit

    def _gen(self, ctx, t: Formula, n: int) -> Iterator[Term]:
        d = dict(ctx)
        if n == 0:
            for x, a in d.items():
                if alpha_key(a) == alpha_key(t):
                    yield Var(x)
            return
        names = set(d)
        ctx_ftv = set().union(*(a.ftv for a in d.values())) if d else set()
        # introductions
        if isinstance(t, Imp):
            x = fresh("v", names)
            inner = tuple((k, a) for k, a in ctx if k != x) + ((x, t.ante),)
            for b in self.gen(inner, t.cons, n - 1):
                yield Lam(x, t.ante, b)
        elif isinstance(t, Forall) and t.var not in ctx_ftv:
            for b in self.gen(ctx, t.body, n - 1):
                yield TLam(t.var, b)
        elif isinstance(t, Conn):
            for k in range(1, t.sig.size_k + 1):
                prem = t.sig.premise_formulas(k, t.args)
                for sz in splits(n - 1, len(prem)):
                    yield from (Inj(t.sig, k, args, t.args) for args in self._product(ctx, prem, sz))
        # eliminations
        for a in self.scene.antecedents:
            for i in range(n):
                for f in self.gen(ctx, Imp(a, t), i):
                    for arg in self.gen(ctx, a, n - 1 - i):
                        yield App(f, arg)
        for fa in self.foralls:
            for w in self.witnesses:
                if alpha_key(subst_formula(fa.body, fa.var, w)) == alpha_key(t):
                    for f in self.gen(ctx, fa, n - 1):
                        yield TApp(f, w)
        for s in self.scrutinees:
            kk = s.sig.size_k
            binders = []
            taken = set(names)
            for k in range(1, kk + 1):
                bs = []
                for _ in s.sig.premises(k):
                    y = fresh("y", taken)
                    taken.add(y)
                    bs.append(y)
                binders.append(bs)
            for sz in splits(n - 1, kk + 1):
                for sc in self.gen(ctx, s, sz[0]):
                    yield from self._cases(ctx, s, t, sc, binders, sz[1:])

    def _cases(self, ctx, s: Conn, motive: Formula, sc: Term, binders, sizes):
        per = []
        for k, (bs, sz) in enumerate(zip(binders, sizes), 1):
            inner = tuple((x, a) for x, a in ctx if x not in bs) + tuple(zip(bs, s.sig.premise_formulas(k, s.args)))
            per.append([Branch(tuple(bs), b) for b in self.gen(inner, motive, sz)])
        for brs in _cartesian(per):
            yield Case(s.sig, sc, motive, tuple(brs))

    def _product(self, ctx, types, sizes):
        return _cartesian([self.gen(ctx, a, sz) for a, sz in zip(types, sizes)])


def _cartesian(lists):
    if not lists:
        yield ()
        return
    head, *rest = lists
    for h in head:
        for r in _cartesian(rest):
            yield (h,) + r


@dataclass
class ConversionPair:
    source: Judgment
    target: Judgment
    rule: str
    step: Step


@dataclass
class Corpus:
    system: str
    size_bound: int
    seed: int
    judgments: list[Judgment] = field(default_factory=list)
    conversion_pairs: list[ConversionPair] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.judgments)


def enumerate_terms(scene: Scene, system: str, size_bound: int) -> list[Judgment]:
    g = _Generator(scene, system)
    out = []
    seen = set()
    for n in range(min(size_bound, scene.max_size) + 1):
        for t in scene.targets:
            for u in g.gen(scene.ctx, t, n):
                key = (alpha_key(u), alpha_key(t))
                if key in seen:
                    continue
                seen.add(key)
                got = typecheck(dict(scene.ctx), u, system)
                if alpha_key(got) != alpha_key(t):
                    raise AssertionError(f"generated {u} has type {got}, not {t}")
                out.append(Judgment(scene.ctx, u, t, system))
    return out


def enumerate_judgments(system: str, size_bound: int, seed: int = 0, extra: int = 0,
                        extra_samples: int = 50, with_conversions: bool = True) -> Corpus:
    """All scene judgments up to ``size_bound``, in size order, plus (if ``extra``)
    a seeded sample of larger ones."""
    if size_bound > SIZE_CAP:
        raise ValueError(f"size bound {size_bound} exceeds the cap {SIZE_CAP}")
    if system not in SCENES:
        raise ValueError(f"no scenes for system {system!r}")
    corpus = Corpus(system, size_bound, seed)
    for scene in SCENES[system]:
        corpus.judgments += enumerate_terms(scene, system, size_bound)
    if extra:
        rng = random.Random(seed)
        for scene in SCENES[system]:
            g = _Generator(scene, system)
            pool = [Judgment(scene.ctx, u, t, system)
                    for n in range(min(size_bound, scene.max_size) + 1, min(size_bound, scene.max_size) + extra + 1)
                    for t in scene.targets for u in g.gen(scene.ctx, t, n)]
            corpus.judgments += rng.sample(pool, min(extra_samples, len(pool)))
    corpus.judgments.sort(key=lambda j: ast_size(j.term))
    if with_conversions:
        corpus.conversion_pairs = conversion_pairs(corpus.judgments)
    return corpus


# --------------------------------------------------------------------------
# primitive conversion instances

CONVERSION_RULES = ("ImpBeta", "ForallBeta", "ConnBeta", "ImpEta", "ForallEta", "ConnEta",
                    "ConnGamma", "ConnGammaPlus")


def conversion_steps(ctx: Mapping[str, Formula], u: Term, rules: Iterable[str] = CONVERSION_RULES) -> Iterator[Step]:
    """Every forward primitive conversion step applicable somewhere in ``u``."""
    from .syntax import Hole, replace_at
    rules = set(rules)
    for path, r in subterm_paths(u):
        for rule in ("ImpBeta", "ForallBeta", "ConnBeta", "ImpEta", "ForallEta", "ConnEta"):
            if rule in rules:
                st = Step(rule, path, k=r.scrutinee.k if rule == "ConnBeta" and isinstance(r, Case)
                          and isinstance(r.scrutinee, Inj) else None)
                if _applies(ctx, u, st):
                    yield st
        if "ConnGamma" in rules:
            for i, c in enumerate(_children_for_gamma(r)):
                if isinstance(c, Case):
                    st = Step("ConnGamma", path, context=replace_at(r, (i,), Hole()))
                    if _applies(ctx, u, st):
                        yield st
        if "ConnGammaPlus" in rules:
            for q, c in subterm_paths(r):
                if q and isinstance(c, Case):
                    st = Step("ConnGammaPlus", path, context=replace_at(r, q, Hole()))
                    if _applies(ctx, u, st):
                        yield st


def _children_for_gamma(r: Term) -> list[Term]:
    # the hole of an elimination context sits in head position
    if isinstance(r, (App, TApp)):
        return [r.fun]
    if isinstance(r, Case):
        return [r.scrutinee]
    return []


def _applies(ctx, u: Term, st: Step) -> bool:
    try:
        apply_step(u, st, ctx)
        return True
    except (RewriteError, TypingError, ValueError, IndexError):
        return False


def conversion_pairs(judgments: Iterable[Judgment], rules: Iterable[str] = CONVERSION_RULES) -> list[ConversionPair]:
    out = []
    for j in judgments:
        ctx = j.context
        for st in conversion_steps(ctx, j.term, rules):
            v = apply_step(j.term, st, ctx)
            out.append(ConversionPair(j, Judgment(j.ctx, v, typecheck(ctx, v, j.system), j.system), st.rule, st))
    return out


# --------------------------------------------------------------------------
# formulas

def enumerate_formulas(size_bound: int, fragment: str = "L2", atoms: Iterable[str] = ("Y", "Z")) -> list[Formula]:
    """All formulas of ``fragment`` with :func:`formula_size` at most ``size_bound``,
    over the free atoms given, one representative per α-class, smallest first.

    Bound variables are named ``X``, ``X1``, ... by depth; the propositional
    part uses the builtin ``\\/``, ``/\\``, ``top`` and ``bot``.
    """
    from .fragments import in_fragment
    from .syntax import AND, BOT, OR, TOP, formula_size
    quantified = fragment not in ("LP", "LVEE", "LBULLET")
    conns = {"LP": (OR, AND, TOP, BOT), "L2P": (OR, AND, TOP, BOT), "LVEE": (OR,), "L2VEE": (OR,)}.get(fragment, ())
    atoms = tuple(atoms)
    memo: dict[tuple[int, tuple[str, ...]], list[Formula]] = {}

    def exact(n: int, bound: tuple[str, ...]) -> list[Formula]:
        key = (n, bound)
        if key in memo:
            return memo[key]
        out: list[Formula] = []
        if n == 1:
            out += [TVar(a) for a in atoms + bound]
            out += [Conn(s, ()) for s in conns if s.size_i == 0]
        else:
            for i in range(1, n - 1):
                for a in exact(i, bound):
                    out += [Imp(a, b) for b in exact(n - 1 - i, bound)]
            for s in conns:
                if s.size_i == 2:
                    for i in range(1, n - 1):
                        for a in exact(i, bound):
                            out += [Conn(s, (a, b)) for b in exact(n - 1 - i, bound)]
            if quantified:
                x = "X" if not bound else f"X{len(bound)}"
                out += [Forall(x, b) for b in exact(n - 1, bound + (x,))]
        memo[key] = out
        return out

    seen: set = set()
    result = []
    for n in range(1, size_bound + 1):
        for a in exact(n, ()):
            k = alpha_key(a)
            if k not in seen and in_fragment(a, fragment):
                seen.add(k)
                result.append(a)
    assert all(formula_size(a) <= size_bound for a in result)
    return result
