"""Finite Kripke models for second-order logic with disjunction and atomic instantiation.

A formula is evaluated to its *extent*: the (upward-closed) set of worlds that
force it.  Quantifiers range over the domain D(w) of each world above the
current one, so evaluation stays finite.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .concrete import parse_formula
from .syntax import (
    AND, BOT, OR, TOP, App, Branch, Case, Conn, Forall, Formula, Hole, Imp, Inj, Lam, TApp,
    Term, TLam, TVar, Var, apps, fill_avoiding, fresh, rescope,
)
from .translations import rp_formula

WorldSet = frozenset


class UncoveredVariable(KeyError):
    pass


@dataclass(frozen=True)
class KripkeModel:
    worlds: tuple[str, ...]
    leq: frozenset[tuple[str, str]]
    bottom: str
    domain: Mapping[str, frozenset[WorldSet]]
    valuation: Mapping[str, WorldSet]
    default: WorldSet | None = None
    _up: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        up = {w: frozenset(v for v in self.worlds if (w, v) in self.leq) for w in self.worlds}
        object.__setattr__(self, "_up", up)

    def up(self, w: str) -> frozenset[str]:
        return self._up[w]

    def is_upset(self, a: Iterable[str]) -> bool:
        a = frozenset(a)
        return all(self.up(w) <= a for w in a)

    def value(self, x: str, env: Mapping[str, WorldSet] | None = None) -> WorldSet:
        if env and x in env:
            return env[x]
        if x in self.valuation:
            return self.valuation[x]
        if self.default is not None:
            return self.default
        raise UncoveredVariable(x)

    def violations(self) -> list[str]:
        """Broken model invariants (empty for a well-formed model)."""
        out = []
        ws = set(self.worlds)
        for w in ws:
            if (w, w) not in self.leq:
                out.append(f"leq not reflexive at {w}")
            if (self.bottom, w) not in self.leq:
                out.append(f"{self.bottom} is not below {w}")
        for (a, b) in self.leq:
            if (b, a) in self.leq and a != b:
                out.append(f"leq not antisymmetric at {a},{b}")
            for c in self.up(b):
                if (a, c) not in self.leq:
                    out.append(f"leq not transitive at {a},{b},{c}")
        for w in ws:
            for v in self.up(w):
                if not self.domain[w] <= self.domain[v]:
                    out.append(f"D not monotone from {w} to {v}")
            for a in self.domain[w]:
                if not self.is_upset(a):
                    out.append(f"D({w}) contains a non-upset {sorted(a)}")
        vals = list(self.valuation.values()) + ([self.default] if self.default is not None else [])
        for a in vals:
            if not self.is_upset(a):
                out.append(f"valuation contains a non-upset {sorted(a)}")
        return out

    @property
    def regular(self) -> bool:
        vals = list(self.valuation.values()) + ([self.default] if self.default is not None else [])
        return all(a in self.domain[self.bottom] for a in vals)

    # -- forcing

    def extent(self, a: Formula, env: Mapping[str, WorldSet] | None = None) -> WorldSet:
        env = dict(env or {})
        return self._ext(a, env)

    def _ext(self, a: Formula, env: dict) -> WorldSet:
        if isinstance(a, TVar):
            return frozenset(self.value(a.name, env))
        if isinstance(a, Imp):
            ea, eb = self._ext(a.ante, env), self._ext(a.cons, env)
            return frozenset(w for w in self.worlds if all(v in eb for v in self.up(w) if v in ea))
        if isinstance(a, Forall):
            ok = set(self.worlds)
            cache: dict[WorldSet, WorldSet] = {}
            for w in self.worlds:
                for v in self.up(w):
                    for d in self.domain[v]:
                        if d not in cache:
                            cache[d] = self._ext(a.body, {**env, a.var: d})
                        if v not in cache[d]:
                            ok.discard(w)
                            break
                    if w not in ok:
                        break
            return frozenset(ok)
        if isinstance(a, Conn):
            if a.sig == OR:
                return self._ext(a.args[0], env) | self._ext(a.args[1], env)
            if a.sig == AND:
                return self._ext(a.args[0], env) & self._ext(a.args[1], env)
            if a.sig == TOP:
                return frozenset(self.worlds)
            if a.sig == BOT:
                return frozenset()
        raise ValueError(f"no forcing clause for {a}")

    def forces(self, w: str, a: Formula, env: Mapping[str, WorldSet] | None = None) -> bool:
        return w in self.extent(a, env)

    # -- serialization

    def to_json(self) -> dict:
        order = {w: i for i, w in enumerate(self.worlds)}

        def ws(a):
            return sorted(a, key=order.__getitem__)
        return {
            "worlds": list(self.worlds),
            "bottom": self.bottom,
            "leq": sorted([list(p) for p in self.leq], key=lambda p: (order[p[0]], order[p[1]])),
            "D": {w: sorted((ws(a) for a in self.domain[w]), key=lambda s: (len(s), [order[x] for x in s]))
                  for w in self.worlds},
            "g": {x: ws(a) for x, a in sorted(self.valuation.items())}
                 | ({"*": ws(self.default)} if self.default is not None else {}),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False)


def forces(m: KripkeModel, w: str, a: Formula, env: Mapping[str, WorldSet] | None = None) -> bool:
    return m.forces(w, a, env)


def three_world_countermodel() -> KripkeModel:
    """Three worlds bot < alpha, beta; D constantly {{alpha},{beta}}; Y at alpha, Z at beta."""
    ws = ("⊥", "α", "β")
    leq = frozenset({(w, w) for w in ws} | {("⊥", "α"), ("⊥", "β")})
    a, b = frozenset({"α"}), frozenset({"β"})
    dom = {w: frozenset({a, b}) for w in ws}
    return KripkeModel(ws, leq, "⊥", dom, {"Y": a, "Z": b}, default=a)


# --------------------------------------------------------------------------
# exhaustive search

def _posets(n: int) -> list[frozenset[tuple[int, int]]]:
    """Partial orders on 0..n-1 with bottom 0, one per isomorphism class."""
    pairs = [(i, j) for i in range(1, n) for j in range(1, n) if i != j]
    seen: set = set()
    out = []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        rel = {(i, i) for i in range(n)} | {(0, i) for i in range(n)}
        rel |= {p for p, on in zip(pairs, bits) if on}
        if any((j, i) in rel for (i, j) in rel if i != j):
            continue
        if any((i, k) not in rel for (i, j) in rel for (j2, k) in rel if j == j2):
            continue
        canon = min(tuple(sorted((perm[i], perm[j]) for i, j in rel))
                    for perm in ([0] + list(p) for p in itertools.permutations(range(1, n))))
        if canon not in seen:
            seen.add(canon)
            out.append(frozenset(rel))
    return out


def _upsets(n: int, rel) -> list[frozenset[int]]:
    out = []
    for bits in itertools.product((False, True), repeat=n):
        s = frozenset(i for i in range(n) if bits[i])
        if all(j in s for (i, j) in rel if i in s):
            out.append(s)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _subsets(xs):
    for r in range(len(xs) + 1):
        yield from itertools.combinations(xs, r)


def iter_models(free_vars: Iterable[str], max_worlds: int = 3):
    """All regular models over the given variables, up to ``max_worlds`` worlds.

    Posets are canonicalized up to isomorphism; D(bottom) is non-empty (it must
    host the valuation) and D grows monotonically along the order.
    """
    free_vars = sorted(free_vars)
    for n in range(1, max_worlds + 1):
        names = tuple(["w0"] + [f"w{i}" for i in range(1, n)])
        for rel in _posets(n):
            ups = _upsets(n, rel)
            order = sorted(range(1, n), key=lambda i: sum(1 for j in range(n) if (j, i) in rel))
            for d0 in _subsets(ups):
                if not d0:
                    continue

                def extend(idx, dom):
                    if idx == len(order):
                        yield dict(dom)
                        return
                    w = order[idx]
                    below = [v for v in range(n) if (v, w) in rel and v != w]
                    base = frozenset().union(*(dom[v] for v in below))
                    rest = [u for u in ups if u not in base]
                    for extra in _subsets(rest):
                        dom[w] = base | frozenset(extra)
                        yield from extend(idx + 1, dom)
                    del dom[w]

                for dom in extend(0, {0: frozenset(d0)}):
                    domain = {names[i]: frozenset(frozenset(names[j] for j in a) for a in dom[i])
                              for i in range(n)}
                    leq = frozenset((names[i], names[j]) for i, j in rel)
                    for vals in itertools.product(sorted(dom[0], key=lambda s: (len(s), sorted(s))),
                                                  repeat=len(free_vars)):
                        g = {x: frozenset(names[j] for j in a) for x, a in zip(free_vars, vals)}
                        yield KripkeModel(names, leq, names[0], domain, g)


def countermodel_search(a: Formula, max_worlds: int = 3) -> KripkeModel | None:
    """A regular model whose bottom world does not force ``a``, if one exists within the bound."""
    for m in iter_models(a.ftv, max_worlds):
        if not m.forces(m.bottom, a):
            return m
    return None


# --------------------------------------------------------------------------
# A and its encoding are interderivable

def build_iso_contexts(a: Formula, avoid: Iterable[str] = ()) -> tuple[Term, Term]:
    """Contexts C : A* |- A and D : A |- A*, by recursion on A."""
    taken = set(avoid) | a.names

    def fresh_var(base: str) -> str:
        x = fresh(base, taken)
        taken.add(x)
        return x

    def go(a: Formula) -> tuple[Term, Term]:
        if isinstance(a, TVar):
            return Hole(), Hole()
        if isinstance(a, Imp):
            ca, da = go(a.ante)
            cb, db = go(a.cons)
            x = fresh_var("x")
            c = Lam(x, a.ante, fill_avoiding(cb, App(Hole(), fill_avoiding(da, Var(x)))))
            d = Lam(x, rp_formula(a.ante), fill_avoiding(db, App(Hole(), fill_avoiding(ca, Var(x)))))
            return c, d
        if isinstance(a, Forall):
            cb, db = go(a.body)
            return (TLam(a.var, fill_avoiding(cb, TApp(Hole(), TVar(a.var)))),
                    TLam(a.var, fill_avoiding(db, TApp(Hole(), TVar(a.var)))))
        if isinstance(a, Conn):
            sig = a.sig
            subs = [go(x) for x in a.args]
            star = rp_formula(a)
            x = star.var
            prem = []
            for k in range(1, sig.size_k + 1):
                ys = [(j, fresh_var("y")) for j in sig.premises(k)]
                prem.append(ys)
            funs = []
            for k, ys in enumerate(prem, 1):
                body = Inj(sig, k, tuple(fill_avoiding(subs[sig.f[j - 1] - 1][0], Var(y)) for j, y in ys), a.args)
                for j, y in reversed(ys):
                    body = Lam(y, rp_formula(a.args[sig.f[j - 1] - 1]), body)
                funs.append(body)
            c = apps(TApp(Hole(), a), funs)
            hs = [fresh_var("x") for _ in range(sig.size_k)]
            fk = [t.ante for t in _antecedents(star.body, sig.size_k)]
            branches = []
            for k, ys in enumerate(prem, 1):
                body: Term = apps(Var(hs[k - 1]), [fill_avoiding(subs[sig.f[j - 1] - 1][1], Var(y)) for j, y in ys])
                for h, f in reversed(list(zip(hs, fk))):
                    body = Lam(h, f, body)
                branches.append(Branch(tuple(y for _, y in ys), body))
            motive = star.body
            d = TLam(x, Case(sig, Hole(), motive, tuple(branches)))
            return c, d
        raise TypeError(f"not a formula: {a!r}")

    c, d = go(a)
    # nested encodings reuse the bound name X: rename inner abstractions the proviso would reject
    return rescope(c), rescope(d)


def _antecedents(a: Formula, n: int) -> list[Imp]:
    out = []
    for _ in range(n):
        out.append(a)
        a = a.cons
    return out


# --------------------------------------------------------------------------
# fixtures

def y_curly_z(x: str = "X") -> Formula:
    """(Y -> X) -> (Z -> X) -> X."""
    return parse_formula(f"(Y -> {x}) -> (Z -> {x}) -> {x}")


RP_OR_REFUTED = parse_formula("(forall X. (Y -> X) -> (Z -> X) -> X) -> Y \\/ Z")
OVERFLOW_REFUTED = parse_formula(
    "(forall X. (Y -> X) -> (Z -> X) -> X) -> (Y -> Y \\/ Z) -> (Z -> Y \\/ Z) -> Y \\/ Z")

# (world, {X mapped to}, formula, forced?) -- the case analysis behind the refutation
COUNTERMODEL_FACTS: list[tuple[str, str | None, str, bool]] = [
    ("α", None, "Y \\/ Z", True),
    ("β", None, "Y \\/ Z", True),
    ("⊥", None, "Y \\/ Z", False),
    # a = {alpha}
    ("α", "α", "Y -> X", True), ("α", "α", "Z -> X", True), ("α", "α", "X", True),
    ("β", "α", "Y -> X", True),
    ("β", "α", "Z -> X", False), ("β", "α", "X", False),
    ("⊥", "α", "Y -> X", True),
    ("⊥", "α", "Y", False), ("β", "α", "Y", False), ("α", "α", "Y", True),
    ("⊥", "α", "Z -> X", False), ("⊥", "α", "X", False),
    ("β", "α", "Z", True),
    ("⊥", "α", "(Y -> X) -> (Z -> X) -> X", True),
    # a = {beta}
    ("α", "β", "Z -> X", True),
    ("α", "β", "Y -> X", False), ("α", "β", "X", False),
    ("β", "β", "Y -> X", True), ("β", "β", "Z -> X", True), ("β", "β", "X", True),
    ("⊥", "β", "Z -> X", True),
    ("⊥", "β", "Z", False), ("α", "β", "Z", False), ("β", "β", "Z", True),
    ("⊥", "β", "Y -> X", False), ("⊥", "β", "X", False),
    ("α", "β", "Y", True),
    ("⊥", "β", "(Y -> X) -> (Z -> X) -> X", True),
    # conclusions
    ("⊥", None, "forall X. (Y -> X) -> (Z -> X) -> X", True),
    ("⊥", None, "(forall X. (Y -> X) -> (Z -> X) -> X) -> Y \\/ Z", False),
]


def check_countermodel_facts(m: KripkeModel | None = None) -> list[tuple[tuple, bool]]:
    """Each fact paired with whether forcing reproduces it."""
    m = m or three_world_countermodel()
    out = []
    for w, x, src, want in COUNTERMODEL_FACTS:
        env = {"X": frozenset({x})} if x else None
        out.append(((w, x, src, want), m.forces(w, parse_formula(src), env) == want))
    return out


DISJUNCTION_FIXTURE_A = "forall X. forall Y. X -> Y"
DISJUNCTION_FIXTURE_B = f"forall Y. (forall X. (({DISJUNCTION_FIXTURE_A}) -> X) -> Y) -> Y"
DISJUNCTION_FIXTURE_TERM = (
    f"/\\X. \\p1:({DISJUNCTION_FIXTURE_A}) -> X. \\p2:({DISJUNCTION_FIXTURE_B}) -> X. "
    f"p2 (/\\Y. \\n:forall X. (({DISJUNCTION_FIXTURE_A}) -> X) -> Y. n [X] p1)"
)
