"""Core syntax: connective signatures, formulas, proof terms and contexts.

Everything here is immutable.  Names are plain strings; bound names are
renamed on demand using :func:`fresh`, which appends a counter suffix.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Union

__all__ = [
    "ConnSignature", "Formula", "TVar", "Imp", "Forall", "Conn",
    "Term", "Var", "Lam", "App", "TLam", "TApp", "Inj", "Case", "Branch", "Hole",
    "OR", "AND", "TOP", "BOT", "BULLET", "TRIANGLE", "builtin_signatures",
    "register_signature", "lookup_signature", "fresh", "imps", "lams", "apps",
    "subst_formula", "subst_formulas", "subst_term", "subst_type_in_term", "substitute",
    "fill_avoiding", "fill_capturing", "alpha_eq", "alpha_key", "formula_size",
    "term_size", "ast_size", "subterm", "replace_at", "subterm_paths", "children",
]


# --------------------------------------------------------------------------
# signatures

@dataclass(frozen=True)
class ConnSignature:
    """A polynomial connective given by index lists I, J, K and maps f: J->I, g: J->K.

    Positions are 1-based; ``f[j-1]`` is f(j).
    """

    name: str
    size_i: int
    size_j: int
    size_k: int
    f: tuple[int, ...]
    g: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.f) != self.size_j or len(self.g) != self.size_j:
            raise ValueError(f"signature {self.name}: f and g must have length J={self.size_j}")
        if any(not 1 <= i <= self.size_i for i in self.f):
            raise ValueError(f"signature {self.name}: f leaves [1..{self.size_i}]")
        if any(not 1 <= k <= self.size_k for k in self.g):
            raise ValueError(f"signature {self.name}: g leaves [1..{self.size_k}]")

    def premises(self, k: int) -> tuple[int, ...]:
        """g^{-1}(k) in ascending J order."""
        if not 1 <= k <= self.size_k:
            raise ValueError(f"signature {self.name} has no component {k}")
        return tuple(j for j in range(1, self.size_j + 1) if self.g[j - 1] == k)

    def arity(self, k: int) -> int:
        return len(self.premises(k))

    def premise_formulas(self, k: int, args: tuple["Formula", ...]) -> tuple["Formula", ...]:
        """The formulas A_{f(j)} for j in g^{-1}(k)."""
        return tuple(args[self.f[j - 1] - 1] for j in self.premises(k))


OR = ConnSignature("or", 2, 2, 2, (1, 2), (1, 2))
AND = ConnSignature("and", 2, 2, 1, (1, 2), (1, 1))
TOP = ConnSignature("top", 0, 0, 1, (), ())
BOT = ConnSignature("bot", 0, 0, 0, (), ())
BULLET = ConnSignature("bullet", 3, 3, 2, (1, 2, 3), (1, 1, 2))
# (A2 /\ A3) \/ (A4 /\ A3) with a dummy first argument
TRIANGLE = ConnSignature("triangle", 5, 4, 2, (2, 3, 4, 3), (1, 1, 2, 2))

_BUILTINS = (OR, AND, TOP, BOT, BULLET, TRIANGLE)
_REGISTRY: dict[str, ConnSignature] = {s.name: s for s in _BUILTINS}


def builtin_signatures() -> dict[str, ConnSignature]:
    return {s.name: s for s in _BUILTINS}


def register_signature(sig: ConnSignature) -> ConnSignature:
    old = _REGISTRY.get(sig.name)
    if old is not None and old != sig:
        raise ValueError(f"signature {sig.name!r} already registered with a different shape")
    _REGISTRY[sig.name] = sig
    return sig


def lookup_signature(name: str) -> ConnSignature:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown connective {name!r}") from None


# --------------------------------------------------------------------------
# fresh names

_SUFFIX = re.compile(r"^(.*?)(\d*)$")


def fresh(base: str, avoid: Iterable[str]) -> str:
    """``base`` itself if unused, else the first ``root<n>`` not in ``avoid``."""
    avoid = avoid if isinstance(avoid, (set, frozenset)) else set(avoid)
    if base not in avoid:
        return base
    root = _SUFFIX.match(base).group(1) or base
    n = 1
    while f"{root}{n}" in avoid:
        n += 1
    return f"{root}{n}"


# --------------------------------------------------------------------------
# formulas

class _Node:
    __slots__ = ()

    def __str__(self) -> str:  # pragma: no cover - thin delegate
        from .concrete import show
        return show(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}<{self}>"


@dataclass(frozen=True, repr=False)
class TVar(_Node):
    name: str

    @cached_property
    def ftv(self) -> frozenset[str]:
        return frozenset((self.name,))

    @cached_property
    def names(self) -> frozenset[str]:
        return self.ftv


@dataclass(frozen=True, repr=False)
class Imp(_Node):
    ante: "Formula"
    cons: "Formula"

    @cached_property
    def ftv(self) -> frozenset[str]:
        return self.ante.ftv | self.cons.ftv

    @cached_property
    def names(self) -> frozenset[str]:
        return self.ante.names | self.cons.names


@dataclass(frozen=True, repr=False)
class Forall(_Node):
    var: str
    body: "Formula"

    @cached_property
    def ftv(self) -> frozenset[str]:
        return self.body.ftv - {self.var}

    @cached_property
    def names(self) -> frozenset[str]:
        return self.body.names | {self.var}


@dataclass(frozen=True, repr=False)
class Conn(_Node):
    sig: ConnSignature
    args: tuple["Formula", ...]

    def __post_init__(self) -> None:
        if len(self.args) != self.sig.size_i:
            raise ValueError(f"{self.sig.name} expects {self.sig.size_i} arguments, got {len(self.args)}")

    @cached_property
    def ftv(self) -> frozenset[str]:
        return frozenset().union(*(a.ftv for a in self.args))

    @cached_property
    def names(self) -> frozenset[str]:
        return frozenset().union(*(a.names for a in self.args))


Formula = Union[TVar, Imp, Forall, Conn]


def imps(antes: Iterable[Formula], cons: Formula) -> Formula:
    """A1 -> ... -> An -> cons."""
    out = cons
    for a in reversed(tuple(antes)):
        out = Imp(a, out)
    return out


def formula_size(a: Formula) -> int:
    if isinstance(a, TVar):
        return 1
    if isinstance(a, Imp):
        return 1 + formula_size(a.ante) + formula_size(a.cons)
    if isinstance(a, Forall):
        return 1 + formula_size(a.body)
    return 1 + sum(formula_size(x) for x in a.args)


def subst_formulas(a: Formula, m: Mapping[str, Formula]) -> Formula:
    """Simultaneous capture-avoiding substitution of formulas for type variables."""
    m = {k: v for k, v in m.items() if k in a.ftv}
    if not m:
        return a
    if isinstance(a, TVar):
        return m.get(a.name, a)
    if isinstance(a, Imp):
        return Imp(subst_formulas(a.ante, m), subst_formulas(a.cons, m))
    if isinstance(a, Conn):
        return Conn(a.sig, tuple(subst_formulas(x, m) for x in a.args))
    m.pop(a.var, None)
    danger = frozenset().union(*(v.ftv for v in m.values()))
    var, body = a.var, a.body
    if var in danger:
        new = fresh(var, danger | body.names | set(m))
        body = subst_formulas(body, {var: TVar(new)})
        var = new
    return Forall(var, subst_formulas(body, m))


def subst_formula(a: Formula, var: str, b: Formula) -> Formula:
    return subst_formulas(a, {var: b})


# --------------------------------------------------------------------------
# terms

def _union(sets: Iterable[frozenset[str]]) -> frozenset[str]:
    return frozenset().union(*sets)


@dataclass(frozen=True, repr=False)
class Var(_Node):
    name: str

    @cached_property
    def fv(self) -> frozenset[str]:
        return frozenset((self.name,))

    ftv = frozenset()
    holes = frozenset()

    @cached_property
    def names(self) -> frozenset[str]:
        return self.fv


@dataclass(frozen=True, repr=False)
class Hole(_Node):
    label: str = ""

    fv = frozenset()
    ftv = frozenset()
    names = frozenset()

    @cached_property
    def holes(self) -> frozenset[str]:
        return frozenset((self.label,))


@dataclass(frozen=True, repr=False)
class Lam(_Node):
    var: str
    annot: Formula
    body: "Term"

    @cached_property
    def fv(self) -> frozenset[str]:
        return self.body.fv - {self.var}

    @cached_property
    def ftv(self) -> frozenset[str]:
        return self.annot.ftv | self.body.ftv

    @cached_property
    def holes(self) -> frozenset[str]:
        return self.body.holes

    @cached_property
    def names(self) -> frozenset[str]:
        return self.body.names | self.annot.names | {self.var}


@dataclass(frozen=True, repr=False)
class App(_Node):
    fun: "Term"
    arg: "Term"

    @cached_property
    def fv(self) -> frozenset[str]:
        return self.fun.fv | self.arg.fv

    @cached_property
    def ftv(self) -> frozenset[str]:
        return self.fun.ftv | self.arg.ftv

    @cached_property
    def holes(self) -> frozenset[str]:
        return self.fun.holes | self.arg.holes

    @cached_property
    def names(self) -> frozenset[str]:
        return self.fun.names | self.arg.names


@dataclass(frozen=True, repr=False)
class TLam(_Node):
    var: str
    body: "Term"

    @cached_property
    def fv(self) -> frozenset[str]:
        return self.body.fv

    @cached_property
    def ftv(self) -> frozenset[str]:
        return self.body.ftv - {self.var}

    @cached_property
    def holes(self) -> frozenset[str]:
        return self.body.holes

    @cached_property
    def names(self) -> frozenset[str]:
        return self.body.names | {self.var}


@dataclass(frozen=True, repr=False)
class TApp(_Node):
    fun: "Term"
    witness: Formula

    @cached_property
    def fv(self) -> frozenset[str]:
        return self.fun.fv

    @cached_property
    def ftv(self) -> frozenset[str]:
        return self.fun.ftv | self.witness.ftv

    @cached_property
    def holes(self) -> frozenset[str]:
        return self.fun.holes

    @cached_property
    def names(self) -> frozenset[str]:
        return self.fun.names | self.witness.names


@dataclass(frozen=True, repr=False)
class Inj(_Node):
    """k-th introduction; ``type_args`` are the connective's arguments A_1..A_I."""

    sig: ConnSignature
    k: int
    args: tuple["Term", ...]
    type_args: tuple[Formula, ...]

    def __post_init__(self) -> None:
        if len(self.args) != self.sig.arity(self.k):
            raise ValueError(f"inj#{self.sig.name}.{self.k} takes {self.sig.arity(self.k)} arguments")
        if len(self.type_args) != self.sig.size_i:
            raise ValueError(f"inj#{self.sig.name} needs {self.sig.size_i} type arguments")

    @property
    def formula(self) -> Formula:
        return Conn(self.sig, self.type_args)

    @cached_property
    def fv(self) -> frozenset[str]:
        return _union(a.fv for a in self.args)

    @cached_property
    def ftv(self) -> frozenset[str]:
        return _union(a.ftv for a in self.args) | _union(a.ftv for a in self.type_args)

    @cached_property
    def holes(self) -> frozenset[str]:
        return _union(a.holes for a in self.args)

    @cached_property
    def names(self) -> frozenset[str]:
        return _union(a.names for a in self.args) | _union(a.names for a in self.type_args)


@dataclass(frozen=True, repr=False)
class Branch:
    binders: tuple[str, ...]
    body: "Term"

    @cached_property
    def fv(self) -> frozenset[str]:
        return self.body.fv - set(self.binders)


@dataclass(frozen=True, repr=False)
class Case(_Node):
    sig: ConnSignature
    scrutinee: "Term"
    motive: Formula
    branches: tuple[Branch, ...]

    def __post_init__(self) -> None:
        if len(self.branches) != self.sig.size_k:
            raise ValueError(f"case#{self.sig.name} needs {self.sig.size_k} branches")
        for k, br in enumerate(self.branches, 1):
            if len(br.binders) != self.sig.arity(k):
                raise ValueError(f"case#{self.sig.name} branch {k} binds {self.sig.arity(k)} variables")

    @cached_property
    def fv(self) -> frozenset[str]:
        return self.scrutinee.fv | _union(b.fv for b in self.branches)

    @cached_property
    def ftv(self) -> frozenset[str]:
        return self.scrutinee.ftv | self.motive.ftv | _union(b.body.ftv for b in self.branches)

    @cached_property
    def holes(self) -> frozenset[str]:
        return self.scrutinee.holes | _union(b.body.holes for b in self.branches)

    @cached_property
    def names(self) -> frozenset[str]:
        return (self.scrutinee.names | self.motive.names
                | _union(b.body.names | set(b.binders) for b in self.branches))


Term = Union[Var, Hole, Lam, App, TLam, TApp, Inj, Case]


def lams(binders: Iterable[tuple[str, Formula]], body: Term) -> Term:
    for x, a in reversed(tuple(binders)):
        body = Lam(x, a, body)
    return body


def apps(fun: Term, args: Iterable[Term]) -> Term:
    for a in args:
        fun = App(fun, a)
    return fun


def term_size(t: Term) -> int:
    """Number of nodes (variables and holes count 1)."""
    return 1 + sum(term_size(c) for c in children(t))


# --------------------------------------------------------------------------
# addressing

def ast_size(t: Term) -> int:
    """Number of non-variable nodes; the measure used to bound enumerations."""
    own = 0 if isinstance(t, Var) else 1
    return own + sum(ast_size(c) for c in children(t))


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, (Lam, TLam)):
        return (t.body,)
    if isinstance(t, App):
        return (t.fun, t.arg)
    if isinstance(t, TApp):
        return (t.fun,)
    if isinstance(t, Inj):
        return t.args
    if isinstance(t, Case):
        return (t.scrutinee,) + tuple(b.body for b in t.branches)
    return ()


def _with_child(t: Term, i: int, c: Term) -> Term:
    if isinstance(t, Lam) and i == 0:
        return Lam(t.var, t.annot, c)
    if isinstance(t, TLam) and i == 0:
        return TLam(t.var, c)
    if isinstance(t, App) and i in (0, 1):
        return App(c, t.arg) if i == 0 else App(t.fun, c)
    if isinstance(t, TApp) and i == 0:
        return TApp(c, t.witness)
    if isinstance(t, Inj) and 0 <= i < len(t.args):
        return Inj(t.sig, t.k, t.args[:i] + (c,) + t.args[i + 1:], t.type_args)
    if isinstance(t, Case):
        if i == 0:
            return Case(t.sig, c, t.motive, t.branches)
        if 1 <= i <= len(t.branches):
            brs = list(t.branches)
            brs[i - 1] = Branch(brs[i - 1].binders, c)
            return Case(t.sig, t.scrutinee, t.motive, tuple(brs))
    raise IndexError(f"no child {i} in {type(t).__name__}")


def subterm(t: Term, path: Iterable[int]) -> Term:
    for i in path:
        cs = children(t)
        if not 0 <= i < len(cs):
            raise IndexError(f"bad address component {i}")
        t = cs[i]
    return t


def replace_at(t: Term, path: tuple[int, ...] | list[int], new: Term) -> Term:
    """Plug ``new`` verbatim at ``path`` (binders above it may capture)."""
    path = tuple(path)
    if not path:
        return new
    return _with_child(t, path[0], replace_at(subterm(t, path[:1]), path[1:], new))


def subterm_paths(t: Term, prefix: tuple[int, ...] = ()) -> Iterable[tuple[tuple[int, ...], Term]]:
    """Pre-order (outermost, leftmost first) walk of all subterms with addresses."""
    yield prefix, t
    for i, c in enumerate(children(t)):
        yield from subterm_paths(c, prefix + (i,))


# --------------------------------------------------------------------------
# substitution

def substitute(t: Term, terms: Mapping[str, Term] | None = None,
               types: Mapping[str, Formula] | None = None,
               holes: Mapping[str, Term] | None = None) -> Term:
    """Simultaneous capture-avoiding substitution.

    ``terms`` replaces free term variables, ``types`` free type variables, and
    ``holes`` hole leaves.  Binders of ``t`` are renamed whenever they would
    capture a free name of a replacement, so hole filling through this
    function is the non-capturing fill.
    """
    terms = {k: v for k, v in (terms or {}).items() if k in t.fv}
    types = {k: v for k, v in (types or {}).items() if k in t.ftv}
    holes = {k: v for k, v in (holes or {}).items() if k in t.holes}
    if not (terms or types or holes):
        return t
    return _subst(t, terms, types, holes)


def _danger(terms, types, holes):
    tv = set()
    ty = set()
    for v in terms.values():
        tv |= v.fv
        ty |= v.ftv
    for v in holes.values():
        tv |= v.fv
        ty |= v.ftv
    for v in types.values():
        ty |= v.ftv
    return tv, ty


def _subst(t: Term, terms, types, holes) -> Term:
    if isinstance(t, Var):
        return terms.get(t.name, t)
    if isinstance(t, Hole):
        return holes.get(t.label, t)
    if isinstance(t, App):
        return App(substitute(t.fun, terms, types, holes), substitute(t.arg, terms, types, holes))
    if isinstance(t, TApp):
        return TApp(substitute(t.fun, terms, types, holes), subst_formulas(t.witness, types))
    if isinstance(t, Inj):
        return Inj(t.sig, t.k, tuple(substitute(a, terms, types, holes) for a in t.args),
                   tuple(subst_formulas(a, types) for a in t.type_args))
    if isinstance(t, Lam):
        annot = subst_formulas(t.annot, types)
        var, body = _bind_term([t.var], t.body, terms, types, holes)
        return Lam(var[0], annot, body)
    if isinstance(t, TLam):
        inner_types = {k: v for k, v in types.items() if k != t.var}
        _, ty_danger = _danger(terms, inner_types, holes)
        var, body = t.var, t.body
        if var in ty_danger and (terms or inner_types or holes):
            new = fresh(var, ty_danger | body.names | set(inner_types))
            body = substitute(body, types={var: TVar(new)})
            var = new
        return TLam(var, substitute(body, terms, inner_types, holes))
    if isinstance(t, Case):
        scrut = substitute(t.scrutinee, terms, types, holes)
        brs = []
        for b in t.branches:
            bs, body = _bind_term(list(b.binders), b.body, terms, types, holes)
            brs.append(Branch(tuple(bs), body))
        return Case(t.sig, scrut, subst_formulas(t.motive, types), tuple(brs))
    raise TypeError(f"not a term: {t!r}")


def _bind_term(binders: list[str], body: Term, terms, types, holes):
    inner = {k: v for k, v in terms.items() if k not in binders and k in body.fv}
    live_holes = {k: v for k, v in holes.items() if k in body.holes}
    tv_danger, _ = _danger(inner, {}, live_holes)
    renames: dict[str, Term] = {}
    out = []
    taken = set(tv_danger) | body.names | set(inner) | set(binders)
    for x in binders:
        if x in tv_danger:
            new = fresh(x, taken)
            taken.add(new)
            renames[x] = Var(new)
            out.append(new)
        else:
            out.append(x)
    if renames:
        body = substitute(body, terms=renames)
    return out, substitute(body, inner, types, live_holes)


def rescope(t: Term, scope: Iterable[str] = ()) -> Term:
    """An alpha-variant of ``t`` whose type abstractions respect the forall-I proviso.

    Substitution can move a ``/\\X`` underneath a term binder whose type
    mentions a different free ``X``; such abstractions are renamed.  ``scope``
    holds the type variables free in the surrounding context.
    """
    return _rescope(t, frozenset(scope))


def _rescope(t: Term, scope: frozenset[str]) -> Term:
    if isinstance(t, (Var, Hole)):
        return t
    if isinstance(t, Lam):
        return Lam(t.var, t.annot, _rescope(t.body, scope | t.annot.ftv))
    if isinstance(t, TLam):
        var, body = t.var, t.body
        if var in scope:
            var = fresh(var, scope | body.names)
            body = substitute(body, types={t.var: TVar(var)})
        return TLam(var, _rescope(body, scope))
    if isinstance(t, App):
        return App(_rescope(t.fun, scope), _rescope(t.arg, scope))
    if isinstance(t, TApp):
        return TApp(_rescope(t.fun, scope), t.witness)
    if isinstance(t, Inj):
        return Inj(t.sig, t.k, tuple(_rescope(a, scope) for a in t.args), t.type_args)
    if isinstance(t, Case):
        # branch binders get premises of the scrutinee's type; over-approximate their variables
        inner = scope | t.motive.ftv | t.scrutinee.ftv
        return Case(t.sig, _rescope(t.scrutinee, scope), t.motive,
                    tuple(Branch(b.binders, _rescope(b.body, inner)) for b in t.branches))
    raise TypeError(f"not a term: {t!r}")


def subst_term(body: Term, var: str, replacement: Term) -> Term:
    return substitute(body, terms={var: replacement})


def subst_type_in_term(body: Term, var: str, replacement: Formula) -> Term:
    return substitute(body, types={var: replacement})


def _as_holes(args) -> dict[str, Term]:
    if isinstance(args, Mapping):
        return dict(args)
    return {"": args}


def fill_avoiding(ctx: Term, args: Mapping[str, Term] | Term) -> Term:
    """T[t]: plug holes renaming binders of ``ctx`` that would capture."""
    args = _as_holes(args)
    missing = ctx.holes - set(args)
    if missing:
        raise KeyError(f"no argument for holes {sorted(missing)}")
    return substitute(ctx, holes=args)


def fill_capturing(ctx: Term, args: Mapping[str, Term] | Term) -> Term:
    """T{t}: plug holes verbatim, letting binders of ``ctx`` capture."""
    args = _as_holes(args)
    missing = ctx.holes - set(args)
    if missing:
        raise KeyError(f"no argument for holes {sorted(missing)}")
    return _plug(ctx, args)


def _plug(t: Term, args: Mapping[str, Term]) -> Term:
    if not t.holes:
        return t
    if isinstance(t, Hole):
        return args[t.label]
    out = t
    for i, c in enumerate(children(t)):
        if c.holes:
            out = _with_child(out, i, _plug(c, args))
    return out


# --------------------------------------------------------------------------
# alpha equivalence

def _fkey(a: Formula, env: Mapping[str, int], depth: int):
    if isinstance(a, TVar):
        lvl = env.get(a.name)
        return ("v", a.name) if lvl is None else ("b", depth - lvl)
    if isinstance(a, Imp):
        return ("->", _fkey(a.ante, env, depth), _fkey(a.cons, env, depth))
    if isinstance(a, Forall):
        return ("A", _fkey(a.body, {**env, a.var: depth}, depth + 1))
    return ("#", a.sig, tuple(_fkey(x, env, depth) for x in a.args))


def _tkey(t: Term, tenv: Mapping[str, int], td: int, yenv: Mapping[str, int], yd: int):
    if isinstance(t, Var):
        lvl = tenv.get(t.name)
        return ("v", t.name) if lvl is None else ("b", td - lvl)
    if isinstance(t, Hole):
        return ("hole", t.label)
    if isinstance(t, Lam):
        return ("lam", _fkey(t.annot, yenv, yd), _tkey(t.body, {**tenv, t.var: td}, td + 1, yenv, yd))
    if isinstance(t, App):
        return ("app", _tkey(t.fun, tenv, td, yenv, yd), _tkey(t.arg, tenv, td, yenv, yd))
    if isinstance(t, TLam):
        return ("tlam", _tkey(t.body, tenv, td, {**yenv, t.var: yd}, yd + 1))
    if isinstance(t, TApp):
        return ("tapp", _tkey(t.fun, tenv, td, yenv, yd), _fkey(t.witness, yenv, yd))
    if isinstance(t, Inj):
        return ("inj", t.sig, t.k, tuple(_tkey(a, tenv, td, yenv, yd) for a in t.args),
                tuple(_fkey(a, yenv, yd) for a in t.type_args))
    if isinstance(t, Case):
        brs = []
        for b in t.branches:
            env = dict(tenv)
            for i, y in enumerate(b.binders):
                env[y] = td + i
            brs.append(_tkey(b.body, env, td + len(b.binders), yenv, yd))
        return ("case", t.sig, _tkey(t.scrutinee, tenv, td, yenv, yd), _fkey(t.motive, yenv, yd), tuple(brs))
    raise TypeError(f"not a term or formula: {t!r}")


def alpha_key(x: Term | Formula):
    """A hashable key equal for exactly the α-equivalent values."""
    if isinstance(x, (TVar, Imp, Forall, Conn)):
        return ("F", _fkey(x, {}, 0))
    return ("T", _tkey(x, {}, 0, {}, 0))


def alpha_eq(a: Term | Formula, b: Term | Formula) -> bool:
    return a is b or alpha_key(a) == alpha_key(b)
