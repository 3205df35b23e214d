"""Syntax-directed typechecking for the full calculus and its subsystems."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .fragments import in_fragment
from .syntax import (
    App, Case, Conn, Forall, Formula, Hole, Imp, Inj, Lam, TApp, Term, TLam, TVar, Var,
    alpha_eq, fresh, subst_formula,
)


class TypingError(Exception):
    pass


class UnboundVariable(TypingError):
    pass


class RuleMismatch(TypingError):
    pass


class FragmentViolation(TypingError):
    pass


class FreshnessViolation(TypingError):
    pass


class NonAtomicWitness(TypingError):
    pass


@dataclass(frozen=True)
class System:
    tag: str
    fragment: str
    atomic: bool = False


SYSTEMS: dict[str, System] = {s.tag: s for s in (
    System("NI2P", "L2P"),
    System("NIP", "LP"),
    System("NI2", "L2"),
    System("NI2AT", "L2", atomic=True),
    System("NI2RP", "L2RP"),
    System("NI2CIRC", "L2CIRC"),
    System("NIBULLET", "LBULLET"),
    System("NIVEE", "LVEE"),
    System("NI2VEE", "L2VEE"),
    System("NI2VEEAT", "L2VEE", atomic=True),
)}


def get_system(tag: str | System) -> System:
    if isinstance(tag, System):
        return tag
    try:
        return SYSTEMS[tag]
    except KeyError:
        raise ValueError(f"unknown system {tag!r}") from None


@dataclass(frozen=True)
class Judgment:
    ctx: tuple[tuple[str, Formula], ...]
    term: Term
    type: Formula
    system: str

    @property
    def context(self) -> dict[str, Formula]:
        return dict(self.ctx)


class _Checker:
    def __init__(self, system: System):
        self.system = system

    def allow(self, a: Formula, where: str) -> None:
        if not in_fragment(a, self.system.fragment):
            raise FragmentViolation(f"{where} {a} is outside {self.system.fragment}")

    def check(self, ctx: Mapping[str, Formula], t: Term) -> Formula:
        a = self._check(ctx, t)
        self.allow(a, "type")
        return a

    def _check(self, ctx: Mapping[str, Formula], t: Term) -> Formula:
        if isinstance(t, Var):
            try:
                return ctx[t.name]
            except KeyError:
                raise UnboundVariable(f"unbound variable {t.name}") from None
        if isinstance(t, Lam):
            self.allow(t.annot, "annotation")
            body = self.check({**ctx, t.var: t.annot}, t.body)
            return Imp(t.annot, body)
        if isinstance(t, App):
            f = self.check(ctx, t.fun)
            if not isinstance(f, Imp):
                raise RuleMismatch(f"applying a term of type {f}")
            a = self.check(ctx, t.arg)
            if not alpha_eq(a, f.ante):
                raise RuleMismatch(f"argument has type {a}, expected {f.ante}")
            return f.cons
        if isinstance(t, TLam):
            for x, b in ctx.items():
                if t.var in b.ftv:
                    raise FreshnessViolation(f"{t.var} is free in the type of {x}")
            return Forall(t.var, self.check(ctx, t.body))
        if isinstance(t, TApp):
            f = self.check(ctx, t.fun)
            if not isinstance(f, Forall):
                raise RuleMismatch(f"instantiating a term of type {f}")
            if self.system.atomic and not isinstance(t.witness, TVar):
                raise NonAtomicWitness(f"witness {t.witness} is not atomic")
            self.allow(t.witness, "witness")
            return subst_formula(f.body, f.var, t.witness)
        if isinstance(t, Inj):
            a = Conn(t.sig, t.type_args)
            self.allow(a, "connective")
            for arg, want in zip(t.args, t.sig.premise_formulas(t.k, t.type_args)):
                got = self.check(ctx, arg)
                if not alpha_eq(got, want):
                    raise RuleMismatch(f"inj#{t.sig.name}.{t.k}: argument has type {got}, expected {want}")
            return a
        if isinstance(t, Case):
            s = self.check(ctx, t.scrutinee)
            if not isinstance(s, Conn) or s.sig != t.sig:
                raise RuleMismatch(f"case#{t.sig.name} on a term of type {s}")
            self.allow(t.motive, "motive")
            for k, br in enumerate(t.branches, 1):
                inner = dict(ctx)
                inner.update(zip(br.binders, t.sig.premise_formulas(k, s.args)))
                got = self.check(inner, br.body)
                if not alpha_eq(got, t.motive):
                    raise RuleMismatch(f"branch {k} has type {got}, expected motive {t.motive}")
            return t.motive
        if isinstance(t, Hole):
            raise RuleMismatch("cannot typecheck a hole; use typecheck_context")
        raise RuleMismatch(f"not a term: {t!r}")


def typecheck(ctx: Mapping[str, Formula], t: Term, system: str | System = "NI2P") -> Formula:
    """The unique type of ``t`` under ``ctx``, or a :class:`TypingError`."""
    chk = _Checker(get_system(system))
    for x, a in ctx.items():
        chk.allow(a, f"declaration of {x}:")
    return chk.check(ctx, t)


def well_typed(ctx: Mapping[str, Formula], t: Term, system: str | System = "NI2P") -> bool:
    try:
        typecheck(ctx, t, system)
        return True
    except TypingError:
        return False


def hole_variable(c: Term, ctx: Mapping[str, Formula], hole_type: Formula) -> str:
    return fresh("h", c.names | set(ctx) | hole_type.names)


def typecheck_context(ctx: Mapping[str, Formula], hole_type: Formula, c: Term,
                      system: str | System = "NI2P") -> Formula:
    """B such that ``ctx, x:hole_type |- c[x] : B``."""
    from .syntax import fill_capturing
    if len(c.holes) != 1:
        raise RuleMismatch("typecheck_context expects a single-hole context")
    x = hole_variable(c, ctx, hole_type)
    body = fill_capturing(c, {next(iter(c.holes)): Var(x)})
    return typecheck({**ctx, x: hole_type}, body, system)


def judgment(ctx: Mapping[str, Formula], t: Term, system: str = "NI2P") -> Judgment:
    return Judgment(tuple(ctx.items()), t, typecheck(ctx, t, system), system)
