"""Expansion pairs, weak expansion and the functorial action of sp-X formulas on contexts."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .fragments import is_sp, spine
from .syntax import (
    App, Conn, Forall, Formula, Hole, Imp, Lam, TApp, Term, TLam, TVar, Var,
    fill_avoiding, fill_capturing, fresh, lams, subst_formula,
)


@dataclass(frozen=True)
class ExpansionPair:
    """Matching elimination/introduction contexts for ``formula``.

    ``elim`` is ``[] m1 ... mn`` (term and type arguments), ``intro`` the
    corresponding abstractions around a hole; ``atom`` is the type of
    ``elim[x]``.
    """

    formula: Formula
    elim: Term
    intro: Term
    atom: str
    binders: tuple[tuple[str, Formula | None], ...]

    @property
    def term_vars(self) -> tuple[str, ...]:
        return tuple(x for x, a in self.binders if a is not None)

    @property
    def type_vars(self) -> tuple[str, ...]:
        return tuple(x for x, a in self.binders if a is None)


def expansion_pair(a: Formula, avoid: Iterable[str] = ()) -> ExpansionPair:
    taken = set(avoid) | a.ftv
    binders: list[tuple[str, Formula | None]] = []
    cur = a
    while not isinstance(cur, TVar):
        if isinstance(cur, Imp):
            x = fresh("x", taken | cur.names)
            taken.add(x)
            binders.append((x, cur.ante))
            cur = cur.cons
        elif isinstance(cur, Forall):
            y = fresh(cur.var, taken)
            taken.add(y)
            binders.append((y, None))
            cur = subst_formula(cur.body, cur.var, TVar(y)) if y != cur.var else cur.body
        else:
            raise ValueError(f"expansion pairs are defined on connective-free formulas, got {a}")
    elim: Term = Hole()
    for x, ann in binders:
        elim = App(elim, Var(x)) if ann is not None else TApp(elim, TVar(x))
    intro: Term = Hole()
    for x, ann in reversed(binders):
        intro = Lam(x, ann, intro) if ann is not None else TLam(x, intro)
    return ExpansionPair(a, elim, intro, cur.name, tuple(binders))


def weak_expansion(a: Formula, avoid: Iterable[str] = ()) -> Term:
    p = expansion_pair(a, avoid)
    return fill_capturing(p.intro, p.elim)


def c_expansion(c: Formula, x: str, u: Term, avoid: Iterable[str] = ()) -> Term:
    """Phi_C(U) = In_C{U[El_C[]]} for C = C1 -> ... -> Cn -> x strongly positive in x."""
    if not is_sp(c, x):
        raise ValueError(f"{c} is not strongly positive in {x}")
    antes, _ = spine(c)
    if not antes:
        return u
    taken = set(avoid) | u.names | c.names
    ns = []
    for _ in antes:
        n = fresh("n", taken)
        taken.add(n)
        ns.append(n)
    el: Term = Hole()
    for n in ns:
        el = App(el, Var(n))
    inner = fill_avoiding(u, {lbl: el for lbl in u.holes})
    return lams(zip(ns, antes), inner)
