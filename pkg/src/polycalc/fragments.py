"""Language fragments and recovery of connective signatures from their encodings."""
from __future__ import annotations

from .syntax import (
    BULLET, OR, Conn, ConnSignature, Forall, Formula, Imp, TApp, Term, TVar,
    register_signature, subterm_paths,
)

FRAGMENTS = ("L2P", "LP", "L2", "L2RP", "L2CIRC", "LVEE", "LBULLET", "L2VEE")


def spine(a: Formula) -> tuple[list[Formula], Formula]:
    """Split A1 -> ... -> An -> B into ([A1..An], B) with B not an implication."""
    antes = []
    while isinstance(a, Imp):
        antes.append(a.ante)
        a = a.cons
    return antes, a


def is_sp(a: Formula, x: str) -> bool:
    """Strongly positive in x: A1 -> ... -> An -> x with x absent from every Ai."""
    antes, head = spine(a)
    return head == TVar(x) and all(x not in b.ftv for b in antes)


def is_polynomial_in(a: Formula, x: str) -> bool:
    antes, head = spine(a)
    return head == TVar(x) and all(is_sp(b, x) for b in antes)


def is_universal_polynomial(a: Formula) -> bool:
    return isinstance(a, Forall) and is_polynomial_in(a.body, a.var)


def is_circ(a: Formula) -> bool:
    """forall X. (A -> B -> X) -> (C -> X) -> X with X absent from A, B, C."""
    if not isinstance(a, Forall):
        return False
    x = a.var
    antes, head = spine(a.body)
    if head != TVar(x) or len(antes) != 2:
        return False
    p, q = (spine(b) for b in antes)
    return (len(p[0]) == 2 and len(q[0]) == 1 and p[1] == TVar(x) and q[1] == TVar(x)
            and all(x not in c.ftv for c in p[0] + q[0]))


def _subformulas(a: Formula):
    yield a
    if isinstance(a, Imp):
        yield from _subformulas(a.ante)
        yield from _subformulas(a.cons)
    elif isinstance(a, Forall):
        yield from _subformulas(a.body)
    elif isinstance(a, Conn):
        for b in a.args:
            yield from _subformulas(b)


def in_fragment(a: Formula, tag: str) -> bool:
    subs = list(_subformulas(a))
    conns = {s.sig for s in subs if isinstance(s, Conn)}
    foralls = [s for s in subs if isinstance(s, Forall)]
    if tag == "L2P":
        return True
    if tag == "LP":
        return not foralls
    if tag == "L2":
        return not conns
    if tag == "L2RP":
        return not conns and all(is_universal_polynomial(s) for s in foralls)
    if tag == "L2CIRC":
        return not conns and all(is_circ(s) for s in foralls)
    if tag == "LVEE":
        return not foralls and conns <= {OR}
    if tag == "LBULLET":
        return not foralls and conns <= {BULLET}
    if tag == "L2VEE":
        return conns <= {OR}
    raise ValueError(f"unknown fragment {tag!r}")


def rightmost_atom(a: Formula) -> str:
    while True:
        if isinstance(a, TVar):
            return a.name
        if isinstance(a, Imp):
            a = a.cons
        elif isinstance(a, Forall):
            a = a.body
        else:
            raise ValueError("rightmost atom is defined on connective-free formulas only")


def polynomial_components(a: Formula) -> tuple[str, list[list[Formula]]]:
    """For forall X. <<A_kj>_j -> X>_k -> X return (X, [[A_kj]_j]_k)."""
    if not is_universal_polynomial(a):
        raise ValueError(f"not a universal polynomial formula: {a}")
    antes, _ = spine(a.body)
    return a.var, [spine(b)[0] for b in antes]


def signature_of(a: Formula, name: str | None = None) -> tuple[ConnSignature, tuple[Formula, ...]]:
    """The canonical connective whose encoding is ``a``.

    I = J = the (k, j) pairs in lexicographic order, K = 1..n, f = identity,
    g = first projection.
    """
    _, comps = polynomial_components(a)
    g = tuple(k for k, comp in enumerate(comps, 1) for _ in comp)
    args = tuple(b for comp in comps for b in comp)
    shape = "_".join(str(len(c)) for c in comps) or "empty"
    sig = ConnSignature(name or f"poly_{shape}", len(g), len(g), len(comps), tuple(range(1, len(g) + 1)), g)
    return sig, args


def register_signature_of(a: Formula) -> tuple[ConnSignature, tuple[Formula, ...]]:
    sig, args = signature_of(a)
    return register_signature(sig), args


def atomic_witnesses_only(t: Term) -> bool:
    return all(isinstance(s.witness, TVar) for _, s in subterm_paths(t) if isinstance(s, TApp))
