"""Text syntax for formulas, terms, contexts and signature declarations.

Formulas::

    X   A -> B   forall X Y. A   A \\/ B   A /\\ B   bot   top   bullet(A,B,C)   #name(A1,...)

Terms::

    x   \\x:A. t   t u   /\\X. t   t [A]   inj#name.k[A1,...](t1,...)
    case#name[C](t; y1 y2 => s1 | z => s2)   []   []@label

Signatures::

    conn name { I=n; J=m; K=p; f=[...]; g=[...] }
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    AND, BOT, BULLET, OR, TOP, App, Branch, Case, Conn, ConnSignature, Forall, Formula,
    Hole, Imp, Inj, Lam, TApp, Term, TLam, TVar, Var, lookup_signature, register_signature,
)

__all__ = ["ParseError", "parse_formula", "parse_term", "parse_signature", "show", "show_formula",
           "show_term", "parse_context_decls"]


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op>->|\\/|/\\|=>|[\\()\[\],;|.:\#@{}=])
  | (?P<uni>[⊃∀λΛ∨∧⊥⊤])
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)

_UNICODE = {"⊃": "->", "∀": "forall", "λ": "\\", "Λ": "/\\", "∨": "\\/", "∧": "/\\", "⊥": "bot", "⊤": "top"}
_KEYWORDS = {"forall", "bot", "top", "bullet", "inj", "case", "conn"}


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> list[_Tok]:
    out, pos = [], 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r} at {pos}")
        kind = m.lastgroup
        text = m.group()
        if kind == "uni":
            text = _UNICODE[text]
            kind = "ident" if text.isalpha() else "op"
        if kind != "ws":
            out.append(_Tok(kind, text, pos))
        pos = m.end()
    out.append(_Tok("eof", "", pos))
    return out


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    # helpers
    def peek(self, off: int = 0) -> _Tok:
        return self.toks[min(self.i + off, len(self.toks) - 1)]

    def at(self, text: str, off: int = 0) -> bool:
        t = self.peek(off)
        return t.kind in ("op", "ident") and t.text == text

    def eat(self, text: str) -> _Tok:
        t = self.peek()
        if not self.at(text):
            raise ParseError(f"expected {text!r} at {t.pos}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def ident(self) -> str:
        t = self.peek()
        if t.kind != "ident" or t.text in _KEYWORDS:
            raise ParseError(f"expected a name at {t.pos}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t.text

    def number(self) -> int:
        t = self.peek()
        if t.kind != "num":
            raise ParseError(f"expected a number at {t.pos}")
        self.i += 1
        return int(t.text)

    def done(self) -> None:
        if self.peek().kind != "eof":
            t = self.peek()
            raise ParseError(f"trailing input at {t.pos}: {t.text!r}")

    # formulas
    def formula(self) -> Formula:
        if self.at("forall"):
            self.eat("forall")
            names = [self.ident()]
            while not self.at("."):
                names.append(self.ident())
            self.eat(".")
            body = self.formula()
            for n in reversed(names):
                body = Forall(n, body)
            return body
        left = self.disj()
        if self.at("->"):
            self.eat("->")
            return Imp(left, self.formula())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.at("\\/"):
            self.eat("\\/")
            left = Conn(OR, (left, self.conj()))
        return left

    def conj(self) -> Formula:
        left = self.fatom()
        while self.at("/\\"):
            self.eat("/\\")
            left = Conn(AND, (left, self.fatom()))
        return left

    def fargs(self) -> tuple[Formula, ...]:
        self.eat("(")
        args = []
        if not self.at(")"):
            args.append(self.formula())
            while self.at(","):
                self.eat(",")
                args.append(self.formula())
        self.eat(")")
        return tuple(args)

    def fatom(self) -> Formula:
        if self.at("("):
            self.eat("(")
            a = self.formula()
            self.eat(")")
            return a
        if self.at("bot"):
            self.eat("bot")
            return Conn(BOT, ())
        if self.at("top"):
            self.eat("top")
            return Conn(TOP, ())
        if self.at("bullet"):
            self.eat("bullet")
            return Conn(BULLET, self.fargs())
        if self.at("#"):
            self.eat("#")
            sig = self.signame()
            return Conn(sig, self.fargs())
        return TVar(self.ident())

    def signame(self) -> ConnSignature:
        t = self.peek()
        if t.kind != "ident":
            raise ParseError(f"expected a connective name at {t.pos}")
        self.i += 1
        try:
            return lookup_signature(t.text)
        except KeyError as e:
            raise ParseError(str(e)) from None

    # terms
    def term(self) -> Term:
        if self.at("\\"):
            self.eat("\\")
            binders = [self.binder()]
            while not self.at("."):
                binders.append(self.binder())
            self.eat(".")
            body = self.term()
            for x, a in reversed(binders):
                body = Lam(x, a, body)
            return body
        if self.at("/\\"):
            self.eat("/\\")
            names = [self.ident()]
            while not self.at("."):
                names.append(self.ident())
            self.eat(".")
            body = self.term()
            for n in reversed(names):
                body = TLam(n, body)
            return body
        return self.application()

    def binder(self) -> tuple[str, Formula]:
        if self.at("("):
            self.eat("(")
            x = self.ident()
            self.eat(":")
            a = self.formula()
            self.eat(")")
            return x, a
        x = self.ident()
        if not self.at(":"):
            raise ParseError(f"binder {x!r} needs a type annotation")
        self.eat(":")
        return x, self.formula()

    def starts_atom(self) -> bool:
        t = self.peek()
        if t.kind == "ident":
            return t.text not in _KEYWORDS or t.text in ("inj", "case")
        return t.kind == "op" and t.text in ("(", "\\", "/\\")

    def application(self) -> Term:
        t = self.tatom()
        while True:
            if self.at("["):
                if self.at("]", 1):
                    t = App(t, self.hole())
                else:
                    self.eat("[")
                    a = self.formula()
                    self.eat("]")
                    t = TApp(t, a)
            elif self.starts_atom():
                if self.at("\\") or self.at("/\\"):
                    t = App(t, self.term())
                    return t
                t = App(t, self.tatom())
            else:
                return t

    def hole(self) -> Hole:
        self.eat("[")
        self.eat("]")
        if self.at("@"):
            self.eat("@")
            t = self.peek()
            if t.kind not in ("ident", "num"):
                raise ParseError(f"expected a hole label at {t.pos}")
            self.i += 1
            return Hole(t.text)
        return Hole()

    def tatom(self) -> Term:
        if self.at("("):
            self.eat("(")
            t = self.term()
            self.eat(")")
            return t
        if self.at("[") and self.at("]", 1):
            return self.hole()
        if self.at("inj") and self.at("#", 1):
            return self.inj()
        if self.at("case") and self.at("#", 1):
            return self.case()
        return Var(self.ident())

    def inj(self) -> Term:
        self.eat("inj")
        self.eat("#")
        sig = self.signame()
        self.eat(".")
        k = self.number()
        if not self.at("["):
            raise ParseError(f"inj#{sig.name}.{k} needs its connective arguments in [...]")
        self.eat("[")
        targs = []
        if not self.at("]"):
            targs.append(self.formula())
            while self.at(","):
                self.eat(",")
                targs.append(self.formula())
        self.eat("]")
        self.eat("(")
        args = []
        if not self.at(")"):
            args.append(self.term())
            while self.at(","):
                self.eat(",")
                args.append(self.term())
        self.eat(")")
        try:
            return Inj(sig, k, tuple(args), tuple(targs))
        except ValueError as e:
            raise ParseError(str(e)) from None

    def case(self) -> Term:
        self.eat("case")
        self.eat("#")
        sig = self.signame()
        self.eat("[")
        motive = self.formula()
        self.eat("]")
        self.eat("(")
        scrut = self.term()
        branches = []
        if self.at(";"):
            self.eat(";")
            branches.append(self.branch())
            while self.at("|"):
                self.eat("|")
                branches.append(self.branch())
        self.eat(")")
        try:
            return Case(sig, scrut, motive, tuple(branches))
        except ValueError as e:
            raise ParseError(str(e)) from None

    def branch(self) -> Branch:
        names = []
        while not self.at("=>"):
            names.append(self.ident())
        self.eat("=>")
        return Branch(tuple(names), self.term())

    # signatures
    def signature(self) -> ConnSignature:
        self.eat("conn")
        t = self.peek()
        if t.kind != "ident":
            raise ParseError(f"expected a connective name at {t.pos}")
        self.i += 1
        name = t.text
        self.eat("{")
        fields: dict[str, object] = {}
        while not self.at("}"):
            key = self.peek().text
            self.i += 1
            self.eat("=")
            if key in ("I", "J", "K"):
                fields[key] = self.number()
            elif key in ("f", "g"):
                self.eat("[")
                vals = []
                if not self.at("]"):
                    vals.append(self.number())
                    while self.at(","):
                        self.eat(",")
                        vals.append(self.number())
                self.eat("]")
                fields[key] = tuple(vals)
            else:
                raise ParseError(f"unknown signature field {key!r}")
            if self.at(";"):
                self.eat(";")
        self.eat("}")
        try:
            return ConnSignature(name, fields["I"], fields["J"], fields["K"],
                                 fields.get("f", ()), fields.get("g", ()))
        except (KeyError, ValueError) as e:
            raise ParseError(f"bad signature {name}: {e}") from None


def parse_formula(src: str) -> Formula:
    p = _Parser(src)
    a = p.formula()
    p.done()
    return a


def parse_term(src: str) -> Term:
    p = _Parser(src)
    t = p.term()
    p.done()
    return t


def parse_signature(src: str, register: bool = True) -> ConnSignature:
    p = _Parser(src)
    sig = p.signature()
    p.done()
    return register_signature(sig) if register else sig


def parse_context_decls(src: str) -> dict[str, Formula]:
    """Lines (or ``;``-separated items) of ``x : A``; blank lines and lines starting ``#`` or ``--`` are skipped."""
    ctx: dict[str, Formula] = {}
    for line in src.replace(";", "\n").splitlines():
        line = line.strip()
        if not line or line.startswith(("#", "--")):
            continue
        name, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'x : A', got {line!r}")
        name = name.strip()
        if name in ctx:
            raise ParseError(f"variable {name} declared twice")
        ctx[name] = parse_formula(rest)
    return ctx


# --------------------------------------------------------------------------
# printing

# formula precedence: 0 forall, 1 ->, 2 \/, 3 /\, 4 atomic
def show_formula(a: Formula, prec: int = 0) -> str:
    if isinstance(a, TVar):
        return a.name
    if isinstance(a, Forall):
        names = [a.var]
        body = a.body
        while isinstance(body, Forall):
            names.append(body.var)
            body = body.body
        s = f"forall {' '.join(names)}. {show_formula(body, 0)}"
        return s if prec == 0 else f"({s})"
    if isinstance(a, Imp):
        s = f"{show_formula(a.ante, 2)} -> {show_formula(a.cons, 0)}"
        return s if prec <= 1 else f"({s})"
    sig = a.sig
    if sig == OR:
        s = f"{show_formula(a.args[0], 2)} \\/ {show_formula(a.args[1], 3)}"
        return s if prec <= 2 else f"({s})"
    if sig == AND:
        s = f"{show_formula(a.args[0], 3)} /\\ {show_formula(a.args[1], 4)}"
        return s if prec <= 3 else f"({s})"
    if sig == BOT:
        return "bot"
    if sig == TOP:
        return "top"
    args = ", ".join(show_formula(x, 0) for x in a.args)
    head = "bullet" if sig == BULLET else f"#{sig.name}"
    return f"{head}({args})"


def _annot(a: Formula) -> str:
    s = show_formula(a, 0)
    return f"({s})" if "forall" in s else s


# term precedence: 0 binder, 1 application, 2 atomic
def show_term(t: Term, prec: int = 0) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Hole):
        return "[]" if not t.label else f"[]@{t.label}"
    if isinstance(t, Lam):
        s = f"\\{t.var}:{_annot(t.annot)}. {show_term(t.body, 0)}"
        return s if prec == 0 else f"({s})"
    if isinstance(t, TLam):
        s = f"/\\{t.var}. {show_term(t.body, 0)}"
        return s if prec == 0 else f"({s})"
    if isinstance(t, App):
        s = f"{show_term(t.fun, 1)} {show_term(t.arg, 2)}"
        return s if prec <= 1 else f"({s})"
    if isinstance(t, TApp):
        s = f"{show_term(t.fun, 1)} [{show_formula(t.witness, 0)}]"
        return s if prec <= 1 else f"({s})"
    if isinstance(t, Inj):
        targs = ", ".join(show_formula(a, 0) for a in t.type_args)
        args = ", ".join(show_term(a, 0) for a in t.args)
        return f"inj#{t.sig.name}.{t.k}[{targs}]({args})"
    if isinstance(t, Case):
        brs = " | ".join(
            (" ".join(b.binders) + " => " if b.binders else "=> ") + show_term(b.body, 0)
            for b in t.branches)
        tail = f"; {brs}" if t.branches else ""
        return f"case#{t.sig.name}[{show_formula(t.motive, 0)}]({show_term(t.scrutinee, 0)}{tail})"
    raise TypeError(f"cannot print {t!r}")


def show(x) -> str:
    if isinstance(x, (TVar, Imp, Forall, Conn)):
        return show_formula(x)
    if isinstance(x, ConnSignature):
        return (f"conn {x.name} {{ I={x.size_i}; J={x.size_j}; K={x.size_k}; "
                f"f=[{', '.join(map(str, x.f))}]; g=[{', '.join(map(str, x.g))}] }}")
    return show_term(x)
