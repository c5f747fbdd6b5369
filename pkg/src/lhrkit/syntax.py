"""Concrete syntax for types, terms and skeletons.

    type ::= 'o' | type '->' type | '(' type ')'        (arrow is right-assoc)
    term ::= '\\' ident ':' type '.' term | app
    app  ::= atom atom*                                 (left-assoc)
    atom ::= ident | '*' ':' type | '(' term ')'
    skel ::= nat | nat '[' edge (',' edge)* ']'
    edge ::= '{' nat '}' skel
"""

from __future__ import annotations

import re

from .errors import LhrError
from .skeleton import Skeleton, show
from .lambda_core import Abs, App, Arrow, Base, Const, O, Var, free_vars, typecheck


class ParseError(LhrError):
    def __init__(self, msg, line, col):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<ident>[A-Za-z][A-Za-z0-9_']*)|(?P<nat>\d+)|(?P<sym>[\\.:*()\[\]{},]))"
)


def _tokenize(text):
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", *_linecol(text, pos))
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


def _linecol(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, *_linecol(self.text, tok[2]))

    def expect(self, value):
        tok = self.next()
        if tok[1] != value or tok[0] == "eof":
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def done(self):
        if self.peek()[0] != "eof":
            self.fail(f"unexpected {self.peek()[1]!r}")

    # types
    def type_(self):
        left = self.type_atom()
        if self.peek()[0] == "arrow":
            self.next()
            return Arrow(left, self.type_())
        return left

    def type_atom(self):
        tok = self.next()
        if tok[0] == "ident" and tok[1] == "o":
            return O
        if tok[1] == "(":
            ty = self.type_()
            self.expect(")")
            return ty
        self.fail(f"expected a type, found {tok[1] or 'end of input'!r}", tok)


class _TermParser(_Parser):
    def __init__(self, text, context):
        super().__init__(text)
        self.counter = 0
        self.free = {}
        for name, ty in (context or {}).items():
            self.free[name] = Var(self._fresh(), ty, name)

    def _fresh(self):
        self.counter += 1
        return self.counter - 1

    def term(self, scope):
        if self.peek()[1] == "\\":
            self.next()
            tok = self.next()
            if tok[0] != "ident":
                self.fail("expected a variable name", tok)
            self.expect(":")
            ty = self.type_()
            self.expect(".")
            v = Var(self._fresh(), ty, tok[1])
            body = self.term({**scope, tok[1]: v})
            return Abs(v.id, ty, body, v.name)
        head = self.atom(scope)
        while self.peek()[0] == "ident" or self.peek()[1] in ("*", "("):
            head = App(head, self.atom(scope))
        return head

    def atom(self, scope):
        tok = self.next()
        if tok[0] == "ident":
            v = scope.get(tok[1]) or self.free.get(tok[1])
            if v is None:
                self.fail(f"unbound variable {tok[1]!r}", tok)
            return v
        if tok[1] == "*":
            self.expect(":")
            return Const(self.type_())
        if tok[1] == "(":
            t = self.term(scope)
            self.expect(")")
            return t
        self.fail(f"expected a term, found {tok[1] or 'end of input'!r}", tok)


def parse_type(text):
    p = _Parser(text)
    ty = p.type_()
    p.done()
    return ty


def parse_term(text, context=None):
    """Parse a term; ``context`` maps names of free variables to their types."""
    p = _TermParser(text, context)
    t = p.term({})
    p.done()
    typecheck(t)
    return t


def parse_context(text):
    """Parse ``name:type, name:type`` declarations."""
    out = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        name, sep, ty = part.partition(":")
        if not sep or not re.fullmatch(r"[A-Za-z][A-Za-z0-9_']*", name.strip()):
            raise ParseError(f"bad declaration {part!r}", 1, 1)
        out[name.strip()] = parse_type(ty)
    return out


class _SkelParser(_Parser):
    def skel(self):
        tok = self.next()
        if tok[0] != "nat":
            self.fail("expected a natural number", tok)
        label = int(tok[1])
        kids = []
        if self.peek()[1] == "[":
            self.next()
            kids.append(self.edge())
            while self.peek()[1] == ",":
                self.next()
                kids.append(self.edge())
            self.expect("]")
        return Skeleton(label, kids)

    def edge(self):
        self.expect("{")
        tok = self.next()
        if tok[0] != "nat":
            self.fail("expected an edge label", tok)
        self.expect("}")
        return int(tok[1]), self.skel()


def parse_skeleton(text):
    p = _SkelParser(text)
    a = p.skel()
    p.done()
    return a


# -- printing ---------------------------------------------------------------


def show_type(ty):
    return str(ty)


def _show_const(ty):
    return f"*:{ty}" if isinstance(ty, Base) else f"*:({ty})"


def show_term(t):
    """Print ``t`` so that :func:`parse_term` gives back an alpha-equivalent term.

    Distinct variables sharing a display name get numeric suffixes.
    """
    names = {}
    used = set()

    def name_of(vid, hint):
        if vid not in names:
            cand, k = hint, 0
            while cand in used or cand == "o":
                k += 1
                cand = f"{hint}_{k}"
            used.add(cand)
            names[vid] = cand
        return names[vid]

    # free variables first so they keep their own names
    for v in sorted(free_vars(t).values(), key=lambda v: v.id):
        name_of(v.id, v.name)

    def go(t, ctx):
        # ctx: 0 top, 1 function position, 2 argument position
        if isinstance(t, Var):
            return name_of(t.id, t.name)
        if isinstance(t, Const):
            return _show_const(t.type)
        if isinstance(t, Abs):
            s = f"\\{name_of(t.var, t.name)}:{t.var_type}. {go(t.body, 0)}"
            return s if ctx == 0 else f"({s})"
        s = f"{go(t.fn, 1)} {go(t.arg, 2)}"
        return s if ctx < 2 else f"({s})"

    return go(t, 0)


def show_skeleton(a):
    return show(a)
