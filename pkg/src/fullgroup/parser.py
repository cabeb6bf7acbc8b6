"""Expression language for elements and generator words.

Grammar (juxtaposition composes right to left, so ``a b`` applies ``b`` first)::

    expr  := term+
    term  := atom ('^' '-'? INT)?
    atom  := 'g' | 'id' | 'g_' cyl | 'g_(' set ')' | '(' expr ')'
    set   := inter ('+' inter)*
    inter := unary ('&' unary)*
    unary := '~' unary | cyl | 'X' | '{}' | '(' set ')'
    cyl   := '[' digits ']'        -- '[011]' or '[0 11 3]'

Columns in errors are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

from .element import Element, induced_generator
from .errors import ParseError
from .odometer import ClopenSet
from .rewriting import GINV, G, GeneratorWord, Ind, normal_form, word_of_normal_form

# AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    span: tuple = (0, 0)


@dataclass(frozen=True)
class Id:
    span: tuple = (0, 0)


@dataclass(frozen=True)
class IndNode:
    set: object
    span: tuple = (0, 0)


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    span: tuple = (0, 0)


@dataclass(frozen=True)
class Compose:
    terms: tuple
    span: tuple = (0, 0)


@dataclass(frozen=True)
class Group:
    expr: object
    span: tuple = (0, 0)


@dataclass(frozen=True)
class Cyl:
    body: str  # digits as written; their reading depends on the system
    span: tuple = (0, 0)


@dataclass(frozen=True)
class EmptyLit:
    span: tuple = (0, 0)


@dataclass(frozen=True)
class Whole:
    span: tuple = (0, 0)


@dataclass(frozen=True)
class SetOp:
    op: str  # '+', '&'
    parts: tuple
    span: tuple = (0, 0)


@dataclass(frozen=True)
class Compl:
    inner: object
    span: tuple = (0, 0)


# parsing ---------------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        raise ParseError(msg, (self.pos if pos is None else pos) + 1)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s):
        self.ws()
        return self.text.startswith(s, self.pos)

    def eat(self, s):
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s, opened=None):
        if not self.eat(s):
            if opened is not None and self.pos >= len(self.text):
                self.error(f"unclosed {self.text[opened]!r}", opened)
            self.error(f"expected {s!r}")

    def at_end(self):
        self.ws()
        return self.pos >= len(self.text)

    # elements

    def expr(self):
        self.ws()
        start = self.pos
        terms = [self.term()]
        while not self.at_end() and not self.peek(")"):
            terms.append(self.term())
        if len(terms) == 1:
            return terms[0]
        return Compose(tuple(terms), (start, self.pos))

    def term(self):
        self.ws()
        start = self.pos
        base = self.atom()
        if self.eat("^"):
            self.ws()
            p = self.pos
            if self.text.startswith("-", p):
                p += 1
            q = p
            while q < len(self.text) and self.text[q].isdigit():
                q += 1
            if q == p:
                self.error("expected an integer exponent")
            exp = int(self.text[self.pos:q])
            self.pos = q
            return Pow(base, exp, (start, self.pos))
        return base

    def atom(self):
        self.ws()
        start = self.pos
        if self.pos >= len(self.text):
            self.error("unexpected end of input")
        if self.eat("("):
            inner = self.expr()
            self.expect(")", start)
            return Group(inner, (start, self.pos))
        if self.text.startswith("id", self.pos):
            self.pos += 2
            return Id((start, self.pos))
        if self.text.startswith("g_", self.pos):
            self.pos += 2
            if self.text.startswith("(", self.pos):
                open_at = self.pos
                self.pos += 1
                s = self.set()
                self.expect(")", open_at)
                return IndNode(s, (start, self.pos))
            if self.text.startswith("[", self.pos):
                return IndNode(self.cyl(), (start, self.pos))
            self.error("expected '[' or '(' after 'g_'")
        if self.text.startswith("g", self.pos):
            self.pos += 1
            return Gen((start, self.pos))
        self.error(f"unexpected {self.text[self.pos]!r}")

    # sets

    def cyl(self):
        start = self.pos
        end = self.text.find("]", start)
        if end < 0:
            self.error("unclosed '['", start)
        body = self.text[start + 1:end]
        if not all(ch.isdigit() or ch == " " for ch in body):
            self.error("cylinder digits expected", start + 1)
        self.pos = end + 1
        return Cyl(" ".join(body.split()), (start, self.pos))

    def set(self):
        self.ws()
        start = self.pos
        parts = [self.inter()]
        while self.eat("+"):
            parts.append(self.inter())
        return parts[0] if len(parts) == 1 else SetOp("+", tuple(parts), (start, self.pos))

    def inter(self):
        self.ws()
        start = self.pos
        parts = [self.unary()]
        while self.eat("&"):
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else SetOp("&", tuple(parts), (start, self.pos))

    def unary(self):
        self.ws()
        start = self.pos
        if self.eat("~"):
            return Compl(self.unary(), (start, self.pos))
        if self.eat("{}"):
            return EmptyLit((start, self.pos))
        if self.eat("X"):
            return Whole((start, self.pos))
        if self.eat("("):
            inner = self.set()
            self.expect(")", start)
            return inner
        if self.peek("["):
            return self.cyl()
        if self.pos >= len(self.text):
            self.error("unexpected end of input")
        self.error(f"unexpected {self.text[self.pos]!r} in set expression")


def parse(text):
    p = _Parser(text)
    if p.at_end():
        p.error("empty expression")
    ast = p.expr()
    if not p.at_end():
        p.error(f"unexpected {text[p.pos]!r}")
    return ast


def parse_set(text):
    p = _Parser(text)
    ast = p.set()
    if not p.at_end():
        p.error(f"unexpected {text[p.pos]!r}")
    return ast


# printing ----------------------------------------------------------------------


def to_text(node):
    if isinstance(node, Gen):
        return "g"
    if isinstance(node, Id):
        return "id"
    if isinstance(node, IndNode):
        if isinstance(node.set, Cyl):
            return "g_" + to_text(node.set)
        return f"g_({to_text(node.set)})"
    if isinstance(node, Pow):
        return f"{to_text(node.base)}^{node.exp}"
    if isinstance(node, Compose):
        return " ".join(to_text(t) for t in node.terms)
    if isinstance(node, Group):
        return f"({to_text(node.expr)})"
    if isinstance(node, Cyl):
        return f"[{node.body}]"
    if isinstance(node, EmptyLit):
        return "{}"
    if isinstance(node, Whole):
        return "X"
    if isinstance(node, SetOp):
        sep = " + " if node.op == "+" else " & "
        return sep.join(_set_operand(p, node.op) for p in node.parts)
    if isinstance(node, Compl):
        inner = to_text(node.inner)
        return "~" + (f"({inner})" if isinstance(node.inner, SetOp) else inner)
    raise TypeError(f"not an AST node: {node!r}")


def _set_operand(p, op):
    text = to_text(p)
    # '&' binds tighter than '+'
    if isinstance(p, SetOp) and op == "&" and p.op == "+":
        return f"({text})"
    return text


# evaluation ------------------------------------------------------------------


def eval_set(node, system):
    if isinstance(node, Cyl):
        depth, code = system.parse_cylinder(f"[{node.body}]")
        return ClopenSet.cylinder(system, depth, code)
    if isinstance(node, EmptyLit):
        return ClopenSet.empty(system)
    if isinstance(node, Whole):
        return ClopenSet.whole(system)
    if isinstance(node, Compl):
        return eval_set(node.inner, system).complement()
    if isinstance(node, SetOp):
        sets = [eval_set(p, system) for p in node.parts]
        out = sets[0]
        for s in sets[1:]:
            out = out.union(s) if node.op == "+" else out.intersect(s)
        return out
    raise TypeError(f"not a set node: {node!r}")


def evaluate(node, system):
    """The :class:`Element` denoted by ``node``."""
    if isinstance(node, str):
        node = parse(node)
    if isinstance(node, Gen):
        return Element.generator(system)
    if isinstance(node, Id):
        return Element.identity(system)
    if isinstance(node, IndNode):
        return induced_generator(eval_set(node.set, system))
    if isinstance(node, Pow):
        return evaluate(node.base, system) ** node.exp
    if isinstance(node, Group):
        return evaluate(node.expr, system)
    if isinstance(node, Compose):
        out = Element.identity(system)
        for t in node.terms:
            out = out * evaluate(t, system)
        return out
    raise TypeError(f"not an element node: {node!r}")


def to_word(node, system):
    """The :class:`GeneratorWord` spelled by ``node``.  Negative powers of
    anything but ``g`` are spelled by the normal form of their value."""
    if isinstance(node, str):
        node = parse(node)
    return GeneratorWord(system, tuple(_tokens(node, system)))


def _tokens(node, system):
    if isinstance(node, Gen):
        return [G]
    if isinstance(node, Id):
        return []
    if isinstance(node, IndNode):
        return [Ind(eval_set(node.set, system))]
    if isinstance(node, Group):
        return _tokens(node.expr, system)
    if isinstance(node, Compose):
        return [t for term in node.terms for t in _tokens(term, system)]
    if isinstance(node, Pow):
        if node.exp >= 0:
            return _tokens(node.base, system) * node.exp
        if isinstance(node.base, Gen):
            return [GINV] * -node.exp
        value = evaluate(node, system)
        return list(word_of_normal_form(normal_form(value), system).tokens)
    raise TypeError(f"not an element node: {node!r}")
