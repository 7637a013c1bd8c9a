"""Parsing and printing of regular expressions.

Raw expression trees are plain tuples:

    ('lit', '0') | ('lit', '1') | ('sym', index) | ('*', e)
    | ('.', e1, e2) | ('+', e1, e2) | ('\\', e1, e2) | ('&', e1, e2) | ('^', e1, e2)

where ``index`` is an internal letter index (1-based, assigned in first
occurrence order by the :class:`AlphabetMap`).  Raw trees carry no
normalization constraints; they are the pre-interning form.

Grammar (lowest to highest precedence):

    expr   := term (('\\' | '&' | '^') term)*          left associative
    term   := seq ('+' seq)*
    seq    := factor (('.')? factor)*                  juxtaposition
    factor := atom '*'*
    atom   := letter | '0' | '1' | '(' expr ')'

Whitespace is ignored everywhere.
"""

from __future__ import annotations


class ParseError(ValueError):
    """Syntax error; carries the offset of the offending character."""

    def __init__(self, message, position):
        super().__init__("%s (at offset %d)" % (message, position))
        self.position = position


class AlphabetMap:
    """Bijection between source letters and internal indices 1..k.

    Indices are assigned in first-occurrence order, so internal letter 1
    is the first letter seen in the source text.  Printing applies the
    inverse map, so output uses the caller's original letters.
    """

    def __init__(self):
        self.to_index = {}
        self.letters = []

    @property
    def k(self):
        return len(self.letters)

    def index_of(self, ch):
        i = self.to_index.get(ch)
        if i is None:
            self.letters.append(ch)
            i = len(self.letters)
            self.to_index[ch] = i
        return i

    def letter_of(self, index):
        return self.letters[index - 1]


_EXT_OPS = ("\\", "&", "^")


class _Parser:
    def __init__(self, text, amap):
        self.text = text
        self.pos = 0
        self.amap = amap

    def error(self, message):
        raise ParseError(message, self.pos)

    def peek(self):
        t = self.text
        n = len(t)
        while self.pos < n and t[self.pos].isspace():
            self.pos += 1
        return t[self.pos] if self.pos < n else None

    def expr(self):
        e = self.term()
        while True:
            c = self.peek()
            if c in _EXT_OPS:
                self.pos += 1
                e = (c, e, self.term())
            else:
                return e

    def term(self):
        e = self.seq()
        while self.peek() == "+":
            self.pos += 1
            e = ("+", e, self.seq())
        return e

    def seq(self):
        e = self.factor()
        while True:
            c = self.peek()
            if c == ".":
                self.pos += 1
                e = (".", e, self.factor())
            elif c is not None and (c.isalpha() or c in "01("):
                e = (".", e, self.factor())
            else:
                return e

    def factor(self):
        e = self.atom()
        while self.peek() == "*":
            self.pos += 1
            e = ("*", e)
        return e

    def atom(self):
        c = self.peek()
        if c is None:
            self.error("unexpected end of input")
        if c == "(":
            self.pos += 1
            e = self.expr()
            if self.peek() != ")":
                self.error("unbalanced parenthesis")
            self.pos += 1
            return e
        if c in "01":
            self.pos += 1
            return ("lit", c)
        if c.isalpha() and c.islower():
            self.pos += 1
            return ("sym", self.amap.index_of(c))
        self.error("unexpected character %r" % c)


def parse(text, amap=None):
    """Parse ``text`` into a raw tree.

    Returns ``(raw, amap)``.  Passing an existing :class:`AlphabetMap`
    lets several expressions share one letter numbering.
    """
    if amap is None:
        amap = AlphabetMap()
    p = _Parser(text, amap)
    if p.peek() is None:
        p.error("empty input")
    e = p.expr()
    if p.peek() is not None:
        p.error("trailing input")
    return e, amap


# Precedence levels for printing: extended ops < union < concat < star/atom.
_PREC_EXT = 0
_PREC_UNION = 1
_PREC_CONCAT = 2
_PREC_ATOM = 3


def raw_to_text(raw, amap):
    """Print a raw tree with minimal parenthesization."""

    def go(r, prec):
        kind = r[0]
        if kind == "lit":
            return r[1]
        if kind == "sym":
            return amap.letter_of(r[1])
        if kind == "*":
            return go(r[1], _PREC_ATOM) + "*"
        if kind == ".":
            s = go(r[1], _PREC_CONCAT) + go(r[2], _PREC_CONCAT + 1)
            return "(" + s + ")" if prec > _PREC_CONCAT else s
        if kind == "+":
            s = go(r[1], _PREC_UNION) + " + " + go(r[2], _PREC_UNION + 1)
            return "(" + s + ")" if prec > _PREC_UNION else s
        # extended binary operator
        s = go(r[1], _PREC_EXT) + " " + kind + " " + go(r[2], _PREC_EXT + 1)
        return "(" + s + ")" if prec > _PREC_EXT else s

    return go(raw, _PREC_EXT)


def raw_size(raw):
    """Size of a raw tree: symbol occurrences, parentheses excluded."""
    kind = raw[0]
    if kind in ("lit", "sym"):
        return 1
    if kind == "*":
        return 1 + raw_size(raw[1])
    return 1 + raw_size(raw[1]) + raw_size(raw[2])


def to_text(e, bg, amap):
    """Print an interned expression back in the caller's letters.

    Fully parenthesized only where precedence requires.  Concatenation is
    printed by juxtaposition.  Rejects stale (freed) identifiers.
    """
    bg.check_live(e)

    def go(i, prec):
        n = bg.node[i]
        kind = n[0]
        if kind == "0" or kind == "1":
            return kind
        if kind == "L":
            return amap.letter_of(n[1])
        if kind == "*":
            return go(n[1], _PREC_ATOM) + "*"
        if kind == ".":
            # normalized tails may themselves be concatenations (right
            # spine); printing them unparenthesized keeps spines flat
            s = go(n[1], _PREC_CONCAT + 1) + go(n[2], _PREC_CONCAT)
            return "(" + s + ")" if prec > _PREC_CONCAT else s
        if kind == "+":
            s = " + ".join(go(m, _PREC_UNION + 1) for m in n[1:])
            return "(" + s + ")" if prec > _PREC_UNION else s
        s = go(n[1], _PREC_EXT) + " " + kind + " " + go(n[2], _PREC_EXT + 1)
        return "(" + s + ")" if prec > _PREC_EXT else s

    return go(e, _PREC_EXT)


def size(e, bg):
    """The size metric of an interned expression (cached in the arena)."""
    bg.check_live(e)
    return bg.size_of(e)
