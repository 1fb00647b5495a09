"""Recursive-descent parser for group expressions.

Grammar (whitespace is ignored between tokens; points in cycles are 1-based)::

    expr    := NAME | NAME '(' args ')'
    gens    := perm (',' perm)*
    perm    := '(' ')' | cycle+
    cycle   := '(' INT (',' INT)* ')'
    matrix  := 'mat' '(' INT ';' row ('|' row)* ')'
    row     := INT (',' INT)*

``sub``/``quo`` take ``expr ';' gens``, ``subd`` takes ``expr ';' gens ';' expr ';' gens``
and ``lin`` takes a comma-separated list of matrices.
"""

from __future__ import annotations

from .constructions import (
    Alternating,
    BGroup,
    Classical,
    Cyclic,
    Dihedral,
    DirectProduct,
    Expr,
    Linear,
    Matrix,
    Named,
    Quotient,
    Subdirect,
    Subgroup,
    Symmetric,
    Wreath,
)
from .perm import InvgenError


class ParseError(InvgenError, ValueError):
    def __init__(self, position: int, expected, found: str = ""):
        self.position = position
        self.expected = frozenset(expected)
        self.found = found
        want = " or ".join(repr(e) for e in sorted(self.expected))
        super().__init__(f"at offset {position}: expected {want}"
                         + (f", found {found!r}" if found else ", found end of input"))


INT_ARGS = {"C": (Cyclic, 1), "D": (Dihedral, 1), "S": (Symmetric, 1), "A": (Alternating, 1),
            "B": (BGroup, 1)}
CLASSICAL = ("GL", "SL", "Sp", "PGL", "PGaL")
ATOMS = ("Q8", "F21", "D8oD8")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # tokens -----------------------------------------------------------------

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, expected):
        self.skip()
        found = self.text[self.pos] if self.pos < len(self.text) else ""
        raise ParseError(self.pos, expected, found)

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail({ch})
        self.pos += 1

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def name(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            self.fail({"group name"})
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail({"integer"})
        return int(self.text[start:self.pos])

    def close_or_comma(self) -> bool:
        """After a list item: True for ',', False for ')'."""
        c = self.peek()
        if c == ",":
            self.pos += 1
            return True
        if c == ")":
            self.pos += 1
            return False
        self.fail({",", ")"})

    # grammar ----------------------------------------------------------------

    def expr(self) -> Expr:
        start = self.pos
        word = self.name()
        if word in ATOMS:
            return Named(word)
        if word in INT_ARGS or word in CLASSICAL:
            self.expect("(")
            nums = [self.integer()]
            while self.close_or_comma():
                nums.append(self.integer())
            cls, arity = INT_ARGS.get(word, (None, 2))
            self.arity(start, word, nums, arity)
            if cls is None:
                return Classical(word, *nums)
            return cls(*nums)
        if word in ("dp", "wr"):
            self.expect("(")
            args = [self.expr()]
            while self.close_or_comma():
                args.append(self.expr())
            if word == "wr":
                self.arity(start, word, args, 2)
                return Wreath(*args)
            return DirectProduct(tuple(args))
        if word in ("sub", "quo"):
            self.expect("(")
            e = self.expr()
            self.expect(";")
            gens = self.gens()
            self.expect(")")
            return (Subgroup if word == "sub" else Quotient)(e, gens)
        if word == "subd":
            self.expect("(")
            e1 = self.expr()
            self.expect(";")
            g1 = self.gens()
            self.expect(";")
            e2 = self.expr()
            self.expect(";")
            g2 = self.gens()
            self.expect(")")
            return Subdirect(e1, g1, e2, g2)
        if word == "lin":
            self.expect("(")
            mats = [self.matrix()]
            while self.close_or_comma():
                mats.append(self.matrix())
            return Linear(tuple(mats))
        self.pos = start
        self.fail({"group name"})

    def arity(self, start: int, word: str, args, n: int):
        if len(args) != n:
            raise ParseError(start, {f"{n} argument(s) to {word}"}, word)

    def gens(self):
        out = [self.perm()]
        while self.peek() == ",":
            self.pos += 1
            out.append(self.perm())
        return tuple(out)

    def perm(self):
        self.expect("(")
        if self.accept(")"):
            return ()
        cycles = [self.cycle_body()]
        while self.peek() == "(":
            self.pos += 1
            cycles.append(self.cycle_body())
        return tuple(cycles)

    def cycle_body(self):
        pts = [self.integer()]
        while self.close_or_comma():
            pts.append(self.integer())
        return tuple(pts)

    def matrix(self) -> Matrix:
        start = self.pos
        if self.name() != "mat":
            self.pos = start
            self.fail({"mat"})
        self.expect("(")
        p = self.integer()
        self.expect(";")
        rows = [self.row()]
        while self.accept("|"):
            rows.append(self.row())
        self.expect(")")
        return Matrix(p, tuple(rows))

    def row(self):
        out = [self.integer()]
        while self.accept(","):
            out.append(self.integer())
        return tuple(out)


def parse_group_expr(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    p.skip()
    if p.pos != len(text):
        p.fail({"end of input"})
    return e


parse = parse_group_expr
