"""Recursive-descent parser for the script language.

    script  := (stmt ";")+
    stmt    := "p" "=" INT | "ring" IDENT ("," IDENT)* | "ideal" IDENT "=" poly ("," poly)*
             | "poly" IDENT "=" poly | command
    poly    := ["+"|"-"] term (("+"|"-") term)*
    term    := INT? factor* ; factor := (IDENT | "(" poly ")") ("^" INT)? with optional "*"
    command := WORD arg* ;  arg := WORD ["=" WORD]   (a WORD may be a monomial like x^2y)

Identifiers that are not declared variables or polynomials are split into
declared variable names by longest match, so ``xy`` reads as ``x*y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .groebner import IdealPresentation
from .poly import Polynomial, RingDescriptor, is_prime

KEYWORDS = ("p", "ring", "ideal", "poly")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # INT | WORD | OP | EOF
    text: str
    line: int
    col: int


def tokenize(src: str) -> list:
    toks = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and src[i] != "\n":
                i += 1
            continue
        start = i
        if ch.isdigit():
            while i < n and src[i].isdigit():
                i += 1
            toks.append(Token("INT", src[start:i], line, col))
        elif ch.isalpha() or ch == "_":
            while i < n and (src[i].isalnum() or src[i] == "_"):
                i += 1
            toks.append(Token("WORD", src[start:i], line, col))
        elif ch in "=;,+-*^()":
            i += 1
            toks.append(Token("OP", ch, line, col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        col += i - start
    toks.append(Token("EOF", "", line, col))
    return toks


@dataclass
class Command:
    name: str
    args: list
    options: dict
    line: int
    col: int


@dataclass
class Script:
    p: Optional[int] = None
    ring: Optional[RingDescriptor] = None
    ideals: dict = field(default_factory=dict)
    polys: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)

    def lookup_ideal(self, name: str) -> IdealPresentation:
        if name in self.ideals:
            return self.ideals[name]
        if name in self.polys:
            return IdealPresentation(self.ring, (self.polys[name],))
        raise KeyError(name)

    def lookup_poly(self, name: str) -> Polynomial:
        if name in self.polys:
            return self.polys[name]
        if self.ring is not None and name in self.ring.names:
            return self.ring.var(name)
        if name in self.ideals and len(self.ideals[name]) == 1:
            return self.ideals[name].generators[0]
        raise KeyError(name)


class Parser:
    def __init__(self, src: str, ring: Optional[RingDescriptor] = None):
        self.toks = tokenize(src)
        self.pos = 0
        self.script = Script()
        if ring is not None:
            self.script.p = ring.p
            self.script.ring = ring

    # -- token helpers ----------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def expect_op(self, op: str) -> Token:
        if self.tok.kind != "OP" or self.tok.text != op:
            self.error(f"expected {op!r}, found {self._describe(self.tok)}")
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            self.error(f"expected {what}, found {self._describe(self.tok)}")
        return self.advance()

    @staticmethod
    def _describe(t: Token) -> str:
        return "end of input" if t.kind == "EOF" else repr(t.text)

    def at_op(self, *ops) -> bool:
        return self.tok.kind == "OP" and self.tok.text in ops

    # -- statements -------------------------------------------------------
    def parse_script(self) -> Script:
        if self.tok.kind == "EOF":
            self.error("empty script")
        while self.tok.kind != "EOF":
            self.statement()
            self.expect_op(";")
        return self.script

    def statement(self):
        t = self.tok
        if t.kind != "WORD":
            self.error(f"expected a statement, found {self._describe(t)}")
        if t.text == "p" and self.toks[self.pos + 1].text == "=":
            self.advance()
            self.expect_op("=")
            it = self.expect_kind("INT", "an integer")
            p = int(it.text)
            if self.script.p is not None:
                self.error("p declared twice", t)
            if not is_prime(p):
                self.error(f"{p} is not prime", it)
            if p * p >= 2**31:
                self.error(f"{p} is too large", it)
            self.script.p = p
        elif t.text == "ring":
            self.advance()
            if self.script.p is None:
                self.error("ring declared before p", t)
            if self.script.ring is not None:
                self.error("ring declared twice", t)
            names = [self.expect_kind("WORD", "a variable name")]
            while self.at_op(","):
                self.advance()
                names.append(self.expect_kind("WORD", "a variable name"))
            seen = set()
            for nt in names:
                if nt.text in seen:
                    self.error(f"duplicate variable {nt.text!r}", nt)
                if nt.text in KEYWORDS:
                    self.error(f"{nt.text!r} is reserved", nt)
                seen.add(nt.text)
            self.script.ring = RingDescriptor(self.script.p, 1, tuple(nt.text for nt in names))
        elif t.text in ("ideal", "poly") and self.toks[self.pos + 1].kind == "WORD":
            self.advance()
            self._need_ring(t)
            nt = self.expect_kind("WORD", "a name")
            self._check_fresh(nt)
            self.expect_op("=")
            polys = [self.poly()]
            if t.text == "ideal":
                while self.at_op(","):
                    self.advance()
                    polys.append(self.poly())
                self.script.ideals[nt.text] = IdealPresentation(self.script.ring, tuple(polys))
            else:
                self.script.polys[nt.text] = polys[0]
        else:
            self.command()

    def _need_ring(self, t: Token):
        if self.script.ring is None:
            self.error("no ring declared", t)

    def _check_fresh(self, nt: Token):
        s = self.script
        if nt.text in s.ring.names:
            self.error(f"{nt.text!r} is a variable", nt)
        if nt.text in s.ideals or nt.text in s.polys:
            self.error(f"{nt.text!r} already declared", nt)

    def command(self):
        t = self.advance()
        name = t.text
        # command words may contain hyphens: check-flift
        while self.at_op("-") and self.toks[self.pos + 1].kind == "WORD":
            self.advance()
            name += "-" + self.advance().text
        args, opts = [], {}
        while not self.at_op(";") and self.tok.kind != "EOF":
            at = self.tok
            if at.kind not in ("WORD", "INT"):
                self.error(f"unexpected {self._describe(at)} in command arguments")
            word = self._arg_word()
            if self.at_op("="):
                self.advance()
                if self.tok.kind not in ("WORD", "INT"):
                    self.error("expected an option value")
                opts[word] = self._arg_word()
            else:
                args.append(word)
        self.script.commands.append(Command(name, args, opts, t.line, t.col))

    def _arg_word(self) -> str:
        """A word, possibly with hyphens or a parenthesised parameter list (catalog names)."""
        text = self.advance().text
        while self.at_op("-") and self.toks[self.pos + 1].kind == "WORD":
            self.advance()
            text += "-" + self.advance().text
        # monomial arguments such as x^2y or x*y^3
        while True:
            if self.at_op("^", "*") and self.toks[self.pos + 1].kind in ("WORD", "INT"):
                text += self.advance().text + self.advance().text
            elif self.tok.kind in ("WORD", "INT") and text[-1].isdigit() and self._adjacent():
                text += self.advance().text
            else:
                break
        if self.at_op("("):
            depth = 0
            while True:
                tk = self.tok
                if tk.kind == "EOF":
                    self.error("unbalanced parenthesis")
                if tk.text == "(":
                    depth += 1
                elif tk.text == ")":
                    depth -= 1
                text += tk.text
                self.advance()
                if depth == 0:
                    break
        return text

    def _adjacent(self) -> bool:
        prev, cur = self.toks[self.pos - 1], self.tok
        return prev.line == cur.line and prev.col + len(prev.text) == cur.col

    # -- polynomials ------------------------------------------------------
    def poly(self) -> Polynomial:
        sign = 1
        if self.at_op("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
        result = self.term().scale(sign)
        while self.at_op("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
            result = result + self.term().scale(sign)
        return result

    def term(self) -> Polynomial:
        ring = self.script.ring
        start = self.tok
        coeff = None
        if self.tok.kind == "INT":
            coeff = int(self.advance().text)
        value = ring.const(1 if coeff is None else coeff)
        factors = 0
        while True:
            if self.tok.kind == "WORD" or self.at_op("("):
                value = value * self.factor()
                factors += 1
            elif self.at_op("*") and factors + (coeff is not None) > 0:
                self.advance()
                if not (self.tok.kind == "WORD" or self.at_op("(")):
                    self.error(f"expected a factor after '*', found {self._describe(self.tok)}")
            else:
                break
        if coeff is None and factors == 0:
            self.error(f"expected a term, found {self._describe(start)}", start)
        return value

    def factor(self) -> Polynomial:
        t = self.tok
        if self.at_op("("):
            self.advance()
            base = self.poly()
            self.expect_op(")")
        else:
            self.advance()
            base = self.identifier(t)
        if self.at_op("^"):
            self.advance()
            et = self.expect_kind("INT", "an exponent")
            e = int(et.text)
            if e >= 2**31:
                self.error("exponent too large", et)
            base = base**e
        return base

    def identifier(self, t: Token) -> Polynomial:
        s = self.script
        ring = s.ring
        name = t.text
        if name in ring.names:
            return ring.var(name)
        if name in s.polys:
            return s.polys[name]
        # longest-match split into declared variables
        names = sorted(ring.names, key=len, reverse=True)
        out = ring.one()
        i = 0
        while i < len(name):
            for v in names:
                if name.startswith(v, i):
                    out = out * ring.var(v)
                    i += len(v)
                    break
            else:
                raise ParseError(f"unknown identifier {name!r}", t.line, t.col + i)
        return out


def parse(source: str) -> Script:
    """Parse a whole script."""
    return Parser(source).parse_script()


def parse_polynomial(text: str, ring: RingDescriptor) -> Polynomial:
    """Parse a single polynomial in ``ring``."""
    parser = Parser(text, ring)
    f = parser.poly()
    if parser.tok.kind != "EOF":
        parser.error(f"unexpected {parser._describe(parser.tok)}")
    return f
