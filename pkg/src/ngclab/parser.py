"""Concrete syntax for programs, guards, and `.ngcl` files.

Grammar (statements):

    stmt  ::= "skip" | "diverge" | NAME ":=" expr
            | "if" guard block "else" block
            | "while" guard block
            | block ("[]" block)*
    seq   ::= stmt (";" stmt)*            # folded to the right
    block ::= "{" seq "}"

Guards close comparisons (= != < <=, also ==) under && || ! and parentheses;
expressions use + - * over names and integer literals.  `#` starts a line
comment.  Files carry a header line `vars x, y mod 4` declaring the space.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NgclSyntaxError, UnknownVariableError
from .space import StateSpace
from .syntax import (
    And,
    Assign,
    BinExpr,
    BoolLit,
    Choice,
    Cmp,
    Const,
    Diverge,
    Expr,
    Guard,
    Ite,
    Not,
    Or,
    Program,
    Seq,
    Skip,
    Var,
    While,
)

_KEYWORDS = {"skip", "diverge", "if", "else", "while", "true", "false", "vars", "mod"}
_SYMBOLS = (":=", "[]", "<=", "!=", "==", "&&", "||", ";", "{", "}", "(", ")",
            "+", "-", "*", "<", "=", "!", ",")


@dataclass(frozen=True)
class Token:
    kind: str  # name | int | sym | eof
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(Token("int", text[start:i], line, col))
            col += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token("name", text[start:i], line, col))
            col += i - start
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token("sym", sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise NgclSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], space: StateSpace | None):
        self.tokens = tokens
        self.pos = 0
        self.space = space

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str) -> NgclSyntaxError:
        tok = self.peek()
        return NgclSyntaxError(message, tok.line, tok.column)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            raise self.fail(f"expected {text!r}, found {tok.text!r}")
        return self.next()

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "eof"

    def check_var(self, tok: Token) -> str:
        if self.space is not None and tok.text not in self.space.variables:
            raise UnknownVariableError(tok.text, tok.line, tok.column)
        return tok.text

    # expressions: term ((+|-) term)*, term: factor (* factor)*
    def expr(self) -> Expr:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.next().text
            node = BinExpr(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.at("*"):
            self.next()
            node = BinExpr("*", node, self.factor())
        return node

    def factor(self) -> Expr:
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            return Const(int(tok.text))
        if tok.kind == "name" and tok.text not in _KEYWORDS:
            self.next()
            return Var(self.check_var(tok))
        if self.at("("):
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        raise self.fail(f"expected an expression, found {tok.text!r}")

    # guards: disj > conj > neg > atom
    def guard(self) -> Guard:
        node = self.conj()
        while self.at("||"):
            self.next()
            node = Or(node, self.conj())
        return node

    def conj(self) -> Guard:
        node = self.neg()
        while self.at("&&"):
            self.next()
            node = And(node, self.neg())
        return node

    def neg(self) -> Guard:
        if self.at("!"):
            self.next()
            return Not(self.neg())
        return self.guard_atom()

    def guard_atom(self) -> Guard:
        tok = self.peek()
        if tok.text == "true":
            self.next()
            return BoolLit(True)
        if tok.text == "false":
            self.next()
            return BoolLit(False)
        if self.at("("):
            # could be a parenthesized guard or a parenthesized expression
            # starting a comparison; try the guard reading first
            save = self.pos
            self.next()
            try:
                node = self.guard()
                self.expect(")")
            except NgclSyntaxError:
                self.pos = save
            else:
                if self.peek().text in ("=", "==", "!=", "<", "<="):
                    self.pos = save
                else:
                    return node
        left = self.expr()
        op_tok = self.peek()
        if op_tok.text not in ("=", "==", "!=", "<", "<="):
            raise self.fail(f"expected a comparison, found {op_tok.text!r}")
        self.next()
        op = "=" if op_tok.text == "==" else op_tok.text
        return Cmp(op, left, self.expr())

    # statements
    def sequence(self) -> Program:
        first = self.statement()
        if self.at(";"):
            self.next()
            return Seq(first, self.sequence())
        return first

    def statement(self) -> Program:
        tok = self.peek()
        if tok.text == "skip":
            self.next()
            return Skip()
        if tok.text == "diverge":
            self.next()
            return Diverge()
        if tok.text == "if":
            self.next()
            g = self.guard()
            then = self.block()
            self.expect("else")
            orelse = self.block()
            return Ite(g, then, orelse)
        if tok.text == "while":
            self.next()
            g = self.guard()
            return While(g, self.block())
        if self.at("{"):
            node = self.block()
            while self.at("[]"):
                self.next()
                node = Choice(node, self.block())
            return node
        if tok.kind == "name" and tok.text not in _KEYWORDS:
            self.next()
            name = self.check_var(tok)
            self.expect(":=")
            return Assign(name, self.expr())
        raise self.fail(f"expected a statement, found {tok.text!r}")

    def block(self) -> Program:
        self.expect("{")
        node = self.sequence()
        self.expect("}")
        return node

    def header(self) -> StateSpace:
        self.expect("vars")
        names = []
        tok = self.peek()
        if tok.kind != "name" or tok.text in _KEYWORDS:
            raise self.fail("expected a variable name")
        names.append(self.next().text)
        while self.at(","):
            self.next()
            tok = self.peek()
            if tok.kind != "name" or tok.text in _KEYWORDS:
                raise self.fail("expected a variable name")
            names.append(self.next().text)
        self.expect("mod")
        tok = self.peek()
        if tok.kind != "int":
            raise self.fail("expected a modulus")
        self.next()
        return StateSpace(tuple(names), int(tok.text))

    def eof(self):
        if self.peek().kind != "eof":
            raise self.fail(f"trailing input {self.peek().text!r}")


def parse_program(text: str, space: StateSpace) -> Program:
    parser = _Parser(tokenize(text), space)
    program = parser.sequence()
    parser.eof()
    return program


def parse_guard(text: str, space: StateSpace) -> Guard:
    parser = _Parser(tokenize(text), space)
    guard = parser.guard()
    parser.eof()
    return guard


def parse_module(text: str) -> tuple[StateSpace, Program]:
    """Parse a self-contained `.ngcl` file: header line plus a program."""
    parser = _Parser(tokenize(text), None)
    space = parser.header()
    parser.space = space
    program = parser.sequence()
    parser.eof()
    return space, program
