"""
Parser for the ranked query language.

    expr     := table | unary | binary | select | project | "(" expr ")" ;
    table    := IDENT ;
    unary    := "shift" DEGREE expr ;
    project  := "project" "[" IDENT ("," IDENT)* "]" expr ;
    binary   := ("union" | "meet" | "otimes" | "residuum" | "cross") "(" expr "," expr ")"
              | "join" "(" expr "," expr ")" "on" IDENT "~" IDENT ;
    select   := ("select" | "selectc") expr "where" IDENT "~" (LITERAL | IDENT) ;

Keywords are lower case and reserved. Whitespace, including newlines, is
insignificant.
"""
import logging
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import List, Optional

from engine.errors import LatticeError, QuerySyntaxError
from engine.lattice import ResiduatedLattice

from .nodes import (KEYWORDS, Cross, Join, Meet, OTimes, Project, QueryExpr, Residuum,
                    SelectAttr, SelectClosure, SelectVal, Shift, TableRef, Union)

logger = logging.getLogger('rankdb')

TOKEN_PATTERN = re.compile(r"""
    (?P<WS>\s+)
  | (?P<NUMBER>-?(?:\d+(?:\.\d*)?|\.\d+))
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<STRING>'(?:[^'\\]|\\.)*')
  | (?P<PUNCT>[\[\](),~])
  | (?P<MISMATCH>.)
""", re.VERBOSE | re.DOTALL)

BINARY_OPERATORS = {
    'union': Union,
    'meet': Meet,
    'otimes': OTimes,
    'residuum': Residuum,
    'cross': Cross,
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start = 1, 0
    for match in TOKEN_PATTERN.finditer(text):
        kind = match.lastgroup
        value = match.group()
        column = match.start() - line_start + 1
        if kind == 'MISMATCH':
            if value == "'":
                raise QuerySyntaxError("unterminated string literal", line, column)
            raise QuerySyntaxError(f"unexpected character {value!r}", line, column)
        if kind != 'WS':
            if kind == 'IDENT' and value in KEYWORDS:
                kind = 'KEYWORD'
            tokens.append(Token(kind, value, line, column))
        newlines = value.count('\n')
        if newlines:
            line += newlines
            line_start = match.start() + value.rindex('\n') + 1
    tokens.append(Token('EOF', '', line, len(text) - line_start + 1))
    return tokens


class QueryParser:
    """Recursive-descent parser producing QueryExpr trees."""

    def __init__(self, lattice: Optional[ResiduatedLattice] = None):
        # With a lattice, shift degrees are also checked against its carrier.
        self.lattice = lattice
        self.tokens: List[Token] = []
        self.position = 0

    def parse(self, text: str) -> QueryExpr:
        self.tokens = tokenize(text)
        self.position = 0
        if self._peek().kind == 'EOF':
            raise QuerySyntaxError("empty query", 1, 1)
        expr = self._expr()
        trailing = self._peek()
        if trailing.kind != 'EOF':
            raise QuerySyntaxError(f"unexpected {trailing.text!r} after end of query",
                                   trailing.line, trailing.column)
        logger.debug(f"🔎 QUERY PARSED | Text: {expr.to_text()}")
        return expr

    def _peek(self, offset: int = 0) -> Token:
        index = min(self.position + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def _advance(self) -> Token:
        token = self.tokens[self.position]
        if token.kind != 'EOF':
            self.position += 1
        return token

    def _error(self, message: str, token: Optional[Token] = None) -> QuerySyntaxError:
        token = token or self._peek()
        return QuerySyntaxError(message, token.line, token.column)

    def _describe(self, token: Token) -> str:
        return "end of query" if token.kind == 'EOF' else repr(token.text)

    def _expect(self, text: str) -> Token:
        token = self._peek()
        if token.text != text or token.kind in ('STRING', 'EOF'):
            raise self._error(f"expected {text!r}, found {self._describe(token)}")
        return self._advance()

    def _ident(self, what: str) -> str:
        token = self._peek()
        if token.kind != 'IDENT':
            raise self._error(f"expected {what}, found {self._describe(token)}")
        return self._advance().text

    def _expr(self) -> QueryExpr:
        token = self._peek()
        if token.kind == 'PUNCT' and token.text == '(':
            self._advance()
            inner = self._expr()
            self._expect(')')
            return inner
        if token.kind == 'IDENT':
            following = self._peek(1)
            if following.kind == 'PUNCT' and following.text == '(':
                raise self._error(f"unknown operator {token.text!r}")
            self._advance()
            return TableRef(token.text)
        if token.kind == 'KEYWORD':
            keyword = token.text
            if keyword in BINARY_OPERATORS:
                return self._binary(keyword)
            if keyword == 'join':
                return self._join()
            if keyword == 'shift':
                return self._shift()
            if keyword == 'project':
                return self._project()
            if keyword in ('select', 'selectc'):
                return self._select(keyword)
            raise self._error(f"keyword {keyword!r} cannot start an expression")
        raise self._error(f"expected an expression, found {self._describe(token)}")

    def _pair(self):
        self._expect('(')
        left = self._expr()
        self._expect(',')
        right = self._expr()
        self._expect(')')
        return left, right

    def _binary(self, keyword: str) -> QueryExpr:
        self._advance()
        left, right = self._pair()
        return BINARY_OPERATORS[keyword](left, right)

    def _join(self) -> Join:
        self._advance()
        left, right = self._pair()
        self._expect('on')
        p = self._ident("an attribute name")
        self._expect('~')
        q = self._ident("an attribute name")
        return Join(left, right, p, q)

    def _shift(self) -> Shift:
        self._advance()
        token = self._peek()
        if token.kind != 'NUMBER':
            raise self._error(f"expected a degree, found {self._describe(token)}")
        self._advance()
        degree = self._decimal(token)
        if degree < 0 or degree > 1:
            raise self._error(f"degree literal {token.text} is outside [0, 1]", token)
        if self.lattice is not None:
            try:
                self.lattice.parse_degree(token.text)
            except LatticeError as exc:
                raise self._error(str(exc), token)
        return Shift(degree, self._expr())

    def _project(self) -> Project:
        self._advance()
        self._expect('[')
        attributes = [self._ident("an attribute name")]
        while self._peek().text == ',' and self._peek().kind == 'PUNCT':
            self._advance()
            token = self._peek()
            name = self._ident("an attribute name")
            if name in attributes:
                raise self._error(f"attribute {name} listed twice", token)
            attributes.append(name)
        self._expect(']')
        return Project(tuple(attributes), self._expr())

    def _select(self, keyword: str) -> QueryExpr:
        self._advance()
        child = self._expr()
        self._expect('where')
        attribute = self._ident("an attribute name")
        self._expect('~')
        token = self._peek()
        if token.kind == 'IDENT':
            if keyword == 'selectc':
                raise self._error("selectc compares an attribute with a literal", token)
            self._advance()
            return SelectAttr(child, attribute, token.text)
        if token.kind == 'STRING':
            self._advance()
            literal = re.sub(r"\\(.)", r"\1", token.text[1:-1], flags=re.DOTALL)
        elif token.kind == 'NUMBER':
            self._advance()
            literal = self._decimal(token)
        else:
            raise self._error(f"expected a literal or attribute name, found {self._describe(token)}")
        if keyword == 'selectc':
            return SelectClosure(child, attribute, literal)
        return SelectVal(child, attribute, literal)

    def _decimal(self, token: Token) -> Decimal:
        try:
            return Decimal(token.text)
        except InvalidOperation:
            raise self._error(f"malformed number {token.text!r}", token)


def parse(text: str, lattice: Optional[ResiduatedLattice] = None) -> QueryExpr:
    """Parse query text into a QueryExpr, raising QuerySyntaxError with line/column."""
    return QueryParser(lattice).parse(text)


def to_text(expr: QueryExpr) -> str:
    return expr.to_text()
