"""Polynomial expressions: a recursive-descent parser and the canonical printer.

Grammar::

    input   := vector | expr
    vector  := '[' expr (',' expr)* ']'
    expr    := ['+' | '-'] term (('+' | '-') term)*
    term    := factor (('*' | <juxtaposition>) factor | '/' NUMBER)*
    factor  := '-' factor | atom (('^' | '**') NUMBER)?
    atom    := NUMBER | NAME | '(' expr ')'

A name that is not a declared variable is split greedily into declared names, so ``xy``
reads as ``x*y`` when only ``x`` and ``y`` exist.
"""

import re
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Union

from . import config
from .errors import FieldDivisionError, ParseError
from .series import SeriesRing, SeriesVec

_TOKEN = re.compile(r'\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()\[\],]))')


class Token(NamedTuple):
    kind: str  # 'num', 'name', 'op' or 'end'
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    while True:
        while pos < len(text) and text[pos].isspace():
            if text[pos] == '\n':
                line += 1
                line_start = pos + 1
            pos += 1
        if pos >= len(text):
            tokens.append(Token('end', '', line, pos - line_start + 1))
            return tokens
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise ParseError(f'unexpected character {text[pos]!r}', line, pos - line_start + 1)
        kind = match.lastgroup or 'op'
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), line, start - line_start + 1))
        pos = match.end()


def _split_name(name: str, variables: Sequence[str]) -> Optional[List[str]]:
    """Greedy longest-prefix split of `name` into declared variables."""
    parts: List[str] = []
    rest = name
    while rest:
        match = max((v for v in variables if rest.startswith(v)), key=len, default=None)
        if match is None:
            return None
        parts.append(match)
        rest = rest[len(match) :]
    return parts


class _Parser:
    def __init__(self, text: str, ring: SeriesRing) -> None:
        self.ring = ring
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek
        return ParseError(message, tok.line, tok.column)

    def expect(self, text: str) -> Token:
        tok = self.peek
        if tok.kind != 'op' or tok.text != text:
            found = 'end of input' if tok.kind == 'end' else repr(tok.text)
            raise self.error(f'expected {text!r}, found {found}')
        return self.advance()

    def is_op(self, *ops: str) -> bool:
        return self.peek.kind == 'op' and self.peek.text in ops

    def parse(self) -> SeriesVec:
        if self.peek.kind == 'end':
            raise self.error('empty expression')
        if self.is_op('['):
            value = self.vector()
        else:
            value = self.expr()
        if self.peek.kind != 'end':
            raise self.error(f'unexpected {self.peek.text!r}')
        return value

    def vector(self) -> SeriesVec:
        self.expect('[')
        entries = [self.expr()]
        while self.is_op(','):
            self.advance()
            entries.append(self.expr())
        self.expect(']')
        return SeriesVec.from_components(self.ring, entries)

    def expr(self) -> SeriesVec:
        negate = False
        if self.is_op('+', '-'):
            negate = self.advance().text == '-'
        value = self.term()
        if negate:
            value = -value
        while self.is_op('+', '-'):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == '+' else value - rhs
        return value

    def starts_atom(self) -> bool:
        tok = self.peek
        return tok.kind in ('num', 'name') or (tok.kind == 'op' and tok.text == '(')

    def term(self) -> SeriesVec:
        value = self.factor()
        while True:
            if self.is_op('*'):
                self.advance()
                value = value * self.factor()
            elif self.is_op('/'):
                self.advance()
                tok = self.peek
                if tok.kind != 'num':
                    raise self.error('only division by a number is supported')
                self.advance()
                if int(tok.text) == 0:
                    raise self.error('division by zero', tok)
                try:
                    value = value.scale(self.ring.field.inv(self.ring.field.convert(int(tok.text))))
                except FieldDivisionError as exc:
                    raise self.error(str(exc), tok) from exc
            elif self.starts_atom():
                value = value * self.factor()
            else:
                return value

    def factor(self) -> SeriesVec:
        if self.is_op('-'):
            self.advance()
            return -self.factor()
        base = self.atom()
        if self.is_op('^', '**'):
            self.advance()
            tok = self.peek
            if tok.kind != 'num':
                raise self.error('malformed exponent: expected a nonnegative integer')
            self.advance()
            result = self.ring.one()
            for _ in range(int(tok.text)):
                result = result * base
            return result
        return base

    def atom(self) -> SeriesVec:
        tok = self.peek
        if tok.kind == 'num':
            self.advance()
            return self.ring.constant(Fraction(int(tok.text)))
        if tok.kind == 'name':
            self.advance()
            return self.name(tok)
        if self.is_op('('):
            self.advance()
            value = self.expr()
            self.expect(')')
            return value
        found = 'end of input' if tok.kind == 'end' else repr(tok.text)
        raise self.error(f'expected a number, variable or "(", found {found}')

    def name(self, tok: Token) -> SeriesVec:
        variables = self.ring.variables
        if tok.text in variables:
            return self.ring.gen(tok.text)
        parts = _split_name(tok.text, variables)
        if parts is None:
            raise self.error(f'unknown variable {tok.text}', tok)
        value = self.ring.one()
        for part in parts:
            value = value * self.ring.gen(part)
        return value


def parse_polynomial(text: str, ring: Union[SeriesRing, Sequence[str]]) -> SeriesVec:
    """Parse `text` into a polynomial (or a ``[f1, ..., fp]`` vector) over `ring`.

    A bare list of variable names is accepted and uses the configured default field.
    """
    if not isinstance(ring, SeriesRing):
        ring = SeriesRing.create(config.cfg.field, ring)
    return _Parser(text, ring).parse()


def _format_monomial(alpha: Sequence[int], variables: Sequence[str]) -> str:
    parts = []
    for name, a in zip(variables, alpha):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f'{name}^{a}')
    return '*'.join(parts)


def _format_scalar(F: SeriesVec) -> str:
    field = F.field
    pieces: List[str] = []
    for key, c in F.items():
        mono = _format_monomial(key[2:], F.ring.variables)
        coeff = field.format(c)
        if not mono:
            text = coeff
        elif coeff == '1':
            text = mono
        elif coeff == '-1':
            text = f'-{mono}'
        else:
            text = f'{coeff}*{mono}'
        if not pieces:
            pieces.append(text)
        elif text.startswith('-'):
            pieces.append(f'- {text[1:]}')
        else:
            pieces.append(f'+ {text}')
    return ' '.join(pieces) or '0'


def format_series(F: SeriesVec) -> str:
    """Canonical text for `F`: terms in ascending exponent order; parses back to `F`."""
    if F.rank == 1:
        return _format_scalar(F)
    return '[' + ', '.join(_format_scalar(entry) for entry in F.components()) + ']'
