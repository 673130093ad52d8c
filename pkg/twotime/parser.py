"""
Text syntax for observables and 3-vectors.

Observables are real linear combinations of pauli words::

    expr       := term (('+' | '-') term)*
    term       := ['+' | '-'] [number '*'] pauli_word
    number     := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
    pauli_word := [IXYZ]+

Whitespace is ignored and an omitted coefficient means 1. All words of an
expression must have the same length. Vectors are three comma separated,
optionally signed numbers, e.g. ``"0.5, 0, 0.8660254"``.

Every syntax error raises :class:`twotime.exceptions.ParseError` with the
1-based column of the offending character.
"""
import math
import re

import six

from twotime.exceptions import ParseError
from twotime.paulis import PauliExpression, BasePauliFactor

NUMBER, WORD, PLUS, MINUS, STAR, COMMA, EOF = 'number', 'word', '+', '-', '*', ',', 'end of input'

_DIGITS = '0123456789'
_number_re = re.compile(r'([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?')
_punctuation = {'+': PLUS, '-': MINUS, '*': STAR, ',': COMMA}


class Token(object):

    def __init__(self, kind, value, position, lexeme=None):
        self.kind = kind
        self.value = value
        self.position = position
        self.lexeme = lexeme if lexeme is not None else value

    def __repr__(self):
        return 'Token({}, {!r}, {})'.format(self.kind, self.value, self.position)


class Lexer(object):
    """ splits text into tokens, positions are 1-based columns """

    def __init__(self, text):
        if not isinstance(text, six.string_types):
            raise ParseError('expected text, got {}'.format(type(text).__name__), 1)
        self.text = text

    def tokens(self):
        text = self.text
        letters = BasePauliFactor.symbols()
        i = 0
        while i < len(text):
            c = text[i]
            if c.isspace():
                i += 1
            elif c in _punctuation:
                yield Token(_punctuation[c], c, i + 1)
                i += 1
            elif c in _DIGITS or c == '.':
                m = _number_re.match(text, i)
                if m is None:
                    raise ParseError("malformed number '{}'".format(c), i + 1)
                end = m.end()
                if end < len(text) and text[end] in _DIGITS + '.eE':
                    raise ParseError("malformed number '{}'".format(text[i:end + 1]), i + 1)
                value = float(m.group(0))
                if math.isinf(value):
                    raise ParseError("malformed number '{}' (overflows)".format(m.group(0)), i + 1)
                yield Token(NUMBER, value, i + 1, m.group(0))
                i = end
            elif c in letters:
                j = i
                while j < len(text) and text[j] in letters:
                    j += 1
                yield Token(WORD, text[i:j], i + 1)
                i = j
            else:
                raise ParseError("invalid character '{}'".format(c), i + 1)
        yield Token(EOF, None, len(text) + 1)


class ParserBase(object):

    def __init__(self, text):
        self.text = text
        self.tokens = list(Lexer(text).tokens())
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def advance(self):
        tok = self.current
        if tok.kind != EOF:
            self.index += 1
        return tok

    def peek(self, *kinds):
        return self.current.kind in kinds

    def match(self, kind, what=None):
        if not self.peek(kind):
            tok = self.current
            found = tok.kind if tok.lexeme is None else "'{}'".format(tok.lexeme)
            raise ParseError('expected {}, found {}'.format(what or kind, found), tok.position)
        return self.advance()

    def match_eof(self):
        if not self.peek(EOF):
            tok = self.current
            raise ParseError("unexpected '{}'".format(tok.lexeme), tok.position)

    def parse_sign(self):
        if self.peek(PLUS, MINUS):
            return -1.0 if self.advance().kind == MINUS else 1.0
        return 1.0


class ObservableParser(ParserBase):

    def __init__(self, text):
        super(ObservableParser, self).__init__(text)
        self.n = None

    def parse(self):
        if self.peek(EOF):
            raise ParseError('empty input', 1)
        terms = [self.parse_term(1.0)]
        while self.peek(PLUS, MINUS):
            sign = -1.0 if self.advance().kind == MINUS else 1.0
            terms.append(self.parse_term(sign))
        self.match_eof()
        merged = {}
        for coeff, word, position in terms:
            merged[word] = merged.get(word, 0.0) + coeff
            if math.isinf(merged[word]):
                raise ParseError("coefficient of '{}' overflows".format(word), position)
        return PauliExpression((c, w) for c, w, _ in terms)

    def parse_term(self, sign):
        sign *= self.parse_sign()
        coeff = 1.0
        if self.peek(NUMBER):
            coeff = self.advance().value
            self.match(STAR, "'*' after coefficient")
        word = self.match(WORD, 'pauli word')
        if self.n is None:
            self.n = len(word.value)
        elif len(word.value) != self.n:
            raise ParseError('mixed word lengths ({} vs {})'.format(self.n, len(word.value)), word.position)
        return sign * coeff, word.value, word.position


class VectorParser(ParserBase):

    arity = 3

    def parse(self):
        if self.peek(EOF):
            raise ParseError('empty input', 1)
        values = [self.parse_component()]
        while self.peek(COMMA):
            self.advance()
            values.append(self.parse_component())
        self.match_eof()
        if len(values) != self.arity:
            raise ParseError('wrong arity: expected {} components, got {}'.format(self.arity, len(values)),
                             self.current.position)
        return tuple(values)

    def parse_component(self):
        sign = self.parse_sign()
        return sign * self.match(NUMBER, 'number').value


def parse_observable(text):
    """
    :type text: str
    :rtype: twotime.paulis.PauliExpression
    """
    return ObservableParser(text).parse()


def parse_vector3(text):
    """
    :type text: str
    :rtype: tuple of 3 floats
    """
    return VectorParser(text).parse()
