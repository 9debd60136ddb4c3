"""
Tokenizer shared by the commutative, Laurent and noncommutative parsers.
"""
import re
from dataclasses import dataclass
from typing import List, Optional

from app.exceptions import PolynomialSyntaxError

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<number>\d+(?:\s*/\s*\d+)?)
    | (?P<name>[A-Za-z](?:_\d+)?(?:\s*\[\s*\d+\s*,\s*\d+\s*\])?)
    | (?P<op>[-+*^.()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise PolynomialSyntaxError(f"Unexpected character {text[position]!r}", position)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, re.sub(r"\s+", "", match.group()), position))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class TokenStream:
    """Cursor over a token list with one-token lookahead."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "end":
            self.index += 1
        return token

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        token = self.peek()
        if token.kind == kind and (text is None or token.text == text):
            return self.advance()
        return None

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        token = self.accept(kind, text)
        if token is None:
            found = self.peek()
            wanted = text or kind
            shown = found.text or "end of input"
            raise PolynomialSyntaxError(f"Expected {wanted!r}, found {shown!r}", found.position)
        return token

    def integer(self) -> int:
        token = self.expect("number")
        if "/" in token.text:
            raise PolynomialSyntaxError("Expected an integer exponent", token.position)
        return int(token.text)
