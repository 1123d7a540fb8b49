"""A small C tokenizer that keeps offsets and groups preprocessor directives.

The output is a flat stream of :class:`Token` and :class:`Directive` items in
source order. Comments are dropped. Backslash-newline splices are treated as
whitespace, so a directive runs until the first unspliced newline.
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field

C_KEYWORDS = frozenset(
    """auto break case char const continue default do double else enum extern
    float for goto if inline int long register restrict return short signed
    sizeof static struct switch typedef union unsigned void volatile while
    _Bool _Complex _Imaginary _Alignas _Alignof _Atomic _Generic _Noreturn
    _Static_assert _Thread_local __inline __inline__ __restrict __restrict__
    __const __volatile__ __extension__ __attribute__ __declspec __asm__ __asm
    asm defined""".split()
)

_TOKEN_RE = re.compile(
    r"""
    (?P<splice>\\\r?\n)
  | (?P<nl>\r?\n)
  | (?P<ws>[ \t\f\v\r]+)
  | (?P<lcomment>//(?:[^\n\\]|\\.|\\\n)*)
  | (?P<bcomment>/\*.*?(?:\*/|\Z))
  | (?P<string>L?"(?:\\.|[^"\\\n])*")
  | (?P<char>L?'(?:\\.|[^'\\\n])*')
  | (?P<ident>[A-Za-z_]\w*)
  | (?P<number>\.?\d(?:[eEpP][+-]|[\w.])*)
  | (?P<punct>\.\.\.|->|\+\+|--|<<=|>>=|<<|>>|<=|>=|==|!=|&&|\|\||\#\#|[-+*/%&|^!=<>]=|.)
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, number, string, char, punct
    text: str
    start: int
    end: int


@dataclass
class Directive:
    name: str  # "define", "include", "if", ... ; "" for a null directive
    tokens: list[Token] = field(default_factory=list)  # tokens after the name
    start: int = 0
    end: int = 0
    name_end: int = 0

    @property
    def body(self) -> str:
        return " ".join(t.text for t in self.tokens)


class LineIndex:
    """Maps character offsets to 1-based line numbers."""

    def __init__(self, text: str):
        self._nl = [m.start() for m in re.finditer("\n", text)]

    def line(self, offset: int) -> int:
        return bisect.bisect_left(self._nl, offset) + 1


def tokenize(text: str) -> list[Token]:
    out = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind in ("ws", "splice", "lcomment", "bcomment"):
            continue
        out.append(Token(kind, m.group(), m.start(), m.end()))
    return out


def scan(text: str) -> list[Token | Directive]:
    """Tokenize, folding each ``#`` line into a single Directive item."""
    items: list[Token | Directive] = []
    at_line_start = True
    directive: Directive | None = None
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "nl":
            if directive is not None:
                items.append(directive)
                directive = None
            at_line_start = True
            continue
        if kind in ("ws", "splice", "lcomment", "bcomment"):
            continue
        tok = Token(kind, m.group(), m.start(), m.end())
        if directive is not None:
            if not directive.name and not directive.tokens and tok.kind == "ident":
                directive.name = tok.text
                directive.name_end = tok.end
            else:
                directive.tokens.append(tok)
            directive.end = tok.end
            continue
        if at_line_start and tok.text == "#":
            directive = Directive(name="", start=tok.start, end=tok.end, name_end=tok.end)
            at_line_start = False
            continue
        at_line_start = False
        items.append(tok)
    if directive is not None:
        items.append(directive)
    return items
