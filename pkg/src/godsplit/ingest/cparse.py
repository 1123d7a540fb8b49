"""Top-level declaration extraction from C header text.

Only top-level items become elements: macros, struct/union/enum definitions,
typedefs, variable declarations and function declarations (inline
definitions included). Every branch of a conditional block is kept; each
element records the conjunction of the conditions it appeared under so that
emitted sub-headers can re-wrap it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .lexer import C_KEYWORDS, Directive, LineIndex, Token, scan

_TAGS = {"struct", "union", "enum"}
_SKIPPED_GROUPS = {"__attribute__", "__declspec", "__asm__", "__asm", "asm", "_Alignas", "__typeof__"}
_INCLUDE_RE = re.compile(r'\s*(?:"([^"]*)"|<([^>]*)>)')


@dataclass
class RawElement:
    name: str
    kind: str
    start: int  # char offsets into the header text; end is exclusive
    end: int
    first_line: int
    last_line: int
    extra_names: tuple[str, ...] = ()
    referenced: frozenset[str] = frozenset()
    condition: str = ""


@dataclass
class IncludeDirective:
    target: str
    angled: bool
    line: int
    start: int
    end: int
    condition: str = ""

    @property
    def literal(self) -> str:
        return f"<{self.target}>" if self.angled else f'"{self.target}"'


@dataclass
class ParseResult:
    elements: list[RawElement] = field(default_factory=list)
    includes: list[IncludeDirective] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    guard: str | None = None
    identifiers: frozenset[str] = frozenset()


@dataclass
class _Frame:
    guard: bool
    prior: list[str]  # raw conditions of earlier branches
    current: str
    raw: str = ""

    def __post_init__(self):
        self.raw = self.current


def _joined(toks: list[Token]) -> str:
    out = []
    prev = None
    for t in toks:
        if prev is not None and t.start > prev.end:
            out.append(" ")
        out.append(t.text)
        prev = t
    return "".join(out)


def _cond_of(d: Directive) -> str:
    body = _joined(d.tokens)
    if d.name == "ifdef":
        return f"defined({body})"
    if d.name == "ifndef":
        return f"!defined({body})"
    return f"({body})"


def _negate(conds: list[str]) -> list[str]:
    return [c[1:] if c.startswith("!defined(") else f"!{c}" for c in conds]


def _detect_guard(items) -> str | None:
    directives = [(k, it) for k, it in enumerate(items) if isinstance(it, Directive)]
    if len(directives) < 3:
        return None
    (k0, first), (k1, second) = directives[0], directives[1]
    if k0 != 0 or k1 != 1 or first.name != "ifndef" or len(first.tokens) != 1:
        return None
    if second.name != "define" or [t.text for t in second.tokens] != [first.tokens[0].text]:
        return None
    depth = 0
    for k, d in directives:
        if d.name in ("if", "ifdef", "ifndef"):
            depth += 1
        elif d.name == "endif":
            depth -= 1
            if depth == 0:
                return first.tokens[0].text if k == len(items) - 1 else None
    return None


def _strip_groups(toks: list[Token]) -> list[Token]:
    """Drop attribute-like keyword groups such as ``__attribute__((x))``."""
    out: list[Token] = []
    k = 0
    while k < len(toks):
        t = toks[k]
        if t.text in _SKIPPED_GROUPS and k + 1 < len(toks) and toks[k + 1].text == "(":
            depth = 0
            k += 1
            while k < len(toks):
                if toks[k].text == "(":
                    depth += 1
                elif toks[k].text == ")":
                    depth -= 1
                    if depth == 0:
                        break
                k += 1
            k += 1
            continue
        out.append(t)
        k += 1
    return out


def _split_top(toks: list[Token]):
    """Split out brace bodies and top-level comma-separated segments.

    Returns (segments, bodies) where segments is a list of token lists with
    brace groups replaced by a single ``{}`` placeholder token.
    """
    segments: list[list[Token]] = [[]]
    bodies: list[list[Token]] = []
    depth = 0
    paren = 0
    body: list[Token] = []
    for t in toks:
        if depth:
            if t.text == "{":
                depth += 1
            elif t.text == "}":
                depth -= 1
                if depth == 0:
                    bodies.append(body)
                    body = []
                    segments[-1].append(Token("punct", "{}", t.start, t.end))
                    continue
            body.append(t)
            continue
        if t.text == "{":
            depth = 1
            continue
        if t.text in "([":
            paren += 1
        elif t.text in ")]":
            paren -= 1
        if t.text == "," and paren == 0:
            segments.append([])
            continue
        if t.text == "=" and paren == 0:
            # initializers carry no declarator names; mark and keep scanning
            segments[-1].append(t)
            continue
        segments[-1].append(t)
    return segments, bodies


def _declarator_name(seg: list[Token]) -> tuple[str | None, bool]:
    """Name declared by one declarator segment and whether it is a function."""
    # cut at an initializer or bit-field width
    cut = len(seg)
    depth = 0
    for k, t in enumerate(seg):
        if t.text in "([":
            depth += 1
        elif t.text in ")]":
            depth -= 1
        elif depth == 0 and t.text in ("=", ":"):
            cut = k
            break
    seg = seg[:cut]
    # function pointer style: first paren group opening with * or ^
    for k, t in enumerate(seg):
        if t.text == "(" and k + 1 < len(seg) and seg[k + 1].text in ("*", "^"):
            for j in range(k + 1, len(seg)):
                u = seg[j]
                if u.kind == "ident" and u.text not in C_KEYWORDS:
                    return u.text, j + 1 < len(seg) and seg[j + 1].text == "("
            break
        if t.text == "(":
            break
    last = None
    for k, t in enumerate(seg):
        if t.text in ("(", "["):
            if last is not None:
                return last, t.text == "("
            return None, False
        if t.kind == "ident" and t.text not in C_KEYWORDS:
            last = t.text
    return last, False


def _enumerators(body: list[Token]) -> list[str]:
    names = []
    expect = True
    depth = 0
    for t in body:
        if t.text in "([{":
            depth += 1
        elif t.text in ")]}":
            depth -= 1
        elif t.text == "," and depth == 0:
            expect = True
            continue
        if expect and t.kind == "ident":
            names.append(t.text)
        if t.text != ",":
            expect = False
    return names


def classify(toks: list[Token]) -> tuple[str, str, tuple[str, ...]] | None:
    """Return (kind, name, extra_names) for a completed top-level declaration."""
    toks = _strip_groups(toks)
    if not toks:
        return None
    is_typedef = any(t.text == "typedef" for t in toks[:1]) or (
        toks[0].text in ("extern", "static") and len(toks) > 1 and toks[1].text == "typedef"
    )
    segments, bodies = _split_top(toks)
    first = segments[0]
    tag_pos = next((k for k, t in enumerate(first) if t.text in _TAGS), None)
    tag_kind = tag_name = None
    has_body = False
    rest_first = first
    if tag_pos is not None and all(
        t.text in C_KEYWORDS or t.text == "typedef" for t in first[:tag_pos]
    ):
        tag_kind = first[tag_pos].text
        k = tag_pos + 1
        if k < len(first) and first[k].kind == "ident":
            tag_name = first[k].text
            k += 1
        if k < len(first) and first[k].text == "{}":
            has_body = True
            k += 1
        rest_first = [Token("ident", "int", 0, 0)] + first[k:] if k < len(first) else []
    extra: list[str] = []
    if tag_kind == "enum" and has_body and bodies:
        extra.extend(_enumerators(bodies[0]))
    declarators: list[tuple[str, bool]] = []
    for seg in [rest_first] + segments[1:]:
        if not seg:
            continue
        name, is_fn = _declarator_name(seg)
        if name is not None:
            declarators.append((name, is_fn))
    if is_typedef:
        if not declarators:
            return None
        names = [n for n, _ in declarators]
        if tag_name:
            names.append(tag_name)
        return "typedef", names[0], tuple(names[1:] + extra)
    if tag_kind and (has_body or not declarators):
        name = tag_name
        if name is None:
            if declarators:
                name = declarators[0][0]
                declarators = declarators[1:]
            elif extra:
                name, extra = extra[0], extra[1:]
            else:
                return None
        return tag_kind, name, tuple([n for n, _ in declarators] + extra)
    if not declarators:
        return None
    name, is_fn = declarators[0]
    kind = "function_decl" if is_fn else "variable_decl"
    return kind, name, tuple(n for n, _ in declarators[1:])


def _identifiers(toks) -> set[str]:
    return {t.text for t in toks if t.kind == "ident" and t.text not in C_KEYWORDS}


def parse_text(text: str) -> ParseResult:
    """Parse header (or source) text into top-level elements and includes."""
    res = ParseResult()
    lines = LineIndex(text)
    items = scan(text)
    idents = set()
    for it in items:
        if isinstance(it, Token):
            if it.kind == "ident":
                idents.add(it.text)
        elif it.name not in ("include", "include_next"):
            idents.update(t.text for t in it.tokens if t.kind == "ident")
    res.identifiers = frozenset(idents)
    guard = _detect_guard(items)
    res.guard = guard

    frames: list[_Frame] = []
    cur: list[Token] = []
    cur_start_depth = 0
    cur_cond = ""
    cur_broken = False
    brace = paren = 0
    transparent = 0
    skip_to_depth: int | None = None
    fn_like = False

    def condition() -> str:
        parts = [f.current for f in frames if not f.guard]
        return " && ".join(parts)

    def finish(end_tok: Token) -> None:
        nonlocal cur, brace, paren, cur_broken, fn_like
        toks = cur
        cur, brace, paren, fn_like = [], 0, 0, False
        if cur_broken:
            cur_broken = False
            res.diagnostics.append(
                f"line {lines.line(toks[0].start)}: unbalanced declaration skipped"
            )
            return
        body = toks[:-1] if end_tok.text == ";" else toks
        got = classify(body)
        if got is None:
            if any(t.kind == "ident" for t in body):
                res.diagnostics.append(
                    f"line {lines.line(toks[0].start)}: unrecognised declaration skipped"
                )
            return
        kind, name, extra = got
        declared = {name, *extra}
        res.elements.append(
            RawElement(
                name=name, kind=kind, start=toks[0].start, end=end_tok.end,
                first_line=lines.line(toks[0].start), last_line=lines.line(end_tok.end - 1),
                extra_names=tuple(dict.fromkeys(e for e in extra if e != name)),
                referenced=frozenset(_identifiers(_strip_groups(toks)) - declared),
                condition=cur_cond,
            )
        )

    def abandon(reason: str) -> None:
        nonlocal cur, brace, paren, cur_broken, fn_like
        if cur:
            res.diagnostics.append(f"line {lines.line(cur[0].start)}: {reason}")
        cur, brace, paren, cur_broken, fn_like = [], 0, 0, False, False

    for item in items:
        if isinstance(item, Directive):
            d = item
            if skip_to_depth is not None:
                if d.name in ("if", "ifdef", "ifndef"):
                    frames.append(_Frame(False, [], ""))
                elif d.name == "endif" and frames:
                    frames.pop()
                    if len(frames) <= skip_to_depth:
                        skip_to_depth = None
                continue
            if d.name in ("if", "ifdef", "ifndef"):
                is_guard = guard is not None and not frames and d.name == "ifndef" and _joined(d.tokens) == guard
                frames.append(_Frame(is_guard, [], _cond_of(d)))
                continue
            if d.name in ("elif", "else", "endif"):
                if not frames:
                    res.diagnostics.append(f"line {lines.line(d.start)}: stray #{d.name}")
                    continue
                if cur and len(frames) <= cur_start_depth:
                    # the declaration straddles a branch boundary of an enclosing block
                    abandon("declaration split across conditional branches skipped")
                    if d.name in ("elif", "else"):
                        skip_to_depth = len(frames) - 1
                        continue
                frame = frames[-1]
                if d.name == "endif":
                    frames.pop()
                    continue
                frame.prior.append(frame.raw)
                negs = _negate(frame.prior)
                if d.name == "elif":
                    frame.raw = _cond_of(d)
                    frame.current = " && ".join(negs + [frame.raw])
                else:
                    frame.raw = ""
                    frame.current = " && ".join(negs)
                continue
            if cur:
                continue  # directive inside a declaration stays verbatim in its text
            if d.name == "define" and d.tokens:
                name_tok = d.tokens[0]
                if guard is not None and name_tok.text == guard and len(d.tokens) == 1:
                    continue
                rest = d.tokens[1:]
                params: set[str] = set()
                if rest and rest[0].text == "(" and rest[0].start == name_tok.end:
                    k = 1
                    while k < len(rest) and rest[k].text != ")":
                        if rest[k].kind == "ident":
                            params.add(rest[k].text)
                        k += 1
                    rest = rest[k + 1:]
                res.elements.append(
                    RawElement(
                        name=name_tok.text, kind="macro", start=d.start, end=d.end,
                        first_line=lines.line(d.start), last_line=lines.line(d.end - 1),
                        referenced=frozenset(_identifiers(rest) - params - {name_tok.text}),
                        condition=condition(),
                    )
                )
            elif d.name in ("include", "include_next"):
                raw = text[d.name_end:d.end]
                m = _INCLUDE_RE.match(raw)
                if m:
                    res.includes.append(
                        IncludeDirective(
                            target=m.group(1) if m.group(1) is not None else m.group(2),
                            angled=m.group(1) is None, line=lines.line(d.start),
                            start=d.start, end=d.end, condition=condition(),
                        )
                    )
                else:
                    res.diagnostics.append(f"line {lines.line(d.start)}: computed include ignored")
            continue

        tok = item
        if skip_to_depth is not None:
            continue
        if not cur:
            if tok.text == "}" and transparent:
                transparent -= 1
                continue
            if tok.text == ";":
                continue
            if tok.text == "}":
                res.diagnostics.append(f"line {lines.line(tok.start)}: stray '}}'")
                continue
            cur_start_depth = len(frames)
            cur_cond = condition()
        if tok.text == "{" and brace == 0 and paren == 0 and len(cur) == 2 \
                and cur[0].text == "extern" and cur[1].kind == "string":
            cur = []
            transparent += 1
            continue
        cur.append(tok)
        if tok.text in "([":
            paren += 1
        elif tok.text in ")]":
            paren -= 1
            if paren < 0:
                cur_broken = True
                paren = 0
        elif tok.text == "{":
            if brace == 0 and paren == 0:
                fn_like = _looks_like_function(cur[:-1])
            brace += 1
        elif tok.text == "}":
            brace -= 1
            if brace == 0 and paren == 0 and fn_like:
                finish(tok)
        elif tok.text == ";" and brace == 0 and paren == 0:
            finish(tok)
    if cur:
        abandon("unterminated declaration at end of file")
    if frames and any(not f.guard for f in frames):
        res.diagnostics.append("unterminated conditional block")
    return res


def _looks_like_function(head: list[Token]) -> bool:
    """True when ``head {`` opens a function body rather than a type or initializer."""
    head = _strip_groups(head)
    if not head or head[-1].text != ")":
        return False
    return not any(t.text in ("=", "typedef") for t in head)
