"""Lexer-level method extraction for Java sources.

No grammar is involved: the source is tokenized (comments dropped, string,
text-block and char literals kept as single tokens), then type bodies are
walked member by member with brace/paren matching.  A member that reaches
a ``{`` is classified from the tokens collected since the previous ``;``
or ``}``:

* contains ``=``                   -> field initializer, opaque block
* contains class/interface/enum/record -> nested type, walked recursively
* ends with ``name(...) [throws ...]`` -> method or constructor
* anything else                    -> initializer block, opaque

Method bodies are everything between the braces, including lambdas and
anonymous classes.  Annotations stay in the non-method region.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import JavaSyntaxError, UndecodableSource

__all__ = [
    "Token",
    "MethodRecord",
    "ClassSnapshot",
    "tokenize",
    "extract",
    "extract_bytes",
    "decode_source",
    "count_test_methods",
]


@dataclass(frozen=True, slots=True)
class Token:
    text: str
    line: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<line_comment>//[^\n]*)
  | (?P<block_comment>/\*.*?\*/)
  | (?P<text_block>\"\"\"(?:\\.|[^\\])*?\"\"\")
  | (?P<string>"(?:\\.|[^"\\\n])*")
  | (?P<char>'(?:\\.|[^'\\\n])+')
  | (?P<ident>(?:[^\W\d]|\$)(?:\w|\$)*)
  | (?P<number>0[xX](?:[0-9a-fA-F_.]|[pP][+-])*\w*|\.?\d(?:[eE][+-]|[\w.])*)
  | (?P<op>\.\.\.|->|::|\+\+|--|&&|\|\||==|!=|<<=|<<|<=|[-+*/&|^%]=|[^\s])
    """,
    re.VERBOSE | re.DOTALL,
)


def tokenize(source: str) -> list[Token]:
    """Split ``source`` into tokens, dropping whitespace and comments.

    ``>`` is always emitted on its own so that ``List<List<X>>`` and
    ``List<List<X> >`` lex identically.
    """
    tokens: list[Token] = []
    pos, line, n = 0, 1, len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:  # pragma: no cover - the op branch matches any char
            raise JavaSyntaxError(f"cannot lex at line {line}")
        kind = m.lastgroup
        text = m.group()
        if kind == "op":
            if text == "/" and source.startswith("/*", pos):
                raise JavaSyntaxError(f"unterminated comment at line {line}", "unterminated-comment")
            if text in ('"', "'"):
                raise JavaSyntaxError(f"unterminated literal at line {line}", "unterminated-literal")
        if kind not in ("ws", "line_comment", "block_comment"):
            tokens.append(Token(text, line))
        line += text.count("\n")
        pos = m.end()
    return tokens


MODIFIERS = frozenset(
    {
        "public", "protected", "private", "static", "final", "abstract",
        "synchronized", "native", "strictfp", "default", "transient",
        "volatile", "sealed",
    }
)
TYPE_KEYWORDS = frozenset({"class", "interface", "enum", "record"})
NOT_METHOD_NAMES = frozenset(
    {"if", "for", "while", "switch", "catch", "synchronized", "try", "new", "return", "throw", "else", "do"}
)


@dataclass(frozen=True)
class MethodRecord:
    name: str
    param_arity: int
    param_types: tuple[str, ...]
    body_span: tuple[int, int]
    normalized_body: str
    is_constructor: bool = False
    annotations: tuple[str, ...] = ()
    owner: str = ""

    @property
    def key(self) -> tuple:
        """Matching key across releases; ``owner`` separates nested types."""
        return (self.owner, self.name, self.param_arity, self.param_types)

    @property
    def is_annotated_test(self) -> bool:
        return any(a == "Test" or a.endswith(".Test") for a in self.annotations)


@dataclass
class ClassSnapshot:
    path: str
    release: str
    methods: list[MethodRecord] = field(default_factory=list)
    non_method_normalized: str = ""
    type_names: list[str] = field(default_factory=list)


class _Group:
    """A balanced ``( ... )`` run collected while scanning a member header."""

    __slots__ = ("tokens",)

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens


def _is_ident(item) -> bool:
    return isinstance(item, Token) and (item.text[0].isalpha() or item.text[0] in "_$")


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0
        self.outside: list[str] = []
        self.methods: list[MethodRecord] = []
        self.type_names: list[str] = []

    def _peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _take(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def _paren_group(self) -> _Group:
        start = self._take()
        group = [start]
        depth = 1
        while depth:
            tok = self._peek()
            if tok is None:
                raise JavaSyntaxError(f"unbalanced parentheses opened at line {start.line}")
            self.i += 1
            group.append(tok)
            if tok.text == "(":
                depth += 1
            elif tok.text == ")":
                depth -= 1
        self.outside.extend(t.text for t in group)
        return _Group(group)

    def _brace_block(self) -> tuple[Token, list[Token], Token]:
        """Consume ``{ ... }``; return open brace, inner tokens, close brace."""
        open_tok = self._take()
        inner: list[Token] = []
        depth = 1
        while True:
            tok = self._peek()
            if tok is None:
                raise JavaSyntaxError(f"unbalanced braces opened at line {open_tok.line}")
            self.i += 1
            if tok.text == "{":
                depth += 1
            elif tok.text == "}":
                depth -= 1
                if depth == 0:
                    return open_tok, inner, tok
            inner.append(tok)

    def _opaque_block(self) -> None:
        open_tok, inner, close_tok = self._brace_block()
        self.outside.append(open_tok.text)
        self.outside.extend(t.text for t in inner)
        self.outside.append(close_tok.text)

    def parse(self) -> None:
        self._members(owner="", enum=False, top=True)

    def _members(self, owner: str, enum: bool, top: bool) -> None:
        member: list = []
        in_constants = enum
        while True:
            tok = self._peek()
            if tok is None:
                if top:
                    return
                raise JavaSyntaxError(f"unterminated body of {owner or 'type'}")
            text = tok.text
            if text == "}":
                if top:
                    raise JavaSyntaxError(f"stray '}}' at line {tok.line}")
                return
            if text == ";":
                self.i += 1
                self.outside.append(text)
                member = []
                in_constants = False
            elif text == "," and in_constants:
                self.i += 1
                self.outside.append(text)
                member = []
            elif text == "(":
                member.append(self._paren_group())
            elif text == ")":
                raise JavaSyntaxError(f"unbalanced ')' at line {tok.line}")
            elif text == "{":
                if in_constants:
                    self._enum_constant_body(member, owner)
                    member = []
                elif self._member_block(member, owner):
                    member = []
            else:
                self.i += 1
                self.outside.append(text)
                member.append(tok)

    def _member_block(self, member: list, owner: str) -> bool:
        """Handle a ``{`` ending ``member``.  Returns True if the member is done."""
        core, annotations = _strip_annotations(member)
        texts = [x.text if isinstance(x, Token) else None for x in core]
        if "=" in texts:
            self._opaque_block()
            return False
        for k, t in enumerate(texts):
            if t in TYPE_KEYWORDS and k + 1 < len(core) and _is_ident(core[k + 1]):
                if t == "record" and not (
                    k + 2 < len(core) and (isinstance(core[k + 2], _Group) or texts[k + 2] == "<")
                ):
                    continue
                name = core[k + 1].text
                self._nested_type(f"{owner}.{name}" if owner else name, enum=(t == "enum"))
                return True
        header = _method_header(core)
        if header is None:
            self._opaque_block()
            return True
        name, group, pre = header
        open_tok, inner, close_tok = self._brace_block()
        self.outside.append(open_tok.text)
        self.outside.append(close_tok.text)
        types = _param_types(group.tokens[1:-1])
        self.methods.append(
            MethodRecord(
                name=name.text,
                param_arity=len(types),
                param_types=tuple(types),
                body_span=(open_tok.line, close_tok.line),
                normalized_body=" ".join(t.text for t in inner),
                is_constructor=_is_constructor(pre),
                annotations=tuple(annotations),
                owner=owner,
            )
        )
        return True

    def _nested_type(self, qualified: str, enum: bool) -> None:
        self.type_names.append(qualified)
        self.outside.append(self._take().text)
        self._members(owner=qualified, enum=enum, top=False)
        self.outside.append(self._take().text)

    def _enum_constant_body(self, member: list, owner: str) -> None:
        core, _ = _strip_annotations(member)
        idents = [x for x in core if _is_ident(x)]
        name = idents[0].text if idents else "?"
        self._nested_type(f"{owner}.{name}", enum=False)


def _strip_annotations(member: list) -> tuple[list, list[str]]:
    core: list = []
    names: list[str] = []
    k, n = 0, len(member)
    while k < n:
        item = member[k]
        if isinstance(item, Token) and item.text == "@" and k + 1 < n and _is_ident(member[k + 1]):
            if member[k + 1].text == "interface":
                core.append(Token("interface", member[k + 1].line))
                k += 2
                continue
            parts = [member[k + 1].text]
            k += 2
            while (
                k + 1 < n
                and isinstance(member[k], Token)
                and member[k].text == "."
                and _is_ident(member[k + 1])
            ):
                parts.append(member[k + 1].text)
                k += 2
            if k < n and isinstance(member[k], _Group):
                k += 1
            names.append(".".join(parts))
            continue
        core.append(item)
        k += 1
    return core, names


def _method_header(core: list):
    """Return (name token, params group, tokens before name) or None."""
    for j in range(len(core) - 1, 0, -1):
        if isinstance(core[j], _Group):
            break
    else:
        return None
    name = core[j - 1]
    if not _is_ident(name) or name.text in NOT_METHOD_NAMES:
        return None
    tail = core[j + 1 :]
    if tail:
        if not all(isinstance(x, Token) for x in tail):
            return None
        if tail[0].text == "throws":
            pass
        elif not all(x.text in "[]" for x in tail):
            return None
    return name, core[j], core[: j - 1]


def _is_constructor(pre: list) -> bool:
    depth = 0
    for item in pre:
        if not isinstance(item, Token):
            return False
        if item.text == "<":
            depth += 1
        elif item.text == ">":
            depth -= 1
        elif depth == 0 and item.text not in MODIFIERS:
            return False
    return True


def _split_top_level(tokens: list[Token]) -> list[list[Token]]:
    parts: list[list[Token]] = [[]]
    depth = 0
    for tok in tokens:
        if tok.text in ("<", "(", "[", "{"):
            depth += 1
        elif tok.text in (">", ")", "]", "}"):
            depth -= 1
        if tok.text == "," and depth == 0:
            parts.append([])
        else:
            parts[-1].append(tok)
    return [p for p in parts if p]


def _drop_param_annotations(tokens: list[Token]) -> list[Token]:
    out = []
    i = 0
    while i < len(tokens):
        if tokens[i].text != "@" or i + 1 >= len(tokens) or tokens[i + 1].text == "interface":
            out.append(tokens[i])
            i += 1
            continue
        i += 2
        while i + 1 < len(tokens) and tokens[i].text == ".":
            i += 2
        if i < len(tokens) and tokens[i].text == "(":
            depth = 0
            while i < len(tokens):
                depth += {"(": 1, ")": -1}.get(tokens[i].text, 0)
                i += 1
                if depth == 0:
                    break
    return out


def _param_types(tokens: list[Token]) -> list[str]:
    types = []
    for param in _split_top_level(tokens):
        core = [t for t in _drop_param_annotations(param) if t.text != "final"]
        # legacy "String args[]": dims after the name belong to the type
        dims = ""
        while len(core) >= 2 and core[-1].text == "]" and core[-2].text == "[":
            dims += "[]"
            core = core[:-2]
        type_toks = core[:-1] if len(core) > 1 else core
        types.append(_erase_generics(type_toks) + dims)
    return types


def _erase_generics(tokens: list[Token]) -> str:
    out = []
    depth = 0
    for tok in tokens:
        if tok.text == "<":
            depth += 1
        elif tok.text == ">":
            depth -= 1
        elif depth == 0:
            out.append(tok.text)
    return "".join(out)


def decode_source(data: bytes) -> str:
    """UTF-8 with a latin-1 fallback; NUL bytes mean the blob is not source."""
    if b"\x00" in data:
        raise UndecodableSource("binary content")
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        return data.decode("latin-1")


def extract(source: str, path: str = "", release: str = "") -> ClassSnapshot:
    """Extract every method with a brace-delimited body from ``source``.

    Raises :class:`JavaSyntaxError` on unbalanced braces/parens or an
    unterminated comment or literal.
    """
    parser = _Parser(tokenize(source))
    parser.parse()
    return ClassSnapshot(
        path=path,
        release=release,
        methods=parser.methods,
        non_method_normalized=" ".join(parser.outside),
        type_names=parser.type_names,
    )


def extract_bytes(data: bytes, path: str = "", release: str = "") -> ClassSnapshot:
    return extract(decode_source(data), path, release)


def count_test_methods(snapshot: ClassSnapshot, annotated_only: bool = False) -> int:
    """Number of non-constructor methods (optionally only ``@Test`` ones)."""
    return sum(
        1
        for m in snapshot.methods
        if not m.is_constructor and (m.is_annotated_test or not annotated_only)
    )
