"""Turtle subset parser and deterministic serializer.

Supported syntax: @prefix directives, prefixed names, <absolute IRIs>,
blank node labels and [...] property lists, ( ... ) collections, quoted
literals with ^^datatype or @language, numeric/boolean shorthand, the `a`
keyword, `,` and `;` abbreviations, and # comments.

The serializer is a pure function of graph content: blanks are relabeled
canonically, subjects and objects are sorted by rendered form, predicates
sorted with `a` first, prefixes emitted alphabetically. Reparsing the
output yields the same graph up to blank relabeling.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ontoform import vocab
from ontoform.errors import OntoformError
from ontoform.graph import Graph, term_sort_key
from ontoform.terms import BlankNode, Iri, Literal, Term, Triple


class ErrorKind(enum.Enum):
    LEXICAL = "Lexical"
    SYNTAX = "Syntax"
    UNDEFINED_PREFIX = "UndefinedPrefix"
    BAD_IRI = "BadIri"
    BAD_LITERAL = "BadLiteral"


class ParseError(OntoformError):
    """Parse failure at a 1-based line/column position."""

    def __init__(self, line: int, column: int, message: str, kind: ErrorKind):
        self.line = line
        self.column = column
        self.message = message
        self.kind = kind
        super().__init__(f"line {line}, column {column}: {message} [{kind.value}]")


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

class _T(enum.Enum):
    IRIREF = enum.auto()
    PNAME = enum.auto()       # value: (prefix, local)
    BLANK = enum.auto()       # value: label
    STRING = enum.auto()
    LANGTAG = enum.auto()
    NUMBER = enum.auto()      # value: (lexical, datatype iri)
    BOOLEAN = enum.auto()
    A = enum.auto()
    PREFIX_DIRECTIVE = enum.auto()
    DOT = enum.auto()
    SEMICOLON = enum.auto()
    COMMA = enum.auto()
    LBRACKET = enum.auto()
    RBRACKET = enum.auto()
    LPAREN = enum.auto()
    RPAREN = enum.auto()
    CARETS = enum.auto()      # ^^
    EOF = enum.auto()


@dataclass(frozen=True)
class _Token:
    kind: _T
    value: object
    line: int
    col: int


_STRING_ESCAPES = {
    "t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
    '"': '"', "'": "'", "\\": "\\",
}

_IRI_SCHEME_CHARS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+.-"


def _is_local_char(c: str) -> bool:
    return c.isalnum() or c in "_-."


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str, kind: ErrorKind, line: int | None = None, col: int | None = None) -> ParseError:
        return ParseError(line or self.line, col or self.col, message, kind)

    def _peek(self, ahead: int = 0) -> str:
        i = self.pos + ahead
        return self.text[i] if i < len(self.text) else ""

    def _advance(self) -> str:
        c = self.text[self.pos]
        self.pos += 1
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return c

    def _skip_space_and_comments(self) -> None:
        while self.pos < len(self.text):
            c = self._peek()
            if c in " \t\r\n":
                self._advance()
            elif c == "#":
                while self.pos < len(self.text) and self._peek() != "\n":
                    self._advance()
            else:
                return

    def tokens(self) -> list[_Token]:
        out = []
        while True:
            tok = self._next()
            out.append(tok)
            if tok.kind is _T.EOF:
                return out

    def _next(self) -> _Token:
        self._skip_space_and_comments()
        line, col = self.line, self.col
        if self.pos >= len(self.text):
            return _Token(_T.EOF, None, line, col)
        c = self._peek()

        if c == "<":
            return self._iri(line, col)
        if c == '"':
            return self._string(line, col)
        if c == "@":
            return self._at_word(line, col)
        if c == "_" and self._peek(1) == ":":
            return self._blank(line, col)
        if c.isdigit() or (c in "+-" and (self._peek(1).isdigit() or self._peek(1) == ".")):
            return self._number(line, col)
        if c == "." and self._peek(1).isdigit():
            return self._number(line, col)

        single = {
            ".": _T.DOT, ";": _T.SEMICOLON, ",": _T.COMMA,
            "[": _T.LBRACKET, "]": _T.RBRACKET, "(": _T.LPAREN, ")": _T.RPAREN,
        }
        if c in single:
            self._advance()
            return _Token(single[c], c, line, col)
        if c == "^":
            self._advance()
            if self._peek() != "^":
                raise self.error("expected '^^'", ErrorKind.SYNTAX, line, col)
            self._advance()
            return _Token(_T.CARETS, "^^", line, col)

        if c.isalnum() or c == "_" or c == ":":
            return self._word(line, col)

        raise self.error(f"unexpected character {c!r}", ErrorKind.LEXICAL, line, col)

    def _iri(self, line: int, col: int) -> _Token:
        self._advance()  # <
        chars: list[str] = []
        while True:
            if self.pos >= len(self.text) or self._peek() == "\n":
                raise self.error("unterminated IRI", ErrorKind.BAD_IRI, line, col)
            c = self._peek()
            if c == ">":
                self._advance()
                break
            if c in " \t" or c == "<":
                raise self.error(f"character {c!r} not allowed in IRI", ErrorKind.BAD_IRI)
            chars.append(self._advance())
        value = "".join(chars)
        if not value:
            raise self.error("empty IRI", ErrorKind.BAD_IRI, line, col)
        if not _has_scheme(value):
            raise self.error(f"relative IRI not supported: <{value}>", ErrorKind.BAD_IRI, line, col)
        return _Token(_T.IRIREF, value, line, col)

    def _string(self, line: int, col: int) -> _Token:
        self._advance()  # opening quote
        if self._peek() == '"' and self._peek(1) == '"':
            raise self.error("long string literals are not supported", ErrorKind.BAD_LITERAL, line, col)
        chars: list[str] = []
        while True:
            if self.pos >= len(self.text) or self._peek() == "\n":
                raise self.error("unterminated string literal", ErrorKind.LEXICAL, line, col)
            c = self._advance()
            if c == '"':
                break
            if c == "\\":
                eline, ecol = self.line, self.col - 1
                if self.pos >= len(self.text):
                    raise self.error("unterminated escape", ErrorKind.BAD_LITERAL, eline, ecol)
                e = self._advance()
                if e in _STRING_ESCAPES:
                    chars.append(_STRING_ESCAPES[e])
                elif e in ("u", "U"):
                    width = 4 if e == "u" else 8
                    digits = ""
                    for _ in range(width):
                        if self.pos >= len(self.text) or self._peek() not in "0123456789abcdefABCDEF":
                            raise self.error("bad unicode escape", ErrorKind.BAD_LITERAL, eline, ecol)
                        digits += self._advance()
                    chars.append(chr(int(digits, 16)))
                else:
                    raise self.error(f"unknown escape \\{e}", ErrorKind.BAD_LITERAL, eline, ecol)
            else:
                chars.append(c)
        return _Token(_T.STRING, "".join(chars), line, col)

    def _at_word(self, line: int, col: int) -> _Token:
        self._advance()  # @
        word = ""
        while self._peek().isalnum() or self._peek() == "-":
            word += self._advance()
        if word == "prefix":
            return _Token(_T.PREFIX_DIRECTIVE, word, line, col)
        if word == "base":
            raise self.error("@base is not supported", ErrorKind.SYNTAX, line, col)
        if not word or not _valid_langtag(word):
            raise self.error(f"malformed language tag @{word}", ErrorKind.LEXICAL, line, col)
        return _Token(_T.LANGTAG, word, line, col)

    def _blank(self, line: int, col: int) -> _Token:
        self._advance()
        self._advance()  # _:
        label = self._local_part()
        if not label:
            raise self.error("blank node label missing", ErrorKind.SYNTAX, line, col)
        return _Token(_T.BLANK, label, line, col)

    def _number(self, line: int, col: int) -> _Token:
        lex = ""
        if self._peek() in "+-":
            lex += self._advance()
        while self._peek().isdigit():
            lex += self._advance()
        is_decimal = False
        if self._peek() == "." and self._peek(1).isdigit():
            is_decimal = True
            lex += self._advance()
            while self._peek().isdigit():
                lex += self._advance()
        if self._peek() in "eE":
            raise self.error("exponent notation is not supported", ErrorKind.LEXICAL, line, col)
        if not any(c.isdigit() for c in lex):
            raise self.error("malformed number", ErrorKind.LEXICAL, line, col)
        datatype = vocab.XSD_DECIMAL if is_decimal else vocab.XSD_INTEGER
        return _Token(_T.NUMBER, (lex, datatype), line, col)

    def _local_part(self) -> str:
        chars = ""
        while self.pos < len(self.text) and _is_local_char(self._peek()):
            chars += self._advance()
        # a trailing dot is the statement terminator, not part of the name
        while chars.endswith("."):
            chars = chars[:-1]
            self.pos -= 1
            self.col -= 1
        return chars

    def _word(self, line: int, col: int) -> _Token:
        prefix = ""
        while self.pos < len(self.text) and (self._peek().isalnum() or self._peek() in "_-."):
            prefix += self._advance()
        # a trailing dot belongs to the statement, not the word (`true.`)
        while prefix.endswith(".") and self._peek() != ":":
            prefix = prefix[:-1]
            self.pos -= 1
            self.col -= 1
        if self._peek() == ":":
            self._advance()
            local = self._local_part()
            return _Token(_T.PNAME, (prefix, local), line, col)
        if prefix == "a":
            return _Token(_T.A, "a", line, col)
        if prefix in ("true", "false"):
            return _Token(_T.BOOLEAN, prefix, line, col)
        raise self.error(f"unexpected bare word {prefix!r}", ErrorKind.SYNTAX, line, col)


def _has_scheme(iri: str) -> bool:
    head, sep, _ = iri.partition(":")
    return bool(sep) and bool(head) and head[0].isalpha() and all(c in _IRI_SCHEME_CHARS for c in head)


def _valid_langtag(tag: str) -> bool:
    parts = tag.split("-")
    if not parts[0].isalpha():
        return False
    return all(p.isalnum() and p for p in parts)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = _Lexer(text).tokens()
        self.index = 0
        self.graph = Graph()
        self.blanks: dict[str, BlankNode] = {}

    def _peek(self) -> _Token:
        return self.tokens[self.index]

    def _take(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.kind is not _T.EOF:
            self.index += 1
        return tok

    def _expect(self, kind: _T, what: str) -> _Token:
        tok = self._take()
        if tok.kind is not kind:
            raise ParseError(tok.line, tok.col, f"expected {what}", ErrorKind.SYNTAX)
        return tok

    def parse(self) -> Graph:
        while self._peek().kind is not _T.EOF:
            if self._peek().kind is _T.PREFIX_DIRECTIVE:
                self._prefix_directive()
            else:
                self._triples()
        return self.graph

    def _prefix_directive(self) -> None:
        self._take()
        name = self._expect(_T.PNAME, "prefix name")
        prefix, local = name.value
        if local:
            raise ParseError(name.line, name.col, "prefix declaration must end with ':'", ErrorKind.SYNTAX)
        base = self._expect(_T.IRIREF, "IRI")
        self._expect(_T.DOT, "'.'")
        self.graph.bind(prefix, base.value)

    def _triples(self) -> None:
        tok = self._peek()
        if tok.kind is _T.LBRACKET:
            subject = self._blank_property_list()
            if self._peek().kind is not _T.DOT:
                self._predicate_object_list(subject)
        else:
            subject = self._subject()
            self._predicate_object_list(subject)
        self._expect(_T.DOT, "'.'")

    def _subject(self) -> Term:
        tok = self._peek()
        if tok.kind in (_T.IRIREF, _T.PNAME):
            return self._iri_term()
        if tok.kind is _T.BLANK:
            self._take()
            return self._blank_node(tok.value)
        if tok.kind is _T.LPAREN:
            return self._collection()
        if tok.kind in (_T.STRING, _T.NUMBER, _T.BOOLEAN):
            raise ParseError(tok.line, tok.col, "literal not allowed as subject", ErrorKind.SYNTAX)
        raise ParseError(tok.line, tok.col, "expected subject", ErrorKind.SYNTAX)

    def _predicate_object_list(self, subject: Term) -> None:
        while True:
            predicate = self._verb()
            self._object_list(subject, predicate)
            if self._peek().kind is _T.SEMICOLON:
                while self._peek().kind is _T.SEMICOLON:
                    self._take()
                if self._peek().kind in (_T.DOT, _T.RBRACKET, _T.EOF):
                    return
                continue
            return

    def _verb(self) -> Iri:
        tok = self._peek()
        if tok.kind is _T.A:
            self._take()
            return vocab.RDF_TYPE
        if tok.kind in (_T.IRIREF, _T.PNAME):
            return self._iri_term()
        raise ParseError(tok.line, tok.col, "expected predicate", ErrorKind.SYNTAX)

    def _object_list(self, subject: Term, predicate: Iri) -> None:
        while True:
            obj = self._object()
            self.graph.add(Triple(subject, predicate, obj))
            if self._peek().kind is _T.COMMA:
                self._take()
                continue
            return

    def _object(self) -> Term:
        tok = self._peek()
        if tok.kind in (_T.IRIREF, _T.PNAME):
            return self._iri_term()
        if tok.kind is _T.BLANK:
            self._take()
            return self._blank_node(tok.value)
        if tok.kind is _T.LBRACKET:
            return self._blank_property_list()
        if tok.kind is _T.LPAREN:
            return self._collection()
        if tok.kind is _T.STRING:
            return self._literal()
        if tok.kind is _T.NUMBER:
            self._take()
            lexical, datatype = tok.value
            return Literal(lexical, datatype)
        if tok.kind is _T.BOOLEAN:
            self._take()
            return Literal(tok.value, vocab.XSD_BOOLEAN)
        raise ParseError(tok.line, tok.col, "expected object", ErrorKind.SYNTAX)

    def _literal(self) -> Literal:
        tok = self._take()
        nxt = self._peek()
        if nxt.kind is _T.LANGTAG:
            self._take()
            return Literal(tok.value, language=nxt.value)
        if nxt.kind is _T.CARETS:
            self._take()
            dt = self._peek()
            if dt.kind not in (_T.IRIREF, _T.PNAME):
                raise ParseError(dt.line, dt.col, "expected datatype IRI after '^^'", ErrorKind.SYNTAX)
            return Literal(tok.value, self._iri_term())
        return Literal(tok.value)

    def _iri_term(self) -> Iri:
        tok = self._take()
        if tok.kind is _T.IRIREF:
            return Iri(tok.value)
        prefix, local = tok.value
        if prefix not in self.graph.namespaces:
            raise ParseError(tok.line, tok.col, f"undefined prefix {prefix!r}", ErrorKind.UNDEFINED_PREFIX)
        return Iri(self.graph.namespaces[prefix] + local)

    def _blank_node(self, label: str) -> BlankNode:
        if label not in self.blanks:
            self.blanks[label] = BlankNode(label)
            self.graph._blank_labels.add(label)
        return self.blanks[label]

    def _blank_property_list(self) -> BlankNode:
        self._expect(_T.LBRACKET, "'['")
        node = self.graph.fresh_blank()
        if self._peek().kind is not _T.RBRACKET:
            self._predicate_object_list(node)
        self._expect(_T.RBRACKET, "']'")
        return node

    def _collection(self) -> Term:
        self._expect(_T.LPAREN, "'('")
        members: list[Term] = []
        while self._peek().kind is not _T.RPAREN:
            if self._peek().kind is _T.EOF:
                tok = self._peek()
                raise ParseError(tok.line, tok.col, "unterminated collection", ErrorKind.SYNTAX)
            members.append(self._object())
        self._take()  # )
        return self.graph.add_collection(members)


def parse_turtle(text: str) -> Graph:
    """Parse a Turtle document into a fresh graph."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Canonical blank relabeling
# ---------------------------------------------------------------------------

def _blank_signature(graph: Graph, node: BlankNode, stack: tuple[BlankNode, ...] = ()) -> str:
    """Structure-only signature used to order blanks before labels exist."""
    if node in stack:
        return "@cycle"
    parts = []
    for t in graph.match(s=node):
        if isinstance(t.object, BlankNode):
            okey = "B(" + _blank_signature(graph, t.object, stack + (node,)) + ")"
        elif isinstance(t.object, Iri):
            okey = "I" + t.object.value
        else:
            okey = "L" + str(t.object)
        parts.append((t.predicate.value, okey))
    return ";".join(f"{p}={o}" for p, o in sorted(parts))


def _canonical_blank_mapping(graph: Graph) -> dict[BlankNode, BlankNode]:
    """Assign _:b0, _:b1, ... in a deterministic depth-first traversal order."""
    mapping: dict[BlankNode, BlankNode] = {}

    def assign(node: BlankNode) -> None:
        if node in mapping:
            return
        mapping[node] = BlankNode(f"b{len(mapping)}")
        for t in sorted(
            graph.match(s=node),
            key=lambda t: (t.predicate.value, _object_order_key(graph, t.object)),
        ):
            if isinstance(t.object, BlankNode):
                assign(t.object)

    def _object_order_key(g: Graph, obj: Term) -> str:
        if isinstance(obj, BlankNode):
            return "~" + _blank_signature(g, obj)
        return str(term_sort_key(obj))

    iri_subjects = sorted(
        {t.subject for t in graph if isinstance(t.subject, Iri)}, key=term_sort_key
    )
    for subj in iri_subjects:
        for t in sorted(
            graph.match(s=subj),
            key=lambda t: (t.predicate.value, _object_order_key(graph, t.object)),
        ):
            if isinstance(t.object, BlankNode):
                assign(t.object)

    remaining = sorted(
        {
            term
            for t in graph
            for term in (t.subject, t.object)
            if isinstance(term, BlankNode) and term not in mapping
        },
        key=lambda b: (_blank_signature(graph, b), b.label),
    )
    for node in remaining:
        assign(node)
    return mapping


def canonicalize(graph: Graph) -> Graph:
    """Copy of ``graph`` with blanks renamed to canonical _:b0, _:b1, ... labels."""
    mapping = _canonical_blank_mapping(graph)

    def repl(term: Term) -> Term:
        return mapping.get(term, term) if isinstance(term, BlankNode) else term

    out = Graph(graph.namespaces)
    for t in graph:
        out.add(Triple(repl(t.subject), t.predicate, repl(t.object)))
    return out


def graphs_equal(a: Graph, b: Graph) -> bool:
    """Statement-set equality up to canonical blank relabeling."""
    return set(canonicalize(a)) == set(canonicalize(b))


# ---------------------------------------------------------------------------
# Serializer
# ---------------------------------------------------------------------------

def _valid_local(local: str) -> bool:
    return not local.endswith(".") and all(_is_local_char(c) for c in local)


class _Serializer:
    def __init__(self, graph: Graph):
        self.graph = canonicalize(graph)
        self.object_refs: dict[Term, int] = {}
        for t in self.graph:
            if isinstance(t.object, BlankNode):
                self.object_refs[t.object] = self.object_refs.get(t.object, 0) + 1
        self.chains = self._find_chains()
        self.inlined: set[BlankNode] = set()
        self.emitted: set[BlankNode] = set()

    def _find_chains(self) -> dict[BlankNode, list[Term]]:
        """Heads of pure, single-reference first/rest chains -> member list."""
        cells: dict[BlankNode, tuple[Term, Term]] = {}
        for subj in {t.subject for t in self.graph if isinstance(t.subject, BlankNode)}:
            stmts = self.graph.match(s=subj)
            firsts = [t.object for t in stmts if t.predicate == vocab.RDF_FIRST]
            rests = [t.object for t in stmts if t.predicate == vocab.RDF_REST]
            if len(stmts) == 2 and len(firsts) == 1 and len(rests) == 1:
                cells[subj] = (firsts[0], rests[0])
        chains: dict[BlankNode, list[Term]] = {}
        tails = {rest for _, rest in cells.values()}
        for head in cells:
            if head in tails or self.object_refs.get(head, 0) != 1:
                continue
            members: list[Term] = []
            node: Term = head
            seen: set[Term] = set()
            ok = True
            while node != vocab.RDF_NIL:
                if node not in cells or node in seen or (node != head and self.object_refs.get(node, 0) != 1):
                    ok = False
                    break
                seen.add(node)
                first, node = cells[node]
                members.append(first)
            if ok:
                chains[head] = members
        return chains

    def _chain_cells(self, head: BlankNode) -> set[BlankNode]:
        nodes: set[BlankNode] = set()
        node: Term = head
        while node != vocab.RDF_NIL and isinstance(node, BlankNode):
            nodes.add(node)
            node = next(t.object for t in self.graph.match(s=node, p=vocab.RDF_REST))
        return nodes

    def render_iri(self, iri: Iri) -> str:
        best: tuple[int, str, str] | None = None
        for prefix, base in self.graph.namespaces.items():
            if iri.value.startswith(base):
                local = iri.value[len(base):]
                if _valid_local(local):
                    cand = (len(base), prefix, local)
                    if best is None or cand[0] > best[0] or (cand[0] == best[0] and cand[1] < best[1]):
                        best = cand
        if best:
            return f"{best[1]}:{best[2]}"
        return f"<{iri.value}>"

    def render_literal(self, lit: Literal) -> str:
        escaped = (
            lit.lexical.replace("\\", "\\\\").replace('"', '\\"')
            .replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")
        )
        if lit.language:
            return f'"{escaped}"@{lit.language}'
        if lit.datatype == vocab.XSD_STRING:
            return f'"{escaped}"'
        return f'"{escaped}"^^{self.render_iri(lit.datatype)}'

    def _render_object(self, term: Term, inlining: frozenset[BlankNode]) -> str:
        if isinstance(term, Iri):
            return self.render_iri(term)
        if isinstance(term, Literal):
            return self.render_literal(term)
        if term in inlining or term in self.emitted:
            return str(term)  # cycle or already a named group: reference by label
        if term in self.chains:
            self.inlined.update(self._chain_cells(term))
            inner = " ".join(self._render_object(m, inlining | {term}) for m in self.chains[term])
            return f"( {inner} )" if inner else "()"
        if self.object_refs.get(term, 0) == 1:
            self.inlined.add(term)
            body = self._body(term, inlining | {term}, separator=" ; ")
            return f"[ {body} ]" if body else "[]"
        return str(term)

    def _body(self, subject: Term, inlining: frozenset[BlankNode], separator: str) -> str:
        groups: dict[Iri, list[Term]] = {}
        for t in self.graph.match(s=subject):
            groups.setdefault(t.predicate, []).append(t.object)
        parts = []
        for pred in sorted(groups, key=lambda p: ("" if p == vocab.RDF_TYPE else "~" + p.value)):
            pred_str = "a" if pred == vocab.RDF_TYPE else self.render_iri(pred)
            rendered = sorted(self._render_object(o, inlining) for o in groups[pred])
            parts.append(f"{pred_str} {', '.join(rendered)}")
        return separator.join(parts)

    def _render_group(self, subject: Term) -> tuple[str, str]:
        if isinstance(subject, BlankNode):
            self.emitted.add(subject)
            subj_str = str(subject)
            guard = frozenset({subject})
        else:
            subj_str = self.render_iri(subject)
            guard = frozenset()
        body = self._body(subject, guard, separator=" ;\n    ")
        return subj_str, f"{subj_str} {body} ."

    def serialize(self) -> str:
        lines = [
            f"@prefix {prefix}: <{base}> ."
            for prefix, base in sorted(self.graph.namespaces.items())
        ]

        blank_subjects = sorted(
            {t.subject for t in self.graph if isinstance(t.subject, BlankNode)},
            key=term_sort_key,
        )
        anchors: list[Term] = sorted(
            {t.subject for t in self.graph if isinstance(t.subject, Iri)}, key=term_sort_key
        )
        anchors += [b for b in blank_subjects if self.object_refs.get(b, 0) != 1]

        groups = [self._render_group(subject) for subject in anchors]
        # blank-only components (cycles, orphan chains) never reached from an
        # anchor: promote one representative at a time until all are rendered
        while True:
            leftovers = [b for b in blank_subjects if b not in self.inlined and b not in self.emitted]
            if not leftovers:
                break
            groups.append(self._render_group(leftovers[0]))

        if groups:
            lines.append("")
            lines.extend(text for _, text in sorted(groups))
        return "\n".join(lines) + "\n"


def serialize_turtle(graph: Graph) -> str:
    """Deterministic Turtle rendering of ``graph``; see module docstring."""
    return _Serializer(graph).serialize()
