"""Parser and serializer for a subset of OWL 2 functional-style syntax.

Supported grammar, exhaustively:

  Prefix, Ontology, Import, Declaration, SubClassOf, EquivalentClasses,
  DisjointClasses, DisjointUnion, SubObjectPropertyOf,
  InverseObjectProperties, ClassAssertion, AnnotationAssertion

with class constructors

  ObjectIntersectionOf, ObjectUnionOf, ObjectComplementOf, ObjectOneOf,
  ObjectSomeValuesFrom, ObjectAllValuesFrom, ObjectMaxCardinality,
  DataSomeValuesFrom, DataAllValuesFrom

Comments run from '#' to end of line. String literals may carry a language
tag ("..."@en-us) or a datatype ("..."^^xsd:string). Everything else is
either a syntax error or, for recognisable OWL constructs outside the set
above, handled per the unknown-construct policy.

The parser never raises on bad input: it returns a (model, diagnostics)
pair, and callers decide what to do with error-severity diagnostics.
Declaration checking has two modes. Strict mode requires every IRI used by
a logical axiom, and every annotation property used in an annotation, to be
declared; lenient mode (the default) auto-declares them with a warning, so
files with declaration defects can still be audited. Punning is rejected:
one IRI gets at most one entity kind, and in lenient mode a conflicting
declaration is skipped with a warning.

Imports are recorded as axioms, never fetched.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .model import (
    AllValuesFrom,
    AnnotationAssertion,
    Axiom,
    ClassAssertion,
    ClassExpression,
    ComplementOf,
    DataAllValuesFrom,
    DataSomeValuesFrom,
    Declaration,
    DisjointClasses,
    DisjointUnion,
    Entity,
    EntityKind,
    EquivalentClasses,
    Import,
    IntersectionOf,
    InverseObjectProperties,
    Iri,
    Literal,
    Location,
    MaxCardinality,
    ModelError,
    Named,
    OneOf,
    OntologyModel,
    SomeValuesFrom,
    SubClassOf,
    SubObjectPropertyOf,
    UnionOf,
)

STRICT = "strict"
LENIENT = "lenient"
FAIL = "fail"
SKIP_WITH_WARNING = "skip_with_warning"


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str  # "error" | "warning"
    message: str
    line: int
    column: int
    token: str = ""

    def render(self) -> str:
        return f"{self.severity}: {self.line}:{self.column}: {self.message}"


@dataclass(frozen=True)
class ParserOptions:
    mode: str = LENIENT
    unknown_construct_policy: str = SKIP_WITH_WARNING


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

# token kinds
LPAREN, RPAREN, EQUALS, FULL_IRI, PNAME, IDENT, INT, STRING, EOF = (
    "LPAREN", "RPAREN", "EQUALS", "FULL_IRI", "PNAME", "IDENT", "INT", "STRING", "EOF",
)

_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int
    # STRING payload: (lexical, lang, datatype_token_text)
    payload: Optional[tuple] = None


class _TokenError(Exception):
    def __init__(self, message: str, line: int, column: int, token: str = ""):
        super().__init__(message)
        self.diagnostic = ParseDiagnostic("error", message, line, column, token)


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(text)
    line, col = 1, 1

    def advance(k: int = 1) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if i < n and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            advance()
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                advance()
            continue
        start_line, start_col = line, col
        if c == "(":
            tokens.append(Token(LPAREN, "(", start_line, start_col))
            advance()
            continue
        if c == ")":
            tokens.append(Token(RPAREN, ")", start_line, start_col))
            advance()
            continue
        if c == "=":
            tokens.append(Token(EQUALS, "=", start_line, start_col))
            advance()
            continue
        if c == "<":
            advance()
            buf = []
            while i < n and text[i] != ">":
                if text[i] in " \t\n":
                    raise _TokenError("malformed IRI: whitespace before '>'", start_line, start_col)
                buf.append(text[i])
                advance()
            if i >= n:
                raise _TokenError("malformed IRI: missing '>'", start_line, start_col)
            advance()  # '>'
            value = "".join(buf)
            if not value:
                raise _TokenError("malformed IRI: empty", start_line, start_col)
            tokens.append(Token(FULL_IRI, value, start_line, start_col))
            continue
        if c == '"':
            advance()
            buf = []
            closed = False
            while i < n:
                cc = text[i]
                if cc == "\\":
                    advance()
                    if i >= n:
                        break
                    esc = text[i]
                    # \" and \\ unescape; anything else stays literal
                    buf.append(esc if esc in ('"', "\\") else "\\" + esc)
                    advance()
                    continue
                if cc == '"':
                    advance()
                    closed = True
                    break
                buf.append(cc)
                advance()
            if not closed:
                raise _TokenError("unterminated string literal", start_line, start_col)
            lexical = "".join(buf)
            lang = None
            dt_token: Optional[Token] = None
            if i < n and text[i] == "@":
                advance()
                tag = []
                while i < n and (text[i].isalnum() or text[i] == "-"):
                    tag.append(text[i])
                    advance()
                lang = "".join(tag)
                if not lang or not lang[0].isalpha():
                    raise _TokenError(f"bad language tag: {lang!r}", start_line, start_col)
            elif i + 1 < n and text[i] == "^" and text[i + 1] == "^":
                advance(2)
                dt_line, dt_col = line, col
                if i < n and text[i] == "<":
                    advance()
                    buf2 = []
                    while i < n and text[i] != ">":
                        buf2.append(text[i])
                        advance()
                    if i >= n:
                        raise _TokenError("malformed datatype IRI", dt_line, dt_col)
                    advance()
                    dt_token = Token(FULL_IRI, "".join(buf2), dt_line, dt_col)
                else:
                    buf2 = []
                    while i < n and (text[i] in _NAME_CHARS or text[i] == ":"):
                        buf2.append(text[i])
                        advance()
                    word = "".join(buf2)
                    if ":" not in word:
                        raise _TokenError(f"bad datatype: {word!r}", dt_line, dt_col)
                    dt_token = Token(PNAME, word, dt_line, dt_col)
            tokens.append(Token(STRING, lexical, start_line, start_col, (lexical, lang, dt_token)))
            continue
        if c.isdigit():
            buf = []
            while i < n and text[i].isdigit():
                buf.append(text[i])
                advance()
            if i < n and (text[i] in _NAME_CHARS or text[i] == ":"):
                raise _TokenError(f"bad integer near {''.join(buf)!r}", start_line, start_col)
            tokens.append(Token(INT, "".join(buf), start_line, start_col))
            continue
        if c in _NAME_CHARS or c == ":":
            buf = []
            while i < n and (text[i] in _NAME_CHARS or text[i] == ":"):
                buf.append(text[i])
                advance()
            word = "".join(buf)
            kind = PNAME if ":" in word else IDENT
            tokens.append(Token(kind, word, start_line, start_col))
            continue
        raise _TokenError(f"unexpected character {c!r}", start_line, start_col, c)
    tokens.append(Token(EOF, "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_ENTITY_KEYWORDS = {
    "Class": EntityKind.CLASS,
    "ObjectProperty": EntityKind.OBJECT_PROPERTY,
    "DataProperty": EntityKind.DATA_PROPERTY,
    "NamedIndividual": EntityKind.NAMED_INDIVIDUAL,
    "AnnotationProperty": EntityKind.ANNOTATION_PROPERTY,
}

_CE_KEYWORDS = {
    "ObjectIntersectionOf",
    "ObjectUnionOf",
    "ObjectComplementOf",
    "ObjectOneOf",
    "ObjectSomeValuesFrom",
    "ObjectAllValuesFrom",
    "ObjectMaxCardinality",
    "DataSomeValuesFrom",
    "DataAllValuesFrom",
}

_AXIOM_KEYWORDS = {
    "Declaration",
    "Import",
    "SubClassOf",
    "EquivalentClasses",
    "DisjointClasses",
    "DisjointUnion",
    "SubObjectPropertyOf",
    "InverseObjectProperties",
    "ClassAssertion",
    "AnnotationAssertion",
}


class _ParseError(Exception):
    def __init__(self, message: str, token: Token):
        super().__init__(message)
        self.diagnostic = ParseDiagnostic("error", message, token.line, token.column, token.text)


class _Unsupported(Exception):
    def __init__(self, name: str, token: Token):
        super().__init__(name)
        self.name = name
        self.token = token


class _Parser:
    def __init__(self, tokens: list[Token], options: ParserOptions, source: str):
        self.tokens = tokens
        self.pos = 0
        self.options = options
        self.source = source
        self.diagnostics: list[ParseDiagnostic] = []
        self.prefixes: dict[str, str] = {}
        self.ontology_iri: Optional[Iri] = None
        self.entities: dict[Iri, EntityKind] = {}
        self.explicit: set[Iri] = set()
        self.axioms: list[Axiom] = []

    # -- token plumbing ------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != EOF:
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise _ParseError(f"expected {what}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def warn(self, message: str, token: Token) -> None:
        self.diagnostics.append(
            ParseDiagnostic("warning", message, token.line, token.column, token.text)
        )

    def error(self, message: str, token: Token) -> None:
        self.diagnostics.append(
            ParseDiagnostic("error", message, token.line, token.column, token.text)
        )

    def skip_balanced(self) -> None:
        """Consume a '(' ... ')' group, assuming the '(' is next."""
        self.expect(LPAREN, "'('")
        depth = 1
        while depth > 0:
            tok = self.next()
            if tok.kind == EOF:
                raise _ParseError("unbalanced parentheses", tok)
            if tok.kind == LPAREN:
                depth += 1
            elif tok.kind == RPAREN:
                depth -= 1

    # -- IRIs and literals ----------------------------------------------

    def resolve_pname(self, tok: Token) -> Iri:
        prefix, _, local = tok.text.partition(":")
        if prefix not in self.prefixes:
            raise _ParseError(f"unknown prefix {prefix + ':'!r}", tok)
        return Iri(self.prefixes[prefix] + local, abbrev=tok.text)

    def parse_iri(self, what: str = "IRI") -> Iri:
        tok = self.next()
        if tok.kind == FULL_IRI:
            try:
                return Iri(tok.text)
            except ModelError as exc:
                raise _ParseError(str(exc), tok) from exc
        if tok.kind == PNAME:
            return self.resolve_pname(tok)
        raise _ParseError(f"expected {what}, found {tok.text or 'end of input'!r}", tok)

    def parse_literal(self) -> Literal:
        tok = self.expect(STRING, "string literal")
        lexical, lang, dt_token = tok.payload  # type: ignore[misc]
        datatype = None
        if dt_token is not None:
            if dt_token.kind == FULL_IRI:
                datatype = Iri(dt_token.text)
            else:
                datatype = self.resolve_pname(dt_token)
        return Literal(lexical, datatype=datatype, lang=lang)

    # -- document -------------------------------------------------------

    def parse_document(self) -> None:
        while True:
            tok = self.peek()
            if tok.kind == IDENT and tok.text == "Prefix":
                self.parse_prefix()
            else:
                break
        tok = self.next()
        if tok.kind != IDENT or tok.text != "Ontology":
            self.error(f"expected 'Ontology', found {tok.text or 'end of input'!r}", tok)
            return
        self.expect(LPAREN, "'('")
        if self.peek().kind in (FULL_IRI, PNAME):
            self.ontology_iri = self.parse_iri()
        while True:
            tok = self.peek()
            if tok.kind == RPAREN:
                self.next()
                break
            if tok.kind == EOF:
                self.error("unbalanced parentheses: ontology not closed", tok)
                break
            self.parse_axiom_or_skip()
        tok = self.peek()
        if tok.kind != EOF:
            self.error(f"trailing content after ontology: {tok.text!r}", tok)

    def parse_prefix(self) -> None:
        self.next()  # 'Prefix'
        self.expect(LPAREN, "'('")
        tok = self.next()
        if tok.kind != PNAME or not tok.text.endswith(":"):
            raise _ParseError(f"expected a prefix name like 'ex:', found {tok.text!r}", tok)
        name = tok.text[:-1]
        self.expect(EQUALS, "'='")
        iri_tok = self.expect(FULL_IRI, "full IRI")
        self.expect(RPAREN, "')'")
        self.prefixes[name] = iri_tok.text

    # -- axioms -----------------------------------------------------------

    def parse_axiom_or_skip(self) -> None:
        tok = self.peek()
        if tok.kind != IDENT:
            self.error(f"expected an axiom, found {tok.text or 'end of input'!r}", tok)
            self.next()
            return
        name = tok.text
        if name not in _AXIOM_KEYWORDS:
            self.handle_unsupported(name, tok)
            return
        loc = Location(self.source, tok.line)
        start = self.pos
        try:
            axiom = self.parse_axiom(name, loc)
            if axiom is not None:
                self.axioms.append(axiom)
        except _Unsupported as unsup:
            # rewind and drop the whole enclosing axiom
            self.pos = start
            self.next()
            self.skip_balanced()
            if self.options.unknown_construct_policy == FAIL:
                self.error(f"unsupported construct {unsup.name}", unsup.token)
            else:
                self.warn(f"unsupported construct {unsup.name}: axiom skipped", unsup.token)

    def handle_unsupported(self, name: str, tok: Token) -> None:
        self.next()
        if self.peek().kind != LPAREN:
            self.error(f"expected an axiom, found {name!r}", tok)
            return
        self.skip_balanced()
        if self.options.unknown_construct_policy == FAIL:
            self.error(f"unsupported construct {name}", tok)
        else:
            self.warn(f"unsupported construct {name}: skipped", tok)

    def parse_axiom(self, name: str, loc: Location) -> Optional[Axiom]:
        self.next()  # keyword
        self.expect(LPAREN, "'('")
        if name == "Declaration":
            axiom = self.parse_declaration(loc)
        elif name == "Import":
            axiom = Import(self.parse_iri(), loc=loc)
        elif name == "SubClassOf":
            sub = self.parse_class_expression()
            sup = self.parse_class_expression()
            axiom = SubClassOf(sub, sup, loc=loc)
        elif name == "EquivalentClasses":
            axiom = EquivalentClasses(self.parse_expression_list(2), loc=loc)
        elif name == "DisjointClasses":
            axiom = DisjointClasses(self.parse_expression_list(2), loc=loc)
        elif name == "DisjointUnion":
            named = self.parse_iri("named class")
            axiom = DisjointUnion(named, self.parse_expression_list(2), loc=loc)
        elif name == "SubObjectPropertyOf":
            axiom = SubObjectPropertyOf(self.parse_iri(), self.parse_iri(), loc=loc)
        elif name == "InverseObjectProperties":
            axiom = InverseObjectProperties(self.parse_iri(), self.parse_iri(), loc=loc)
        elif name == "ClassAssertion":
            expr = self.parse_class_expression()
            axiom = ClassAssertion(expr, self.parse_iri("individual"), loc=loc)
        elif name == "AnnotationAssertion":
            prop = self.parse_iri("annotation property")
            subject = self.parse_iri("annotation subject")
            if self.peek().kind != STRING:
                # well-formed OWL, but outside the subset: literal values only
                raise _Unsupported("AnnotationAssertion with a non-literal value", self.peek())
            axiom = AnnotationAssertion(prop, subject, self.parse_literal(), loc=loc)
        else:  # pragma: no cover - guarded by _AXIOM_KEYWORDS
            raise AssertionError(name)
        tok = self.next()
        if tok.kind != RPAREN:
            raise _ParseError(f"expected ')', found {tok.text or 'end of input'!r}", tok)
        return axiom

    def parse_declaration(self, loc: Location) -> Optional[Declaration]:
        tok = self.next()
        if tok.kind != IDENT or tok.text not in _ENTITY_KEYWORDS:
            raise _Unsupported(tok.text or "?", tok)
        kind = _ENTITY_KEYWORDS[tok.text]
        self.expect(LPAREN, "'('")
        iri = self.parse_iri()
        self.expect(RPAREN, "')'")
        existing = self.entities.get(iri)
        if existing is not None and iri in self.explicit and existing != kind:
            msg = f"punning: {iri} already declared as {existing.value}, now {kind.value}"
            if self.options.mode == STRICT:
                self.error(msg, tok)
            else:
                self.warn(msg + "; second declaration skipped", tok)
            return None
        self.entities[iri] = kind
        self.explicit.add(iri)
        return Declaration(Entity(kind, iri), loc=loc)

    def parse_expression_list(self, minimum: int) -> tuple[ClassExpression, ...]:
        members: list[ClassExpression] = []
        while self.peek().kind in (FULL_IRI, PNAME, IDENT):
            # unknown IDENTs raise _Unsupported inside, dropping the axiom
            members.append(self.parse_class_expression())
        if len(members) < minimum:
            raise _ParseError(
                f"expected at least {minimum} class expressions, found {len(members)}",
                self.peek(),
            )
        return tuple(members)

    def parse_class_expression(self) -> ClassExpression:
        tok = self.peek()
        if tok.kind in (FULL_IRI, PNAME):
            return Named(self.parse_iri("class"))
        if tok.kind != IDENT:
            raise _ParseError(f"expected a class expression, found {tok.text or 'end of input'!r}", tok)
        name = tok.text
        if name not in _CE_KEYWORDS:
            raise _Unsupported(name, tok)
        self.next()
        self.expect(LPAREN, "'('")
        expr: ClassExpression
        if name == "ObjectIntersectionOf":
            expr = IntersectionOf(self.parse_expression_list(2))
        elif name == "ObjectUnionOf":
            expr = UnionOf(self.parse_expression_list(2))
        elif name == "ObjectComplementOf":
            expr = ComplementOf(self.parse_class_expression())
        elif name == "ObjectOneOf":
            individuals: list[Iri] = []
            while self.peek().kind in (FULL_IRI, PNAME):
                individuals.append(self.parse_iri("individual"))
            if not individuals:
                raise _ParseError("ObjectOneOf needs at least 1 individual", self.peek())
            expr = OneOf(tuple(individuals))
        elif name == "ObjectSomeValuesFrom":
            expr = SomeValuesFrom(self.parse_iri("object property"), self.parse_class_expression())
        elif name == "ObjectAllValuesFrom":
            expr = AllValuesFrom(self.parse_iri("object property"), self.parse_class_expression())
        elif name == "ObjectMaxCardinality":
            n_tok = self.next()
            if n_tok.kind != INT:
                raise _ParseError(f"bad cardinality: {n_tok.text!r}", n_tok)
            prop = self.parse_iri("object property")
            filler = None
            if self.peek().kind != RPAREN:
                filler = self.parse_class_expression()
            expr = MaxCardinality(int(n_tok.text), prop, filler)
        elif name == "DataSomeValuesFrom":
            expr = DataSomeValuesFrom(self.parse_iri("data property"), self.parse_iri("datatype"))
        else:  # DataAllValuesFrom
            expr = DataAllValuesFrom(self.parse_iri("data property"), self.parse_iri("datatype"))
        self.expect(RPAREN, "')'")
        return expr

    # -- declaration checking --------------------------------------------

    def check_declarations(self) -> None:
        def require(iri: Iri, kind: EntityKind, axiom: Axiom) -> None:
            if iri in self.entities:
                return
            line = axiom.loc.line if axiom.loc else 0
            if self.options.mode == STRICT:
                self.diagnostics.append(
                    ParseDiagnostic(
                        "error",
                        f"undeclared {kind.value}: {iri}",
                        line,
                        1,
                        iri.abbrev or iri.value,
                    )
                )
            else:
                self.entities[iri] = kind
                self.diagnostics.append(
                    ParseDiagnostic(
                        "warning",
                        f"undeclared {kind.value} {iri}: auto-declared",
                        line,
                        1,
                        iri.abbrev or iri.value,
                    )
                )

        def require_expr(expr: ClassExpression, axiom: Axiom) -> None:
            if isinstance(expr, Named):
                require(expr.iri, EntityKind.CLASS, axiom)
            elif isinstance(expr, (IntersectionOf, UnionOf)):
                for m in expr.members:
                    require_expr(m, axiom)
            elif isinstance(expr, ComplementOf):
                require_expr(expr.expr, axiom)
            elif isinstance(expr, OneOf):
                for ind in expr.individuals:
                    require(ind, EntityKind.NAMED_INDIVIDUAL, axiom)
            elif isinstance(expr, (SomeValuesFrom, AllValuesFrom)):
                require(expr.prop, EntityKind.OBJECT_PROPERTY, axiom)
                require_expr(expr.filler, axiom)
            elif isinstance(expr, MaxCardinality):
                require(expr.prop, EntityKind.OBJECT_PROPERTY, axiom)
                if expr.filler is not None:
                    require_expr(expr.filler, axiom)
            elif isinstance(expr, (DataSomeValuesFrom, DataAllValuesFrom)):
                require(expr.prop, EntityKind.DATA_PROPERTY, axiom)
                # datatypes are not declarable entities

        for axiom in self.axioms:
            if isinstance(axiom, SubClassOf):
                require_expr(axiom.sub, axiom)
                require_expr(axiom.sup, axiom)
            elif isinstance(axiom, (EquivalentClasses, DisjointClasses)):
                for m in axiom.members:
                    require_expr(m, axiom)
            elif isinstance(axiom, DisjointUnion):
                require(axiom.named, EntityKind.CLASS, axiom)
                for m in axiom.disjuncts:
                    require_expr(m, axiom)
            elif isinstance(axiom, SubObjectPropertyOf):
                require(axiom.sub, EntityKind.OBJECT_PROPERTY, axiom)
                require(axiom.sup, EntityKind.OBJECT_PROPERTY, axiom)
            elif isinstance(axiom, InverseObjectProperties):
                require(axiom.first, EntityKind.OBJECT_PROPERTY, axiom)
                require(axiom.second, EntityKind.OBJECT_PROPERTY, axiom)
            elif isinstance(axiom, ClassAssertion):
                require_expr(axiom.expr, axiom)
                require(axiom.individual, EntityKind.NAMED_INDIVIDUAL, axiom)
            elif isinstance(axiom, AnnotationAssertion):
                # the one non-logical check: undeclared annotation properties
                # are the classic defect that pushes files out of OWL DL
                require(axiom.prop, EntityKind.ANNOTATION_PROPERTY, axiom)


def parse(
    text: str, options: Optional[ParserOptions] = None, source: str = "<string>"
) -> tuple[OntologyModel, list[ParseDiagnostic]]:
    """Parse functional-syntax text into a model plus diagnostics.

    Deterministic: the same text and options always yield the same model
    and the same diagnostic list.
    """
    options = options or ParserOptions()
    try:
        tokens = _tokenize(text)
    except _TokenError as exc:
        return OntologyModel(None, {}, {}, []), [exc.diagnostic]
    parser = _Parser(tokens, options, source)
    try:
        parser.parse_document()
    except _ParseError as exc:
        parser.diagnostics.append(exc.diagnostic)
    parser.check_declarations()
    model = OntologyModel(parser.ontology_iri, parser.prefixes, parser.entities, parser.axioms)
    return model, parser.diagnostics


def parse_file(
    path: str | Path, options: Optional[ParserOptions] = None
) -> tuple[OntologyModel, list[ParseDiagnostic]]:
    p = Path(path)
    return parse(p.read_text(encoding="utf-8"), options, source=str(path))


# ---------------------------------------------------------------------------
# Serializer
# ---------------------------------------------------------------------------

def _render_iri(iri: Iri, prefixes: dict[str, str]) -> str:
    best: Optional[tuple[str, str]] = None
    for name, expansion in prefixes.items():
        if iri.value.startswith(expansion):
            local = iri.value[len(expansion):]
            if all(ch in _NAME_CHARS for ch in local):
                if best is None or len(expansion) > len(prefixes[best[0]]) or (
                    len(expansion) == len(prefixes[best[0]]) and name < best[0]
                ):
                    best = (name, local)
    if best is not None:
        return f"{best[0]}:{best[1]}"
    return f"<{iri.value}>"


def _render_literal(lit: Literal, prefixes: dict[str, str]) -> str:
    body = lit.lexical.replace("\\", "\\\\").replace('"', '\\"')
    if lit.lang is not None:
        return f'"{body}"@{lit.lang}'
    if lit.datatype is not None:
        return f'"{body}"^^{_render_iri(lit.datatype, prefixes)}'
    return f'"{body}"'


def _render_expr(expr: ClassExpression, prefixes: dict[str, str]) -> str:
    if isinstance(expr, Named):
        return _render_iri(expr.iri, prefixes)
    if isinstance(expr, IntersectionOf):
        inner = " ".join(_render_expr(m, prefixes) for m in expr.members)
        return f"ObjectIntersectionOf({inner})"
    if isinstance(expr, UnionOf):
        inner = " ".join(_render_expr(m, prefixes) for m in expr.members)
        return f"ObjectUnionOf({inner})"
    if isinstance(expr, ComplementOf):
        return f"ObjectComplementOf({_render_expr(expr.expr, prefixes)})"
    if isinstance(expr, OneOf):
        inner = " ".join(_render_iri(i, prefixes) for i in expr.individuals)
        return f"ObjectOneOf({inner})"
    if isinstance(expr, SomeValuesFrom):
        return f"ObjectSomeValuesFrom({_render_iri(expr.prop, prefixes)} {_render_expr(expr.filler, prefixes)})"
    if isinstance(expr, AllValuesFrom):
        return f"ObjectAllValuesFrom({_render_iri(expr.prop, prefixes)} {_render_expr(expr.filler, prefixes)})"
    if isinstance(expr, MaxCardinality):
        parts = [str(expr.n), _render_iri(expr.prop, prefixes)]
        if expr.filler is not None:
            parts.append(_render_expr(expr.filler, prefixes))
        return f"ObjectMaxCardinality({' '.join(parts)})"
    if isinstance(expr, DataSomeValuesFrom):
        return f"DataSomeValuesFrom({_render_iri(expr.prop, prefixes)} {_render_iri(expr.datatype, prefixes)})"
    if isinstance(expr, DataAllValuesFrom):
        return f"DataAllValuesFrom({_render_iri(expr.prop, prefixes)} {_render_iri(expr.datatype, prefixes)})"
    raise TypeError(f"unknown class expression: {type(expr).__name__}")


def render_axiom(axiom: Axiom, prefixes: dict[str, str]) -> str:
    """One axiom in functional syntax (no trailing newline)."""
    p = prefixes
    if isinstance(axiom, Declaration):
        return f"Declaration({axiom.entity.kind.value}({_render_iri(axiom.entity.iri, p)}))"
    if isinstance(axiom, Import):
        return f"Import(<{axiom.iri.value}>)"
    if isinstance(axiom, SubClassOf):
        return f"SubClassOf({_render_expr(axiom.sub, p)} {_render_expr(axiom.sup, p)})"
    if isinstance(axiom, EquivalentClasses):
        return f"EquivalentClasses({' '.join(_render_expr(m, p) for m in axiom.members)})"
    if isinstance(axiom, DisjointClasses):
        return f"DisjointClasses({' '.join(_render_expr(m, p) for m in axiom.members)})"
    if isinstance(axiom, DisjointUnion):
        inner = " ".join(_render_expr(m, p) for m in axiom.disjuncts)
        return f"DisjointUnion({_render_iri(axiom.named, p)} {inner})"
    if isinstance(axiom, SubObjectPropertyOf):
        return f"SubObjectPropertyOf({_render_iri(axiom.sub, p)} {_render_iri(axiom.sup, p)})"
    if isinstance(axiom, InverseObjectProperties):
        return f"InverseObjectProperties({_render_iri(axiom.first, p)} {_render_iri(axiom.second, p)})"
    if isinstance(axiom, ClassAssertion):
        return f"ClassAssertion({_render_expr(axiom.expr, p)} {_render_iri(axiom.individual, p)})"
    if isinstance(axiom, AnnotationAssertion):
        return (
            f"AnnotationAssertion({_render_iri(axiom.prop, p)} "
            f"{_render_iri(axiom.subject, p)} {_render_literal(axiom.value, p)})"
        )
    raise TypeError(f"unknown axiom type: {type(axiom).__name__}")


def serialize(model: OntologyModel) -> str:
    """Canonical text form: prefixes first (sorted), one axiom per line.

    Reparsing the output yields a structurally equal model. Only axioms are
    written, so entities that were auto-declared by a lenient parse stay
    auto-declared on reparse.
    """
    prefixes = model.prefixes
    lines = [f"Prefix({name}:=<{expansion}>)" for name, expansion in sorted(prefixes.items())]
    header = "Ontology("
    if model.ontology_iri is not None:
        header += f"<{model.ontology_iri.value}>"
    lines.append(header)
    for axiom in model.axioms:
        lines.append(render_axiom(axiom, prefixes))
    lines.append(")")
    return "\n".join(lines) + "\n"
