"""Text front-end for the supported functional-syntax subset.

`tokenize` / `parse` / `serialize` over UTF-8 ".ofn" documents. The grammar
covers prefix declarations, one Ontology block, declarations, the class and
property axioms the model supports, and the ALC-with-inverses concept
constructors. Parsing aborts on the first error with an exact (line, column);
serialization is canonical and byte-deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import (
    AnnotationAssertion,
    Axiom,
    Bottom,
    Complement,
    ConceptAssertion,
    ConceptExpression,
    DataAssertion,
    Declaration,
    DisjointConcepts,
    Entity,
    EntityKind,
    EquivalentConcepts,
    Existential,
    Intersection,
    InverseRole,
    InverseRoles,
    Iri,
    KIND_ORDER,
    Literal,
    Named,
    NamedRole,
    Ontology,
    OWL_NOTHING,
    OWL_THING,
    RoleAssertion,
    RoleDomain,
    RoleExpression,
    RoleRange,
    SubConceptOf,
    SubRoleOf,
    Top,
    TransitiveRole,
    Union,
    Universal,
    XSD_STRING,
    make_ontology,
)

MAX_NESTING = 512


@dataclass(frozen=True)
class SourceLocation:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseErrorKind(enum.Enum):
    LEX_ERROR = "LexError"
    UNEXPECTED_TOKEN = "UnexpectedToken"
    UNKNOWN_CONSTRUCT = "UnknownConstruct"
    UNDECLARED_PREFIX = "UndeclaredPrefix"
    DUPLICATE_ONTOLOGY = "DuplicateOntology"


class ParseError(Exception):
    def __init__(self, kind: ParseErrorKind, location: SourceLocation, message: str):
        super().__init__(f"{location}: {kind.value}: {message}")
        self.kind = kind
        self.location = location
        self.message = message


class TokenKind(enum.Enum):
    KEYWORD = "Keyword"
    IRI_REF = "IriRef"
    PNAME = "PrefixedName"
    STRING = "StringLiteral"
    CARETS = "CaretCaret"
    LPAREN = "OpenParen"
    RPAREN = "CloseParen"
    EQUALS = "Equals"
    EOF = "Eof"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    location: SourceLocation


_IDENT_START = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_")
_IDENT_CHARS = _IDENT_START | set("0123456789")
_LOCAL_CHARS = _IDENT_CHARS | set(".-")


def tokenize(text: str) -> list[Token]:
    """Scan the input into tokens, ending with Eof.

    Whitespace and '#'-to-end-of-line comments (outside IRIs and strings) are
    skipped; string values are stored unescaped.
    """
    return list(_scan(text))


def _scan(text: str):
    i, line, col = 0, 1, 1
    n = len(text)

    def here() -> SourceLocation:
        return SourceLocation(line, col)

    def advance(ch: str) -> None:
        nonlocal line, col
        if ch == "\n":
            line += 1
            col = 1
        else:
            col += 1

    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            advance(ch)
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                advance(text[i])
                i += 1
            continue
        start = here()
        if ch == "(":
            yield Token(TokenKind.LPAREN, "(", start)
            advance(ch)
            i += 1
        elif ch == ")":
            yield Token(TokenKind.RPAREN, ")", start)
            advance(ch)
            i += 1
        elif ch == "=":
            yield Token(TokenKind.EQUALS, "=", start)
            advance(ch)
            i += 1
        elif ch == "^":
            if i + 1 < n and text[i + 1] == "^":
                yield Token(TokenKind.CARETS, "^^", start)
                advance("^")
                advance("^")
                i += 2
            else:
                raise ParseError(ParseErrorKind.LEX_ERROR, start, "expected '^^'")
        elif ch == "<":
            j = i + 1
            while j < n and text[j] not in ">\n":
                if text[j].isspace() or text[j] == "<":
                    raise ParseError(
                        ParseErrorKind.LEX_ERROR, start,
                        "whitespace or '<' inside IRI reference")
                j += 1
            if j >= n or text[j] != ">":
                raise ParseError(ParseErrorKind.LEX_ERROR, start, "unterminated IRI reference")
            value = text[i + 1:j]
            if not value:
                raise ParseError(ParseErrorKind.LEX_ERROR, start, "empty IRI reference")
            yield Token(TokenKind.IRI_REF, value, start)
            for c in text[i:j + 1]:
                advance(c)
            i = j + 1
        elif ch == '"':
            advance(ch)
            i += 1
            out: list[str] = []
            while True:
                if i >= n:
                    raise ParseError(ParseErrorKind.LEX_ERROR, start, "unterminated string literal")
                c = text[i]
                if c == '"':
                    advance(c)
                    i += 1
                    break
                if c == "\\":
                    if i + 1 >= n or text[i + 1] not in '\\"':
                        raise ParseError(
                            ParseErrorKind.LEX_ERROR, here(),
                            "invalid escape in string literal (only \\\\ and \\\" allowed)")
                    out.append(text[i + 1])
                    advance(c)
                    advance(text[i + 1])
                    i += 2
                    continue
                out.append(c)
                advance(c)
                i += 1
            yield Token(TokenKind.STRING, "".join(out), start)
        elif ch in _IDENT_START or ch == ":":
            prefix = ""
            if ch in _IDENT_START:
                j = i
                while j < n and text[j] in _IDENT_CHARS:
                    j += 1
                prefix = text[i:j]
                for c in text[i:j]:
                    advance(c)
                i = j
            if i < n and text[i] == ":":
                advance(":")
                i += 1
                j = i
                while j < n and text[j] in _LOCAL_CHARS:
                    j += 1
                local = text[i:j]
                for c in text[i:j]:
                    advance(c)
                i = j
                yield Token(TokenKind.PNAME, f"{prefix}:{local}", start)
            elif prefix:
                yield Token(TokenKind.KEYWORD, prefix, start)
            else:
                raise ParseError(ParseErrorKind.LEX_ERROR, start, f"unexpected character {ch!r}")
        else:
            raise ParseError(ParseErrorKind.LEX_ERROR, start, f"unexpected character {ch!r}")
    yield Token(TokenKind.EOF, "", here())


_DECLARATION_KINDS = {kind.value: kind for kind in EntityKind}

_UNSUPPORTED_AXIOMS = {
    "SubDataPropertyOf", "EquivalentObjectProperties", "EquivalentDataProperties",
    "DisjointObjectProperties", "DisjointDataProperties", "DisjointUnion",
    "FunctionalObjectProperty", "InverseFunctionalObjectProperty",
    "ReflexiveObjectProperty", "IrreflexiveObjectProperty",
    "SymmetricObjectProperty", "AsymmetricObjectProperty",
    "DataPropertyDomain", "DataPropertyRange", "FunctionalDataProperty",
    "DatatypeDefinition", "HasKey", "SameIndividual", "DifferentIndividuals",
    "NegativeObjectPropertyAssertion", "NegativeDataPropertyAssertion",
    "SubAnnotationPropertyOf", "AnnotationPropertyDomain",
    "AnnotationPropertyRange", "Import", "ObjectPropertyChain",
}

_UNSUPPORTED_CONCEPTS = {
    "ObjectOneOf", "ObjectHasValue", "ObjectHasSelf",
    "ObjectMinCardinality", "ObjectMaxCardinality", "ObjectExactCardinality",
    "DataSomeValuesFrom", "DataAllValuesFrom", "DataHasValue",
    "DataMinCardinality", "DataMaxCardinality", "DataExactCardinality",
    "DataIntersectionOf", "DataUnionOf", "DataComplementOf", "DataOneOf",
}


class _TokenStream:
    """Lazy token source: constructs are rejected before later text is
    scanned, so an unsupported keyword wins over a lex error inside it."""

    def __init__(self, text: str):
        self._gen = _scan(text)
        self._lookahead: Token | None = None

    def peek(self) -> Token:
        if self._lookahead is None:
            self._lookahead = next(self._gen)
        return self._lookahead

    def take(self) -> Token:
        tok = self.peek()
        if tok.kind is not TokenKind.EOF:
            self._lookahead = None
        return tok


class _Parser:
    def __init__(self, stream: _TokenStream):
        self.stream = stream
        self.prefixes: dict[str, str] = {}
        self.depth = 0

    def peek(self) -> Token:
        return self.stream.peek()

    def take(self) -> Token:
        return self.stream.take()

    def expect(self, kind: TokenKind, what: str) -> Token:
        tok = self.peek()
        if tok.kind is not kind:
            self.fail_unexpected(tok, what)
        return self.take()

    def fail_unexpected(self, tok: Token, what: str) -> None:
        shown = tok.text if tok.kind is not TokenKind.EOF else "end of input"
        raise ParseError(ParseErrorKind.UNEXPECTED_TOKEN, tok.location,
                         f"expected {what}, found {shown!r}")

    def resolve_pname(self, tok: Token) -> Iri:
        prefix, _, local = tok.text.partition(":")
        if prefix not in self.prefixes:
            raise ParseError(ParseErrorKind.UNDECLARED_PREFIX, tok.location,
                             f"undeclared prefix '{prefix}:'")
        try:
            return Iri(self.prefixes[prefix] + local)
        except ValueError as exc:
            raise ParseError(ParseErrorKind.LEX_ERROR, tok.location, str(exc))

    def parse_iri(self, what: str = "IRI") -> Iri:
        tok = self.peek()
        if tok.kind is TokenKind.IRI_REF:
            self.take()
            try:
                return Iri(tok.text)
            except ValueError as exc:
                raise ParseError(ParseErrorKind.LEX_ERROR, tok.location, str(exc))
        if tok.kind is TokenKind.PNAME:
            self.take()
            return self.resolve_pname(tok)
        self.fail_unexpected(tok, what)
        raise AssertionError  # unreachable

    # -- document -----------------------------------------------------------

    def parse_document(self) -> tuple[Iri, dict[str, str], list[Axiom]]:
        while self.peek().kind is TokenKind.KEYWORD and self.peek().text == "Prefix":
            self.parse_prefix()
        tok = self.peek()
        if not (tok.kind is TokenKind.KEYWORD and tok.text == "Ontology"):
            self.fail_unexpected(tok, "'Ontology('")
        self.take()
        self.expect(TokenKind.LPAREN, "'('")
        iri_tok = self.expect(TokenKind.IRI_REF, "ontology IRI")
        try:
            ontology_iri = Iri(iri_tok.text)
        except ValueError as exc:
            raise ParseError(ParseErrorKind.LEX_ERROR, iri_tok.location, str(exc))
        axioms: list[Axiom] = []
        while self.peek().kind is not TokenKind.RPAREN:
            axioms.append(self.parse_axiom())
        self.take()  # ')'
        trailing = self.peek()
        if trailing.kind is not TokenKind.EOF:
            if trailing.kind is TokenKind.KEYWORD and trailing.text == "Ontology":
                raise ParseError(ParseErrorKind.DUPLICATE_ONTOLOGY, trailing.location,
                                 "a document holds exactly one Ontology block")
            self.fail_unexpected(trailing, "end of input")
        return ontology_iri, self.prefixes, axioms

    def parse_prefix(self) -> None:
        self.take()  # 'Prefix'
        self.expect(TokenKind.LPAREN, "'('")
        name_tok = self.expect(TokenKind.PNAME, "prefix name like 'p:'")
        prefix, _, local = name_tok.text.partition(":")
        if local:
            raise ParseError(ParseErrorKind.UNEXPECTED_TOKEN, name_tok.location,
                             f"prefix declaration must end in ':', found {name_tok.text!r}")
        self.expect(TokenKind.EQUALS, "'='")
        iri_tok = self.expect(TokenKind.IRI_REF, "IRI")
        self.expect(TokenKind.RPAREN, "')'")
        existing = self.prefixes.get(prefix)
        if existing is not None and existing != iri_tok.text:
            raise ParseError(ParseErrorKind.UNEXPECTED_TOKEN, name_tok.location,
                             f"conflicting redeclaration of prefix '{prefix}:'")
        self.prefixes[prefix] = iri_tok.text

    # -- axioms --------------------------------------------------------------

    def parse_axiom(self) -> Axiom:
        tok = self.peek()
        if tok.kind is not TokenKind.KEYWORD:
            self.fail_unexpected(tok, "an axiom keyword")
        name = tok.text
        if name in _UNSUPPORTED_AXIOMS or name in _UNSUPPORTED_CONCEPTS:
            raise ParseError(ParseErrorKind.UNKNOWN_CONSTRUCT, tok.location,
                             f"unsupported construct '{name}'")
        handler = getattr(self, f"_axiom_{name}", None)
        if handler is None:
            raise ParseError(ParseErrorKind.UNKNOWN_CONSTRUCT, tok.location,
                             f"unknown construct '{name}'")
        self.take()
        self.expect(TokenKind.LPAREN, "'('")
        axiom = handler()
        self.expect(TokenKind.RPAREN, "')'")
        return axiom

    def _axiom_Declaration(self) -> Axiom:
        tok = self.peek()
        if tok.kind is not TokenKind.KEYWORD or tok.text not in _DECLARATION_KINDS:
            if tok.kind is TokenKind.KEYWORD:
                raise ParseError(ParseErrorKind.UNKNOWN_CONSTRUCT, tok.location,
                                 f"unknown entity kind '{tok.text}'")
            self.fail_unexpected(tok, "an entity kind keyword")
        self.take()
        self.expect(TokenKind.LPAREN, "'('")
        iri = self.parse_iri("entity IRI")
        self.expect(TokenKind.RPAREN, "')'")
        return Declaration(Entity(_DECLARATION_KINDS[tok.text], iri))

    def _axiom_SubClassOf(self) -> Axiom:
        return SubConceptOf(self.parse_concept(), self.parse_concept())

    def _axiom_EquivalentClasses(self) -> Axiom:
        return EquivalentConcepts(tuple(self._concept_list(minimum=2)))

    def _axiom_DisjointClasses(self) -> Axiom:
        return DisjointConcepts(tuple(self._concept_list(minimum=2)))

    def _concept_list(self, minimum: int) -> list[ConceptExpression]:
        items = [self.parse_concept() for _ in range(minimum)]
        while self.peek().kind is not TokenKind.RPAREN:
            items.append(self.parse_concept())
        return items

    def _axiom_SubObjectPropertyOf(self) -> Axiom:
        return SubRoleOf(self.parse_iri("object property IRI"),
                         self.parse_iri("object property IRI"))

    def _axiom_InverseObjectProperties(self) -> Axiom:
        return InverseRoles(self.parse_iri("object property IRI"),
                            self.parse_iri("object property IRI"))

    def _axiom_TransitiveObjectProperty(self) -> Axiom:
        return TransitiveRole(self.parse_iri("object property IRI"))

    def _axiom_ObjectPropertyDomain(self) -> Axiom:
        return RoleDomain(self.parse_iri("object property IRI"), self.parse_concept())

    def _axiom_ObjectPropertyRange(self) -> Axiom:
        return RoleRange(self.parse_iri("object property IRI"), self.parse_concept())

    def _axiom_ClassAssertion(self) -> Axiom:
        return ConceptAssertion(self.parse_concept(), self.parse_iri("individual IRI"))

    def _axiom_ObjectPropertyAssertion(self) -> Axiom:
        return RoleAssertion(self.parse_iri("object property IRI"),
                             self.parse_iri("individual IRI"),
                             self.parse_iri("individual IRI"))

    def _axiom_DataPropertyAssertion(self) -> Axiom:
        return DataAssertion(self.parse_iri("data property IRI"),
                             self.parse_iri("individual IRI"),
                             self.parse_literal())

    def _axiom_AnnotationAssertion(self) -> Axiom:
        return AnnotationAssertion(self.parse_iri("annotation property IRI"),
                                   self.parse_iri("subject IRI"),
                                   self.parse_literal())

    # -- expressions ----------------------------------------------------------

    def parse_concept(self) -> ConceptExpression:
        if self.depth >= MAX_NESTING:
            raise ParseError(ParseErrorKind.UNEXPECTED_TOKEN, self.peek().location,
                             "expression nesting too deep")
        tok = self.peek()
        if tok.kind in (TokenKind.IRI_REF, TokenKind.PNAME):
            iri = self.parse_iri("concept IRI")
            if iri == OWL_THING:
                return Top()
            if iri == OWL_NOTHING:
                return Bottom()
            return Named(iri)
        if tok.kind is not TokenKind.KEYWORD:
            self.fail_unexpected(tok, "a concept expression")
        name = tok.text
        if name in _UNSUPPORTED_CONCEPTS:
            raise ParseError(ParseErrorKind.UNKNOWN_CONSTRUCT, tok.location,
                             f"unsupported construct '{name}'")
        self.depth += 1
        try:
            if name == "ObjectIntersectionOf":
                self.take()
                self.expect(TokenKind.LPAREN, "'('")
                ops = self._concept_list(minimum=2)
                self.expect(TokenKind.RPAREN, "')'")
                return Intersection(tuple(ops))
            if name == "ObjectUnionOf":
                self.take()
                self.expect(TokenKind.LPAREN, "'('")
                ops = self._concept_list(minimum=2)
                self.expect(TokenKind.RPAREN, "')'")
                return Union(tuple(ops))
            if name == "ObjectComplementOf":
                self.take()
                self.expect(TokenKind.LPAREN, "'('")
                inner = self.parse_concept()
                self.expect(TokenKind.RPAREN, "')'")
                return Complement(inner)
            if name == "ObjectSomeValuesFrom":
                self.take()
                self.expect(TokenKind.LPAREN, "'('")
                role = self.parse_role()
                filler = self.parse_concept()
                self.expect(TokenKind.RPAREN, "')'")
                return Existential(role, filler)
            if name == "ObjectAllValuesFrom":
                self.take()
                self.expect(TokenKind.LPAREN, "'('")
                role = self.parse_role()
                filler = self.parse_concept()
                self.expect(TokenKind.RPAREN, "')'")
                return Universal(role, filler)
            raise ParseError(ParseErrorKind.UNKNOWN_CONSTRUCT, tok.location,
                             f"unknown construct '{name}'")
        finally:
            self.depth -= 1

    def parse_role(self) -> RoleExpression:
        tok = self.peek()
        if tok.kind is TokenKind.KEYWORD and tok.text == "ObjectInverseOf":
            self.take()
            self.expect(TokenKind.LPAREN, "'('")
            iri = self.parse_iri("object property IRI")
            self.expect(TokenKind.RPAREN, "')'")
            return InverseRole(iri)
        return NamedRole(self.parse_iri("object property IRI"))

    def parse_literal(self) -> Literal:
        tok = self.expect(TokenKind.STRING, "a string literal")
        if self.peek().kind is TokenKind.CARETS:
            self.take()
            datatype = self.parse_iri("datatype IRI")
            return Literal(tok.text, datatype)
        return Literal(tok.text)


def parse(text: str, strict: bool = False) -> Ontology:
    """Parse a functional-syntax document into an Ontology.

    The first error aborts with a ParseError carrying an exact location.
    Lenient mode (the default) auto-declares referenced entities with recorded
    warnings; strict mode raises UndeclaredEntityError for missing
    declarations.
    """
    parser = _Parser(_TokenStream(text))
    ontology_iri, prefixes, axioms = parser.parse_document()
    return make_ontology(ontology_iri, tuple(sorted(prefixes.items())), axioms,
                         strict=strict)


def parse_file(path, strict: bool = False) -> Ontology:
    with open(path, encoding="utf-8") as handle:
        return parse(handle.read(), strict=strict)


# ---------------------------------------------------------------------------
# Canonical serialization
# ---------------------------------------------------------------------------


def _is_safe_local(local: str) -> bool:
    if not local or local[0] not in _IDENT_START:
        return False
    return all(ch in _IDENT_CHARS or ch in "_-" for ch in local)


def render_iri(iri: Iri, prefixes: dict[str, str]) -> str:
    """Prefixed form when a declared prefix matches (longest expansion wins,
    then the lexicographically smallest prefix), else an <angle-bracket> IRI."""
    best: tuple[int, str] | None = None
    for prefix, expansion in prefixes.items():
        if iri.value.startswith(expansion):
            local = iri.value[len(expansion):]
            if _is_safe_local(local):
                candidate = (-len(expansion), prefix)
                if best is None or candidate < best:
                    best = candidate
    if best is None:
        return f"<{iri.value}>"
    prefix = best[1]
    return f"{prefix}:{iri.value[len(prefixes[prefix]):]}"


def _render_literal(literal: Literal, prefixes: dict[str, str]) -> str:
    escaped = literal.lexical.replace("\\", "\\\\").replace('"', '\\"')
    if literal.datatype == XSD_STRING:
        return f'"{escaped}"'
    return f'"{escaped}"^^{render_iri(literal.datatype, prefixes)}'


def render_role(role: RoleExpression, prefixes: dict[str, str]) -> str:
    if isinstance(role, InverseRole):
        return f"ObjectInverseOf({render_iri(role.iri, prefixes)})"
    return render_iri(role.iri, prefixes)


def render_concept(expr: ConceptExpression, prefixes: dict[str, str]) -> str:
    if isinstance(expr, Top):
        return render_iri(OWL_THING, prefixes)
    if isinstance(expr, Bottom):
        return render_iri(OWL_NOTHING, prefixes)
    if isinstance(expr, Named):
        return render_iri(expr.iri, prefixes)
    if isinstance(expr, Intersection):
        inner = " ".join(render_concept(op, prefixes) for op in expr.operands)
        return f"ObjectIntersectionOf({inner})"
    if isinstance(expr, Union):
        inner = " ".join(render_concept(op, prefixes) for op in expr.operands)
        return f"ObjectUnionOf({inner})"
    if isinstance(expr, Complement):
        return f"ObjectComplementOf({render_concept(expr.operand, prefixes)})"
    if isinstance(expr, Existential):
        return (f"ObjectSomeValuesFrom({render_role(expr.role, prefixes)} "
                f"{render_concept(expr.filler, prefixes)})")
    if isinstance(expr, Universal):
        return (f"ObjectAllValuesFrom({render_role(expr.role, prefixes)} "
                f"{render_concept(expr.filler, prefixes)})")
    raise TypeError(f"unknown concept expression: {type(expr).__name__}")


def render_axiom(axiom: Axiom, prefixes: dict[str, str]) -> str:
    r = lambda iri: render_iri(iri, prefixes)
    c = lambda expr: render_concept(expr, prefixes)
    if isinstance(axiom, Declaration):
        return f"Declaration({axiom.entity.kind.value}({r(axiom.entity.iri)}))"
    if isinstance(axiom, SubConceptOf):
        return f"SubClassOf({c(axiom.sub)} {c(axiom.sup)})"
    if isinstance(axiom, EquivalentConcepts):
        return f"EquivalentClasses({' '.join(c(op) for op in axiom.operands)})"
    if isinstance(axiom, DisjointConcepts):
        return f"DisjointClasses({' '.join(c(op) for op in axiom.operands)})"
    if isinstance(axiom, SubRoleOf):
        return f"SubObjectPropertyOf({r(axiom.sub)} {r(axiom.sup)})"
    if isinstance(axiom, InverseRoles):
        return f"InverseObjectProperties({r(axiom.first)} {r(axiom.second)})"
    if isinstance(axiom, TransitiveRole):
        return f"TransitiveObjectProperty({r(axiom.role)})"
    if isinstance(axiom, RoleDomain):
        return f"ObjectPropertyDomain({r(axiom.role)} {c(axiom.concept)})"
    if isinstance(axiom, RoleRange):
        return f"ObjectPropertyRange({r(axiom.role)} {c(axiom.concept)})"
    if isinstance(axiom, ConceptAssertion):
        return f"ClassAssertion({c(axiom.concept)} {r(axiom.individual)})"
    if isinstance(axiom, RoleAssertion):
        return f"ObjectPropertyAssertion({r(axiom.role)} {r(axiom.subject)} {r(axiom.object)})"
    if isinstance(axiom, DataAssertion):
        return (f"DataPropertyAssertion({r(axiom.role)} {r(axiom.subject)} "
                f"{_render_literal(axiom.value, prefixes)})")
    if isinstance(axiom, AnnotationAssertion):
        return (f"AnnotationAssertion({r(axiom.role)} {r(axiom.subject)} "
                f"{_render_literal(axiom.value, prefixes)})")
    raise TypeError(f"unknown axiom type: {type(axiom).__name__}")


def _axiom_group(axiom: Axiom) -> tuple[int, int]:
    # Declarations (grouped by entity kind), then logical axioms, then
    # assertions, then annotations.
    if isinstance(axiom, Declaration):
        return (0, KIND_ORDER[axiom.entity.kind])
    if isinstance(axiom, (ConceptAssertion, RoleAssertion, DataAssertion)):
        return (2, 0)
    if isinstance(axiom, AnnotationAssertion):
        return (3, 0)
    return (1, 0)


def serialize(ontology: Ontology) -> str:
    """Canonical text form: prefixes sorted, axioms grouped by kind and
    sorted by their serialized text, one per line; byte-identical across runs
    for equal inputs."""
    prefixes = ontology.prefix_map()
    lines = [f"Prefix({prefix}:=<{expansion}>)"
             for prefix, expansion in sorted(prefixes.items())]
    lines.append(f"Ontology(<{ontology.iri.value}>")
    rendered = sorted(
        (_axiom_group(axiom) + (render_axiom(axiom, prefixes),) for axiom in ontology.axioms)
    )
    lines.extend(text for _, _, text in rendered)
    lines.append(")")
    return "\n".join(lines) + "\n"
