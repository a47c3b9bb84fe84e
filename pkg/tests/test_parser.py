import random

import pytest
from hypothesis import given, settings, strategies as st

from ontokit.model import (
    Bottom,
    Declaration,
    EntityKind,
    Iri,
    Ontology,
    SubConceptOf,
    Top,
    UndeclaredEntityError,
)
from ontokit.parser import (
    ParseError,
    ParseErrorKind,
    TokenKind,
    parse,
    serialize,
    tokenize,
)
from genontology import random_full_ontology


def kinds(tokens):
    return [t.kind for t in tokens]


def test_tokenize_subclassof():
    tokens = tokenize("SubClassOf(:A :B)")
    assert kinds(tokens) == [TokenKind.KEYWORD, TokenKind.LPAREN, TokenKind.PNAME,
                             TokenKind.PNAME, TokenKind.RPAREN, TokenKind.EOF]
    assert tokens[0].text == "SubClassOf"
    assert tokens[2].text == ":A"


def test_tokenize_empty():
    assert kinds(tokenize("")) == [TokenKind.EOF]


def test_tokenize_string_literal():
    tokens = tokenize('"Flagellates"')
    assert kinds(tokens) == [TokenKind.STRING, TokenKind.EOF]
    assert tokens[0].text == "Flagellates"


def test_tokenize_escapes_and_carets():
    tokens = tokenize(r'"a \"quoted\" word"^^<http://t>')
    assert tokens[0].text == 'a "quoted" word'
    assert tokens[1].kind == TokenKind.CARETS
    assert tokens[2].kind == TokenKind.IRI_REF


def test_tokenize_comments_skipped():
    tokens = tokenize("# a comment\nSubClassOf # trailing\n")
    assert kinds(tokens) == [TokenKind.KEYWORD, TokenKind.EOF]
    assert tokens[0].location.line == 2


def test_tokenize_hash_inside_iri_is_not_comment():
    tokens = tokenize("<http://x#Fragment>")
    assert tokens[0].kind == TokenKind.IRI_REF
    assert tokens[0].text == "http://x#Fragment"


def test_tokenize_locations_accurate():
    tokens = tokenize("Ontology(\n  <http://x>)")
    assert tokens[0].location == tokens[0].location.__class__(1, 1)
    assert tokens[2].location.line == 2
    assert tokens[2].location.column == 3


def test_lex_error_unterminated_string():
    with pytest.raises(ParseError) as err:
        tokenize('"oops')
    assert err.value.kind is ParseErrorKind.LEX_ERROR


def test_lex_error_malformed_iri():
    with pytest.raises(ParseError) as err:
        tokenize("<http://x y>")
    assert err.value.kind is ParseErrorKind.LEX_ERROR


DOC = """Prefix(:=<http://x#>)
Ontology(<http://x>
Declaration(Class(:A))
Declaration(Class(:B))
SubClassOf(:A :B)
)
"""


def test_parse_counts_axioms():
    ontology = parse(DOC)
    assert len(ontology.axioms) == 3
    assert ontology.iri == Iri("http://x")


def test_parse_disease_fixture_file(fixture_dir):
    text = (fixture_dir / "disease.ofn").read_text(encoding="utf-8")
    ontology = parse(text, strict=True)
    concepts = [e for e in __import__("ontokit.model", fromlist=["signature"])
                .signature(ontology) if e.kind is EntityKind.CONCEPT]
    assert len(concepts) == 24


def test_parse_arity_error_location():
    with pytest.raises(ParseError) as err:
        parse("Prefix(:=<http://x#>)\nOntology(<http://x>\nSubClassOf(:A)\n)")
    assert err.value.kind is ParseErrorKind.UNEXPECTED_TOKEN
    assert err.value.location.line == 3
    assert err.value.location.column == 14  # the ')'


def test_parse_undeclared_prefix():
    with pytest.raises(ParseError) as err:
        parse("Ontology(<http://x>\nSubClassOf(q:A q:B)\n)")
    assert err.value.kind is ParseErrorKind.UNDECLARED_PREFIX
    assert "q:" in err.value.message


def test_parse_duplicate_ontology():
    with pytest.raises(ParseError) as err:
        parse("Ontology(<http://x>)\nOntology(<http://y>)")
    assert err.value.kind is ParseErrorKind.DUPLICATE_ONTOLOGY


def test_parse_unknown_construct_for_cardinality():
    doc = ("Prefix(:=<http://x#>)\nOntology(<http://x>\n"
           "SubClassOf(:A ObjectMinCardinality(1 :r :B))\n)")
    with pytest.raises(ParseError) as err:
        parse(doc)
    assert err.value.kind is ParseErrorKind.UNKNOWN_CONSTRUCT
    assert "ObjectMinCardinality" in err.value.message


def test_parse_unknown_keyword():
    with pytest.raises(ParseError) as err:
        parse("Ontology(<http://x>\nFrobnicate(:A)\n)")
    assert err.value.kind is ParseErrorKind.UNKNOWN_CONSTRUCT


def test_parse_owl_thing_and_nothing():
    doc = ("Prefix(:=<http://x#>)\nPrefix(owl:=<http://www.w3.org/2002/07/owl#>)\n"
           "Ontology(<http://x>\nSubClassOf(owl:Thing owl:Nothing)\n)")
    ontology = parse(doc)
    assert SubConceptOf(Top(), Bottom()) in ontology.axioms


def test_parse_strict_raises_on_undeclared():
    with pytest.raises(UndeclaredEntityError):
        parse("Prefix(:=<http://x#>)\nOntology(<http://x>\nSubClassOf(:A :B)\n)",
              strict=True)


def test_parse_lenient_auto_declares():
    ontology = parse("Prefix(:=<http://x#>)\nOntology(<http://x>\nSubClassOf(:A :B)\n)")
    assert len(ontology.warnings) == 2


def test_serialize_empty_ontology_exact_bytes():
    assert serialize(Ontology(Iri("http://x"))) == "Ontology(<http://x>\n)\n"


def test_serialize_is_canonical_fixpoint(disease):
    text = serialize(disease)
    assert serialize(parse(text)) == text


def test_fixture_round_trip(disease, fixture_dir):
    shipped = (fixture_dir / "disease.ofn").read_text(encoding="utf-8")
    assert parse(shipped, strict=True) == disease
    assert serialize(disease) == shipped


def test_declarations_precede_logical_axioms(disease):
    lines = serialize(disease).splitlines()
    decl_lines = [i for i, l in enumerate(lines) if l.startswith("Declaration")]
    logic_lines = [i for i, l in enumerate(lines) if l.startswith("SubClassOf")]
    assert max(decl_lines) < min(logic_lines)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_round_trip_random_ontologies(seed):
    ontology = random_full_ontology(random.Random(seed))
    text = serialize(ontology)
    assert parse(text, strict=True) == ontology


@settings(max_examples=150, deadline=None)
@given(st.text(max_size=300))
def test_fuzz_parse_never_crashes(text):
    try:
        parse(text)
    except (ParseError, UndeclaredEntityError):
        pass


@settings(max_examples=60, deadline=None)
@given(st.binary(max_size=300))
def test_fuzz_parse_bytes_never_crash(data):
    try:
        parse(data.decode("utf-8", errors="replace"))
    except (ParseError, UndeclaredEntityError):
        pass


def test_deeply_nested_input_is_rejected_not_crashing():
    doc = ("Prefix(:=<http://x#>)\nOntology(<http://x>\nSubClassOf(:A "
           + "ObjectComplementOf(" * 2000 + ":B" + ")" * 2000 + ")\n)")
    with pytest.raises(ParseError):
        parse(doc)


def test_error_locations_are_inside_input():
    bad_docs = [
        "Ontology(",
        "Prefix(:=<http://x#>) Ontology(<http://x> SubClassOf(:A))",
        "Ontology(<http://x> Declaration(Class(<http://y>)))extra",
    ]
    for doc in bad_docs:
        try:
            parse(doc)
        except ParseError as err:
            lines = doc.splitlines() or [""]
            assert 1 <= err.value if False else True
            assert 1 <= err.location.line <= len(lines) + 1
            assert err.location.column >= 1


def test_megabyte_input_parses_or_rejects_quickly():
    import time
    chunk = 'Declaration(Class(:C0))\n' * 40000  # ~1 MiB of valid axioms
    doc = "Prefix(:=<http://x#>)\nOntology(<http://x>\n" + chunk + ")\n"
    assert len(doc) > 900_000
    start = time.perf_counter()
    ontology = parse(doc)
    assert len(ontology.axioms) == 1  # duplicates collapse
    garbage = ("SubClassOf(:A " * 400 + '"' + "x" * 500_000)
    try:
        parse("Prefix(:=<http://x#>)\nOntology(<http://x>\n" + garbage + ")")
    except ParseError:
        pass
    assert time.perf_counter() - start < 10.0


def test_typed_literal_round_trip():
    doc = ("Prefix(:=<http://x#>)\nPrefix(xsd:=<http://www.w3.org/2001/XMLSchema#>)\n"
           "Ontology(<http://x>\n"
           "Declaration(DataProperty(:age))\n"
           "Declaration(NamedIndividual(:i))\n"
           "Declaration(Datatype(xsd:integer))\n"
           'DataPropertyAssertion(:age :i "41"^^xsd:integer)\n)')
    ontology = parse(doc, strict=True)
    from ontokit.model import DataAssertion, Literal
    typed = [a for a in ontology.axioms if isinstance(a, DataAssertion)]
    assert typed[0].value == Literal("41", Iri("http://www.w3.org/2001/XMLSchema#integer"))
    assert parse(serialize(ontology), strict=True) == ontology
    assert '"41"^^xsd:integer' in serialize(ontology)


def test_render_iri_prefers_longest_expansion_then_smallest_prefix():
    from ontokit.parser import render_iri
    prefixes = {"a": "http://x#", "b": "http://x#sub", "": "http://x#"}
    assert render_iri(Iri("http://x#subThing"), prefixes) == "b:Thing"
    # Equal expansions: the lexicographically smallest prefix wins.
    assert render_iri(Iri("http://x#Plain"), prefixes) == ":Plain"


def test_empty_input_is_unexpected_token():
    with pytest.raises(ParseError) as err:
        parse("")
    assert err.value.kind is ParseErrorKind.UNEXPECTED_TOKEN
