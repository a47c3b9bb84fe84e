"""Acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line (visible with `pytest -s` or on failure)
and pins the stated tolerances: result values exactly, runtimes by wall
clock. Run with `pytest tests/test_acceptance.py -v`.
"""

import contextlib
import json
import random
import time

from ontokit.cli import run
from ontokit.model import (
    Bottom,
    Declaration,
    DisjointConcepts,
    Entity,
    EntityKind,
    Iri,
    Named,
    RoleAssertion,
    Top,
    add_axiom,
    compute_counts,
    declared_entities,
    make_ontology,
)
from ontokit.parser import parse, serialize
from ontokit.reasoner import (
    classify,
    instances_of,
    is_subsumed_by,
    materialize_inverses,
    normalize,
    realize,
)
from ontokit.disease import DISEASE_NS, GIARDIA
from genontology import random_alc_ontology
from modelsearch import check_model, eval_concept, find_countermodel


@contextlib.contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"FAIL  {name}")
        raise
    print(f"PASS  {name}")


def iri(fragment):
    return Iri(DISEASE_NS + fragment)


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_criterion_defined_class_inference(capsys, fixture_dir):
    with criterion("defined-class inference: exactly one added parent link, <1s"):
        start = time.perf_counter()
        code, out = invoke(capsys, "diff", str(fixture_dir / "disease.ofn"),
                           "--format", "json")
        elapsed = time.perf_counter() - start
        assert code == 0
        payload = json.loads(out)
        assert payload["addedParentLinks"] == [{
            "child": DISEASE_NS + "OrganismStructure",
            "parent": DISEASE_NS + "Infectious",
        }]
        assert payload["removedParentLinks"] == []
        assert elapsed < 1.0, f"diff took {elapsed:.2f}s"


def test_criterion_probe_table_reproduction(capsys, fixture_dir, tmp_path, disease):
    with criterion("probe table: three UNSATISFIABLE, each flips without its "
                   "disjointness, <1s"):
        probes_path = str(fixture_dir / "table1.probes")
        start = time.perf_counter()
        code, out = invoke(capsys, "probe", str(fixture_dir / "disease.ofn"),
                           "--probes", probes_path, "--expect-unsat")
        elapsed = time.perf_counter() - start
        assert code == 0
        lines = [l for l in out.splitlines() if l.strip()]
        assert len(lines) == 3
        assert all(line.endswith("UNSATISFIABLE") for line in lines)
        assert elapsed < 1.0, f"probe took {elapsed:.2f}s"

        probe_supers = [("Autoimmune", "Infectious"), ("External", "Internal"),
                        ("AreaStructure", "OrganismStructure")]
        for index, supers in enumerate(probe_supers):
            expanded = {DISEASE_NS + s for s in supers}
            remaining = [
                a for a in disease.axioms
                if not (isinstance(a, DisjointConcepts)
                        and {op.iri.value for op in a.operands} >= expanded)
            ]
            trimmed = make_ontology(disease.iri, disease.prefixes, remaining,
                                    strict=True)
            path = tmp_path / f"trimmed{index}.ofn"
            path.write_text(serialize(trimmed), encoding="utf-8")
            code, out = invoke(capsys, "probe", str(path),
                               "--probes", probes_path, "--format", "json")
            results = json.loads(out)["probes"]
            assert results[index]["satisfiable"] is True, supers
            for other in range(3):
                if other != index:
                    assert results[other]["satisfiable"] is False


def test_criterion_consistency(capsys, fixture_dir):
    with criterion("consistency: check exits 0, bottom group empty"):
        code, out = invoke(capsys, "check", str(fixture_dir / "disease.ofn"))
        assert code == 0
        assert "consistent: true" in out
        code, out = invoke(capsys, "classify", str(fixture_dir / "disease.ofn"),
                           "--format", "json")
        assert code == 0
        groups = json.loads(out)["taxonomy"]["groups"]
        assert groups[1]["kind"] == "bottom"
        assert groups[1]["members"] == []


def test_criterion_entity_counts(capsys, fixture_dir):
    with criterion("entity counts: 24/9/1/1/1/1 plus machine-readable deviation "
                   "versus published 26/10"):
        code, out = invoke(capsys, "stats", str(fixture_dir / "disease.ofn"),
                           "--format", "json")
        assert code == 0
        payload = json.loads(out)
        counts = payload["counts"]
        assert counts["dataRoles"] == 1
        assert counts["annotationRoles"] == 1
        assert counts["individuals"] == 1
        assert counts["datatypes"] == 1
        assert counts["concepts"] == 24
        assert counts["objectRoles"] == 9
        deviations = {d["field"]: d for d in payload["deviations"]}
        assert deviations["concepts_including_top"] == {
            "field": "concepts_including_top", "actual": 25, "published": 26}
        assert deviations["object_roles"] == {
            "field": "object_roles", "actual": 9, "published": 10}


def test_criterion_realization(disease):
    with criterion("realization: instancesOf(Infectious) = {Giardia}, most "
                   "specific = {OrganismStructure}"):
        assert instances_of(Named(iri("Infectious")), disease) == (GIARDIA,)
        assert realize(disease)[GIARDIA] == (iri("OrganismStructure"),)


def test_criterion_website_white_box(capsys, fixture_dir, tmp_path):
    with criterion("website: counts match stats, page per entity, data value "
                   "row, zero broken links, byte-identical reruns"):
        ofn = str(fixture_dir / "disease.ofn")
        first, second = tmp_path / "one", tmp_path / "two"
        code, out = invoke(capsys, "site", ofn, "--out", str(first),
                           "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["brokenLinks"] == 0
        code, _ = invoke(capsys, "site", ofn, "--out", str(second))
        assert code == 0

        ontology = parse((fixture_dir / "disease.ofn").read_text(), strict=True)
        assert report["documents"] == len(declared_entities(ontology)) + 1

        counts = compute_counts(ontology)
        index = (first / "index.html").read_text(encoding="utf-8")
        for label, value in [("Classes", counts.concepts),
                             ("Object Properties", counts.object_roles),
                             ("Data Properties", counts.data_roles),
                             ("Annotation Properties", counts.annotation_roles),
                             ("Individuals", counts.individuals),
                             ("Data types", counts.datatypes)]:
            assert f"<tr><td>{label}</td><td>{value}</td></tr>" in index

        giardia = (first / "Giardia_lambliia.html").read_text(encoding="utf-8")
        assert "locomotion: Flagellates" in giardia

        first_files = sorted(p.name for p in first.iterdir())
        second_files = sorted(p.name for p in second.iterdir())
        assert first_files == second_files
        for name in first_files:
            assert (first / name).read_bytes() == (second / name).read_bytes()


def test_criterion_reasoner_property_suite():
    with criterion("property suite: 500 random ALC ontologies, oracle never "
                   "contradicts subsumption, laws and round-trip hold, <60s"):
        start = time.perf_counter()
        rng = random.Random(73_2026)
        conclusive = 0
        countermodels = 0
        for _ in range(500):
            ontology, concepts, _roles = random_alc_ontology(rng)
            tbox = normalize(ontology)
            for concept in concepts:
                assert is_subsumed_by(Named(concept), Named(concept), tbox)
                assert is_subsumed_by(Named(concept), Top(), tbox)
                assert is_subsumed_by(Bottom(), Named(concept), tbox)
            assert parse(serialize(ontology), strict=True) == ontology
            sub, sup = Named(rng.choice(concepts)), Named(rng.choice(concepts))
            subsumed = is_subsumed_by(sub, sup, tbox)
            model, exhausted = find_countermodel(ontology, sub, sup, budget=60_000)
            if exhausted:
                conclusive += 1
            if model is not None:
                countermodels += 1
                assert check_model(model, ontology.axioms) == []
                assert eval_concept(sub, model) - eval_concept(sup, model)
                assert not subsumed, serialize(ontology)
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"suite took {elapsed:.1f}s"
        assert conclusive >= 300, conclusive
        assert countermodels >= 150, countermodels


def test_criterion_inverse_materialization(disease):
    with criterion("inverse materialization: hasSymptoms(d,s) yields "
                   "isSymptomsOf(s,d); idempotent"):
        o = add_axiom(disease, Declaration(Entity(EntityKind.INDIVIDUAL, iri("d"))))
        o = add_axiom(o, Declaration(Entity(EntityKind.INDIVIDUAL, iri("s"))))
        o = add_axiom(o, RoleAssertion(iri("hasSymptoms"), iri("d"), iri("s")))
        once = materialize_inverses(o)
        assert RoleAssertion(iri("isSymptomsOf"), iri("s"), iri("d")) in once.axioms
        twice = materialize_inverses(once)
        assert serialize(twice) == serialize(once)
