"""Targeted stress of blocking and cyclic TBoxes.

Cycle-heavy random TBoxes force the blocking machinery to engage; every
satisfiable verdict's witness is collapsed into a finite loop-back
interpretation and model-checked semantically, which would expose premature
blocking or missed propagation into blocked nodes.
"""

import random

from ontokit.model import (
    Complement,
    Declaration,
    DisjointConcepts,
    Entity,
    EntityKind,
    Existential,
    InverseRole,
    InverseRoles,
    Iri,
    Named,
    NamedRole,
    SubConceptOf,
    TransitiveRole,
    Universal,
    make_ontology,
)
from ontokit.reasoner import is_satisfiable, normalize
from modelsearch import check_model, eval_concept, interpretation_from_witness, verify_saturated

NS = "http://example.org/cyc#"


def _cyclic_ontology(rng, with_transitive=False, with_inverse=False):
    n = rng.randint(2, 4)
    concepts = [Iri(f"{NS}A{i}") for i in range(n)]
    role = Iri(f"{NS}r")
    axioms = [Declaration(Entity(EntityKind.CONCEPT, c)) for c in concepts]
    axioms.append(Declaration(Entity(EntityKind.OBJECT_ROLE, role)))
    # Every concept generates a successor: guarantees infinite chains unless
    # blocking fires.
    for c in concepts:
        axioms.append(SubConceptOf(
            Named(c), Existential(NamedRole(role), Named(rng.choice(concepts)))))
    if rng.random() < 0.6:
        axioms.append(SubConceptOf(
            Named(rng.choice(concepts)),
            Universal(NamedRole(role), Named(rng.choice(concepts)))))
    if rng.random() < 0.4 and n >= 2:
        a, b = rng.sample(concepts, 2)
        axioms.append(DisjointConcepts((Named(a), Named(b))))
    if with_transitive:
        axioms.append(TransitiveRole(role))
    if with_inverse:
        other = Iri(f"{NS}s")
        axioms.append(Declaration(Entity(EntityKind.OBJECT_ROLE, other)))
        axioms.append(InverseRoles(role, other))
        if rng.random() < 0.5:
            axioms.append(SubConceptOf(
                Named(rng.choice(concepts)),
                Universal(NamedRole(other), Named(rng.choice(concepts)))))
    ontology = make_ontology(Iri(NS.rstrip("#")), (("", NS),), axioms, strict=True)
    return ontology, concepts


def _run_case(rng, **kwargs):
    ontology, concepts = _cyclic_ontology(rng, **kwargs)
    tbox = normalize(ontology)
    probe = Named(rng.choice(concepts))
    verdict = is_satisfiable(probe, tbox)
    blocked = False
    if verdict.satisfiable:
        assert verify_saturated(verdict.witness, tbox) == []
        blocked = bool(verdict.witness.blocking)
        interp = interpretation_from_witness(verdict.witness, ontology)
        violated = check_model(interp, ontology.axioms)
        assert violated == [], violated
        assert 0 in eval_concept(probe, interp)
    return blocked


def test_forward_cycles_block_and_unravel_to_models():
    rng = random.Random(411)
    blocked_cases = 0
    for _ in range(80):
        if _run_case(rng):
            blocked_cases += 1
    assert blocked_cases >= 25


def test_transitive_cycles_block_and_unravel_to_models():
    rng = random.Random(412)
    blocked_cases = 0
    for _ in range(60):
        if _run_case(rng, with_transitive=True):
            blocked_cases += 1
    assert blocked_cases >= 15


def test_inverse_cycles_use_equality_blocking_and_stay_models():
    rng = random.Random(413)
    blocked_cases = 0
    for _ in range(60):
        if _run_case(rng, with_inverse=True):
            blocked_cases += 1
    assert blocked_cases >= 10


def test_subset_blocking_not_applied_with_inverse_constructs():
    # A shape where subset blocking would block too early under inverse
    # back-propagation: the child's label is a strict subset of the root's.
    a, b = Iri(f"{NS}A"), Iri(f"{NS}B")
    role = Iri(f"{NS}r")
    axioms = [
        Declaration(Entity(EntityKind.CONCEPT, a)),
        Declaration(Entity(EntityKind.CONCEPT, b)),
        Declaration(Entity(EntityKind.OBJECT_ROLE, role)),
        SubConceptOf(Named(a), Existential(NamedRole(role), Named(b))),
        SubConceptOf(Named(b), Existential(NamedRole(role), Named(b))),
        SubConceptOf(Named(b), Universal(InverseRole(role), Complement(Named(a)))),
    ]
    ontology = make_ontology(Iri(NS.rstrip("#")), (("", NS),), axioms, strict=True)
    tbox = normalize(ontology)
    assert tbox.uses_inverse
    # Semantically unsatisfiable: the first successor forces ¬A back onto
    # the root.
    assert not is_satisfiable(Named(a), tbox).satisfiable
    assert is_satisfiable(Named(b), tbox).satisfiable
