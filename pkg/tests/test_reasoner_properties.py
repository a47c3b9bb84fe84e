"""Randomized cross-checks of the tableau against independent semantics.

Each random TBox is attacked three ways: a bounded-domain countermodel search
that must never contradict subsumption answers, semantic model checking of
every satisfiability witness (on equivalence-free instances, where the label
reading of a witness is a genuine interpretation), and a declarative
re-verification of witness saturation and blocking.
"""

import random

from ontokit.model import (
    Bottom,
    Complement,
    EquivalentConcepts,
    Intersection,
    Named,
    Top,
)
from ontokit.parser import parse, serialize
from ontokit.reasoner import (
    is_consistent,
    is_satisfiable,
    is_subsumed_by,
    materialize_inverses,
    normalize,
    to_nnf,
)
from genontology import random_alc_ontology, random_full_ontology
from modelsearch import (
    check_model,
    eval_concept,
    find_countermodel,
    interpretation_from_witness,
    verify_saturated,
)

SEED = 20260810


def _has_equivalences(ontology):
    return any(isinstance(a, EquivalentConcepts) for a in ontology.axioms)


def _check_witness(witness, ontology, tbox, probe):
    """Saturation always; semantic model check when labels are a model."""
    assert verify_saturated(witness, tbox) == []
    if _has_equivalences(ontology):
        return
    interp = interpretation_from_witness(witness, ontology)
    violated = check_model(interp, ontology.axioms)
    assert violated == [], f"witness is not a model: {violated}"
    assert 0 in eval_concept(to_nnf(probe), interp)


def test_oracle_and_witness_agreement_on_random_tboxes():
    rng = random.Random(SEED)
    oracle_conclusive = 0
    countermodels_found = 0
    for _ in range(120):
        ontology, concepts, _roles = random_alc_ontology(rng)
        tbox = normalize(ontology)
        sub = Named(rng.choice(concepts))
        sup = Named(rng.choice(concepts))
        subsumed = is_subsumed_by(sub, sup, tbox)
        model, exhausted = find_countermodel(ontology, sub, sup, budget=120_000)
        if model is not None:
            countermodels_found += 1
            # The oracle's model refutes the subsumption semantically.
            assert check_model(model, ontology.axioms) == []
            assert eval_concept(sub, model) - eval_concept(sup, model)
            assert not subsumed, (serialize(ontology), sub, sup)
        if exhausted:
            oracle_conclusive += 1
        if not subsumed:
            probe = Intersection((sub, to_nnf(Complement(sup))))
            verdict = is_satisfiable(probe, tbox)
            assert verdict.satisfiable
            _check_witness(verdict.witness, ontology, tbox, probe)
    assert oracle_conclusive >= 60
    assert countermodels_found >= 30


def test_reflexivity_and_top_bottom_laws_on_random_tboxes():
    rng = random.Random(SEED + 1)
    for _ in range(40):
        ontology, concepts, _roles = random_alc_ontology(rng)
        tbox = normalize(ontology)
        for iri in concepts:
            assert is_subsumed_by(Named(iri), Named(iri), tbox)
            assert is_subsumed_by(Named(iri), Top(), tbox)
            assert is_subsumed_by(Bottom(), Named(iri), tbox)


def test_subsumption_is_transitive_on_random_tboxes():
    rng = random.Random(SEED + 2)
    nontrivial = 0
    for _ in range(40):
        ontology, concepts, _roles = random_alc_ontology(rng)
        tbox = normalize(ontology)
        names = concepts[:4]
        holds = {(c, d): is_subsumed_by(Named(c), Named(d), tbox)
                 for c in names for d in names}
        for c in names:
            for d in names:
                for e in names:
                    if holds[(c, d)] and holds[(d, e)]:
                        assert holds[(c, e)], (serialize(ontology), c, d, e)
                        if len({c, d, e}) == 3:
                            nontrivial += 1
    assert nontrivial >= 3


def test_witnesses_with_inverse_and_transitive_roles_are_models():
    rng = random.Random(SEED + 3)
    model_checked = 0
    for _ in range(60):
        ontology = random_full_ontology(rng)
        tbox = normalize(ontology)
        concepts = sorted({a.entity.iri.value for a in ontology.axioms
                           if hasattr(a, "entity")
                           and a.entity.kind.value == "Class"})
        if not concepts:
            continue
        from ontokit.model import Iri
        probe = Named(Iri(rng.choice(concepts)))
        verdict = is_satisfiable(probe, tbox)
        if not verdict.satisfiable:
            continue
        assert verify_saturated(verdict.witness, tbox) == []
        if not _has_equivalences(ontology):
            interp = interpretation_from_witness(verdict.witness, ontology)
            assert check_model(interp, ontology.axioms) == []
            assert eval_concept(probe, interp)
            model_checked += 1
    assert model_checked >= 10


def test_materialize_inverses_preserves_consistency_verdict():
    rng = random.Random(SEED + 4)
    for _ in range(40):
        ontology = random_full_ontology(rng)
        assert is_consistent(ontology) == is_consistent(materialize_inverses(ontology))


def test_round_trip_on_random_alc_instances():
    rng = random.Random(SEED + 5)
    for _ in range(60):
        ontology, _concepts, _roles = random_alc_ontology(rng)
        assert parse(serialize(ontology), strict=True) == ontology


def test_classification_never_contradicts_oracle_countermodels():
    # For tiny instances the oracle can exhaust the bounded space per pair:
    # any countermodel it finds must keep the pair out of the taxonomy closure.
    from ontokit.reasoner import classify

    rng = random.Random(SEED + 6)
    pairs_checked = 0
    for _ in range(40):
        ontology, concepts, _roles = random_alc_ontology(rng)
        if len(concepts) > 3:
            continue
        taxonomy = classify(ontology)
        closure = taxonomy.closure_pairs()
        for c in concepts:
            for d in concepts:
                if c == d:
                    continue
                model, exhausted = find_countermodel(
                    ontology, Named(c), Named(d), budget=40_000)
                if model is not None:
                    assert (c, d) not in closure, (serialize(ontology), c, d)
                    pairs_checked += 1
                elif exhausted:
                    # No bounded countermodel; nothing to conclude either way.
                    pass
    assert pairs_checked >= 40


def test_nnf_preserves_semantics_under_random_interpretations():
    from itertools import product as _product
    from ontokit.model import Iri
    from modelsearch import Interpretation
    from genontology import random_expression, NS as GEN_NS

    rng = random.Random(SEED + 7)
    concepts = [Iri(f"{GEN_NS}A{i}") for i in range(3)]
    roles = [Iri(f"{GEN_NS}r0")]
    for _ in range(300):
        expr = random_expression(rng, concepts, roles, depth=3)
        size = rng.randint(1, 3)
        domain = list(range(size))
        interp = Interpretation(
            size=size,
            concepts={c: frozenset(x for x in domain if rng.random() < 0.5)
                      for c in concepts},
            roles={r: frozenset(p for p in _product(domain, domain)
                                if rng.random() < 0.4)
                   for r in roles},
        )
        from modelsearch import eval_concept as ev
        assert ev(expr, interp) == ev(to_nnf(expr), interp), expr


def test_materialize_inverses_postcondition_independent_check():
    from ontokit.model import InverseRoles, RoleAssertion, SubRoleOf

    rng = random.Random(SEED + 8)
    for _ in range(40):
        ontology = random_full_ontology(rng)
        result = materialize_inverses(ontology)
        assertions = {(a.role, a.subject, a.object)
                      for a in result.axioms if isinstance(a, RoleAssertion)}
        inverse_pairs = [(a.first, a.second) for a in result.axioms
                         if isinstance(a, InverseRoles)]
        # Independent sub-role closure at the named level.
        supers = {}
        for a in result.axioms:
            if isinstance(a, SubRoleOf):
                supers.setdefault(a.sub, set()).add(a.sup)
        changed = True
        while changed:
            changed = False
            for sub, ups in supers.items():
                extra = set()
                for up in ups:
                    extra |= supers.get(up, set())
                if not extra <= ups:
                    ups |= extra
                    changed = True
        for role, subject, obj in assertions:
            implied_supers = {role} | supers.get(role, set())
            for first, second in inverse_pairs:
                if first in implied_supers:
                    assert (second, obj, subject) in assertions
                if second in implied_supers:
                    assert (first, obj, subject) in assertions
