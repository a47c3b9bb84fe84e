"""ontokit: parse, reason over, analyze, and publish ontologies.

A self-contained toolkit for a functional-syntax ontology subset: a parser
and canonical serializer, a tableau reasoner (satisfiability, subsumption,
classification, consistency, realization), hierarchy and probe analyses, a
deterministic static-site generator, and a CLI tying them together.
"""

__version__ = "0.1.0"

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
    EntityCounts,
    EntityKind,
    EquivalentConcepts,
    Existential,
    Intersection,
    InverseRole,
    InverseRoles,
    Iri,
    Literal,
    Named,
    NamedRole,
    Ontology,
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
    add_axiom,
    compute_counts,
    declared_entities,
    make_ontology,
    signature,
    usages,
)
from .parser import ParseError, parse, parse_file, serialize, tokenize
from .reasoner import (
    CompletionGraph,
    InconsistentOntologyError,
    NormalizedTBox,
    ReasonerLimits,
    ResourceLimitExceeded,
    SatResult,
    Taxonomy,
    classify,
    entailed_types,
    instances_of,
    is_consistent,
    is_satisfiable,
    is_subsumed_by,
    materialize_inverses,
    normalize,
    realize,
    to_nnf,
)
from .analysis import (
    CompetencyQuery,
    HierarchyDiff,
    ProbeResult,
    ProbeSpec,
    QueryKind,
    answer_competency_query,
    asserted_taxonomy,
    diff_taxonomies,
    parse_probe_file,
    run_probes,
)
from .sitegen import LinkReport, SiteDocument, generate_site, render_expression, verify_links
