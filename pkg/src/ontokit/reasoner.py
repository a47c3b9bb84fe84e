"""Tableau-based description-logic engine.

Covers ALC plus role hierarchies, inverse roles, and transitive roles:
concept satisfiability, subsumption, classification, ABox consistency,
realization, and instance retrieval. The tableau uses lazy unfolding for
definitional equivalences, absorption for primitive named inclusions, and
internalized disjunctions for everything else; expansion order and tie-breaks
are fixed so results are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional

from .model import (
    AnnotationAssertion,
    Bottom,
    BUILTIN_CONCEPTS,
    Complement,
    ConceptAssertion,
    ConceptExpression,
    DataAssertion,
    Declaration,
    DisjointConcepts,
    EntityKind,
    EquivalentConcepts,
    Existential,
    Intersection,
    InverseRole,
    InverseRoles,
    Iri,
    Named,
    NamedRole,
    Ontology,
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
    add_axiom,
    inverse_of,
    signature,
)


class ResourceLimitExceeded(Exception):
    """Node count or branch depth went past the configured limits."""


class InconsistentOntologyError(Exception):
    """Raised by operations whose precondition is a consistent ontology."""


class UnsupportedAxiomError(Exception):
    """Raised by normalize on an axiom kind outside the supported fragment."""


@dataclass(frozen=True)
class ReasonerLimits:
    max_nodes: int = 100_000
    max_branch_depth: int = 10_000

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_branch_depth <= 0:
            raise ValueError("reasoner limits must be strictly positive")


DEFAULT_LIMITS = ReasonerLimits()


# ---------------------------------------------------------------------------
# Negation normal form
# ---------------------------------------------------------------------------


def to_nnf(expr: ConceptExpression) -> ConceptExpression:
    """Push negations down to named concepts, preserving semantics. The
    built-in top/bottom names normalize to their constant forms so the
    engine never tracks them as memberships."""
    if isinstance(expr, Named):
        if expr.iri == OWL_THING:
            return Top()
        if expr.iri in BUILTIN_CONCEPTS:
            return Bottom()
        return expr
    if isinstance(expr, (Top, Bottom)):
        return expr
    if isinstance(expr, Intersection):
        return Intersection(tuple(to_nnf(op) for op in expr.operands))
    if isinstance(expr, Union):
        return Union(tuple(to_nnf(op) for op in expr.operands))
    if isinstance(expr, Existential):
        return Existential(expr.role, to_nnf(expr.filler))
    if isinstance(expr, Universal):
        return Universal(expr.role, to_nnf(expr.filler))
    if isinstance(expr, Complement):
        inner = expr.operand
        if isinstance(inner, Named):
            return expr
        if isinstance(inner, Top):
            return Bottom()
        if isinstance(inner, Bottom):
            return Top()
        if isinstance(inner, Complement):
            return to_nnf(inner.operand)
        if isinstance(inner, Intersection):
            return Union(tuple(to_nnf(Complement(op)) for op in inner.operands))
        if isinstance(inner, Union):
            return Intersection(tuple(to_nnf(Complement(op)) for op in inner.operands))
        if isinstance(inner, Existential):
            return Universal(inner.role, to_nnf(Complement(inner.filler)))
        if isinstance(inner, Universal):
            return Existential(inner.role, to_nnf(Complement(inner.filler)))
    raise TypeError(f"unknown concept expression: {type(expr).__name__}")


def _nnf_complement(expr: ConceptExpression) -> ConceptExpression:
    return to_nnf(Complement(expr))


_SORT_KEYS: dict = {}


def _sort_key(expr) -> str:
    """Canonical text for lexicographic tie-breaks, memoized: expression
    reprs are deterministic and total but expensive to recompute."""
    key = _SORT_KEYS.get(expr)
    if key is None:
        key = repr(expr)
        _SORT_KEYS[expr] = key
    return key


# ---------------------------------------------------------------------------
# TBox normalization
# ---------------------------------------------------------------------------


@dataclass
class NormalizedTBox:
    """Compiled TBox.

    `definitions` holds unfoldable equivalences (unique, acyclic); all other
    logical concept axioms live in `general_inclusions` as NNF pairs. The
    remaining fields are the evaluation form the tableau runs on, derived
    from the general inclusions: membership-triggered additions for primitive
    named left-hand sides, edge-triggered domain constraints, per-node
    constraints from Top-LHS axioms, and internalized disjunctions for the
    rest.
    """

    definitions: dict[Iri, ConceptExpression]
    negated_definitions: dict[Iri, ConceptExpression]
    general_inclusions: tuple[tuple[ConceptExpression, ConceptExpression], ...]
    role_subsumers: dict[RoleExpression, frozenset[RoleExpression]]
    transitive_roles: frozenset[RoleExpression]
    absorbed: dict[Iri, tuple[ConceptExpression, ...]]
    domain_triggers: tuple[tuple[RoleExpression, ConceptExpression], ...]
    node_constraints: tuple[ConceptExpression, ...]
    uses_inverse: bool

    def subsumers_of(self, role: RoleExpression) -> frozenset[RoleExpression]:
        return self.role_subsumers.get(role, frozenset((role,)))


def _expr_uses_inverse(expr: ConceptExpression) -> bool:
    if isinstance(expr, (Existential, Universal)):
        return isinstance(expr.role, InverseRole) or _expr_uses_inverse(expr.filler)
    if isinstance(expr, (Intersection, Union)):
        return any(_expr_uses_inverse(op) for op in expr.operands)
    if isinstance(expr, Complement):
        return _expr_uses_inverse(expr.operand)
    return False


def _role_expressions_in(expr: ConceptExpression) -> set[RoleExpression]:
    out: set[RoleExpression] = set()
    if isinstance(expr, (Existential, Universal)):
        out.add(expr.role)
        out |= _role_expressions_in(expr.filler)
    elif isinstance(expr, (Intersection, Union)):
        for op in expr.operands:
            out |= _role_expressions_in(op)
    elif isinstance(expr, Complement):
        out |= _role_expressions_in(expr.operand)
    return out


def _role_closure(ontology: Ontology) -> tuple[dict, frozenset, bool]:
    exprs: set[RoleExpression] = set()
    base: set[tuple[RoleExpression, RoleExpression]] = set()
    transitive_seed: set[RoleExpression] = set()
    uses_inverse = False
    for axiom in ontology.axioms:
        if isinstance(axiom, SubRoleOf):
            sub_n, sup_n = NamedRole(axiom.sub), NamedRole(axiom.sup)
            base.add((sub_n, sup_n))
            base.add((InverseRole(axiom.sub), InverseRole(axiom.sup)))
            exprs |= {sub_n, sup_n, InverseRole(axiom.sub), InverseRole(axiom.sup)}
        elif isinstance(axiom, InverseRoles):
            uses_inverse = True
            r, s = axiom.first, axiom.second
            pairs = [
                (NamedRole(r), InverseRole(s)), (InverseRole(s), NamedRole(r)),
                (InverseRole(r), NamedRole(s)), (NamedRole(s), InverseRole(r)),
            ]
            base.update(pairs)
            exprs |= {e for pair in pairs for e in pair}
        elif isinstance(axiom, TransitiveRole):
            transitive_seed |= {NamedRole(axiom.role), InverseRole(axiom.role)}
            exprs |= {NamedRole(axiom.role), InverseRole(axiom.role)}
        elif isinstance(axiom, (SubConceptOf, EquivalentConcepts, DisjointConcepts,
                                RoleDomain, RoleRange, ConceptAssertion)):
            concepts: list[ConceptExpression] = []
            if isinstance(axiom, SubConceptOf):
                concepts = [axiom.sub, axiom.sup]
            elif isinstance(axiom, (EquivalentConcepts, DisjointConcepts)):
                concepts = list(axiom.operands)
            elif isinstance(axiom, (RoleDomain, RoleRange)):
                concepts = [axiom.concept]
                exprs.add(NamedRole(axiom.role))
            else:
                concepts = [axiom.concept]
            for c in concepts:
                for role in _role_expressions_in(c):
                    exprs.add(role)
                    exprs.add(inverse_of(role))
                    if isinstance(role, InverseRole):
                        uses_inverse = True
    # Reflexive-transitive closure over the (small) role-expression set.
    ordered = sorted(exprs, key=_sort_key)
    subsumers: dict[RoleExpression, set[RoleExpression]] = {e: {e} for e in ordered}
    for sub, sup in base:
        subsumers.setdefault(sub, {sub}).add(sup)
        subsumers.setdefault(sup, {sup})
    changed = True
    while changed:
        changed = False
        for e, sups in subsumers.items():
            extra = set()
            for s in sups:
                extra |= subsumers.get(s, set())
            if not extra <= sups:
                sups |= extra
                changed = True
    # A role equivalent to a transitive role is transitive as well.
    transitive: set[RoleExpression] = set()
    for e in subsumers:
        for t in transitive_seed:
            if t in subsumers[e] and e in subsumers.get(t, {t}):
                transitive.add(e)
    frozen = {e: frozenset(s) for e, s in subsumers.items()}
    return frozen, frozenset(transitive), uses_inverse


def normalize(ontology: Ontology) -> NormalizedTBox:
    """Compile the TBox: extract unfoldable definitions, lower everything
    else to NNF general inclusions, close the role hierarchy under inverses,
    and precompute the tableau evaluation form."""
    candidates: dict[Iri, list[ConceptExpression]] = {}
    raw_gcis: list[tuple[ConceptExpression, ConceptExpression]] = []
    for axiom in ontology.axioms:
        if isinstance(axiom, SubConceptOf):
            raw_gcis.append((axiom.sub, axiom.sup))
        elif isinstance(axiom, EquivalentConcepts):
            ops = axiom.operands
            if len(ops) == 2:
                a, b = ops
                if isinstance(a, Named) and a.iri not in BUILTIN_CONCEPTS:
                    candidates.setdefault(a.iri, []).append(b)
                    continue
                if isinstance(b, Named) and b.iri not in BUILTIN_CONCEPTS:
                    candidates.setdefault(b.iri, []).append(a)
                    continue
            for i in range(len(ops)):
                raw_gcis.append((ops[i], ops[(i + 1) % len(ops)]))
        elif isinstance(axiom, DisjointConcepts):
            for i, j in itertools.combinations(range(len(axiom.operands)), 2):
                raw_gcis.append((axiom.operands[i], Complement(axiom.operands[j])))
        elif isinstance(axiom, RoleDomain):
            raw_gcis.append((Existential(NamedRole(axiom.role), Top()), axiom.concept))
        elif isinstance(axiom, RoleRange):
            raw_gcis.append((Top(), Universal(NamedRole(axiom.role), axiom.concept)))
        elif isinstance(axiom, (SubRoleOf, InverseRoles, TransitiveRole, Declaration,
                                ConceptAssertion, RoleAssertion, DataAssertion,
                                AnnotationAssertion)):
            pass  # role axioms are handled by the closure; assertions by the ABox
        else:
            raise UnsupportedAxiomError(f"unsupported axiom kind: {type(axiom).__name__}")

    # Unique definitions only; names with several candidate axioms fall back
    # to general inclusions.
    definitions: dict[Iri, ConceptExpression] = {}
    for name in sorted(candidates, key=lambda iri: iri.value):
        bodies = candidates[name]
        if len(bodies) == 1:
            definitions[name] = bodies[0]
        else:
            for body in bodies:
                raw_gcis.append((Named(name), body))
                raw_gcis.append((body, Named(name)))

    # Cyclic definitions are demoted the same way.
    def _cycle_names() -> set[Iri]:
        state: dict[Iri, int] = {}  # 1 = visiting, 2 = done
        cyclic: set[Iri] = set()

        def deps(body: ConceptExpression) -> Iterable[Iri]:
            if isinstance(body, Named):
                if body.iri in definitions:
                    yield body.iri
            elif isinstance(body, (Intersection, Union)):
                for op in body.operands:
                    yield from deps(op)
            elif isinstance(body, Complement):
                yield from deps(body.operand)
            elif isinstance(body, (Existential, Universal)):
                yield from deps(body.filler)

        def visit(name: Iri, stack: list[Iri]) -> None:
            if state.get(name) == 2:
                return
            if state.get(name) == 1:
                cyclic.update(stack[stack.index(name):])
                return
            state[name] = 1
            stack.append(name)
            for dep in deps(definitions[name]):
                visit(dep, stack)
            stack.pop()
            state[name] = 2

        for name in sorted(definitions, key=lambda iri: iri.value):
            visit(name, [])
        return cyclic

    for name in sorted(_cycle_names(), key=lambda iri: iri.value):
        body = definitions.pop(name)
        raw_gcis.append((Named(name), body))
        raw_gcis.append((body, Named(name)))

    general = tuple((to_nnf(lhs), to_nnf(rhs)) for lhs, rhs in raw_gcis)
    role_subsumers, transitive, inv_from_roles = _role_closure(ontology)

    absorbed: dict[Iri, list[ConceptExpression]] = {}
    domain_triggers: list[tuple[RoleExpression, ConceptExpression]] = []
    node_constraints: list[ConceptExpression] = []
    for lhs, rhs in general:
        if isinstance(lhs, Top):
            node_constraints.append(rhs)
        elif isinstance(lhs, Named) and lhs.iri not in definitions:
            absorbed.setdefault(lhs.iri, []).append(rhs)
        elif isinstance(lhs, Existential) and isinstance(lhs.filler, Top):
            domain_triggers.append((lhs.role, rhs))
        else:
            node_constraints.append(Union((_nnf_complement(lhs), rhs)))

    uses_inverse = inv_from_roles or any(
        _expr_uses_inverse(lhs) or _expr_uses_inverse(rhs) for lhs, rhs in general
    ) or any(_expr_uses_inverse(body) for body in definitions.values())

    return NormalizedTBox(
        definitions={name: to_nnf(body) for name, body in definitions.items()},
        negated_definitions={name: _nnf_complement(body)
                             for name, body in definitions.items()},
        general_inclusions=general,
        role_subsumers=role_subsumers,
        transitive_roles=transitive,
        absorbed={name: tuple(sorted(exprs, key=_sort_key))
                  for name, exprs in absorbed.items()},
        domain_triggers=tuple(sorted(domain_triggers, key=_sort_key)),
        node_constraints=tuple(sorted(node_constraints, key=_sort_key)),
        uses_inverse=uses_inverse,
    )


# ---------------------------------------------------------------------------
# Completion graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphNode:
    id: int
    label: frozenset[ConceptExpression]
    parent: Optional[int]


@dataclass(frozen=True)
class GraphEdge:
    source: int
    target: int
    role: Iri


@dataclass(frozen=True)
class CompletionGraph:
    """Frozen snapshot of the tableau working state returned as a witness."""

    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]
    blocking: tuple[tuple[int, int], ...]  # (blocked node, blocking ancestor)
    clash: bool

    @cached_property
    def node_by_id(self) -> dict[int, GraphNode]:
        return {node.id: node for node in self.nodes}


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    witness: Optional[CompletionGraph]

    def __bool__(self) -> bool:
        return self.satisfiable


class _Clash(Exception):
    pass


class _Graph:
    """Mutable working graph: labels are insertion-ordered concept sets with
    a lexicographically sorted view cached per node."""

    __slots__ = ("labels", "sorted_cache", "parents", "out_edges", "in_edges",
                 "next_id", "counter")

    def __init__(self, counter: list[int]):
        self.labels: list[dict[ConceptExpression, None]] = []
        self.sorted_cache: list[Optional[list[ConceptExpression]]] = []
        self.parents: list[Optional[int]] = []
        self.out_edges: list[list[tuple[Iri, int]]] = []
        self.in_edges: list[list[tuple[Iri, int]]] = []
        self.next_id = 0
        self.counter = counter  # shared created-node count for the limit check

    def copy(self) -> "_Graph":
        g = _Graph(self.counter)
        g.labels = [dict(lbl) for lbl in self.labels]
        g.sorted_cache = list(self.sorted_cache)
        g.parents = list(self.parents)
        g.out_edges = [list(e) for e in self.out_edges]
        g.in_edges = [list(e) for e in self.in_edges]
        g.next_id = self.next_id
        return g

    def new_node(self, parent: Optional[int], max_nodes: int) -> int:
        self.counter[0] += 1
        if self.counter[0] > max_nodes:
            raise ResourceLimitExceeded(f"node limit exceeded ({max_nodes})")
        node = self.next_id
        self.next_id += 1
        self.labels.append({})
        self.sorted_cache.append(None)
        self.parents.append(parent)
        self.out_edges.append([])
        self.in_edges.append([])
        return node

    def add_edge(self, source: int, target: int, role: Iri) -> None:
        self.out_edges[source].append((role, target))
        self.in_edges[target].append((role, source))

    def add(self, node: int, expr: ConceptExpression) -> bool:
        label = self.labels[node]
        if expr in label:
            return False
        if isinstance(expr, Bottom):
            raise _Clash()
        if isinstance(expr, Named) and Complement(expr) in label:
            raise _Clash()
        if isinstance(expr, Complement) and expr.operand in label:
            raise _Clash()
        label[expr] = None
        self.sorted_cache[node] = None
        return True

    def sorted_label(self, node: int) -> list[ConceptExpression]:
        cached = self.sorted_cache[node]
        if cached is None:
            cached = sorted(self.labels[node], key=_sort_key)
            self.sorted_cache[node] = cached
        return cached


class _Tableau:
    def __init__(self, tbox: NormalizedTBox, limits: ReasonerLimits,
                 equality_blocking: Optional[bool] = None):
        self.tbox = tbox
        self.limits = limits
        # Subset blocking is only sound without inverse flows; a query can
        # introduce inverses the TBox does not have, so callers may force
        # the stricter condition.
        self.equality_blocking = (tbox.uses_inverse if equality_blocking is None
                                  else equality_blocking or tbox.uses_inverse)

    # -- neighbour access -----------------------------------------------------

    def _neighbours(self, g: _Graph, node: int, role: RoleExpression) -> list[int]:
        """Targets reachable from `node` via an edge whose role is subsumed by
        `role`, considering both edge directions for inverses."""
        out: list[int] = []
        for edge_role, target in g.out_edges[node]:
            if role in self.tbox.subsumers_of(NamedRole(edge_role)):
                out.append(target)
        for edge_role, source in g.in_edges[node]:
            if role in self.tbox.subsumers_of(InverseRole(edge_role)):
                out.append(source)
        return out

    def _has_neighbour(self, g: _Graph, node: int, role: RoleExpression) -> bool:
        return bool(self._neighbours(g, node, role))

    # -- blocking --------------------------------------------------------------

    def _directly_blocked(self, g: _Graph, node: int) -> bool:
        label = frozenset(g.labels[node])
        ancestor = g.parents[node]
        while ancestor is not None:
            other = frozenset(g.labels[ancestor])
            if self.equality_blocking:
                if label == other:
                    return True
            elif label <= other:
                return True
            ancestor = g.parents[ancestor]
        return False

    def _blocked(self, g: _Graph, node: int) -> bool:
        ancestor = g.parents[node]
        while ancestor is not None:
            if self._directly_blocked(g, ancestor):
                return True
            ancestor = g.parents[ancestor]
        return self._directly_blocked(g, node)

    # -- saturation -------------------------------------------------------------

    def _sorted_label(self, g: _Graph, node: int) -> list[ConceptExpression]:
        return g.sorted_label(node)

    def _apply_conjunctions(self, g: _Graph, node: int) -> bool:
        for expr in self._sorted_label(g, node):
            if isinstance(expr, Intersection):
                added = False
                for op in expr.operands:
                    added |= g.add(node, op)
                if added:
                    return True
        return False

    def _apply_unfolding(self, g: _Graph, node: int) -> bool:
        tbox = self.tbox
        for expr in self._sorted_label(g, node):
            if isinstance(expr, Named):
                defn = tbox.definitions.get(expr.iri)
                if defn is not None and g.add(node, defn):
                    return True
                for extra in tbox.absorbed.get(expr.iri, ()):
                    if g.add(node, extra):
                        return True
            elif isinstance(expr, Complement) and isinstance(expr.operand, Named):
                neg = tbox.negated_definitions.get(expr.operand.iri)
                if neg is not None and g.add(node, neg):
                    return True
        for role, concept in tbox.domain_triggers:
            if concept not in g.labels[node] and self._has_neighbour(g, node, role):
                g.add(node, concept)
                return True
        return False

    def _find_disjunction(self, g: _Graph, node: int) -> Optional[Union]:
        for expr in self._sorted_label(g, node):
            if isinstance(expr, Union) and not any(op in g.labels[node] for op in expr.operands):
                return expr
        return None

    def _apply_universals(self, g: _Graph, node: int) -> bool:
        tbox = self.tbox
        for expr in self._sorted_label(g, node):
            if not isinstance(expr, Universal):
                continue
            role, filler = expr.role, expr.filler
            for target in self._neighbours(g, node, role):
                if g.add(target, filler):
                    return True
            for trans in sorted(tbox.transitive_roles, key=_sort_key):
                if role in tbox.subsumers_of(trans):
                    propagated = Universal(trans, filler)
                    for target in self._neighbours(g, node, trans):
                        if g.add(target, propagated):
                            return True
        return False

    def _apply_existential(self, g: _Graph, node: int) -> bool:
        if self._blocked(g, node):
            return False
        for expr in self._sorted_label(g, node):
            if not isinstance(expr, Existential):
                continue
            role, filler = expr.role, expr.filler
            if any(filler in g.labels[t] for t in self._neighbours(g, node, role)):
                continue
            fresh = g.new_node(parent=node, max_nodes=self.limits.max_nodes)
            if isinstance(role, NamedRole):
                g.add_edge(node, fresh, role.iri)
            else:
                g.add_edge(fresh, node, role.iri)
            self._init_node(g, fresh)
            g.add(fresh, filler)
            return True
        return False

    def _init_node(self, g: _Graph, node: int) -> None:
        for constraint in self.tbox.node_constraints:
            g.add(node, constraint)

    def _saturate(self, g: _Graph):
        """Run non-branching rules to a fixpoint in priority order.

        Returns "complete", or ("choice", node, union) for the first open
        disjunction once conjunctions and unfolding are quiet. Raises _Clash.
        """
        while True:
            nodes = range(len(g.labels))
            if any(self._apply_conjunctions(g, n) for n in nodes):
                continue
            if any(self._apply_unfolding(g, n) for n in nodes):
                continue
            for n in nodes:
                disj = self._find_disjunction(g, n)
                if disj is not None:
                    return ("choice", n, disj)
            if any(self._apply_universals(g, n) for n in nodes):
                continue
            if any(self._apply_existential(g, n) for n in nodes):
                continue
            return ("complete",)

    def search(self, initial: _Graph) -> Optional[_Graph]:
        """Chronological backtracking over disjunction choices (left to right)."""
        frames: list[list] = []  # [base graph, node, operands, next index]
        current: Optional[_Graph] = initial

        def advance() -> Optional[_Graph]:
            # Resume from the most recent choice point with operands left.
            while frames:
                base, node, operands, index = frames[-1]
                if index >= len(operands):
                    frames.pop()
                    continue
                frames[-1][3] = index + 1
                candidate = base.copy()
                try:
                    candidate.add(node, operands[index])
                except _Clash:
                    continue
                return candidate
            return None

        while True:
            try:
                outcome = self._saturate(current)
            except _Clash:
                outcome = None
            if outcome is None:
                current = advance()
                if current is None:
                    return None
                continue
            if outcome[0] == "complete":
                return current
            _, node, disj = outcome
            if len(frames) >= self.limits.max_branch_depth:
                raise ResourceLimitExceeded(
                    f"branch depth limit exceeded ({self.limits.max_branch_depth})")
            frames.append([current, node, disj.operands, 0])
            current = advance()
            if current is None:
                return None

    # -- entry points -----------------------------------------------------------

    def freeze(self, g: _Graph) -> CompletionGraph:
        nodes = tuple(
            GraphNode(i, frozenset(g.labels[i]), g.parents[i])
            for i in range(len(g.labels))
        )
        edges = []
        for source, targets in enumerate(g.out_edges):
            for role, target in targets:
                edges.append(GraphEdge(source, target, role))
        blocking = []
        for i in range(len(g.labels)):
            if g.parents[i] is None:
                continue
            if self._directly_blocked(g, i):
                ancestor = g.parents[i]
                while ancestor is not None:
                    cond = (frozenset(g.labels[i]) == frozenset(g.labels[ancestor])
                            if self.equality_blocking
                            else frozenset(g.labels[i]) <= frozenset(g.labels[ancestor]))
                    if cond:
                        blocking.append((i, ancestor))
                        break
                    ancestor = g.parents[ancestor]
        return CompletionGraph(nodes=nodes, edges=tuple(edges),
                               blocking=tuple(blocking), clash=False)


def _fresh_graph() -> _Graph:
    return _Graph(counter=[0])


def is_satisfiable(
    concept: ConceptExpression,
    tbox: NormalizedTBox,
    limits: ReasonerLimits = DEFAULT_LIMITS,
) -> SatResult:
    """Decide concept satisfiability w.r.t. the TBox; a Satisfiable verdict
    carries the final completion graph as a witness."""
    nnf_concept = to_nnf(concept)
    tableau = _Tableau(tbox, limits,
                       equality_blocking=_expr_uses_inverse(nnf_concept))
    g = _fresh_graph()
    root = g.new_node(parent=None, max_nodes=limits.max_nodes)
    try:
        tableau._init_node(g, root)
        g.add(root, nnf_concept)
    except _Clash:
        return SatResult(False, None)
    final = tableau.search(g)
    if final is None:
        return SatResult(False, None)
    return SatResult(True, tableau.freeze(final))


def is_subsumed_by(
    sub: ConceptExpression,
    sup: ConceptExpression,
    tbox: NormalizedTBox,
    limits: ReasonerLimits = DEFAULT_LIMITS,
) -> bool:
    """sub ⊑ sup iff sub ⊓ ¬sup is unsatisfiable."""
    probe = Intersection((sub, _nnf_complement(sup)))
    return not is_satisfiable(probe, tbox, limits).satisfiable


# ---------------------------------------------------------------------------
# ABox reasoning
# ---------------------------------------------------------------------------


def _individuals_of(ontology: Ontology) -> list[Iri]:
    found: set[Iri] = set()
    for entity in signature(ontology):
        if entity.kind is EntityKind.INDIVIDUAL:
            found.add(entity.iri)
    return sorted(found, key=lambda iri: iri.value)


def _abox_satisfiable(
    ontology: Ontology,
    tbox: NormalizedTBox,
    limits: ReasonerLimits,
    extra: Iterable[tuple[Iri, ConceptExpression]] = (),
) -> bool:
    """Tableau consistency of the ABox (one root per individual, no unique
    name assumption) with optional extra concept constraints."""
    individuals = _individuals_of(ontology)
    if not individuals:
        return True
    extra = list(extra)
    force_equality = any(_expr_uses_inverse(to_nnf(c)) for _, c in extra)
    tableau = _Tableau(tbox, limits, equality_blocking=force_equality)
    g = _fresh_graph()
    node_of: dict[Iri, int] = {}
    try:
        for individual in individuals:
            node = g.new_node(parent=None, max_nodes=limits.max_nodes)
            node_of[individual] = node
            tableau._init_node(g, node)
        for axiom in ontology.axioms:
            if isinstance(axiom, ConceptAssertion):
                g.add(node_of[axiom.individual], to_nnf(axiom.concept))
            elif isinstance(axiom, RoleAssertion):
                g.add_edge(node_of[axiom.subject], node_of[axiom.object], axiom.role)
        for individual, concept in extra:
            g.add(node_of[individual], to_nnf(concept))
    except _Clash:
        return False
    return tableau.search(g) is not None


def is_consistent(ontology: Ontology, limits: ReasonerLimits = DEFAULT_LIMITS) -> bool:
    """ABox consistency. With no named individuals the initial graph is empty
    and trivially clash-free, so the verdict is True by construction."""
    return _abox_satisfiable(ontology, normalize(ontology), limits)


def _named_concepts_of(ontology: Ontology) -> list[Iri]:
    return sorted(
        {e.iri for e in signature(ontology)
         if e.kind is EntityKind.CONCEPT and e.iri not in BUILTIN_CONCEPTS},
        key=lambda iri: iri.value,
    )


def instances_of(
    concept: ConceptExpression,
    ontology: Ontology,
    limits: ReasonerLimits = DEFAULT_LIMITS,
) -> tuple[Iri, ...]:
    """All individuals whose membership in `concept` is entailed."""
    tbox = normalize(ontology)
    if not _abox_satisfiable(ontology, tbox, limits):
        raise InconsistentOntologyError("ontology is inconsistent")
    negated = _nnf_complement(concept)
    members = [
        individual
        for individual in _individuals_of(ontology)
        if not _abox_satisfiable(ontology, tbox, limits, extra=[(individual, negated)])
    ]
    return tuple(members)


def entailed_types(
    ontology: Ontology, limits: ReasonerLimits = DEFAULT_LIMITS
) -> dict[Iri, tuple[Iri, ...]]:
    """For each individual, every named concept it provably belongs to."""
    tbox = normalize(ontology)
    if not _abox_satisfiable(ontology, tbox, limits):
        raise InconsistentOntologyError("ontology is inconsistent")
    names = _named_concepts_of(ontology)
    result: dict[Iri, tuple[Iri, ...]] = {}
    for individual in _individuals_of(ontology):
        entailed = [
            name for name in names
            if not _abox_satisfiable(
                ontology, tbox, limits,
                extra=[(individual, Complement(Named(name)))])
        ]
        result[individual] = tuple(entailed)
    return result


def realize(
    ontology: Ontology, limits: ReasonerLimits = DEFAULT_LIMITS
) -> dict[Iri, tuple[Iri, ...]]:
    """Most specific named concepts per individual (an antichain in the
    inferred taxonomy). An individual with no entailed named concept maps to
    the built-in top concept."""
    tbox = normalize(ontology)
    full = entailed_types(ontology, limits)
    subsumed: dict[tuple[Iri, Iri], bool] = {}

    def leq(c: Iri, d: Iri) -> bool:
        if (c, d) not in subsumed:
            subsumed[(c, d)] = is_subsumed_by(Named(c), Named(d), tbox, limits)
        return subsumed[(c, d)]

    result: dict[Iri, tuple[Iri, ...]] = {}
    for individual, types in full.items():
        most_specific = [
            c for c in types
            if not any(d != c and leq(d, c) and not leq(c, d) for d in types)
        ]
        result[individual] = tuple(most_specific) or (OWL_THING,)
    return result


def materialize_inverses(ontology: Ontology) -> Ontology:
    """Close role assertions under declared or sub-role-implied inverses:
    whenever r(a,b) holds and inv(r) ⊑* s for a named s, add s(b,a).
    Idempotent by construction (least fixpoint)."""
    role_subsumers, _, _ = _role_closure(ontology)
    asserted = {a for a in ontology.axioms if isinstance(a, RoleAssertion)}
    closure = set(asserted)
    frontier = list(asserted)
    while frontier:
        assertion = frontier.pop()
        for sup in sorted(role_subsumers.get(InverseRole(assertion.role), ()), key=_sort_key):
            if isinstance(sup, NamedRole):
                implied = RoleAssertion(sup.iri, assertion.object, assertion.subject)
                if implied not in closure:
                    closure.add(implied)
                    frontier.append(implied)
    result = ontology
    for assertion in sorted(closure - asserted, key=_sort_key):
        result = add_axiom(result, assertion)
    return result


# ---------------------------------------------------------------------------
# Taxonomy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Taxonomy:
    """Equivalence groups of named concepts in a transitively reduced DAG.

    Group 0 is the top group (names equivalent to ⊤, possibly none), group 1
    the bottom group (unsatisfiable names); the rest are sorted by their
    first member. Edges run child -> parent.
    """

    groups: tuple[tuple[Iri, ...], ...]
    edges: tuple[tuple[int, int], ...]

    TOP = 0
    BOTTOM = 1

    @cached_property
    def _group_index(self) -> dict[Iri, int]:
        return {iri: idx for idx, members in enumerate(self.groups) for iri in members}

    @cached_property
    def _parents(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {i: [] for i in range(len(self.groups))}
        for child, parent in self.edges:
            out[child].append(parent)
        return {k: tuple(sorted(v)) for k, v in out.items()}

    @cached_property
    def _children(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {i: [] for i in range(len(self.groups))}
        for child, parent in self.edges:
            out[parent].append(child)
        return {k: tuple(sorted(v)) for k, v in out.items()}

    def concepts(self) -> tuple[Iri, ...]:
        return tuple(sorted(self._group_index, key=lambda iri: iri.value))

    def group_of(self, iri: Iri) -> int:
        return self._group_index[iri]

    def members(self, group: int) -> tuple[Iri, ...]:
        return self.groups[group]

    def parents_of(self, group: int) -> tuple[int, ...]:
        return self._parents.get(group, ())

    def children_of(self, group: int) -> tuple[int, ...]:
        return self._children.get(group, ())

    def equivalents_of(self, iri: Iri) -> tuple[Iri, ...]:
        return self.groups[self.group_of(iri)]

    def parent_concepts_of(self, iri: Iri) -> tuple[Iri, ...]:
        """Named members of the direct parent groups."""
        out: list[Iri] = []
        for parent in self.parents_of(self.group_of(iri)):
            out.extend(self.groups[parent])
        return tuple(sorted(set(out), key=lambda i: i.value))

    def named_links(self) -> frozenset[tuple[Iri, Iri]]:
        """Direct (child concept, parent concept) pairs, expanded over group
        members; links to the pseudo top/bottom are represented only through
        named members of those groups."""
        pairs: set[tuple[Iri, Iri]] = set()
        for child, parent in self.edges:
            for c in self.groups[child]:
                for p in self.groups[parent]:
                    pairs.add((c, p))
        return frozenset(pairs)

    def _reach(self, start: int, direction: dict[int, tuple[int, ...]]) -> set[int]:
        seen: set[int] = set()
        stack = [start]
        while stack:
            g = stack.pop()
            for nxt in direction.get(g, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    def ancestors_of(self, iri: Iri) -> tuple[Iri, ...]:
        """Named concepts strictly above, transitively (equivalents excluded)."""
        groups = self._reach(self.group_of(iri), self._parents)
        out = [m for g in groups for m in self.groups[g]]
        return tuple(sorted(set(out), key=lambda i: i.value))

    def descendants_of(self, iri: Iri) -> tuple[Iri, ...]:
        groups = self._reach(self.group_of(iri), self._children)
        out = [m for g in groups for m in self.groups[g]]
        return tuple(sorted(set(out), key=lambda i: i.value))

    def closure_pairs(self) -> frozenset[tuple[Iri, Iri]]:
        """(c, d) for every strict-or-equivalent named pair with c ⊑ d."""
        pairs: set[tuple[Iri, Iri]] = set()
        for iri in self._group_index:
            for other in self.equivalents_of(iri):
                if other != iri:
                    pairs.add((iri, other))
            for ancestor in self.ancestors_of(iri):
                pairs.add((iri, ancestor))
        return frozenset(pairs)


def build_taxonomy(
    names: Iterable[Iri],
    leq: Callable[[Iri, Iri], bool],
    top_names: Iterable[Iri] = (),
    bottom_names: Iterable[Iri] = (),
) -> Taxonomy:
    """Construct the reduced DAG of equivalence groups from a subsumption
    preorder over named concepts. Shared by inferred and asserted builds."""
    top_set = set(top_names)
    bottom_set = set(bottom_names)
    proper = sorted(set(names) - top_set - bottom_set, key=lambda iri: iri.value)

    # Merge mutually subsuming names into groups.
    group_of: dict[Iri, int] = {}
    member_lists: list[list[Iri]] = []
    for name in proper:
        placed = False
        for idx, members in enumerate(member_lists):
            representative = members[0]
            if leq(name, representative) and leq(representative, name):
                members.append(name)
                group_of[name] = idx
                placed = True
                break
        if not placed:
            group_of[name] = len(member_lists)
            member_lists.append([name])

    ordered = sorted((tuple(sorted(m, key=lambda i: i.value)) for m in member_lists),
                     key=lambda members: members[0].value)
    groups: tuple[tuple[Iri, ...], ...] = (
        tuple(sorted(top_set, key=lambda i: i.value)),
        tuple(sorted(bottom_set, key=lambda i: i.value)),
        *ordered,
    )

    def strictly_below(a: tuple[Iri, ...], b: tuple[Iri, ...]) -> bool:
        return leq(a[0], b[0]) and not leq(b[0], a[0])

    named_ids = range(2, len(groups))
    edges: list[tuple[int, int]] = []
    for child in named_ids:
        uppers = [p for p in named_ids
                  if p != child and strictly_below(groups[child], groups[p])]
        direct = [
            p for p in uppers
            if not any(q != p and strictly_below(groups[q], groups[p]) for q in uppers)
        ]
        if direct:
            edges.extend((child, p) for p in direct)
        else:
            edges.append((child, Taxonomy.TOP))
    leaves = [g for g in named_ids if not any(parent == g for _, parent in edges)]
    if leaves:
        edges.extend((Taxonomy.BOTTOM, leaf) for leaf in leaves)
    else:
        edges.append((Taxonomy.BOTTOM, Taxonomy.TOP))
    return Taxonomy(groups=groups, edges=tuple(sorted(edges)))


def classify(ontology: Ontology, limits: ReasonerLimits = DEFAULT_LIMITS) -> Taxonomy:
    """Inferred taxonomy over all named concepts: pairwise subsumption tests
    seeded with told subsumptions, unsatisfiable names in the bottom group,
    mutually subsuming names merged. Independent of axiom order."""
    tbox = normalize(ontology)
    names = _named_concepts_of(ontology)

    told: dict[Iri, set[Iri]] = {name: {name} for name in names}
    for axiom in ontology.axioms:
        if isinstance(axiom, SubConceptOf) and isinstance(axiom.sub, Named) \
                and isinstance(axiom.sup, Named):
            if axiom.sub.iri in told and axiom.sup.iri in told:
                told[axiom.sub.iri].add(axiom.sup.iri)
        elif isinstance(axiom, EquivalentConcepts):
            named_ops = [op.iri for op in axiom.operands
                         if isinstance(op, Named) and op.iri in told]
            for a in named_ops:
                for b in named_ops:
                    told[a].add(b)
    changed = True
    while changed:
        changed = False
        for name, ups in told.items():
            extra: set[Iri] = set()
            for up in ups:
                extra |= told.get(up, set())
            if not extra <= ups:
                ups |= extra
                changed = True

    sat_cache: dict[Iri, bool] = {
        name: is_satisfiable(Named(name), tbox, limits).satisfiable for name in names
    }
    bottom = [name for name in names if not sat_cache[name]]
    top = [name for name in names
           if sat_cache[name] and is_subsumed_by(Top(), Named(name), tbox, limits)]

    memo: dict[tuple[Iri, Iri], bool] = {}

    def leq(c: Iri, d: Iri) -> bool:
        if c == d:
            return True
        key = (c, d)
        if key not in memo:
            if d in told[c]:
                memo[key] = True
            else:
                memo[key] = is_subsumed_by(Named(c), Named(d), tbox, limits)
        return memo[key]

    return build_taxonomy(names, leq, top_names=top, bottom_names=bottom)
