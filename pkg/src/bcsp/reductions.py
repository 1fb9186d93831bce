"""Count-preserving instance transformations.

Every reduction returns its output together with an explicit multiplier
(or preserves counts exactly), so approximation-preserving bookkeeping
is checkable as exact integer arithmetic against the brute-force oracle.
"""

from __future__ import annotations

from collections import Counter
from itertools import product

from .classify import is_affine, normalize_imconj, normalize_nandconj, normalize_orconj
from .errors import InvalidArgumentError, NotInClassError, NoWitnessError
from .gadgets import GadgetWitness, equality_witness
from .instance import Constraint, CspInstance, Hypergraph
from .relation import R_IMP, R_ONE, R_ZERO, PppRecipe, Relation, or_k


def _is_pin(c: Constraint) -> bool:
    return c.relation in (R_ZERO, R_ONE)


# --- degree inflation --------------------------------------------------


def inflate_degree(inst: CspInstance, language, d: int = 3,
                   witness_factory=None) -> tuple[CspInstance, int]:
    """Split every variable with more than d occurrences into one copy
    per occurrence, joined by an equality gadget over the language.

    Returns (instance of degree <= d, multiplier m) with
    Z(output) = m * Z(input).
    """
    if d < 3:
        raise InvalidArgumentError("degree inflation targets d >= 3")
    language = tuple(language)
    if witness_factory is None:
        cache: dict[int, GadgetWitness] = {}

        def witness_factory(count: int) -> GadgetWitness:
            if count not in cache:
                cache[count] = equality_witness(language, k=count, d=d)
            return cache[count]

    counts: Counter[str] = Counter()
    for c in inst.constraints:
        counts.update(c.variables())
    heavy = [v for v in inst.variables if counts[v] > d]
    if not heavy:
        return inst, 1

    used = set(inst.variables)

    def fresh(base: str) -> str:
        name = base
        while name in used:
            name += "_"
        used.add(name)
        return name

    copies = {v: [fresh(f"{v}__{i}") for i in range(1, counts[v] + 1)] for v in heavy}
    next_copy = {v: 0 for v in heavy}
    constraints = []
    for c in inst.constraints:
        scope = []
        for entry in c.scope:
            if isinstance(entry, str) and entry in copies:
                scope.append(copies[entry][next_copy[entry]])
                next_copy[entry] += 1
            else:
                scope.append(entry)
        constraints.append(Constraint(c.name, c.relation, tuple(scope)))

    multiplier = 1
    variables = []
    for v in inst.variables:
        if v in copies:
            variables.extend(copies[v])
        else:
            variables.append(v)
    for v in heavy:
        witness = witness_factory(counts[v])
        multiplier *= witness.multiplicity
        rename = {old: new for old, new in zip(witness.distinguished, copies[v])}
        for aux in witness.template.variables:
            if aux not in rename:
                rename[aux] = fresh(f"eq_{v}_{aux}")
                variables.append(rename[aux])
        for c in witness.template.constraints:
            scope = tuple(rename[e] if isinstance(e, str) else e for e in c.scope)
            constraints.append(Constraint(c.name, c.relation, scope))
    out = CspInstance(tuple(variables), tuple(constraints))
    if out.degree() > d:
        raise AssertionError("inflation left a variable above the degree bound")
    return out, multiplier


# --- hypergraphs vs OR instances ---------------------------------------


def his_to_orcsp(h: Hypergraph, w: int) -> CspInstance:
    """Encode independent sets as a width-w OR instance.

    One variable per vertex; each size-s edge becomes an OR_w constraint
    over its vertices padded with w - s zero constants.  An assignment
    satisfies the result exactly when its zero set is independent, so
    Z equals the independent-set count and degrees carry over.
    """
    if w < 2:
        raise InvalidArgumentError("OR width must be at least 2")
    if h.width() > w:
        raise InvalidArgumentError(f"hypergraph width {h.width()} exceeds {w}")
    rel = or_k(w)
    name = f"or_{w}"
    variables = tuple(f"x{v}" for v in range(1, h.n + 1))
    constraints = []
    for e in h.edges:
        vs = sorted(e)
        scope = tuple(f"x{v}" for v in vs) + (0,) * (w - len(vs))
        constraints.append(Constraint(name, rel, scope))
    return CspInstance(variables, tuple(constraints))


def orcsp_to_his(inst: CspInstance) -> Hypergraph:
    """Decode an OR-plus-pins instance back into a hypergraph.

    Zero-pinned variables leave their edges, one-pinned variables delete
    their edges, and pinned vertices are dropped; the independent-set
    count of the result equals Z.  Instances whose pins are contradictory
    or whose OR constraints are fully zero-pinned have Z = 0, which no
    hypergraph (with non-empty edges) can express, and are rejected.
    """
    inst = inst.desugar()
    zero_pinned: set[str] = set()
    one_pinned: set[str] = set()
    ors = []
    for c in inst.constraints:
        if c.relation == R_ZERO:
            zero_pinned.add(c.scope[0])
        elif c.relation == R_ONE:
            one_pinned.add(c.scope[0])
        elif c.relation == or_k(c.relation.arity):
            ors.append(c)
        else:
            raise InvalidArgumentError(f"constraint {c.name} is neither an OR nor a pin")
    if zero_pinned & one_pinned:
        raise InvalidArgumentError("contradictory pins force Z = 0")
    pinned = zero_pinned | one_pinned
    vertex_of = {}
    for v in inst.variables:
        if v not in pinned:
            vertex_of[v] = len(vertex_of) + 1
    edges = []
    for c in ors:
        names = set(c.scope)
        if names & one_pinned:
            continue
        e = frozenset(vertex_of[v] for v in names - zero_pinned)
        if not e:
            raise InvalidArgumentError("an OR constraint is fully zero-pinned, Z = 0")
        edges.append(e)
    return Hypergraph(len(vertex_of), tuple(edges))


# --- general clause relations vs hypergraphs ---------------------------


def _flip_instance(inst: CspInstance) -> CspInstance:
    """Complement every relation and constant; Z is preserved because
    assignments correspond under coordinatewise flipping."""
    constraints = []
    for c in inst.constraints:
        if c.relation == R_ZERO:
            rel, name = R_ONE, "one"
        elif c.relation == R_ONE:
            rel, name = R_ZERO, "zero"
        else:
            rel, name = c.relation.complement(), c.name
        scope = tuple(e if isinstance(e, str) else 1 - e for e in c.scope)
        constraints.append(Constraint(name, rel, scope))
    return CspInstance(inst.variables, tuple(constraints))


def relationcsp_to_his(inst: CspInstance, rel: Relation) -> tuple[Hypergraph, int]:
    """Rewrite an instance over one clause-definable relation (plus pins)
    into a hypergraph with the same count.

    Each constraint is replaced by its normalized formula's pins and
    clauses, narrow clauses padded to the formula width with zeros, and
    the OR decoding applied.  Returns the hypergraph together with the
    degree bound k * degree(instance), where k is the formula's largest
    per-variable occurrence count.
    """
    try:
        formula = normalize_orconj(rel)
    except NotInClassError:
        try:
            normalize_nandconj(rel)
        except NotInClassError:
            raise InvalidArgumentError(
                "relation is neither a pin-and-OR nor a pin-and-NAND conjunction"
            ) from None
        h, bound = relationcsp_to_his(_flip_instance(inst), rel.complement())
        return h, bound
    w = formula.width()
    k = formula.repetition()
    degree_bound = k * inst.degree()
    constraints = []
    for c in inst.constraints:
        if _is_pin(c):
            constraints.append(c)
            continue
        if c.relation != rel:
            raise InvalidArgumentError(f"constraint {c.name} uses a foreign relation")
        if formula.falsum:
            raise InvalidArgumentError("empty relation forces Z = 0")
        for col, val in formula.pins:
            entry = c.scope[col - 1]
            if isinstance(entry, str):
                constraints.append(Constraint(
                    "one" if val else "zero", R_ONE if val else R_ZERO, (entry,)
                ))
            elif entry != val:
                raise InvalidArgumentError("constant contradicts a pinned column, Z = 0")
        for clause in formula.clauses:
            scope = tuple(c.scope[v - 1] for v in clause) + (0,) * (w - len(clause))
            constraints.append(Constraint(f"or_{w}", or_k(w), scope))
    lowered = CspInstance(inst.variables, tuple(constraints)).desugar()
    return orcsp_to_his(lowered), degree_bound


def clause_recipe(rel: Relation, width: int | None = None) -> PppRecipe:
    """The pin-only recipe reading a width-w OR straight out of a
    pin-and-OR relation: keep one largest clause, pin every other column
    (formula pins at their value, remaining variables to one)."""
    formula = normalize_orconj(rel)
    if formula.falsum or not formula.clauses:
        raise InvalidArgumentError("relation has no clauses to project onto")
    w = formula.width() if width is None else width
    candidates = sorted(c for c in formula.clauses if len(c) == w)
    if not candidates:
        raise InvalidArgumentError(f"no clause of width {w}")
    clause = candidates[0]
    pins = dict(formula.pins)
    for col in range(1, rel.arity + 1):
        if col not in clause and col not in pins:
            pins[col] = 1
    recipe = PppRecipe(kept=clause, pins=pins)
    if recipe.apply(rel) != or_k(w):
        raise AssertionError("clause recipe failed to define the padded OR")
    return recipe


def his_to_relationcsp(h: Hypergraph, rel: Relation) -> CspInstance:
    """Encode independent sets with constraints over one clause-definable
    relation, filling non-clause columns with constants.

    Count-preserving with multiplier 1: the recipe projects pinned
    columns only, so constants force their pin variables uniquely.
    """
    try:
        recipe = clause_recipe(rel)
        flip = False
    except NotInClassError:
        try:
            recipe = clause_recipe(rel.complement())
            flip = True
        except NotInClassError:
            raise InvalidArgumentError(
                "relation is neither a pin-and-OR nor a pin-and-NAND conjunction"
            ) from None
    w = len(recipe.kept)
    if h.width() > w:
        raise InvalidArgumentError(f"hypergraph width {h.width()} exceeds relation width {w}")
    base = rel.complement() if flip else rel
    name = "r0"
    variables = tuple(f"x{v}" for v in range(1, h.n + 1))
    pins = dict(recipe.pins)
    slot = {col: i for i, col in enumerate(recipe.kept)}
    constraints = []
    for e in h.edges:
        vs = sorted(e)
        scope = []
        for col in range(1, base.arity + 1):
            if col in slot:
                scope.append(f"x{vs[slot[col]]}" if slot[col] < len(vs) else 0)
            else:
                scope.append(pins[col])
        constraints.append(Constraint(name, base, tuple(scope)))
    inst = CspInstance(variables, tuple(constraints))
    return _flip_instance(inst) if flip else inst


# --- implication extraction ---------------------------------------------


def imconj_extract_implies(rel: Relation) -> PppRecipe:
    """A pin-only recipe reading binary implication out of a non-affine
    pin-and-implication relation.

    Keeps a one-directional implication pair (x, y), pins to zero every
    other variable implying x or y, pins the rest to one, and verifies.
    Falls back to exhaustive search over pin-only recipes; absence is
    possible for relations whose implication digraph ties an equivalence
    cycle into the chosen pair, and is reported as NoWitnessError.
    """
    try:
        formula = normalize_imconj(rel)
    except NotInClassError as exc:
        raise InvalidArgumentError(str(exc)) from exc
    if is_affine(rel):
        raise InvalidArgumentError("affine relations admit no implication extraction")
    impl = set(formula.implications)
    pinned = dict(formula.pins)
    unpinned = [c for c in range(1, rel.arity + 1) if c not in pinned]
    for x, y in sorted(impl):
        if (y, x) in impl:
            continue
        pins = dict(pinned)
        for z in unpinned:
            if z in (x, y):
                continue
            pins[z] = 0 if ((z, x) in impl or (z, y) in impl) else 1
        recipe = PppRecipe(kept=(x, y), pins=pins)
        if recipe.apply(rel) == R_IMP:
            return recipe
    for i in range(1, rel.arity + 1):
        for j in range(1, rel.arity + 1):
            if i == j:
                continue
            others = [c for c in range(1, rel.arity + 1) if c not in (i, j)]
            for pattern in product((0, 1), repeat=len(others)):
                recipe = PppRecipe(kept=(i, j), pins=dict(zip(others, pattern)))
                if recipe.apply(rel) == R_IMP:
                    return recipe
    raise NoWitnessError("no pin-only implication recipe exists for this relation")
