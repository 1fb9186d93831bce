"""Synthesis and verification of equality-simulation gadgets.

A witness for Eq_k is a constraint template with k distinguished
variables that has exactly m satisfying assignments putting all of them
at 0, exactly m putting all of them at 1, and no others, with template
degree at most d and distinguished degree at most d-1 (d defaults to 3,
and every route here emits distinguished degree exactly 2).

Routes, tried in order of template size: project the source relation
onto binary equality, onto implication, onto disequality, and finally
the OR/NAND ring built from one relation defining binary OR and one
defining binary NAND.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .classify import normalize_nandconj, normalize_orconj
from .counting import count_partitioned
from .errors import InvalidArgumentError, NotInClassError, NoWitnessError
from .instance import Constraint, CspInstance
from .relation import (
    R_EQ,
    R_IMP,
    R_NAND,
    R_NEQ,
    R_OR,
    PppRecipe,
    Relation,
    compose_recipes,
    eq_k,
)

ROUTE_EQ = "eq-cycle"
ROUTE_IMP = "imp-cycle"
ROUTE_NEQ = "neq-chain"
ROUTE_RING = "or-nand-ring"


@dataclass(frozen=True)
class ExtensionCounts:
    """Member counts of the source relation over one recipe.

    For equality/implication cycles: extensions of the kept-pair values
    (0,0), (0,1) and (1,1).  For disequality chains: extensions of (0,1)
    and (1,0), with gamma 0.  For the OR/NAND ring, one record per side:
    extensions of (0,1) and (1,0), gamma counting the side's third
    admitted prefix ((1,1) for the OR side, (0,0) for the NAND side).
    """

    alpha: int
    beta: int
    gamma: int


@dataclass(frozen=True)
class GadgetWitness:
    """An independently checkable certificate that the language simulates
    k-ary equality."""

    language: tuple[Relation, ...]
    names: tuple[str, ...]
    template: CspInstance
    distinguished: tuple[str, ...]
    k: int
    multiplicity: int
    degree_bound: int
    route: str
    extension_counts: tuple[ExtensionCounts, ...]

    def degree_profile(self) -> dict[str, int]:
        return self.template.degree_profile()


@dataclass(frozen=True)
class VerificationReport:
    zero_count: int
    one_count: int
    stray_count: int
    multiplicity_ok: bool
    template_degree: int
    distinguished_degrees: dict[str, int]
    degree_ok: bool
    passed: bool


def extension_count(rel: Relation, recipe: PppRecipe, u: int, v: int) -> int:
    """Members of rel whose kept pair reads (u, v) and whose pinned
    columns hold their pin values; free columns range."""
    recipe = recipe.normalized(rel.arity)
    i, j = recipe.kept
    want = dict(recipe.pins)
    want[i] = u
    want[j] = v
    shifts = {col: rel.arity - col for col in want}
    count = 0
    for idx in rel.indices():
        if all((idx >> shifts[col]) & 1 == val for col, val in want.items()):
            count += 1
    return count


def _free_extensions(rel: Relation, recipe: PppRecipe, u: int, v: int) -> list[tuple[int, ...]]:
    """The free-column value tuples of members matching (u, v), sorted."""
    recipe = recipe.normalized(rel.arity)
    frees = recipe.free_columns(rel.arity)
    i, j = recipe.kept
    want = dict(recipe.pins)
    want[i] = u
    want[j] = v
    out = []
    for idx in rel.indices():
        if all((idx >> (rel.arity - col)) & 1 == val for col, val in want.items()):
            out.append(tuple((idx >> (rel.arity - c)) & 1 for c in frees))
    return sorted(out)


def find_binary_ppp(rel: Relation, target: Relation,
                    saturate: bool | None = None) -> PppRecipe | None:
    """Search for a recipe taking rel to the given binary relation.

    The search runs over ordered kept pairs and every pin/free pattern
    of the other columns, so free (existentially projected) columns are
    allowed.  For OR and NAND targets the found recipe is saturated to a
    pin-maximal one: no further column can be pinned while the recipe
    still defines the target.  Absence is reported as None.
    """
    if target.arity != 2:
        raise InvalidArgumentError("target must be binary")
    if saturate is None:
        saturate = target in (R_OR, R_NAND)
    r = rel.arity
    if r < 2:
        return None
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i == j:
                continue
            others = [c for c in range(1, r + 1) if c not in (i, j)]
            # pin values before the free marker: pin-heavy recipes come
            # first, keeping emitted templates small
            for pattern in product((0, 1, None), repeat=len(others)):
                pins = {c: v for c, v in zip(others, pattern) if v is not None}
                recipe = PppRecipe(kept=(i, j), pins=pins)
                if recipe.apply(rel) == target:
                    if saturate:
                        recipe = _saturate(rel, target, recipe)
                    return recipe
    return None


def _saturate(rel: Relation, target: Relation, recipe: PppRecipe) -> PppRecipe:
    changed = True
    while changed:
        changed = False
        for col in recipe.free_columns(rel.arity):
            for val in (0, 1):
                trial = PppRecipe(kept=recipe.kept,
                                  pins=recipe.pins + ((col, val),))
                if trial.apply(rel) == target:
                    recipe = trial
                    changed = True
                    break
            if changed:
                break
    return recipe


def _fresh_scope(rel: Relation, recipe: PppRecipe, first: str, second: str,
                 slack_prefix: str) -> tuple:
    """A scope for one constraint: kept slots carry the two named
    variables, pinned columns their constants, free columns fresh names."""
    i, j = recipe.kept
    pins = dict(recipe.pins)
    scope = []
    slack = 0
    for col in range(1, rel.arity + 1):
        if col == i:
            scope.append(first)
        elif col == j:
            scope.append(second)
        elif col in pins:
            scope.append(pins[col])
        else:
            scope.append(f"{slack_prefix}_{slack}")
            slack += 1
    return tuple(scope)


def _collect_variables(distinguished, extras, constraints) -> tuple[str, ...]:
    seen = list(distinguished) + list(extras)
    present = set(seen)
    for c in constraints:
        for v in c.variables():
            if v not in present:
                present.add(v)
                seen.append(v)
    return tuple(seen)


def simulate_eq_from_binary(rel: Relation, target: Relation, recipe: PppRecipe,
                            k: int, d: int = 3, name: str = "r0") -> GadgetWitness:
    """Witness for Eq_k from a recipe taking rel to equality, implication
    or disequality.

    Equality/implication use a k-cycle of constraints; if the (0,0) and
    (1,1) extension counts disagree, a free column is pinned to the value
    a (1,1)-extension takes where two (0,0)-extensions differ (smallest
    such position, lexicographically smallest tuples), shrinking the
    larger side, until the counts balance.  Disequality uses a 2k-chain
    through fresh ring variables and needs no balancing.
    """
    if k < 2:
        raise InvalidArgumentError("equality gadgets need k >= 2")
    recipe = recipe.normalized(rel.arity)
    if recipe.apply(rel) != target:
        raise InvalidArgumentError("recipe does not define the stated target")

    if target == R_NEQ:
        return _neq_chain(rel, recipe, k, d, name)
    if target not in (R_EQ, R_IMP):
        raise InvalidArgumentError("target must be one of =, -> or !=")

    while True:
        alpha = extension_count(rel, recipe, 0, 0)
        gamma = extension_count(rel, recipe, 1, 1)
        if alpha == gamma:
            break
        if alpha > gamma:
            big, small = (0, 0), (1, 1)
        else:
            big, small = (1, 1), (0, 0)
        exts = _free_extensions(rel, recipe, *big)
        other = _free_extensions(rel, recipe, *small)
        a_t, b_t = exts[0], exts[1]
        c_t = other[0]
        j = next(p for p in range(len(a_t)) if a_t[p] != b_t[p])
        col = recipe.free_columns(rel.arity)[j]
        recipe = PppRecipe(kept=recipe.kept, pins=recipe.pins + ((col, c_t[j]),))

    alpha = extension_count(rel, recipe, 0, 0)
    counts = ExtensionCounts(
        alpha=alpha,
        beta=extension_count(rel, recipe, 0, 1),
        gamma=extension_count(rel, recipe, 1, 1),
    )
    distinguished = tuple(f"x{i}" for i in range(1, k + 1))
    constraints = []
    for i in range(1, k + 1):
        nxt = distinguished[i % k]
        scope = _fresh_scope(rel, recipe, distinguished[i - 1], nxt, f"s{i}")
        constraints.append(Constraint(name, rel, scope))
    template = CspInstance(
        _collect_variables(distinguished, (), constraints), tuple(constraints)
    )
    return GadgetWitness(
        language=(rel,), names=(name,), template=template,
        distinguished=distinguished, k=k, multiplicity=alpha ** k,
        degree_bound=d, route=ROUTE_EQ if target == R_EQ else ROUTE_IMP,
        extension_counts=(counts,),
    )


def _neq_chain(rel: Relation, recipe: PppRecipe, k: int, d: int, name: str) -> GadgetWitness:
    alpha = extension_count(rel, recipe, 0, 1)
    beta = extension_count(rel, recipe, 1, 0)
    counts = ExtensionCounts(alpha=alpha, beta=beta, gamma=0)
    distinguished = tuple(f"x{i}" for i in range(1, k + 1))
    ring = tuple(f"y{i}" for i in range(1, k + 1))
    constraints = []
    for i in range(1, k + 1):
        nxt = distinguished[i % k]
        constraints.append(Constraint(
            name, rel, _fresh_scope(rel, recipe, distinguished[i - 1], ring[i - 1], f"s{2 * i - 1}")
        ))
        constraints.append(Constraint(
            name, rel, _fresh_scope(rel, recipe, ring[i - 1], nxt, f"s{2 * i}")
        ))
    template = CspInstance(
        _collect_variables(distinguished, ring, constraints), tuple(constraints)
    )
    return GadgetWitness(
        language=(rel,), names=(name,), template=template,
        distinguished=distinguished, k=k,
        multiplicity=(alpha ** k) * (beta ** k),
        degree_bound=d, route=ROUTE_NEQ, extension_counts=(counts,),
    )


def _neq_from_saturated(rel: Relation, recipe: PppRecipe) -> PppRecipe | None:
    """Turn a pin-maximal OR (or NAND) recipe with unbalanced (0,1)/(1,0)
    extension counts into a disequality recipe by pinning one more free
    column; pin-maximality guarantees the third prefix dies."""
    alpha = extension_count(rel, recipe, 0, 1)
    beta = extension_count(rel, recipe, 1, 0)
    if alpha == beta:
        return None
    if alpha > beta:
        exts = _free_extensions(rel, recipe, 0, 1)
        other = _free_extensions(rel, recipe, 1, 0)
    else:
        exts = _free_extensions(rel, recipe, 1, 0)
        other = _free_extensions(rel, recipe, 0, 1)
    a_t, b_t = exts[0], exts[1]
    c_t = other[0]
    j = next(p for p in range(len(a_t)) if a_t[p] != b_t[p])
    col = recipe.free_columns(rel.arity)[j]
    trial = PppRecipe(kept=recipe.kept, pins=recipe.pins + ((col, c_t[j]),))
    if trial.apply(rel) != R_NEQ:
        raise AssertionError("pin-maximal recipe did not reduce to disequality")
    return trial


def simulate_eq_or_nand(rel_or: Relation, rel_nand: Relation, k: int, d: int = 3,
                        or_recipe: PppRecipe | None = None,
                        nand_recipe: PppRecipe | None = None,
                        names: tuple[str, str] = ("r0", "r1")) -> GadgetWitness:
    """Witness for Eq_k from one relation defining binary OR and one
    defining binary NAND (they may be the same relation).

    Each side's recipe must be pin-maximal.  If a side's (0,1) and (1,0)
    extension counts differ, that side alone already defines disequality
    and the chain route takes over; otherwise the OR/NAND ring is
    emitted with multiplicity (alpha * alpha')**k.
    """
    if or_recipe is None:
        or_recipe = find_binary_ppp(rel_or, R_OR)
    if nand_recipe is None:
        nand_recipe = find_binary_ppp(rel_nand, R_NAND)
    if or_recipe is None or nand_recipe is None:
        raise InvalidArgumentError("need one relation defining OR and one defining NAND")
    or_recipe = or_recipe.normalized(rel_or.arity)
    nand_recipe = nand_recipe.normalized(rel_nand.arity)
    if or_recipe.apply(rel_or) != R_OR or nand_recipe.apply(rel_nand) != R_NAND:
        raise InvalidArgumentError("recipes do not define OR and NAND")
    # the unbalanced-side fallback below is only sound for pin-maximal
    # recipes, so saturate whatever the caller handed in
    or_recipe = _saturate(rel_or, R_OR, or_recipe)
    nand_recipe = _saturate(rel_nand, R_NAND, nand_recipe)

    fallback = _neq_from_saturated(rel_or, or_recipe)
    if fallback is not None:
        return simulate_eq_from_binary(rel_or, R_NEQ, fallback, k, d, names[0])
    fallback = _neq_from_saturated(rel_nand, nand_recipe)
    if fallback is not None:
        return simulate_eq_from_binary(rel_nand, R_NEQ, fallback, k, d, names[1])

    alpha = extension_count(rel_or, or_recipe, 0, 1)
    alpha2 = extension_count(rel_nand, nand_recipe, 0, 1)
    counts = (
        ExtensionCounts(alpha=alpha, beta=extension_count(rel_or, or_recipe, 1, 0),
                        gamma=extension_count(rel_or, or_recipe, 1, 1)),
        ExtensionCounts(alpha=alpha2, beta=extension_count(rel_nand, nand_recipe, 1, 0),
                        gamma=extension_count(rel_nand, nand_recipe, 0, 0)),
    )
    distinguished = tuple(f"x{i}" for i in range(1, k + 1))
    ring = tuple(f"y{i}" for i in range(1, k + 1))
    constraints = []
    for i in range(1, k + 1):
        constraints.append(Constraint(
            names[0], rel_or,
            _fresh_scope(rel_or, or_recipe, distinguished[i - 1], ring[i - 1], f"s{2 * i - 1}")
        ))
    for i in range(1, k + 1):
        nxt = distinguished[i % k]
        constraints.append(Constraint(
            names[1], rel_nand,
            _fresh_scope(rel_nand, nand_recipe, ring[i - 1], nxt, f"s{2 * i}")
        ))
    template = CspInstance(
        _collect_variables(distinguished, ring, constraints), tuple(constraints)
    )
    language = (rel_or,) if rel_or == rel_nand and names[0] == names[1] else (rel_or, rel_nand)
    wnames = (names[0],) if len(language) == 1 else tuple(names)
    return GadgetWitness(
        language=language, names=wnames, template=template,
        distinguished=distinguished, k=k,
        multiplicity=(alpha * alpha2) ** k,
        degree_bound=d, route=ROUTE_RING, extension_counts=counts,
    )


def or_nand_ring(k: int) -> CspInstance:
    """The plain OR/NAND ring over binary OR and NAND themselves."""
    witness = simulate_eq_or_nand(R_OR, R_NAND, k, names=("or", "nand"))
    return witness.template


def simulate_eq_valid(rel: Relation, k: int, d: int = 3, name: str = "r0") -> GadgetWitness:
    """Witness for Eq_k from a relation that is 0-valid, 1-valid and not
    complete, by descending through member restrictions until a binary
    equality or implication projection appears."""
    if rel.arity < 2:
        raise InvalidArgumentError("need arity >= 2")
    if not (rel.is_c_valid(0) and rel.is_c_valid(1)):
        raise InvalidArgumentError("relation must be 0-valid and 1-valid")
    if rel.is_complete():
        raise InvalidArgumentError("relation must not be complete")
    recipe, target = _valid_descent(rel)
    return simulate_eq_from_binary(rel, target, recipe, k, d, name)


def _valid_descent(rel: Relation) -> tuple[PppRecipe, Relation]:
    r = rel.arity
    if r == 2:
        if rel == R_EQ:
            return PppRecipe(kept=(1, 2)), R_EQ
        if rel == R_IMP:
            return PppRecipe(kept=(1, 2)), R_IMP
        swapped = PppRecipe(kept=(2, 1))
        if swapped.apply(rel) == R_IMP:
            return swapped, R_IMP
        raise AssertionError("binary 0/1-valid non-complete relation must be =, -> or <-")
    if rel == eq_k(r):
        return PppRecipe(kept=(1, 2)), R_EQ
    for bits in rel.tuples():
        if len(set(bits)) < 2:
            continue
        for c in (0, 1):
            sub = rel.restrict_by_tuple(bits, c)
            if sub.is_complete():
                continue
            keep = tuple(i for i in range(1, r + 1) if bits[i - 1] != c)
            step = PppRecipe(
                kept=keep,
                pins={i: c for i in range(1, r + 1) if bits[i - 1] == c},
            )
            inner, target = _valid_descent(sub)
            return compose_recipes(step, inner, r), target
    raise AssertionError("restriction descent found no non-complete restriction")


def equality_witness(language, k: int = 3, d: int = 3, names=None) -> GadgetWitness:
    """An Eq_k witness for a constraint language.

    Requires either a relation that is neither a pin-and-OR nor a
    pin-and-NAND conjunction, or a width->=2 member of each of those two
    classes.  Routes are tried smallest-template first: equality
    projection, implication, disequality, then the OR/NAND ring.
    """
    language = tuple(language)
    if not language:
        raise InvalidArgumentError("language must be non-empty")
    if d < 3:
        raise InvalidArgumentError("gadget synthesis targets degree bounds >= 3")
    if names is None:
        names = tuple(f"r{i}" for i in range(len(language)))
    names = tuple(names)
    if len(names) != len(language):
        raise InvalidArgumentError("one name per relation")

    def try_class(fn, rel):
        try:
            return fn(rel)
        except NotInClassError:
            return None

    or_forms = [try_class(normalize_orconj, rel) for rel in language]
    nand_forms = [try_class(normalize_nandconj, rel) for rel in language]
    neither = any(o is None and n is None for o, n in zip(or_forms, nand_forms))
    wide_or = any(f is not None and f.width() >= 2 for f in or_forms)
    wide_nand = any(f is not None and f.width() >= 2 for f in nand_forms)
    if not neither and not (wide_or and wide_nand):
        raise NoWitnessError(
            "language is within one pin-and-OR/NAND class; it cannot simulate equality"
        )

    for target in (R_EQ, R_IMP, R_NEQ):
        for rel, name in zip(language, names):
            recipe = find_binary_ppp(rel, target)
            if recipe is not None:
                return simulate_eq_from_binary(rel, target, recipe, k, d, name)

    or_side = None
    nand_side = None
    for rel, name in zip(language, names):
        if or_side is None:
            recipe = find_binary_ppp(rel, R_OR)
            if recipe is not None:
                or_side = (rel, recipe, name)
        if nand_side is None:
            recipe = find_binary_ppp(rel, R_NAND)
            if recipe is not None:
                nand_side = (rel, recipe, name)
    if or_side is not None and nand_side is not None:
        return simulate_eq_or_nand(
            or_side[0], nand_side[0], k, d,
            or_recipe=or_side[1], nand_recipe=nand_side[1],
            names=(or_side[2], nand_side[2]),
        )
    raise NoWitnessError("no synthesis route applies to this language")


def verify_gadget(witness: GadgetWitness, budget: int | None = None) -> VerificationReport:
    """Independently confirm a witness by brute force.

    Counts the all-zero and all-one solutions over the distinguished
    variables, demands zero strays, both counts equal to the stated
    multiplicity, template degree within the bound and distinguished
    degree strictly below it.
    """
    zeros, ones, stray = count_partitioned(witness.template, witness.distinguished, budget)
    profile = witness.template.degree_profile()
    template_degree = max(profile.values(), default=0)
    dist_degrees = {v: profile.get(v, 0) for v in witness.distinguished}
    degree_ok = template_degree <= witness.degree_bound and all(
        deg <= witness.degree_bound - 1 for deg in dist_degrees.values()
    )
    multiplicity_ok = zeros == witness.multiplicity and ones == witness.multiplicity
    return VerificationReport(
        zero_count=zeros,
        one_count=ones,
        stray_count=stray,
        multiplicity_ok=multiplicity_ok,
        template_degree=template_degree,
        distinguished_degrees=dist_degrees,
        degree_ok=degree_ok,
        passed=multiplicity_ok and stray == 0 and degree_ok,
    )
