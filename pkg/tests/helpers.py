"""Shared test utilities: random generators and independent oracles.

Oracles here deliberately avoid the library's own code paths wherever a
result is being cross-checked; they enumerate tuples and assignments
directly.
"""

from __future__ import annotations

import random
from itertools import product

from bcsp.relation import Relation


def random_relation(rng: random.Random, arity: int, nonempty: bool = False) -> Relation:
    size = 1 << (1 << arity)
    mask = rng.randrange(size)
    if nonempty and mask == 0:
        mask = 1 << rng.randrange(1 << arity)
    return Relation(arity, mask)


def random_affine_relation(rng: random.Random, arity: int) -> Relation:
    """A random coset: random basis vectors plus a random shift."""
    dim = rng.randrange(arity + 1)
    basis = [rng.randrange(1, 1 << arity) for _ in range(dim)]
    shift = rng.randrange(1 << arity)
    members = set()
    for coeffs in product((0, 1), repeat=len(basis)):
        v = shift
        for c, b in zip(coeffs, basis):
            if c:
                v ^= b
        members.add(v)
    mask = 0
    for v in members:
        mask |= 1 << v
    return Relation(arity, mask)


def affine_closure_oracle(rel: Relation) -> bool:
    """Literal triple-XOR closure test, quadratic but independent."""
    members = set(rel.indices())
    if not members:
        return True
    lst = sorted(members)
    for a in lst:
        for b in lst:
            for c in lst:
                if a ^ b ^ c not in members:
                    return False
    return True


def affine_span_oracle(rel: Relation) -> bool:
    """The affine span of the members equals the member set."""
    members = set(rel.indices())
    if not members:
        return True
    t = min(members)
    span = {0}
    for m in members:
        v = m ^ t
        span |= {s ^ v for s in span}
    return {s ^ t for s in span} == members


def relation_tuples(rel: Relation) -> set[tuple[int, ...]]:
    return set(rel.tuples())


def enumerate_normalized_or_formulas(rel: Relation):
    """Every normalized pin-and-OR formula defining rel, by exhaustive
    enumeration (independent of the library's construction).

    A normalized formula defining a non-empty relation must pin exactly
    the constant columns at their constant values (otherwise some member
    violates a pin, or flooding the unpinned variables with ones shows a
    supposedly constant column varies), and each clause must hold in
    every member; the enumeration therefore ranges over all antichains
    of member-satisfied clauses and keeps the ones that evaluate back to
    the relation.  Returns (pins, clause set) pairs.
    """
    if rel.is_empty():
        raise ValueError("the empty relation is outside the enumeration space")
    members = list(rel.tuples())
    pins = {}
    for i in range(1, rel.arity + 1):
        vals = {t[i - 1] for t in members}
        if len(vals) == 1:
            pins[i] = vals.pop()
    unpinned = [i for i in range(1, rel.arity + 1) if i not in pins]
    candidates = []
    for size in range(2, len(unpinned) + 1):
        from itertools import combinations

        for combo in combinations(unpinned, size):
            if all(any(t[v - 1] for v in combo) for t in members):
                candidates.append(frozenset(combo))

    # tuple-mask per conjunct so formula evaluation is a few ANDs
    full = 1 << rel.arity
    all_tuples = [
        tuple((idx >> (rel.arity - i)) & 1 for i in range(1, rel.arity + 1))
        for idx in range(full)
    ]
    pin_mask = 0
    for idx, bits in enumerate(all_tuples):
        if all(bits[v - 1] == c for v, c in pins.items()):
            pin_mask |= 1 << idx
    clause_mask = []
    for cl in candidates:
        m = 0
        for idx, bits in enumerate(all_tuples):
            if any(bits[v - 1] for v in cl):
                m |= 1 << idx
        clause_mask.append(m)
    comparable = [
        sum(1 << j for j, b in enumerate(candidates) if i != j and (a <= b or b <= a))
        for i, a in enumerate(candidates)
    ]

    found = []
    for subset_bits in range(1 << len(candidates)):
        chosen = [i for i in range(len(candidates)) if subset_bits >> i & 1]
        if any(subset_bits & comparable[i] for i in chosen):
            continue
        mask = pin_mask
        for i in chosen:
            mask &= clause_mask[i]
        if mask == rel.mask:
            found.append((dict(pins), frozenset(candidates[i] for i in chosen)))
    return found
