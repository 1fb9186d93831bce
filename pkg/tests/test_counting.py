import random

import pytest

from bcsp.counting import (
    affine_count,
    brute_force_count,
    count_partitioned,
    degree1_count,
    hypergraph_is_count,
)
from bcsp.errors import InvalidArgumentError, ResourceLimitError
from bcsp.gadgets import or_nand_ring
from bcsp.instance import Constraint, CspInstance, Hypergraph
from bcsp.relation import R_EQ, R_NAND, R_NEQ, R_ONE, R_OR, R_ZERO, eq_k, or_k
from helpers import random_affine_relation


def inst(variables, *constraints):
    return CspInstance(tuple(variables), tuple(constraints))


def test_brute_force_examples():
    assert brute_force_count(inst("xy", Constraint("or", R_OR, ("x", "y")))) == 3
    assert brute_force_count(or_nand_ring(2)) == 2
    contradictory = inst(
        "x",
        Constraint("zero", R_ZERO, ("x",)),
        Constraint("one", R_ONE, ("x",)),
    )
    assert brute_force_count(contradictory) == 0


def test_brute_force_handles_constants_and_repeats():
    i = inst("x", Constraint("or", R_OR, ("x", 0)))
    assert brute_force_count(i) == 1
    j = inst("v", Constraint("neq", R_NEQ, ("v", "v")))
    assert brute_force_count(j) == 0


def test_brute_force_budget():
    wide = CspInstance(tuple(f"v{i}" for i in range(30)), ())
    with pytest.raises(ResourceLimitError):
        brute_force_count(wide, budget=24)
    assert brute_force_count(CspInstance(("a", "b"), ())) == 4


def test_brute_force_invariant_under_renaming_and_reordering():
    rng = random.Random(2)
    for _ in range(30):
        n = rng.randrange(2, 6)
        variables = [f"v{i}" for i in range(n)]
        constraints = []
        for _ in range(rng.randrange(1, 5)):
            rel = rng.choice((R_OR, R_NAND, R_EQ, R_NEQ))
            scope = tuple(rng.choice(variables) for _ in range(2))
            constraints.append(Constraint("c", rel, scope))
        base = inst(variables, *constraints)
        shuffled = list(constraints)
        rng.shuffle(shuffled)
        renamed = {v: f"w{i}" for i, v in enumerate(variables)}
        remapped = [
            Constraint(c.name, c.relation, tuple(renamed[e] for e in c.scope))
            for c in shuffled
        ]
        other = inst([renamed[v] for v in variables], *remapped)
        assert brute_force_count(base) == brute_force_count(other)


def test_degree_counting():
    assert inst("v", Constraint("or", R_OR, ("v", "v"))).degree() == 2
    assert or_nand_ring(3).degree() == 2
    assert CspInstance((), ()).degree() == 0


def test_degree_counts_desugared_pins():
    i = inst("x", Constraint("or", R_OR, ("x", 0)))
    assert i.degree() == 2  # the pin variable appears twice


def test_degree1_product_formula():
    i = inst(
        ["x1", "x2", "x3", "x4", "x5"],
        Constraint("or", R_OR, ("x1", "x2")),
        Constraint("nand", R_NAND, ("x3", "x4")),
    )
    assert degree1_count(i) == 18
    empty = CspInstance(("a", "b", "c"), ())
    assert degree1_count(empty) == 8


def test_degree1_rejects_higher_degree():
    with pytest.raises(InvalidArgumentError):
        degree1_count(inst("v", Constraint("or", R_OR, ("v", "v"))))


def test_degree1_matches_oracle():
    from bcsp.relation import R_IMP

    rng = random.Random(8)
    for _ in range(100):
        n = rng.randrange(2, 10)
        variables = [f"v{i}" for i in range(n)]
        free = list(variables)
        constraints = []
        while len(free) >= 2 and rng.random() < 0.8:
            a = free.pop(rng.randrange(len(free)))
            b = free.pop(rng.randrange(len(free)))
            rel = rng.choice((R_OR, R_EQ, R_IMP, R_NAND))
            constraints.append(Constraint("c", rel, (a, b)))
        i = inst(variables, *constraints)
        assert degree1_count(i) == brute_force_count(i)


def test_affine_count_examples():
    i = inst(
        ["x1", "x2", "x3"],
        Constraint("eq", R_EQ, ("x1", "x2")),
        Constraint("eq", R_EQ, ("x2", "x3")),
    )
    assert affine_count(i) == 2
    j = inst("x", Constraint("neq", R_NEQ, ("x", "x")))
    assert affine_count(j) == 0


def test_affine_count_rejects_non_affine():
    with pytest.raises(InvalidArgumentError):
        affine_count(inst("ab", Constraint("or", R_OR, ("a", "b"))))


def test_affine_count_matches_brute_force():
    rng = random.Random(21)
    for _ in range(100):
        n = rng.randrange(2, 12)
        variables = [f"v{i}" for i in range(n)]
        constraints = []
        for _ in range(rng.randrange(0, 6)):
            rel = random_affine_relation(rng, rng.choice((1, 2, 3)))
            if rel.is_empty() and rng.random() < 0.7:
                rel = random_affine_relation(rng, 2)
            scope = tuple(
                rng.choice(variables) if rng.random() < 0.9 else rng.randrange(2)
                for _ in range(rel.arity)
            )
            constraints.append(Constraint("a", rel, scope))
        i = inst(variables, *constraints)
        assert affine_count(i) == brute_force_count(i)


def test_affine_count_scales_past_brute_force():
    import time

    rng = random.Random(34)
    n = 200
    variables = tuple(f"v{i}" for i in range(n))
    constraints = []
    for _ in range(300):
        a, b, c = rng.sample(range(n), 3)
        rel = random_affine_relation(rng, 3)
        while rel.is_empty():
            rel = random_affine_relation(rng, 3)
        constraints.append(Constraint("a", rel, (variables[a], variables[b], variables[c])))
    i = CspInstance(variables, tuple(constraints))
    start = time.time()
    z = affine_count(i)
    assert time.time() - start < 1.0
    assert z >= 0


def test_hypergraph_counts():
    triangle = Hypergraph(3, (frozenset({1, 2}), frozenset({2, 3}), frozenset({1, 3})))
    assert hypergraph_is_count(triangle) == 4
    assert hypergraph_is_count(Hypergraph(3, (frozenset({1, 2, 3}),))) == 7
    for n in (0, 1, 5):
        assert hypergraph_is_count(Hypergraph(n, ())) == 2 ** n


def test_hypergraph_budget():
    with pytest.raises(ResourceLimitError):
        hypergraph_is_count(Hypergraph(30, ()), budget=24)


def test_count_partitioned_matches_total():
    rng = random.Random(44)
    for _ in range(25):
        n = rng.randrange(2, 7)
        variables = [f"v{i}" for i in range(n)]
        constraints = [
            Constraint("c", rng.choice((R_OR, R_NAND, R_EQ)),
                       (rng.choice(variables), rng.choice(variables)))
            for _ in range(rng.randrange(1, 4))
        ]
        i = inst(variables, *constraints)
        marked = variables[: rng.randrange(1, n + 1)]
        zeros, ones, stray = count_partitioned(i, marked)
        assert zeros + ones + stray == brute_force_count(i)


def test_desugaring_preserves_count_and_degree():
    rng = random.Random(77)
    for _ in range(40):
        n = rng.randrange(2, 6)
        variables = [f"v{i}" for i in range(n)]
        constraints = []
        for _ in range(rng.randrange(1, 5)):
            rel = rng.choice((R_OR, R_NAND, eq_k(3), or_k(3)))
            scope = tuple(
                rng.choice(variables) if rng.random() < 0.7 else rng.randrange(2)
                for _ in range(rel.arity)
            )
            constraints.append(Constraint("c", rel, scope))
        i = inst(variables, *constraints)
        flat = i.desugar()
        assert not flat.has_constants()
        assert brute_force_count(i) == brute_force_count(flat)
        if i.degree() >= 2:
            assert flat.degree() == i.degree()
        profile = flat.degree_profile()
        for v in flat.variables:
            if v not in i.variables:
                assert profile[v] == 2  # introduced pin variables occur exactly twice
