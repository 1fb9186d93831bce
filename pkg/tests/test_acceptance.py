"""Acceptance suite: one test per criterion, exact tolerances, and a
printed pass line each so a -s run reads as a checklist."""

import random
import time
from itertools import product

from bcsp.classify import (
    classify_relation,
    is_pseudo_monotone,
    normalize_nandconj,
    normalize_orconj,
)
from bcsp.counting import (
    affine_count,
    brute_force_count,
    degree1_count,
    hypergraph_is_count,
)
from bcsp.errors import NotInClassError
from bcsp.gadgets import equality_witness, verify_gadget, or_nand_ring
from bcsp.instance import Constraint, CspInstance, Hypergraph
from bcsp.reductions import (
    his_to_orcsp,
    inflate_degree,
    orcsp_to_his,
    relationcsp_to_his,
)
from bcsp.relation import (
    R_EQ,
    R_IMP,
    R_NAND,
    R_NEQ,
    R_OR,
    R_ONE,
    R_ZERO,
    Relation,
    eq_k,
    nand_k,
    or_k,
)
from bcsp.verdict import (
    classify_language_bounded,
    classify_language_degree,
    table1_annotation,
)
from helpers import enumerate_normalized_or_formulas, random_affine_relation

from test_reductions import random_hypergraph


def _passed(label):
    print(f"ACCEPTANCE {label}: PASS")


def all_relations(max_arity):
    for arity in range(1, max_arity + 1):
        for mask in range(1 << (1 << arity)):
            yield Relation(arity, mask)


def test_criterion_1_classification_totality():
    start = time.time()
    total = witnessed = 0
    for rel in all_relations(3):
        total += 1
        rc = classify_relation(rel, synthesize=False)
        if rc.orconj is not None or rc.nandconj is not None:
            continue
        witnessed += 1
        for k in (2, 3, 4):
            w = equality_witness([rel], k)
            report = verify_gadget(w)
            assert report.passed, (rel, k)
            assert report.stray_count == 0
            assert report.template_degree <= 3
            assert all(deg <= 2 for deg in report.distinguished_degrees.values())
    elapsed = time.time() - start
    # every relation of arity 1, 2 and 3: 2**(2**r) per arity
    assert total == 4 + 16 + 256
    assert elapsed < 60, f"sweep took {elapsed:.1f}s"
    _passed(f"1 classification totality ({witnessed} witness relations, {elapsed:.1f}s)")


def test_criterion_2_ring_exactness():
    for k in range(2, 7):
        inst = or_nand_ring(k)
        assert brute_force_count(inst) == 2
        solutions = []
        names = inst.variables
        for bits in product((0, 1), repeat=len(names)):
            asg = dict(zip(names, bits))
            ok = all(
                tuple(asg[e] if isinstance(e, str) else e for e in c.scope) in c.relation
                for c in inst.constraints
            )
            if ok:
                solutions.append(asg)
        assert len(solutions) == 2
        for asg in solutions:
            xs = {asg[f"x{i}"] for i in range(1, k + 1)}
            ys = {asg[f"y{i}"] for i in range(1, k + 1)}
            assert len(xs) == 1 and len(ys) == 1 and xs != ys
    _passed("2 OR/NAND ring exactness (k = 2..6)")


def _or_conj_succeeds(rel):
    try:
        normalize_orconj(rel)
        return True
    except NotInClassError:
        return False


def _nand_conj_succeeds(rel):
    try:
        normalize_nandconj(rel)
        return True
    except NotInClassError:
        return False


def test_criterion_3_duality_and_characterization():
    checked = 0
    for rel in all_relations(3):
        a = _or_conj_succeeds(rel)
        assert a == is_pseudo_monotone(rel)
        assert a == _nand_conj_succeeds(rel.complement())
        checked += 1
    rng = random.Random(1009)
    for arity in (4, 5):
        for _ in range(1000):
            rel = Relation(arity, rng.randrange(1 << (1 << arity)))
            a = _or_conj_succeeds(rel)
            assert a == is_pseudo_monotone(rel)
            assert a == _nand_conj_succeeds(rel.complement())
            checked += 1
    _passed(f"3 duality and monotone characterization ({checked} relations)")


def test_criterion_4_normal_form_uniqueness():
    checked = 0
    for arity in (1, 2, 3, 4):
        for mask in range(1, 1 << (1 << arity)):
            rel = Relation(arity, mask)
            if not is_pseudo_monotone(rel):
                continue
            formulas = enumerate_normalized_or_formulas(rel)
            assert len(formulas) == 1, f"arity {arity} mask {mask}: {len(formulas)}"
            pins, clauses = formulas[0]
            mine = normalize_orconj(rel)
            assert pins == dict(mine.pins)
            assert clauses == frozenset(frozenset(c) for c in mine.clauses)
            checked += 1
    _passed(f"4 normal-form uniqueness ({checked} clause-definable relations)")


def test_criterion_5_count_preservation():
    # (a) hypergraph round trips
    rng = random.Random(2003)
    triangle = Hypergraph(3, (frozenset({1, 2}), frozenset({2, 3}), frozenset({1, 3})))
    assert hypergraph_is_count(triangle) == 4
    assert brute_force_count(his_to_orcsp(triangle, 2)) == 4
    for _ in range(100):
        h = random_hypergraph(rng, max_vertices=12, max_width=3, max_degree=3)
        w = max(2, h.width())
        inst = his_to_orcsp(h, w)
        expected = hypergraph_is_count(h)
        assert brute_force_count(inst) == expected
        assert hypergraph_is_count(orcsp_to_his(inst)) == expected

    # (b) clause-relation lowering respects the k*d degree bound, for a
    # repetition-1 relation and for one whose formula reuses a variable
    from bcsp.formula import NormalizedFormula

    shared = NormalizedFormula(
        kind="or", arity=4, clauses=((1, 2), (2, 3, 4)),
    ).evaluate()
    for rel, rep in ((or_k(3), 1), (shared, 2)):
        for _ in range(25):
            n = rng.randrange(rel.arity, rel.arity + 5)
            variables = [f"v{i}" for i in range(n)]
            constraints = [
                Constraint("r", rel, tuple(rng.sample(variables, rel.arity)))
                for _ in range(rng.randrange(1, 5))
            ]
            inst = CspInstance(tuple(variables), tuple(constraints))
            h, bound = relationcsp_to_his(inst, rel)
            assert bound == rep * inst.degree()
            assert h.degree() <= bound
            assert hypergraph_is_count(h) == brute_force_count(inst)

    # (c) degree inflation with exact multipliers
    for language in ([R_IMP], [R_OR, R_NAND]):
        done = 0
        while done < 50:
            n = rng.randrange(2, 6)
            variables = [f"v{i}" for i in range(n)]
            constraints = []
            for _ in range(rng.randrange(1, 8)):
                r = language[rng.randrange(len(language))]
                constraints.append(
                    Constraint("c", r, tuple(rng.choice(variables) for _ in range(r.arity)))
                )
            inst = CspInstance(tuple(variables), tuple(constraints))
            profile = inst.degree_profile()
            if inst.degree() > 6:
                continue
            # keep the inflated instance inside the enumeration budget
            # (each split contributes the copies plus at most one ring
            # variable per copy)
            grown = n + sum(2 * c - 1 for c in profile.values() if c > 3)
            if grown > 22:
                continue
            out, m = inflate_degree(inst, language, d=3)
            assert out.degree() <= 3
            assert brute_force_count(out) == m * brute_force_count(inst)
            done += 1
    _passed("5 count preservation (hypergraph round trips, lowering, inflation)")


def test_criterion_6_polynomial_cases():
    rng = random.Random(3001)
    # degree-1 instances
    for _ in range(100):
        n = rng.randrange(2, 14)
        variables = [f"v{i}" for i in range(n)]
        pool = list(variables)
        constraints = []
        while len(pool) >= 2 and rng.random() < 0.75:
            a = pool.pop(rng.randrange(len(pool)))
            b = pool.pop(rng.randrange(len(pool)))
            constraints.append(Constraint("c", rng.choice((R_OR, R_NAND, R_EQ, R_IMP)), (a, b)))
        inst = CspInstance(tuple(variables), tuple(constraints))
        assert degree1_count(inst) == brute_force_count(inst)

    # affine instances
    for _ in range(100):
        n = rng.randrange(2, 14)
        variables = [f"v{i}" for i in range(n)]
        constraints = []
        for _ in range(rng.randrange(0, 5)):
            rel = random_affine_relation(rng, rng.choice((1, 2, 3)))
            scope = tuple(rng.choice(variables) for _ in range(rel.arity))
            constraints.append(Constraint("a", rel, scope))
        inst = CspInstance(tuple(variables), tuple(constraints))
        assert affine_count(inst) == brute_force_count(inst)

    # scale: 200 variables, 300 constraints, under a second
    n = 200
    variables = tuple(f"v{i}" for i in range(n))
    constraints = []
    for _ in range(300):
        rel = random_affine_relation(rng, 3)
        while rel.is_empty():
            rel = random_affine_relation(rng, 3)
        constraints.append(Constraint("a", rel, tuple(variables[i] for i in rng.sample(range(n), 3))))
    big = CspInstance(variables, tuple(constraints))
    start = time.time()
    affine_count(big)
    elapsed = time.time() - start
    assert elapsed < 1.0, f"affine engine took {elapsed:.2f}s"
    _passed(f"6 polynomial cases (200 oracle matches, 200-var run {elapsed * 1000:.0f}ms)")


VERDICT_MATRIX = [
    # language, expected branch at d=3, d=25, unbounded
    ([R_EQ], "FP-affine", "FP-affine", "FP-affine"),
    ([eq_k(3), R_NEQ], "FP-affine", "FP-affine", "FP-affine"),
    ([R_ZERO, R_ONE], "FP-affine", "FP-affine", "FP-affine"),
    ([R_IMP], "BIS-equivalent", "BIS-equivalent", "BIS-equivalent"),
    ([R_IMP, R_ZERO], "BIS-equivalent", "BIS-equivalent", "BIS-equivalent"),
    ([R_OR], "HIS-interval", "HIS-interval", "SAT-equivalent"),
    ([or_k(3)], "HIS-interval", "HIS-interval", "SAT-equivalent"),
    ([nand_k(3)], "HIS-interval", "HIS-interval", "SAT-equivalent"),
    ([or_k(3), R_OR], "HIS-interval", "HIS-interval", "SAT-equivalent"),
    ([R_OR, R_NAND], "SAT-equivalent", "SAT-equivalent", "SAT-equivalent"),
    ([R_OR, nand_k(3)], "SAT-equivalent", "SAT-equivalent", "SAT-equivalent"),
    ([Relation.from_tuples(3, [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])],
     "FP-affine", "FP-affine", "FP-affine"),  # parity relation
]


def test_criterion_7_verdict_matrix():
    assert len(VERDICT_MATRIX) >= 10
    for language, at3, at25, unbounded in VERDICT_MATRIX:
        v3 = classify_language_bounded(language, 3)
        v25 = classify_language_bounded(language, 25)
        vu = classify_language_degree(language, None)
        assert v3.branch == at3, (language, v3.branch)
        assert v25.branch == at25
        assert vu.branch == unbounded
        if v25.branch == "SAT-equivalent":
            assert v25.no_fpras_tag
            assert verify_gadget(v25.equality_witness).passed
        if v3.branch == "SAT-equivalent":
            assert not v3.no_fpras_tag

    or3 = classify_language_bounded([or_k(3)], 3)
    assert (or3.w, or3.k) == (3, 1)
    assert or3.lower == "#3HIS_3" and or3.upper == "#3HIS_3"
    assert or3.lower_annotation == "FPRAS" and or3.upper_annotation == "FPRAS"

    # the annotation table, cell by cell
    for w in range(2, 8):
        assert table1_annotation(w, 1) == "FP"
    assert table1_annotation(2, 2) == "FP"
    for w in range(3, 8):
        assert table1_annotation(w, 2) == "FPRAS"
    assert table1_annotation(2, 3) == "FPRAS" and table1_annotation(3, 3) == "FPRAS"
    for d in (4, 5):
        assert table1_annotation(2, d) == "PTAS"
    for d in range(6, 25):
        for w in (2, 3, 5):
            assert table1_annotation(w, d) == "MCMC-likely-fails"
    for d in (25, 26, 40):
        for w in (2, 4):
            assert table1_annotation(w, d) == "no-FPRAS-unless-NP=RP"
    for w, d in ((4, 3), (5, 3), (3, 4), (3, 5), (6, 4)):
        assert table1_annotation(w, d) == "open"
    _passed(f"7 verdict matrix ({len(VERDICT_MATRIX)} languages x 3 scopes, full table)")


def test_criterion_8_affine_preserved_by_every_step():
    from bcsp.classify import is_affine

    checked = 0
    for rel in all_relations(3):
        if not is_affine(rel):
            continue
        for i in range(1, rel.arity + 1):
            for c in (0, 1):
                assert is_affine(rel.pin(i, c))
            if rel.arity >= 2:
                assert is_affine(rel.project(i))
        perm = list(range(2, rel.arity + 1)) + [1]
        assert is_affine(rel.permute(perm))
        checked += 1

    rng = random.Random(4001)
    for _ in range(500):
        arity = rng.choice((4, 5))
        rel = random_affine_relation(rng, arity)
        i = rng.randrange(1, arity + 1)
        assert is_affine(rel.pin(i, rng.randrange(2)))
        assert is_affine(rel.project(i))
        perm = list(range(1, arity + 1))
        rng.shuffle(perm)
        assert is_affine(rel.permute(perm))
        checked += 1
    _passed(f"8 single-step affine preservation ({checked} relations)")
