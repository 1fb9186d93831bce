import random

import pytest

from bcsp.errors import InvalidArgumentError, OutOfScopeError
from bcsp.gadgets import verify_gadget
from bcsp.relation import R_EQ, R_IMP, R_NAND, R_NEQ, R_ONE, R_OR, R_ZERO, Relation, eq_k, or_k
from bcsp.verdict import (
    BRANCH_BIS,
    BRANCH_FP,
    BRANCH_FP_DEGREE1,
    BRANCH_HIS,
    BRANCH_OPEN_DEGREE2,
    BRANCH_SAT,
    classify_language,
    classify_language_bounded,
    classify_language_degree,
    table1_annotation,
)


def test_unbounded_branches():
    assert classify_language([R_EQ, R_NEQ]).branch == BRANCH_FP
    assert classify_language([R_IMP]).branch == BRANCH_BIS
    assert classify_language([R_OR]).branch == BRANCH_SAT


def test_unbounded_sat_witness_is_optional():
    # a pin-and-OR language is as hard as counting satisfying
    # assignments without a degree bound, yet cannot simulate equality
    v = classify_language([R_OR])
    assert v.equality_witness is None
    w = classify_language([R_OR, R_NAND])
    assert w.equality_witness is not None


def test_bounded_bis_branch_attaches_recipe():
    v = classify_language_bounded([R_IMP], 3)
    assert v.branch == BRANCH_BIS
    assert v.implies_recipe is not None
    assert v.implies_recipe.apply(R_IMP) == R_IMP


def test_bounded_bis_fallback_recipe_for_cycle_tied_relation():
    rel = Relation.from_tuples(3, [(0, 0, 0), (0, 0, 1), (1, 1, 1)])
    v = classify_language_bounded([rel], 3)
    assert v.branch == BRANCH_BIS
    assert v.implies_recipe is not None
    assert v.implies_recipe.apply(rel) == R_IMP


def test_bounded_his_branch_or3():
    v = classify_language_bounded([or_k(3)], 3)
    assert v.branch == BRANCH_HIS
    assert (v.w, v.k) == (3, 1)
    assert v.lower == "#3HIS_3" and v.upper == "#3HIS_3"
    assert v.lower_annotation == "FPRAS" and v.upper_annotation == "FPRAS"


def test_bounded_his_branch_mixed_widths():
    v = classify_language_bounded([or_k(3), R_OR], 4)
    assert v.branch == BRANCH_HIS
    assert v.w == 3
    assert v.lower == "#3HIS_4" and v.upper == "#3HIS_4"
    assert v.lower_annotation == "open"


def test_bounded_sat_branch_with_tag():
    v = classify_language_bounded([R_OR, R_NAND], 25)
    assert v.branch == BRANCH_SAT
    assert v.no_fpras_tag
    assert v.equality_witness is not None
    assert verify_gadget(v.equality_witness).passed
    low = classify_language_bounded([R_OR, R_NAND], 3)
    assert low.branch == BRANCH_SAT and not low.no_fpras_tag


def test_bounded_rejects_low_degree():
    with pytest.raises(OutOfScopeError):
        classify_language_bounded([R_IMP], 2)


def test_degree_dispatcher():
    assert classify_language_degree([R_IMP], None).branch == BRANCH_BIS
    assert classify_language_degree([R_IMP], 1).branch == BRANCH_FP_DEGREE1
    v = classify_language_degree([R_IMP], 2)
    assert v.branch == BRANCH_OPEN_DEGREE2 and v.note
    assert classify_language_degree([R_IMP], 3).branch == BRANCH_BIS
    with pytest.raises(InvalidArgumentError):
        classify_language_degree([R_IMP], 0)


TABLE_CELLS = [
    (2, 1, "FP"), (3, 1, "FP"), (5, 1, "FP"),
    (2, 2, "FP"),
    (3, 2, "FPRAS"), (4, 2, "FPRAS"),
    (2, 3, "FPRAS"), (3, 3, "FPRAS"),
    (2, 4, "PTAS"), (2, 5, "PTAS"),
    (2, 6, "MCMC-likely-fails"), (4, 6, "MCMC-likely-fails"),
    (2, 24, "MCMC-likely-fails"), (3, 15, "MCMC-likely-fails"),
    (2, 25, "no-FPRAS-unless-NP=RP"), (2, 30, "no-FPRAS-unless-NP=RP"),
    (7, 40, "no-FPRAS-unless-NP=RP"),
    (4, 3, "open"), (3, 4, "open"), (3, 5, "open"), (5, 4, "open"),
]


@pytest.mark.parametrize("w,d,expected", TABLE_CELLS)
def test_table1_cells(w, d, expected):
    assert table1_annotation(w, d) == expected


def test_table1_rejects_degenerate_parameters():
    with pytest.raises(InvalidArgumentError):
        table1_annotation(1, 3)
    with pytest.raises(InvalidArgumentError):
        table1_annotation(2, 0)


def test_pin_closure_never_changes_the_branch():
    rng = random.Random(271)
    languages = [
        [R_EQ], [R_IMP], [R_OR], [or_k(3)], [R_OR, R_NAND], [eq_k(3), R_NEQ],
    ]
    for _ in range(10):
        arity = rng.choice((2, 3))
        languages.append([Relation(arity, rng.randrange(1, 1 << (1 << arity)))])
    for lang in languages:
        for d in (3, 25, None):
            base = classify_language_degree(lang, d)
            pinned = classify_language_degree(list(lang) + [R_ZERO, R_ONE], d)
            assert base.branch == pinned.branch


def test_complement_duality_of_verdicts():
    rng = random.Random(283)
    for _ in range(20):
        arity = rng.choice((2, 3))
        lang = [Relation(arity, rng.randrange(1, 1 << (1 << arity)))
                for _ in range(rng.choice((1, 2)))]
        dual = [r.complement() for r in lang]
        for d in (3, 25):
            a = classify_language_bounded(lang, d)
            b = classify_language_bounded(dual, d)
            assert a.branch == b.branch
            if a.branch == BRANCH_HIS:
                assert (a.w, a.k) == (b.w, b.k)


def test_consistency_between_bounded_and_unbounded():
    rng = random.Random(307)
    for _ in range(30):
        arity = rng.choice((2, 3))
        lang = [Relation(arity, rng.randrange(1, 1 << (1 << arity)))]
        free = classify_language(lang)
        tight = classify_language_bounded(lang, 25)
        if free.branch == BRANCH_FP:
            assert tight.branch == BRANCH_FP
        elif free.branch == BRANCH_BIS:
            assert tight.branch == BRANCH_BIS
        else:
            assert tight.branch in (BRANCH_HIS, BRANCH_SAT)
            if tight.branch == BRANCH_SAT:
                assert tight.no_fpras_tag


def test_singleton_branch_totality_arity3():
    for mask in range(256):
        lang = [Relation(3, mask)]
        for d in (3, 25):
            v = classify_language_bounded(lang, d)
            assert v.branch in (BRANCH_FP, BRANCH_BIS, BRANCH_HIS, BRANCH_SAT)
            if v.equality_witness is not None:
                assert verify_gadget(v.equality_witness).passed
            if v.branch == BRANCH_BIS:
                assert v.implies_recipe is not None
                assert v.implies_recipe.apply(lang[0]) == R_IMP
