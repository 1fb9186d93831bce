"""Complexity verdicts for constraint languages.

Maps a language (and optionally a degree bound) onto one of four
branches: exactly solvable because everything is affine, equivalent to
counting independent sets in bipartite graphs, sandwiched between two
hypergraph independent-set problems, or as hard as counting satisfying
assignments.  Every verdict carries the per-relation classification
records that justify it, and hardness claims embed machine-checked
witnesses where one exists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import RelationClass, classify_relation
from .errors import InvalidArgumentError, NoWitnessError, OutOfScopeError
from .gadgets import GadgetWitness, equality_witness, find_binary_ppp, verify_gadget
from .reductions import imconj_extract_implies
from .relation import R_IMP, PppRecipe

BRANCH_FP = "FP-affine"
BRANCH_BIS = "BIS-equivalent"
BRANCH_HIS = "HIS-interval"
BRANCH_SAT = "SAT-equivalent"
BRANCH_FP_DEGREE1 = "FP-degree-1"
BRANCH_OPEN_DEGREE2 = "open-degree-2"

FP = "FP"
FPRAS = "FPRAS"
PTAS = "PTAS"
MCMC_LIKELY_FAILS = "MCMC-likely-fails"
NO_FPRAS = "no-FPRAS-unless-NP=RP"
OPEN = "open"

ANNOTATIONS = (FP, FPRAS, PTAS, MCMC_LIKELY_FAILS, NO_FPRAS, OPEN)


def table1_annotation(w: int, d: int) -> str:
    """Recorded approximability status of counting independent sets in
    width-w hypergraphs of degree at most d; cells with no known result
    report open."""
    if w < 2:
        raise InvalidArgumentError("width below 2 is not a hypergraph regime")
    if d < 1:
        raise InvalidArgumentError("degree bound must be positive")
    if d == 1:
        return FP
    if d == 2:
        return FP if w == 2 else FPRAS
    if d == 3 and w in (2, 3):
        return FPRAS
    if d in (4, 5) and w == 2:
        return PTAS
    if 6 <= d <= 24:
        return MCMC_LIKELY_FAILS
    if d >= 25:
        return NO_FPRAS
    return OPEN


@dataclass(frozen=True)
class LanguageVerdict:
    scope: str  # "unbounded" or "degree-<d>"
    branch: str
    relation_classes: tuple[RelationClass, ...]
    d: int | None = None
    w: int | None = None
    k: int | None = None
    lower: str | None = None
    upper: str | None = None
    lower_annotation: str | None = None
    upper_annotation: str | None = None
    equality_witness: GadgetWitness | None = None
    implies_source: int | None = None
    implies_recipe: PppRecipe | None = None
    no_fpras_tag: bool = False
    note: str | None = None


def _classes(language, k: int, d: int) -> tuple[RelationClass, ...]:
    return tuple(classify_relation(rel, k=k, d=d) for rel in language)


def _implication_evidence(language, classes):
    """(index, pin-only or free recipe) for some non-affine implication
    relation; the pin-only form is preferred when it exists."""
    for i, rc in enumerate(classes):
        if rc.imconj is not None and not rc.affine:
            try:
                return i, imconj_extract_implies(language[i])
            except NoWitnessError:
                recipe = find_binary_ppp(language[i], R_IMP)
                if recipe is not None:
                    return i, recipe
    return None, None


def classify_language(language, names=None) -> LanguageVerdict:
    """Verdict with no degree bound: affine means exactly solvable,
    implication-definable means bipartite-independent-set equivalent,
    anything else is equivalent to counting satisfying assignments."""
    language = tuple(language)
    if not language:
        raise InvalidArgumentError("language must be non-empty")
    classes = _classes(language, k=3, d=3)
    if all(rc.affine for rc in classes):
        return LanguageVerdict("unbounded", BRANCH_FP, classes)
    if all(rc.imconj is not None for rc in classes):
        idx, recipe = _implication_evidence(language, classes)
        return LanguageVerdict("unbounded", BRANCH_BIS, classes,
                               implies_source=idx, implies_recipe=recipe)
    try:
        witness = equality_witness(language, k=3, d=3, names=names)
    except NoWitnessError:
        witness = None
    return LanguageVerdict("unbounded", BRANCH_SAT, classes, equality_witness=witness)


def classify_language_bounded(language, d: int, names=None) -> LanguageVerdict:
    """Verdict for instances of degree at most d, for d >= 3.

    Applies the first matching branch: all affine; all implication
    definable (with the implication recipe attached); all pin-and-OR or
    all pin-and-NAND, yielding the hypergraph interval between the
    language width at degree d and at degree k*d; otherwise equivalence
    with counting satisfying assignments backed by a verified equality
    witness, carrying the no-FPRAS tag from degree 25 up.
    """
    language = tuple(language)
    if not language:
        raise InvalidArgumentError("language must be non-empty")
    if d < 3:
        raise OutOfScopeError(
            "bounded verdicts start at degree 3; degrees 1 and 2 have dedicated paths"
        )
    classes = _classes(language, k=3, d=3)
    scope = f"degree-{d}"
    if all(rc.affine for rc in classes):
        return LanguageVerdict(scope, BRANCH_FP, classes, d=d)
    if all(rc.imconj is not None for rc in classes):
        idx, recipe = _implication_evidence(language, classes)
        return LanguageVerdict(scope, BRANCH_BIS, classes, d=d,
                               implies_source=idx, implies_recipe=recipe)
    if all(rc.orconj is not None for rc in classes) or all(
        rc.nandconj is not None for rc in classes
    ):
        w = max(rc.width for rc in classes)
        k = max(rc.repetition for rc in classes)
        return LanguageVerdict(
            scope, BRANCH_HIS, classes, d=d, w=w, k=k,
            lower=f"#{w}HIS_{d}", upper=f"#{w}HIS_{k * d}",
            lower_annotation=table1_annotation(w, d),
            upper_annotation=table1_annotation(w, k * d),
        )
    witness = equality_witness(language, k=3, d=3, names=names)
    report = verify_gadget(witness)
    if not report.passed:
        raise AssertionError("language witness failed verification")
    return LanguageVerdict(
        scope, BRANCH_SAT, classes, d=d, equality_witness=witness,
        no_fpras_tag=d >= 25,
    )


def classify_language_degree(language, d: int | None = None, names=None) -> LanguageVerdict:
    """Dispatcher covering every degree: None means unbounded, degree 1
    is exactly solvable outright, degree 2 is reported as open, and
    degrees 3 and up go through the bounded classifier."""
    if d is None:
        return classify_language(language, names=names)
    if d < 1:
        raise InvalidArgumentError("degree bound must be positive")
    language = tuple(language)
    if d == 1:
        classes = _classes(language, k=3, d=3)
        return LanguageVerdict(
            "degree-1", BRANCH_FP_DEGREE1, classes, d=1,
            note="independent constraints: the count is a product of per-constraint counts",
        )
    if d == 2:
        classes = _classes(language, k=3, d=3)
        return LanguageVerdict(
            "degree-2", BRANCH_OPEN_DEGREE2, classes, d=2,
            note="the degree-2 regime is an open problem; no general classification applies",
        )
    return classify_language_bounded(language, d, names=names)
