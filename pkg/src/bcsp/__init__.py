"""bcsp: exact classification, gadget synthesis, counting and reductions
for Boolean constraint languages."""

from .classify import (
    RelationClass,
    affine_system,
    classify_relation,
    is_affine,
    is_pseudo_antitone,
    is_pseudo_monotone,
    normalize_imconj,
    normalize_nandconj,
    normalize_orconj,
)
from .counting import (
    affine_count,
    brute_force_count,
    count_partitioned,
    degree1_count,
    hypergraph_is_count,
)
from .errors import (
    BcspError,
    InvalidArgumentError,
    NotInClassError,
    NoWitnessError,
    OutOfScopeError,
    ParseError,
    ResourceLimitError,
    UnsupportedError,
)
from .formula import AffineSystem, NormalizedFormula
from .gadgets import (
    ExtensionCounts,
    GadgetWitness,
    VerificationReport,
    equality_witness,
    extension_count,
    find_binary_ppp,
    simulate_eq_from_binary,
    simulate_eq_or_nand,
    simulate_eq_valid,
    verify_gadget,
    or_nand_ring,
)
from .instance import Constraint, CspInstance, Hypergraph
from .reductions import (
    his_to_orcsp,
    his_to_relationcsp,
    imconj_extract_implies,
    inflate_degree,
    orcsp_to_his,
    relationcsp_to_his,
)
from .relation import (
    R_EQ,
    R_IMP,
    R_NAND,
    R_NEQ,
    R_OR,
    R_ONE,
    R_ZERO,
    PppRecipe,
    Relation,
    compose,
    compose_recipes,
    eq_k,
    identity_recipe,
    nand_k,
    or_k,
)
from .verdict import (
    LanguageVerdict,
    classify_language,
    classify_language_bounded,
    classify_language_degree,
    table1_annotation,
)

__version__ = "0.1.0"
