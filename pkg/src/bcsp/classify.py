"""Membership tests and canonical formulas for the relation classes.

Four shapes matter: affine relations (GF(2) solution sets), the
pin-and-OR conjunctions, their pin-and-NAND duals, and pin-and-implication
conjunctions.  Every relation that fits none of the first three shapes
can simulate equality; classify_relation closes that gap by delegating
to the gadget synthesizer for a machine-checked witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import TYPE_CHECKING

from .errors import NotInClassError
from .formula import IM, NAND, OR, AffineSystem, NormalizedFormula, falsum
from .relation import Relation

if TYPE_CHECKING:  # pragma: no cover
    from .gadgets import GadgetWitness


# --- affine -----------------------------------------------------------


def _span_rank(vectors) -> int:
    """GF(2) rank of a list of bitmask vectors."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def is_affine(rel: Relation) -> bool:
    """True when the members form a coset of a GF(2) subspace.

    Equivalent to closure under coordinatewise a ^ b ^ c over members;
    the empty relation counts as affine (defined by 0 = 1).
    """
    if rel.is_empty():
        return True
    idxs = list(rel.indices())
    t = idxs[0]
    rank = _span_rank(idx ^ t for idx in idxs)
    return len(idxs) == 1 << rank


def _reduced_basis(vectors) -> list[int]:
    """Fully reduced GF(2) basis, each pivot cleared from every other row."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    for i, b in enumerate(basis):
        pivot = 1 << (b.bit_length() - 1)
        for j, other in enumerate(basis):
            if i != j and other & pivot:
                basis[j] = other ^ b
    basis.sort(reverse=True)
    return basis


def affine_system(rel: Relation) -> AffineSystem:
    """A row-reduced GF(2) system whose solution set is exactly rel."""
    r = rel.arity
    if rel.is_empty():
        return AffineSystem(r, (((), 1),))
    if not is_affine(rel):
        raise NotInClassError("relation is not affine")
    idxs = list(rel.indices())
    t = idxs[0]
    basis = _reduced_basis(idx ^ t for idx in idxs)
    # parity checks: the nullspace of the basis matrix
    pivots = [b.bit_length() - 1 for b in basis]
    pivot_set = set(pivots)
    checks = []
    for f in range(r - 1, -1, -1):
        if f in pivot_set:
            continue
        u = 1 << f
        for b, p in zip(basis, pivots):
            if (b >> f) & 1:
                u |= 1 << p
        checks.append(u)
    # augmented row reduction on (check | rhs), pivoting on the lowest
    # variable index for a deterministic canonical form
    rows = [(u << 1) | ((u & t).bit_count() & 1) for u in checks]
    reduced = _reduced_basis(rows)
    equations = []
    for row in reduced:
        rhs = row & 1
        u = row >> 1
        cols = tuple(sorted(r - b for b in _bit_positions(u)))
        equations.append((cols, rhs))
    equations.sort()
    return AffineSystem(r, tuple(equations))


def _bit_positions(v: int):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


# --- monotonicity -----------------------------------------------------


def is_pseudo_monotone(rel: Relation) -> bool:
    """True when the restriction to non-constant columns is upward closed."""
    return _pseudo_closed(rel, raise_bits=True)


def is_pseudo_antitone(rel: Relation) -> bool:
    """True when the restriction to non-constant columns is downward closed."""
    return _pseudo_closed(rel, raise_bits=False)


def _pseudo_closed(rel: Relation, raise_bits: bool) -> bool:
    if rel.is_empty():
        return True
    varying = [rel.arity - i for i in range(1, rel.arity + 1)
               if rel.column_is_constant(i) is None]
    for idx in rel.indices():
        for pos in varying:
            bit = (idx >> pos) & 1
            if raise_bits and bit == 0:
                if not (rel.mask >> (idx | (1 << pos))) & 1:
                    return False
            elif not raise_bits and bit == 1:
                if not (rel.mask >> (idx & ~(1 << pos))) & 1:
                    return False
    return True


# --- OR-conj / NAND-conj normal forms ---------------------------------


def _minimal_clauses(rel: Relation, unpinned: list[int], kind: str) -> list[tuple[int, ...]]:
    """Inclusion-minimal clauses over unpinned columns satisfied by every member.

    For the OR kind a clause needs a one inside every member; for NAND a
    zero.  Conjoining all of them is the maximal formula, and keeping the
    minimal ones is exactly the subsumption step of normalization.
    """
    col_bit = {c: rel.arity - c for c in unpinned}
    members = list(rel.indices())
    minimal: list[tuple[int, ...]] = []
    minimal_sets: list[frozenset[int]] = []
    for size in range(2, len(unpinned) + 1):
        for combo in combinations(unpinned, size):
            cset = frozenset(combo)
            if any(m <= cset for m in minimal_sets):
                continue
            smask = 0
            for c in combo:
                smask |= 1 << col_bit[c]
            if kind == OR:
                ok = all(idx & smask for idx in members)
            else:
                ok = all(idx & smask != smask for idx in members)
            if ok:
                minimal.append(combo)
                minimal_sets.append(cset)
    return minimal


def _normalize_clausal(rel: Relation, kind: str) -> NormalizedFormula:
    if rel.is_empty():
        return falsum(kind, rel.arity)
    pins = rel.constant_columns()
    unpinned = [c for c in range(1, rel.arity + 1) if c not in pins]
    clauses = _minimal_clauses(rel, unpinned, kind)
    candidate = NormalizedFormula(
        kind=kind, arity=rel.arity, pins=tuple(sorted(pins.items())),
        clauses=tuple(clauses),
    )
    if candidate.evaluate() != rel:
        shape = "pins and ORs" if kind == OR else "pins and NANDs"
        raise NotInClassError(f"relation is not a conjunction of {shape}")
    return candidate


def normalize_orconj(rel: Relation) -> NormalizedFormula:
    """The unique normalized pin-and-OR formula, or NotInClassError."""
    return _normalize_clausal(rel, OR)


def normalize_nandconj(rel: Relation) -> NormalizedFormula:
    """The unique normalized pin-and-NAND formula, or NotInClassError."""
    return _normalize_clausal(rel, NAND)


def normalize_imconj(rel: Relation) -> NormalizedFormula:
    """The maximal normalized pin-and-implication formula defining rel.

    Implication formulas are not unique, so the canonical output conjoins
    every pin and every implication satisfied by all members.
    """
    if rel.is_empty():
        return falsum(IM, rel.arity)
    pins = rel.constant_columns()
    unpinned = [c for c in range(1, rel.arity + 1) if c not in pins]
    members = list(rel.indices())
    implications = []
    for a in unpinned:
        abit = rel.arity - a
        for b in unpinned:
            if a == b:
                continue
            bbit = rel.arity - b
            if all(not ((idx >> abit) & 1 and not (idx >> bbit) & 1) for idx in members):
                implications.append((a, b))
    candidate = NormalizedFormula(
        kind=IM, arity=rel.arity, pins=tuple(sorted(pins.items())),
        implications=tuple(implications),
    )
    if candidate.evaluate() != rel:
        raise NotInClassError("relation is not a conjunction of pins and implications")
    return candidate


# --- full classification ----------------------------------------------


@dataclass(frozen=True)
class RelationClass:
    """Everything the classifier knows about one relation."""

    relation: Relation
    affine: bool
    orconj: NormalizedFormula | None
    nandconj: NormalizedFormula | None
    imconj: NormalizedFormula | None
    equality_witness: "GadgetWitness | None"
    width: int | None
    repetition: int | None

    def simulates_equality(self) -> bool:
        return self.equality_witness is not None


def classify_relation(rel: Relation, k: int = 3, d: int = 3,
                      synthesize: bool = True) -> RelationClass:
    """Decide every class membership and, when the relation is neither a
    pin-and-OR nor a pin-and-NAND conjunction, attach a verified
    equality-simulation witness for Eq_k (such a witness always exists).
    """

    def attempt(fn):
        try:
            return fn(rel)
        except NotInClassError:
            return None

    orconj = attempt(normalize_orconj)
    nandconj = attempt(normalize_nandconj)
    imconj = attempt(normalize_imconj)
    stored = orconj if orconj is not None else nandconj
    witness = None
    if stored is None and synthesize:
        from .gadgets import equality_witness, verify_gadget

        witness = equality_witness([rel], k=k, d=d)
        report = verify_gadget(witness)
        if not report.passed:
            raise AssertionError("synthesized witness failed verification")
    return RelationClass(
        relation=rel,
        affine=is_affine(rel),
        orconj=orconj,
        nandconj=nandconj,
        imconj=imconj,
        equality_witness=witness,
        width=stored.width() if stored is not None else None,
        repetition=stored.repetition() if stored is not None else None,
    )
