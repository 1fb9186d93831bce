"""Exact Boolean relations and the permute / pin / project algebra.

A relation of arity r is a subset of {0,1}^r stored as a characteristic
bitmask over all 2**r tuples.  Columns are numbered 1..r and column 1 is
the most significant bit of a tuple's index, so splitting a relation on
its first column is a contiguous split of the bitmask.

Relations and recipes are immutable values; every operation returns a
new object and is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidArgumentError, UnsupportedError
from .limits import arity_cap


def tuple_index(bits) -> int:
    """Index of a tuple (first element = most significant bit)."""
    idx = 0
    for b in bits:
        idx = (idx << 1) | (b & 1)
    return idx


def index_tuple(idx: int, arity: int) -> tuple[int, ...]:
    """Inverse of tuple_index."""
    return tuple((idx >> (arity - i)) & 1 for i in range(1, arity + 1))


def _iter_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Relation:
    """An arity-r Boolean relation as a characteristic bitmask."""

    arity: int
    mask: int

    def __post_init__(self):
        cap = arity_cap()
        if not 1 <= self.arity <= cap:
            raise InvalidArgumentError(
                f"arity {self.arity} outside [1, {cap}]"
            )
        if not 0 <= self.mask < (1 << (1 << self.arity)):
            raise InvalidArgumentError("membership mask wider than 2**arity")

    @classmethod
    def from_tuples(cls, arity: int, tuples) -> "Relation":
        mask = 0
        for t in tuples:
            if len(t) != arity:
                raise InvalidArgumentError(f"tuple {t} is not arity {arity}")
            mask |= 1 << tuple_index(t)
        return cls(arity, mask)

    @classmethod
    def empty(cls, arity: int) -> "Relation":
        return cls(arity, 0)

    @classmethod
    def complete(cls, arity: int) -> "Relation":
        return cls(arity, (1 << (1 << arity)) - 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, bits) -> bool:
        if len(bits) != self.arity:
            return False
        return bool((self.mask >> tuple_index(bits)) & 1)

    def tuples(self):
        """Members in ascending index order."""
        for idx in _iter_indices(self.mask):
            yield index_tuple(idx, self.arity)

    def indices(self):
        return _iter_indices(self.mask)

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_complete(self) -> bool:
        return self.mask == (1 << (1 << self.arity)) - 1

    def is_c_valid(self, c: int) -> bool:
        """True when the constant tuple c^arity is a member."""
        _check_bit(c)
        idx = 0 if c == 0 else (1 << self.arity) - 1
        return bool((self.mask >> idx) & 1)

    def column_is_constant(self, i: int) -> int | None:
        """The constant value of column i, or None if it varies (or R = {})."""
        self._check_column(i)
        if self.mask == 0:
            return None
        shift = self.arity - i
        seen = {(idx >> shift) & 1 for idx in _iter_indices(self.mask)}
        if len(seen) == 1:
            return seen.pop()
        return None

    def constant_columns(self) -> dict[int, int]:
        """Columns that take a single value over all members (empty R: none)."""
        out = {}
        for i in range(1, self.arity + 1):
            v = self.column_is_constant(i)
            if v is not None:
                out[i] = v
        return out

    # --- the three ppp primitives -------------------------------------

    def permute(self, perm) -> "Relation":
        """Rearrange columns: source column i lands at position perm[i-1].

        A member of the result is any tuple whose pullback through perm
        is a member of self.
        """
        perm = tuple(perm)
        if sorted(perm) != list(range(1, self.arity + 1)):
            raise InvalidArgumentError(f"{perm} is not a bijection on [1, {self.arity}]")
        shifts = [(self.arity - i, self.arity - perm[i - 1]) for i in range(1, self.arity + 1)]
        mask = 0
        for idx in _iter_indices(self.mask):
            out = 0
            for src, dst in shifts:
                out |= ((idx >> src) & 1) << dst
            mask |= 1 << out
        return Relation(self.arity, mask)

    def pin(self, i: int, c: int) -> "Relation":
        """Sub-relation of members whose column i equals c (column kept)."""
        self._check_column(i)
        _check_bit(c)
        shift = self.arity - i
        mask = 0
        for idx in _iter_indices(self.mask):
            if (idx >> shift) & 1 == c:
                mask |= 1 << idx
        return Relation(self.arity, mask)

    def project(self, i: int) -> "Relation":
        """Delete column i, quantifying it existentially."""
        if self.arity == 1:
            raise UnsupportedError("projecting the last column would leave arity 0")
        self._check_column(i)
        shift = self.arity - i
        low_mask = (1 << shift) - 1
        mask = 0
        for idx in _iter_indices(self.mask):
            mask |= 1 << (((idx >> (shift + 1)) << shift) | (idx & low_mask))
        return Relation(self.arity - 1, mask)

    # --- derived operations -------------------------------------------

    def complement(self) -> "Relation":
        """Bit-wise complement: flip every coordinate of every member."""
        full = (1 << self.arity) - 1
        mask = 0
        for idx in _iter_indices(self.mask):
            mask |= 1 << (full - idx)
        return Relation(self.arity, mask)

    def decompose(self) -> tuple["Relation", "Relation"]:
        """Split on the first column: (rows under 0, rows under 1)."""
        if self.arity == 1:
            raise UnsupportedError("cannot decompose an arity-1 relation")
        half = 1 << (self.arity - 1)
        low = self.mask & ((1 << half) - 1)
        return Relation(self.arity - 1, low), Relation(self.arity - 1, self.mask >> half)

    def restrict_by_tuple(self, bits, c: int) -> "Relation":
        """Pin every column where the member tuple equals c, then drop them.

        The result is always (1-c)-valid; it is c-valid whenever self is.
        """
        _check_bit(c)
        bits = tuple(bits)
        if bits not in self:
            raise InvalidArgumentError(f"{bits} is not a member")
        if len(set(bits)) < 2:
            raise InvalidArgumentError("tuple must contain both a zero and a one")
        cols = [i for i in range(1, self.arity + 1) if bits[i - 1] == c]
        out = self
        for i in cols:
            out = out.pin(i, c)
        for i in reversed(cols):
            out = out.project(i)
        return out

    def _check_column(self, i: int) -> None:
        if not 1 <= i <= self.arity:
            raise InvalidArgumentError(f"column {i} outside [1, {self.arity}]")

    def __str__(self) -> str:
        inner = ",".join("".join(map(str, t)) for t in self.tuples())
        return "{" + inner + "}"

    def __repr__(self) -> str:
        return f"Relation({self.arity}, {self})"


def _check_bit(c: int) -> None:
    if c not in (0, 1):
        raise InvalidArgumentError(f"bit value must be 0 or 1, got {c!r}")


def compose(r0: Relation, r1: Relation) -> Relation:
    """Inverse of decompose: prefix r0 with a 0 column and r1 with a 1."""
    if r0.arity != r1.arity:
        raise InvalidArgumentError("decomposition halves must share an arity")
    half = 1 << r0.arity
    return Relation(r0.arity + 1, r0.mask | (r1.mask << half))


# --- ppp recipes ------------------------------------------------------


@dataclass(frozen=True)
class PppRecipe:
    """Permute, then pin, then project: a witness that one relation is
    definable inside another.

    perm maps each source column to its post-permutation position (None
    means identity).  pins assign constants to post-permutation columns.
    kept lists, in output order, the post-permutation columns that
    survive; every other column is projected away (pinned columns become
    constant first, the rest are quantified existentially).
    """

    kept: tuple[int, ...]
    pins: tuple[tuple[int, int], ...] = ()
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "kept", tuple(self.kept))
        pins = self.pins
        if isinstance(pins, dict):
            pins = tuple(sorted(pins.items()))
        else:
            pins = tuple(sorted(tuple(p) for p in pins))
        object.__setattr__(self, "pins", pins)
        if self.perm is not None:
            object.__setattr__(self, "perm", tuple(self.perm))
        if len(set(self.kept)) != len(self.kept) or not self.kept:
            raise InvalidArgumentError("kept columns must be distinct and non-empty")
        pinned = {c for c, _ in self.pins}
        if len(pinned) != len(self.pins):
            raise InvalidArgumentError("a column may be pinned at most once")
        if pinned & set(self.kept):
            raise InvalidArgumentError("pinned and kept columns must be disjoint")
        for _, v in self.pins:
            _check_bit(v)

    @property
    def pin_map(self) -> dict[int, int]:
        return dict(self.pins)

    def out_arity(self) -> int:
        return len(self.kept)

    def validate_for(self, arity: int) -> None:
        if self.perm is not None and sorted(self.perm) != list(range(1, arity + 1)):
            raise InvalidArgumentError(f"permutation does not fit arity {arity}")
        for c in list(self.kept) + [c for c, _ in self.pins]:
            if not 1 <= c <= arity:
                raise InvalidArgumentError(f"column {c} outside [1, {arity}]")

    def free_columns(self, arity: int) -> tuple[int, ...]:
        """Post-permutation columns that are neither pinned nor kept."""
        used = set(self.kept) | {c for c, _ in self.pins}
        return tuple(c for c in range(1, arity + 1) if c not in used)

    def normalized(self, arity: int) -> "PppRecipe":
        """An equivalent recipe with the identity permutation.

        Pins and kept entries are rewritten to name source columns
        directly; the ordered kept list absorbs the rearrangement.
        """
        if self.perm is None:
            return self
        self.validate_for(arity)
        inv = {self.perm[i - 1]: i for i in range(1, arity + 1)}
        return PppRecipe(
            kept=tuple(inv[c] for c in self.kept),
            pins=tuple((inv[c], v) for c, v in self.pins),
        )

    def apply(self, rel: Relation) -> Relation:
        self.validate_for(rel.arity)
        out = rel if self.perm is None else rel.permute(self.perm)
        for col, val in self.pins:
            out = out.pin(col, val)
        keep = set(self.kept)
        for col in range(rel.arity, 0, -1):
            if col not in keep:
                out = out.project(col)
        # projection leaves kept columns in ascending order; realize the
        # requested output order with a final permutation
        order = sorted(self.kept)
        if order != list(self.kept):
            want = {col: pos + 1 for pos, col in enumerate(self.kept)}
            out = out.permute(tuple(want[col] for col in order))
        return out


def identity_recipe(arity: int) -> PppRecipe:
    return PppRecipe(kept=tuple(range(1, arity + 1)))


def compose_recipes(first: PppRecipe, second: PppRecipe, arity: int) -> PppRecipe:
    """A single recipe equivalent to applying first, then second.

    arity is the arity of the relation the composite will be applied to.
    The result always uses the identity permutation: the ordered kept
    list captures any required output rearrangement.
    """
    first.validate_for(arity)
    second.validate_for(first.out_arity())

    def post_perm(recipe: PppRecipe, col: int) -> int:
        return col if recipe.perm is None else recipe.perm[col - 1]

    pins: dict[int, int] = {}
    slot: dict[int, int] = {}  # output position (1-based) -> source column
    first_pins = first.pin_map
    second_pins = second.pin_map
    kept_pos = {col: i + 1 for i, col in enumerate(first.kept)}
    for col in range(1, arity + 1):
        p1 = post_perm(first, col)
        if p1 in first_pins:
            pins[col] = first_pins[p1]
            continue
        if p1 not in kept_pos:
            continue  # existentially projected by the first recipe
        p2 = post_perm(second, kept_pos[p1])
        if p2 in second_pins:
            pins[col] = second_pins[p2]
        elif p2 in second.kept:
            slot[second.kept.index(p2) + 1] = col
    kept = tuple(slot[i] for i in range(1, len(slot) + 1))
    return PppRecipe(kept=kept, pins=tuple(sorted(pins.items())))


# --- named relations --------------------------------------------------


def eq_k(k: int) -> Relation:
    """k-ary equality {0^k, 1^k}."""
    if k < 1:
        raise InvalidArgumentError("equality needs arity >= 1")
    return Relation(k, 1 | (1 << ((1 << k) - 1)))


def or_k(k: int) -> Relation:
    """k-ary OR: every tuple except the all-zero one."""
    if k < 1:
        raise InvalidArgumentError("OR needs arity >= 1")
    return Relation(k, ((1 << (1 << k)) - 1) & ~1)


def nand_k(k: int) -> Relation:
    """k-ary NAND: every tuple except the all-one one."""
    if k < 1:
        raise InvalidArgumentError("NAND needs arity >= 1")
    full = (1 << (1 << k)) - 1
    return Relation(k, full & ~(1 << ((1 << k) - 1)))


R_EQ = eq_k(2)
R_NEQ = Relation.from_tuples(2, [(0, 1), (1, 0)])
R_OR = or_k(2)
R_NAND = nand_k(2)
R_IMP = Relation.from_tuples(2, [(0, 0), (0, 1), (1, 1)])
R_ZERO = Relation.from_tuples(1, [(0,)])
R_ONE = Relation.from_tuples(1, [(1,)])
