"""Normalized defining formulas and GF(2) systems for Boolean relations.

A normalized conjunctive formula is the canonical syntactic certificate
of membership in one of the three tractable-shape classes: conjunctions
of pins and ORs, of pins and NANDs, or of pins and binary implications.
The sole relation none of these shapes can express with single-valued
pins is the empty one; it is carried by the dedicated falsum marker, the
one formula allowed to have no satisfying assignment.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import InvalidArgumentError
from .relation import Relation

OR = "or"
NAND = "nand"
IM = "im"
_KINDS = (OR, NAND, IM)


@dataclass(frozen=True)
class NormalizedFormula:
    """Pins plus clauses (OR/NAND kinds) or ordered implications (IM kind).

    Variables are column numbers 1..arity.  Invariants: no pinned
    variable occurs in a clause or implication, clause variable sets are
    distinct with no subset pairs, implications have distinct endpoints.
    """

    kind: str
    arity: int
    pins: tuple[tuple[int, int], ...] = ()
    clauses: tuple[tuple[int, ...], ...] = ()
    implications: tuple[tuple[int, int], ...] = ()
    falsum: bool = False

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidArgumentError(f"unknown formula kind {self.kind!r}")
        pins = self.pins
        if isinstance(pins, dict):
            pins = tuple(sorted(pins.items()))
        object.__setattr__(self, "pins", tuple(sorted(pins)))
        object.__setattr__(
            self, "clauses", tuple(sorted(tuple(sorted(c)) for c in self.clauses))
        )
        object.__setattr__(self, "implications", tuple(sorted(self.implications)))
        self._validate()

    def _validate(self):
        pinned = {v for v, _ in self.pins}
        if len(pinned) != len(self.pins):
            raise InvalidArgumentError("a variable may be pinned at most once")
        names = set(pinned)
        if self.falsum:
            if self.pins or self.clauses or self.implications:
                raise InvalidArgumentError("falsum carries no pins or clauses")
            return
        if self.kind == IM:
            if self.clauses:
                raise InvalidArgumentError("implication formulas have no clauses")
            for a, b in self.implications:
                if a == b:
                    raise InvalidArgumentError("implication endpoints must differ")
                if a in pinned or b in pinned:
                    raise InvalidArgumentError("pinned variable inside an implication")
                names.update((a, b))
        else:
            if self.implications:
                raise InvalidArgumentError("clause formulas have no implications")
            seen = set(self.clauses)
            if len(seen) != len(self.clauses):
                raise InvalidArgumentError("duplicate clause")
            for c in self.clauses:
                if len(set(c)) != len(c):
                    raise InvalidArgumentError("clause arguments must be distinct")
                if len(c) < 2:
                    raise InvalidArgumentError("clauses need at least two arguments")
                if pinned & set(c):
                    raise InvalidArgumentError("pinned variable inside a clause")
                names.update(c)
            for c in self.clauses:
                for d in self.clauses:
                    if c != d and set(c) <= set(d):
                        raise InvalidArgumentError("clause subsumes another")
        for v in names:
            if not 1 <= v <= self.arity:
                raise InvalidArgumentError(f"variable {v} outside [1, {self.arity}]")

    def width(self) -> int:
        """Largest clause size (0 for pin-only, implication, or falsum)."""
        return max((len(c) for c in self.clauses), default=0)

    def repetition(self) -> int:
        """Greatest number of pin/clause occurrences of any one variable."""
        counts = Counter(v for v, _ in self.pins)
        for c in self.clauses:
            counts.update(c)
        for a, b in self.implications:
            counts.update((a, b))
        return max(counts.values(), default=0)

    def satisfied_by(self, bits) -> bool:
        if self.falsum:
            return False
        for v, val in self.pins:
            if bits[v - 1] != val:
                return False
        if self.kind == OR:
            for c in self.clauses:
                if not any(bits[v - 1] for v in c):
                    return False
        elif self.kind == NAND:
            for c in self.clauses:
                if all(bits[v - 1] for v in c):
                    return False
        else:
            for a, b in self.implications:
                if bits[a - 1] == 1 and bits[b - 1] == 0:
                    return False
        return True

    def evaluate(self) -> Relation:
        """The relation this formula defines."""
        if self.falsum:
            return Relation.empty(self.arity)
        mask = 0
        for idx in range(1 << self.arity):
            bits = tuple((idx >> (self.arity - i)) & 1 for i in range(1, self.arity + 1))
            if self.satisfied_by(bits):
                mask |= 1 << idx
        return Relation(self.arity, mask)

    def render(self) -> str:
        if self.falsum:
            return "false"
        parts = [f"x{v}={c}" for v, c in self.pins]
        if self.kind == IM:
            parts += [f"x{a}->x{b}" for a, b in self.implications]
        else:
            op = self.kind.upper()
            parts += [f"{op}({', '.join(f'x{v}' for v in c)})" for c in self.clauses]
        return " & ".join(parts) if parts else "true"


def falsum(kind: str, arity: int) -> NormalizedFormula:
    return NormalizedFormula(kind=kind, arity=arity, falsum=True)


@dataclass(frozen=True)
class AffineSystem:
    """A row-reduced linear system over GF(2) in variables x1..xn.

    Each equation is (index set, constant): XOR of the indexed variables
    equals the constant.  Row-reduced: each equation has a pivot index
    appearing in no other equation.
    """

    n: int
    equations: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        eqs = tuple((tuple(sorted(i)), c) for i, c in self.equations)
        object.__setattr__(self, "equations", eqs)
        for idxs, c in eqs:
            if c not in (0, 1):
                raise InvalidArgumentError("equation constant must be a bit")
            for v in idxs:
                if not 1 <= v <= self.n:
                    raise InvalidArgumentError(f"variable {v} outside [1, {self.n}]")

    def satisfied_by(self, bits) -> bool:
        for idxs, c in self.equations:
            acc = 0
            for v in idxs:
                acc ^= bits[v - 1]
            if acc != c:
                return False
        return True

    def evaluate(self) -> Relation:
        mask = 0
        for idx in range(1 << self.n):
            bits = tuple((idx >> (self.n - i)) & 1 for i in range(1, self.n + 1))
            if self.satisfied_by(bits):
                mask |= 1 << idx
        return Relation(self.n, mask)

    def render(self) -> str:
        if not self.equations:
            return "true"
        out = []
        for idxs, c in self.equations:
            lhs = " + ".join(f"x{v}" for v in idxs) if idxs else "0"
            out.append(f"{lhs} = {c}")
        return " & ".join(out)
