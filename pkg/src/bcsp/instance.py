"""Constraint instances and hypergraphs.

Scopes may mix variable names with the constant bits 0 and 1; constants
desugar to fresh pinned variables, and each variable introduced that way
occurs exactly twice, so desugaring never raises the degree of an
instance whose degree is already at least two.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import InvalidArgumentError
from .relation import R_ONE, R_ZERO, Relation


@dataclass(frozen=True)
class Constraint:
    name: str
    relation: Relation
    scope: tuple

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))
        if len(self.scope) != self.relation.arity:
            raise InvalidArgumentError(
                f"scope of {self.name} has {len(self.scope)} entries, "
                f"relation arity is {self.relation.arity}"
            )
        for entry in self.scope:
            if not isinstance(entry, str) and entry not in (0, 1):
                raise InvalidArgumentError(f"scope entry {entry!r} is neither a variable nor a bit")

    def variables(self):
        return [e for e in self.scope if isinstance(e, str)]


@dataclass(frozen=True)
class CspInstance:
    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if len(set(self.variables)) != len(self.variables):
            raise InvalidArgumentError("duplicate variable name")
        known = set(self.variables)
        for c in self.constraints:
            for v in c.variables():
                if v not in known:
                    raise InvalidArgumentError(f"constraint {c.name} uses undeclared variable {v}")

    def has_constants(self) -> bool:
        return any(not isinstance(e, str) for c in self.constraints for e in c.scope)

    def desugar(self) -> "CspInstance":
        """Replace scope constants by fresh variables pinned to the value."""
        if not self.has_constants():
            return self
        used = set(self.variables)
        variables = list(self.variables)
        constraints = []
        counter = 0
        for c in self.constraints:
            scope = []
            for entry in c.scope:
                if isinstance(entry, str):
                    scope.append(entry)
                    continue
                while f"_c{counter}" in used:
                    counter += 1
                fresh = f"_c{counter}"
                counter += 1
                used.add(fresh)
                variables.append(fresh)
                scope.append(fresh)
                if entry == 0:
                    constraints.append(Constraint("zero", R_ZERO, (fresh,)))
                else:
                    constraints.append(Constraint("one", R_ONE, (fresh,)))
            constraints.append(Constraint(c.name, c.relation, tuple(scope)))
        return CspInstance(tuple(variables), tuple(constraints))

    def degree_profile(self) -> dict[str, int]:
        """Occurrences of each variable across scopes, after desugaring."""
        inst = self.desugar()
        counts: Counter[str] = Counter()
        for c in inst.constraints:
            counts.update(c.variables())
        return {v: counts.get(v, 0) for v in inst.variables}

    def degree(self) -> int:
        profile = self.degree_profile()
        return max(profile.values(), default=0)

    def constrained_variables(self) -> set[str]:
        return {v for c in self.constraints for v in c.variables()}


@dataclass(frozen=True)
class Hypergraph:
    """Vertices 1..n with non-empty hyper-edges."""

    n: int
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(frozenset(e) for e in self.edges))
        if self.n < 0:
            raise InvalidArgumentError("vertex count must be non-negative")
        for e in self.edges:
            if not e:
                raise InvalidArgumentError("hyper-edges must be non-empty")
            for v in e:
                if not 1 <= v <= self.n:
                    raise InvalidArgumentError(f"vertex {v} outside [1, {self.n}]")

    def width(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def degree_profile(self) -> dict[int, int]:
        counts: Counter[int] = Counter()
        for e in self.edges:
            counts.update(e)
        return {v: counts.get(v, 0) for v in range(1, self.n + 1)}

    def degree(self) -> int:
        profile = self.degree_profile()
        return max(profile.values(), default=0)
