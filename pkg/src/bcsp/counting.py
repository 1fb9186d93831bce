"""Exact counting engines.

brute_force_count is the ground-truth oracle every certificate in the
package leans on: it enumerates assignments (vectorized, in chunks) and
refuses to run past its budget rather than estimate.  The polynomial
cases, degree-1 instances and all-affine instances, get dedicated
engines whose outputs are cross-checked against the oracle in tests.
"""

from __future__ import annotations

import numpy as np

from .classify import affine_system
from .errors import InvalidArgumentError, ResourceLimitError
from .formula import AffineSystem
from .instance import CspInstance, Hypergraph
from .limits import brute_budget
from .relation import Relation

_CHUNK_BITS = 20


def _member_table(rel: Relation) -> np.ndarray:
    size = 1 << rel.arity
    table = np.zeros(size, dtype=bool)
    for idx in rel.indices():
        table[idx] = True
    return table


def brute_force_count(inst: CspInstance, budget: int | None = None) -> int:
    """Z(I): the exact number of satisfying assignments, by enumeration."""
    budget = brute_budget() if budget is None else budget
    n = len(inst.variables)
    if n > budget:
        raise ResourceLimitError(f"{n} variables exceed the enumeration budget of {budget}")
    pos = {v: n - 1 - i for i, v in enumerate(inst.variables)}
    tables = [_member_table(c.relation) for c in inst.constraints]
    total = 0
    chunk = 1 << min(_CHUNK_BITS, n)
    for lo in range(0, 1 << n, chunk):
        assigns = np.arange(lo, lo + chunk, dtype=np.int64)
        ok = np.ones(len(assigns), dtype=bool)
        for c, table in zip(inst.constraints, tables):
            arity = c.relation.arity
            idx = np.zeros(len(assigns), dtype=np.int64)
            for slot, entry in enumerate(c.scope):
                shift = arity - 1 - slot
                if isinstance(entry, str):
                    bit = (assigns >> pos[entry]) & 1
                else:
                    bit = entry
                idx |= bit << shift
            ok &= table[idx]
        total += int(np.count_nonzero(ok))
    return total


def count_partitioned(inst: CspInstance, distinguished, budget: int | None = None) -> tuple[int, int, int]:
    """Satisfying-assignment counts split by the distinguished variables:
    (all zero, all one, anything else)."""
    budget = brute_budget() if budget is None else budget
    n = len(inst.variables)
    if n > budget:
        raise ResourceLimitError(f"{n} variables exceed the enumeration budget of {budget}")
    pos = {v: n - 1 - i for i, v in enumerate(inst.variables)}
    dmask = 0
    for v in distinguished:
        dmask |= 1 << pos[v]
    tables = [_member_table(c.relation) for c in inst.constraints]
    zeros = ones = stray = 0
    chunk = 1 << min(_CHUNK_BITS, n)
    for lo in range(0, 1 << n, chunk):
        assigns = np.arange(lo, lo + chunk, dtype=np.int64)
        ok = np.ones(len(assigns), dtype=bool)
        for c, table in zip(inst.constraints, tables):
            arity = c.relation.arity
            idx = np.zeros(len(assigns), dtype=np.int64)
            for slot, entry in enumerate(c.scope):
                shift = arity - 1 - slot
                if isinstance(entry, str):
                    bit = (assigns >> pos[entry]) & 1
                else:
                    bit = entry
                idx |= bit << shift
            ok &= table[idx]
        marked = assigns[ok] & dmask
        z = int(np.count_nonzero(marked == 0))
        o = int(np.count_nonzero(marked == dmask))
        zeros += z
        ones += o
        stray += int(np.count_nonzero(ok)) - z - o
    return zeros, ones, stray


def degree1_count(inst: CspInstance) -> int:
    """Z(I) for instances of degree at most one.

    With every variable used at most once the constraints are
    independent: multiply the per-constraint member counts and give each
    unconstrained variable both values.
    """
    inst = inst.desugar()
    if inst.degree() > 1:
        raise InvalidArgumentError("instance has degree above 1")
    product = 1
    for c in inst.constraints:
        product *= len(c.relation)
    free = len(inst.variables) - len(inst.constrained_variables())
    return product << free if product else 0


def affine_count(inst: CspInstance, systems: dict | None = None) -> int:
    """Z(I) for instances whose every relation is affine.

    Instantiates each constraint's linear system on its scope, eliminates
    over GF(2), and returns 0 or 2**(variables - rank).  Runs in time
    polynomial in the instance size.
    """
    inst = inst.desugar()
    n = len(inst.variables)
    pos = {v: i for i, v in enumerate(inst.variables)}
    cache: dict[Relation, AffineSystem] = {}

    def system_for(rel: Relation) -> AffineSystem:
        if rel not in cache:
            if systems is not None and rel in systems:
                cache[rel] = systems[rel]
            else:
                try:
                    cache[rel] = affine_system(rel)
                except Exception as exc:
                    raise InvalidArgumentError(f"non-affine relation in instance: {exc}") from exc
        return cache[rel]

    rows = []
    for c in inst.constraints:
        sys_ = system_for(c.relation)
        for idxs, rhs in sys_.equations:
            row = np.zeros(n + 1, dtype=np.uint8)
            row[n] = rhs
            for col in idxs:
                entry = c.scope[col - 1]
                if isinstance(entry, str):
                    row[pos[entry]] ^= 1
                else:
                    row[n] ^= entry
            rows.append(row)
    if not rows:
        return 1 << n
    matrix = np.array(rows, dtype=np.uint8)
    rank = 0
    m = matrix.shape[0]
    for col in range(n):
        hit = None
        for r in range(rank, m):
            if matrix[r, col]:
                hit = r
                break
        if hit is None:
            continue
        if hit != rank:
            matrix[[rank, hit]] = matrix[[hit, rank]]
        for r in range(m):
            if r != rank and matrix[r, col]:
                matrix[r] ^= matrix[rank]
        rank += 1
        if rank == m:
            break
    for r in range(rank, m):
        if matrix[r, n]:
            return 0
    return 1 << (n - rank)


def hypergraph_is_count(h: Hypergraph, budget: int | None = None) -> int:
    """The number of independent sets: subsets containing no full edge."""
    budget = brute_budget() if budget is None else budget
    if h.n > budget:
        raise ResourceLimitError(f"{h.n} vertices exceed the enumeration budget of {budget}")
    edge_masks = [sum(1 << (v - 1) for v in e) for e in h.edges]
    total = 0
    chunk = 1 << min(_CHUNK_BITS, h.n)
    for lo in range(0, 1 << h.n, chunk):
        subsets = np.arange(lo, lo + chunk, dtype=np.int64)
        ok = np.ones(len(subsets), dtype=bool)
        for em in edge_masks:
            ok &= (subsets & em) != em
        total += int(np.count_nonzero(ok))
    return total
