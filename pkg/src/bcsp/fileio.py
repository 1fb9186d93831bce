"""Text formats for relations, languages, instances and hypergraphs.

All serializers emit deterministic output (relations by name, tuples in
ascending order) and every parser/serializer pair round-trips exactly.
Lines starting with # and blank lines are ignored everywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .instance import Constraint, CspInstance, Hypergraph
from .relation import (
    R_IMP,
    R_NEQ,
    R_ONE,
    R_ZERO,
    Relation,
    eq_k,
    nand_k,
    or_k,
)

_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_FAMILY = re.compile(r"^(eq|or|nand)_([0-9]+)$")


def builtin_relation(name: str) -> Relation | None:
    """Resolve a built-in relation name, e.g. imp, neq, zero, one, or_3."""
    fixed = {
        "zero": R_ZERO, "one": R_ONE, "imp": R_IMP, "neq": R_NEQ,
        "eq": eq_k(2), "or": or_k(2), "nand": nand_k(2),
    }
    if name in fixed:
        return fixed[name]
    m = _FAMILY.match(name)
    if m:
        k = int(m.group(2))
        if k >= 1:
            return {"eq": eq_k, "or": or_k, "nand": nand_k}[m.group(1)](k)
    return None


def _logical_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_relation_literal(text: str) -> Relation:
    """Inline literal such as {00,01,11}."""
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ParseError(f"relation literal must be brace-delimited: {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        raise ParseError("empty literal has no arity; use a relation file instead")
    parts = [p.strip() for p in inner.split(",")]
    arity = len(parts[0])
    mask = 0
    for p in parts:
        if not re.fullmatch(r"[01]+", p):
            raise ParseError(f"bad tuple {p!r} in literal")
        if len(p) != arity:
            raise ParseError(f"tuple {p!r} does not match arity {arity}")
        idx = int(p, 2)
        if mask >> idx & 1:
            raise ParseError(f"duplicate tuple {p!r}")
        mask |= 1 << idx
    try:
        return Relation(arity, mask)
    except Exception as exc:
        raise ParseError(str(exc)) from None


def _parse_relation_block(lines, start_parts, start_line):
    if len(start_parts) != 3:
        raise ParseError("expected: relation <name> <arity>", start_line)
    _, name, arity_txt = start_parts
    if not _NAME.match(name):
        raise ParseError(f"bad relation name {name!r}", start_line)
    try:
        arity = int(arity_txt)
    except ValueError:
        raise ParseError(f"bad arity {arity_txt!r}", start_line) from None
    mask = 0
    while lines:
        lineno, line = lines[0]
        if not re.fullmatch(r"[01]+", line):
            break
        lines.pop(0)
        if len(line) != arity:
            raise ParseError(f"tuple {line!r} does not match arity {arity}", lineno)
        idx = int(line, 2)
        if mask >> idx & 1:
            raise ParseError(f"duplicate tuple {line!r}", lineno)
        mask |= 1 << idx
    try:
        rel = Relation(arity, mask)
    except Exception as exc:
        raise ParseError(str(exc), start_line) from None
    return name, rel


def parse_relation_file(text: str) -> Relation:
    """A single relation block; the name is discarded."""
    _, rel = parse_named_relation(text)
    return rel


def parse_named_relation(text: str) -> tuple[str, Relation]:
    lines = list(_logical_lines(text))
    if not lines:
        raise ParseError("empty relation file")
    lineno, first = lines[0]
    parts = first.split()
    if parts[0] != "relation":
        raise ParseError("expected a 'relation <name> <arity>' header", lineno)
    lines.pop(0)
    name, rel = _parse_relation_block(lines, parts, lineno)
    if lines:
        raise ParseError(f"unexpected content {lines[0][1]!r}", lines[0][0])
    return name, rel


def parse_language(text: str) -> dict[str, Relation]:
    """A sequence of relation blocks; returns an ordered name -> relation map."""
    lines = list(_logical_lines(text))
    out: dict[str, Relation] = {}
    while lines:
        lineno, line = lines.pop(0)
        parts = line.split()
        if parts[0] != "relation":
            raise ParseError(f"expected a relation block, got {line!r}", lineno)
        name, rel = _parse_relation_block(lines, parts, lineno)
        if name in out:
            raise ParseError(f"duplicate relation name {name!r}", lineno)
        out[name] = rel
    if not out:
        raise ParseError("language file defines no relations")
    return out


def parse_instance(text: str) -> CspInstance:
    """Relation blocks (optional), then an instance section.

    The instance section opens with 'instance', declares variables with
    either 'vars <n>' (naming them x1..xn) or repeated 'var <name>'
    lines, and lists 'constraint <relation> <arg>...' lines whose args
    are declared variable names or the literals 0 and 1.
    """
    lines = list(_logical_lines(text))
    catalog: dict[str, Relation] = {}
    while lines and lines[0][1].split()[0] == "relation":
        lineno, line = lines.pop(0)
        name, rel = _parse_relation_block(lines, line.split(), lineno)
        if name in catalog:
            raise ParseError(f"duplicate relation name {name!r}", lineno)
        catalog[name] = rel
    if not lines or lines[0][1] != "instance":
        raise ParseError("expected an 'instance' header")
    lines.pop(0)
    variables: list[str] = []
    constraints: list[Constraint] = []
    for lineno, line in lines:
        parts = line.split()
        if parts[0] == "vars":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("expected: vars <count>", lineno)
            variables.extend(f"x{i}" for i in range(1, int(parts[1]) + 1))
        elif parts[0] == "var":
            if len(parts) != 2 or not _NAME.match(parts[1]):
                raise ParseError("expected: var <name>", lineno)
            variables.append(parts[1])
        elif parts[0] == "constraint":
            if len(parts) < 2:
                raise ParseError("expected: constraint <relation> <arg>...", lineno)
            rel_name = parts[1]
            rel = catalog.get(rel_name) or builtin_relation(rel_name)
            if rel is None:
                raise ParseError(f"unknown relation {rel_name!r}", lineno)
            scope: list = []
            for arg in parts[2:]:
                if arg in ("0", "1"):
                    scope.append(int(arg))
                elif arg in variables:
                    scope.append(arg)
                else:
                    raise ParseError(f"undeclared variable {arg!r}", lineno)
            if len(scope) != rel.arity:
                raise ParseError(
                    f"{rel_name} takes {rel.arity} arguments, got {len(scope)}", lineno
                )
            constraints.append(Constraint(rel_name, rel, tuple(scope)))
        else:
            raise ParseError(f"unexpected line {line!r}", lineno)
    try:
        return CspInstance(tuple(variables), tuple(constraints))
    except Exception as exc:
        raise ParseError(str(exc)) from None


def parse_hypergraph(text: str) -> Hypergraph:
    """'hypergraph <n>' then 'edge <v>...' lines with vertices in 1..n."""
    lines = list(_logical_lines(text))
    if not lines:
        raise ParseError("empty hypergraph file")
    lineno, first = lines.pop(0)
    parts = first.split()
    if len(parts) != 2 or parts[0] != "hypergraph" or not parts[1].isdigit():
        raise ParseError("expected: hypergraph <vertex count>", lineno)
    n = int(parts[1])
    edges = []
    for lineno, line in lines:
        parts = line.split()
        if parts[0] != "edge" or len(parts) < 2:
            raise ParseError("expected: edge <vertex>...", lineno)
        try:
            edges.append(frozenset(int(p) for p in parts[1:]))
        except ValueError:
            raise ParseError(f"bad vertex in {line!r}", lineno) from None
    try:
        return Hypergraph(n, tuple(edges))
    except Exception as exc:
        raise ParseError(str(exc)) from None


# --- serializers --------------------------------------------------------


def serialize_relation(name: str, rel: Relation) -> str:
    lines = [f"relation {name} {rel.arity}"]
    lines.extend("".join(map(str, t)) for t in rel.tuples())
    return "\n".join(lines) + "\n"


def serialize_language(relations: dict[str, Relation]) -> str:
    return "\n".join(
        serialize_relation(name, relations[name]) for name in sorted(relations)
    )


def serialize_instance(inst: CspInstance) -> str:
    blocks = []
    seen: dict[str, Relation] = {}
    for c in inst.constraints:
        if c.name in seen:
            continue
        seen[c.name] = c.relation
        if builtin_relation(c.name) == c.relation:
            continue
        blocks.append(serialize_relation(c.name, c.relation))
    lines = []
    if list(inst.variables) == [f"x{i}" for i in range(1, len(inst.variables) + 1)]:
        lines.append(f"vars {len(inst.variables)}")
    else:
        lines.extend(f"var {v}" for v in inst.variables)
    for c in inst.constraints:
        args = " ".join(str(e) for e in c.scope)
        lines.append(f"constraint {c.name} {args}".rstrip())
    body = "instance\n" + "\n".join(lines) + "\n"
    return ("\n".join(blocks) + "\n" if blocks else "") + body


def serialize_hypergraph(h: Hypergraph) -> str:
    lines = [f"hypergraph {h.n}"]
    for e in h.edges:
        lines.append("edge " + " ".join(str(v) for v in sorted(e)))
    return "\n".join(lines) + "\n"


# --- workspace -----------------------------------------------------------


@dataclass
class Workspace:
    """Named catalogs built up while parsing CLI inputs."""

    relations: dict[str, Relation] = field(default_factory=dict)
    languages: dict[str, tuple[Relation, ...]] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    def add_relation(self, name: str, rel: Relation) -> None:
        if name in self.relations:
            raise ParseError(f"duplicate relation name {name!r}")
        self.relations[name] = rel

    def add_language(self, name: str, rels) -> None:
        if name in self.languages:
            raise ParseError(f"duplicate language name {name!r}")
        self.languages[name] = tuple(rels)
