"""Flags of a given type and the elementwise opposition test."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import budget, hecke, weyl
from .space import Geometry, GeometrySpec, Subspace, geometry


@dataclass(frozen=True)
class Flag:
    types: tuple  # node labels, in Dynkin order
    elements: tuple  # Subspace per type

    def __post_init__(self):
        if len(self.types) != len(self.elements):
            raise ValueError("a flag needs exactly one element per type")

    def element(self, t) -> Subspace:
        return self.elements[self.types.index(t)]

    @property
    def type(self) -> frozenset:
        return frozenset(self.types)

    def encode(self) -> str:
        return " | ".join(f"{t}:{S.encode()}" for t, S in zip(self.types, self.elements))


def type_dim(spec: GeometrySpec, t) -> int:
    return spec.rank if isinstance(t, str) else int(t)


def _point_matrix(g: Geometry, subs: list[Subspace]) -> np.ndarray:
    M = np.zeros((len(subs), len(g.points)), dtype=np.int32)
    for i, S in enumerate(subs):
        for j in range(len(g.points)):
            if S.mask >> j & 1:
                M[i, j] = 1
    return M


def _points_in(q: int, d: int) -> int:
    return (q**d - 1) // (q - 1)


def incidence(spec: GeometrySpec, s, t) -> np.ndarray:
    """Boolean matrix: element i of type s incident with element j of type t."""
    g = geometry(spec)
    key = ("inc", s, t)
    if key in g._opp:
        return g._opp[key]
    A, B = g.subspaces_of_type(s), g.subspaces_of_type(t)
    meet = _point_matrix(g, A) @ _point_matrix(g, B).T
    ds, dt = type_dim(spec, s), type_dim(spec, t)
    if s == t:
        raise ValueError("a type is not incident with itself")
    if ds == dt:
        # the two generator classes of a hyperbolic quadric
        out = meet == _points_in(spec.q, ds - 1)
    else:
        out = meet == _points_in(spec.q, min(ds, dt))
    g._opp[key] = out
    return out


def flag_count(spec: GeometrySpec, T) -> int:
    desc = spec.descriptor
    return hecke.count_flags(desc, spec.structure_constants, weyl.type_subset(desc, T))


def flag_indices(spec: GeometrySpec, T) -> tuple[tuple, np.ndarray]:
    """Types in Dynkin order and an array of element indices, one row per flag."""
    desc = spec.descriptor
    T = weyl.type_subset(desc, T)
    if not T:
        raise ValueError("the empty type has no flag elements")
    types = tuple(weyl.sorted_nodes(desc, T))
    budget.check("subspaces", flag_count(spec, T))
    g = geometry(spec)
    rows = np.arange(len(g.subspaces_of_type(types[0])))[:, None]
    for pos in range(1, len(types)):
        t = types[pos]
        inc = [incidence(spec, types[i], t) for i in range(pos)]
        new_rows = []
        for row in rows:
            mask = inc[0][row[0]]
            for i in range(1, pos):
                mask = mask & inc[i][row[i]]
            for j in np.flatnonzero(mask):
                new_rows.append(tuple(row) + (int(j),))
        rows = np.array(new_rows, dtype=np.int64).reshape(-1, pos + 1)
    expected = flag_count(spec, T)
    if len(rows) != expected:
        raise hecke.ConsistencyError(f"enumerated {len(rows)} flags of type {sorted(map(str, T))} in {spec}, expected {expected}")
    return types, rows


def enumerate_flags(spec: GeometrySpec, T) -> list[Flag]:
    g = geometry(spec)
    types, rows = flag_indices(spec, T)
    lists = [g.subspaces_of_type(t) for t in types]
    return [Flag(types, tuple(lists[i][r] for i, r in enumerate(row))) for row in rows]


def flag_opposite(spec: GeometrySpec, F1: Flag, F2: Flag) -> bool:
    """True iff each element of F1 is opposite the element of paired type in F2."""
    desc = spec.descriptor
    image = weyl.w0_action_on_types(desc, F1.type)
    if image != F2.type:
        raise ValueError(
            f"a flag of type {weyl.format_types(desc, F1.type)} can only be opposite one of type "
            f"{weyl.format_types(desc, image)}, got {weyl.format_types(desc, F2.type)}"
        )
    g = geometry(spec)
    for t, U in zip(F1.types, F1.elements):
        V = F2.element(g.paired_type(t))
        if not g.is_opposite(U, V):
            return False
    return True
