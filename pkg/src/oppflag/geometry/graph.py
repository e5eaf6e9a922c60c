"""Opposition graphs on flags of a self-opposite type, with text and binary export."""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .. import budget, hecke, weyl
from .flags import Flag, flag_count, flag_indices
from .space import GeometrySpec, geometry

MAGIC = b"OPPG"
VERSION = 1


@dataclass
class OppositionGraph:
    adjacency: np.ndarray  # bool, symmetric, zero diagonal
    spec: Optional[GeometrySpec] = None
    types: tuple = ()
    rows: Optional[np.ndarray] = None  # element indices per vertex
    _flags: Optional[list] = field(default=None, repr=False)

    def __post_init__(self):
        A = np.asarray(self.adjacency, dtype=bool)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if A.diagonal().any():
            raise ValueError("the opposition relation has no loops")
        if not (A == A.T).all():
            raise ValueError("the opposition relation is symmetric")
        self.adjacency = A
        degrees = A.sum(axis=1)
        if len(degrees) and (degrees != degrees[0]).any():
            raise ValueError(f"graph is not regular: degrees range over {sorted(set(degrees.tolist()))[:5]}")

    @property
    def order(self) -> int:
        return self.adjacency.shape[0]

    @property
    def valency(self) -> int:
        return int(self.adjacency[0].sum()) if self.order else 0

    @property
    def vertices(self) -> list[Flag]:
        if self._flags is None:
            if self.spec is None:
                raise ValueError("this graph carries no geometry")
            g = geometry(self.spec)
            lists = [g.subspaces_of_type(t) for t in self.types]
            self._flags = [Flag(self.types, tuple(lists[i][r] for i, r in enumerate(row))) for row in self.rows]
        return self._flags

    def vertex_label(self, i: int) -> str:
        if self.spec is None:
            return str(i)
        return self.vertices[i].encode()

    def is_coclique(self, vertices) -> bool:
        idx = np.fromiter(vertices, dtype=np.int64)
        return not self.adjacency[np.ix_(idx, idx)].any()

    # -- export -----------------------------------------------------------------

    def to_adjacency_list(self) -> str:
        lines = []
        for i in range(self.order):
            nbrs = " ".join(str(j) for j in np.flatnonzero(self.adjacency[i]))
            lines.append(f"{i}\t{self.vertex_label(i)}\t{nbrs}")
        return "\n".join(lines) + "\n"

    def to_bytes(self) -> bytes:
        header = MAGIC + struct.pack("<III", VERSION, self.order, self.valency)
        return header + np.packbits(self.adjacency, axis=1).tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "OppositionGraph":
        if len(data) < 16 or data[:4] != MAGIC:
            raise ValueError("not an opposition graph file")
        version, n, valency = struct.unpack("<III", data[4:16])
        if version != VERSION:
            raise ValueError(f"unsupported version {version}")
        width = (n + 7) // 8
        body = np.frombuffer(data[16:], dtype=np.uint8)
        if body.size != n * width:
            raise ValueError("truncated adjacency data")
        A = np.unpackbits(body.reshape(n, width), axis=1, count=n).astype(bool)
        graph = cls(A)
        if graph.valency != valency:
            raise ValueError(f"header valency {valency} disagrees with the data ({graph.valency})")
        return graph

    @classmethod
    def from_adjacency_list(cls, text: str) -> "OppositionGraph":
        rows = [line.split("\t") for line in text.splitlines() if line.strip()]
        n = len(rows)
        A = np.zeros((n, n), dtype=bool)
        for i, parts in enumerate(rows):
            if int(parts[0]) != i:
                raise ValueError(f"vertex {i} is out of order")
            if len(parts) > 2 and parts[2].strip():
                A[i, [int(x) for x in parts[2].split()]] = True
        return cls(A)


def build_opposition_graph(spec: GeometrySpec, T) -> OppositionGraph:
    """Opposition graph on all flags of type T (which must be self-opposite)."""
    desc = spec.descriptor
    T = weyl.type_subset(desc, T)
    image = weyl.w0_action_on_types(desc, T)
    if image != T:
        raise hecke.NotSelfOpposite(desc, T, image, "type")
    budget.check("vertices", flag_count(spec, T))
    types, rows = flag_indices(spec, T)
    g = geometry(spec)
    A = np.ones((len(rows), len(rows)), dtype=bool)
    for i, t in enumerate(types):
        j = types.index(g.paired_type(t))
        A &= g.opposition_matrix(t)[np.ix_(rows[:, i], rows[:, j])]
    return OppositionGraph(A, spec, types, rows)
