"""Small projective and polar spaces built from explicit forms.

Vector coordinates are numbered from 0.  Forms in use:

* symplectic: sum over i of x_{2i} y_{2i+1} - x_{2i+1} y_{2i}
* hyperbolic quadric: sum over i of x_{2i} x_{2i+1}
* parabolic quadric: x_0^2 plus hyperbolic pairs on the remaining coordinates
* elliptic quadric: x_0^2 + x_0 x_1 + c x_1^2 (irreducible) plus hyperbolic pairs
* hermitian: sum over i of x_i y_i^r with r^2 = q

Subspaces are stored by their reduced row echelon basis together with the
bitmask of projective points they contain; both are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import isqrt
from typing import Optional

import numpy as np

from .. import budget, hecke, weyl
from ..weyl import WeylDescriptor
from .field import GF, field as get_field

KINDS = (
    "projective",
    "symplectic",
    "parabolic_quadric",
    "elliptic_quadric",
    "hyperbolic_quadric",
    "hermitian",
)


@dataclass(frozen=True)
class GeometrySpec:
    kind: str
    rank: int
    q: int
    dimension: Optional[int] = None  # vector space dimension; derived when omitted
    view: Optional[str] = None  # "D" (oriflamme, default) or "B" for hyperbolic quadrics

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown geometry kind {self.kind!r}; expected one of {KINDS}")
        if not hecke.is_prime_power(self.q):
            raise ValueError(f"q must be a prime power, got {self.q}")
        if self.rank < 1:
            raise ValueError("rank must be positive")
        n = self.rank
        default = {
            "projective": n + 1,
            "symplectic": 2 * n,
            "parabolic_quadric": 2 * n + 1,
            "hyperbolic_quadric": 2 * n,
            "elliptic_quadric": 2 * n + 2,
            "hermitian": 2 * n,
        }[self.kind]
        dim = default if self.dimension is None else self.dimension
        if self.kind == "hermitian":
            if dim not in (2 * n, 2 * n + 1):
                raise ValueError(f"a hermitian space of rank {n} has dimension {2 * n} or {2 * n + 1}")
            r = isqrt(self.q)
            if r * r != self.q:
                raise ValueError(f"hermitian spaces need a square field order, got q = {self.q}")
        elif dim != default:
            raise ValueError(f"{self.kind} of rank {n} has dimension {default}, not {dim}")
        object.__setattr__(self, "dimension", dim)
        view = self.view
        if self.kind == "hyperbolic_quadric":
            view = view or "D"
            if view not in ("B", "D"):
                raise ValueError("view must be 'B' or 'D'")
            if view == "D" and n < 2:
                raise ValueError("the oriflamme view needs rank >= 2")
        elif view is not None:
            raise ValueError("only hyperbolic quadrics take a view")
        object.__setattr__(self, "view", view)

    # convenience constructors
    @classmethod
    def projective(cls, n: int, q: int) -> "GeometrySpec":
        return cls("projective", n, q)

    @classmethod
    def symplectic(cls, n: int, q: int) -> "GeometrySpec":
        return cls("symplectic", n, q)

    @classmethod
    def parabolic(cls, n: int, q: int) -> "GeometrySpec":
        return cls("parabolic_quadric", n, q)

    @classmethod
    def hyperbolic(cls, n: int, q: int, view: str = "D") -> "GeometrySpec":
        return cls("hyperbolic_quadric", n, q, view=view)

    @classmethod
    def elliptic(cls, n: int, q: int) -> "GeometrySpec":
        return cls("elliptic_quadric", n, q)

    @classmethod
    def hermitian(cls, dimension: int, q: int) -> "GeometrySpec":
        return cls("hermitian", dimension // 2, q, dimension=dimension)

    @property
    def e(self) -> Optional[Fraction]:
        if self.kind == "projective":
            return None
        if self.kind == "hermitian":
            return Fraction(1, 2) if self.dimension % 2 == 0 else Fraction(3, 2)
        return {
            "symplectic": Fraction(1),
            "parabolic_quadric": Fraction(1),
            "hyperbolic_quadric": Fraction(0),
            "elliptic_quadric": Fraction(2),
        }[self.kind]

    @property
    def descriptor(self) -> WeylDescriptor:
        if self.kind == "projective":
            return WeylDescriptor("A", self.rank)
        if self.kind == "hyperbolic_quadric" and self.view == "D":
            return WeylDescriptor("D", self.rank)
        return WeylDescriptor("B", self.rank)

    @property
    def structure_constants(self) -> hecke.StructureConstants:
        desc = self.descriptor
        return hecke.StructureConstants.for_family(desc.family, self.q, self.e)

    @property
    def name(self) -> str:
        n, q, d = self.rank, self.q, self.dimension
        return {
            "projective": f"PG({n},{q})",
            "symplectic": f"Sp({d},{q})",
            "parabolic_quadric": f"O({d},{q})",
            "hyperbolic_quadric": f"O+({d},{q})",
            "elliptic_quadric": f"O-({d},{q})",
            "hermitian": f"H({d - 1},{q})",
        }[self.kind]

    def __str__(self):
        return self.name


def spec_from_name(name: str) -> GeometrySpec:
    """Parse names such as PG(3,2), Sp(6,2), O(7,2), O+(8,2), O-(8,2), H(3,4)."""
    import re

    m = re.fullmatch(r"\s*(PG|Sp|O\+|O-|O|H)\((\d+),(\d+)\)\s*", name)
    if not m:
        raise ValueError(f"cannot parse geometry name {name!r}")
    kind, a, q = m.group(1), int(m.group(2)), int(m.group(3))
    if kind == "PG":
        return GeometrySpec.projective(a, q)
    if kind == "Sp":
        return GeometrySpec.symplectic(a // 2, q)
    if kind == "O":
        return GeometrySpec.parabolic((a - 1) // 2, q)
    if kind == "O+":
        return GeometrySpec.hyperbolic(a // 2, q)
    if kind == "O-":
        return GeometrySpec.elliptic((a - 2) // 2, q)
    return GeometrySpec.hermitian(a + 1, q)


@dataclass(frozen=True, order=True)
class Subspace:
    basis: tuple  # reduced row echelon rows
    mask: int = field(compare=False, hash=False)  # bitmask of contained points

    @property
    def dim(self) -> int:
        return len(self.basis)

    def encode(self) -> str:
        return ",".join("".join(str(x) if x < 10 else f"<{x}>" for x in row) for row in self.basis)

    def contains(self, other: "Subspace") -> bool:
        return other.mask & ~self.mask == 0


def bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class Geometry:
    """Points, forms and subspaces of one GeometrySpec, built lazily and cached."""

    def __init__(self, spec: GeometrySpec):
        self.spec = spec
        self.F: GF = get_field(spec.q)
        self.N = spec.dimension
        self._setup_form()
        self._enumerate_points()
        self._subspaces: dict[int, list[Subspace]] = {}
        self._index: dict[int, dict[Subspace, int]] = {}
        self._opp: dict = {}

    # -- forms --------------------------------------------------------------

    def _setup_form(self):
        F, N, kind = self.F, self.N, self.spec.kind
        q = self.spec.q
        C = [[0] * N for _ in range(N)]  # quadratic form coefficients, upper triangular
        M = [[0] * N for _ in range(N)]  # bilinear (or sesquilinear) form matrix
        self.frob = 1
        if kind == "symplectic":
            for i in range(0, N, 2):
                M[i][i + 1] = 1
                M[i + 1][i] = F._neg[1]
        elif kind == "hermitian":
            self.frob = isqrt(q)
            for i in range(N):
                M[i][i] = 1
        elif kind != "projective":
            start = 0
            if kind == "parabolic_quadric":
                C[0][0] = 1
                start = 1
            elif kind == "elliptic_quadric":
                c = next(
                    c for c in F.elements() if all(F.add(F.add(F.mul(t, t), t), c) != 0 for t in F.elements())
                )
                C[0][0], C[0][1], C[1][1] = 1, 1, c
                start = 2
            for i in range(start, N, 2):
                C[i][i + 1] = 1
            for i in range(N):
                for j in range(N):
                    if i == j:
                        M[i][i] = F.add(C[i][i], C[i][i])
                    elif i < j:
                        M[i][j] = F.add(M[i][j], C[i][j])
                        M[j][i] = F.add(M[j][i], C[i][j])
        self.C, self.M = C, M
        self.is_quadric = kind.endswith("quadric")

    def conj(self, v) -> tuple:
        if self.frob == 1:
            return tuple(v)
        return tuple(self.F.power(x, self.frob) for x in v)

    def form_image(self, v) -> tuple:
        """M applied to conj(v): B(u, v) is the dot product of u with this vector."""
        F = self.F
        w = self.conj(v)
        out = []
        for row in self.M:
            acc = 0
            for a, b in zip(row, w):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return tuple(out)

    def form(self, u, v) -> int:
        F = self.F
        acc = 0
        for a, b in zip(u, self.form_image(v)):
            acc = F.add(acc, F.mul(a, b))
        return acc

    def quadratic(self, v) -> int:
        F = self.F
        acc = 0
        for i in range(self.N):
            if not v[i]:
                continue
            for j in range(i, self.N):
                if self.C[i][j] and v[j]:
                    acc = F.add(acc, F.mul(self.C[i][j], F.mul(v[i], v[j])))
        return acc

    def is_singular_point(self, v) -> bool:
        kind = self.spec.kind
        if kind in ("projective", "symplectic"):
            return True
        if self.is_quadric:
            return self.quadratic(v) == 0
        return self.form(v, v) == 0

    # -- points --------------------------------------------------------------

    def _enumerate_points(self):
        F, N = self.F, self.N
        budget.check("subspaces", (self.spec.q**N - 1) // (self.spec.q - 1))
        pts = []
        for lead in range(N):
            for tail in product(range(F.q), repeat=N - lead - 1):
                v = (0,) * lead + (1,) + tail
                if self.is_singular_point(v):
                    pts.append(v)
        pts.sort(reverse=True)
        self.points = pts
        self.point_index = {v: i for i, v in enumerate(pts)}
        self.all_mask = (1 << len(pts)) - 1
        if self.spec.kind == "projective":
            self.perp = None
            return
        P = np.array(pts, dtype=np.int64)
        W = np.array([self.form_image(v) for v in pts], dtype=np.int64)
        G = F.pair_products(P[:, None, :], W[:, None, :])[:, :, 0, 0]
        self.perp = [sum(1 << j for j in np.flatnonzero(G[i] == 0).tolist()) for i in range(len(pts))]

    def point_of(self, v) -> int:
        return self.point_index[self.F.normalize(v)]

    # -- subspaces ------------------------------------------------------------

    def expected_count(self, k: int) -> int:
        spec, q = self.spec, self.spec.q
        if spec.kind == "projective":
            return hecke.gaussian_binomial(self.N, k, q)
        return hecke.polar_subspace_count(spec.rank, k, q, spec.e)

    def max_dim(self) -> int:
        return self.N - 1 if self.spec.kind == "projective" else self.spec.rank

    def subspaces(self, k: int) -> list[Subspace]:
        if k in self._subspaces:
            return self._subspaces[k]
        if not 1 <= k <= self.max_dim():
            raise ValueError(f"{self.spec} has no subspaces of dimension {k} in this enumeration")
        budget.check("subspaces", self.expected_count(k))
        if k == 1:
            subs = [Subspace((v,), 1 << i) for i, v in enumerate(self.points)]
        else:
            F = self.F
            found: dict[int, Subspace] = {}
            for S in self.subspaces(k - 1):
                if self.perp is None:
                    cand = self.all_mask & ~S.mask
                else:
                    cand = self.all_mask
                    for row in S.basis:
                        cand &= self.perp[self.point_index[row]]
                    cand &= ~S.mask
                members = list(bits(S.mask))
                for p in bits(cand):
                    pv = self.points[p]
                    mask = S.mask | (1 << p)
                    for u in members:
                        uv = self.points[u]
                        for c in F.nonzero():
                            mask |= 1 << self.point_of(F.vadd(uv, F.vscale(c, pv)))
                    if mask not in found:
                        found[mask] = Subspace(F.rref(list(S.basis) + [pv]), mask)
            subs = sorted(found.values())
        self._subspaces[k] = subs
        self._index[k] = {s: i for i, s in enumerate(subs)}
        return subs

    def index_of(self, S: Subspace) -> int:
        self.subspaces(S.dim)
        return self._index[S.dim][S]

    def span(self, vectors) -> Subspace:
        """The subspace spanned by the given vectors (for projective spaces or t.i. sets)."""
        basis = self.F.rref(vectors)
        k = len(basis)
        for S in self.subspaces(k):
            if S.basis == basis:
                return S
        raise ValueError("vectors do not span a subspace of this geometry")

    def intersection_dim(self, U: Subspace, V: Subspace) -> int:
        return U.dim + V.dim - self.F.rank(list(U.basis) + list(V.basis))

    # -- hyperbolic generator classes -------------------------------------------

    def reference_generator(self) -> Subspace:
        n = self.spec.rank
        rows = [tuple(1 if j == 2 * i else 0 for j in range(self.N)) for i in range(n)]
        return self.span(rows)

    def generator_class(self, N: Subspace) -> str | int:
        """Oriflamme type (n or "n'") of a generator of a hyperbolic quadric."""
        n = self.spec.rank
        d = self.intersection_dim(N, self.reference_generator())
        return n if (d - n) % 2 == 0 else f"{n}'"

    def subspaces_of_type(self, t) -> list[Subspace]:
        """Elements of type t in the geometry's own type convention."""
        n = self.spec.rank
        if self.spec.descriptor.family == "D" and t in (n, f"{n}'"):
            key = ("class", t)
            if key not in self._opp:
                self._opp[key] = [N for N in self.subspaces(n) if self.generator_class(N) == t]
            return self._opp[key]
        return self.subspaces(int(t))

    def type_index(self, t) -> dict[Subspace, int]:
        key = ("index", t)
        if key not in self._opp:
            self._opp[key] = {s: i for i, s in enumerate(self.subspaces_of_type(t))}
        return self._opp[key]

    # -- opposition ----------------------------------------------------------

    def paired_type(self, t):
        return next(iter(weyl.w0_action_on_types(self.spec.descriptor, {t})))

    def is_opposite(self, U: Subspace, V: Subspace) -> bool:
        """Opposition of two single subspaces."""
        if self.spec.kind == "projective":
            if U.dim + V.dim != self.N:
                raise ValueError(f"dimensions {U.dim} and {V.dim} are not paired in {self.spec}")
            return self.F.rank(list(U.basis) + list(V.basis)) == self.N
        if U.dim != V.dim:
            raise ValueError(f"only subspaces of equal dimension can be opposite in {self.spec}")
        gram = [[self.form(u, v) for v in V.basis] for u in U.basis]
        return self.F.rank(gram) == U.dim

    def opposition_matrix(self, t) -> np.ndarray:
        """Boolean matrix: element i of type t opposite to element j of the paired type."""
        key = ("opp", t)
        if key in self._opp:
            return self._opp[key]
        s = self.paired_type(t)
        A = self.subspaces_of_type(t)
        B = self.subspaces_of_type(s)
        F = self.F
        U = np.array([S.basis for S in A], dtype=np.int64)
        out = np.zeros((len(A), len(B)), dtype=bool)
        chunk = max(1, 200000 // max(1, len(B)))
        if self.spec.kind == "projective":
            V = np.array([S.basis for S in B], dtype=np.int64)
            for lo in range(0, len(A), chunk):
                u = U[lo : lo + chunk]
                stack = np.concatenate(
                    [np.broadcast_to(u[:, None], (len(u), len(B)) + u.shape[1:]),
                     np.broadcast_to(V[None], (len(u),) + V.shape)],
                    axis=2,
                )
                out[lo : lo + chunk] = F.batched_nonsingular(stack.reshape(-1, self.N, self.N)).reshape(len(u), len(B))
        else:
            W = np.array([[self.form_image(v) for v in S.basis] for S in B], dtype=np.int64)
            k = U.shape[1]
            for lo in range(0, len(A), chunk):
                G = F.pair_products(U[lo : lo + chunk], W)
                out[lo : lo + chunk] = F.batched_nonsingular(G.reshape(-1, k, k)).reshape(-1, len(B))
        self._opp[key] = out
        return out


@lru_cache(maxsize=32)
def geometry(spec: GeometrySpec) -> Geometry:
    return Geometry(spec)


def enumerate_subspaces(spec: GeometrySpec, k: int) -> list[Subspace]:
    """All (totally isotropic or singular) k-dimensional subspaces, canonically ordered."""
    return geometry(spec).subspaces(k)


def is_opposite(spec: GeometrySpec, U: Subspace, V: Subspace) -> bool:
    return geometry(spec).is_opposite(U, V)
