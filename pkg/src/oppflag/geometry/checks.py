"""Oracle checks: equitable blow-up, sharp constructions and Hecke relations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import hecke, weyl
from ..weyl import SignedPermutation, WeylDescriptor
from .flags import Flag, enumerate_flags, flag_indices
from .graph import build_opposition_graph
from .space import GeometrySpec, geometry


@dataclass
class CheckReport:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "details": self.details, "failures": self.failures}


def _q_weighted(q: int, s_len: int, t_len: int, e) -> int:
    return q**s_len * hecke.q_power(q, Fraction(e) * t_len)


def verify_equitable_blowup(spec: GeometrySpec, T_partial) -> CheckReport:
    """Each maximal extension of a partial flag F is opposite exactly q^l maximal
    extensions of each partial flag opposite F, and none of the others."""
    desc = spec.descriptor
    T = weyl.type_subset(desc, T_partial)
    J = weyl.complement(desc, T)
    hecke.require_self_opposite(desc, J)
    s_len, t_len = weyl.parabolic_longest_parts(desc, J)
    factor = _q_weighted(spec.q, s_len, t_len, spec.e or 0)
    full = weyl.all_nodes(desc)
    big = build_opposition_graph(spec, full)
    small = build_opposition_graph(spec, T)
    # project each maximal flag onto its partial flag of type T
    lookup = {tuple(row): i for i, row in enumerate(small.rows.tolist())}
    cols = [big.types.index(t) for t in small.types]
    proj = np.array([lookup[tuple(r)] for r in big.rows[:, cols].tolist()], dtype=np.int64)
    P = np.zeros((big.order, small.order))
    P[np.arange(big.order), proj] = 1
    # float64 products of 0/1 matrices are exact at these sizes
    counts = np.rint(big.adjacency.astype(np.float64) @ P).astype(np.int64)
    expected = factor * small.adjacency[proj].astype(np.int64)
    bad = np.argwhere(counts != expected)
    failures = []
    for x, G in bad[:5].tolist():
        failures.append(
            {"maximal_flag": x, "partial_flag": G, "count": int(counts[x, G]), "expected": int(expected[x, G])}
        )
    details = {
        "type": weyl.format_types(desc, T),
        "l": str(Fraction(s_len) + Fraction(spec.e or 0) * t_len),
        "factor": factor,
        "maximal_flags": big.order,
        "partial_flags": small.order,
    }
    return CheckReport(f"equitable blow-up {spec} type {weyl.format_types(desc, T)}", not failures, details, failures)


# -- sharp constructions ------------------------------------------------------------


def construction_kinds(spec: GeometrySpec, T) -> list[str]:
    """Constructions whose hypotheses hold for flags of type T in this geometry."""
    desc = spec.descriptor
    n, e = spec.rank, spec.e
    T = weyl.type_subset(desc, T)
    out = []
    if desc.family == "A":
        if n % 2 and (n + 1) // 2 in T:
            out += ["fixed-point pencil", "fixed-hyperplane"]
    elif desc.family == "B":
        if 1 in T:
            out.append("point in a fixed generator")
        if n in T and (e >= 1 or n % 2 == 0):
            out.append("point-pencil")
        if n in T and e == 0 and n % 2:
            out.append("one generator class")
    else:
        if 1 in T:
            out.append("point in a fixed generator")
        for end, other in ((n, f"{n}'"), (f"{n}'", n)):
            if end in T and n % 2 == 0:
                out.append(f"point-pencil on type {end}")
            if end in T and n == 4:
                out.append(f"type {end} incident with a fixed type {other} subspace")
    return out


def _hypothesis(spec: GeometrySpec, kind: str) -> str:
    n = spec.rank
    family = spec.descriptor.family
    if family == "A":
        return f"needs n = 2m-1 odd and the middle type m in T (n = {n})"
    if kind == "one generator class":
        return "needs e = 0, n odd and type n in T"
    if kind.startswith("point-pencil"):
        return "needs the generator type in T and (e >= 1 or n even)"
    if kind.startswith("type"):
        return "needs rank 4 and that end type in T"
    return "needs type 1 in T"


def construction_vertices(spec: GeometrySpec, T, kind: str) -> np.ndarray:
    """Indices (in flag enumeration order) of the flags in the named construction."""
    desc = spec.descriptor
    T = weyl.type_subset(desc, T)
    allowed = construction_kinds(spec, T)
    if kind not in allowed:
        raise ValueError(f"construction {kind!r} does not apply to {spec} type {weyl.format_types(desc, T)}: {_hypothesis(spec, kind)}")
    g = geometry(spec)
    types, rows = flag_indices(spec, T)
    n = spec.rank

    def elements_of(t):
        subs = g.subspaces_of_type(t)
        return [subs[i] for i in rows[:, types.index(t)]]

    p0 = 1  # the first point in canonical order
    if spec.kind == "projective":
        m = (n + 1) // 2
        if kind == "fixed-point pencil":
            keep = [S.mask & p0 != 0 for S in elements_of(m)]
        else:
            H = g.subspaces(n)[0]
            keep = [S.mask & ~H.mask == 0 for S in elements_of(m)]
    elif kind == "point in a fixed generator":
        N = g.subspaces_of_type(n)[0]
        keep = [S.mask & ~N.mask == 0 for S in elements_of(1)]
    elif kind == "point-pencil":
        keep = [S.mask & p0 != 0 for S in elements_of(n)]
    elif kind == "one generator class":
        ref = g.reference_generator()
        keep = [(g.intersection_dim(S, ref) - n) % 2 == 0 for S in elements_of(n)]
    elif kind.startswith("point-pencil on type"):
        end = weyl.parse_node(desc, kind.rsplit(" ", 1)[1])
        keep = [S.mask & p0 != 0 for S in elements_of(end)]
    else:
        words = kind.split()
        end, other = weyl.parse_node(desc, words[1]), weyl.parse_node(desc, words[-2])
        M = g.subspaces_of_type(other)[0]
        need = (spec.q ** (n - 1) - 1) // (spec.q - 1)
        keep = [bin(S.mask & M.mask).count("1") == need for S in elements_of(end)]
    return np.flatnonzero(np.array(keep, dtype=bool))


def sharp_construction(spec: GeometrySpec, T, kind: str) -> list[Flag]:
    idx = construction_vertices(spec, T, kind)
    flags = enumerate_flags(spec, T)
    return [flags[i] for i in idx]


def verify_construction(spec: GeometrySpec, T, kind: str, graph=None) -> CheckReport:
    """The construction is a coclique whose size equals the closed-form bound."""
    desc = spec.descriptor
    T = weyl.type_subset(desc, T)
    graph = graph or build_opposition_graph(spec, T)
    idx = construction_vertices(spec, T, kind)
    report = hecke.ekr_bound(desc, spec.structure_constants, weyl.complement(desc, T))
    target = report.closed_form if report.closed_form is not None else report.bound
    coclique = graph.is_coclique(idx)
    sized = hecke.same_value(target, len(idx))
    failures = []
    if not coclique:
        failures.append("two flags of the construction are opposite")
    if not sized:
        failures.append(f"size {len(idx)} differs from the bound {target}")
    details = {"construction": kind, "size": int(len(idx)), "bound": str(target), "coclique": bool(coclique)}
    return CheckReport(f"{kind} in {spec} type {weyl.format_types(desc, T)}", not failures, details, failures)


# -- Hecke relations on PG(2,q) ---------------------------------------------------------------


def _relation_word(p1, l1, p2, l2, point_in_line) -> str:
    """Weyl element relating the maximal flags (p1, l1) and (p2, l2) of a projective plane."""
    if p1 == p2 and l1 == l2:
        return ""
    if l1 == l2:
        return "1"
    if p1 == p2:
        return "2"
    a, b = point_in_line(p1, l2), point_in_line(p2, l1)
    if b and not a:
        return "12"
    if a and not b:
        return "21"
    return "121"


def _element(desc: WeylDescriptor, word: str) -> SignedPermutation:
    gens = weyl.generators(desc)
    w = SignedPermutation.identity(desc.points)
    for ch in word:
        w = w * gens[int(ch) - 1]
    return w


def relation_matrices(spec: GeometrySpec) -> dict[str, np.ndarray]:
    """The six relation matrices A_w on maximal flags of PG(2,q), keyed by reduced word."""
    if spec.kind != "projective" or spec.rank != 2:
        raise ValueError("the relation census is implemented for projective planes only")
    g = geometry(spec)
    types, rows = flag_indices(spec, {1, 2})
    lines = g.subspaces(2)
    pts, lns = rows[:, 0], rows[:, 1]

    def point_in_line(p, l):
        return bool(lines[l].mask >> p & 1)

    words = ["", "1", "2", "12", "21", "121"]
    mats = {w: np.zeros((len(rows), len(rows)), dtype=np.int64) for w in words}
    for x, (p1, l1) in enumerate(zip(pts, lns)):
        for y, (p2, l2) in enumerate(zip(pts, lns)):
            mats[_relation_word(p1, l1, p2, l2, point_in_line)][x, y] = 1
    return mats


def verify_hecke_relations(spec: GeometrySpec) -> CheckReport:
    """Check A_s A_w = A_sw or q A_sw + (q-1) A_w on PG(2,q), and the class sizes."""
    if spec.kind != "projective" or spec.rank != 2 or spec.q not in (2, 3):
        raise ValueError("Hecke relations are checked on PG(2,2) and PG(2,3) only")
    q = spec.q
    desc = WeylDescriptor("A", 2)
    mats = relation_matrices(spec)
    by_elem = {_element(desc, w): w for w in mats}
    failures = []
    total = sum(mats.values())
    if not (total == 1).all():
        failures.append("the six relations do not partition the flag pairs")
    sizes = {w: sorted(set(M.sum(axis=1).tolist())) for w, M in mats.items()}
    expected_sizes = {"": 1, "1": q, "2": q, "12": q**2, "21": q**2, "121": q**3}
    for w, size in expected_sizes.items():
        if sizes[w] != [size]:
            failures.append(f"relation {w or 'id'} has row sums {sizes[w]}, expected {size}")
    identities = 0
    for s_word in ("1", "2"):
        s = _element(desc, s_word)
        for w_word, Aw in mats.items():
            w = _element(desc, w_word)
            sw = by_elem[s * w]
            lhs = mats[s_word] @ Aw
            if weyl.length(desc, s * w) > weyl.length(desc, w):
                rhs = mats[sw]
            else:
                rhs = q * mats[sw] + (q - 1) * Aw
            identities += 1
            if not np.array_equal(lhs, rhs):
                failures.append(f"A_s{s_word} A_{w_word or 'id'} != expected combination")
    details = {
        "flags": int(total.shape[0]),
        "class_sizes": {w or "id": sizes[w][0] for w in mats if len(sizes[w]) == 1},
        "identities_checked": identities,
        "q_s": q,
    }
    return CheckReport(f"Hecke relations on {spec}", not failures, details, failures)


__all__ = [
    "CheckReport",
    "verify_equitable_blowup",
    "construction_kinds",
    "construction_vertices",
    "sharp_construction",
    "verify_construction",
    "relation_matrices",
    "verify_hecke_relations",
]
