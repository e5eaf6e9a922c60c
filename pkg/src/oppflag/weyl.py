"""Weyl groups of types A_n, B_n and D_n as (signed) permutation groups.

Type A_n is Sym(n+1) acting on 1..n+1.  Types B_n and D_n act on
{-n..-1, 1..n}; an element is stored by its images of 1..n and the image of
-i is -w(i).  Generators follow the Dynkin numbering:

* A_n: s_i = (i, i+1), i = 1..n
* B_n: s_i = (i, i+1)(-i, -i-1), i = 1..n-1, then t = (-n, n)
* D_n: s_1..s_{n-1}, then u = t s_{n-1} t

Node labels are 1..n, except in type D where the two end nodes are labelled
``n`` (generator s_{n-1}) and ``"n'"`` (generator u), e.g. ``4`` and ``"4'"``.

Lengths are counted as the number of positive roots sent to negative roots,
with e_i - e_j, e_i + e_j (i < j) and e_i (type B only) as positive roots.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Union

from . import budget

NodeLabel = Union[int, str]
TypeSubset = frozenset  # frozenset of NodeLabel


@dataclass(frozen=True)
class WeylDescriptor:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "B", "D"):
            raise ValueError(f"unknown Weyl family {self.family!r}; expected A, B or D")
        if not isinstance(self.rank, int):
            raise ValueError(f"rank must be an integer, got {self.rank!r}")
        least = 1 if self.family == "A" else 2
        if self.rank < least:
            raise ValueError(f"type {self.family} needs rank >= {least}, got {self.rank}")

    @property
    def points(self) -> int:
        """Number of letters the permutations act on (n+1 for A, n otherwise)."""
        return self.rank + 1 if self.family == "A" else self.rank

    @property
    def in_theorem_range(self) -> bool:
        return self.rank >= (4 if self.family == "D" else 3)

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class SignedPermutation:
    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(abs(x) for x in self.image) != list(range(1, len(self.image) + 1)):
            raise ValueError(f"{list(self.image)} is not a signed permutation")

    @classmethod
    def identity(cls, points: int) -> "SignedPermutation":
        return cls(tuple(range(1, points + 1)))

    def __call__(self, i: int) -> int:
        return self.image[i - 1] if i > 0 else -self.image[-i - 1]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        # composition: (self * other)(i) = self(other(i))
        return SignedPermutation(tuple(self(x) for x in other.image))

    def inverse(self) -> "SignedPermutation":
        inv = [0] * len(self.image)
        for i, x in enumerate(self.image, start=1):
            inv[abs(x) - 1] = i if x > 0 else -i
        return SignedPermutation(tuple(inv))

    @property
    def negatives(self) -> int:
        return sum(1 for x in self.image if x < 0)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.image, start=1))

    def __str__(self):
        return "[" + ", ".join(str(x) for x in self.image) + "]"


def _check_member(desc: WeylDescriptor, w: SignedPermutation) -> None:
    if len(w.image) != desc.points:
        raise ValueError(f"{w} does not act on {desc.points} points as {desc} requires")
    if desc.family == "A" and w.negatives:
        raise ValueError(f"{w} has sign changes and is not in {desc}")
    if desc.family == "D" and w.negatives % 2:
        raise ValueError(f"{w} has an odd number of sign changes and is not in {desc}")


def generators(desc: WeylDescriptor) -> list[SignedPermutation]:
    n, m = desc.rank, desc.points
    gens = []
    for i in range(1, n if desc.family != "A" else n + 1):
        img = list(range(1, m + 1))
        img[i - 1], img[i] = i + 1, i
        gens.append(SignedPermutation(tuple(img)))
    if desc.family in ("B", "D"):
        img = list(range(1, n + 1))
        img[n - 1] = -n
        t = SignedPermutation(tuple(img))
        gens.append(t if desc.family == "B" else t * gens[-1] * t)
    return gens


def node_labels(desc: WeylDescriptor) -> list[NodeLabel]:
    """Node labels in generator order."""
    n = desc.rank
    if desc.family == "D":
        return list(range(1, n - 1)) + [n, f"{n}'"]
    return list(range(1, n + 1))


def node_index(desc: WeylDescriptor, label: NodeLabel) -> int:
    labels = node_labels(desc)
    try:
        return labels.index(label)
    except ValueError:
        raise ValueError(f"{label!r} is not a node of {desc}; nodes are {labels}") from None


def parse_node(desc: WeylDescriptor, token: str | int) -> NodeLabel:
    """Parse ``"3"`` or ``"4'"`` into a node label of ``desc``."""
    if isinstance(token, int):
        label: NodeLabel = token
    else:
        token = token.strip()
        label = token if token.endswith("'") else int(token)
    node_index(desc, label)
    return label


def type_subset(desc: WeylDescriptor, labels) -> TypeSubset:
    out = frozenset(parse_node(desc, x) for x in labels)
    return out


def all_nodes(desc: WeylDescriptor) -> TypeSubset:
    return frozenset(node_labels(desc))


def complement(desc: WeylDescriptor, J) -> TypeSubset:
    return all_nodes(desc) - frozenset(J)


def sorted_nodes(desc: WeylDescriptor, J) -> list[NodeLabel]:
    return sorted(J, key=lambda x: node_index(desc, x))


def format_types(desc: WeylDescriptor, J) -> str:
    return "{" + ",".join(str(x) for x in sorted_nodes(desc, J)) + "}"


# -- lengths -----------------------------------------------------------------


def _root_is_negative(coeffs: dict[int, int]) -> bool:
    return coeffs[min(k for k, c in coeffs.items() if c)] < 0


def _image_of_root(w: SignedPermutation, i: int, j: int | None, sign: int) -> dict[int, int]:
    # image of e_i + sign * e_j (or of e_i when j is None)
    out: dict[int, int] = {}
    x = w(i)
    out[abs(x)] = 1 if x > 0 else -1
    if j is not None:
        y = w(j)
        out[abs(y)] = out.get(abs(y), 0) + (sign if y > 0 else -sign)
    return out


def length_parts(desc: WeylDescriptor, w: SignedPermutation) -> tuple[int, int]:
    """(number of s-type letters, number of t-type letters) in a reduced word.

    The t count is non-zero only in type B, where it equals the number of
    negative entries of ``w``.
    """
    _check_member(desc, w)
    m = desc.points
    long_roots = 0
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            if _root_is_negative(_image_of_root(w, i, j, -1)):
                long_roots += 1
            if desc.family != "A" and _root_is_negative(_image_of_root(w, i, j, +1)):
                long_roots += 1
    short = w.negatives if desc.family == "B" else 0
    return long_roots, short


def length(desc: WeylDescriptor, w: SignedPermutation) -> int:
    s, t = length_parts(desc, w)
    return s + t


def weighted_length(desc: WeylDescriptor, w: SignedPermutation, e) -> Fraction:
    """Length where t counts ``e`` and every other generator counts 1."""
    s, t = length_parts(desc, w)
    return s + Fraction(e) * t


def longest_word(desc: WeylDescriptor) -> SignedPermutation:
    n, m = desc.rank, desc.points
    if desc.family == "A":
        return SignedPermutation(tuple(m + 1 - i for i in range(1, m + 1)))
    img = [-i for i in range(1, n + 1)]
    if desc.family == "D" and n % 2:
        img[-1] = n
    return SignedPermutation(tuple(img))


def w0_action_on_types(desc: WeylDescriptor, J) -> TypeSubset:
    """Image of a set of nodes under conjugation by the longest word."""
    n = desc.rank
    out = set()
    for x in J:
        node_index(desc, x)
        if desc.family == "A":
            out.add(n + 1 - x)
        elif desc.family == "D" and n % 2 and x in (n, f"{n}'"):
            out.add(f"{n}'" if x == n else n)
        else:
            out.add(x)
    return frozenset(out)


def is_self_opposite(desc: WeylDescriptor, J) -> bool:
    return w0_action_on_types(desc, J) == frozenset(J)


# -- enumeration ---------------------------------------------------------------


def _closure(gens: list[SignedPermutation], points: int) -> Iterator[SignedPermutation]:
    start = SignedPermutation.identity(points)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        yield w
        for s in gens:
            x = s * w
            if x not in seen:
                seen.add(x)
                queue.append(x)


def group_order(desc: WeylDescriptor) -> int:
    n = desc.rank
    if desc.family == "A":
        return factorial(n + 1)
    if desc.family == "B":
        return 2**n * factorial(n)
    return 2 ** (n - 1) * factorial(n)


def elements(desc: WeylDescriptor) -> Iterator[SignedPermutation]:
    budget.check("group", group_order(desc))
    return _closure(generators(desc), desc.points)


def word_lengths(desc: WeylDescriptor) -> dict[SignedPermutation, int]:
    """Breadth-first word lengths over the generators (test oracle)."""
    budget.check("group", group_order(desc))
    gens = generators(desc)
    start = SignedPermutation.identity(desc.points)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for s in gens:
            x = w * s
            if x not in dist:
                dist[x] = dist[w] + 1
                queue.append(x)
    return dist


def generator_class_data(desc: WeylDescriptor) -> list[tuple[SignedPermutation, int]]:
    """Representatives and sizes of the conjugacy classes meeting the generators.

    Class sizes come from the conjugation orbit of each generator, which has at
    most n(n+1)/2 elements, so this is cheap at every rank.
    """
    gens = generators(desc)
    classes: list[tuple[SignedPermutation, set]] = []
    for s in gens:
        if any(s in orbit for _, orbit in classes):
            continue
        orbit = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = g * x * g
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        classes.append((s, orbit))
    return [(rep, len(orbit)) for rep, orbit in classes]


def is_t_class(desc: WeylDescriptor, rep: SignedPermutation) -> bool:
    """True for the class of short-root reflections (t) in type B."""
    return desc.family == "B" and rep.negatives == 1


# -- parabolic subgroups --------------------------------------------------------


def _edges(desc: WeylDescriptor) -> set[tuple[NodeLabel, NodeLabel]]:
    n = desc.rank
    labels = node_labels(desc)
    edges = set()
    if desc.family == "D":
        chain = labels[: n - 2]
        for a, b in zip(chain, chain[1:]):
            edges.add((a, b))
        if n >= 3:
            edges.add((n - 2, n))
            edges.add((n - 2, f"{n}'"))
    else:
        for a, b in zip(labels, labels[1:]):
            edges.add((a, b))
    return edges | {(b, a) for a, b in edges}


def parabolic_components(desc: WeylDescriptor, J) -> list[tuple[str, int, list[NodeLabel]]]:
    """Irreducible factors of W_J as (family, rank, nodes), in node order."""
    J = frozenset(J)
    for x in J:
        node_index(desc, x)
    edges = _edges(desc)
    n = desc.rank
    seen: set = set()
    comps = []
    for start in sorted_nodes(desc, J):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            a = stack.pop()
            for b in J:
                if b not in seen and (a, b) in edges:
                    seen.add(b)
                    comp.append(b)
                    stack.append(b)
        comp = sorted_nodes(desc, comp)
        k = len(comp)
        if desc.family == "B" and n in comp:
            kind = "B"
        elif desc.family == "D" and n >= 3 and {n - 2, n, f"{n}'"} <= set(comp):
            kind = "D"
        else:
            kind = "A"
        comps.append((kind, k, comp))
    return comps


def _component_order(kind: str, k: int) -> int:
    if kind == "A":
        return factorial(k + 1)
    if kind == "B":
        return 2**k * factorial(k)
    return 2 ** (k - 1) * factorial(k)


def parabolic_order(desc: WeylDescriptor, J) -> int:
    out = 1
    for kind, k, _ in parabolic_components(desc, J):
        out *= _component_order(kind, k)
    return out


def parabolic_elements(desc: WeylDescriptor, J) -> Iterator[SignedPermutation]:
    budget.check("group", parabolic_order(desc, J))
    gens = generators(desc)
    sub = [gens[node_index(desc, x)] for x in sorted_nodes(desc, J)]
    return _closure(sub, desc.points)


def parabolic_longest_parts(desc: WeylDescriptor, J) -> tuple[int, int]:
    """(s-letters, t-letters) in the longest word of W_J."""
    s_len = t_len = 0
    for kind, k, _ in parabolic_components(desc, J):
        if kind == "A":
            s_len += k * (k + 1) // 2
        elif kind == "B":
            s_len += k * (k - 1)
            t_len += k
        else:
            s_len += k * (k - 1)
    return s_len, t_len


def parabolic_longest_weighted_length(desc: WeylDescriptor, J, e=1) -> Fraction:
    s_len, t_len = parabolic_longest_parts(desc, J)
    return s_len + Fraction(e) * t_len
