"""Irreducible characters of the Weyl groups A_n, B_n and D_n.

Labels:

* A_n: a partition of n+1.
* B_n: an ordered pair (mu, nu) of partitions with |mu| + |nu| = n.
* D_n: the restriction of (mu, nu) to D_n, which equals that of (nu, mu).  The
  pair is stored with the lexicographically larger partition first.  When
  mu = nu the restriction splits into two characters tagged "+" and "-"; the
  "+" half is the one that is larger on the class of unsigned permutations
  with all cycles of even length.

Character values come from the Murnaghan-Nakayama rule (for B_n a signed
cycle removes a rim hook from either diagram, with an extra sign when a
negative cycle is taken from the second one).  Induced trivial characters are
decomposed with Pieri's rule and can be cross-checked against the
inner-product oracle :func:`induce_trivial_oracle`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod
from typing import Iterable, Iterator, Optional

from . import weyl
from .weyl import SignedPermutation, WeylDescriptor

Partition = tuple  # non-increasing tuple of positive ints

PLUS, MINUS, BOTH = "plus", "minus", "both"


class Unsupported(NotImplementedError):
    """A character value outside the range this module can certify."""


# -- partitions -------------------------------------------------------------------


def partition(parts: Iterable[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts):
        raise ValueError(f"partition parts must be positive: {list(parts)}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"partition parts must be non-increasing: {list(parts)}")
    return parts


def partitions(n: int, largest: Optional[int] = None) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def bipartitions(n: int) -> Iterator[tuple[Partition, Partition]]:
    for k in range(n, -1, -1):
        for mu in partitions(k):
            for nu in partitions(n - k):
                yield mu, nu


def render_partition(mu: Partition) -> str:
    return "[" + ",".join(str(p) for p in mu) + "]"


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"expected a partition like [3,1], got {text!r}")
    body = text[1:-1].strip()
    return partition(int(x) for x in body.split(",")) if body else ()


def a_invariant(mu: Partition) -> int:
    return sum(i * p for i, p in enumerate(mu))


def a_star_invariant(mu: Partition) -> int:
    return sum(comb(p, 2) for p in mu)


def content_sum(mu: Partition) -> int:
    """a*(mu) - a(mu), the sum of the contents of the boxes of mu."""
    return a_star_invariant(mu) - a_invariant(mu)


def hook_dimension(mu: Partition) -> int:
    """Number of standard Young tableaux of shape mu."""
    n = sum(mu)
    conj = conjugate(mu)
    hooks = 1
    for i, row in enumerate(mu):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return factorial(n) // hooks


def conjugate(mu: Partition) -> Partition:
    return tuple(sum(1 for p in mu if p > j) for j in range(mu[0] if mu else 0))


def z_factor(mu: Partition) -> int:
    """Centralizer order of a permutation of cycle type mu."""
    return prod(p for p in mu) * prod(factorial(m) for m in Counter(mu).values())


# -- labels -----------------------------------------------------------------------


@dataclass(frozen=True)
class BiPartitionLabel:
    family: str
    mu: Partition
    nu: Partition = ()
    split: Optional[str] = None  # "+" or "-" for D labels with mu == nu

    def __post_init__(self):
        object.__setattr__(self, "mu", partition(self.mu))
        object.__setattr__(self, "nu", partition(self.nu))
        if self.family == "A":
            if self.nu or self.split:
                raise ValueError("type A labels are single partitions")
        elif self.family == "B":
            if self.split:
                raise ValueError("type B labels carry no split tag")
        elif self.family == "D":
            if self.mu < self.nu:
                mu, nu = self.nu, self.mu
                object.__setattr__(self, "mu", mu)
                object.__setattr__(self, "nu", nu)
            if (self.mu == self.nu) != (self.split is not None):
                raise ValueError("a D label needs a split tag exactly when both partitions agree")
            if self.split not in (None, "+", "-"):
                raise ValueError(f"split tag must be '+' or '-', got {self.split!r}")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def size(self) -> int:
        return sum(self.mu) + sum(self.nu)

    @property
    def rank(self) -> int:
        return self.size - 1 if self.family == "A" else self.size

    def descriptor(self) -> WeylDescriptor:
        return WeylDescriptor(self.family, self.rank)

    def __str__(self):
        if self.family == "A":
            return render_partition(self.mu)
        if self.split:
            return f"({render_partition(self.mu)},{self.split})"
        return f"({render_partition(self.mu)},{render_partition(self.nu)})"


def parse_label(family: str, text: str) -> BiPartitionLabel:
    text = text.replace(" ", "")
    if family == "A":
        return BiPartitionLabel("A", parse_partition(text))
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"expected a label like ([2,1],[1]), got {text!r}")
    left, _, right = text[1:-1].partition("],")
    mu = parse_partition(left + "]")
    if right in ("+", "-"):
        return BiPartitionLabel(family, mu, mu, right)
    return BiPartitionLabel(family, mu, parse_partition(right))


def trivial_label(desc: WeylDescriptor) -> BiPartitionLabel:
    n = desc.rank
    if desc.family == "A":
        return BiPartitionLabel("A", (n + 1,))
    return BiPartitionLabel(desc.family, (n,), ())


def reflection_label(desc: WeylDescriptor) -> BiPartitionLabel:
    n = desc.rank
    if desc.family == "A":
        return BiPartitionLabel("A", (n, 1))
    return BiPartitionLabel(desc.family, (n - 1,) if n > 1 else (), (1,))


def all_labels(desc: WeylDescriptor) -> list[BiPartitionLabel]:
    n = desc.rank
    if desc.family == "A":
        return [BiPartitionLabel("A", mu) for mu in partitions(n + 1)]
    if desc.family == "B":
        return [BiPartitionLabel("B", mu, nu) for mu, nu in bipartitions(n)]
    out = []
    for mu, nu in bipartitions(n):
        if mu > nu:
            out.append(BiPartitionLabel("D", mu, nu))
        elif mu == nu:
            out.append(BiPartitionLabel("D", mu, nu, "+"))
            out.append(BiPartitionLabel("D", mu, nu, "-"))
    return out


def _check_label(desc: WeylDescriptor, label: BiPartitionLabel) -> None:
    if label.family != desc.family or label.rank != desc.rank:
        raise ValueError(f"label {label} does not index a character of {desc}")


def dimension(label: BiPartitionLabel) -> int:
    if label.family == "A":
        return hook_dimension(label.mu)
    d = comb(label.size, sum(label.mu)) * hook_dimension(label.mu) * hook_dimension(label.nu)
    return d // 2 if label.split else d


# -- Murnaghan-Nakayama -------------------------------------------------------------


def _beta(mu: Partition, length: int) -> tuple[int, ...]:
    parts = list(mu) + [0] * (length - len(mu))
    return tuple(p + length - 1 - i for i, p in enumerate(parts))


def _from_beta(beta: Iterable[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    k = len(beta)
    return tuple(p for p in (b - (k - 1 - i) for i, b in enumerate(beta)) if p > 0)


@lru_cache(maxsize=None)
def rim_hooks(mu: Partition, r: int) -> tuple[tuple[Partition, int], ...]:
    """All (mu minus an r-rim-hook, leg length) pairs."""
    beta = _beta(mu, len(mu) + r)
    present = set(beta)
    out = []
    for b in beta:
        if b - r >= 0 and b - r not in present:
            height = sum(1 for x in beta if b - r < x < b)
            rest = _from_beta([x for x in beta if x != b] + [b - r])
            out.append((rest, height))
    return tuple(out)


@lru_cache(maxsize=None)
def _mn_a(mu: Partition, cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1 if not mu else 0
    r, rest = cycles[0], cycles[1:]
    return sum((-1) ** h * _mn_a(sub, rest) for sub, h in rim_hooks(mu, r))


@lru_cache(maxsize=None)
def _mn_b(mu: Partition, nu: Partition, cycles: tuple[tuple[int, int], ...]) -> int:
    # cycles are (length, sign) with sign +1 for positive cycles
    if not cycles:
        return 1 if not mu and not nu else 0
    (r, sign), rest = cycles[0], cycles[1:]
    total = 0
    for sub, h in rim_hooks(mu, r):
        total += (-1) ** h * _mn_b(sub, nu, rest)
    for sub, h in rim_hooks(nu, r):
        total += (-1) ** h * sign * _mn_b(mu, sub, rest)
    return total


def character_A(mu: Partition, cycle_type: Iterable[int]) -> int:
    """Value of the Sym(|mu|) character mu on a class given by its cycle type."""
    return _mn_a(tuple(mu), tuple(sorted(cycle_type, reverse=True)))


def character_B(mu: Partition, nu: Partition, pos: Iterable[int], neg: Iterable[int]) -> int:
    """Value of chi_(mu,nu) on the class with positive cycles pos and negative cycles neg."""
    cycles = tuple(sorted([(r, 1) for r in pos] + [(r, -1) for r in neg], reverse=True))
    return _mn_b(tuple(mu), tuple(nu), cycles)


def signed_cycle_type(w: SignedPermutation) -> tuple[Partition, Partition]:
    """(lengths of positive cycles, lengths of negative cycles) of w."""
    m = len(w.image)
    seen = [False] * (m + 1)
    pos, neg = [], []
    for start in range(1, m + 1):
        if seen[start]:
            continue
        i, length, sign = start, 0, 1
        while not seen[i]:
            seen[i] = True
            x = w(i)
            sign *= 1 if x > 0 else -1
            i = abs(x)
            length += 1
        (pos if sign > 0 else neg).append(length)
    return tuple(sorted(pos, reverse=True)), tuple(sorted(neg, reverse=True))


def split_class_sign(w: SignedPermutation) -> int:
    """+1 or -1 on the two D-classes into which an even B-class splits, else 0.

    A B-class splits in D_n exactly when all its cycles are positive and of
    even length.  The "+" class contains the unsigned permutations; an element
    lies in it when the diagonal sign change conjugating it to an unsigned
    permutation has an even number of -1 entries.
    """
    pos, neg = signed_cycle_type(w)
    if neg or any(r % 2 for r in pos):
        return 0
    m = len(w.image)
    d = [0] * (m + 1)
    for start in range(1, m + 1):
        if d[start]:
            continue
        d[start] = 1
        i = start
        while True:
            x = w(i)
            j = abs(x)
            if d[j]:
                break
            d[j] = d[i] * (1 if x > 0 else -1)
            i = j
    return 1 if sum(1 for s in d[1:] if s < 0) % 2 == 0 else -1


SPLIT_RANK_LIMIT = 6


def split_difference(mu: Partition, pos: Partition, class_sign: int) -> int:
    """chi_(mu,+) - chi_(mu,-) on a split class with positive cycles 2*rho."""
    if class_sign == 0:
        return 0
    rho = tuple(r // 2 for r in pos)
    return class_sign * 2 ** len(rho) * character_A(mu, rho)


def mn_character_value(label: BiPartitionLabel, w: SignedPermutation) -> int:
    desc = label.descriptor()
    weyl._check_member(desc, w)
    if label.family == "A":
        return character_A(label.mu, signed_cycle_type(w)[0])
    pos, neg = signed_cycle_type(w)
    value = character_B(label.mu, label.nu, pos, neg)
    if not label.split:
        return value
    sign = split_class_sign(w)
    if sign and desc.rank > SPLIT_RANK_LIMIT:
        raise Unsupported(
            f"split character {label} on a split class is only certified for rank <= {SPLIT_RANK_LIMIT}"
        )
    diff = split_difference(label.mu, pos, sign)
    half = value + diff if label.split == "+" else value - diff
    return half // 2


# -- central values and signs -----------------------------------------------------


def central_ratio_A(mu: Partition, n: int) -> Fraction:
    """chi_mu(r) / chi_mu(1) for a transposition r of Sym(n+1)."""
    if sum(mu) != n + 1:
        raise ValueError(f"{render_partition(mu)} is not a partition of n+1 = {n + 1}")
    return Fraction(content_sum(mu), n * (n + 1) // 2)


def central_values_B(mu: Partition, nu: Partition) -> tuple[int, int]:
    """Central character values (omega_s, omega_t) of chi_(mu,nu) on the two reflection classes."""
    return 2 * (content_sum(mu) + content_sum(nu)), sum(mu) - sum(nu)


def sign_at_w0(label: BiPartitionLabel) -> str:
    """Compare chi(w0) with chi(1): plus if equal, minus if opposite, both otherwise."""
    if label.family == "B":
        return PLUS if sum(label.nu) % 2 == 0 else MINUS
    desc = label.descriptor()
    value = mn_character_value(label, weyl.longest_word(desc))
    dim = dimension(label)
    if value == dim:
        return PLUS
    if value == -dim:
        return MINUS
    return BOTH


# -- induced trivial characters ----------------------------------------------------


@dataclass(frozen=True)
class InducedDecomposition:
    entries: tuple  # ((BiPartitionLabel, multiplicity), ...)

    def as_dict(self) -> dict[BiPartitionLabel, int]:
        return dict(self.entries)

    def labels(self) -> list[BiPartitionLabel]:
        return [lab for lab, _ in self.entries]

    def degree(self) -> int:
        return sum(m * dimension(lab) for lab, m in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def _label_order(desc: WeylDescriptor) -> dict[BiPartitionLabel, int]:
    return {lab: i for i, lab in enumerate(all_labels(desc))}


def _decomposition(desc: WeylDescriptor, mults: dict[BiPartitionLabel, int]) -> InducedDecomposition:
    order = _label_order(desc)
    items = sorted(((lab, m) for lab, m in mults.items() if m), key=lambda x: order[x[0]])
    if any(m < 0 for _, m in items):
        raise ArithmeticError(f"negative multiplicity in decomposition for {desc}")
    return InducedDecomposition(tuple(items))


@lru_cache(maxsize=None)
def horizontal_strips(mu: Partition, r: int) -> tuple[Partition, ...]:
    """Partitions obtained from mu by adding r boxes, no two in one column."""
    rows = list(mu) + [0]
    out = []

    def grow(i: int, left: int, acc: list[int]):
        if i == len(rows):
            if left == 0:
                out.append(tuple(p for p in acc if p))
            return
        cap = left if i == 0 else min(left, rows[i - 1] - rows[i])
        for extra in range(cap, -1, -1):
            grow(i + 1, left - extra, acc + [rows[i] + extra])

    grow(0, r, [])
    return tuple(out)


def type_blocks(desc: WeylDescriptor, J) -> tuple[list[int], int]:
    """Sizes of the symmetric factors of W_J and the rank of its B-type tail.

    Only for families A and B; the tail is 0 in type A.
    """
    T = sorted(weyl.node_index(desc, x) + 1 for x in weyl.complement(desc, J))
    n = desc.rank
    if desc.family == "A":
        cuts = [0] + T + [n + 1]
        return [b - a for a, b in zip(cuts, cuts[1:])], 0
    cuts = [0] + T
    return [b - a for a, b in zip(cuts, cuts[1:])], n - (T[-1] if T else 0)


def _pieri_A(blocks: list[int]) -> Counter:
    current = Counter({(): 1})
    for b in blocks:
        nxt: Counter = Counter()
        for mu, m in current.items():
            for lam in horizontal_strips(mu, b):
                nxt[lam] += m
        current = nxt
    return current


def _pieri_B(blocks: list[int], tail: int) -> Counter:
    current = Counter({((tail,) if tail else (), ()): 1})
    for b in blocks:
        nxt: Counter = Counter()
        for (mu, nu), m in current.items():
            for x in range(b + 1):
                for lam in horizontal_strips(mu, x):
                    for kap in horizontal_strips(nu, b - x):
                        nxt[(lam, kap)] += m
        current = nxt
    return current


def _young_even_average(mu: Partition, blocks: list[int]) -> Fraction:
    """Average of the split difference character over a Young subgroup of unsigned permutations."""
    total = Fraction(0)
    per_block = [[lam for lam in partitions(b) if all(p % 2 == 0 for p in lam)] for b in blocks]
    for choice in product(*per_block):
        cyc = tuple(sorted((p for lam in choice for p in lam), reverse=True))
        weight = Fraction(1, prod(z_factor(lam) for lam in choice))
        total += weight * split_difference(mu, cyc, 1)
    return total


def _d_to_b_cotype(desc: WeylDescriptor, J) -> tuple[frozenset, int]:
    """B_n cotype used to compute a D_n decomposition, and which end nodes J holds.

    The second value is 2 (both end nodes), 0 (neither), +1 (only n) or -1 (only n').
    """
    n = desc.rank
    J = frozenset(J)
    low = frozenset(x for x in J if isinstance(x, int) and x <= n - 2)
    has_n, has_np = n in J, f"{n}'" in J
    if has_n and has_np:
        return low | {n - 1, n}, 2
    if not has_n and not has_np:
        return low | {n}, 0
    return low | {n - 1}, (1 if has_n else -1)


def induce_trivial(desc: WeylDescriptor, J) -> InducedDecomposition:
    """Decompose the permutation character of W on W/W_J."""
    J = weyl.type_subset(desc, J)
    if desc.family == "A":
        blocks, _ = type_blocks(desc, J)
        counts = _pieri_A(blocks)
        return _decomposition(desc, {BiPartitionLabel("A", mu): m for mu, m in counts.items()})
    if desc.family == "B":
        blocks, tail = type_blocks(desc, J)
        counts = _pieri_B(blocks, tail)
        return _decomposition(desc, {BiPartitionLabel("B", mu, nu): m for (mu, nu), m in counts.items()})

    bdesc = WeylDescriptor("B", desc.rank)
    JB, ends = _d_to_b_cotype(desc, J)
    blocks, tail = type_blocks(bdesc, JB)
    counts = _pieri_B(blocks, tail)
    mults: dict[BiPartitionLabel, int] = Counter()
    for (mu, nu), m in counts.items():
        if mu != nu:
            mults[BiPartitionLabel("D", mu, nu)] += m
    if ends in (0, 2):
        for (mu, nu), m in counts.items():
            if mu == nu:
                mults[BiPartitionLabel("D", mu, mu, "+")] += m
                mults[BiPartitionLabel("D", mu, mu, "-")] += m
        return _decomposition(desc, dict(mults))
    # W_J is a B-parabolic inside D_n, so the B answer restricts to X + X^t
    out: dict[BiPartitionLabel, int] = {}
    for lab, m in mults.items():
        out[lab] = m // 2
    for (mu, nu), m in counts.items():
        if mu != nu:
            continue
        delta = ends * _young_even_average(mu, blocks)
        plus, minus = (m + delta) / 2, (m - delta) / 2
        if plus.denominator != 1 or minus.denominator != 1 or min(plus, minus) < 0:
            raise ArithmeticError(f"non-integral split multiplicity for {render_partition(mu)}")
        out[BiPartitionLabel("D", mu, mu, "+")] = int(plus)
        out[BiPartitionLabel("D", mu, mu, "-")] = int(minus)
    return _decomposition(desc, out)


def class_key(desc: WeylDescriptor, w: SignedPermutation) -> tuple:
    pos, neg = signed_cycle_type(w)
    return pos, neg, (split_class_sign(w) if desc.family == "D" else 0)


def induce_trivial_oracle(desc: WeylDescriptor, J) -> InducedDecomposition:
    """Multiplicities by averaging every character over W_J (Frobenius reciprocity)."""
    J = weyl.type_subset(desc, J)
    classes: Counter = Counter()
    reps = {}
    order = 0
    for w in weyl.parabolic_elements(desc, J):
        key = class_key(desc, w)
        classes[key] += 1
        reps.setdefault(key, w)
        order += 1
    mults = {}
    for lab in all_labels(desc):
        total = sum(c * mn_character_value(lab, reps[key]) for key, c in classes.items())
        if total % order:
            raise ArithmeticError(f"non-integral multiplicity {Fraction(total, order)} for {lab}")
        mults[lab] = total // order
    return _decomposition(desc, mults)
