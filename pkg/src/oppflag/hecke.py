"""Eigenvalues of opposition and Delsarte-Hoffman bounds for flags.

Eigenvalues are kept symbolic as ``sign * q^(a + b*e)`` where ``e`` is the
polar parameter (``b`` is zero outside type B).  Maximal flags use the
character recipe: ``e_r = |r^W| (1 + chi(r)/chi(1))`` per class of
generators, the sign from ``chi(w0)`` against ``chi(1)``.  Partial flags of
cotype ``J`` take the constituents of the permutation character on W/W_J and
divide by ``q^l`` with ``l`` the weighted length of the longest word of W_J.

Exact values (including surds such as ``2**(3/2)``) are produced with sympy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional

import sympy

from . import chars, weyl
from .chars import BOTH, MINUS, PLUS, BiPartitionLabel
from .weyl import WeylDescriptor

E_TOKENS = {"0": Fraction(0), "1/2": Fraction(1, 2), "1": Fraction(1), "3/2": Fraction(3, 2), "2": Fraction(2)}
SIGN_SYMBOL = {PLUS: "+", MINUS: "-", BOTH: "±"}


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


class NotSelfOpposite(ValueError):
    def __init__(self, desc: WeylDescriptor, J, image, what: str = "cotype"):
        self.image = image
        super().__init__(
            f"{what} {weyl.format_types(desc, J)} is not self-opposite in {desc}: "
            f"w0 maps it to {weyl.format_types(desc, image)}"
        )


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True


@dataclass(frozen=True)
class StructureConstants:
    q: int
    e: Optional[Fraction] = None  # polar parameter; None in type A

    def __post_init__(self):
        if not isinstance(self.q, int) or not is_prime_power(self.q):
            raise ValueError(f"q must be a prime power >= 2, got {self.q!r}")
        if self.e is not None:
            e = Fraction(self.e)
            if e not in E_TOKENS.values():
                raise ValueError(f"e must be one of 0, 1/2, 1, 3/2, 2; got {self.e}")
            object.__setattr__(self, "e", e)

    @classmethod
    def for_family(cls, family: str, q: int, e=None) -> "StructureConstants":
        if family == "A":
            return cls(q, None)
        if family == "D":
            return cls(q, Fraction(0))
        if e is None:
            raise ValueError("type B needs the polar parameter e")
        return cls(q, Fraction(e))

    @property
    def e_value(self) -> Fraction:
        return self.e if self.e is not None else Fraction(0)


def format_e(e: Optional[Fraction]) -> Optional[str]:
    return None if e is None else str(Fraction(e))


def q_power(q: int, x) -> int:
    """q**x as an exact integer; half-integer x needs q to be a square."""
    x = Fraction(x)
    if x.denominator == 1:
        return q ** int(x)
    r = isqrt(q)
    if x.denominator != 2 or r * r != q:
        raise ValueError(f"q^{x} is not an integer for q = {q}; half-integer e needs a square q")
    return r ** int(2 * x)


def exact_power(q: int, x):
    """q**x as an exact sympy number (a surd for half-integer x)."""
    return sympy.Integer(q) ** sympy.Rational(Fraction(x).numerator, Fraction(x).denominator)


@dataclass(frozen=True, order=True)
class OppositionEigenvalue:
    sign: str
    exp_int: Fraction
    exp_e: int = 0

    def __post_init__(self):
        if self.sign not in (PLUS, MINUS, BOTH):
            raise ValueError(f"bad sign {self.sign!r}")
        object.__setattr__(self, "exp_int", Fraction(self.exp_int))
        if (2 * self.exp_int).denominator != 1:
            raise ValueError(f"exponent {self.exp_int} is not a half-integer")

    def exponent(self, e=0) -> Fraction:
        return self.exp_int + self.exp_e * Fraction(e)

    def signs(self) -> tuple[int, ...]:
        return {PLUS: (1,), MINUS: (-1,), BOTH: (1, -1)}[self.sign]

    def values(self, q: int, e=0) -> list:
        base = exact_power(q, self.exponent(e))
        return [s * base for s in self.signs()]

    def shifted(self, a, b=0) -> "OppositionEigenvalue":
        return OppositionEigenvalue(self.sign, self.exp_int - Fraction(a), self.exp_e - b)

    def exp_string(self, family: str) -> str:
        a = self.exp_int
        return f"{a}+{self.exp_e}*e" if family == "B" else f"{a}"

    def to_json(self, family: str, q: int, e=0) -> dict:
        vals = self.values(q, e)
        return {
            "sign": SIGN_SYMBOL[self.sign],
            "exp": self.exp_string(family),
            "value": " or ".join(str(v) for v in vals),
        }

    def render(self, family: str, q: int, e=0) -> str:
        vals = self.values(q, e)
        if len(vals) == 2:
            return f"±{vals[0]}"
        return str(vals[0])


# -- eigenvalue of one irreducible: central characters -------------------------------


def _exponent_closed(desc: WeylDescriptor, label: BiPartitionLabel) -> Optional[tuple[Fraction, int]]:
    n = desc.rank
    if desc.family == "A":
        return Fraction(n * (n + 1) // 2 + chars.content_sum(label.mu), 2), 0
    if desc.family == "D" and n < 3 and label.split:
        return None  # the reflections form split classes only in D_2
    base = Fraction(n * (n - 1), 2) + chars.content_sum(label.mu) + chars.content_sum(label.nu)
    if desc.family == "B":
        return base, sum(label.mu)
    return base, 0


def exponent_from_characters(desc: WeylDescriptor, label: BiPartitionLabel) -> tuple[Fraction, int]:
    """(a, b) computed directly from character values at the generator classes."""
    dim = chars.dimension(label)
    a, b = Fraction(0), Fraction(0)
    for rep, size in weyl.generator_class_data(desc):
        e_r = size * (1 + Fraction(chars.mn_character_value(label, rep), dim))
        if weyl.is_t_class(desc, rep):
            b += e_r / 2
        else:
            a += e_r / 2
    if b.denominator != 1:
        raise ConsistencyError(f"non-integral t-exponent {b} for {label}")
    return a, int(b)


def eigenvalue_maximal(desc: WeylDescriptor, sc: StructureConstants, label: BiPartitionLabel) -> OppositionEigenvalue:
    chars._check_label(desc, label)
    exps = _exponent_closed(desc, label)
    if exps is None:
        exps = exponent_from_characters(desc, label)
    a, b = exps
    return OppositionEigenvalue(chars.sign_at_w0(label), a, b)


# -- eigenvalues for a cotype: induced decomposition -----------------------------------


@dataclass(frozen=True)
class SpectrumEntry:
    label: BiPartitionLabel
    multiplicity: int  # multiplicity of the label in the permutation character
    eigenvalue: OppositionEigenvalue


def require_self_opposite(desc: WeylDescriptor, J) -> frozenset:
    J = weyl.type_subset(desc, J)
    image = weyl.w0_action_on_types(desc, J)
    if image != J:
        raise NotSelfOpposite(desc, J, image)
    return J


def eigenvalues_partial(desc: WeylDescriptor, sc: StructureConstants, J) -> list[SpectrumEntry]:
    """One entry per constituent of the permutation character on flags of cotype J."""
    J = require_self_opposite(desc, J)
    s_len, t_len = weyl.parabolic_longest_parts(desc, J)
    out = []
    for label, mult in chars.induce_trivial(desc, J):
        lam = eigenvalue_maximal(desc, sc, label)
        out.append(SpectrumEntry(label, mult, lam.shifted(s_len, t_len)))
    return out


def distinct_eigenvalues(entries) -> list[OppositionEigenvalue]:
    seen = []
    for x in entries:
        ev = x.eigenvalue if isinstance(x, SpectrumEntry) else x
        if ev not in seen:
            seen.append(ev)
    return seen


def value_multiset(evs, e) -> list[tuple[int, Fraction]]:
    """Sorted (sign, exponent) pairs of a list of eigenvalues at parameter e."""
    out = []
    for ev in evs:
        for s in ev.signs():
            out.append((s, ev.exponent(e)))
    return sorted(out)


def _most_negative(evs, e) -> Optional[OppositionEigenvalue]:
    best = None
    for ev in evs:
        if ev.sign == PLUS:
            continue
        if best is None or ev.exponent(e) > best.exponent(e):
            best = ev
    return best


def _predicted_smallest(desc: WeylDescriptor, sc: StructureConstants, J) -> Optional[BiPartitionLabel]:
    n = desc.rank
    if desc.family == "A":
        return chars.reflection_label(desc)
    if desc.family == "B":
        if sc.e_value in (0, Fraction(1, 2)) and n % 2 and n not in J:
            return BiPartitionLabel("B", (), (n,))
        return chars.reflection_label(desc)
    if n < 3:
        return None
    return chars.reflection_label(desc)


def extreme_eigenvalues(desc: WeylDescriptor, sc: StructureConstants, J) -> tuple[OppositionEigenvalue, OppositionEigenvalue]:
    """(largest, smallest) eigenvalue on flags of cotype J.

    The smallest is the most negative candidate; if its sign is undetermined
    the minus branch is the one that matters for the bound.
    """
    entries = eigenvalues_partial(desc, sc, J)
    J = frozenset(J)
    e = sc.e_value
    by_label = {x.label: x.eigenvalue for x in entries}
    largest = by_label[chars.trivial_label(desc)]
    top = max(ev.exponent(e) for ev in by_label.values())
    if largest.sign != PLUS or largest.exponent(e) != top:
        raise ConsistencyError(f"trivial label does not give the largest eigenvalue for {desc}, J={sorted(map(str, J))}")
    smallest = _most_negative(by_label.values(), e)
    if smallest is None:
        raise ValueError(f"no negative eigenvalue for {desc} with cotype {weyl.format_types(desc, J)}")
    predicted = _predicted_smallest(desc, sc, J)
    if predicted is not None:
        if predicted not in by_label:
            raise ConsistencyError(f"{predicted} is missing from the decomposition for cotype {weyl.format_types(desc, J)}")
        guess = by_label[predicted]
        if guess.sign == PLUS or guess.exponent(e) != smallest.exponent(e):
            raise ConsistencyError(
                f"case analysis picks {predicted} = {guess} but the full list has {smallest} for {desc}"
            )
        smallest = guess
    return largest, smallest


# -- bounds and counts ------------------------------------------------------------------


def hoffman_bound(v, k, alpha):
    """v / (1 - k/alpha) computed exactly."""
    v, k, alpha = sympy.sympify(v), sympy.sympify(k), sympy.sympify(alpha)
    if not alpha.is_negative:
        raise ValueError(f"the smallest eigenvalue must be negative, got {alpha}")
    if not k.is_positive:
        raise ValueError(f"the valency must be positive, got {k}")
    return canonical(v / (1 - k / alpha))


def canonical(x):
    """Exact value with a rationalized denominator, so equal values print alike."""
    return sympy.nsimplify(sympy.radsimp(sympy.sympify(x)))


def same_value(x, y) -> bool:
    return sympy.simplify(sympy.sympify(x) - sympy.sympify(y)) == 0


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def q_multinomial(n: int, parts, q: int) -> int:
    out, left = 1, n
    for p in parts:
        out *= gaussian_binomial(left, p, q)
        left -= p
    return out


def _chain_parts(dims: list[int], top: int) -> list[int]:
    cuts = [0] + sorted(dims) + [top]
    return [b - a for a, b in zip(cuts, cuts[1:]) if b - a]


def polar_subspace_count(n: int, k: int, q: int, e) -> int:
    """Totally isotropic k-spaces in a polar space of rank n with parameter e."""
    out = gaussian_binomial(n, k, q)
    for i in range(1, k + 1):
        out *= q_power(q, n + Fraction(e) - i) + 1
    return out


def count_flags(desc: WeylDescriptor, sc: StructureConstants, T) -> int:
    """Number of flags of type T."""
    T = weyl.type_subset(desc, T)
    n, q = desc.rank, sc.q
    if not T:
        return 1
    if desc.family == "A":
        return q_multinomial(n + 1, _chain_parts(list(T), n + 1), q)
    if desc.family == "B":
        top = max(T)
        return polar_subspace_count(n, top, q, sc.e_value) * q_multinomial(top, _chain_parts([t for t in T if t != top], top), q)
    ends = [x for x in T if x in (n, f"{n}'")]
    dims = {x for x in T if x not in ends}
    if ends:
        dims.add(n)
    if len(ends) == 2:
        dims.add(n - 1)
    bdesc = WeylDescriptor("B", n)
    total = count_flags(bdesc, StructureConstants(q, Fraction(0)), dims)
    return total // 2 if ends else total


# -- reports --------------------------------------------------------------------------


@dataclass
class BoundReport:
    family: str
    rank: int
    q: int
    e: Optional[Fraction]
    type: list
    cotype: list
    v: int
    valency: OppositionEigenvalue
    lambda_min: OppositionEigenvalue
    bound: object  # exact sympy number
    closed_form: object = None
    sharp_constructions: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def k_value(self):
        return self.valency.values(self.q, self.e or 0)[0]

    @property
    def alpha_value(self):
        return min(self.lambda_min.values(self.q, self.e or 0))

    @property
    def bound_floor(self) -> int:
        return int(sympy.floor(self.bound))

    def to_json(self) -> dict:
        e = self.e or 0
        return {
            "family": self.family,
            "rank": self.rank,
            "q": self.q,
            "e": format_e(self.e) if self.family == "B" else None,
            "type": [str(x) for x in self.type],
            "cotype": [str(x) for x in self.cotype],
            "v": self.v,
            "valency": self.valency.to_json(self.family, self.q, e),
            "lambda_min": self.lambda_min.to_json(self.family, self.q, e),
            "bound": str(self.bound),
            "bound_floor": self.bound_floor,
            "closed_form": None if self.closed_form is None else str(self.closed_form),
            "sharp_constructions": [dict(c) for c in self.sharp_constructions],
            "warnings": list(self.warnings),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False, ensure_ascii=False)


def closed_form_bound(desc: WeylDescriptor, sc: StructureConstants, J, v: int):
    n, q, e = desc.rank, sc.q, sc.e_value
    if desc.family == "A":
        return v / (1 + exact_power(q, Fraction(n + 1, 2)))
    if desc.family == "D":
        return sympy.Integer(v) / (1 + q ** (n - 1))
    if e <= Fraction(1, 2) and n % 2 and n not in J:
        return sympy.Integer(v) / 2 if e == 0 else v / (1 + exact_power(q, Fraction(n, 2)))
    return v / (1 + exact_power(q, n + e - 1))


def sharp_constructions(desc: WeylDescriptor, sc: StructureConstants, T, v: int, bound) -> list[dict]:
    """Known EKR-sets of flags of type T meeting the bound, with their sizes."""
    n, q, e = desc.rank, sc.q, sc.e_value
    T = frozenset(T)
    found = []
    if desc.family == "A":
        if n % 2 and (n + 1) // 2 in T:
            size = sympy.Integer(v) / (1 + q ** ((n + 1) // 2))
            found += [("fixed-point pencil", size), ("fixed-hyperplane", size)]
    elif desc.family == "B":
        if 1 in T:
            found.append(("point in a fixed generator", v / (1 + exact_power(q, n + e - 1))))
        if n in T and (e >= 1 or n % 2 == 0):
            found.append(("point-pencil", v / (1 + exact_power(q, n + e - 1))))
        if n in T and e == 0 and n % 2:
            found.append(("one generator class", sympy.Integer(v) / 2))
    else:
        size = sympy.Integer(v) / (1 + q ** (n - 1))
        if 1 in T:
            found.append(("point in a fixed generator", size))
        for end, other in ((n, f"{n}'"), (f"{n}'", n)):
            if end in T and n % 2 == 0:
                found.append((f"point-pencil on type {end}", size))
            if end in T and n == 4:
                found.append((f"type {end} incident with a fixed type {other} subspace", size))
    out = []
    for name, size in found:
        if same_value(size, bound) and size.is_integer:
            out.append({"name": name, "size": int(size)})
    return out


def ekr_bound(desc: WeylDescriptor, sc: StructureConstants, J) -> BoundReport:
    """Delsarte-Hoffman bound for EKR-sets of flags of cotype J."""
    J = require_self_opposite(desc, J)
    T = weyl.complement(desc, J)
    warnings = []
    if not desc.in_theorem_range:
        least = 4 if desc.family == "D" else 3
        warnings.append(f"outside the proven range: the bound theorems assume rank >= {least} for type {desc.family}")
    v = count_flags(desc, sc, T)
    largest, smallest = extreme_eigenvalues(desc, sc, J)
    e = sc.e_value
    k = largest.values(sc.q, e)[0]
    alpha = min(smallest.values(sc.q, e))
    if smallest.sign == BOTH:
        warnings.append("smallest eigenvalue has undetermined sign; its minus branch is used, which can only weaken the bound")
    bound = hoffman_bound(v, k, alpha)
    closed = canonical(closed_form_bound(desc, sc, J, v))
    if not same_value(bound, closed):
        if desc.in_theorem_range:
            raise ConsistencyError(f"Hoffman bound {bound} differs from the closed form {closed}")
        warnings.append(f"closed form {closed} does not apply at this rank")
        closed = None
    if desc.family == "A" and J and len(T) == 2 and T == {1, desc.rank}:
        warnings.append("known maximal EKR-sets of type {1,n} have size of order (n-1)q^(n-2), far below this bound")
    report = BoundReport(
        family=desc.family,
        rank=desc.rank,
        q=sc.q,
        e=sc.e if desc.family == "B" else None,
        type=weyl.sorted_nodes(desc, T),
        cotype=weyl.sorted_nodes(desc, J),
        v=v,
        valency=largest,
        lambda_min=smallest,
        bound=bound,
        closed_form=closed,
        sharp_constructions=sharp_constructions(desc, sc, T, v, bound),
        warnings=warnings,
    )
    if not report.sharp_constructions:
        report.warnings.append("no known construction meets this bound")
    return report


def polar_single_type_spectrum(n: int, e, k: int, q: int) -> list[OppositionEigenvalue]:
    """Closed-form eigenvalues of opposition on k-spaces of a rank n polar space."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    StructureConstants(q, Fraction(e))
    out = []
    for d in range(k + 1):
        for i in range(min(n - k, d) + 1):
            a = n * (d + k - i) + (k - d) * (k - d + i) - Fraction(k * (3 * k + 1), 2) + i * (i - 1)
            out.append(OppositionEigenvalue(PLUS if (k - d) % 2 == 0 else MINUS, a, d))
    return out
