"""Exact spectrum certification through annihilating polynomials.

Each predicted eigenvalue contributes an integer factor: A - lambda I for an
integral value, A^2 - q^(2x) I for a pair +-q^x with x a half-integer.  The
product is evaluated modulo enough primes that a zero residue everywhere
forces the integer matrix to vanish.  A factor counts as realized when the
product of the remaining factors is nonzero: its columns then lie in the
kernel of that factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from .. import hecke
from ..chars import MINUS
from .graph import OppositionGraph

_PRIMES = [p for p in sympy.primerange(30000, 32768)][::-1]


@dataclass(frozen=True)
class Factor:
    """Polynomial a_0 + a_1 x + x^deg in A, with the eigenvalues it covers."""

    coeffs: tuple  # (c0, c1) for x^2 + c1 x + c0, or (c0,) for x + c0
    roots: tuple  # exact sympy values
    eigenvalues: tuple  # (OppositionEigenvalue, ...) that produced it

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def norm_bound(self, k: int) -> int:
        """Upper bound for the max row sum of this factor evaluated at A."""
        if self.degree == 1:
            return k + abs(self.coeffs[0])
        return k * k + abs(self.coeffs[1]) * k + abs(self.coeffs[0])

    def describe(self) -> str:
        if self.degree == 1:
            c = -self.coeffs[0]
            return f"(A - {c}I)" if c >= 0 else f"(A + {-c}I)"
        return f"(A^2 - {-self.coeffs[0]}I)"


@dataclass
class SpectrumReport:
    passed: bool
    annihilated: bool
    factors: list
    realized: list
    unrealized: list
    primes: int
    valency: int
    predicted_valency: object
    notes: list = field(default_factory=list)
    family: str = "B"
    q: int = 2
    e: Fraction = Fraction(0)

    def to_json(self) -> dict:
        return {
            "spectrum_verified": self.passed,
            "annihilated": self.annihilated,
            "factors": [f.describe() for f in self.factors],
            "realized_eigenvalues": [str(x) for x in self.realized],
            "unrealized_eigenvalues": [x.render(self.family, self.q, self.e) for x in self.unrealized],
            "valency": self.valency,
            "notes": list(self.notes),
        }


def factors_for(evs, q: int, e=0) -> list[Factor]:
    """Integer factors covering the predicted values, one per distinct value or conjugate pair."""
    values: dict = {}
    for ev in evs:
        for s in ev.signs():
            x = ev.exponent(e)
            values.setdefault((s, x), []).append(ev)
    out = []
    done = set()
    for (s, x), src in sorted(values.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if (s, x) in done:
            continue
        twice = 2 * x
        if twice.denominator != 1:
            raise ValueError(f"exponent {x} is not a half-integer")
        if x.denominator == 1:
            val = s * q ** int(x)
            out.append(Factor((-val,), (sympy.Integer(val),), tuple(src)))
            done.add((s, x))
        else:
            c = q ** int(twice)
            r = sympy.sqrt(sympy.Integer(c))
            if r.is_integer:
                val = s * int(r)
                out.append(Factor((-val,), (sympy.Integer(val),), tuple(src)))
                done.add((s, x))
                continue
            pair = tuple(src) + tuple(values.get((-s, x), []))
            out.append(Factor((-c, 0), (r, -r), pair))
            done.update({(1, x), (-1, x)})
    return out


def _eval_mod(A: np.ndarray, f: Factor, p: int) -> np.ndarray:
    n = A.shape[0]
    eye = np.eye(n)
    if f.degree == 1:
        return (A + (f.coeffs[0] % p) * eye) % p
    A2 = (A @ A) % p
    return (A2 + (f.coeffs[1] % p) * A + (f.coeffs[0] % p) * eye) % p


def _product_mod(mats, p):
    out = None
    for M in mats:
        out = M if out is None else (out @ M) % p
    return out


def verify_spectrum(graph: OppositionGraph, predicted, q: int, e=0) -> SpectrumReport:
    """Certify that the adjacency spectrum is exactly the predicted set of values.

    A prediction with undetermined sign (``both``) counts as realized when at
    least one of its two values is an eigenvalue; a quadratic factor for an
    irrational pair is realized as a whole since the roots are conjugate.
    """
    e = Fraction(e)
    evs = hecke.distinct_eigenvalues(predicted)
    factors = factors_for(evs, q, e)
    k = graph.valency
    A = graph.adjacency.astype(np.float64)
    top = max(evs, key=lambda ev: (ev.sign != MINUS, ev.exponent(e)))
    predicted_valency = top.values(q, e)[0]
    notes = []
    if predicted_valency != k:
        notes.append(f"valency {k} differs from the predicted largest eigenvalue {predicted_valency}")
    bound = 1
    for f in factors:
        bound *= f.norm_bound(k)
    # primes below 2^15 keep float64 matrix products of up to 8192 rows exact
    if graph.order > 8192:
        raise ValueError("graph too large for the float64 modular products")
    primes, modulus = [], 1
    while modulus <= 2 * bound:
        primes.append(_PRIMES[len(primes)])
        modulus *= primes[-1]
    annihilated = True
    found = [False] * len(factors)
    for n_prime, p in enumerate(primes):
        mats = [_eval_mod(A, f, p) for f in factors]
        if n_prime == 0:
            prefix = [None]
            for M in mats:
                prefix.append(M if prefix[-1] is None else (prefix[-1] @ M) % p)
            suffix = [None] * (len(mats) + 1)
            for i in range(len(mats) - 1, -1, -1):
                suffix[i] = mats[i] if suffix[i + 1] is None else (mats[i] @ suffix[i + 1]) % p
            total = prefix[-1]
            for i in range(len(mats)):
                rest = _product_mod([M for M in (prefix[i], suffix[i + 1]) if M is not None], p)
                found[i] = graph.order > 0 if rest is None else bool(rest.any())
        else:
            total = _product_mod(mats, p)
            for i in range(len(mats)):
                if not found[i]:
                    rest = _product_mod(mats[:i] + mats[i + 1 :], p)
                    found[i] = graph.order > 0 if rest is None else bool(rest.any())
        if total.any():
            annihilated = False
            break
    realized_values = [r for f, ok in zip(factors, found) if ok for r in f.roots]
    realized, unrealized = [], []
    for ev in evs:
        hit = any(ok and ev in f.eigenvalues for f, ok in zip(factors, found))
        (realized if hit else unrealized).append(ev)
    if not annihilated:
        notes.append("the product of the predicted factors does not vanish: some eigenvalue is missing")
    if unrealized:
        notes.append("some predicted eigenvalues do not occur in this graph")
    unused = [r for f, ok in zip(factors, found) if not ok for r in f.roots]
    if unused and not unrealized:
        notes.append("undetermined signs resolved: " + ", ".join(str(r) for r in unused) + " not attained")
    passed = annihilated and not unrealized and predicted_valency == k
    return SpectrumReport(
        passed, annihilated, factors, realized_values, unrealized, len(primes), k, predicted_valency, notes,
        family=graph.spec.descriptor.family if graph.spec is not None else "B", q=q, e=e,
    )


def predicted_for(spec, T) -> list:
    """Predicted opposition eigenvalues for flags of type T in a geometry."""
    from .. import weyl

    desc = spec.descriptor
    J = weyl.complement(desc, weyl.type_subset(desc, T))
    return hecke.eigenvalues_partial(desc, spec.structure_constants, J)
