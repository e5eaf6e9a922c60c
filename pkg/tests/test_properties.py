from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oppflag import chars, hecke, weyl
from oppflag.geometry import field
from oppflag.hecke import StructureConstants as SC
from oppflag.weyl import SignedPermutation as SP
from oppflag.weyl import WeylDescriptor as WD

E_VALUES = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]

descriptors = st.one_of(
    st.integers(1, 6).map(lambda n: WD("A", n)),
    st.integers(2, 6).map(lambda n: WD("B", n)),
    st.integers(2, 6).map(lambda n: WD("D", n)),
)


@st.composite
def group_elements(draw, desc=descriptors):
    d = draw(desc)
    gens = weyl.generators(d)
    word = draw(st.lists(st.integers(0, len(gens) - 1), max_size=20))
    w = SP.identity(d.points)
    for i in word:
        w = w * gens[i]
    return d, w


@st.composite
def subsets(draw, desc=descriptors):
    d = draw(desc)
    labels = weyl.node_labels(d)
    return d, frozenset(draw(st.sets(st.sampled_from(labels))))


@given(group_elements())
def test_generator_changes_length_by_one(dw):
    desc, w = dw
    for s in weyl.generators(desc):
        assert abs(weyl.length(desc, s * w) - weyl.length(desc, w)) == 1
        assert abs(weyl.length(desc, w * s) - weyl.length(desc, w)) == 1


@given(group_elements())
def test_length_is_inverse_invariant_and_bounded(dw):
    desc, w = dw
    top = weyl.length(desc, weyl.longest_word(desc))
    assert weyl.length(desc, w) == weyl.length(desc, w.inverse()) <= top
    assert weyl.length(desc, weyl.longest_word(desc) * w) == top - weyl.length(desc, w)


@given(subsets())
def test_w0_type_action_is_an_involution(dJ):
    desc, J = dJ
    image = weyl.w0_action_on_types(desc, J)
    assert len(image) == len(J)
    assert weyl.w0_action_on_types(desc, image) == J


@settings(max_examples=40, deadline=None)
@given(subsets(st.one_of(st.integers(1, 4).map(lambda n: WD("A", n)), st.integers(2, 4).map(lambda n: WD("B", n)), st.integers(2, 4).map(lambda n: WD("D", n)))))
def test_decomposition_degree_is_index(dJ):
    desc, J = dJ
    dec = chars.induce_trivial(desc, J)
    assert dec.degree() == weyl.group_order(desc) // weyl.parabolic_order(desc, J)
    assert dict(dec).get(chars.trivial_label(desc)) == 1


@st.composite
def bound_requests(draw):
    family = draw(st.sampled_from("ABD"))
    n = draw(st.integers(2 if family == "A" else 3, 5 if family == "A" else 4))
    if family == "D":
        n = max(n, 4)
    desc = WD(family, n)
    if family == "B":
        e = draw(st.sampled_from(E_VALUES))
        q = draw(st.sampled_from([4, 9] if e.denominator == 2 else [2, 3, 4]))
        sc = SC(q, e)
    else:
        sc = SC.for_family(family, draw(st.sampled_from([2, 3, 4])))
    labels = weyl.node_labels(desc)
    T = frozenset(draw(st.sets(st.sampled_from(labels), min_size=1)))
    T = T | weyl.w0_action_on_types(desc, T)
    return desc, sc, weyl.complement(desc, T)


@settings(max_examples=60, deadline=None)
@given(bound_requests())
def test_bound_is_between_one_and_v(req):
    desc, sc, J = req
    report = hecke.ekr_bound(desc, sc, J)
    assert 1 <= report.bound <= report.v
    assert report.bound_floor == int(sympy.floor(report.bound))
    for c in report.sharp_constructions:
        assert c["size"] == report.bound


@settings(max_examples=60, deadline=None)
@given(bound_requests())
def test_eigenvalue_entries_cover_the_permutation_character(req):
    desc, sc, J = req
    entries = hecke.eigenvalues_partial(desc, sc, J)
    index = weyl.group_order(desc) // weyl.parabolic_order(desc, J)
    assert sum(x.multiplicity * chars.dimension(x.label) for x in entries) == index
    top, low = hecke.extreme_eigenvalues(desc, sc, J)
    assert all(abs(v) <= top.values(sc.q, sc.e_value)[0] for x in entries for v in x.eigenvalue.values(sc.q, sc.e_value))
    assert low.values(sc.q, sc.e_value)[-1] < 0


prime_powers = st.sampled_from([2, 3, 4, 5, 7, 8, 9])


@given(prime_powers, st.data())
def test_field_axioms(q, data):
    F = field(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add(a, b) == F.add(b, a) and F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.power(a, q) == a


@given(prime_powers, st.data())
def test_rref_is_idempotent_and_rank_preserving(q, data):
    F = field(q)
    n = data.draw(st.integers(1, 5))
    rows = data.draw(st.lists(st.tuples(*[st.integers(0, q - 1)] * n), min_size=1, max_size=5))
    R = F.rref(rows)
    assert F.rref(R) == R
    assert F.rank(R) == F.rank(rows) == len(R)


@given(st.integers(0, 9), st.data(), st.sampled_from([2, 3, 4, 5]))
def test_gaussian_binomial_symmetry_and_pascal(n, data, q):
    k = data.draw(st.integers(0, n))
    g = hecke.gaussian_binomial
    assert g(n, k, q) == g(n, n - k, q)
    if 0 < k < n:
        assert g(n, k, q) == g(n - 1, k - 1, q) + q**k * g(n - 1, k, q)
