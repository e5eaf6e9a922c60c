from fractions import Fraction
from math import comb

import pytest

from oppflag import weyl
from oppflag.budget import BudgetExceeded
from oppflag.weyl import SignedPermutation as SP
from oppflag.weyl import WeylDescriptor as WD

SMALL = [WD("A", n) for n in range(1, 5)] + [WD("B", n) for n in range(2, 5)] + [WD("D", n) for n in range(2, 6)]


def test_descriptor_validation():
    with pytest.raises(ValueError):
        WD("C", 3)
    with pytest.raises(ValueError):
        WD("B", 1)
    with pytest.raises(ValueError):
        WD("A", 0)
    assert not WD("D", 3).in_theorem_range
    assert WD("D", 4).in_theorem_range and WD("B", 3).in_theorem_range


def test_signed_permutation_basics():
    w = SP((2, -1, 3))
    assert w(1) == 2 and w(-1) == -2 and w(2) == -1
    assert (w * w.inverse()).is_identity()
    assert str(w) == "[2, -1, 3]"
    with pytest.raises(ValueError):
        SP((1, 1, 2))


def test_generators_examples():
    a2 = weyl.generators(WD("A", 2))
    assert [g.image for g in a2] == [(2, 1, 3), (1, 3, 2)]
    b2 = weyl.generators(WD("B", 2))
    assert [g.image for g in b2] == [(2, 1), (1, -2)]
    b4, d4 = weyl.generators(WD("B", 4)), weyl.generators(WD("D", 4))
    t, s3 = b4[-1], b4[2]
    assert d4[-1] == t * s3 * t
    assert d4[-1].image == (1, 2, -4, -3)


def test_node_labels_and_parsing():
    d5 = WD("D", 5)
    assert weyl.node_labels(d5) == [1, 2, 3, 5, "5'"]
    assert weyl.parse_node(d5, "5'") == "5'"
    assert weyl.format_types(d5, {"5'", 1, 5}) == "{1,5,5'}"
    with pytest.raises(ValueError):
        weyl.parse_node(d5, "4")


@pytest.mark.parametrize("desc", SMALL, ids=str)
def test_length_matches_breadth_first_search(desc):
    bfs = weyl.word_lengths(desc)
    assert len(bfs) == weyl.group_order(desc)
    for w, d in bfs.items():
        assert weyl.length(desc, w) == d


def test_length_rejects_non_members():
    with pytest.raises(ValueError):
        weyl.length(WD("D", 3), SP((-1, 2, 3)))
    with pytest.raises(ValueError):
        weyl.length(WD("A", 2), SP((-1, 2, 3)))


def test_length_example_b3():
    b3 = WD("B", 3)
    s1, s2, t = weyl.generators(b3)
    w = t * s2 * t
    assert weyl.length(b3, w) == weyl.word_lengths(b3)[w] == 3


@pytest.mark.parametrize("n", range(1, 6))
def test_longest_word_lengths(n):
    assert weyl.length(WD("A", n), weyl.longest_word(WD("A", n))) == n * (n + 1) // 2
    if n >= 2:
        assert weyl.length(WD("B", n), weyl.longest_word(WD("B", n))) == n * n
        assert weyl.length(WD("D", n), weyl.longest_word(WD("D", n))) == n * (n - 1)


def test_longest_word_examples():
    assert weyl.longest_word(WD("A", 2)).image == (3, 2, 1)
    assert weyl.longest_word(WD("B", 3)).image == (-1, -2, -3)
    assert weyl.longest_word(WD("D", 4)).image == (-1, -2, -3, -4)
    assert weyl.longest_word(WD("D", 5)).image == (-1, -2, -3, -4, 5)


def test_weighted_length():
    for n in (2, 3, 4):
        desc = WD("B", n)
        for e in (0, Fraction(1, 2), 1, Fraction(3, 2), 2):
            assert weyl.weighted_length(desc, weyl.longest_word(desc), e) == n * (n - 1) + n * e
    b3 = WD("B", 3)
    assert weyl.weighted_length(b3, SP.identity(3), 2) == 0
    assert weyl.weighted_length(b3, weyl.generators(b3)[-1], 2) == 2


def test_w0_action_examples():
    assert weyl.w0_action_on_types(WD("A", 3), {2}) == {2}
    assert weyl.w0_action_on_types(WD("A", 4), {2, 3}) == {2, 3}
    assert weyl.w0_action_on_types(WD("A", 4), {1}) == {4}
    assert weyl.w0_action_on_types(WD("D", 5), {5}) == {"5'"}
    assert weyl.w0_action_on_types(WD("D", 4), {4}) == {4}
    assert weyl.w0_action_on_types(WD("B", 3), {1, 3}) == {1, 3}


@pytest.mark.parametrize("desc", SMALL, ids=str)
def test_w0_conjugation_matches_type_action(desc):
    w0 = weyl.longest_word(desc)
    gens = weyl.generators(desc)
    labels = weyl.node_labels(desc)
    for label, s in zip(labels, gens):
        image = w0 * s * w0.inverse()
        (target,) = weyl.w0_action_on_types(desc, {label})
        assert image == gens[labels.index(target)]


def test_generator_class_data():
    for n in range(1, 6):
        (rep, size), = weyl.generator_class_data(WD("A", n))
        assert size == n * (n + 1) // 2
    for n in range(2, 6):
        data = weyl.generator_class_data(WD("B", n))
        assert [size for _, size in data] == [n * (n - 1), n]
        assert weyl.is_t_class(WD("B", n), data[1][0])
    for n in range(3, 6):
        assert [size for _, size in weyl.generator_class_data(WD("D", n))] == [n * (n - 1)]
    assert [size for _, size in weyl.generator_class_data(WD("D", 2))] == [1, 1]


def test_generator_class_sizes_by_full_enumeration():
    b3 = WD("B", 3)
    group = list(weyl.elements(b3))
    assert len(group) == 48
    for rep, size in weyl.generator_class_data(b3):
        assert len({g * rep * g.inverse() for g in group}) == size


def test_parabolic_examples():
    b3, b4 = WD("B", 3), WD("B", 4)
    assert list(weyl.parabolic_elements(b3, set())) == [SP.identity(3)]
    assert len(set(weyl.parabolic_elements(b3, {1, 2}))) == 6
    assert len(set(weyl.parabolic_elements(b4, {1, 3}))) == 4
    assert weyl.parabolic_longest_weighted_length(b3, {1, 2}, 1) == 3
    assert weyl.parabolic_longest_weighted_length(b3, {2, 3}, 1) == 4


@pytest.mark.parametrize("desc", SMALL, ids=str)
def test_parabolic_orders_and_longest_words(desc):
    labels = weyl.node_labels(desc)
    for mask in range(1 << len(labels)):
        J = {x for i, x in enumerate(labels) if mask >> i & 1}
        elems = list(weyl.parabolic_elements(desc, J))
        assert len(elems) == len(set(elems)) == weyl.parabolic_order(desc, J)
        if desc.family == "B":
            for e in (0, Fraction(1, 2), 2):
                top = max(weyl.weighted_length(desc, w, e) for w in elems)
                assert weyl.parabolic_longest_weighted_length(desc, J, e) == top
        else:
            assert weyl.parabolic_longest_weighted_length(desc, J) == max(weyl.length(desc, w) for w in elems)


@pytest.mark.parametrize("n", range(2, 7))
def test_polar_single_type_longest_length(n):
    desc = WD("B", n)
    for k in range(1, n + 1):
        J = weyl.complement(desc, {k})
        for e in (0, Fraction(1, 2), 1, Fraction(3, 2), 2):
            assert weyl.parabolic_longest_weighted_length(desc, J, e) == comb(k, 2) + (n - k) * (n - k - 1 + e)


def test_group_budget(monkeypatch):
    monkeypatch.setenv("OPPG_BUDGET", "group=100")
    with pytest.raises(BudgetExceeded) as info:
        list(weyl.elements(WD("B", 4)))
    assert info.value.required == 384
    assert "group=384" in str(info.value)
