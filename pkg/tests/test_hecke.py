import json
from fractions import Fraction

import pytest
import sympy

from oppflag import chars, hecke, weyl
from oppflag.hecke import OppositionEigenvalue as Ev
from oppflag.hecke import StructureConstants as SC
from oppflag.weyl import WeylDescriptor as WD

HALF, THREE_HALVES = Fraction(1, 2), Fraction(3, 2)
E_VALUES = [Fraction(0), HALF, Fraction(1), THREE_HALVES, Fraction(2)]


def values(desc, sc, J):
    entries = hecke.eigenvalues_partial(desc, sc, J)
    out = set()
    for x in entries:
        out.update(x.eigenvalue.values(sc.q, sc.e_value))
    return out


def test_structure_constants_validation():
    assert SC(4, HALF).e_value == HALF
    with pytest.raises(ValueError):
        SC(6, 1)
    with pytest.raises(ValueError):
        SC(2, Fraction(1, 3))
    with pytest.raises(ValueError):
        SC.for_family("B", 2)
    assert SC.for_family("D", 3).e_value == 0
    assert SC.for_family("A", 3).e is None


def test_q_power_rules():
    assert hecke.q_power(4, THREE_HALVES) == 8
    with pytest.raises(ValueError):
        hecke.q_power(2, HALF)
    assert hecke.exact_power(2, THREE_HALVES) == 2 * sympy.sqrt(2)


def test_eigenvalue_value_object():
    ev = Ev("both", THREE_HALVES)
    assert ev.values(2) == [2 * sympy.sqrt(2), -2 * sympy.sqrt(2)]
    assert ev.render("A", 2) == "±2*sqrt(2)"
    b = Ev("minus", 1, 2)
    assert b.exponent(HALF) == 2
    assert b.exp_string("B") == "1+2*e"
    assert b.to_json("B", 2, 1) == {"sign": "-", "exp": "1+2*e", "value": "-8"}
    assert b.shifted(1, 1) == Ev("minus", 0, 1)
    with pytest.raises(ValueError):
        Ev("plus", Fraction(1, 3))
    with pytest.raises(ValueError):
        Ev("up", 1)


def test_maximal_spectrum_pg22():
    assert values(WD("A", 2), SC(2), set()) == {8, 2 * sympy.sqrt(2), -2 * sympy.sqrt(2), -1}


def test_maximal_spectrum_pg32():
    assert values(WD("A", 3), SC(3 - 1), set()) == {64, 16, -16, 8, 4, -4, 1}


def test_partial_spectra_frozen():
    assert values(WD("A", 3), SC(2), {1, 3}) == {16, 4, -4, 2}
    assert values(WD("B", 3), SC(2, 1), {2, 3}) == {32, 4, -4}
    assert values(WD("B", 3), SC(2, 1), {1, 2}) == {64, -8, 4}
    assert values(WD("D", 4), SC.for_family("D", 2), {1, 2, "4'"}) == {64, -8, 4}


def test_algorithm_one_against_character_route():
    # the closed exponent against central characters computed from the class data
    for desc in (WD("A", 3), WD("A", 4), WD("B", 3), WD("B", 4), WD("D", 4), WD("D", 5)):
        for lab in chars.all_labels(desc):
            closed = hecke._exponent_closed(desc, lab)
            if closed is not None:
                assert closed == hecke.exponent_from_characters(desc, lab)


def test_trivial_cotype_everything():
    # J = S: a single flag, eigenvalue q^0
    for desc, sc in ((WD("A", 3), SC(2)), (WD("B", 3), SC(3, 1)), (WD("D", 4), SC(2, 0))):
        entries = hecke.eigenvalues_partial(desc, sc, weyl.all_nodes(desc))
        assert len(entries) == 1
        assert entries[0].label == chars.trivial_label(desc)
        assert entries[0].eigenvalue.values(sc.q, sc.e_value) == [1]


def test_not_self_opposite():
    with pytest.raises(hecke.NotSelfOpposite) as info:
        hecke.eigenvalues_partial(WD("A", 3), SC(2), {1})
    assert info.value.image == {3}
    with pytest.raises(hecke.NotSelfOpposite):
        hecke.ekr_bound(WD("D", 5), SC(2, 0), {1, 2, 3, 5})


def test_gaussian_binomials():
    assert hecke.gaussian_binomial(4, 2, 2) == 35
    assert hecke.gaussian_binomial(5, 0, 3) == 1
    assert hecke.gaussian_binomial(3, 4, 2) == 0
    assert hecke.q_multinomial(3, [1, 1, 1], 2) == 21


@pytest.mark.parametrize(
    "n,k,q,e,count",
    [(3, 1, 2, 1, 63), (3, 3, 2, 1, 135), (4, 4, 2, 0, 270), (3, 1, 2, 2, 119), (3, 3, 2, 2, 765), (2, 1, 4, HALF, 45), (2, 2, 4, HALF, 27), (2, 2, 4, THREE_HALVES, 297)],
)
def test_polar_subspace_counts(n, k, q, e, count):
    assert hecke.polar_subspace_count(n, k, q, e) == count


def test_count_flags():
    assert hecke.count_flags(WD("A", 2), SC(2), {1, 2}) == 21
    assert hecke.count_flags(WD("A", 3), SC(2), {1, 2, 3}) == 315
    assert hecke.count_flags(WD("B", 3), SC(2, 1), {1, 2, 3}) == 2835
    assert hecke.count_flags(WD("B", 3), SC(2, 0), {1, 2, 3}) == 630
    assert hecke.count_flags(WD("D", 4), SC(2, 0), {4}) == 135
    assert hecke.count_flags(WD("D", 4), SC(2, 0), {1, 2, 4, "4'"}) == 42525
    assert hecke.count_flags(WD("D", 4), SC(2, 0), set()) == 1


BOUNDS = [
    ("A", 2, 2, None, {1, 2}, 21, "-3 + 6*sqrt(2)"),
    ("A", 3, 2, None, {1, 2, 3}, 315, "63"),
    ("A", 3, 2, None, {2}, 35, "7"),
    ("A", 4, 2, None, {1, 4}, 465, "-15 + 60*sqrt(2)"),
    ("A", 5, 2, None, {3}, 1395, "155"),
    ("B", 3, 2, 1, {1}, 63, "7"),
    ("B", 3, 2, 1, {3}, 135, "15"),
    ("B", 3, 2, 1, {1, 2, 3}, 2835, "315"),
    ("B", 3, 2, 0, {1, 2, 3}, 630, "315"),
    ("B", 3, 4, HALF, {1, 2, 3}, 93555, "10395"),
    ("B", 4, 2, 0, {4}, 270, "30"),
    ("B", 3, 4, THREE_HALVES, {3}, 38313, "297"),
    ("D", 4, 2, None, {4}, 135, "15"),
    ("D", 4, 2, None, {1}, 135, "15"),
    ("D", 4, 2, None, {1, 2, 4, "4'"}, 42525, "4725"),
]


@pytest.mark.parametrize("family,n,q,e,T,v,bound", BOUNDS)
def test_ekr_bounds(family, n, q, e, T, v, bound):
    desc = WD(family, n)
    sc = SC.for_family(family, q, e)
    report = hecke.ekr_bound(desc, sc, weyl.complement(desc, T))
    assert report.v == v
    assert str(report.bound) == bound
    assert str(report.closed_form) == bound
    assert report.bound_floor == int(sympy.floor(sympy.sympify(bound)))


def test_bound_report_json():
    desc = WD("B", 3)
    report = hecke.ekr_bound(desc, SC(2, 1), {1, 2})
    doc = json.loads(report.dumps())
    assert doc["type"] == ["3"] and doc["cotype"] == ["1", "2"]
    assert doc["valency"] == {"sign": "+", "exp": "3+3*e", "value": "64"}
    assert doc["lambda_min"] == {"sign": "-", "exp": "1+2*e", "value": "-8"}
    assert doc["bound"] == "15" and doc["bound_floor"] == 15
    assert doc["sharp_constructions"] == [{"name": "point-pencil", "size": 15}]


def test_bound_warnings():
    a4 = WD("A", 4)
    report = hecke.ekr_bound(a4, SC(2), {2, 3})
    assert any("far below" in w for w in report.warnings)
    assert any("no known construction" in w for w in report.warnings)
    d3 = hecke.ekr_bound(WD("D", 3), SC(2, 0), {1})
    assert any("outside the proven range" in w for w in d3.warnings)


def test_smallest_eigenvalue_cases():
    # (empty, [n]) gives the smallest eigenvalue for e in {0, 1/2}, n odd, n not in J
    for e in (Fraction(0), HALF):
        _, low = hecke.extreme_eigenvalues(WD("B", 3), SC(4, e), set())
        assert low.exponent(e) == 6
    _, low = hecke.extreme_eigenvalues(WD("B", 3), SC(2, 1), set())
    assert low.exponent(1) == (3 - 1) * (3 + 1 - 1)


@pytest.mark.parametrize("n", range(2, 6))
def test_polar_single_type_spectrum_matches_algorithm(n):
    desc = WD("B", n)
    for e in E_VALUES:
        for k in range(1, n + 1):
            J = weyl.complement(desc, {k})
            algo = hecke.value_multiset(hecke.distinct_eigenvalues(hecke.eigenvalues_partial(desc, SC(4, e), J)), e)
            closed = hecke.value_multiset(hecke.polar_single_type_spectrum(n, e, k, 4), e)
            assert sorted(set(algo)) == sorted(set(closed))


def test_polar_single_type_spectrum_errors():
    with pytest.raises(ValueError):
        hecke.polar_single_type_spectrum(3, 1, 4, 2)
    with pytest.raises(ValueError):
        hecke.polar_single_type_spectrum(3, Fraction(1, 3), 1, 2)
