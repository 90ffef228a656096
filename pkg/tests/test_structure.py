import warnings

import pytest

from effalg import (EffectAlgebra, NonHomogeneousWarning, blocks, center, decompose,
                    enumerate_all, generate, has_rdp, is_homogeneous, meager_gea,
                    meager_set, property_report, sharp_set, validate_gea)
from effalg import structure as st

from conftest import idx


def names(E, xs):
    return set(E.names(xs))


def test_ord_and_atoms(c3, mo2):
    a, = idx(c3, "a")
    assert st.ord_of(c3, a) == 3
    assert names(c3, st.atoms(c3)) == {"a"}
    assert all(st.ord_of(mo2, x) == 1 for x in mo2.elements if x != mo2.zero)
    with pytest.raises(ValueError):
        st.ord_of(c3, c3.zero)


@pytest.mark.parametrize("name, expected", [
    ("chain(3)", {"0", "1"}),
    ("boolean(2)", {"0", "a", "b", "ab"}),
    ("diamond", {"0", "1"}),
])
def test_sharp_set(name, expected):
    E = generate(name)
    assert names(E, sharp_set(E)) == expected


def test_center(c3):
    assert names(c3, center(c3)) == {"0", "1"}
    P = generate("product(chain(2),chain(2))")
    assert {"(0,0)", "(1,0)", "(0,1)", "(1,1)"} <= names(P, center(P))
    for name in ("mo(2)", "diamond", "hsum(chain(2),chain(3))"):
        E = generate(name)
        assert {E.zero, E.unit} <= center(E)


def test_meager_gea(c3, b2, diamond):
    G, embed = meager_gea(c3)
    assert validate_gea(G).valid
    assert G.labels == ("0", "a", "2a")
    a, a2 = G.index("a"), G.index("2a")
    assert G.oplus(a, a) == a2 and G.oplus(a, a2) is None
    G, _ = meager_gea(b2)
    assert G.n == 1
    G, _ = meager_gea(diamond)
    a, b = G.index("a"), G.index("b")
    assert G.oplus(a, b) is None and G.oplus(a, a) is None


def test_tilde_hat_and_decompose():
    P = generate("product(chain(2),chain(1))")
    x = P.index("(a,1)")
    assert P.names(st.tilde_hat(P, x)) == ["(0,1)", "(1,1)"]
    d = decompose(P, x)
    assert (P.label(d.sharp), P.label(d.meager)) == ("(0,1)", "(a,0)")
    for s in sharp_set(P):
        assert decompose(P, s) == st.Decomposition(s, P.zero)
    for m in meager_set(P):
        assert decompose(P, m) == st.Decomposition(P.zero, m)


def test_compatibility(c3, diamond):
    a, a2 = idx(c3, "a", "2a")
    assert st.compatible(c3, {a, a2}, internal=True)
    a, b = idx(diamond, "a", "b")
    assert not st.compatible(diamond, {a, b})
    for x in diamond.elements:
        assert st.compatible(diamond, {x})


@pytest.mark.parametrize("name, expected", [
    ("diamond", [{"0", "a", "1"}, {"0", "b", "1"}]),
    ("mo(2)", [{"0", "a1", "a1'", "1"}, {"0", "a2", "a2'", "1"}]),
    ("boolean(2)", [{"0", "a", "b", "ab"}]),
])
def test_blocks(name, expected):
    E = generate(name)
    got = sorted((names(E, b.members) for b in blocks(E)), key=sorted)
    assert got == sorted(expected, key=sorted)
    assert all(b.contains_unit for b in blocks(E))


@pytest.mark.parametrize("name, rdp, homog", [
    ("chain(3)", True, True), ("mo(2)", False, True), ("diamond", False, True),
])
def test_rdp_and_homogeneity(name, rdp, homog):
    E = generate(name)
    assert has_rdp(E) is rdp
    assert is_homogeneous(E) is homog


def test_non_homogeneous_exists_and_warns():
    E = next(E for E in enumerate_all(6) if not is_homogeneous(E))
    assert isinstance(E, EffectAlgebra) and E.n == 6
    assert not has_rdp(E)
    with pytest.warns(NonHomogeneousWarning):
        blocks(E)
    assert property_report(E).flags["trt"] is False


def test_orthocomplete_and_maximality():
    for E in enumerate_all(5):
        assert st.is_orthocomplete(E)
        assert st.has_maximality_property(E)


def test_property_report_diamond(diamond):
    rep = property_report(diamond)
    assert rep.flags["homogeneous"] and rep.flags["trt"]
    assert not rep.flags["rdp"]
    assert "rdp" in rep.witnesses
    assert set(rep.flags) == set(st.FLAG_NAMES)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        doc = rep.to_dict("diamond", diamond.n)
    assert set(doc) == {"algebra", "n", "flags", "witnesses"}
