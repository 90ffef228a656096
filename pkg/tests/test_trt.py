import pytest

from effalg import (AlgebraError, TripleView, extract_triple, generate, oplus_via_triple,
                    reconstruct_tea, s_map, trt_check, verify_triple_theorem)
from effalg.trt import AlgebraView, Triple, m_maps, triple_violations


def local(T, label, sharp=False):
    return (T.sharp if sharp else T.meager).index(label)


def test_trt_check_examples(diamond, b2):
    assert trt_check(diamond).is_trt
    view = AlgebraView(diamond)
    a, b = diamond.index("a"), diamond.index("b")
    assert view.partner_candidates(a) == [a]
    assert not view.satisfies_partner(a, b)
    assert trt_check(b2).is_trt


def test_m_maps_on_chain(c3):
    hat, pi, R = m_maps(c3)
    a, a2 = c3.index("a"), c3.index("2a")
    assert hat[a] == c3.unit
    assert R[a] == a2 and R[a2] == a
    assert pi[(c3.zero, a)] == c3.zero


@pytest.mark.parametrize("name, expected", [("chain(2)", "1"), ("chain(3)", "0")])
def test_s_of_atom_pair(name, expected):
    E = generate(name)
    a = E.index("a")
    assert E.label(s_map(E, a, a)) == expected


def test_extract_triple_shapes(c3, b2, diamond):
    T = extract_triple(c3)
    assert T.sharp.n == 2 and T.meager.labels == ("0", "a", "2a")
    assert T.h[T.sharp.index("1")] == frozenset(range(3))
    T = extract_triple(b2)
    assert T.sharp.n == 4 and T.meager.n == 1
    assert all(h == frozenset({0}) for h in T.h)
    T = extract_triple(diamond)
    a, b = local(T, "a"), local(T, "b")
    assert T.meager.oplus(a, b) is None and T.meager.oplus(a, a) is None


@pytest.mark.parametrize("name, x, y, expected", [
    ("chain(2)", "a", "a", ("1", "0")),
    ("chain(3)", "a", "a", ("0", "2a")),
    ("diamond", "a", "b", None),
])
def test_oplus_via_triple(name, x, y, expected):
    T = extract_triple(generate(name))
    got = oplus_via_triple(T, local(T, x), local(T, y))
    if expected is None:
        assert got is None
    else:
        assert (T.sharp.label(got[0]), T.meager.label(got[1])) == expected


def test_triple_view_reads_only_the_triple(c3):
    T = extract_triple(c3)
    tv = TripleView(T)
    a, a2 = local(T, "a"), local(T, "2a")
    assert T.sharp.label(tv.hat(a)) == "1"
    assert tv.R(a) == a2


def test_reconstruct_chain(c3, diamond):
    tea = reconstruct_tea(extract_triple(c3))
    assert [tea.algebra.label(i) for i in range(tea.algebra.n)] == \
        ["(0,0)", "(0,a)", "(0,2a)", "(1,0)"]
    A = tea.algebra
    assert A.label(A.oplus(A.index("(0,a)"), A.index("(0,a)"))) == "(0,2a)"
    A = reconstruct_tea(extract_triple(diamond)).algebra
    assert A.n == 4 and A.oplus(A.index("(0,a)"), A.index("(0,b)")) is None


def test_verify_certificates(c3, mo2):
    res = verify_triple_theorem(c3)
    assert res.holds
    cert = dict(res.certificate)
    assert cert["2a"] == "(0,2a)" and cert["1"] == "(1,0)"
    res = verify_triple_theorem(mo2)
    assert res.holds
    assert all(pair == f"({x},0)" for x, pair in res.certificate)


def test_malformed_triple_rejected(c3):
    T = extract_triple(c3)
    assert not triple_violations(T)
    # h(1) must contain everything below it; dropping "a" breaks downward closure
    top = T.sharp.index("1")
    h = list(T.h)
    h[top] = frozenset({0, local(T, "2a")})
    broken = Triple(T.sharp, T.meager, tuple(h))
    assert any("downward closed" in p for p in triple_violations(broken))
    with pytest.raises(AlgebraError, match="malformed triple"):
        reconstruct_tea(broken)
