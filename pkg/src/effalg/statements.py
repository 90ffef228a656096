"""Exhaustive checks of the structural theorems on one finite algebra.

Each ``check_*`` function returns a list of ``(description, witness)``
pairs, empty when the statement holds on the given algebra.  Witnesses are
element indices of that algebra.
"""
from __future__ import annotations

import itertools

import numpy as np

from . import structure as st
from . import trt
from .core import UNDEF, derive, is_lattice, is_orthoalgebra, is_sub_effect_algebra


def check_order_laws(E):
    """Consequences of the axioms for the derived order and complement."""
    d = derive(E)
    t = E.table
    bad = []
    leq = d.leq
    if not leq.diagonal().all():
        bad.append(("<= not reflexive", ()))
    anti = np.argwhere(leq & leq.T & ~np.eye(E.n, dtype=bool))
    bad += [("<= not antisymmetric", tuple(w)) for w in anti.tolist()[:1]]
    # transitive iff leq o leq is contained in leq
    comp = (leq.astype(int) @ leq.astype(int)) > 0
    bad += [("<= not transitive", tuple(w)) for w in np.argwhere(comp & ~leq).tolist()[:1]]
    if not (leq[E.zero].all() and leq[:, E.unit].all()):
        bad.append(("0 / 1 are not bottom / top", ()))
    c = d.complement
    if not (c[c] == np.arange(E.n)).all() or c[E.zero] != E.unit:
        bad.append(("complement is not an involution swapping 0 and 1", ()))
    for x, y in itertools.product(E.elements, repeat=2):
        s = t[x, y]
        if s != UNDEF and not leq[x, s]:
            bad.append(("x not below x+y", (x, y)))
        if leq[x, y] != leq[c[y], c[x]]:
            bad.append(("complement not order reversing", (x, y)))
        if (s != UNDEF) != leq[x, c[y]]:
            bad.append(("x+y defined != x <= y'", (x, y)))
    return bad


def check_center(E):
    """Center is a Boolean sub-effect algebra; ``y = (y^c) + (y^c')``."""
    return st.center_violations(E, st.central_elements(E))


def check_central_distributivity(E):
    """``c^(x+y) = (c^x)+(c^y)`` and ``x^(c+d) = (x^c)+(x^d)`` for central c, d."""
    d = derive(E)
    t, m = E.table, d.meet
    bad = []
    cen = sorted(st.central_elements(E))
    pairs = np.argwhere(t != UNDEF).tolist()
    for c in cen:
        for x, y in pairs:
            s = t[x, y]
            lhs, a, b = m[c, s], m[c, x], m[c, y]
            if UNDEF in (lhs, a, b) or t[a, b] != lhs:
                bad.append(("c^(x+y) != (c^x)+(c^y)", (c, x, y)))
    for c, e in itertools.product(cen, repeat=2):
        s = t[c, e]
        if s == UNDEF:
            continue
        for x in E.elements:
            lhs, a, b = m[x, s], m[x, c], m[x, e]
            if UNDEF in (lhs, a, b) or t[a, b] != lhs:
                bad.append(("x^(c+d) != (x^c)+(x^d)", (x, c, e)))
    return bad


def check_homogeneity_facts(E):
    """Orthoalgebra/lattice => homogeneous; RDP <=> homogeneous and compatible;
    and, when E is homogeneous, every fact about blocks and sharp elements."""
    bad = []
    homog = st.is_homogeneous(E)
    if (is_orthoalgebra(E) or is_lattice(E)) and not homog:
        bad.append(("orthoalgebra/lattice but not homogeneous", st.homogeneity_failure(E)))
    rdp = st.riesz_failure(E) is None
    if rdp != (homog and st.is_compatible_whole(E)):
        bad.append(("RDP != homogeneous and compatible", ()))
    if not homog:
        return bad
    fam_a = st.blocks_by_compatibility(E)
    bad += st.block_violations(E, fam_a)
    for x, y in itertools.combinations(E.elements, 2):
        if st.comp(E, x, y) and not any({x, y} <= b for b in fam_a):
            bad.append(("compatible pair not inside a block", (x, y)))
    if not is_sub_effect_algebra(E, st.sharp_set(E)):
        bad.append(("Sh(E) is not a sub-effect algebra", ()))
    for b in fam_a:
        if E.unit not in b:
            bad.append(("block misses 1", tuple(sorted(b))))
    return bad


def check_sharp_dominance(E):
    """In a sharply dominating algebra Sh(E) is a sub-effect algebra."""
    if st.is_sharply_dominating(E) and not is_sub_effect_algebra(E, st.sharp_set(E)):
        return [("sharply dominating but Sh(E) is not a sub-effect algebra", ())]
    return []


def check_meager_sums(E):
    """For Sh(E) a sub-effect algebra: ``hat(x) - x`` is meager; meager
    ``x + y = z`` sharp forces ``hat(x) = z``."""
    if not is_sub_effect_algebra(E, st.sharp_set(E)):
        return []
    d = derive(E)
    mea, sh = st.meager_set(E), st.sharp_set(E)
    hat = st.sharp_covers(E)[1]
    bad = []
    for x in mea:
        if hat[x] != UNDEF and d.ominus[hat[x], x] not in mea:
            bad.append(("hat(x) - x not meager", (x,)))
        for y in mea:
            z = E.oplus(x, y)
            if z is not None and z in sh and hat[x] != z:
                bad.append(("x+y sharp but hat(x) != x+y", (x, y)))
    return bad


def check_decomposition(E):
    """Unique sharp + meager decomposition, disjoint parts, join in lattices."""
    if not is_sub_effect_algebra(E, st.sharp_set(E)):
        return []
    d = derive(E)
    tilde = st.sharp_covers(E)[0]
    mea, sh = st.meager_set(E), st.sharp_set(E)
    lattice = is_lattice(E)
    bad = []
    for x in E.elements:
        if tilde[x] == UNDEF:
            continue
        xs = int(tilde[x])
        xm = int(d.ominus[x, xs])
        if xm not in mea:
            bad.append(("x - tilde(x) not meager", (x,)))
        hits = [(s, m) for s in sh for m in mea if E.table[s, m] == x]
        if hits != [(xs, xm)]:
            bad.append(("sharp/meager decomposition not unique", (x,)))
        if d.meet[xs, xm] != E.zero:
            bad.append(("x_S ^ x_M != 0", (x,)))
        if lattice and d.join[xs, xm] != x:
            bad.append(("x != x_S v x_M", (x,)))
    return bad


def check_trt_conditions(E):
    """A finite homogeneous algebra is orthocomplete, hence TRT."""
    if not st.is_homogeneous(E):
        return []
    bad = []
    if not st.is_orthocomplete(E):
        bad.append(("finite algebra not orthocomplete", st.orthocomplete_failure(E)))
    report = trt.trt_check(E)
    if not report.is_trt:
        bad.append(("homogeneous algebra fails the TRT conditions", report.first_witness()))
    return bad


def check_triple_maps(E):
    """Triple-side maps agree with E-side maps under the extraction bijection.

    Covers hat, pi, R, both S-set formulations on E, and the S-set read from
    the triple alone.
    """
    if not trt.trt_check(E).is_trt:
        return []
    bad = []
    T = trt.extract_triple(E)
    tv, ev = trt.TripleView(T), trt.AlgebraView(E)
    sh, mea = trt.triple_embedding(E)
    mpos = {x: i for i, x in enumerate(mea)}

    def lift_m(v):
        return None if v is None else mea[v]

    for i, x in enumerate(mea):
        if sh[tv.hat(i)] != ev.hat(x):
            bad.append(("hat from triple differs", (x,)))
        if lift_m(tv.R(i)) != ev.R(x):
            bad.append(("R from triple differs", (x,)))
        for j, s in enumerate(sh):
            if lift_m(tv.pi(j, i)) != ev.pi(s, x):
                bad.append(("pi from triple differs", (s, x)))
    for x, y in itertools.product(mea, repeat=2):
        direct = ev.s_set_direct(x, y)
        if direct != ev.s_set(x, y):
            bad.append(("S-set formulations differ on E", (x, y)))
        if frozenset(sh[z] for z in tv.s_set(mpos[x], mpos[y])) != direct:
            bad.append(("S-set from triple differs", (x, y)))
    return bad


def check_sum_via_triple(E):
    """Meager ``x + y`` is defined iff the triple-side sum is, and they agree."""
    if not trt.trt_check(E).is_trt:
        return []
    T = trt.extract_triple(E)
    tv = trt.TripleView(T)
    sh, mea = trt.triple_embedding(E)
    bad = []
    for (i, x), (j, y) in itertools.product(enumerate(mea), repeat=2):
        got = trt.oplus_via_triple(T, i, j, view=tv)
        s = E.oplus(x, y)
        if (got is None) != (s is None):
            bad.append(("definedness differs from triple-side sum", (x, y)))
        elif got is not None and E.oplus(sh[got[0]], mea[got[1]]) != s:
            bad.append(("triple-side sum recomposes wrongly", (x, y)))
    return bad


ALL_CHECKS = {
    "order laws": check_order_laws,
    "center is Boolean": check_center,
    "central distributivity": check_central_distributivity,
    "homogeneous structure": check_homogeneity_facts,
    "sharp domination": check_sharp_dominance,
    "meager sums": check_meager_sums,
    "decomposition": check_decomposition,
    "TRT conditions": check_trt_conditions,
    "triple maps": check_triple_maps,
    "sum via triple": check_sum_via_triple,
}


def run_all(E):
    """``{check name: violations}`` for every check in :data:`ALL_CHECKS`."""
    return {name: fn(E) for name, fn in ALL_CHECKS.items()}
