"""Structural notions on a validated finite effect algebra.

Sharp, meager, principal and central elements; ord and atoms; sharp covers
and the sharp/meager decomposition; (internal) compatibility; blocks; Riesz
decomposition and homogeneity; orthocompleteness.  Results are memoized on
the algebra instance.
"""
from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from .core import (
    UNDEF,
    AlgebraError,
    GeneralizedEffectAlgebra,
    InvariantError,
    derive,
    is_lattice,
    is_orthoalgebra,
    is_sub_effect_algebra,
    memoized,
    restrict,
    validate_gea,
)


class NonHomogeneousWarning(UserWarning):
    """Blocks were requested for a non-homogeneous algebra."""


# -- ord, atoms, heights ----------------------------------------------------


def ord_of(E, x):
    """Largest ``k`` such that ``k*x = x + ... + x`` is defined."""
    if x == E.zero:
        raise AlgebraError("ord is only defined for nonzero elements")
    k, s = 1, x
    while True:
        s = E.oplus(s, x)
        if s is None:
            return k
        k += 1
        if k > E.n:
            # partial sums of a nonzero element strictly increase
            raise InvariantError(f"ord({E.label(x)}) exceeds carrier size")


@memoized
def atoms(E):
    d = derive(E)
    strict = d.leq & ~np.eye(E.n, dtype=bool)
    out = set()
    for x in E.elements:
        if x == E.zero:
            continue
        below = [y for y in np.flatnonzero(strict[:, x]) if y != E.zero]
        if not below:
            out.add(x)
    return frozenset(out)


@memoized
def heights(E):
    """Length of the longest chain from zero to each element."""
    d = derive(E)
    order = sorted(E.elements, key=lambda x: int(d.leq[:, x].sum()))
    h = [0] * E.n
    for x in order:
        below = [y for y in np.flatnonzero(d.leq[:, x]) if y != x]
        h[x] = max((h[y] + 1 for y in below), default=0)
    return tuple(h)


# -- sharp, meager, principal, central --------------------------------------


@memoized
def sharp_set(E):
    """Elements whose only common lower bound with their complement is 0."""
    d = derive(E)
    by_bounds = frozenset(
        x for x in E.elements if d.lower_bounds(x, d.complement[x]) == {E.zero}
    )
    by_meet = frozenset(x for x in E.elements if d.meet[x, d.complement[x]] == E.zero)
    if by_bounds != by_meet:
        raise InvariantError("bound-set and meet formulations of sharpness disagree")
    return by_bounds


@memoized
def meager_set(E):
    """Elements with no nonzero sharp element below them."""
    d = derive(E)
    sharp_nonzero = [s for s in sharp_set(E) if s != E.zero]
    return frozenset(x for x in E.elements if not any(d.leq[s, x] for s in sharp_nonzero))


def is_principal(E, x):
    """Sums of elements below ``x`` stay below ``x``."""
    d = derive(E)
    below = d.down(x)
    sums = E.table[np.ix_(below, below)]
    sums = sums[sums != UNDEF]
    return bool(d.leq[sums, x].all())


@memoized
def central_elements(E):
    """Elements ``x`` with ``x, x'`` principal and every ``y`` splitting below ``x, x'``."""
    d = derive(E)
    t = E.table
    out = []
    for x in E.elements:
        xc = d.complement[x]
        if not (is_principal(E, x) and is_principal(E, xc)):
            continue
        sums = t[np.ix_(d.down(x), d.down(xc))]
        if set(sums[sums != UNDEF].tolist()) >= set(E.elements):
            out.append(x)
    return frozenset(out)


@memoized
def center(E):
    """Central elements; the Boolean-algebra postconditions are verified."""
    c = central_elements(E)
    problems = center_violations(E, c)
    if problems:
        raise InvariantError(f"center postcondition failed: {problems[0]}")
    return c


def center_violations(E, c):
    """Boolean-algebra and splitting laws that a center must satisfy."""
    d = derive(E)
    bad = []
    if not {E.zero, E.unit} <= c:
        bad.append(("center misses 0 or 1", ()))
    if not is_sub_effect_algebra(E, c):
        bad.append(("center is not a sub-effect algebra", tuple(sorted(c))))
        return bad
    R = restrict(E, c)
    rd = derive(R)
    if not is_lattice(R):
        bad.append(("center is not a lattice", tuple(sorted(c))))
        return bad
    rel = range(R.n)
    for a, b, e in itertools.product(rel, repeat=3):
        if rd.meet[a, rd.join[b, e]] != rd.join[rd.meet[a, b], rd.meet[a, e]]:
            bad.append(("center not distributive", (a, b, e)))
            break
    for a in rel:
        ac = rd.complement[a]
        if rd.meet[a, ac] != R.zero or rd.join[a, ac] != R.unit:
            bad.append(("center not complemented", (a,)))
    for a, b in itertools.product(rel, repeat=2):
        s = R.table[a, b]
        if (s != UNDEF) != (rd.meet[a, b] == R.zero) or (s != UNDEF and s != rd.join[a, b]):
            bad.append(("center sum is not disjoint join", (a, b)))
    for x in c:
        xc = d.complement[x]
        for y in E.elements:
            p, q = d.meet[y, x], d.meet[y, xc]
            if p == UNDEF or q == UNDEF or E.table[p, q] != y:
                bad.append(("y != (y^x)+(y^x')", (y, x)))
    for x, y in itertools.product(c, repeat=2):
        s = E.table[x, y]
        if s != UNDEF and (d.join[x, y] != s or d.meet[x, y] != E.zero):
            bad.append(("orthogonal central elements: join != sum", (x, y)))
    return bad


@memoized
def meager_gea(E):
    """``(Mea(E), +_Mea)`` as a generalized effect algebra plus its embedding.

    ``x +_Mea y`` is defined iff ``x + y`` is defined in E and meager.
    Returns ``(G, embed)`` with ``embed[i]`` the E-index of G's element ``i``.
    """
    d = derive(E)
    mea = sorted(meager_set(E))
    pos = {x: i for i, x in enumerate(mea)}
    m = len(mea)
    t = np.full((m, m), UNDEF, dtype=np.int64)
    for i, x in enumerate(mea):
        for j, y in enumerate(mea):
            s = E.oplus(x, y)
            if s is not None and s in pos:
                t[i, j] = pos[s]
    G = GeneralizedEffectAlgebra(t, pos[E.zero], E.names(mea))
    if not validate_gea(G).valid:
        raise InvariantError("Mea(E) failed the generalized effect algebra axioms")
    for x in mea:
        for y in d.down(x):
            if y not in pos or d.ominus[x, y] not in pos:
                raise InvariantError("Mea(E) is not closed under lower bounds / differences")
    return G, tuple(mea)


# -- sharp covers and decomposition ----------------------------------------


@memoized
def sharp_covers(E):
    """Arrays ``(tilde, hat)``: greatest sharp below / least sharp above, or UNDEF."""
    d = derive(E)
    sh = np.array(sorted(sharp_set(E)))
    tilde = np.full(E.n, UNDEF, dtype=np.int64)
    hat = np.full(E.n, UNDEF, dtype=np.int64)
    for x in E.elements:
        below = sh[d.leq[sh, x]]
        top = [s for s in below if d.leq[below, s].all()]
        if top:
            tilde[x] = top[0]
        above = sh[d.leq[x, sh]]
        bottom = [s for s in above if d.leq[s, above].all()]
        if bottom:
            hat[x] = bottom[0]
    tilde.setflags(write=False)
    hat.setflags(write=False)
    return tilde, hat


def tilde_hat(E, x):
    tilde, hat = sharp_covers(E)
    return (None if tilde[x] == UNDEF else int(tilde[x]),
            None if hat[x] == UNDEF else int(hat[x]))


@memoized
def is_sharply_dominating(E):
    tilde, hat = sharp_covers(E)
    by_hat = bool((hat != UNDEF).all())
    if by_hat != bool((tilde != UNDEF).all()):
        raise InvariantError("x-hat and x-tilde existence disagree")
    return by_hat


@dataclass(frozen=True)
class Decomposition:
    sharp: int
    meager: int


def decompose(E, x):
    """Unique ``x = x_S + x_M`` with ``x_S`` sharp and ``x_M`` meager."""
    if not is_sharply_dominating(E):
        raise AlgebraError("decompose() needs a sharply dominating algebra")
    d = derive(E)
    xs = int(sharp_covers(E)[0][x])
    xm = int(d.ominus[x, xs])
    sh, mea = sharp_set(E), meager_set(E)
    if xm not in mea:
        raise InvariantError(f"{E.label(x)} - tilde is not meager")
    hits = [(s, m) for s in sh for m in mea if E.table[s, m] == x]
    if hits != [(xs, xm)]:
        raise InvariantError(f"decomposition of {E.label(x)} not unique: {hits}")
    if d.meet[xs, xm] != E.zero:
        raise InvariantError(f"sharp and meager parts of {E.label(x)} not disjoint")
    if is_lattice(E) and d.join[xs, xm] != x:
        raise InvariantError(f"{E.label(x)} is not the join of its parts")
    return Decomposition(xs, xm)


# -- compatibility and blocks ----------------------------------------------


def orthogonal_families(E, pool, max_len=None):
    """Yield ``(family, total, subsums)`` for nonempty orthogonal families.

    Families are multisets of nonzero ``pool`` elements in non-decreasing
    index order.  Partial sums of nonzero elements strictly increase, so the
    family length never exceeds the height of the unit.
    """
    pool = sorted(x for x in set(pool) if x != E.zero)
    if max_len is None:
        max_len = heights(E)[E.unit]
    t = E.table

    def rec(start, family, total, subsums):
        for k in range(start, len(pool)):
            x = pool[k]
            s = t[total, x]
            if s == UNDEF:
                continue
            grown = subsums | {int(t[a, x]) for a in subsums}
            fam = family + (x,)
            yield fam, int(s), grown
            if len(fam) < max_len:
                yield from rec(k, fam, int(s), grown)

    yield from rec(0, (), E.zero, frozenset({E.zero}))


def compatible(E, members, internal=False):
    """(Internal) compatibility of a set of elements.

    True iff one orthogonal family, drawn from ``members`` when ``internal``
    and from all of E otherwise, has every member as a subsum.  On a finite
    carrier the set itself is the only finite subset that matters.
    """
    return refining_family(E, members, internal) is not None


def refining_family(E, members, internal=False):
    """A family witnessing :func:`compatible`, or None."""
    need = frozenset(members)
    if need <= {E.zero}:
        return ()
    pool = need if internal else E.elements
    for fam, _, subsums in orthogonal_families(E, pool):
        if need <= subsums:
            return fam
    return None


def comp(E, x, y):
    return compatible(E, {x, y})


@memoized
def is_compatible_whole(E):
    return compatible(E, E.elements)


def _maximal(sets):
    uniq = set(sets)
    return [s for s in uniq if not any(s < o for o in uniq)]


def _sort_members(sets):
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class Block:
    members: frozenset
    contains_unit: bool = True


@memoized
def blocks_by_compatibility(E):
    """Maximal internally compatible subsets containing 1.

    Any internally compatible M containing 1 sits inside the subsum set of
    an orthogonal family summing to 1, and every such subsum set is itself
    internally compatible, so the maximal ones are exactly the candidates.
    """
    subsets = [subs for _, total, subs in orthogonal_families(E, E.elements) if total == E.unit]
    return tuple(_sort_members(_maximal(subsets)))


def closure(E, members):
    """Smallest sub-effect algebra containing ``members``."""
    xs, ys = np.nonzero(E.table != UNDEF)
    zs = E.table[xs, ys]
    inq = np.zeros(E.n, dtype=bool)
    inq[list(members)] = True
    inq[E.unit] = True
    while True:
        cnt = inq[xs].astype(int) + inq[ys] + inq[zs]
        hit = cnt == 2
        if not hit.any():
            return frozenset(np.flatnonzero(inq).tolist())
        inq[xs[hit]] = inq[ys[hit]] = inq[zs[hit]] = True


@memoized
def sub_effect_algebras(E):
    start = closure(E, {E.zero})
    seen = {start}
    todo = [start]
    while todo:
        q = todo.pop()
        for x in E.elements:
            if x not in q:
                r = closure(E, q | {x})
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
    return tuple(_sort_members(seen))


@memoized
def blocks_by_subalgebras(E):
    """Maximal sub-effect algebras that satisfy RDP in their own right."""
    rdp = [q for q in sub_effect_algebras(E) if riesz_failure(restrict(E, q)) is None]
    return tuple(_sort_members(_maximal(rdp)))


@memoized
def blocks(E):
    """Blocks of E, cross-checked between both characterizations.

    On non-homogeneous input only the compatibility-based family is
    returned and a :class:`NonHomogeneousWarning` is issued.
    """
    fam_a = blocks_by_compatibility(E)
    if not is_homogeneous(E):
        warnings.warn("algebra is not homogeneous; blocks cross-checks skipped",
                      NonHomogeneousWarning, stacklevel=2)
        return tuple(Block(b, E.unit in b) for b in fam_a)
    problems = block_violations(E, fam_a)
    if problems:
        raise InvariantError(f"block postcondition failed: {problems[0]}")
    return tuple(Block(b, True) for b in fam_a)


def block_violations(E, fam_a):
    d = derive(E)
    bad = []
    fam_b = blocks_by_subalgebras(E)
    if tuple(fam_a) != tuple(fam_b):
        bad.append(("compatibility blocks != RDP subalgebra blocks",
                    (tuple(map(sorted, fam_a)), tuple(map(sorted, fam_b)))))
    if frozenset().union(*fam_a) != frozenset(E.elements):
        bad.append(("blocks do not cover E", ()))
    sh = sharp_set(E)
    for b in fam_a:
        members = sorted(b)
        R = restrict(E, b)
        cb = frozenset(members[i] for i in center(R))
        if cb != sh & b:
            bad.append(("C(B) != Sh(E) & B", tuple(members)))
        for x in b:
            low = np.flatnonzero(d.leq[:, x] & d.leq[:, d.complement[x]])
            if not set(low.tolist()) <= b:
                bad.append(("{y <= x, x'} not inside block", (x,)))
    return bad


# -- Riesz decomposition and homogeneity -----------------------------------


def _splitting_failure(E, homogeneous_only):
    d = derive(E)
    t = E.table
    reach = np.zeros(E.n + 1, dtype=bool)
    for v1, v2 in zip(*np.nonzero(t != UNDEF)):
        if v1 > v2:
            continue
        s = t[v1, v2]
        reach[:] = False
        reach[t[np.ix_(d.down(v1), d.down(v2))].ravel()] = True
        need = d.leq[:, s] & ~reach[: E.n]
        if homogeneous_only:
            need &= d.leq[s, d.complement]
        if need.any():
            return (int(np.argmax(need)), int(v1), int(v2))
    return None


@memoized
def riesz_failure(E):
    """``(u, v1, v2)`` with ``u <= v1+v2`` that does not split, or None."""
    return _splitting_failure(E, homogeneous_only=False)


@memoized
def homogeneity_failure(E):
    """``(u, v1, v2)`` with ``u <= v1+v2 <= u'`` that does not split, or None."""
    return _splitting_failure(E, homogeneous_only=True)


def is_homogeneous(E):
    return homogeneity_failure(E) is None


@memoized
def has_rdp(E):
    """Riesz decomposition property, cross-checked against homogeneity."""
    rdp = riesz_failure(E) is None
    homog = is_homogeneous(E)
    if rdp != (homog and is_compatible_whole(E)):
        raise InvariantError("RDP != homogeneous and compatible")
    if (is_orthoalgebra(E) or is_lattice(E)) and not homog:
        raise InvariantError("orthoalgebra/lattice that is not homogeneous")
    return rdp


# -- orthocompleteness and maximality --------------------------------------


@memoized
def orthocomplete_failure(E):
    """A finite orthogonal family whose sum is not the join of its subsums."""
    d = derive(E)
    for fam, total, subsums in orthogonal_families(E, E.elements):
        if total not in subsums or not all(d.leq[s, total] for s in subsums):
            return fam
    return None


def is_orthocomplete(E):
    return orthocomplete_failure(E) is None


@memoized
def maximal_lower_bounds(E):
    """One maximal lower bound per pair (always exists on a finite carrier)."""
    d = derive(E)
    out = {}
    for x, y in itertools.combinations_with_replacement(E.elements, 2):
        low = d.lower_bounds(x, y)
        maxi = [w for w in sorted(low) if not any(d.leq[w, v] and v != w for v in low)]
        if maxi:
            out[(x, y)] = maxi[0]
    return out


def has_maximality_property(E):
    n = E.n
    return len(maximal_lower_bounds(E)) == n * (n + 1) // 2


# -- property report --------------------------------------------------------


FLAG_NAMES = (
    "archimedean", "atomic", "compatibleWhole", "homogeneous", "lattice",
    "maximalityProperty", "mv", "orthoalgebra", "orthocomplete", "rdp",
    "sharplyDominating", "trt",
)


@dataclass
class PropertyReport:
    """Decided properties with counterexample witnesses (label lists)."""

    flags: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def to_dict(self, name, n):
        return {"algebra": name, "n": n, "flags": dict(self.flags),
                "witnesses": dict(self.witnesses)}

    def to_json(self, name, n, **extra):
        doc = self.to_dict(name, n)
        doc.update(extra)
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def property_report(E):
    from .trt import trt_check

    d = derive(E)
    flags, wit = {}, {}

    def put(name, ok, witness=()):
        flags[name] = bool(ok)
        if not ok:
            wit[name] = E.names(witness)

    for x in E.elements:
        if x != E.zero:
            ord_of(E, x)
    put("archimedean", True)
    put("atomic", all(any(d.leq[a, x] for a in atoms(E)) for x in E.elements if x != E.zero))
    ortho = [x for x in E.elements if x != E.zero and E.table[x, x] != UNDEF]
    put("orthoalgebra", not ortho, ortho[:1])
    no_bound = np.argwhere((d.meet == UNDEF) | (d.join == UNDEF))
    put("lattice", len(no_bound) == 0, no_bound[0].tolist() if len(no_bound) else ())
    rf = riesz_failure(E)
    rdp = has_rdp(E)
    put("rdp", rdp, rf or ())
    put("mv", flags["lattice"] and rdp, no_bound[0].tolist() if len(no_bound) else (rf or ()))
    put("homogeneous", is_homogeneous(E), homogeneity_failure(E) or ())
    whole = is_compatible_whole(E)
    bad_pair = ()
    if not whole:
        bad_pair = next(((x, y) for x, y in itertools.combinations(E.elements, 2)
                         if not comp(E, x, y)), tuple(E.elements))
    put("compatibleWhole", whole, bad_pair)
    hat = sharp_covers(E)[1]
    put("sharplyDominating", is_sharply_dominating(E), np.flatnonzero(hat == UNDEF)[:1].tolist())
    put("orthocomplete", is_orthocomplete(E), orthocomplete_failure(E) or ())
    put("maximalityProperty", has_maximality_property(E))
    tr = trt_check(E)
    put("trt", tr.is_trt, tr.first_witness())
    return PropertyReport(flags=flags, witnesses=wit)
