"""Isomorphism search and canonical forms for finite effect algebras."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import UNDEF, EffectAlgebra, derive, is_lattice, is_orthoalgebra, memoized
from .structure import atoms, heights, ord_of, sharp_set


@memoized
def element_invariants(E):
    """Per-element tuple preserved by every isomorphism."""
    d = derive(E)
    sh, at, ht = sharp_set(E), atoms(E), heights(E)
    defined = (E.table != UNDEF).sum(axis=1)
    out = []
    for x in E.elements:
        out.append((
            0 if x == E.zero else ord_of(E, x),
            int(defined[x]),
            x in at,
            x in sh,
            ht[x],
            int(d.leq[:, x].sum()),
            int(d.leq[x].sum()),
            ht[d.complement[x]],
        ))
    return tuple(out)


@dataclass(frozen=True)
class Fingerprint:
    elements: tuple
    lattice: bool
    orthoalgebra: bool


def fingerprint(E):
    return Fingerprint(tuple(sorted(element_invariants(E))), is_lattice(E), is_orthoalgebra(E))


def is_isomorphism(A, B, f):
    """Exhaustive check that ``f`` (tuple, A index -> B index) is an isomorphism."""
    if A.n != B.n or sorted(f) != list(range(B.n)):
        return False
    if f[A.zero] != B.zero or f[A.unit] != B.unit:
        return False
    f = np.asarray(f)
    mapped = np.where(A.table == UNDEF, UNDEF, f[A.table])
    return bool((B.table[np.ix_(f, f)] == mapped).all())


def find_isomorphism(A, B):
    """An isomorphism ``A -> B`` as a tuple of B indices, or None.

    Complete backtracking with 0 and 1 pinned; each element only tries
    targets with the same invariants, rarest invariant classes first.
    """
    if A.n != B.n or fingerprint(A) != fingerprint(B):
        return None
    ia, ib = element_invariants(A), element_invariants(B)
    by_inv = {}
    for y in B.elements:
        by_inv.setdefault(ib[y], []).append(y)
    rest = [x for x in A.elements if x not in (A.zero, A.unit)]
    rest.sort(key=lambda x: (len(by_inv[ia[x]]), ia[x], x))
    order = [A.zero, A.unit] + rest
    f, finv = {}, {}
    ta, tb = A.table, B.table

    def fits(x, y):
        f[x], finv[y] = y, x
        for u, v in f.items():
            a, b = int(ta[x, u]), int(tb[y, v])
            if (a == UNDEF) != (b == UNDEF):
                break
            if a != UNDEF and ((a in f and f[a] != b) or (b in finv and finv[b] != a)):
                break
        else:
            return True
        del f[x], finv[y]
        return False

    def search(k):
        if k == len(order):
            return True
        x = order[k]
        if x == A.zero or x == A.unit:
            cands = [B.zero if x == A.zero else B.unit]
        else:
            cands = [y for y in by_inv[ia[x]] if y not in finv and y not in (B.zero, B.unit)]
        for y in cands:
            if ia[x] != ib[y]:
                continue
            if fits(x, y):
                if search(k + 1):
                    return True
                del f[x], finv[y]
        return False

    if not search(0):
        return None
    result = tuple(f[x] for x in A.elements)
    if not is_isomorphism(A, B, result):
        raise AssertionError("backtracking returned a non-isomorphism")
    return result


def _class_permutations(E):
    """Yield old->new index arrays fixing zero->0 and unit->n-1, class-ordered."""
    inv = element_invariants(E)
    n = E.n
    interior = sorted((x for x in E.elements if x not in (E.zero, E.unit)),
                      key=lambda x: inv[x])
    groups = [list(g) for _, g in itertools.groupby(interior, key=lambda x: inv[x])]
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        new_of_old = np.empty(n, dtype=np.int64)
        new_of_old[E.zero] = 0
        new_of_old[E.unit] = n - 1
        pos = 1
        for block in choice:
            for x in block:
                new_of_old[x] = pos
                pos += 1
        yield new_of_old


def _best_relabeling(E, chunk=2048):
    n = E.n
    t = E.table
    best_key, best_perm = None, None
    perms = _class_permutations(E)
    while True:
        batch = list(itertools.islice(perms, chunk))
        if not batch:
            break
        P = np.stack(batch)
        Q = np.argsort(P, axis=1)
        Pad = np.concatenate([P, np.full((len(P), 1), UNDEF, dtype=np.int64)], axis=1)
        Tq = t[Q[:, :, None], Q[:, None, :]].reshape(len(P), -1)
        C = np.take_along_axis(Pad, Tq, axis=1)
        i = np.lexsort(C.T[::-1])[0]
        key = tuple(C[i].tolist())
        if best_key is None or key < best_key:
            best_key, best_perm = key, P[i]
    return best_key, best_perm


@memoized
def canonical_form(E):
    """Relabeled copy shared by every algebra isomorphic to ``E``.

    Zero goes to index 0, unit to ``n-1``, labels become ``e0..e{n-1}``,
    and the table is the lexicographically least over relabelings that
    respect the element invariants.
    """
    key, _ = _best_relabeling(E)
    n = E.n
    return EffectAlgebra(np.array(key, dtype=np.int64).reshape(n, n), 0, n - 1)


def canonical_key(E):
    return canonical_form(E).table.tobytes()
