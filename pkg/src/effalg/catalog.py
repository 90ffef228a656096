"""Standard example algebras and exhaustive enumeration of small ones."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .core import UNDEF, EffectAlgebra, InvariantError, validate_ea
from .iso import canonical_form

KINDS = ("chain", "boolean", "mo", "product", "hsum", "diamond")
MAX_ENUM_SIZE = 8


@dataclass(frozen=True)
class GeneratorSpec:
    """A generator call such as ``chain(3)`` or ``product(chain(2),mo(2))``."""

    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        ints = [p for p in self.params if isinstance(p, int)]
        subs = [p for p in self.params if isinstance(p, GeneratorSpec)]
        if self.kind in ("chain", "boolean", "mo"):
            if len(self.params) != 1 or len(ints) != 1:
                raise ValueError(f"{self.kind} takes one integer")
            if ints[0] < 1:
                raise ValueError(f"{self.kind} parameter must be >= 1")
        elif self.kind in ("product", "hsum"):
            if len(self.params) != 2 or len(subs) != 2:
                raise ValueError(f"{self.kind} takes two generator specs")
        elif self.params:
            raise ValueError("diamond takes no parameters")

    def __str__(self):
        if not self.params:
            return self.kind
        return f"{self.kind}({','.join(str(p) for p in self.params)})"

    @classmethod
    def parse(cls, text):
        tokens = re.findall(r"\w+|[(),]", text)
        if "".join(tokens) != re.sub(r"\s+", "", text):
            raise ValueError(f"cannot parse generator spec {text!r}")
        pos = 0

        def expect(tok):
            nonlocal pos
            if pos >= len(tokens) or tokens[pos] != tok:
                raise ValueError(f"expected {tok!r} in {text!r}")
            pos += 1

        def spec():
            nonlocal pos
            if pos >= len(tokens):
                raise ValueError(f"truncated generator spec {text!r}")
            kind = tokens[pos]
            pos += 1
            params = []
            if pos < len(tokens) and tokens[pos] == "(":
                pos += 1
                while True:
                    tok = tokens[pos] if pos < len(tokens) else ""
                    if tok.isdigit():
                        params.append(int(tok))
                        pos += 1
                    else:
                        params.append(spec())
                    if pos < len(tokens) and tokens[pos] == ",":
                        pos += 1
                        continue
                    expect(")")
                    break
            return cls(kind, tuple(params))

        out = spec()
        if pos != len(tokens):
            raise ValueError(f"trailing tokens in {text!r}")
        return out

    @classmethod
    def from_args(cls, kind, args):
        """Spec from CLI words, e.g. ``("chain", ["3"])`` or ``("product", ["chain(2)", "mo(2)"])``."""
        if not args:
            return cls.parse(kind)
        return cls.parse(f"{kind}({','.join(args)})")


def _chain(n):
    t = np.full((n + 1, n + 1), UNDEF, dtype=np.int64)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            t[i, j] = i + j
    labels = ["0"] + [("a" if i == 1 else f"{i}a") for i in range(1, n)] + ["1"]
    return EffectAlgebra(t, 0, n, labels)


def _boolean(k):
    size = 1 << k
    t = np.full((size, size), UNDEF, dtype=np.int64)
    for a in range(size):
        for b in range(size):
            if a & b == 0:
                t[a, b] = a | b
    letters = "abcdefghijklmnopqrstuvwxyz"
    labels = ["".join(letters[i] for i in range(k) if m >> i & 1) or "0" for m in range(size)]
    return EffectAlgebra(t, 0, size - 1, labels)


def _mo(k):
    n = 2 * k + 2
    t = np.full((n, n), UNDEF, dtype=np.int64)
    for x in range(n):
        t[0, x] = t[x, 0] = x
    for i in range(k):
        a, ac = 1 + 2 * i, 2 + 2 * i
        t[a, ac] = t[ac, a] = n - 1
    labels = ["0"] + [lab for i in range(1, k + 1) for lab in (f"a{i}", f"a{i}'")] + ["1"]
    return EffectAlgebra(t, 0, n - 1, labels)


def _product(A, B):
    pairs = [(a, b) for a in A.elements for b in B.elements]
    pos = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    t = np.full((n, n), UNDEF, dtype=np.int64)
    for i, (a1, b1) in enumerate(pairs):
        for j, (a2, b2) in enumerate(pairs):
            sa, sb = A.oplus(a1, a2), B.oplus(b1, b2)
            if sa is not None and sb is not None:
                t[i, j] = pos[(sa, sb)]
    labels = [f"({A.label(a)},{B.label(b)})" for a, b in pairs]
    return EffectAlgebra(t, pos[(A.zero, B.zero)], pos[(A.unit, B.unit)], labels)


def _hsum(A, B):
    ia = [x for x in A.elements if x not in (A.zero, A.unit)]
    ib = [x for x in B.elements if x not in (B.zero, B.unit)]
    n = 2 + len(ia) + len(ib)
    unit = n - 1
    amap = {A.zero: 0, A.unit: unit, **{x: 1 + k for k, x in enumerate(ia)}}
    bmap = {B.zero: 0, B.unit: unit, **{x: 1 + len(ia) + k for k, x in enumerate(ib)}}
    t = np.full((n, n), UNDEF, dtype=np.int64)
    for src, m in ((A, amap), (B, bmap)):
        for x in src.elements:
            for y in src.elements:
                s = src.oplus(x, y)
                if s is not None:
                    t[m[x], m[y]] = m[s]
    la, lb = A.names(ia), B.names(ib)
    if set(la) & set(lb) or {"0", "1"} & set(la + lb):
        la = [f"{lab}_1" for lab in la]
        lb = [f"{lab}_2" for lab in lb]
    return EffectAlgebra(t, 0, unit, ["0"] + la + lb + ["1"])


def generate(spec):
    """Build the algebra described by a :class:`GeneratorSpec` (or its text)."""
    if isinstance(spec, str):
        spec = GeneratorSpec.parse(spec)
    k, p = spec.kind, spec.params
    if k == "chain":
        E = _chain(p[0])
    elif k == "boolean":
        E = _boolean(p[0])
    elif k == "mo":
        E = _mo(p[0])
    elif k == "product":
        E = _product(generate(p[0]), generate(p[1]))
    elif k == "hsum":
        E = _hsum(generate(p[0]), generate(p[1]))
    else:
        E = _hsum(_chain(2), _chain(2)).relabel(["0", "a", "b", "1"])
    if not validate_ea(E).valid:
        raise InvariantError(f"generator {spec} produced an invalid table")
    return E


def standard_catalog(max_size=16):
    """Named standard examples: chains, Boolean algebras, MO(k), diamond, products, hsums."""
    base = ([f"chain({n})" for n in range(1, 9)]
            + [f"boolean({k})" for k in range(1, 5)]
            + [f"mo({k})" for k in range(1, 4)]
            + ["diamond"])
    small = ["chain(1)", "chain(2)", "chain(3)", "boolean(2)", "mo(2)", "diamond"]
    combos = []
    for a, b in itertools.combinations_with_replacement(small, 2):
        combos.append(f"product({a},{b})")
        combos.append(f"hsum({a},{b})")
    combos += ["product(chain(2),chain(1))", "hsum(mo(3),chain(4))", "hsum(diamond,boolean(3))"]
    out = {}
    for text in base + combos:
        E = generate(text)
        if E.n <= max_size:
            out[text] = E
    return out


# -- exhaustive enumeration -------------------------------------------------

_UNKNOWN = -2


def _assoc_ok(T, x, y, z):
    xy, yz = T[x][y], T[y][z]
    if xy == _UNKNOWN or yz == _UNKNOWN:
        return True
    left = UNDEF if xy == UNDEF else T[xy][z]
    right = UNDEF if yz == UNDEF else T[x][yz]
    if left == _UNKNOWN or right == _UNKNOWN:
        return True
    return left == right


def _local_assoc_ok(T, n, p, q):
    """Associativity on every triple that reads cell ``(p, q)`` or ``(q, p)``."""
    for w in range(n):
        if not (_assoc_ok(T, p, q, w) and _assoc_ok(T, q, p, w)
                and _assoc_ok(T, w, p, q) and _assoc_ok(T, w, q, p)):
            return False
    for a in range(n):
        row = T[a]
        for b in range(n):
            v = row[b]
            if v == p and not (_assoc_ok(T, a, b, q) and _assoc_ok(T, q, a, b)):
                return False
            if v == q and not (_assoc_ok(T, a, b, p) and _assoc_ok(T, p, a, b)):
                return False
    return True


def _forced_table(n, fill):
    """Zero row/column (``x+0 = x``) and unit row/column (``1+x`` only for x=0)."""
    u = n - 1
    T = [[fill] * n for _ in range(n)]
    for x in range(n):
        T[0][x] = T[x][0] = x
        if x:
            T[u][x] = T[x][u] = UNDEF
    return T


def _raw_tables(n):
    """All valid tables with zero=0, unit=n-1, found by pruned backtracking."""
    u = n - 1
    if n == 2:
        yield _forced_table(2, UNDEF)
        return
    T = _forced_table(n, _UNKNOWN)
    interior = range(1, n - 1)
    cells = [(i, j) for i in interior for j in interior if i <= j]
    used = [set(T[x][0:1]) for x in range(n)]
    row_end = {(i, n - 2) for i in interior}

    def rec(k):
        if k == len(cells):
            yield T
            return
        i, j = cells[k]
        for v in itertools.chain((UNDEF,), range(1, n)):
            if v != UNDEF:
                # cancellation: sums in a row are distinct and never reproduce the row element
                if v == i or v == j or v in used[i] or v in used[j]:
                    continue
            T[i][j] = T[j][i] = v
            if v != UNDEF:
                used[i].add(v)
                used[j].add(v)
            ok = _local_assoc_ok(T, n, i, j)
            if ok and (i, j) in row_end:
                # row i is complete: it must contain the unit (complement exists)
                ok = u in T[i]
            if ok:
                yield from rec(k + 1)
            if v != UNDEF:
                used[i].discard(v)
                used[j].discard(v)
            T[i][j] = T[j][i] = _UNKNOWN

    yield from rec(0)


def _sort_key(E):
    return (E.n, tuple(E.table.ravel().tolist()))


def enumerate_size(n):
    """One canonical representative per isomorphism class of size ``n``."""
    if not 2 <= n <= MAX_ENUM_SIZE:
        raise ValueError(f"size must be between 2 and {MAX_ENUM_SIZE}")
    classes = {}
    for T in _raw_tables(n):
        E = EffectAlgebra(np.array(T, dtype=np.int64), 0, n - 1)
        if not validate_ea(E).valid:
            raise InvariantError("enumerator emitted a table failing the axioms")
        C = canonical_form(E)
        classes.setdefault(C.table.tobytes(), C)
    return sorted(classes.values(), key=_sort_key)


def enumerate_all(max_n):
    """All effect algebras with at most ``max_n`` elements, up to isomorphism."""
    if not 2 <= max_n <= MAX_ENUM_SIZE:
        raise ValueError(f"max size must be between 2 and {MAX_ENUM_SIZE}")
    out = []
    for n in range(2, max_n + 1):
        out.extend(enumerate_size(n))
    return out


# -- naive oracle -----------------------------------------------------------


def _naive_is_effect_algebra(t, n, zero, unit):
    """Direct transcription of (Ei)-(Eiv) on a list-of-lists table."""
    R = range(n)
    for x in R:
        for y in R:
            if t[x][y] != t[y][x]:
                return False
    for x in R:
        for y in R:
            for z in R:
                xy, yz = t[x][y], t[y][z]
                left = t[xy][z] if xy != UNDEF else UNDEF
                right = t[x][yz] if yz != UNDEF else UNDEF
                if (left != UNDEF or right != UNDEF) and left != right:
                    return False
    for x in R:
        if sum(1 for y in R if t[x][y] == unit) != 1:
            return False
    for x in R:
        if t[unit][x] != UNDEF and x != zero:
            return False
    return True


def _naive_min_relabel(t, n):
    best = None
    for perm in itertools.permutations(range(1, n - 1)):
        p = (0,) + perm + (n - 1,)
        q = [0] * n
        for old, new in enumerate(p):
            q[new] = old
        key = tuple(UNDEF if t[q[a]][q[b]] == UNDEF else p[t[q[a]][q[b]]]
                    for a in range(n) for b in range(n))
        if best is None or key < best:
            best = key
    return best


def naive_class_counts(max_n, fix_forced_rows=True):
    """Class counts by unpruned table filling plus a full axiom re-check.

    With ``fix_forced_rows`` the zero and unit rows are set to the only
    values the axioms allow; otherwise every upper-triangle cell is free.
    Isomorphism classes are separated by brute force over all relabelings.
    """
    counts = {}
    for n in range(2, max_n + 1):
        zero, unit = 0, n - 1
        if fix_forced_rows:
            base = _forced_table(n, UNDEF)
            cells = [(i, j) for i in range(1, n - 1) for j in range(i, n - 1)]
        else:
            base = [[UNDEF] * n for _ in range(n)]
            cells = [(i, j) for i in range(n) for j in range(i, n)]
        seen = set()
        for values in itertools.product(range(-1, n), repeat=len(cells)):
            t = [row[:] for row in base]
            for (i, j), v in zip(cells, values):
                t[i][j] = t[j][i] = v
            if _naive_is_effect_algebra(t, n, zero, unit):
                seen.add(_naive_min_relabel(t, n))
        counts[n] = len(seen)
    return counts
