"""Finite effect algebras stored as dense partial-sum tables.

An algebra on ``n`` elements is an ``n x n`` integer table whose entry
``(i, j)`` is the index of ``i + j`` or :data:`UNDEF`.  Elements are indices
internally; labels are only used for text I/O and reports.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

UNDEF = -1

AXIOMS_EA = ("Ei", "Eii", "Eiii", "Eiv")
AXIOMS_GEA = ("GE1", "GE2", "GE3", "GE4", "GE5")


class ParseError(ValueError):
    """Malformed ``.ea`` / ``.triple`` text."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class AlgebraError(ValueError):
    """An operation was called on an algebra that does not meet its precondition."""


class InvariantError(AssertionError):
    """Two computations that must agree did not.  Always an implementation bug."""


def memoized(fn):
    """Cache ``fn(algebra, *args)`` on the (immutable) algebra instance."""

    @functools.wraps(fn)
    def wrapper(algebra, *args):
        key = (fn.__qualname__, args)
        cache = algebra._cache
        if key not in cache:
            cache[key] = fn(algebra, *args)
        return cache[key]

    return wrapper


class _PartialAlgebra:
    """Common storage for a carrier with a partial commutative sum."""

    def __init__(self, table, zero, labels=None):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise ValueError(f"table must be square, got shape {t.shape}")
        n = t.shape[0]
        if n < 1:
            raise ValueError("empty carrier")
        if ((t < UNDEF) | (t >= n)).any():
            raise ValueError("table entry out of range")
        if not 0 <= zero < n:
            raise ValueError(f"zero index {zero} out of range")
        if labels is None:
            labels = [f"e{i}" for i in range(n)]
        labels = tuple(str(lab) for lab in labels)
        if len(labels) != n:
            raise ValueError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise ValueError("duplicate labels")
        for lab in labels:
            if not lab or any(ch.isspace() for ch in lab) or lab == ".":
                raise ValueError(f"invalid label {lab!r}")
        t.setflags(write=False)
        self.table = t
        self.n = n
        self.zero = int(zero)
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._cache = {}

    @property
    def elements(self):
        return range(self.n)

    def oplus(self, x, y):
        """``x + y`` as an index, or None when undefined."""
        v = self.table[x, y]
        return None if v == UNDEF else int(v)

    def label(self, x):
        return self.labels[x]

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"no element labelled {label!r}") from None

    def names(self, xs):
        return [self.labels[x] for x in xs]

    @functools.cached_property
    def padded(self):
        # row/column n is all UNDEF, so table[UNDEF, z] == UNDEF via index -1
        p = np.full((self.n + 1, self.n + 1), UNDEF, dtype=np.int64)
        p[: self.n, : self.n] = self.table
        p.setflags(write=False)
        return p

    def _key(self):
        return (type(self).__name__, self.zero, getattr(self, "unit", None),
                self.labels, self.table.tobytes(), self.n)

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


class EffectAlgebra(_PartialAlgebra):
    """A finite effect algebra candidate ``(E; +, 0, 1)``.

    Construction checks only shape, index range and ``zero != unit``;
    the axioms are checked by :func:`validate_ea` so that invalid tables
    (mutants, partial search states) can still be held and reported on.
    """

    def __init__(self, table, zero, unit, labels=None):
        super().__init__(table, zero, labels)
        if self.n < 2:
            raise ValueError("an effect algebra needs at least two elements")
        if not 0 <= unit < self.n:
            raise ValueError(f"unit index {unit} out of range")
        if unit == zero:
            raise ValueError("zero and unit must differ")
        self.unit = int(unit)

    def __repr__(self):
        return f"EffectAlgebra(n={self.n}, labels={list(self.labels)})"

    def relabel(self, labels):
        return EffectAlgebra(self.table, self.zero, self.unit, labels)

    @property
    def is_valid(self):
        return validate_ea(self).valid

    @property
    def derived(self):
        return derive(self)


class GeneralizedEffectAlgebra(_PartialAlgebra):
    """A finite generalized effect algebra ``(G; +, 0)`` (no unit)."""

    def __repr__(self):
        return f"GeneralizedEffectAlgebra(n={self.n}, labels={list(self.labels)})"

    @property
    def is_valid(self):
        return validate_gea(self).valid


@dataclass
class ValidationReport:
    """Outcome of an exhaustive axiom check.

    ``violations`` holds ``(axiom_tag, witness_indices)`` pairs in axiom order.
    """

    violations: list = field(default_factory=list)

    @property
    def valid(self):
        return not self.violations

    @property
    def tags(self):
        return sorted({tag for tag, _ in self.violations}, key=_tag_order)

    def describe(self, algebra, limit=None):
        lines = []
        for tag, witness in self.violations[:limit]:
            lines.append(f"{tag}: " + " ".join(algebra.names(witness)))
        return lines


def _tag_order(tag):
    order = AXIOMS_EA + AXIOMS_GEA
    return order.index(tag) if tag in order else len(order)


def _commutativity(t):
    i, j = np.nonzero(t != t.T)
    return [(int(a), int(b)) for a, b in zip(i, j) if a < b]


def _associativity(algebra):
    # (x+y)+z == x+(y+z) with UNDEF == UNDEF covers "if one side is defined"
    n, p = algebra.n, algebra.padded
    t = p[:n, :n]
    idx = np.arange(n)
    left = p[t[:, :, None], idx[None, None, :]]
    right = p[idx[:, None, None], t[None, :, :]]
    return [tuple(int(v) for v in w) for w in np.argwhere(left != right)]


def validate_ea(E):
    """Check (Ei)-(Eiv) exhaustively and collect every violation."""
    cached = E._cache.get("validate_ea")
    if cached is not None:
        return cached
    t = E.table
    report = ValidationReport()
    report.violations += [("Ei", w) for w in _commutativity(t)]
    report.violations += [("Eii", w) for w in _associativity(E)]
    for x in E.elements:
        complements = np.flatnonzero(t[x] == E.unit)
        if len(complements) != 1:
            report.violations.append(("Eiii", (x, *map(int, complements))))
    for x in E.elements:
        if x != E.zero and t[E.unit, x] != UNDEF:
            report.violations.append(("Eiv", (x,)))
    E._cache["validate_ea"] = report
    return report


def validate_gea(G):
    """Check (GE1)-(GE5) exhaustively and collect every violation."""
    cached = G._cache.get("validate_gea")
    if cached is not None:
        return cached
    t = G.table
    report = ValidationReport()
    report.violations += [("GE1", w) for w in _commutativity(t)]
    report.violations += [("GE2", w) for w in _associativity(G)]
    for x in G.elements:
        seen = {}
        for y in G.elements:
            v = int(t[x, y])
            if v == UNDEF:
                continue
            if v in seen:
                report.violations.append(("GE3", (x, seen[v], y)))
            else:
                seen[v] = y
    for x, y in np.argwhere(t == G.zero):
        if x != G.zero or y != G.zero:
            report.violations.append(("GE4", (int(x), int(y))))
    for x in G.elements:
        if t[x, G.zero] != x:
            report.violations.append(("GE5", (x,)))
    G._cache["validate_gea"] = report
    return report


def order_from_table(table):
    """Derived order and difference of a partial sum table.

    Returns ``(leq, ominus)`` where ``leq[x, y]`` iff ``x + z = y`` for some
    ``z`` and ``ominus[y, x]`` is that ``z`` (UNDEF when ``x`` is not below ``y``).
    """
    n = table.shape[0]
    leq = np.zeros((n, n), dtype=bool)
    ominus = np.full((n, n), UNDEF, dtype=np.int64)
    xs, zs = np.nonzero(table != UNDEF)
    ys = table[xs, zs]
    leq[xs, ys] = True
    ominus[ys, xs] = zs
    leq.setflags(write=False)
    ominus.setflags(write=False)
    return leq, ominus


def extremum_tables(leq):
    """Meet and join tables of a finite order (UNDEF where none exists)."""
    n = leq.shape[0]
    # lower[x, y, z]: z <= x and z <= y
    lower = leq.T[:, None, :] & leq.T[None, :, :]
    upper = leq[:, None, :] & leq[None, :, :]

    def pick(bounds, above):
        # m is the extremum iff m is a bound and every bound b satisfies above[b, m]
        flat = bounds.reshape(n * n, n).astype(np.int64)
        beaten = (flat @ (~above).astype(np.int64)) > 0
        ok = bounds.reshape(n * n, n) & ~beaten
        out = np.where(ok.any(axis=1), ok.argmax(axis=1), UNDEF).reshape(n, n)
        out.setflags(write=False)
        return out

    return pick(lower, leq), pick(upper, leq.T)


@dataclass(frozen=True)
class DerivedStructure:
    """Order, complement and difference derived from the sum table."""

    leq: np.ndarray
    complement: np.ndarray
    ominus: np.ndarray
    meet: np.ndarray
    join: np.ndarray

    def lower_bounds(self, x, y):
        return frozenset(int(z) for z in np.flatnonzero(self.leq[:, x] & self.leq[:, y]))

    def upper_bounds(self, x, y):
        return frozenset(int(z) for z in np.flatnonzero(self.leq[x] & self.leq[y]))

    def down(self, x):
        return np.flatnonzero(self.leq[:, x])

    def up(self, x):
        return np.flatnonzero(self.leq[x])


def derive(E):
    """Derived order ``<=``, complement ``'`` and difference of a valid algebra."""
    cached = E._cache.get("derive")
    if cached is not None:
        return cached
    if not validate_ea(E).valid:
        raise AlgebraError("derive() needs an algebra that passes validate_ea")
    leq, ominus = order_from_table(E.table)
    complement = np.array([int(np.flatnonzero(E.table[x] == E.unit)[0]) for x in E.elements])
    complement.setflags(write=False)
    meet, join = extremum_tables(leq)
    d = DerivedStructure(leq=leq, complement=complement, ominus=ominus, meet=meet, join=join)
    E._cache["derive"] = d
    return d


def bound(E, x, y, direction="meet"):
    """Greatest lower (``meet``) or least upper (``join``) bound, or None."""
    d = derive(E)
    if direction == "meet":
        v = d.meet[x, y]
    elif direction == "join":
        v = d.join[x, y]
    else:
        raise ValueError(f"direction must be 'meet' or 'join', not {direction!r}")
    return None if v == UNDEF else int(v)


def meet(E, x, y):
    return bound(E, x, y, "meet")


def join(E, x, y):
    return bound(E, x, y, "join")


def is_lattice(E):
    d = derive(E)
    return bool((d.meet != UNDEF).all() and (d.join != UNDEF).all())


def is_orthoalgebra(E):
    diag = np.diagonal(E.table)
    return all(diag[x] == UNDEF for x in E.elements if x != E.zero)


@dataclass(frozen=True)
class Classification:
    is_orthoalgebra: bool
    is_lattice: bool
    is_mv: bool


def classify(E):
    from .structure import has_rdp

    lattice = is_lattice(E)
    return Classification(
        is_orthoalgebra=is_orthoalgebra(E),
        is_lattice=lattice,
        is_mv=lattice and has_rdp(E),
    )


def restrict(E, members):
    """The sub-effect algebra on ``members`` (must be closed under defined sums)."""
    members = sorted(members)
    pos = {x: i for i, x in enumerate(members)}
    k = len(members)
    t = np.full((k, k), UNDEF, dtype=np.int64)
    for i, x in enumerate(members):
        for j, y in enumerate(members):
            v = E.table[x, y]
            if v != UNDEF:
                if int(v) not in pos:
                    raise AlgebraError(f"{E.label(x)}+{E.label(y)} leaves the subset")
                t[i, j] = pos[int(v)]
    return EffectAlgebra(t, pos[E.zero], pos[E.unit], E.names(members))


def is_sub_effect_algebra(E, members):
    """Closure test: contains 1, and two of ``x, y, x+y`` in Q force the third."""
    q = set(members)
    if E.unit not in q:
        return False
    xs, ys = np.nonzero(E.table != UNDEF)
    for x, y in zip(xs.tolist(), ys.tolist()):
        z = int(E.table[x, y])
        if (x in q) + (y in q) + (z in q) == 2:
            return False
    return True
