"""Triples ``(Sh(E), Mea(E), h)`` and reconstruction of E from them.

Every map that the reconstruction needs (the least sharp cover of a
meager element, meets with sharp elements, the partner map ``R`` and the
partial map ``S``) is available in two forms: read off E directly
(:class:`AlgebraView`) and recovered from the triple alone
(:class:`TripleView`).  ``TripleView`` only ever sees a :class:`Triple`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import (
    UNDEF,
    AlgebraError,
    EffectAlgebra,
    GeneralizedEffectAlgebra,
    InvariantError,
    derive,
    extremum_tables,
    order_from_table,
    restrict,
    validate_ea,
    validate_gea,
)
from .structure import (
    blocks,
    homogeneity_failure,
    is_homogeneous,
    is_sharply_dominating,
    meager_gea,
    meager_set,
    sharp_covers,
    sharp_set,
)


@dataclass(frozen=True)
class Triple:
    """``((Sh, +_Sh), (Mea, +_Mea), h)`` with ``h[s]`` a set of meager indices."""

    sharp: EffectAlgebra
    meager: GeneralizedEffectAlgebra
    h: tuple


def triple_violations(T):
    """Structural problems with a triple (empty list when it is well formed)."""
    bad = []
    if len(T.h) != T.sharp.n:
        return [f"h has {len(T.h)} entries for {T.sharp.n} sharp elements"]
    if not validate_ea(T.sharp).valid:
        return ["sharp part is not an effect algebra"]
    if not validate_gea(T.meager).valid:
        return ["meager part is not a generalized effect algebra"]
    sd = derive(T.sharp)
    mleq, _ = order_from_table(T.meager.table)
    mz = T.meager.zero
    if T.h[T.sharp.zero] != {mz}:
        bad.append("h(0) != {0}")
    for s in range(T.sharp.n):
        if mz not in T.h[s]:
            bad.append(f"0 not in h({T.sharp.label(s)})")
        for x in T.h[s]:
            if not set(np.flatnonzero(mleq[:, x]).tolist()) <= T.h[s]:
                bad.append(f"h({T.sharp.label(s)}) not downward closed")
                break
        for t in range(T.sharp.n):
            if sd.leq[s, t] and not T.h[s] <= T.h[t]:
                bad.append(f"h not monotone at {T.sharp.label(s)} <= {T.sharp.label(t)}")
    return bad


def _extreme(candidates, leq, top):
    """Unique maximum (``top``) or minimum of ``candidates`` under ``leq``."""
    cs = list(candidates)
    for c in cs:
        if all((leq[o, c] if top else leq[c, o]) for o in cs):
            return c
    return None


class _View:
    """Maps shared by both views; subclasses supply the primitives.

    Meager elements and sharp elements are integers in the view's own
    numbering.  Primitives: ``hat``, ``pi``, ``meet_m``, ``ominus_m``,
    ``sum_m``, ``in_h``, ``leq_m``, ``R``, plus ``meager``/``sharp`` lists,
    ``sharp_leq`` and ``sharp_sum``/``sharp_comp``.
    """

    def satisfies_partner(self, x, y):
        """Whether ``y`` passes the three partner tests that pin down ``hat(x) - x``.

        Same sharp cover as ``x``; ``x + (y - (x^y))`` stays under that cover;
        and for meager ``z`` under the cover, ``z + x`` stays under it exactly
        when ``z <= y`` with ``y - z`` still having the same cover.
        """
        xh = self.hat(x)
        if xh is None or self.hat(y) != xh:
            return False
        m = self.meet_m(x, y)
        if m is None:
            return False
        s = self.sum_m(x, self.ominus_m(y, m))
        if s is None or not self.in_h(s, xh):
            return False
        for z in self.meager:
            if not self.in_h(z, xh):
                continue
            zx = self.sum_m(z, x)
            lhs = zx is not None and self.in_h(zx, xh)
            rhs = self.leq_m(z, y) and self.hat(self.ominus_m(y, z)) == xh
            if lhs != rhs:
                return False
        return True

    def partner_candidates(self, x):
        return [y for y in self.meager if self.satisfies_partner(x, y)]

    def s_set(self, x, y):
        """``{z sharp | pi_z(x), pi_z(y) defined, z = hat(pi_z(x)), R(pi_z(x)) = pi_z(y)}``."""
        out = set()
        for z in self.sharp:
            px, py = self.pi(z, x), self.pi(z, y)
            if px is None or py is None:
                continue
            if self.hat(px) == z and self.R(px) == py:
                out.add(z)
        return frozenset(out)

    def S(self, x, y):
        return _extreme(self.s_set(x, y), self.sharp_leq, top=True)

    def oplus(self, x, y):
        """Sum of meager ``x, y`` as ``(sharp part, meager part)``, or None."""
        s = self.S(x, y)
        if s is None:
            return None
        rx = self.ominus_m(x, self.pi(s, x))
        ry = self.ominus_m(y, self.pi(s, y))
        res = self.sum_m(rx, ry)
        if res is None or not self.in_h(res, self.sharp_comp(s)):
            return None
        return s, res


class AlgebraView(_View):
    """The triple-level maps computed directly in E (E indices throughout)."""

    def __init__(self, E):
        if not is_sharply_dominating(E):
            raise AlgebraError("the triple maps need a sharply dominating algebra")
        self.E = E
        self.d = derive(E)
        self.meager = sorted(meager_set(E))
        self.sharp = sorted(sharp_set(E))
        self._mea = meager_set(E)
        self._hat = sharp_covers(E)[1]
        self.sharp_leq = self.d.leq
        G, embed = meager_gea(E)
        gleq, _ = order_from_table(G.table)
        gmeet, _ = extremum_tables(gleq)
        self._gmeet = gmeet
        self._gpos = {x: i for i, x in enumerate(embed)}
        self._embed = embed

    def hat(self, x):
        v = self._hat[x]
        return None if v == UNDEF else int(v)

    def pi(self, s, x):
        v = self.d.meet[x, s]
        return None if v == UNDEF else int(v)

    def meet_m(self, x, y):
        e = self.d.meet[x, y]
        g = self._gmeet[self._gpos[x], self._gpos[y]]
        g = UNDEF if g == UNDEF else self._embed[g]
        if e != g:
            raise InvariantError("meet in Mea(E) differs from meet in E")
        return None if e == UNDEF else int(e)

    def ominus_m(self, y, z):
        v = self.d.ominus[y, z]
        return None if v == UNDEF else int(v)

    def sum_m(self, x, y):
        v = self.E.oplus(x, y)
        return v if v is not None and v in self._mea else None

    def in_h(self, a, s):
        return bool(self.d.leq[a, s])

    def leq_m(self, a, b):
        return bool(self.d.leq[a, b])

    def R(self, x):
        return int(self.d.ominus[self._hat[x], x])

    def sharp_comp(self, s):
        return int(self.d.complement[s])

    def s_set_direct(self, x, y):
        """``{z sharp | z^x, z^y exist and z = (z^x) + (z^y)}``."""
        out = set()
        for z in self.sharp:
            a, b = self.d.meet[z, x], self.d.meet[z, y]
            if a != UNDEF and b != UNDEF and self.E.table[a, b] == z:
                out.add(z)
        return frozenset(out)


class TripleView(_View):
    """The same maps recovered from a :class:`Triple` alone (local indices)."""

    def __init__(self, T):
        problems = triple_violations(T)
        if problems:
            raise AlgebraError(f"malformed triple: {problems[0]}")
        self.T = T
        sd = derive(T.sharp)
        self._sd = sd
        self.sharp = list(range(T.sharp.n))
        self.meager = list(range(T.meager.n))
        self.sharp_leq = sd.leq
        self._mleq, self._mominus = order_from_table(T.meager.table)
        self._mmeet, _ = extremum_tables(self._mleq)
        self._hat_cache = {}
        self._r_cache = {}

    def hat(self, x):
        if x not in self._hat_cache:
            holders = [s for s in self.sharp if x in self.T.h[s]]
            self._hat_cache[x] = _extreme(holders, self.sharp_leq, top=False)
        return self._hat_cache[x]

    def pi(self, s, x):
        cands = [a for a in self.T.h[s] if self._mleq[a, x]]
        return _extreme(cands, self._mleq, top=True)

    def meet_m(self, x, y):
        v = self._mmeet[x, y]
        return None if v == UNDEF else int(v)

    def ominus_m(self, y, z):
        v = self._mominus[y, z]
        return None if v == UNDEF else int(v)

    def sum_m(self, x, y):
        return self.T.meager.oplus(x, y)

    def in_h(self, a, s):
        return a in self.T.h[s]

    def leq_m(self, a, b):
        return bool(self._mleq[a, b])

    def R(self, x):
        """The unique meager element passing the partner tests for ``x``."""
        if x not in self._r_cache:
            cands = self.partner_candidates(x)
            if len(cands) != 1:
                raise AlgebraError(
                    f"R({self.T.meager.label(x)}): {len(cands)} candidates satisfy "
                    "the partner conditions; the triple does not come from a TRT algebra")
            self._r_cache[x] = cands[0]
        return self._r_cache[x]

    def sharp_comp(self, s):
        return int(self._sd.complement[s])


# -- TRT conditions ---------------------------------------------------------


@dataclass
class TrtReport:
    homogeneous: bool
    sharply_dominating: bool
    block_interval: bool
    unique_partner: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def is_trt(self):
        return (self.homogeneous and self.sharply_dominating
                and self.block_interval and self.unique_partner)

    def first_witness(self):
        for key in ("homogeneous", "sharply_dominating", "block_interval", "unique_partner"):
            if not getattr(self, key):
                return self.witnesses.get(key, ())
        return ()


def trt_check(E):
    """Decide the four TRT conditions, recording a witness for each failure."""
    cached = E._cache.get("trt_check")
    if cached is not None:
        return cached
    wit = {}
    homog = is_homogeneous(E)
    if not homog:
        wit["homogeneous"] = homogeneity_failure(E)
    sd = is_sharply_dominating(E)
    tilde, hat = sharp_covers(E)
    if not sd:
        wit["sharply_dominating"] = tuple(np.flatnonzero(hat == UNDEF)[:1].tolist())

    interval = homog and sd
    if not homog:
        wit["block_interval"] = wit["homogeneous"]
    elif not sd:
        wit["block_interval"] = wit["sharply_dominating"]
    else:
        d = derive(E)
        for b in blocks(E):
            for x in sorted(b.members):
                span = np.flatnonzero(d.leq[tilde[x]] & d.leq[:, x])
                outside = [y for y in span.tolist() if y not in b.members]
                if outside:
                    interval = False
                    wit["block_interval"] = (x, outside[0])
                    break
            if not interval:
                break

    unique = sd
    if not sd:
        wit["unique_partner"] = wit["sharply_dominating"]
    else:
        view = AlgebraView(E)
        for x in view.meager:
            expected = view.R(x)
            if expected not in view._mea:
                unique = False
                wit["unique_partner"] = (x, expected)
                break
            cands = view.partner_candidates(x)
            if cands != [expected]:
                unique = False
                wit["unique_partner"] = (x, *cands) if cands else (x,)
                break
    report = TrtReport(homog, sd, interval, unique, wit)
    E._cache["trt_check"] = report
    return report


def _require_trt(E):
    if not trt_check(E).is_trt:
        raise AlgebraError("operation needs a TRT-effect algebra")


# -- E-side maps ------------------------------------------------------------


def m_maps(E):
    """The maps ``hat: Mea -> Sh``, ``pi: Sh x Mea -> Mea`` (partial), ``R: Mea -> Mea``.

    Returned as three dicts keyed by E indices; undefined ``pi`` values are None.
    """
    _require_trt(E)
    view = AlgebraView(E)
    hat = {x: view.hat(x) for x in view.meager}
    pi = {(s, x): view.pi(s, x) for s in view.sharp for x in view.meager}
    R = {x: view.R(x) for x in view.meager}
    for x in view.meager:
        if R[x] not in view._mea:
            raise InvariantError(f"R({E.label(x)}) is not meager")
        if view.hat(R[x]) != hat[x]:
            raise InvariantError(f"hat(R({E.label(x)})) != hat({E.label(x)})")
        if R[R[x]] != x:
            raise InvariantError(f"R(R({E.label(x)})) != {E.label(x)}")
    return hat, pi, R


def s_set(E, x, y):
    """``S(x, y)`` set; both formulations are computed and must agree."""
    view = AlgebraView(E)
    direct = view.s_set_direct(x, y)
    via_maps = view.s_set(x, y)
    if direct != via_maps:
        raise InvariantError(
            f"S-set formulations disagree for ({E.label(x)}, {E.label(y)}): "
            f"{E.names(sorted(direct))} vs {E.names(sorted(via_maps))}")
    return direct


def s_map(E, x, y):
    """Top element of :func:`s_set` when it is a member, else None."""
    _require_trt(E)
    return _extreme(s_set(E, x, y), derive(E).leq, top=True)


# -- extraction and triple-side maps ---------------------------------------


def triple_embedding(E):
    """E indices of the sharp and meager elements in triple numbering."""
    return tuple(sorted(sharp_set(E))), tuple(sorted(meager_set(E)))


def extract_triple(E):
    _require_trt(E)
    d = derive(E)
    sh, mea = triple_embedding(E)
    sharp = restrict(E, sh)
    meager, embed = meager_gea(E)
    assert tuple(embed) == mea
    h = tuple(frozenset(i for i, x in enumerate(mea) if d.leq[x, s]) for s in sh)
    T = Triple(sharp=sharp, meager=meager, h=h)
    problems = triple_violations(T)
    if problems:
        raise InvariantError(f"extracted triple is malformed: {problems[0]}")
    return T


def hat_from_triple(T, x):
    return TripleView(T).hat(x)


def pi_from_triple(T, s, x):
    return TripleView(T).pi(s, x)


def r_from_triple(T, x):
    return TripleView(T).R(x)


def oplus_via_triple(T, x, y, view=None):
    """``x + y`` for meager ``x, y`` from the triple: ``(S(x,y), residual)`` or None."""
    view = view or TripleView(T)
    return view.oplus(x, y)


# -- reconstruction ---------------------------------------------------------


@dataclass(frozen=True)
class TeaAlgebra:
    """The pair algebra rebuilt from a triple; ``pairs[i]`` is element ``i``."""

    algebra: EffectAlgebra
    pairs: tuple

    @property
    def index(self):
        return {p: i for i, p in enumerate(self.pairs)}


def reconstruct_tea(T, view=None):
    """Build the pair algebra on ``{(s, m) | m in h(s')}`` from ``T`` alone."""
    view = view or TripleView(T)
    sh, mg = T.sharp, T.meager
    pairs = tuple((s, m) for s in range(sh.n) for m in range(mg.n)
                  if m in T.h[view.sharp_comp(s)])
    index = {p: i for i, p in enumerate(pairs)}
    s_memo = {}
    n = len(pairs)
    table = np.full((n, n), UNDEF, dtype=np.int64)
    for i, (xs, xm) in enumerate(pairs):
        for j, (ys, ym) in enumerate(pairs):
            key = (xm, ym)
            if key not in s_memo:
                s_memo[key] = view.S(xm, ym)
            s = s_memo[key]
            if s is None:
                continue
            zs = sh.oplus(xs, ys)
            zs = None if zs is None else sh.oplus(zs, s)
            if zs is None:
                continue
            rx = view.ominus_m(xm, view.pi(s, xm))
            ry = view.ominus_m(ym, view.pi(s, ym))
            zm = mg.oplus(rx, ry)
            if zm is None or zm not in T.h[view.sharp_comp(zs)]:
                continue
            table[i, j] = index[(zs, zm)]
    labels = [f"({sh.label(s)},{mg.label(m)})" for s, m in pairs]
    A = EffectAlgebra(table, index[(sh.zero, mg.zero)], index[(sh.unit, mg.zero)], labels)
    report = validate_ea(A)
    if not report.valid:
        raise AlgebraError("reconstructed table is not an effect algebra: "
                           + "; ".join(report.describe(A, limit=3)))
    return TeaAlgebra(A, pairs)


# -- the representation theorem --------------------------------------------


@dataclass
class TheoremCheck:
    """Outcome of :func:`verify_triple_theorem`.

    ``phi`` maps E indices to pair-algebra indices; ``iso`` is the
    independently found isomorphism (or None).
    """

    phi_ok: bool
    iso_ok: bool
    phi: tuple = ()
    iso: tuple = None
    violation: str = None
    certificate: list = field(default_factory=list)
    tea: TeaAlgebra = None

    @property
    def holds(self):
        return self.phi_ok and self.iso_ok


def phi_map(E, tea):
    """``x -> (tilde x, x - tilde x)`` as indices into ``tea``."""
    d = derive(E)
    tilde = sharp_covers(E)[0]
    sh, mea = triple_embedding(E)
    spos = {x: i for i, x in enumerate(sh)}
    mpos = {x: i for i, x in enumerate(mea)}
    index = tea.index
    out = []
    for x in E.elements:
        xs = int(tilde[x])
        xm = int(d.ominus[x, xs])
        key = (spos[xs], mpos.get(xm))
        if key not in index:
            return None, f"phi({E.label(x)}) = {key} is not a pair of the rebuilt algebra"
        out.append(index[key])
    return tuple(out), None


def verify_triple_theorem(E):
    """Extract, rebuild and certify ``E ~ Tea(E)`` via phi and via iso search."""
    from .iso import find_isomorphism

    _require_trt(E)
    T = extract_triple(E)
    try:
        tea = reconstruct_tea(T)
    except AlgebraError as exc:
        return TheoremCheck(False, False, violation=str(exc))
    A = tea.algebra
    phi, problem = phi_map(E, tea)
    ok = problem is None
    if ok and (A.n != E.n or len(set(phi)) != E.n):
        ok, problem = False, "phi is not a bijection"
    if ok and (phi[E.zero] != A.zero or phi[E.unit] != A.unit):
        ok, problem = False, "phi does not preserve 0 and 1"
    if ok:
        for x, y in itertools.product(E.elements, repeat=2):
            s = E.oplus(x, y)
            t = A.oplus(phi[x], phi[y])
            if (s is None) != (t is None) or (s is not None and phi[s] != t):
                ok = False
                problem = f"sum not preserved at ({E.label(x)}, {E.label(y)})"
                break
    iso = find_isomorphism(E, A)
    cert = [(E.label(x), A.label(phi[x])) for x in E.elements] if phi else []
    return TheoremCheck(ok, iso is not None, phi=phi or (), iso=iso,
                        violation=problem, certificate=cert, tea=tea)
