"""Line-oriented text formats: ``.ea`` for algebras, ``.triple`` for triples.

``.ea``::

    # comment
    ea 3
    labels 0 a 1
    zero 0
    unit 2
    table
    0 1 2
    1 2 .
    2 . .

Row ``i``, column ``j`` holds ``i + j``; ``.`` marks an undefined sum.
"""
from __future__ import annotations

import numpy as np

from .core import UNDEF, EffectAlgebra, GeneralizedEffectAlgebra, ParseError


class _Lines:
    """Cursor over significant lines, keeping source line numbers."""

    def __init__(self, text):
        self.items = []
        for no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if line and not line.startswith("#"):
                self.items.append((no, line.split()))
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else (None, None)

    def next(self, what):
        if self.pos >= len(self.items):
            last = self.items[-1][0] if self.items else 1
            raise ParseError(f"unexpected end of input, expected {what}", last)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def keyword(self, word, nargs=1):
        no, toks = self.next(f"'{word}'")
        if toks[0] != word:
            raise ParseError(f"expected '{word}', got '{toks[0]}'", no)
        if nargs is not None and len(toks) != nargs + 1:
            raise ParseError(f"'{word}' takes {nargs} argument(s)", no)
        return no, toks[1:]

    def done(self):
        return self.pos >= len(self.items)


def _int(tok, no, what, n=None):
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {tok!r}", no) from None
    if v < 0 or (n is not None and v >= n):
        raise ParseError(f"{what}: index {v} out of range", no)
    return v


def _read_block(lines, head, with_unit):
    """Parse ``<head> n`` ... ``table`` + n rows. Returns (n, labels, zero, unit, table)."""
    no, args = lines.keyword(head)
    n = _int(args[0], no, f"'{head}' size")
    if n < 1:
        raise ParseError(f"'{head}' size must be positive", no)
    labels = None
    no, toks = lines.peek()
    if toks and toks[0] == "labels":
        no, toks = lines.next("labels")
        labels = toks[1:]
        if len(labels) != n:
            raise ParseError(f"expected {n} labels, got {len(labels)}", no)
        seen = set()
        for lab in labels:
            if lab in seen:
                raise ParseError(f"duplicate label {lab!r}", no)
            if lab == ".":
                raise ParseError("'.' cannot be a label", no)
            seen.add(lab)
    no, args = lines.keyword("zero")
    zero = _int(args[0], no, "zero", n)
    unit = None
    if with_unit:
        no, args = lines.keyword("unit")
        unit = _int(args[0], no, "unit", n)
        if unit == zero:
            raise ParseError("zero and unit must differ", no)
    lines.keyword("table", 0)
    table = np.full((n, n), UNDEF, dtype=np.int64)
    rownos = []
    for i in range(n):
        no, toks = lines.next(f"table row {i}")
        if len(toks) != n:
            raise ParseError(f"table row {i} has {len(toks)} entries, expected {n}", no)
        for j, tok in enumerate(toks):
            table[i, j] = UNDEF if tok == "." else _int(tok, no, f"entry ({i},{j})", n)
        rownos.append(no)
    for i in range(n):
        for j in range(i + 1, n):
            if table[i, j] != table[j, i]:
                raise ParseError(f"asymmetric at ({i},{j})", rownos[i])
    return n, labels, zero, unit, table


def _write_block(out, head, algebra, with_unit):
    out.append(f"{head} {algebra.n}")
    out.append("labels " + " ".join(algebra.labels))
    out.append(f"zero {algebra.zero}")
    if with_unit:
        out.append(f"unit {algebra.unit}")
    out.append("table")
    for row in algebra.table:
        out.append(" ".join("." if v == UNDEF else str(int(v)) for v in row))


def parse_ea(text):
    """Parse an ``.ea`` document.  Axioms are *not* checked here."""
    lines = _Lines(text)
    if lines.done():
        raise ParseError("empty document", 1)
    n, labels, zero, unit, table = _read_block(lines, "ea", with_unit=True)
    if n < 2:
        raise ParseError("an effect algebra needs at least two elements", 1)
    if not lines.done():
        no, toks = lines.peek()
        raise ParseError(f"trailing content {' '.join(toks)!r}", no)
    return EffectAlgebra(table, zero, unit, labels)


def serialize_ea(E):
    out = []
    _write_block(out, "ea", E, with_unit=True)
    return "\n".join(out) + "\n"


def read_ea(path):
    with open(path, encoding="utf-8") as fh:
        return parse_ea(fh.read())


def parse_triple(text):
    """Parse a ``.triple`` document into a :class:`~effalg.trt.Triple`."""
    from .trt import Triple

    lines = _Lines(text)
    lines.keyword("triple", 0)
    k, slabels, szero, sunit, stable = _read_block(lines, "sharp", with_unit=True)
    if k < 2:
        raise ParseError("sharp part needs at least two elements", 1)
    m, mlabels, mzero, _, mtable = _read_block(lines, "meager", with_unit=False)
    lines.keyword("h", 0)
    h = [None] * k
    for _ in range(k):
        no, toks = lines.next("h entry")
        if not toks[0].endswith(":"):
            raise ParseError("h entry must look like '<sharp>: <meager>...'", no)
        s = _int(toks[0][:-1], no, "h sharp index", k)
        if h[s] is not None:
            raise ParseError(f"duplicate h entry for {s}", no)
        h[s] = frozenset(_int(t, no, "h meager index", m) for t in toks[1:])
    if not lines.done():
        no, toks = lines.peek()
        raise ParseError(f"trailing content {' '.join(toks)!r}", no)
    sharp = EffectAlgebra(stable, szero, sunit, slabels)
    meager = GeneralizedEffectAlgebra(mtable, mzero, mlabels)
    return Triple(sharp=sharp, meager=meager, h=tuple(h))


def serialize_triple(T):
    out = ["triple"]
    _write_block(out, "sharp", T.sharp, with_unit=True)
    _write_block(out, "meager", T.meager, with_unit=False)
    out.append("h")
    for s, hs in enumerate(T.h):
        out.append(" ".join([f"{s}:"] + [str(x) for x in sorted(hs)]))
    return "\n".join(out) + "\n"
