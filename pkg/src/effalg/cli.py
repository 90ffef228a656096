"""Command-line front end.

Exit codes: 0 success / property holds, 1 property fails or not isomorphic,
2 input or usage error, 3 internal disagreement between independent checks.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import structure as st
from .catalog import MAX_ENUM_SIZE, GeneratorSpec, enumerate_all, generate
from .core import AlgebraError, ParseError, validate_ea
from .io import parse_ea, parse_triple, serialize_ea, serialize_triple
from .iso import find_isomorphism
from .trt import extract_triple, reconstruct_tea, trt_check, verify_triple_theorem

OK, FAIL, USAGE, INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path, parser):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return parser(text)
    except (ParseError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load(path, require_valid=True):
    E = _read(path, parse_ea)
    if require_valid and not validate_ea(E).valid:
        raise InputError(f"{path}: table fails the effect algebra axioms (run 'validate')")
    return E


def _emit(text, out=None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _doc(name, E, flags=None, witnesses=None, **extra):
    doc = {"algebra": name, "n": E.n, "flags": flags or {}, "witnesses": witnesses or {}}
    doc.update(extra)
    return doc


def cmd_validate(args):
    E = _load(args.file, require_valid=False)
    report = validate_ea(E)
    name = Path(args.file).stem
    if args.json:
        wit = {}
        for tag, w in report.violations:
            wit.setdefault(tag, []).append(E.names(w))
        _emit(_json(_doc(name, E, {"valid": report.valid}, wit)))
    elif report.valid:
        print(f"{name}: valid effect algebra ({E.n} elements)")
    else:
        print(f"{name}: INVALID")
    if not report.valid:
        limit = None if args.verbose else 10
        for line in report.describe(E, limit=limit):
            print(f"  {line}", file=sys.stderr)
    return OK if report.valid else FAIL


def cmd_props(args):
    E = _load(args.file)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", st.NonHomogeneousWarning)
        report = st.property_report(E)
    name = Path(args.file).stem
    if args.json:
        _emit(report.to_json(name, E.n))
        return OK
    print(f"{name} ({E.n} elements)")
    for flag in st.FLAG_NAMES:
        line = f"  {flag:<20}{str(report.flags[flag]).lower()}"
        if flag in report.witnesses:
            line += "  witness: " + " ".join(report.witnesses[flag])
        print(line)
    return OK


def cmd_listing(args):
    E = _load(args.file)
    name = Path(args.file).stem
    kind = args.command
    if kind == "blocks":
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", st.NonHomogeneousWarning)
            found = st.blocks(E)
        groups = [E.names(sorted(b.members)) for b in found]
        if args.json:
            _emit(_json(_doc(name, E, {"homogeneous": not caught}, blocks=groups)))
        else:
            if caught:
                print("warning: not homogeneous; blocks are maximal internally "
                      "compatible sets containing 1", file=sys.stderr)
            for g in groups:
                print(" ".join(g))
        return OK
    members = {"sharp": st.sharp_set, "meager": st.meager_set, "center": st.center}[kind](E)
    labels = E.names(sorted(members))
    if args.json:
        _emit(_json(_doc(name, E, elements=labels)))
    else:
        print(" ".join(labels))
    return OK


def _require_trt(E, path):
    report = trt_check(E)
    if not report.is_trt:
        print(f"{path}: not a TRT-effect algebra (witness: "
              f"{' '.join(E.names(report.first_witness()))})", file=sys.stderr)
    return report.is_trt


def cmd_triple(args):
    E = _load(args.file)
    if not _require_trt(E, args.file):
        return FAIL
    _emit(serialize_triple(extract_triple(E)), args.out)
    return OK


def cmd_reconstruct(args):
    T = _read(args.file, parse_triple)
    try:
        tea = reconstruct_tea(T)
    except AlgebraError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return FAIL
    _emit(serialize_ea(tea.algebra), args.out)
    return OK


def _verify_one(path, args):
    E = _load(path)
    name = Path(path).stem
    if not _require_trt(E, path):
        return FAIL, None
    result = verify_triple_theorem(E)
    doc = _doc(name, E, {"phi": result.phi_ok, "search": result.iso_ok},
               {"phi": [result.violation]} if result.violation else {},
               certificate=[list(pair) for pair in result.certificate])
    if result.phi_ok != result.iso_ok:
        print(f"{path}: INTERNAL ERROR: certificate and isomorphism search disagree "
              f"(phi={result.phi_ok}, search={result.iso_ok})", file=sys.stderr)
        return INTERNAL, doc
    if not result.holds:
        print(f"{path}: representation fails: {result.violation}", file=sys.stderr)
        return FAIL, doc
    if not args.json:
        print(f"{name}: E is isomorphic to Tea(E) via phi (independent search agrees)")
        for x, pair in result.certificate:
            print(f"  {x} -> {pair}")
    return OK, doc


def cmd_verify(args):
    # (path, skip_if_not_trt): directory sweeps silently skip non-TRT inputs
    paths = [(p, False) for p in args.files]
    if args.all:
        d = Path(args.all)
        if not d.is_dir():
            raise InputError(f"{args.all}: not a directory")
        paths += [(str(p), True) for p in sorted(d.glob("*.ea"))]
    if not paths:
        raise InputError("verify needs at least one file or --all DIR")
    worst, docs, skipped, verified = OK, [], 0, 0
    for path, sweep in paths:
        if sweep and not trt_check(_load(path)).is_trt:
            skipped += 1
            continue
        code, doc = _verify_one(path, args)
        worst = max(worst, code)
        verified += code == OK
        if doc:
            docs.append(doc)
    if args.json:
        _emit(_json(docs[0] if len(docs) == 1 else docs))
    elif len(paths) > 1:
        print(f"{verified} verified, {len(paths) - verified - skipped} failed, "
              f"{skipped} skipped (not TRT)")
    return worst


def cmd_gen(args):
    try:
        spec = GeneratorSpec.from_args(args.kind, args.params)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(serialize_ea(generate(spec)), args.out)
    return OK


def cmd_enum(args):
    if not 2 <= args.max_size <= MAX_ENUM_SIZE:
        raise InputError(f"--max-size must be between 2 and {MAX_ENUM_SIZE}")
    algebras = enumerate_all(args.max_size)
    counts = {}
    for E in algebras:
        counts[E.n] = counts.get(E.n, 0) + 1
    index = "".join(f"{n} {counts.get(n, 0)}\n" for n in range(2, args.max_size + 1))
    index += f"total {len(algebras)}\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        serial = {}
        for E in algebras:
            serial[E.n] = serial.get(E.n, 0) + 1
            (out / f"{E.n}-{serial[E.n]}.ea").write_text(serialize_ea(E), encoding="utf-8")
        (out / "index.txt").write_text(index, encoding="utf-8")
    if args.json:
        _emit(_json({"counts": {str(n): c for n, c in counts.items()}, "total": len(algebras)}))
    else:
        sys.stdout.write(index)
    return OK


def cmd_iso(args):
    A, B = _load(args.a), _load(args.b)
    f = find_isomorphism(A, B)
    if f is None:
        print("NOT ISOMORPHIC")
        return FAIL
    for x in A.elements:
        print(f"{A.label(x)} -> {B.label(f[x])}")
    return OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="fixed-key JSON output")
    common.add_argument("--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="effalg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the axioms")
    s.add_argument("file")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("props", parents=[common], help="structural property report")
    s.add_argument("file")
    s.set_defaults(fn=cmd_props)

    for kind in ("sharp", "meager", "center", "blocks"):
        s = sub.add_parser(kind, parents=[common], help=f"list {kind} elements")
        s.add_argument("file")
        s.set_defaults(fn=cmd_listing)

    s = sub.add_parser("triple", parents=[common], help="extract the triple")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_triple)

    s = sub.add_parser("reconstruct", parents=[common], help="rebuild an algebra from a triple")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_reconstruct)

    s = sub.add_parser("verify", parents=[common], help="certify E ~ Tea(E)")
    s.add_argument("files", nargs="*")
    s.add_argument("--all", metavar="DIR", help="every TRT algebra in DIR")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("gen", parents=[common], help="generate a standard algebra")
    s.add_argument("kind")
    s.add_argument("params", nargs="*")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("enum", parents=[common], help="enumerate all small algebras")
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_enum)

    s = sub.add_parser("iso", parents=[common], help="find an isomorphism")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(fn=cmd_iso)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL


def main():
    sys.exit(run())
