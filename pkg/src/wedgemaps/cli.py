"""Command-line interface: ``wedgemaps validate | invariants | scan-gc``.

Exit codes
    0  success
    1  unreadable input, invalid JSON or invalid command-line flags
    2  document violates the schema or the dimension rules
    3  degree-1 matrix fails the realizability obstruction
    4  two computation routes disagree (a bug; never expected)

Results go to stdout, diagnostics to stderr.  A FILE argument of the form
``@ex1`` loads one of the bundled reference documents.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import reference
from .document import (
    RESULT_FORMAT,
    DocumentError,
    LoadedMap,
    MapDocument,
    StructureError,
    build,
    encode_int,
    encode_poly,
    fixture_path,
    load,
    loads,
)
from .invariants import (
    CrossCheckError,
    aper_upto,
    cross_check,
    dold_sequence,
    lefschetz_sequence,
    zeta_det,
)
from .torus import ObstructionReport, companion_scan
from .wedge import StructureReport, classify

EXIT_OK, EXIT_IO, EXIT_STRUCTURE, EXIT_OBSTRUCTION, EXIT_CROSSCHECK = 0, 1, 2, 3, 4
DEFAULT_M = 24


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; here bad flags are exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def _load(arg: str) -> MapDocument:
    if arg.startswith("@"):
        path = fixture_path(arg[1:])
        if not path.is_file():
            raise DocumentError(f"no bundled document named {arg[1:]!r}")
        return loads(path.read_text(encoding="utf-8"))
    return load(arg)


def _load_and_build(arg: str) -> LoadedMap:
    try:
        return build(_load(arg))
    except DocumentError as exc:
        raise _Exit(EXIT_IO, str(exc)) from exc
    except StructureError as exc:
        raise _Exit(EXIT_STRUCTURE, str(exc)) from exc
    except CrossCheckError as exc:
        raise _Exit(EXIT_CROSSCHECK, f"internal cross-check failed: {exc}") from exc


# ------------------------------------------------------------------ encoders


def _describe_space(sp: dict) -> str:
    return f"T^{sp['dim']}" if sp["kind"] == "torus" else "X(betti " + ",".join(map(str, sp["betti"])) + ")"


def _structure_json(st: StructureReport) -> dict:
    out = {
        "is_diagonal": st.is_diagonal,
        "is_permutative": st.is_permutative,
        "is_squared_by_blocks": st.is_squared_by_blocks,
        "is_cyclic": st.is_cyclic,
    }
    if st.permutation is not None:
        out["permutation"] = [encode_int(p + 1) for p in st.permutation]
        out["cycles"] = [[encode_int(i + 1) for i in c] for c in st.cycles]
    return out


def _structure_text(st: StructureReport) -> str:
    if not st.is_permutative:
        return "not permutative"
    tags = ["permutative"]
    if st.is_diagonal:
        tags.append("diagonal")
    if st.is_cyclic:
        tags.append("cyclic")
    if st.is_squared_by_blocks:
        tags.append("squared by blocks")
    cycles = "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in st.cycles)
    return ", ".join(tags) + f"; cycles {cycles}"


def _obstruction_json(rep: ObstructionReport) -> dict:
    out = {"passed": rep.passed, "failing_pairs": encode_int(rep.failures)}
    if rep.witness is not None:
        w = rep.witness
        out["witness"] = {
            "first": [encode_int(w.first[0] + 1), encode_int(w.first[1] + 1)],
            "second": [encode_int(w.second[0] + 1), encode_int(w.second[1] + 1)],
            "summand": encode_int(w.summand + 1),
            "description": w.describe(),
        }
    if rep.induced is not None:
        out["induced"] = {str(k): [[encode_int(x) for x in row] for row in M.tolist()]
                          for k, M in enumerate(rep.induced, start=1)}
    return out


def _warnings(loaded: LoadedMap) -> list[str]:
    doc = loaded.document
    if not doc.is_toral:
        return []
    spec = doc.h1_spec()
    return list(reference.notes_for(spec.h1_matrix(), spec.dims))


def _input_json(doc: MapDocument) -> dict:
    out = {"sha256": doc.digest(), "summands": [_describe_space(sp) for sp in doc.spaces]}
    if doc.name is not None:
        out["name"] = doc.name
    return out


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


# ------------------------------------------------------------------ commands


def cmd_validate(args) -> int:
    loaded = _load_and_build(args.file)
    doc = loaded.document
    rep = loaded.obstruction
    st = classify(loaded.wedge) if loaded.wedge is not None else None
    if args.json:
        payload = {"format": RESULT_FORMAT, "input": _input_json(doc), "valid": True}
        if st is not None:
            payload["structure"] = _structure_json(st)
        if rep is not None:
            payload["obstruction"] = _obstruction_json(rep)
        payload["warnings"] = _warnings(loaded)
        _emit(payload)
    else:
        label = doc.name or args.file
        print(f"document: {label}  sha256 {doc.digest()[:16]}")
        print("summands: " + " v ".join(_describe_space(sp) for sp in doc.spaces))
        if st is not None:
            print(f"structure: {_structure_text(st)}")
        if rep is not None:
            print(f"obstruction: {rep.verdict}")
            if rep.witness is not None:
                print(f"witness: {rep.witness.describe()}")
        for w in _warnings(loaded):
            print(f"warning: {w}", file=sys.stderr)
    if rep is not None and not rep.passed:
        return EXIT_OBSTRUCTION
    return EXIT_OK


def cmd_invariants(args) -> int:
    wanted = {name: getattr(args, name) for name in ("lefschetz", "dold", "aper")}
    want_zeta = args.zeta
    if args.all is not None:
        wanted = {name: v if v is not None else args.all for name, v in wanted.items()}
        want_zeta = True
    if not want_zeta and all(v is None for v in wanted.values()):
        wanted = {name: DEFAULT_M for name in wanted}
        want_zeta = True
    for name, v in wanted.items():
        if v is not None and v < 1:
            raise _Exit(EXIT_IO, f"--{name} needs a positive count")

    loaded = _load_and_build(args.file)
    doc, W, rep = loaded.document, loaded.wedge, loaded.obstruction
    if W is None:
        print(f"obstruction: {rep.verdict}", file=sys.stderr)
        print(f"witness: {rep.witness.describe()}", file=sys.stderr)
        return EXIT_OBSTRUCTION

    m_top = max([v for v in wanted.values() if v is not None] + [1])
    try:
        checks = cross_check(W, max(m_top, 2))
        L = lefschetz_sequence(W, wanted["lefschetz"]) if wanted["lefschetz"] else None
        ell = dold_sequence(W, wanted["dold"]) if wanted["dold"] else None
        Z = zeta_det(W) if want_zeta else None
        aper = aper_upto(W, wanted["aper"]) if wanted["aper"] else None
    except CrossCheckError as exc:
        raise _Exit(EXIT_CROSSCHECK, f"internal cross-check failed: {exc}") from exc
    st = classify(W)
    warnings = _warnings(loaded)

    if args.json:
        payload = {"format": RESULT_FORMAT, "input": _input_json(doc), "structure": _structure_json(st)}
        if L is not None:
            payload["lefschetz"] = [encode_int(x) for x in L.values]
        if ell is not None:
            payload["dold"] = [encode_int(x) for x in ell.values]
        if Z is not None:
            num, den = Z.display_pair()
            payload["zeta"] = {"numerator": encode_poly(num), "denominator": encode_poly(den),
                               "text": str(Z)}
        if aper is not None:
            payload["aper"] = {"members": [encode_int(m) for m in aper.members],
                               "m_max": encode_int(aper.m_max)}
            if aper.trace_period is not None:
                payload["aper"]["trace_period"] = encode_int(aper.trace_period)
        if args.obstruction and rep is not None:
            payload["obstruction"] = _obstruction_json(rep)
        payload["cross_checks"] = list(checks.checks)
        payload["warnings"] = warnings
        _emit(payload)
        return EXIT_OK

    print(f"document: {doc.name or args.file}  sha256 {doc.digest()[:16]}")
    print(f"structure: {_structure_text(st)}")
    if args.obstruction and rep is not None:
        print(f"obstruction: {rep.verdict}")
    if L is not None or ell is not None:
        cols = [("m", None)]
        if L is not None:
            cols.append(("L(f^m)", L))
        if ell is not None:
            cols.append(("l(f^m)", ell))
        rows = max(seq.m_max for _, seq in cols[1:])
        table = [[name for name, _ in cols]]
        for m in range(1, rows + 1):
            table.append([str(m)] + [str(seq[m]) if m <= seq.m_max else "" for _, seq in cols[1:]])
        widths = [max(len(r[c]) for r in table) for c in range(len(cols))]
        for r in table:
            print("  ".join(v.rjust(w) for v, w in zip(r, widths)))
    if Z is not None:
        print(f"zeta: {Z}")
    if aper is not None:
        members = ", ".join(map(str, aper.members))
        print(f"APer up to {aper.m_max}: {{{members}}}")
    print(f"cross-checks passed: {', '.join(checks.checks)}")
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def cmd_scan_gc(args) -> int:
    if args.max < 1 or args.s < 1:
        raise _Exit(EXIT_IO, "--s and --max must be positive")
    if args.n < 1:
        raise _Exit(EXIT_IO, "--n must be positive")
    if len(args.c) not in (1, args.s):
        raise _Exit(EXIT_IO, f"give one --c value or {args.s} of them")
    try:
        rep = companion_scan(args.n, args.c, args.s, args.max)
    except CrossCheckError as exc:
        raise _Exit(EXIT_CROSSCHECK, f"internal cross-check failed: {exc}") from exc

    def signs(vals):
        return {"negative": sum(v < 0 for v in vals), "zero": sum(v == 0 for v in vals),
                "positive": sum(v > 0 for v in vals)}

    if args.json:
        _emit({
            "format": RESULT_FORMAT,
            "scan": {"n": encode_int(rep.n), "c": [encode_int(c) for c in rep.cs],
                     "s": encode_int(rep.s), "m_max": encode_int(rep.m_max)},
            "single": {str(c): [encode_int(v) for v in vals] for c, vals in rep.single.items()},
            "dold": [encode_int(v) for v in rep.wedge],
            "signs": {k: encode_int(v) for k, v in signs(rep.wedge).items()},
            "single_all_negative": rep.single_all_negative,
            "certified": [encode_int(m) for m in rep.certified],
            "warnings": list(rep.violations),
        })
        return EXIT_OK

    for v in rep.violations:
        print(f"warning: precondition not met ({v}); values are reported only", file=sys.stderr)
    cs = list(rep.single)
    header = ["m", "l(f^m)"] + [f"l(g_{c}^m)" for c in cs]
    table = [header]
    for m in range(1, rep.m_max + 1):
        table.append([str(m), str(rep.wedge[m - 1])] + [str(rep.single[c][m - 1]) for c in cs])
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for r in table:
        print("  ".join(v.rjust(w) for v, w in zip(r, widths)))
    sg = signs(rep.wedge)
    print(f"signs of l(f^m): {sg['negative']} negative, {sg['zero']} zero, {sg['positive']} positive")
    print(f"single-torus values all negative: {'yes' if rep.single_all_negative else 'no'}")
    print("certified algebraic periods: " + (", ".join(map(str, rep.certified)) or "none"))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wedgemaps", description=__doc__.split("\n\n")[0],
                epilog="exit codes: 0 ok, 1 input/flags, 2 structure, 3 obstruction, 4 cross-check")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="check a map document and its realizability")
    v.add_argument("file", help="map document, or @ex1 .. @ex5 for the bundled ones")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_validate)

    inv = sub.add_parser("invariants", help="Lefschetz numbers, Dold coefficients, zeta, periods")
    inv.add_argument("file")
    inv.add_argument("--lefschetz", type=int, nargs="?", const=DEFAULT_M, metavar="M")
    inv.add_argument("--dold", type=int, nargs="?", const=DEFAULT_M, metavar="M")
    inv.add_argument("--zeta", action="store_true")
    inv.add_argument("--aper", type=int, nargs="?", const=DEFAULT_M, metavar="M")
    inv.add_argument("--all", type=int, nargs="?", const=DEFAULT_M, metavar="M",
                     help="everything, up to M (default %(const)s)")
    inv.add_argument("--obstruction", action="store_true", help="include the realizability report")
    inv.add_argument("--json", action="store_true")
    inv.set_defaults(func=cmd_invariants)

    sc = sub.add_parser("scan-gc", help="Dold coefficients for t^n - c torus maps and their cyclic wedge")
    sc.add_argument("--n", type=int, required=True)
    sc.add_argument("--c", type=int, nargs="+", required=True)
    sc.add_argument("--s", type=int, default=1)
    sc.add_argument("--max", type=int, default=DEFAULT_M)
    sc.add_argument("--json", action="store_true")
    sc.set_defaults(func=cmd_scan_gc)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
