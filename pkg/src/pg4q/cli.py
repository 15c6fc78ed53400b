"""Command-line harness: generators, condition checks, lemma verification
and classification, all emitting JSON/JSONL for scripted use.

Exit codes: 0 success / all checks pass, 1 semantic failure (conditions or
lemmas fail, NotApplicable verdict), 2 invalid input or configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import quadric, recognize, spectrum
from .geometry import GeometryIndex, coords_to_str, str_to_coords
from .gf import GF, FieldError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class InputError(Exception):
    pass


def _build_field(args) -> GF:
    q = args.q
    qmax = int(os.environ.get("GEOM_Q_MAX", "16"))
    if q > qmax:
        raise InputError(f"q={q} exceeds GEOM_Q_MAX={qmax}")
    h = q.bit_length() - 1
    if q < 2 or q != 1 << h:
        raise InputError(f"q must be a power of 2 >= 2, got {q}")
    modulus = None
    if args.modulus:
        try:
            modulus = int(args.modulus, 16)
        except ValueError as err:
            raise InputError(f"bad modulus {args.modulus!r}: {err}") from err
    try:
        return GF(h, modulus)
    except FieldError as err:
        raise InputError(str(err)) from err


def _build_index(args) -> GeometryIndex:
    workers = args.workers or os.cpu_count() or 1
    index = GeometryIndex(_build_field(args), workers=workers)
    print(f"built PG(4,{index.q}) index: {index.n} points/solids", file=sys.stderr)
    return index


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload: dict) -> None:
    _emit(args, json.dumps(payload, indent=2) + "\n")


def _read_jsonl(path: str, key: str, index: GeometryIndex) -> list:
    out = []
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    out.append(str_to_coords(rec[key], index.field))
                except (json.JSONDecodeError, KeyError, FieldError, TypeError) as err:
                    raise InputError(f"{path}:{lineno}: {err}") from err
    except OSError as err:
        raise InputError(str(err)) from err
    if not out:
        raise InputError(f"{path}: no records")
    return out


def _load_solidset(args, index: GeometryIndex) -> spectrum.SolidSet:
    duals = _read_jsonl(args.file, "dual", index)
    try:
        return spectrum.SolidSet.from_duals(duals, index)
    except KeyError as err:
        raise InputError(f"coordinate not a canonical hyperplane: {err}") from err


def cmd_gen(args) -> int:
    index = _build_index(args)
    field = index.field
    if args.kind in ("elliptic-solids", "quadric-points"):
        form = quadric.standard_parabolic(field)
        if args.kind == "elliptic-solids":
            ids = quadric.solids_by_section(form, index)[quadric.ELLIPTIC]
            lines = [json.dumps({"dual": coords_to_str(index.point(int(i)))}) for i in ids]
            census = {"kind": args.kind, "q": index.q, "solids": len(lines)}
        else:
            ids = np.nonzero(form.zero_flags(index))[0]
            lines = [json.dumps({"point": coords_to_str(index.point(int(i)))}) for i in ids]
            census = {"kind": args.kind, "q": index.q, "points": len(lines)}
    else:
        oval = quadric.regular_hyperoval(field)
        if args.kind == "hyperoval-solids":
            ids = quadric.solids_disjoint_from(oval, index)
            lines = [json.dumps({"dual": coords_to_str(index.point(int(i)))}) for i in ids]
            census = {"kind": args.kind, "q": index.q, "solids": len(lines)}
        else:
            lines = [json.dumps({"point": coords_to_str(p)}) for p in oval.points]
            census = {"kind": args.kind, "q": index.q, "points": len(lines)}
    _emit(args, "\n".join(lines) + "\n")
    # census goes to stdout; when the data itself is on stdout, keep the
    # census on stderr so the JSONL stream stays parseable
    print(json.dumps(census), file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    index = _build_index(args)
    sset = _load_solidset(args, index)
    report = spectrum.check_conditions(sset, index, witness_cap=args.witness_cap)
    _emit_json(args, report.to_json_dict())
    return EXIT_OK if report.hypotheses_hold else EXIT_FAIL


def cmd_classify(args) -> int:
    index = _build_index(args)
    sset = _load_solidset(args, index)
    verdict = recognize.classify(sset, index, witness_cap=args.witness_cap)
    _emit_json(args, verdict.to_json_dict())
    return EXIT_OK if verdict.case in ("A", "B") else EXIT_FAIL


def cmd_verify_lemmas(args) -> int:
    index = _build_index(args)
    sset = _load_solidset(args, index)
    try:
        report = spectrum.verify_lemma_suite(sset, index)
    except spectrum.PreconditionError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAIL
    _emit_json(args, report.to_json_dict())
    return EXIT_OK if report.case != "NA" and report.all_pass else EXIT_FAIL


def cmd_fit_quadric(args) -> int:
    index = _build_index(args)
    coords = _read_jsonl(args.file, "point", index)
    flags = np.zeros(index.n, dtype=bool)
    try:
        for c in coords:
            flags[index.point_index(c)] = True
    except KeyError as err:
        raise InputError(f"not a canonical point: {err}") from err
    form = recognize.fit_quadric(flags, index)
    payload: dict = {"q": index.q, "points": int(flags.sum())}
    if form is None:
        payload["form"] = None
        _emit_json(args, payload)
        return EXIT_FAIL
    payload["form"] = str(form)
    try:
        payload["nucleus"] = coords_to_str(form.nucleus(index.field))
    except quadric.SingularFormError:
        payload["nucleus"] = None
    _emit_json(args, payload)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    index = _build_index(args)
    sset = _load_solidset(args, index)
    payload = {
        "q": index.q,
        "size": sset.size,
        "points": _multiset(spectrum.point_counts(sset, index)),
        "lines": _multiset(spectrum.line_counts(sset, index)),
        "planes": _multiset(spectrum.plane_counts(sset, index)),
    }
    _emit_json(args, payload)
    return EXIT_OK


def _multiset(counts: np.ndarray) -> dict:
    vals, mult = np.unique(counts, return_counts=True)
    return {str(int(v)): int(m) for v, m in zip(vals, mult)}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, required=True, help="field order, a power of 2")
    p.add_argument("--modulus", help="hex irreducible polynomial overriding the default")
    p.add_argument("--workers", type=int, help="max parallel workers (default: all cores)")
    p.add_argument("--witness-cap", type=int, default=100, help="max violation witnesses kept")
    p.add_argument("--out", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pg4q",
        description="Generate, verify and classify extremal solid sets in PG(4,q), q even.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a witness family as JSONL")
    p.add_argument(
        "kind",
        choices=["elliptic-solids", "hyperoval-solids", "quadric-points", "hyperoval-points"],
    )
    _add_common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="test conditions (I), (II), (III) on a solid set")
    p.add_argument("file", help="JSONL solid set: one {\"dual\": \"a:b:c:d:e\"} per line")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="run the full classification on a solid set")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-lemmas", help="verify every counting lemma for the detected case")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("fit-quadric", help="fit a quadratic form to a JSONL point set")
    p.add_argument("file", help="JSONL points: one {\"point\": \"a:b:c:d:e\"} per line")
    _add_common(p)
    p.set_defaults(func=cmd_fit_quadric)

    p = sub.add_parser("spectrum", help="point/line/plane incidence spectra of a solid set")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
