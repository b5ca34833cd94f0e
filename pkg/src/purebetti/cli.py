"""Command-line interface.

Every subcommand reads complexes from JSON files (``--in``) or from the
inline shorthand ``--facets "1,3,5;2,3,4;1,2,6"`` and emits one JSON
document on stdout (or ``--out``).  Domain failures exit 1 with a
machine-readable JSON payload on stderr; usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import betti as betti_mod
from . import survey as survey_mod
from .complexes import SimplicialComplex, from_facets
from .constructions import parse_recipe
from .errors import ComplexError, DomainError
from .homology import FieldSpec, homology_with_collapse
from .betti import BettiDiagram, is_cohen_macaulay, is_pr
from .phi import DEFAULT_VERTEX_CAP, barycentric, build_pr_complex
from .phi import phi as phi_op


def _facets_shorthand(text: str) -> SimplicialComplex:
    gens = []
    seen = set()
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            gens.append([])
            continue
        labs = [x.strip() for x in chunk.split(",")]
        gens.append(labs)
        seen.update(labs)

    def label_key(s: str):
        try:
            return (0, int(s))
        except ValueError:
            return (1, s)

    labels = sorted(seen, key=label_key)
    return from_facets(labels, gens)


def _load_complex(args, attr_in: str = "infile", attr_facets: str = "facets") -> SimplicialComplex:
    path = getattr(args, attr_in, None)
    inline = getattr(args, attr_facets, None)
    if path and inline:
        raise ComplexError("give either --in or --facets, not both")
    if inline:
        return _facets_shorthand(inline)
    if not path:
        raise ComplexError("no input complex: use --in FILE or --facets LIST")
    with open(path) as fh:
        return SimplicialComplex.from_json(json.load(fh))


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    out = getattr(args, "outfile", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _diagram_payload(diag: BettiDiagram) -> dict:
    data = diag.to_json()
    data["rows"] = diag.render().splitlines()
    data["pure"] = diag.is_pure()
    st = diag.shift_type()
    if st is not None:
        data["shift_type"] = list(st)
        data["degree_type"] = list(diag.degree_type())
    return data


def _field(args) -> FieldSpec:
    return FieldSpec.parse(getattr(args, "field", "q") or "q")


def _default_jobs() -> int:
    env = os.environ.get("PUREBETTI_JOBS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _add_common(p: argparse.ArgumentParser, io: bool = True):
    if io:
        p.add_argument("--in", dest="infile", help="input complex JSON file")
        p.add_argument("--facets", help='inline facets, e.g. "1,3,5;2,3,4;1,2,6"')
    p.add_argument("--out", dest="outfile", help="output file (default stdout)")
    p.add_argument("--field", default="q", help="coefficient field: q or gf:P")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="purebetti")
    sub = top.add_subparsers(dest="command", required=True)

    for name, doc in [
        ("betti", "Betti diagram of the ideal of the Alexander dual"),
        ("betti-direct", "Betti diagram of the ideal of the complex itself"),
        ("pr", "pure-resolution test with degree type and offset"),
        ("cm", "Cohen-Macaulay test (Reisner criterion)"),
        ("homology", "reduced homology dimensions"),
        ("dual", "Alexander dual complex"),
        ("bary", "barycentric subdivision"),
    ]:
        p = sub.add_parser(name, help=doc)
        _add_common(p)

    p = sub.add_parser("link", help="link of a face")
    _add_common(p)
    p.add_argument("--face", required=True, help="comma-separated vertex labels")

    p = sub.add_parser("skel", help="skeleton")
    _add_common(p)
    p.add_argument("--r", type=int, required=True, help="skeleton dimension (>= -1)")

    p = sub.add_parser("join", help="join of two complexes (disjoint labels)")
    _add_common(p)
    p.add_argument("--other", required=True, help="second complex JSON file")

    p = sub.add_parser("iso", help="isomorphism test")
    _add_common(p)
    p.add_argument("--other", required=True, help="second complex JSON file")

    p = sub.add_parser("construct", help="build a named family member")
    p.add_argument("recipe", help='e.g. "intersection:1,1,0" or "partition:a=3,p=2,m=1"')
    p.add_argument("--out", dest="outfile")
    p.add_argument("--field", default="q")

    p = sub.add_parser("phi", help="vertex-augmentation operation")
    _add_common(p)
    p.add_argument("--i", type=int, required=True)

    p = sub.add_parser("build", help="build a PR complex of a prescribed degree type")
    p.add_argument("--degree-type", required=True, help="comma list, e.g. 3,1,2")
    p.add_argument("--verify", action="store_true", help="verify the result is PR of that type")
    p.add_argument("--vertex-cap", type=int, default=DEFAULT_VERTEX_CAP)
    p.add_argument("--out", dest="outfile")
    p.add_argument("--field", default="q")

    p = sub.add_parser("census", help="isomorphism-class census with Betti diagrams")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--filter", default="catalog", help="css, catalog, or none")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--resume", dest="resume", help="checkpoint file path")
    p.add_argument("--csv", dest="csvfile", help="also write the diagram table as CSV")
    p.add_argument("--no-rays", action="store_true", help="skip the extremal-ray computation")
    p.add_argument("--out", dest="outfile")
    p.add_argument("--field", default="q")

    p = sub.add_parser("rays", help="extremal rays of the cone of diagrams in a census report")
    p.add_argument("--in", dest="infile", required=True, help="census report JSON")
    p.add_argument("--out", dest="outfile")

    return top


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except DomainError as exc:
        sys.stderr.write(json.dumps(exc.payload(), sort_keys=True) + "\n")
        return 1


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "betti":
        cpx = _load_complex(args)
        _emit(args, _diagram_payload(betti_mod.betti_dual(cpx, _field(args))))
    elif cmd == "betti-direct":
        cpx = _load_complex(args)
        _emit(args, _diagram_payload(betti_mod.betti_direct(cpx, _field(args))))
    elif cmd == "pr":
        cpx = _load_complex(args)
        summary = is_pr(cpx, _field(args))
        payload = {"is_pr": summary.is_pr}
        if summary.is_pr:
            payload["degree_type"] = list(summary.degree_type)
            payload["offset"] = summary.offset
            payload["shift_type"] = list(summary.shift_type(cpx.n))
        else:
            a, b = summary.witness
            payload["witness"] = [list(cpx.labels_of(a)), list(cpx.labels_of(b))]
        _emit(args, payload)
    elif cmd == "cm":
        cpx = _load_complex(args)
        _emit(args, {"is_cohen_macaulay": is_cohen_macaulay(cpx, _field(args))})
    elif cmd == "homology":
        cpx = _load_complex(args)
        _emit(args, homology_with_collapse(cpx, _field(args)).to_json())
    elif cmd == "link":
        cpx = _load_complex(args)
        face = cpx.mask(x.strip() for x in args.face.split(",") if x.strip())
        _emit(args, cpx.link(face).to_json())
    elif cmd == "dual":
        cpx = _load_complex(args)
        _emit(args, cpx.alexander_dual().to_json())
    elif cmd == "bary":
        cpx = _load_complex(args)
        _emit(args, barycentric(cpx).to_json())
    elif cmd == "skel":
        cpx = _load_complex(args)
        _emit(args, cpx.skeleton(args.r).to_json())
    elif cmd == "join":
        cpx = _load_complex(args)
        with open(args.other) as fh:
            other = SimplicialComplex.from_json(json.load(fh))
        _emit(args, cpx.join(other).to_json())
    elif cmd == "iso":
        cpx = _load_complex(args)
        with open(args.other) as fh:
            other = SimplicialComplex.from_json(json.load(fh))
        from .complexes import are_isomorphic

        _emit(args, {"isomorphic": are_isomorphic(cpx, other)})
    elif cmd == "construct":
        _emit(args, parse_recipe(args.recipe).to_json())
    elif cmd == "phi":
        cpx = _load_complex(args)
        _emit(args, phi_op(cpx, args.i).to_json())
    elif cmd == "build":
        try:
            d = tuple(int(x) for x in args.degree_type.split(","))
        except ValueError:
            raise DomainError(f"bad degree type {args.degree_type!r}") from None
        cpx = build_pr_complex(d, vertex_cap=args.vertex_cap)
        payload = {"complex": cpx.to_json()}
        if args.verify:
            summary = is_pr(cpx, _field(args))
            if not summary.is_pr or summary.degree_type != d:
                raise DomainError(
                    f"verification failed: built complex has degree type "
                    f"{summary.degree_type}, wanted {d}"
                )
            payload["verified"] = True
            payload["degree_type"] = list(summary.degree_type)
        _emit(args, payload)
    elif cmd == "census":
        flt = survey_mod.CensusFilter.named(args.filter, args.n)
        jobs = args.jobs if args.jobs is not None else _default_jobs()
        report = survey_mod.census(flt, _field(args), jobs=jobs, resume_path=args.resume)
        payload = report.to_json()
        if not args.no_rays and report.diagrams:
            rays = survey_mod.extremal_rays(report.distinct_diagrams())
            payload["rays"] = rays.to_json()
        payload["pure_diagrams"] = [
            _diagram_payload(d) for d in survey_mod.pure_diagram_list(report)
        ]
        if args.csvfile:
            with open(args.csvfile, "w") as fh:
                fh.write(report.to_csv())
        _emit(args, payload)
    elif cmd == "rays":
        with open(args.infile) as fh:
            report = json.load(fh)
        diagrams = [BettiDiagram.from_json(rec["diagram"]) for rec in report["diagrams"]]
        rays = survey_mod.extremal_rays(diagrams)
        _emit(args, rays.to_json())
    else:  # pragma: no cover
        raise DomainError(f"unknown command {cmd!r}")
    return 0


def main() -> None:  # console entry point
    sys.exit(run())
