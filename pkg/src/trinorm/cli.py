"""Command-line front end: construct families, run analyses, emit canonical
files and JSON certificates."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import build, homology, cocycle, surface, analyze, verifysuite
from .triangulation import Triangulation, TriangulationError, parse, serialize

SCHEMA_VERSION = 1


def report_schema():
    """The published JSON schema that analyze reports validate against."""
    path = Path(__file__).with_name("report_schema.json")
    return json.loads(path.read_text())


def _load(path):
    return parse(Path(path).read_text())


def _write_tri(tri, path, meta=None):
    Path(path).write_text(serialize(tri))
    if meta is not None:
        sidecar = Path(path).with_suffix(".meta.json")
        sidecar.write_text(json.dumps(
            {"schema_version": SCHEMA_VERSION, **meta},
            sort_keys=True, indent=2) + "\n")


def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _homology_block(tri):
    h = homology.first_homology(tri)
    return {"invariant_factors": list(h.invariant_factors),
            "betti": h.betti, "z2_rank": h.z2_rank,
            "torsion_order": h.order, "group": str(h)}


def _census_block(c):
    return {
        "even_edges": c.even_edges, "odd_edges": c.odd_edges,
        "even_degree_histogram": {str(k): v
                                  for k, v in c.even_degree_histogram.items()},
        "even_edge_slots": c.even_edge_slots,
        "quad_tets": c.quad_tets, "tri_tets": c.tri_tets,
        "empty_tets": c.empty_tets, "balanced": c.balanced,
        "even_subcomplex": list(c.even_subcomplex),
    }


def _bound_block(rep):
    return {
        "chi": rep.chi, "g": rep.g, "k_phi": rep.k_phi,
        "identity_lhs": rep.identity_lhs, "identity_rhs": rep.identity_rhs,
        "eq1_lhs": rep.eq1_lhs, "eq1_rhs": rep.eq1_rhs,
        "balanced": rep.balanced,
    }


def full_report(tri, descriptor, k_phi=0):
    """The analyze JSON document: skeleton, homology, per-class data, solid
    torus findings, twisted squares and the low degree lint."""
    sk = tri.skeleton
    report = {
        "schema_version": SCHEMA_VERSION,
        "input": descriptor,
        "skeleton": {
            "tet_count": tri.tet_count,
            "vertices": sk.vertex_count,
            "edges": sk.edge_count,
            "faces": sk.face_count,
            "degree_histogram": {str(k): v
                                 for k, v in sk.degree_histogram().items()},
        },
        "closed": tri.is_closed,
        "orientable": tri.is_orientable,
        "valid": tri.is_valid,
    }
    if not tri.is_closed:
        return report
    report["homology"] = _homology_block(tri)
    if sk.vertex_count == 1:
        classes = []
        for phi in cocycle.all_nonzero_classes(tri):
            census = cocycle.parity_census(tri, phi)
            rep = analyze.fundamental_report(tri, phi, k_phi=k_phi)
            canon = surface.canonical_surface(tri, phi)
            chi2, orientable, connected = surface.surface_classify(tri, canon.coord)
            classes.append({
                "cocycle": str(phi),
                "census": _census_block(census),
                "chi": canon.chi,
                "chi_formula": surface.chi_formula(census),
                "surface": {"chi": chi2, "orientable": orientable,
                            "connected": connected},
                "bound_report": _bound_block(rep),
            })
        report["classes"] = classes
        lsts = analyze.find_maximal_lsts(tri)
        report["maximal_layered_solid_tori"] = [
            {"tets": list(l.tets), "boundary_triple": list(l.boundary_triple),
             "univalent_edge": l.univalent_edge, "base_edge": l.base_edge}
            for l in lsts]
        report["lst_intersections"] = analyze.lst_intersection_matrix(tri, lsts)
        report["twisted_squares"] = [
            {"tet": t, "pairs": list(pairs), "kind": kind}
            for t, pairs, kind in surface.twisted_square_scan(tri)]
        report["lint"] = analyze.low_degree_lint(tri)
    return report


# ----- subcommand handlers ---------------------------------------------------


def cmd_construct_lst(args):
    tri, meta = build.lst(args.p, args.q)
    _write_tri(tri, args.out, {
        "family": "lst", "params": {"p": args.p, "q": args.q},
        "meridian_weights": {str(k): v for k, v in meta.edge_weights.items()},
        "fold": None,
        "predicted_homology": None,
    })
    return 0


def cmd_fold(args):
    weight_names = {"p": "p", "q": "q", "pq": "pq", "p+q": "pq"}
    if args.edge not in weight_names:
        raise TriangulationError("--edge must be one of p, q, pq")
    if args.input is not None:
        tri = _load(args.input)
        lsts = analyze.find_maximal_lsts(tri)
        if len(lsts) != 1 or lsts[0].size != tri.tet_count:
            raise TriangulationError(
                "input file is not a layered solid torus")
        emb = lsts[0]
        p, q = emb.boundary_triple[0], emb.boundary_triple[1]
        w = {"p": p, "q": q, "pq": p + q}[weight_names[args.edge]]
        edge = next(e for e in emb.boundary_edges
                    if emb.edge_weights[e] == w)
        folded, _ = build.fold_along_edge(tri, edge)
        weights = emb.edge_weights
    else:
        if args.p is None or args.q is None:
            raise TriangulationError("give a .tri file or both --p and --q")
        p, q = args.p, args.q
        w = {"p": p, "q": q, "pq": p + q}[weight_names[args.edge]]
        folded, meta, _ = build.lens_space(p, q, fold_weight=w)
        weights = meta.edge_weights
    if w == p:
        record = build.FoldRecord(w, 2 * q + p, q)
    elif w == q:
        record = build.FoldRecord(w, 2 * p + q, p)
    else:
        record = build.FoldRecord(w, abs(p - q), p)
    h = homology.first_homology(folded)
    _write_tri(folded, args.out, {
        "family": "lens", "params": {"p": p, "q": q, "fold_weight": w},
        "meridian_weights": {str(k): v for k, v in weights.items()},
        "fold": {"edge_weight": record.fold_edge_weight,
                 "lens": [record.lens_a, record.lens_b]},
        "predicted_homology": record.lens_a,
    })
    _emit({"written": args.out, "lens": [record.lens_a, record.lens_b],
           "homology": _homology_block(folded)})
    if h.order != record.lens_a or h.betti:
        raise AssertionError("fold homology disagrees with the lens record")
    return 0


def cmd_construct_family(args):
    tri, params = build.seifert_family(args.tag, args.k, args.m, args.n)
    _write_tri(tri, args.out, {
        "family": params.family,
        "params": list(params.params),
        "meridian_weights": None,
        "fold": None,
        "predicted_homology": {
            "slopes": [list(s) for s in params.slopes],
            "invariant_factors":
                list(params.predicted_homology.invariant_factors),
            "z2_rank": params.predicted_homology.z2_rank,
        },
    })
    return 0


def cmd_construct_loop(args):
    tri = build.layered_loop(args.n, args.twisted)
    _write_tri(tri, args.out, {
        "family": "layered_loop",
        "params": {"n": args.n, "twisted": args.twisted},
        "meridian_weights": None, "fold": None,
        "predicted_homology": None,
    })
    return 0


def cmd_construct_augmented(args):
    fillings = []
    for entry in args.annulus:
        parts = entry.split(":")
        if parts[0] == "fold":
            style = parts[1] if len(parts) > 1 else "straight"
            fillings.append(build.AnnulusFilling("fold", style=style))
        elif parts[0] == "lst":
            wh, wd, wv = (int(x) for x in parts[1].split(","))
            fillings.append(build.AnnulusFilling("lst", w_h=wh, w_d=wd, w_v=wv))
        else:
            raise TriangulationError(f"bad annulus entry {entry!r}")
    tri = build.augmented_solid_torus(tuple(fillings))
    _write_tri(tri, args.out, {
        "family": "augmented", "params": {"annuli": args.annulus},
        "meridian_weights": None, "fold": None, "predicted_homology": None,
    })
    return 0


def cmd_analyze(args):
    tri = _load(args.input)
    _emit(full_report(tri, {"file": str(args.input)}, k_phi=args.k_phi))
    return 0


def cmd_colourings(args):
    tri = _load(args.input)
    out = []
    for phi in cocycle.all_nonzero_classes(tri):
        census = cocycle.parity_census(tri, phi)
        out.append({"cocycle": str(phi), "census": _census_block(census)})
    _emit({"schema_version": SCHEMA_VERSION, "classes": out})
    return 0


def cmd_surface(args):
    tri = _load(args.input)
    classes = cocycle.all_nonzero_classes(tri)
    if not classes:
        raise TriangulationError("no nonzero colouring classes")
    phi = classes[args.cls]
    canon = surface.canonical_surface(tri, phi)
    coord = canon.coord
    octs = 0
    if args.b:
        b_edges = [int(x) for x in args.b.split(",") if x != ""]
        coord, octs = surface.b_modification(tri, phi, b_edges)
    chi = surface.euler_char(tri, coord)
    sys.stdout.write(coord.dump() + "\n")
    _emit({"schema_version": SCHEMA_VERSION, "cocycle": str(phi),
           "chi": chi, "octagons": octs,
           "chi_formula": surface.chi_formula(cocycle.parity_census(tri, phi))})
    return 0


def cmd_bounds(args):
    tri = _load(args.input)
    classes = cocycle.all_nonzero_classes(tri)
    out = []
    for i, phi in enumerate(classes):
        if args.cls is not None and i != args.cls:
            continue
        rep = analyze.fundamental_report(tri, phi, k_phi=args.k_phi)
        out.append({"cocycle": str(phi), **_bound_block(rep)})
    _emit({"schema_version": SCHEMA_VERSION, "bounds": out,
           "certificate": analyze.complexity_certificate(tri, family=args.family)})
    return 0


def cmd_moves(args):
    tri = _load(args.input)
    move = analyze.MoveSpec(args.move, face=args.face, edge=args.edge,
                            axis=args.axis)
    out = analyze.pachner(tri, move)
    _write_tri(out, args.out)
    _emit({"written": args.out, "tet_count": out.tet_count})
    return 0


def cmd_promote(args):
    tri = _load(args.input)
    classes = cocycle.all_nonzero_classes(tri)
    if not classes:
        raise TriangulationError("no nonzero colouring classes")
    phi = classes[args.cls]
    out, phi2, log = analyze.promote(tri, phi)
    _write_tri(out, args.out)
    _emit({"written": args.out, "flips": log, "cocycle": str(phi2)})
    return 0


def cmd_find_lst(args):
    tri = _load(args.input)
    lsts = analyze.find_maximal_lsts(tri)
    _emit({"schema_version": SCHEMA_VERSION,
           "tori": [{"tets": list(l.tets),
                     "boundary_triple": list(l.boundary_triple),
                     "base_edge": l.base_edge,
                     "univalent_edge": l.univalent_edge}
                    for l in lsts],
           "intersections": analyze.lst_intersection_matrix(tri, lsts)})
    return 0


def cmd_twisted_squares(args):
    tri = _load(args.input)
    _emit({"schema_version": SCHEMA_VERSION,
           "twisted_squares": [{"tet": t, "pairs": list(pr), "kind": kind}
                               for t, pr, kind in surface.twisted_square_scan(tri)]})
    return 0


def cmd_lgraph(args):
    nodes = build.lgraph(args.depth)
    _emit({"schema_version": SCHEMA_VERSION,
           "nodes": [{"p": n.p, "q": n.q, "depth": n.depth,
                      "even": n.e_bar, "odd": n.o_bar,
                      "deficiency": n.deficiency} for n in nodes]})
    return 0


def cmd_enumerate_lens(args):
    rows = build.enumerate_minimal_lens_families(args.depth)
    _emit({"schema_version": SCHEMA_VERSION,
           "families": [{"p": n.p, "q": n.q, "depth": n.depth,
                         "fold_weight": rec.fold_edge_weight,
                         "lens": [rec.lens_a, rec.lens_b],
                         "classification": cls}
                        for n, rec, cls in rows]})
    return 0


def cmd_verify(args):
    summary = verifysuite.run(only=args.only, quick=args.quick)
    for line in summary["lines"]:
        sys.stdout.write(line + "\n")
    _emit({"schema_version": SCHEMA_VERSION,
           "passed": summary["passed"], "failed": summary["failed"],
           "failures": summary["failures"]})
    return 0 if not summary["failed"] else 1


def make_parser():
    ap = argparse.ArgumentParser(
        prog="trinorm",
        description="layered triangulations, GF(2) colourings, canonical "
                    "surfaces and complexity bounds")
    sub = ap.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="build a triangulation family")
    consub = con.add_subparsers(dest="what", required=True)

    c_lst = consub.add_parser("lst")
    c_lst.add_argument("--p", type=int, required=True)
    c_lst.add_argument("--q", type=int, required=True)
    c_lst.add_argument("-o", "--out", required=True)
    c_lst.set_defaults(func=cmd_construct_lst)

    def add_fold(parser):
        parser.add_argument("input", nargs="?", default=None,
                            help=".tri file of a layered solid torus")
        parser.add_argument("--p", type=int, default=None)
        parser.add_argument("--q", type=int, default=None)
        parser.add_argument("--edge", required=True,
                            help="boundary edge by weight: p, q or pq")
        parser.add_argument("-o", "--out", required=True)
        parser.set_defaults(func=cmd_fold)

    add_fold(consub.add_parser("fold"))
    add_fold(sub.add_parser("fold", help="fold a layered solid torus"))

    c_fam = consub.add_parser("family")
    c_fam.add_argument("--tag", required=True, help="M, M', P or Q")
    c_fam.add_argument("-k", "--k", type=int, required=True)
    c_fam.add_argument("-m", "--m", type=int, default=None)
    c_fam.add_argument("-n", "--n", type=int, default=None)
    c_fam.add_argument("-o", "--out", required=True)
    c_fam.set_defaults(func=cmd_construct_family)

    c_loop = consub.add_parser("loop")
    c_loop.add_argument("--n", type=int, required=True)
    c_loop.add_argument("--twisted", action="store_true")
    c_loop.add_argument("-o", "--out", required=True)
    c_loop.set_defaults(func=cmd_construct_loop)

    c_aug = consub.add_parser("augmented")
    c_aug.add_argument("--annulus", action="append", required=True,
                       help="fold[:style] or lst:<wh,wd,wv>; give three")
    c_aug.add_argument("-o", "--out", required=True)
    c_aug.set_defaults(func=cmd_construct_augmented)

    p = sub.add_parser("analyze")
    p.add_argument("input")
    p.add_argument("--json", action="store_true", default=True)
    p.add_argument("--k-phi", type=int, default=0)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("colourings")
    p.add_argument("input")
    p.set_defaults(func=cmd_colourings)

    p = sub.add_parser("surface")
    p.add_argument("input")
    p.add_argument("--class", dest="cls", type=int, default=0)
    p.add_argument("--b", default="", help="comma separated even edge classes")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("bounds")
    p.add_argument("input")
    p.add_argument("--class", dest="cls", type=int, default=None)
    p.add_argument("--k-phi", type=int, default=0)
    p.add_argument("--family", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("moves")
    p.add_argument("input")
    p.add_argument("--move", required=True, choices=("23", "32", "44"))
    p.add_argument("--face", type=int, default=None)
    p.add_argument("--edge", type=int, default=None)
    p.add_argument("--axis", type=int, default=0)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_moves)

    p = sub.add_parser("promote")
    p.add_argument("input")
    p.add_argument("--class", dest="cls", type=int, default=0)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_promote)

    p = sub.add_parser("find-lst")
    p.add_argument("input")
    p.set_defaults(func=cmd_find_lst)

    p = sub.add_parser("twisted-squares")
    p.add_argument("input")
    p.set_defaults(func=cmd_twisted_squares)

    p = sub.add_parser("lgraph")
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_lgraph)

    p = sub.add_parser("enumerate-lens")
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_enumerate_lens)

    p = sub.add_parser("verify")
    p.add_argument("--only", default=None,
                   help="run only the named check (substring match)")
    p.add_argument("--quick", action="store_true",
                   help="smaller grids for a fast sanity pass")
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None):
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (TriangulationError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except AssertionError as exc:
        sys.stderr.write(f"internal check failed: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
