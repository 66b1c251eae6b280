"""Acceptance grid: every check the package promises, one line per check.

Each criterion is exact (integer equalities); there are no tolerances.
The same driver backs the command line ``verify`` subcommand and the
acceptance test module.
"""

from __future__ import annotations

import random
from itertools import combinations, product

from . import build, homology, cocycle, surface, analyze
from .cocycle import TetType
from .triangulation import TriangulationError


def iter_lst_tree(depth_limit):
    """(node, triangulation, meta) for every fraction-tree node, built
    incrementally by layering one tetrahedron on the parent."""
    tri, meta = build.lst(1, 2)
    frontier = [(build.LGraphNode(1, 2, 1, 1, 2), tri, meta)]
    depth = 1
    while depth <= depth_limit:
        nxt = []
        for node, tri, meta in frontier:
            yield node, tri, meta
            if depth < depth_limit:
                for gone in (node.q, node.p):
                    edge = next(e for e in meta.boundary_edges
                                if meta.edge_weights[e] == gone)
                    t2, m2 = build.layer_on_edge(tri, edge, meta)
                    child = (node.p, node.p + node.q) if gone == node.q \
                        else (node.q, node.p + node.q)
                    ws = list(m2.edge_weights.values())
                    e_bar = sum(1 for w in ws if w % 2 == 0)
                    nxt.append((build.LGraphNode(child[0], child[1], depth + 1,
                                                 e_bar, len(ws) - e_bar),
                                t2, m2))
        frontier = nxt
        depth += 1


def check_lst_counts(quick=False):
    depth = 8 if quick else 12
    n = 0
    for node, tri, meta in iter_lst_tree(depth):
        sk = tri.skeleton
        k = tri.tet_count
        if not (sk.vertex_count == 1 and sk.edge_count == k + 2
                and sk.face_count == 2 * k + 1 and k == node.depth):
            return False, f"counts wrong at {node.p}/{node.q}"
        n += 1
    return True, f"{n} layered solid tori checked to depth {depth}"


def check_fold_homology(quick=False):
    depth = 6 if quick else 10
    n = 0
    for node, tri, meta in iter_lst_tree(depth):
        p, q = meta.p, meta.q
        for w, expect in ((p, 2 * q + p), (q, 2 * p + q), (p + q, abs(p - q))):
            edge = next(e for e in meta.boundary_edges
                        if meta.edge_weights[e] == w)
            folded, _ = build.fold_along_edge(tri, edge, meta)
            h = homology.first_homology(folded)
            if h.betti or h.order != expect:
                return False, (f"fold of {p}/{q} along {w}: |H1| = {h.order}, "
                               f"expected {expect}")
            n += 1
    return True, f"{n} folds matched the lens table to depth {depth}"


def check_one_tet_folds(quick=False):
    for w, expect in ((2, 4), (1, 5), (3, 1)):
        folded, meta, rec = build.lens_space(1, 2, fold_weight=w)
        h = homology.first_homology(folded)
        if h.betti or h.order != expect or rec.lens_a != expect:
            return False, f"fold along {w}: got {h}, expected order {expect}"
    return True, "one-tetrahedron folds give orders 4, 5, 1"


def check_balanced_family(quick=False):
    ns = range(3, 9) if quick else range(3, 13)
    for n in ns:
        tri, meta, rec = build.lens_space(1, 2 * n - 2)
        if tri.tet_count != 2 * n - 3:
            return False, f"L({2*n},1): {tri.tet_count} tetrahedra"
        phis = cocycle.all_nonzero_classes(tri)
        if len(phis) != 1:
            return False, f"L({2*n},1): {len(phis)} classes"
        census = cocycle.parity_census(tri, phis[0])
        rep = analyze.fundamental_report(tri, phis[0], k_phi=0)
        ok = (census.even_edges == n - 1 and census.odd_edges == n - 1
              and rep.chi == 2 - n and census.tri_tets == 0
              and rep.eq1_lhs == 2 and rep.eq1_rhs == 2 and rep.balanced)
        if not ok:
            return False, (f"L({2*n},1): e={census.even_edges} o={census.odd_edges} "
                           f"chi={rep.chi} eq1={rep.eq1_lhs}/{rep.eq1_rhs}")
    return True, f"balanced L(2n,1) exact for n in {ns.start}..{ns.stop - 1}"


def _family_grid(quick=False):
    rng = (1, 2) if quick else (1, 2, 3)
    for tag in ("M", "MPRIME"):
        for k, m, n in product(rng, repeat=3):
            yield tag, (k, m, n), build.seifert_family(tag, k, m, n)[0]
    for k in ((1, 2) if quick else (1, 2, 3)):
        yield "P", (k,), build.seifert_family("P", k)[0]
    for k in ((4, 6) if quick else (4, 6, 8, 10)):
        yield "Q", (k,), build.layered_loop(k, twisted=True)


def _lens_grid(quick=False):
    depth = 5 if quick else 10
    for node, tri, meta in iter_lst_tree(depth):
        for w in (meta.p, meta.q, meta.p + meta.q):
            edge = next(e for e in meta.boundary_edges
                        if meta.edge_weights[e] == w)
            folded, rec = build.fold_along_edge(tri, edge, meta)
            yield (meta.p, meta.q, w), folded


def check_chi_two_methods(quick=False):
    n = 0
    for name, params, tri in _family_grid(quick):
        for phi in cocycle.all_nonzero_classes(tri):
            census = cocycle.parity_census(tri, phi)
            canon = surface.canonical_surface(tri, phi)
            if canon.chi != surface.chi_formula(census):
                return False, f"{name}{params}: {canon.chi} != formula"
            n += 1
    for key, folded in _lens_grid(quick):
        for phi in cocycle.all_nonzero_classes(folded):
            census = cocycle.parity_census(folded, phi)
            canon = surface.canonical_surface(folded, phi)
            if canon.chi != surface.chi_formula(census):
                return False, f"lens {key}: {canon.chi} != formula"
            n += 1
    return True, f"cell count equals census formula on {n} surfaces"


def check_family_m(quick=False):
    rng = (1, 2) if quick else (1, 2, 3)
    for k, m, n in product(rng, repeat=3):
        tri, params = build.seifert_family("M", k, m, n)
        h = homology.first_homology(tri)
        phis = cocycle.all_nonzero_classes(tri)
        if tri.tet_count != 2 * (k + m + n + 1):
            return False, f"M{(k,m,n)}: {tri.tet_count} tetrahedra"
        if h.z2_rank != 1 or len(phis) != 1:
            return False, f"M{(k,m,n)}: rank {h.z2_rank}"
        canon = surface.canonical_surface(tri, phis[0])
        if canon.chi != -(k + m + n):
            return False, f"M{(k,m,n)}: chi {canon.chi}"
    return True, f"family M exact on {len(rng) ** 3} instances"


def check_family_mprime(quick=False):
    rng = (1, 2) if quick else (1, 2, 3)
    for k, m, n in product(rng, repeat=3):
        tri, params = build.seifert_family("MPRIME", k, m, n)
        h = homology.first_homology(tri)
        phis = cocycle.all_nonzero_classes(tri)
        if tri.tet_count != 2 * k + 2 * m + 2 * n + 3:
            return False, f"M'{(k,m,n)}: {tri.tet_count} tetrahedra"
        if h.z2_rank != 2 or len(phis) != 3:
            return False, f"M'{(k,m,n)}: rank {h.z2_rank}"
        total = sum(-surface.canonical_surface(tri, phi).chi for phi in phis)
        if total != 2 * (k + m + n):
            return False, f"M'{(k,m,n)}: norm sum {total}"
        if tri.tet_count != 3 + total:
            return False, f"M'{(k,m,n)}: count != 3 + sum"
    return True, f"family M' exact on {len(rng) ** 3} instances"


def check_quaternionic(quick=False):
    ks = (4, 6) if quick else (4, 6, 8, 10)
    for k in ks:
        tri = build.layered_loop(k, twisted=True)
        h = homology.first_homology(tri)
        if tri.tet_count != k or h.invariant_factors != (2, 2) or h.betti:
            return False, f"loop {k}: {h}"
        phis = cocycle.all_nonzero_classes(tri)
        klein = 0
        for phi in phis:
            types = cocycle.classify_tetrahedra(tri, phi)
            if any(ty is not TetType.QUAD for ty, _ in types):
                return False, f"loop {k}: non-quad tetrahedron"
            canon = surface.canonical_surface(tri, phi)
            chi, orientable, connected = surface.surface_classify(tri, canon.coord)
            if chi == 0 and connected and not orientable:
                klein += 1
        if klein != 1:
            return False, f"loop {k}: {klein} Klein classes"
        kinds = {kind for _, _, kind in surface.twisted_square_scan(tri)}
        if "klein" not in kinds:
            return False, f"loop {k}: no Klein square ({kinds})"
    return True, f"twisted loops exact for k in {ks}"


def check_octagon_formula(quick=False):
    instances = []
    for k in ((4,) if quick else (4, 6)):
        instances.append((f"loop{k}", build.layered_loop(k, twisted=True)))
    for n in ((4, 7) if quick else (4, 7, 13)):
        tri, meta, rec = build.lens_space(1, 2 * n - 2)
        instances.append((f"L({2*n},1)", tri))
    checked = 0
    for name, tri in instances:
        taut = name.startswith("loop")
        for phi in cocycle.all_nonzero_classes(tri):
            evens = phi.even_edges()
            if len(evens) > 12:
                return False, f"{name}: {len(evens)} kernel edges"
            base = surface.canonical_surface(tri, phi)
            for r in range(len(evens) + 1):
                for b in combinations(evens, r):
                    coord, octs = surface.b_modification(tri, phi, b)
                    chi = surface.euler_char(tri, coord)
                    if chi != base.chi - 2 * octs + 2 * len(b):
                        return False, f"{name}: formula fails at b={b}"
                    if taut and octs < len(b):
                        return False, f"{name}: o(b) < |b| at {b}"
                    checked += 1
    return True, f"octagon count formula on {checked} modifications"


def check_formal_solutions(quick=False):
    n = 0
    instances = [tri for _, _, tri in _family_grid(quick=True)]
    instances.append(build.lens_space(1, 6)[0])
    for tri in instances:
        edges, tets, fchi = surface.special_solutions(tri)
        for sol in edges:
            if fchi(sol) != 2:
                return False, "edge solution with formal chi != 2"
            n += 1
        for sol in tets:
            if fchi(sol) != 1:
                return False, "tetrahedral solution with formal chi != 1"
            n += 1
        link = surface.vertex_link(tri)
        if fchi(link) != surface.euler_char(tri, link):
            return False, "formal chi disagrees with cell count on the link"
    return True, f"{n} special solutions have formal chi 2 and 1"


def _random_interior_faces(tri, rng):
    faces = [fc.index for fc in tri.skeleton.face_classes
             if not fc.boundary and not fc.self_glued
             and tri.gluing(*fc.slots[0])[0] != fc.slots[0][0]]
    rng.shuffle(faces)
    return faces


def check_moves(quick=False):
    rng = random.Random(20260810)
    pool = [build.lens_space(1, 6)[0], build.lens_space(1, 8)[0],
            build.layered_loop(6, twisted=True),
            build.seifert_family("M", 1, 1, 1)[0]]
    target = 30 if quick else 100
    done = 0
    while done < target:
        tri = pool[done % len(pool)]
        faces = _random_interior_faces(tri, rng)
        if not faces:
            return False, "no usable 2-3 site"
        h0 = homology.first_homology(tri)
        bigger, _, _, _ = analyze.move23(tri, faces[0])
        h1 = homology.first_homology(bigger)
        if (h1.invariant_factors, h1.betti) != (h0.invariant_factors, h0.betti):
            return False, "2-3 move changed homology"
        new_edge = max((ec.index for ec in bigger.skeleton.edge_classes
                        if ec.degree == 3
                        and len({s[0] for s in ec.slots}) == 3),
                       default=None)
        if new_edge is None:
            return False, "no 3-2 site after a 2-3 move"
        back, _, _, _ = analyze.move32(bigger, new_edge)
        if not back.isomorphic(tri):
            return False, "2-3 followed by 3-2 is not the identity"
        done += 1

    # all-quad octahedron: deterministic hunt via seeded 2-3 moves, then the
    # 4-4 flip must produce four triangle-type tetrahedra
    found = None
    base = build.layered_loop(6, twisted=True)
    for phi0 in cocycle.all_nonzero_classes(base):
        for trial in range(40):
            tri, phi = base, phi0
            srng = random.Random(600 + trial)
            for _ in range(3):
                faces = [fc.index for fc in tri.skeleton.face_classes
                         if not fc.boundary and not fc.self_glued
                         and tri.gluing(*fc.slots[0])[0] != fc.slots[0][0]]
                if not faces:
                    break
                f = srng.choice(faces)
                tri, phi = analyze.pachner_with_cocycle(
                    tri, phi, analyze.MoveSpec("23", face=f))
                sites = []
                types = cocycle.classify_tetrahedra(tri, phi)
                for ec in tri.skeleton.edge_classes:
                    if ec.degree != 4 or phi[ec.index]:
                        continue
                    tets = {s[0] for s in ec.slots}
                    if len(tets) == 4 and all(
                            types[t][0] is TetType.QUAD for t in tets):
                        sites.append(ec.index)
                if sites:
                    found = (tri, phi, sites[0])
                    break
            if found:
                break
        if found:
            break
    if not found:
        return False, "no all-quad octahedron located"
    tri, phi, edge = found
    h0 = homology.first_homology(tri)
    flipped, phi2 = analyze.pachner_with_cocycle(
        tri, phi, analyze.MoveSpec("44", edge=edge, axis=0))
    h1 = homology.first_homology(flipped)
    if (h1.invariant_factors, h1.betti) != (h0.invariant_factors, h0.betti):
        return False, "4-4 move changed homology"
    newtypes = cocycle.classify_tetrahedra(flipped, phi2)[-4:]
    if any(ty is not TetType.TRI for ty, _ in newtypes):
        return False, f"4-4 on all-quad octahedron gave {newtypes}"
    return True, (f"{done} 2-3/3-2 round trips, homology invariant, "
                  "all-quad 4-4 flip gives four triangle tetrahedra")


def check_lst_recognition(quick=False):
    depth = 6 if quick else 8
    n = 0
    for node, tri, meta in iter_lst_tree(depth):
        if tri.tet_count < 3:
            continue
        for w in (meta.p, meta.q):
            edge = next(e for e in meta.boundary_edges
                        if meta.edge_weights[e] == w)
            folded, _ = build.fold_along_edge(tri, edge, meta)
            lsts = analyze.find_maximal_lsts(folded)
            if len(lsts) != 2:
                return False, (f"lens {node.p}/{node.q} fold {w}: "
                               f"{len(lsts)} maximal tori")
            joint = set(lsts[0].tets) & set(lsts[1].tets)
            if len(joint) != folded.tet_count - 2:
                return False, (f"lens {node.p}/{node.q}: tori meet in "
                               f"{len(joint)} tetrahedra")
            n += 1
    rng = (1, 2) if quick else (1, 2, 3)
    for tag in ("M", "MPRIME"):
        for k, m, nn in product(rng, repeat=3):
            tri, _ = build.seifert_family(tag, k, m, nn)
            lsts = analyze.find_maximal_lsts(tri)
            if len(lsts) != 3:
                return False, f"{tag}{(k,m,nn)}: {len(lsts)} maximal tori"
            mat = analyze.lst_intersection_matrix(tri, lsts)
            if any(mat[i][j] > 1 for i in range(3) for j in range(3) if i != j):
                return False, f"{tag}{(k,m,nn)}: shared edges {mat}"
            n += 1
    return True, f"{n} recognition checks"


def check_fundamental_identity(quick=False):
    rng = random.Random(1789)
    n = 0
    instances = [tri for _, _, tri in _family_grid(quick=True)]
    for key, folded in _lens_grid(quick=True):
        instances.append(folded)
    vector_budget = 60 if quick else 200
    for tri in instances:
        for phi in cocycle.all_nonzero_classes(tri):
            analyze.fundamental_report(tri, phi)  # raises on violation
            n += 1
    randoms = 0
    closed_one_vertex = [t for t in instances
                         if t.skeleton.vertex_count == 1]
    while randoms < vector_budget:
        tri = closed_one_vertex[randoms % len(closed_one_vertex)]
        basis = cocycle.cocycle_basis(tri)
        if not basis:
            randoms += 1
            continue
        acc = None
        for phi in basis:
            if rng.random() < 0.5:
                acc = phi if acc is None else acc + phi
        if acc is None or acc.is_zero:
            acc = basis[0]
        analyze.fundamental_report(tri, acc)
        randoms += 1
        n += 1
    return True, f"degree identity asserted on {n} colourings"


def check_lint_identity(quick=False):
    n = 0
    instances = [tri for _, _, tri in _family_grid(quick=True)]
    for key, folded in _lens_grid(quick=True):
        instances.append(folded)
    for tri in instances:
        sk = tri.skeleton
        if not tri.is_closed or sk.vertex_count != 1:
            continue
        if sk.edge_count != tri.tet_count + 1:
            return False, "E != T + 1"
        total = sum((6 - d) * c for d, c in sk.degree_histogram().items())
        if total != 6:
            return False, f"sum (6-i) E_i = {total}"
        n += 1
    return True, f"E = T+1 and sum (6-i)E_i = 6 on {n} closed instances"


CHECKS = (
    ("lst_counts", check_lst_counts),
    ("fold_homology", check_fold_homology),
    ("one_tet_folds", check_one_tet_folds),
    ("balanced_family", check_balanced_family),
    ("chi_two_methods", check_chi_two_methods),
    ("family_m", check_family_m),
    ("family_mprime", check_family_mprime),
    ("quaternionic", check_quaternionic),
    ("octagon_formula", check_octagon_formula),
    ("formal_solutions", check_formal_solutions),
    ("moves", check_moves),
    ("lst_recognition", check_lst_recognition),
    ("fundamental_identity", check_fundamental_identity),
    ("lint_identity", check_lint_identity),
)


def run(only=None, quick=False):
    """Run the acceptance checks; returns a printable summary."""
    lines = []
    failures = []
    passed = 0
    for name, fn in CHECKS:
        if only and only not in name:
            continue
        try:
            ok, detail = fn(quick=quick)
        except (TriangulationError, AssertionError) as exc:
            ok, detail = False, f"raised {exc}"
        status = "PASS" if ok else "FAIL"
        lines.append(f"{status} {name}: {detail}")
        if ok:
            passed += 1
        else:
            failures.append({"check": name, "detail": detail})
    return {"lines": lines, "passed": passed,
            "failed": len(failures), "failures": failures}
