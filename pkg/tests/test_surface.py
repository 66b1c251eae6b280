"""Normal coordinates: canonical surfaces, Euler characteristics, octagon
modifications, formal solutions and twisted squares."""

from itertools import combinations

import pytest

from trinorm import build, cocycle, surface
from trinorm.surface import (NormalCoordinate, CoordinateError,
                             canonical_surface, chi_formula, euler_char,
                             vertex_link, b_modification, special_solutions,
                             formal_chi, twisted_square_scan, surface_classify,
                             edge_solution, tet_solution)
from trinorm.triangulation import TriangulationError


def test_vertex_link_sphere():
    tri, _, _ = build.lens_space(1, 4)
    link = vertex_link(tri)
    assert euler_char(tri, link) == 2
    assert surface_classify(tri, link) == (2, True, True)


def test_canonical_surface_weights_and_chi():
    for n in (3, 4, 6):
        tri, _, _ = build.lens_space(1, 2 * n - 2)
        phi = cocycle.all_nonzero_classes(tri)[0]
        canon = canonical_surface(tri, phi)
        assert canon.chi == 2 - n
        census = cocycle.parity_census(tri, phi)
        assert chi_formula(census) == canon.chi
        # one-sided spanning surface of the lens space
        assert surface_classify(tri, canon.coord) == (2 - n, False, True)


def test_all_empty_coordinate():
    tri, _, _ = build.lens_space(1, 4)
    zero = NormalCoordinate.zero(tri.tet_count)
    assert euler_char(tri, zero) == 0


def test_quad_surfaces_on_loops():
    tri = build.layered_loop(6, twisted=True)
    chis = []
    for phi in cocycle.all_nonzero_classes(tri):
        canon = canonical_surface(tri, phi)
        assert all(sum(r) == 0 for r in canon.coord.tris)  # quads only
        chis.append(surface_classify(tri, canon.coord))
    assert sorted(c[0] for c in chis) == [-2, -2, 0]
    kleins = [c for c in chis if c == (0, False, True)]
    assert len(kleins) == 1


def test_family_m_horizontal_surface():
    tri, _ = build.seifert_family("M", 1, 2, 1)
    phi = cocycle.all_nonzero_classes(tri)[0]
    canon = canonical_surface(tri, phi)
    chi, orientable, connected = surface_classify(tri, canon.coord)
    assert (chi, orientable, connected) == (-(1 + 2 + 1), False, True)


def test_matching_violation_rejected():
    tri, _, _ = build.lens_space(1, 4)
    good = canonical_surface(tri, cocycle.all_nonzero_classes(tri)[0]).coord
    tris = [list(r) for r in good.tris]
    tris[0][0] += 1   # corrupt one triangle count
    bad = NormalCoordinate(tuple(tuple(r) for r in tris), good.quads, good.octs)
    with pytest.raises(CoordinateError):
        euler_char(tri, bad)


def test_embeddability_violation_rejected():
    tri, _, _ = build.lens_space(1, 4)
    n = tri.tet_count
    quads = [[0, 0, 0] for _ in range(n)]
    quads[0] = [1, 1, 0]
    bad = NormalCoordinate(tuple((0,) * 4 for _ in range(n)),
                           tuple(tuple(r) for r in quads),
                           tuple((0,) * 3 for _ in range(n)))
    with pytest.raises(CoordinateError):
        euler_char(tri, bad)


def test_doubled_canonical_doubles_chi():
    tri, _, _ = build.lens_space(1, 6)
    phi = cocycle.all_nonzero_classes(tri)[0]
    canon = canonical_surface(tri, phi)
    doubled = canon.coord + canon.coord
    assert euler_char(tri, doubled) == 2 * canon.chi


def test_doubled_coordinates_classify_as_covers():
    # doubling a one-sided surface gives its connected orientable double
    # cover; doubling a two-sided sphere gives two disjoint spheres
    tri, _, _ = build.lens_space(1, 8)
    phi = cocycle.all_nonzero_classes(tri)[0]
    canon = canonical_surface(tri, phi)
    assert surface_classify(tri, canon.coord) == (canon.chi, False, True)
    assert surface_classify(tri, canon.coord + canon.coord) == \
        (2 * canon.chi, True, True)
    link = vertex_link(tri)
    assert surface_classify(tri, link + link) == (4, True, False)
    # a doubled Klein bottle is a torus
    loop = build.layered_loop(6, twisted=True)
    for phi in cocycle.all_nonzero_classes(loop):
        c = canonical_surface(loop, phi)
        if surface_classify(loop, c.coord) == (0, False, True):
            assert surface_classify(loop, c.coord + c.coord) == (0, True, True)
            break
    else:
        raise AssertionError("no Klein class found")


def test_b_modification_cases():
    tri = build.layered_loop(4, twisted=True)
    for phi in cocycle.all_nonzero_classes(tri):
        evens = phi.even_edges()
        base = canonical_surface(tri, phi)
        empty_coord, octs = b_modification(tri, phi, ())
        assert octs == 0 and empty_coord == base.coord
        for b in (evens[:1], evens):
            coord, octs = b_modification(tri, phi, b)
            chi = euler_char(tri, coord)
            assert chi == base.chi - 2 * octs + 2 * len(b)
            assert octs >= len(b)


def test_b_modification_rejects_odd_edges():
    tri = build.layered_loop(4, twisted=True)
    phi = cocycle.all_nonzero_classes(tri)[0]
    odd = phi.odd_edges()[0]
    with pytest.raises(TriangulationError):
        b_modification(tri, phi, (odd,))


def test_b_modification_needs_all_quad():
    tri, _ = build.seifert_family("M", 1, 1, 1)   # has TRI tetrahedra
    phi = cocycle.all_nonzero_classes(tri)[0]
    with pytest.raises(TriangulationError):
        b_modification(tri, phi, ())


def test_exhaustive_octagon_formula_small():
    tri, _, _ = build.lens_space(1, 6)   # L(8,1): 3 even edges
    phi = cocycle.all_nonzero_classes(tri)[0]
    base = canonical_surface(tri, phi)
    evens = phi.even_edges()
    for r in range(len(evens) + 1):
        for b in combinations(evens, r):
            coord, octs = b_modification(tri, phi, b)
            assert euler_char(tri, coord) == base.chi - 2 * octs + 2 * len(b)


def test_formal_solutions():
    tri = build.layered_loop(5, twisted=True)
    edges, tets, fchi = special_solutions(tri)
    assert all(fchi(sol) == 2 for sol in edges)
    assert all(fchi(sol) == 1 for sol in tets)
    assert fchi(vertex_link(tri)) == 2


def test_formal_chi_is_linear_and_extends_euler():
    tri, _, _ = build.lens_space(1, 8)
    phi = cocycle.all_nonzero_classes(tri)[0]
    canon = canonical_surface(tri, phi)
    link = vertex_link(tri)
    # linearity on a lattice of embedded coordinates
    import random
    rng = random.Random(5)
    for _ in range(50):
        a, b = rng.randint(0, 3), rng.randint(0, 2)
        coord = link.scale(a) + canon.coord.scale(b)
        assert formal_chi(tri, coord) == euler_char(tri, coord) \
            == 2 * a * tri.skeleton.vertex_count + b * canon.chi


def test_surgery_bookkeeping():
    # adding three edge solutions and subtracting two tetrahedral ones
    # raises the formal Euler characteristic by four
    tri = build.layered_loop(6, twisted=True)
    phi = cocycle.all_nonzero_classes(tri)[0]
    coord = canonical_surface(tri, phi).coord
    edges, tets, fchi = special_solutions(tri)
    modified = coord + edges[0] + edges[1] + edges[2] - tets[0] - tets[1]
    assert fchi(modified) == fchi(coord) + 3 * 2 - 2 * 1


def test_twisted_squares_on_loops():
    tri = build.layered_loop(6, twisted=True)
    kinds = {kind for _, _, kind in twisted_square_scan(tri)}
    assert "klein" in kinds


def test_twisted_square_torus_in_solid_torus():
    # the one-tetrahedron solid torus carries two identified opposite
    # pairs; a Klein bottle cannot embed there, so the square is a torus
    tri, _ = build.lst(1, 2)
    results = twisted_square_scan(tri)
    assert results and all(kind == "torus" for _, _, kind in results)


def test_no_pinched_squares_in_families():
    for tri in (build.layered_loop(8, twisted=True),
                build.seifert_family("M", 1, 1, 1)[0]):
        kinds = {kind for _, _, kind in twisted_square_scan(tri)}
        assert "pinched_rp2" not in kinds


def test_coordinate_dump_format():
    tri, _, _ = build.lens_space(1, 4)
    phi = cocycle.all_nonzero_classes(tri)[0]
    dump = canonical_surface(tri, phi).coord.dump()
    lines = dump.splitlines()
    assert len(lines) == tri.tet_count
    first = lines[0].split(":")[1]
    tri_part, quad_part, oct_part = (p.split() for p in first.split("|"))
    assert len(tri_part) == 4 and len(quad_part) == 3 and len(oct_part) == 3
