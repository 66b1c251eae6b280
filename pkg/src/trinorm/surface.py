"""Normal coordinate arithmetic and the canonical dual surfaces.

A coordinate assigns to each tetrahedron multiplicities of the four
vertex-linking triangles, three quadrilateral types and three octagon
types.  The incidence tables below are the single source of truth for how
each disc meets the edges and faces of its tetrahedron:

  triangle at vertex v   crosses the three edges at v once; one arc per
                         incident facet, cutting off v.
  quad of type i         separates vertices {0, i+1} from the rest; crosses
                         the four edges outside its pair (i, 5-i) once; one
                         arc per facet, cutting off the vertex that is
                         alone on its side of the partition.
  octagon of type i      same separation as quad i but also crosses the
                         pair edges twice; two arcs per facet, cutting off
                         both vertices of the majority side.

Octagons only arise from b-modifications of all-quad canonical surfaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .triangulation import (EDGE_VERTICES, OPPOSITE_EDGE, FACET_VERTICES,
                            TriangulationError)
from .cocycle import TetType, classify_tetrahedra, ParityCensus

# quad type i is disjoint from edge pair (i, 5-i): (01|23), (02|13), (03|12)
QUAD_PAIRS = ((0, 5), (1, 4), (2, 3))
# vertex partner of vertex 0 on the small side of quad/octagon type i
QUAD_SIDE_A = ((0, 1), (0, 2), (0, 3))


def _quad_edge_weights(i):
    w = [1] * 6
    w[QUAD_PAIRS[i][0]] = 0
    w[QUAD_PAIRS[i][1]] = 0
    return tuple(w)


def _oct_edge_weights(i):
    w = [1] * 6
    w[QUAD_PAIRS[i][0]] = 2
    w[QUAD_PAIRS[i][1]] = 2
    return tuple(w)


TRI_EDGE_WEIGHTS = tuple(
    tuple(1 if v in EDGE_VERTICES[e] else 0 for e in range(6)) for v in range(4))
QUAD_EDGE_WEIGHTS = tuple(_quad_edge_weights(i) for i in range(3))
OCT_EDGE_WEIGHTS = tuple(_oct_edge_weights(i) for i in range(3))


def quad_arc_vertex(i, facet):
    """Vertex cut off by the arc of quad type i in the given facet."""
    side_a = set(QUAD_SIDE_A[i])
    verts = [v for v in FACET_VERTICES[facet]]
    ina = [v for v in verts if v in side_a]
    out = [v for v in verts if v not in side_a]
    return ina[0] if len(ina) == 1 else out[0]


def oct_arc_vertices(i, facet):
    """The two vertices cut off by arcs of octagon type i in the facet."""
    side_a = set(QUAD_SIDE_A[i])
    verts = FACET_VERTICES[facet]
    ina = [v for v in verts if v in side_a]
    out = [v for v in verts if v not in side_a]
    return tuple(ina) if len(ina) == 2 else tuple(out)


@dataclass(frozen=True)
class NormalCoordinate:
    """Per-tetrahedron disc multiplicities.

    tris[t] has four entries, quads[t] and octs[t] three each.  Formal
    coordinates may carry negative quad entries and are exempt from the
    embeddability restriction of one quad-or-octagon type per tetrahedron.
    """
    tris: tuple
    quads: tuple
    octs: tuple
    formal: bool = False

    @classmethod
    def zero(cls, tet_count, formal=False):
        return cls(tuple((0,) * 4 for _ in range(tet_count)),
                   tuple((0,) * 3 for _ in range(tet_count)),
                   tuple((0,) * 3 for _ in range(tet_count)),
                   formal)

    @property
    def tet_count(self):
        return len(self.tris)

    def __add__(self, other):
        return NormalCoordinate(
            tuple(tuple(a + b for a, b in zip(ra, rb))
                  for ra, rb in zip(self.tris, other.tris)),
            tuple(tuple(a + b for a, b in zip(ra, rb))
                  for ra, rb in zip(self.quads, other.quads)),
            tuple(tuple(a + b for a, b in zip(ra, rb))
                  for ra, rb in zip(self.octs, other.octs)),
            self.formal or other.formal)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return NormalCoordinate(
            tuple(tuple(c * a for a in r) for r in self.tris),
            tuple(tuple(c * a for a in r) for r in self.quads),
            tuple(tuple(c * a for a in r) for r in self.octs),
            formal=self.formal or c < 0)

    def is_zero(self):
        return not any(any(r) for rr in (self.tris, self.quads, self.octs)
                       for r in rr)

    def edge_weight_slot(self, tet, edge_index):
        w = 0
        for v in range(4):
            w += self.tris[tet][v] * TRI_EDGE_WEIGHTS[v][edge_index]
        for i in range(3):
            w += self.quads[tet][i] * QUAD_EDGE_WEIGHTS[i][edge_index]
            w += self.octs[tet][i] * OCT_EDGE_WEIGHTS[i][edge_index]
        return w

    def arc_count(self, tet, facet, vertex):
        """Arcs cutting off the given vertex inside the given facet."""
        n = self.tris[tet][vertex]
        for i in range(3):
            if self.quads[tet][i] and quad_arc_vertex(i, facet) == vertex:
                n += self.quads[tet][i]
            if self.octs[tet][i] and vertex in oct_arc_vertices(i, facet):
                n += self.octs[tet][i]
        return n

    def dump(self):
        lines = []
        for t in range(self.tet_count):
            lines.append("%d: %s | %s | %s" % (
                t, " ".join(map(str, self.tris[t])),
                " ".join(map(str, self.quads[t])),
                " ".join(map(str, self.octs[t]))))
        return "\n".join(lines)


class CoordinateError(TriangulationError):
    pass


def check_embeddable(coord):
    if coord.formal:
        raise CoordinateError("formal coordinates are not embeddable")
    for t in range(coord.tet_count):
        if any(x < 0 for x in coord.tris[t] + coord.quads[t] + coord.octs[t]):
            raise CoordinateError(f"negative multiplicity in tetrahedron {t}")
        kinds = sum(1 for x in coord.quads[t] + coord.octs[t] if x)
        if kinds > 1:
            raise CoordinateError(
                f"tetrahedron {t} has more than one quad-or-octagon type")


def check_matching(tri, coord):
    """Arc counts must agree across every interior face gluing."""
    for fc in tri.skeleton.face_classes:
        if fc.boundary:
            continue
        (t1, f1), = fc.slots[:1]
        g = tri.gluing(t1, f1)
        t2, perm = g
        f2 = perm[f1]
        for v in FACET_VERTICES[f1]:
            if coord.arc_count(t1, f1, v) != coord.arc_count(t2, f2, perm[v]):
                raise CoordinateError(
                    f"matching fails across face ({t1},{f1})~({t2},{f2}) "
                    f"at vertex {v}")


def edge_weights(tri, coord):
    """Intersection count of the coordinate with each edge class; slots of
    one class must agree."""
    sk = tri.skeleton
    out = []
    for ec in sk.edge_classes:
        ws = {coord.edge_weight_slot(t, ei) for t, ei in ec.slots}
        if len(ws) != 1:
            raise CoordinateError(f"edge class {ec.index} has mixed weights {ws}")
        out.append(ws.pop())
    return out


def euler_char(tri, coord):
    """Euler characteristic by direct cell count of the induced
    decomposition: vertices on edges, arcs in faces, discs in tetrahedra."""
    check_embeddable(coord)
    check_matching(tri, coord)
    v = sum(edge_weights(tri, coord))
    e = 0
    for fc in tri.skeleton.face_classes:
        t, f = fc.slots[0]
        arcs = sum(coord.arc_count(t, f, vx) for vx in FACET_VERTICES[f])
        e += arcs
    f = sum(sum(coord.tris[t]) + sum(coord.quads[t]) + sum(coord.octs[t])
            for t in range(coord.tet_count))
    return v - e + f


def vertex_link(tri):
    """One triangle of every type in every tetrahedron: the link of the
    vertices, a sphere for each vertex class."""
    n = tri.tet_count
    return NormalCoordinate(tuple((1, 1, 1, 1) for _ in range(n)),
                            tuple((0, 0, 0) for _ in range(n)),
                            tuple((0, 0, 0) for _ in range(n)))


# ----- the canonical surface -------------------------------------------------


@dataclass(frozen=True)
class CanonicalSurface:
    coord: NormalCoordinate
    cocycle: object
    chi: int


def canonical_surface(tri, phi):
    """The unique normal surface meeting every odd edge once: a quad dual
    to the even pair in each QUAD tetrahedron, one triangle at the odd
    corner of each TRI tetrahedron, nothing in EMPTY ones."""
    types = classify_tetrahedra(tri, phi)
    n = tri.tet_count
    tris = [[0] * 4 for _ in range(n)]
    quads = [[0] * 3 for _ in range(n)]
    for t, (ty, detail) in enumerate(types):
        if ty is TetType.QUAD:
            quads[t][detail] = 1
        elif ty is TetType.TRI:
            tris[t][detail] = 1
    coord = NormalCoordinate(tuple(tuple(r) for r in tris),
                             tuple(tuple(r) for r in quads),
                             tuple((0, 0, 0) for _ in range(n)))
    ws = edge_weights(tri, coord)
    for ec in tri.skeleton.edge_classes:
        if ws[ec.index] != phi[ec.index]:
            raise AssertionError("canonical surface weight differs from parity")
    return CanonicalSurface(coord, phi, euler_char(tri, coord))


def chi_formula(census: ParityCensus):
    """Euler characteristic of the canonical surface from the parity census
    alone: half of 2 - 2e + n_tri + 2n_empty."""
    num = 2 - 2 * census.even_edges + census.tri_tets + 2 * census.empty_tets
    if num % 2:
        raise AssertionError("census gives an odd doubled Euler characteristic")
    return num // 2


# ----- b-modifications --------------------------------------------------------


def b_modification(tri, phi, b_edges):
    """Raise the weight of the selected even edges from 0 to 2.

    Requires every tetrahedron to be of QUAD type.  A quad whose even pair
    has one selected edge becomes two triangles at the ends of that edge;
    with both selected it becomes one octagon.  Returns the coordinate and
    the octagon count.
    """
    b = set(b_edges)
    sk = tri.skeleton
    for e in b:
        if phi[e]:
            raise TriangulationError(f"edge {e} is odd; b must select even edges")
    types = classify_tetrahedra(tri, phi)
    n = tri.tet_count
    tris = [[0] * 4 for _ in range(n)]
    quads = [[0] * 3 for _ in range(n)]
    octs = [[0] * 3 for _ in range(n)]
    for t, (ty, qi) in enumerate(types):
        if ty is not TetType.QUAD:
            raise TriangulationError(
                "b-modification needs all tetrahedra of quad type")
        e1, e2 = QUAD_PAIRS[qi]
        c1 = sk.edge_lookup[(t, e1)][0] in b
        c2 = sk.edge_lookup[(t, e2)][0] in b
        if not c1 and not c2:
            quads[t][qi] = 1
        elif c1 and c2:
            octs[t][qi] = 1
        else:
            heavy = e1 if c1 else e2
            a, bb = EDGE_VERTICES[heavy]
            tris[t][a] += 1
            tris[t][bb] += 1
    coord = NormalCoordinate(tuple(tuple(r) for r in tris),
                             tuple(tuple(r) for r in quads),
                             tuple(tuple(r) for r in octs))
    oct_count = sum(sum(r) for r in coord.octs)
    base = canonical_surface(tri, phi)
    chi = euler_char(tri, coord)
    if chi != base.chi - 2 * oct_count + 2 * len(b):
        raise AssertionError("octagon count formula violated")
    return coord, oct_count


# ----- formal solutions -------------------------------------------------------


def tet_solution(tri, tet):
    """All four triangles plus all three quads with coefficient -1 in one
    tetrahedron; satisfies the matching equations with zero arcs."""
    coord = NormalCoordinate.zero(tri.tet_count, formal=True)
    tris = [list(r) for r in coord.tris]
    quads = [list(r) for r in coord.quads]
    tris[tet] = [1, 1, 1, 1]
    quads[tet] = [-1, -1, -1]
    return NormalCoordinate(tuple(tuple(r) for r in tris),
                            tuple(tuple(r) for r in quads),
                            coord.octs, formal=True)


def edge_solution(tri, edge_class):
    """For every slot of the edge: the two triangles at its ends plus the
    quad disjoint from it with coefficient -1."""
    sk = tri.skeleton
    ec = sk.edge_classes[edge_class]
    tris = [[0] * 4 for _ in range(tri.tet_count)]
    quads = [[0] * 3 for _ in range(tri.tet_count)]
    for t, ei in ec.slots:
        a, b = EDGE_VERTICES[ei]
        tris[t][a] += 1
        tris[t][b] += 1
        qi = next(i for i in range(3) if ei in QUAD_PAIRS[i])
        quads[t][qi] -= 1
    return NormalCoordinate(tuple(tuple(r) for r in tris),
                            tuple(tuple(r) for r in quads),
                            tuple((0, 0, 0) for _ in range(tri.tet_count)),
                            formal=True)


def formal_chi(tri, coord):
    """Linear Euler characteristic functional: each disc contributes one
    face, half an edge per side, and 1/degree of a vertex per corner.
    Agrees with euler_char on embedded coordinates."""
    sk = tri.skeleton
    if not tri.is_closed:
        raise TriangulationError("formal chi is defined for closed triangulations")
    inv_deg = {}
    for t in range(tri.tet_count):
        for ei in range(6):
            cls = sk.edge_lookup[(t, ei)][0]
            inv_deg[(t, ei)] = Fraction(1, sk.edge_classes[cls].degree)
    total = Fraction(0)
    for t in range(tri.tet_count):
        for v in range(4):
            c = coord.tris[t][v]
            if c:
                corners = sum(inv_deg[(t, ei)] for ei in range(6)
                              if v in EDGE_VERTICES[ei])
                total += c * (corners - Fraction(3, 2) + 1)
        for i in range(3):
            c = coord.quads[t][i]
            if c:
                corners = sum(inv_deg[(t, ei)] for ei in range(6)
                              if ei not in QUAD_PAIRS[i])
                total += c * (corners - 2 + 1)
            c = coord.octs[t][i]
            if c:
                corners = sum(inv_deg[(t, ei)] for ei in range(6)
                              if ei not in QUAD_PAIRS[i])
                corners += sum(2 * inv_deg[(t, ei)] for ei in QUAD_PAIRS[i])
                total += c * (corners - 4 + 1)
    return int(total) if total.denominator == 1 else total


def special_solutions(tri):
    """Edge and tetrahedral solutions plus the formal Euler characteristic
    functional, in the convention with negative quadrilateral entries."""
    edges = [edge_solution(tri, e)
             for e in range(tri.skeleton.edge_count)]
    tets = [tet_solution(tri, t) for t in range(tri.tet_count)]
    return edges, tets, lambda coord: formal_chi(tri, coord)


# ----- twisted squares ---------------------------------------------------------


def twisted_square_scan(tri):
    """Tetrahedra with two pairs of opposite edges identified.

    The square bounded by the four identified edges closes up to a torus
    when both identifications translate (class orientations anti-aligned
    along the square's cyclic boundary), a Klein bottle when exactly one
    reverses, and a pinched projective plane when both do.
    """
    sk = tri.skeleton
    results = []
    for t in range(tri.tet_count):
        pair_info = []
        for ei in range(3):
            ej = OPPOSITE_EDGE[ei]
            ci, si = sk.edge_lookup[(t, ei)]
            cj, sj = sk.edge_lookup[(t, ej)]
            pair_info.append((ci == cj, si * sj))
        idx = [i for i in range(3) if pair_info[i][0]]
        if len(idx) < 2:
            continue
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                s1 = pair_info[idx[a]][1]
                s2 = pair_info[idx[b]][1]
                if s1 < 0 and s2 < 0:
                    kind = "torus"
                elif s1 > 0 and s2 > 0:
                    kind = "pinched_rp2"
                else:
                    kind = "klein"
                results.append((t, (idx[a], idx[b]), kind))
    return results


# ----- surface classification ---------------------------------------------------


def _disc_list(coord):
    discs = []
    for t in range(coord.tet_count):
        for v in range(4):
            for c in range(coord.tris[t][v]):
                discs.append((t, "tri", v, c))
        for i in range(3):
            for c in range(coord.quads[t][i]):
                discs.append((t, "quad", i, c))
            for c in range(coord.octs[t][i]):
                discs.append((t, "oct", i, c))
    return discs


def _arcs_at(coord, disc_index, discs, tet, facet, vertex):
    """Disc indices with an arc cutting off the vertex in this facet, in
    order of distance from the vertex.

    Vertex triangles come first.  Parallel quad or octagon copies are
    indexed from the side of the partition containing vertex 0; the copy
    nearest the cut-off vertex is the first copy when the vertex lies on
    that side and the last copy otherwise, so the orders on the two sides
    of a face gluing correspond.
    """
    out = []
    for di in disc_index.get(tet, ()):
        t, kind, typ, copy = discs[di]
        if kind == "tri" and typ == vertex:
            out.append((0, copy, di))
        elif kind == "quad" and quad_arc_vertex(typ, facet) == vertex:
            m = coord.quads[tet][typ]
            pos = copy if vertex in QUAD_SIDE_A[typ] else m - 1 - copy
            out.append((1, pos, di))
        elif kind == "oct" and vertex in oct_arc_vertices(typ, facet):
            m = coord.octs[tet][typ]
            pos = copy if vertex in QUAD_SIDE_A[typ] else m - 1 - copy
            out.append((1, pos, di))
    out.sort()
    return [di for _, _, di in out]


def _toward_vertex_sign(disc, vertex):
    _, kind, typ, _ = disc
    if kind == "tri":
        return 1
    return 1 if vertex in QUAD_SIDE_A[typ] else -1


def surface_classify(tri, coord):
    """(chi, orientable, connected) of an embedded coordinate.

    Orientability is decided by propagating transverse orientations across
    the normal disc adjacency graph; in the orientable manifolds built
    here that coincides with orientability of the surface itself.
    """
    check_embeddable(coord)
    check_matching(tri, coord)
    chi = euler_char(tri, coord)
    discs = _disc_list(coord)
    if not discs:
        return chi, True, False
    index_of = {d: i for i, d in enumerate(discs)}
    by_tet = {}
    for i, d in enumerate(discs):
        by_tet.setdefault(d[0], []).append(i)

    parent = list(range(len(discs)))
    rel = [0] * len(discs)

    def find2(x):
        path = []
        root = x
        while parent[root] != root:
            path.append(root)
            root = parent[root]
        acc = 0
        for node in reversed(path):
            acc ^= rel[node]
            parent[node] = root
            rel[node] = acc
        return root, (rel[x] if path else 0)

    conflict = False

    def union(x, y, r):
        nonlocal conflict
        rx, px = find2(x)
        ry, py = find2(y)
        if rx == ry:
            if (px ^ py) != r:
                conflict = True
            return
        parent[ry] = rx
        rel[ry] = px ^ r ^ py

    for fc in tri.skeleton.face_classes:
        if fc.boundary:
            continue
        t1, f1 = fc.slots[0]
        t2, perm = tri.gluing(t1, f1)
        f2 = perm[f1]
        for v in FACET_VERTICES[f1]:
            side1 = _arcs_at(coord, by_tet, discs, t1, f1, v)
            side2 = _arcs_at(coord, by_tet, discs, t2, f2, perm[v])
            if len(side1) != len(side2):
                raise CoordinateError("arc mismatch during classification")
            for d1, d2 in zip(side1, side2):
                s1 = _toward_vertex_sign(discs[d1], v)
                s2 = _toward_vertex_sign(discs[d2], perm[v])
                union(d1, d2, 0 if s1 == s2 else 1)

    roots = {find2(i)[0] for i in range(len(discs))}
    connected = len(roots) == 1
    return chi, not conflict, connected
