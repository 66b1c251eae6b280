"""GF(2) edge colourings of one-vertex triangulations.

In a closed one-vertex triangulation every edge is a loop, so a
homomorphism pi_1(M) -> Z/2 is the same thing as an assignment of bits to
edge classes for which the three edges of every face sum to zero.  The
solution space of those face relations is computed by bitset Gaussian
elimination with a deterministic pivot order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .triangulation import (EDGE_VERTICES, FACET_VERTICES, EDGE_INDEX,
                            TriangulationError)
from .homology import gf2_kernel_basis


class TetType(Enum):
    """Edge-parity pattern of a tetrahedron: QUAD has one opposite pair of
    even edges and carries a quadrilateral of the canonical surface, TRI
    has its three odd edges at a single vertex and carries a triangle,
    EMPTY is all even and carries nothing."""
    QUAD = "quad"
    TRI = "tri"
    EMPTY = "empty"


@dataclass(frozen=True)
class Cocycle:
    """A Z/2 cochain on edge classes satisfying all face relations."""
    bits: tuple

    def __getitem__(self, edge_class):
        return self.bits[edge_class]

    @property
    def is_zero(self):
        return not any(self.bits)

    def even_edges(self):
        return tuple(i for i, b in enumerate(self.bits) if b == 0)

    def odd_edges(self):
        return tuple(i for i, b in enumerate(self.bits) if b)

    def __add__(self, other):
        return Cocycle(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __str__(self):
        return "".join(str(b) for b in self.bits)


def _require_one_vertex_closed(tri):
    if not tri.is_closed:
        raise TriangulationError("cocycles require a closed triangulation")
    if tri.skeleton.vertex_count != 1:
        raise TriangulationError(
            "cocycles are only computed on one-vertex triangulations")


def face_relation_rows(tri):
    """One GF(2) row per face class: bit e set iff edge class e appears an
    odd number of times among the face's three edges."""
    sk = tri.skeleton
    rows = []
    for fc in sk.face_classes:
        t, f = fc.slots[0]
        bits = 0
        verts = FACET_VERTICES[f]
        for i, x in enumerate(verts):
            for y in verts[i + 1:]:
                cls = sk.edge_lookup[(t, EDGE_INDEX[(x, y)])][0]
                bits ^= 1 << cls
        rows.append(bits)
    return rows


def cocycle_basis(tri):
    """Deterministic basis of H^1(M; Z/2) as edge colourings."""
    _require_one_vertex_closed(tri)
    ne = tri.skeleton.edge_count
    basis = gf2_kernel_basis(face_relation_rows(tri), ne)
    return [Cocycle(tuple((vec >> e) & 1 for e in range(ne))) for vec in basis]


def all_nonzero_classes(tri):
    """Every nonzero element of H^1(M; Z/2), ordered by binary combination
    of the deterministic basis."""
    basis = cocycle_basis(tri)
    out = []
    for mask in range(1, 1 << len(basis)):
        acc = None
        for i, phi in enumerate(basis):
            if (mask >> i) & 1:
                acc = phi if acc is None else acc + phi
        out.append(acc)
    return out


def is_cocycle(tri, bits):
    ne = tri.skeleton.edge_count
    vec = 0
    for e, b in enumerate(bits):
        if b:
            vec |= 1 << e
    return all(bin(row & vec).count("1") % 2 == 0
               for row in face_relation_rows(tri))


def tet_parity_pattern(tri, phi, tet):
    """Bitmask over the six edge slots of a tetrahedron, bit set = odd."""
    sk = tri.skeleton
    mask = 0
    for ei in range(6):
        cls = sk.edge_lookup[(tet, ei)][0]
        if phi[cls]:
            mask |= 1 << ei
    return mask


# odd-edge masks realising each type; quad type i has even pair (i, 5-i)
_QUAD_MASKS = {0b111111 ^ (1 << i) ^ (1 << (5 - i)): i for i in range(3)}
_TRI_MASKS = {}
for _v in range(4):
    _m = 0
    for _ei, (_a, _b) in enumerate(EDGE_VERTICES):
        if _v in (_a, _b):
            _m |= 1 << _ei
    _TRI_MASKS[_m] = _v


def classify_tetrahedra(tri, phi):
    """Type of every tetrahedron under the colouring.

    Returns a list of (TetType, detail) where detail is the even-pair quad
    index for QUAD tetrahedra and the odd-corner vertex for TRI ones.
    """
    out = []
    for t in range(tri.tet_count):
        mask = tet_parity_pattern(tri, phi, t)
        if mask == 0:
            out.append((TetType.EMPTY, None))
        elif mask in _QUAD_MASKS:
            out.append((TetType.QUAD, _QUAD_MASKS[mask]))
        elif mask in _TRI_MASKS:
            out.append((TetType.TRI, _TRI_MASKS[mask]))
        else:
            raise TriangulationError(
                f"edge parities of tetrahedron {t} match no type; "
                "input is not a cocycle")
    return out


@dataclass(frozen=True)
class ParityCensus:
    even_edges: int
    odd_edges: int
    even_degree_histogram: dict
    even_edge_slots: int          # pre-images of even edges over all tetrahedra
    quad_tets: int
    tri_tets: int
    empty_tets: int
    even_subcomplex: tuple        # (vertices, edges, faces, tetrahedra)

    @property
    def balanced(self):
        return self.even_edges == self.odd_edges


def parity_census(tri, phi):
    """Edge and tetrahedron counts by parity, plus the size of the
    subcomplex spanned by the even edges."""
    _require_one_vertex_closed(tri)
    sk = tri.skeleton
    types = classify_tetrahedra(tri, phi)
    n_quad = sum(1 for ty, _ in types if ty is TetType.QUAD)
    n_tri = sum(1 for ty, _ in types if ty is TetType.TRI)
    n_empty = sum(1 for ty, _ in types if ty is TetType.EMPTY)

    even = [ec for ec in sk.edge_classes if phi[ec.index] == 0]
    odd_count = sk.edge_count - len(even)
    hist = {}
    slots = 0
    for ec in even:
        hist[ec.degree] = hist.get(ec.degree, 0) + 1
        slots += ec.degree
    if slots != 2 * n_quad + 3 * n_tri + 6 * n_empty:
        raise AssertionError("even-edge slot count disagrees with tet types")

    even_faces = sum(
        1 for fc in sk.face_classes
        if all(phi[sk.edge_lookup[(fc.slots[0][0], EDGE_INDEX[(x, y)])][0]] == 0
               for i, x in enumerate(FACET_VERTICES[fc.slots[0][1]])
               for y in FACET_VERTICES[fc.slots[0][1]][i + 1:]))
    sub_vertices = 1 if even else 0
    census = ParityCensus(
        even_edges=len(even),
        odd_edges=odd_count,
        even_degree_histogram=dict(sorted(hist.items())),
        even_edge_slots=slots,
        quad_tets=n_quad,
        tri_tets=n_tri,
        empty_tets=n_empty,
        even_subcomplex=(sub_vertices, len(even), even_faces, n_empty),
    )
    return census
