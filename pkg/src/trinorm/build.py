"""Constructors for the parametric triangulation families.

Layered solid tori are built by walking the unique minimal path of the
fraction tree (node p/q has children p/(p+q) and q/(p+q)) from 1/2 up to
the target and layering one tetrahedron per step.  Lens spaces arise by
folding the two boundary faces together; the quaternionic loops and the
augmented (pinched prism) families are assembled from fixed gluing layouts
that are gated by the integer homology oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .perm import Perm4
from .triangulation import (EDGE_INDEX, EDGE_VERTICES, FACET_VERTICES,
                            TriBuilder, Triangulation, TriangulationError)
from . import homology


@dataclass(frozen=True)
class LstMeta:
    """Structure record for a layered solid torus.

    edge_weights maps every edge class to the geometric intersection number
    of its loop with the meridian disc; the boundary carries the triple
    {p, q, p+q}.  The univalent edge is the boundary edge of torus-degree
    one; base_edge is the first edge ever layered on (absent for a single
    tetrahedron).
    """
    p: int
    q: int
    edge_weights: dict
    boundary_edges: tuple
    univalent_edge: int
    base_edge: int | None
    layer_order: tuple = ()

    @property
    def boundary_triple(self):
        return tuple(sorted(self.edge_weights[e] for e in self.boundary_edges))


@dataclass(frozen=True)
class FoldRecord:
    fold_edge_weight: int
    lens_a: int
    lens_b: int


@dataclass(frozen=True)
class LGraphNode:
    p: int
    q: int
    depth: int
    e_bar: int
    o_bar: int

    @property
    def deficiency(self):
        # odd-minus-even convention; the balanced chain has deficiency 1
        return self.o_bar - self.e_bar


@dataclass(frozen=True)
class SeifertParams:
    family: str
    params: tuple
    slopes: tuple
    predicted_homology: homology.HomologyProfile


def _seed_lst():
    """The one-tetrahedron layered solid torus: facet 0 glued to facet 1 by
    the cyclic permutation.  Its three edges carry meridian weights 1
    (degree 3), 2 (degree 2) and 3 (the univalent edge)."""
    b = TriBuilder(1)
    b.join(0, 0, 0, Perm4((1, 2, 3, 0)))
    tri = b.freeze()
    sk = tri.skeleton
    weights = {}
    for ec in sk.edge_classes:
        weights[ec.index] = {3: 1, 2: 2, 1: 3}[ec.degree]
    boundary = tuple(ec.index for ec in sk.edge_classes)
    univalent = next(ec.index for ec in sk.edge_classes if ec.degree == 1)
    return tri, LstMeta(1, 2, weights, boundary, univalent, None, (0,))


def _boundary_face_slots(tri):
    slots = tri.boundary_facets()
    if len(slots) != 2:
        raise TriangulationError(
            f"expected a two-triangle boundary, found {len(slots)} free facets")
    return slots


def _boundary_edge_slot(tri, face_slot, edge_class):
    """Directed endpoints (head first in the class orientation) and the
    remaining in-face vertex of the given edge class inside a boundary face."""
    sk = tri.skeleton
    t, f = face_slot
    for ei in (EDGE_INDEX[(x, y)]
               for i, x in enumerate(FACET_VERTICES[f])
               for y in FACET_VERTICES[f][i + 1:]):
        idx, sign = sk.edge_lookup[(t, ei)]
        if idx == edge_class:
            a, b = EDGE_VERTICES[ei]
            if sign < 0:
                a, b = b, a
            c = next(v for v in FACET_VERTICES[f] if v not in (a, b))
            return a, b, c
    raise TriangulationError("edge class does not lie in that boundary face")


def check_torus_boundary(tri):
    """The boundary must be a one-vertex torus: two faces sharing three
    edge classes, each class appearing once in each face."""
    (t1, f1), (t2, f2) = _boundary_face_slots(tri)
    sk = tri.skeleton

    def face_edge_classes(t, f):
        return sorted(sk.edge_lookup[(t, ei)][0] for ei in
                      (EDGE_INDEX[(x, y)]
                       for i, x in enumerate(FACET_VERTICES[f])
                       for y in FACET_VERTICES[f][i + 1:]))

    c1 = face_edge_classes(t1, f1)
    c2 = face_edge_classes(t2, f2)
    if c1 != c2 or len(set(c1)) != 3:
        raise TriangulationError("boundary is not a one-vertex torus")
    return (t1, f1), (t2, f2), tuple(c1)


def layer_on_edge(tri, edge_class, meta=None):
    """Attach one tetrahedron across the two boundary faces, hinged on the
    given boundary edge.

    The new tetrahedron glues its facets 2 and 3 over the old boundary with
    the layered edge landing on its edge (0,1); facets 0 and 1 become the
    new boundary and edge (2,3) is the fresh boundary edge.  Orientation of
    the hinge is matched on both sides, which pins the gluing completely.
    """
    slot1, slot2, bclasses = check_torus_boundary(tri)
    if edge_class not in bclasses:
        raise TriangulationError(f"edge {edge_class} is not a boundary edge")
    a1, b1, c1 = _boundary_edge_slot(tri, slot1, edge_class)
    a2, b2, c2 = _boundary_edge_slot(tri, slot2, edge_class)
    (t1, f1), (t2, f2) = slot1, slot2

    b = TriBuilder(tri.tet_count)
    for t in range(tri.tet_count):
        for f in range(4):
            g = tri.gluing(t, f)
            if g is not None and (g[0], g[1][f]) >= (t, f):
                b.join(t, f, g[0], g[1])
    new = b.add_tet()
    b.join(t1, f1, new, Perm4.from_map({a1: 0, b1: 1, c1: 3, f1: 2}))
    b.join(t2, f2, new, Perm4.from_map({a2: 0, b2: 1, c2: 2, f2: 3}))
    out = b.freeze()

    new_meta = None
    if meta is not None:
        new_meta = _relayered_meta(tri, out, meta, edge_class, new)
    return out, new_meta


def _transfer_edge_classes(old, new):
    """Map edge classes across a construction step that kept every old
    tetrahedron at the same index."""
    mapping = {}
    for ec in old.skeleton.edge_classes:
        t, ei = ec.slots[0]
        mapping[ec.index] = new.skeleton.edge_lookup[(t, ei)][0]
    return mapping


def _relayered_meta(old, out, meta, layered_class, new_tet):
    cmap = _transfer_edge_classes(old, out)
    weights = {cmap[e]: w for e, w in meta.edge_weights.items()}
    kept = [cmap[e] for e in meta.boundary_edges if e != layered_class]
    w_removed = meta.edge_weights[layered_class]
    w1, w2 = (meta.edge_weights[e] for e in meta.boundary_edges
              if e != layered_class)
    new_weight = abs(w1 - w2) if w_removed == w1 + w2 else w1 + w2
    new_class = out.skeleton.edge_lookup[(new_tet, EDGE_INDEX[(2, 3)])][0]
    weights[new_class] = new_weight
    boundary = tuple(kept + [new_class])
    triple = sorted(weights[e] for e in boundary)
    p, q = triple[0], triple[1]
    base = cmap[meta.base_edge] if meta.base_edge is not None \
        else cmap[layered_class]
    return LstMeta(p, q, weights, boundary, new_class, base,
                   meta.layer_order + (new_tet,))


def minimal_path(p, q):
    """Fraction-tree nodes from (1,2) to (p,q) along the unique minimal
    path, found by running the parent rule (a,b) -> sorted(a, b-a)."""
    path = [(p, q)]
    a, b = p, q
    while (a, b) != (1, 2):
        if a < 1 or b <= a:
            raise TriangulationError(f"no layering path to {p}/{q}")
        a, b = tuple(sorted((a, b - a)))
        path.append((a, b))
    path.reverse()
    return path


def lst(p, q):
    """Layered solid torus with boundary triple {p, q, p+q}."""
    p, q = int(p), int(q)
    if p > q:
        p, q = q, p
    if p < 1:
        raise TriangulationError("weights must be positive")
    if (p, q) == (1, 1):
        raise TriangulationError(
            "the Moebius triple {1,1,2} is a degenerate solid torus")
    if math.gcd(p, q) != 1:
        raise TriangulationError(f"weights {p}, {q} are not coprime")
    tri, meta = _seed_lst()
    path = minimal_path(p, q)
    for (pa, pb), (ca, cb) in zip(path, path[1:]):
        # moving to the child replaces one of pa, pb by the new sum; the
        # replaced weight is the edge layered on
        gone = pa if pa not in (ca, cb) else pb
        edge = next(e for e in meta.boundary_edges
                    if meta.edge_weights[e] == gone)
        tri, meta = layer_on_edge(tri, edge, meta)
    return tri, meta


def fold_along_edge(tri, edge_class, meta=None):
    """Close the book: identify the two boundary faces by the map fixing
    the given boundary edge pointwise.  The other two boundary edges merge
    into a single class."""
    slot1, slot2, bclasses = check_torus_boundary(tri)
    if edge_class not in bclasses:
        raise TriangulationError(f"edge {edge_class} is not a boundary edge")
    a1, b1, c1 = _boundary_edge_slot(tri, slot1, edge_class)
    a2, b2, c2 = _boundary_edge_slot(tri, slot2, edge_class)
    (t1, f1), (t2, f2) = slot1, slot2
    b = TriBuilder(tri.tet_count)
    for t in range(tri.tet_count):
        for f in range(4):
            g = tri.gluing(t, f)
            if g is not None and (g[0], g[1][f]) >= (t, f):
                b.join(t, f, g[0], g[1])
    b.join(t1, f1, t2, Perm4.from_map({a1: a2, b1: b2, c1: c2, f1: f2}))
    out = b.freeze()
    record = None
    if meta is not None:
        w = meta.edge_weights[edge_class]
        p, q = meta.p, meta.q
        if w == p:
            record = FoldRecord(w, 2 * q + p, q)
        elif w == q:
            record = FoldRecord(w, 2 * p + q, p)
        else:
            record = FoldRecord(w, abs(p - q), p)
    return out, record


def lens_space(p, q, fold_weight=None):
    """Layered lens space obtained by folding lst(p, q).  fold_weight picks
    the boundary edge (one of p, q, p+q); the default folds along the even
    boundary edge when p or q is even, else along p+q."""
    tri, meta = lst(p, q)
    if fold_weight is None:
        evens = [w for w in (meta.p, meta.q) if w % 2 == 0]
        fold_weight = evens[0] if evens else meta.p + meta.q
    edge = next(e for e in meta.boundary_edges
                if meta.edge_weights[e] == fold_weight)
    folded, record = fold_along_edge(tri, edge, meta)
    return folded, meta, record


def meridian_weight_oracle(tri):
    """Independent recomputation of layered-solid-torus edge weights: the
    absolute H_1 class of each edge in H_1(solid torus) = Z, via Smith
    normal form with transform."""
    coords = homology.h1_coordinates(tri)
    return {i: abs(c) for i, c in enumerate(coords)}


# ----- L-graph --------------------------------------------------------------


def lst_weight_multiset(p, q):
    """Meridian weights of all depth+2 edges of lst(p,q), by replaying the
    boundary triples along the minimal path (no triangulation built)."""
    path = minimal_path(min(p, q), max(p, q))
    weights = [1, 2, 3]
    for ca, cb in path[1:]:
        weights.append(ca + cb)
    return weights


def lgraph(depth_limit):
    """All fraction-tree nodes to the given depth with even/odd edge-weight
    counts of the corresponding layered solid torus."""
    if depth_limit < 1:
        raise TriangulationError("depth limit must be at least 1")
    nodes = []
    frontier = [(1, 2)]
    depth = 1
    while depth <= depth_limit:
        nxt = []
        for p, q in frontier:
            ws = lst_weight_multiset(p, q)
            e_bar = sum(1 for w in ws if w % 2 == 0)
            o_bar = len(ws) - e_bar
            assert e_bar + o_bar == depth + 2
            nodes.append(LGraphNode(p, q, depth, e_bar, o_bar))
            nxt.append((p, p + q))
            nxt.append((q, p + q))
        frontier = nxt
        depth += 1
    return nodes


def enumerate_minimal_lens_families(depth_limit):
    """Fold every fraction-tree node with an even weight along its even
    boundary edge and keep the folds whose parity census matches one of the
    three minimal-lens patterns: balanced, or all even edges of degree four
    except (one of degree 3 and one of degree 5) or (two of degree 3 and
    one of degree 6).

    Each returned entry is re-verified on the actual folded triangulation:
    the census is recomputed from the cocycle found by the colouring
    module, not from the weight replay.
    """
    from . import cocycle as _cocycle

    if depth_limit < 3:
        raise TriangulationError("enumeration needs depth at least 3")
    results = []
    for node in lgraph(depth_limit):
        evens = [w for w in (node.p, node.q) if w % 2 == 0]
        if not evens:
            continue
        tri, meta, record = lens_space(node.p, node.q, fold_weight=evens[0])
        classes = _cocycle.all_nonzero_classes(tri)
        if len(classes) != 1:
            raise AssertionError("even lens space without a unique class")
        census = _cocycle.parity_census(tri, classes[0])
        hist = census.even_degree_histogram
        others = {d: c for d, c in hist.items() if d != 4}
        if census.balanced and others == {3: 2}:
            classification = "balanced"
        elif others == {3: 1, 5: 1}:
            classification = "e3=1,e5=1"
        elif others == {3: 2, 6: 1}:
            classification = "e3=2,e6=1"
        else:
            continue
        if hist.get(3, 0) == 2 and hist.get(5, 0) == 2:
            raise AssertionError("census shows two degree-3 and two degree-5 "
                                 "even edges, which should be impossible")
        results.append((node, record, classification))
    return results


# ----- layered loops ---------------------------------------------------------

# Chain joint: tetrahedron i is layered across two faces of tetrahedron
# i+1, facet 0 onto facet 2 and facet 1 onto facet 3.  The twisted closure
# crosses the facets (0 onto 3, 1 onto 2).  Both layouts are pinned by the
# homology oracle: the twisted loop must produce Z/2+Z/2 for even length
# and Z/4 for odd, with one vertex and n+1 edges.
_CHAIN_A = Perm4((2, 1, 0, 3))
_CHAIN_B = Perm4((0, 3, 2, 1))
_TWIST_A = Perm4((3, 0, 1, 2))
_TWIST_B = Perm4((1, 2, 3, 0))


def layered_loop(n, twisted):
    """Layered chain of n tetrahedra closed into a loop, with or without a
    twist.  Twisted loops triangulate the generalised quaternionic spaces;
    the twisted loop of even length 2k is the minimal triangulation used by
    the Q family."""
    n = int(n)
    if n < 3:
        raise TriangulationError("layered loops need at least 3 tetrahedra")
    b = TriBuilder(n)
    for i in range(n - 1):
        b.join(i, 0, i + 1, _CHAIN_A)
        b.join(i, 1, i + 1, _CHAIN_B)
    if twisted:
        b.join(n - 1, 0, 0, _TWIST_A)
        b.join(n - 1, 1, 0, _TWIST_B)
    else:
        b.join(n - 1, 0, 0, _CHAIN_A)
        b.join(n - 1, 1, 0, _CHAIN_B)
    return b.freeze()


# ----- augmented solid tori ---------------------------------------------------


PRISM_ANNULI = (
    # (triangle1 slot, triangle2 slot, horizontal, diagonal, verticals)
    # as (tet, facet) and per-triangle edge vertex pairs
    {"tri1": (1, 3), "tri2": (2, 3),
     "edges1": {"h": (0, 1), "d": (0, 2), "v": (1, 2)},
     "edges2": {"h": (1, 2), "d": (0, 2), "v": (0, 1)}},
    {"tri1": (0, 0), "tri2": (1, 0),
     "edges1": {"h": (1, 2), "d": (1, 3), "v": (2, 3)},
     "edges2": {"h": (2, 3), "d": (1, 3), "v": (1, 2)}},
    {"tri1": (0, 1), "tri2": (2, 2),
     "edges1": {"h": (0, 2), "d": (0, 3), "v": (2, 3)},
     "edges2": {"h": (1, 3), "d": (0, 3), "v": (0, 1)}},
)


def _prism_builder():
    """Three-tetrahedron triangular prism with its top triangle glued to
    the bottom one; a solid torus with three vertices, each of corner
    degree four, and three two-triangle boundary annuli."""
    b = TriBuilder(3)
    b.join(0, 2, 1, Perm4((0, 1, 2, 3)))
    b.join(1, 1, 2, Perm4((0, 1, 2, 3)))
    b.join(2, 0, 0, Perm4((3, 0, 1, 2)))
    return b


@dataclass(frozen=True)
class AnnulusFilling:
    """How one boundary annulus of the pinched prism gets closed off.

    kind 'lst': attach a layered solid torus, gluing its boundary edges of
    the given weights to the annulus' horizontal, diagonal and vertical
    edges.  kind 'fold': identify the annulus' two triangles directly,
    matching the named edges across ('straight' keeps horizontal on
    horizontal, 'cross' swaps horizontal and diagonal).
    """
    kind: str
    w_h: int = 0
    w_d: int = 0
    w_v: int = 0
    swap: bool = False
    style: str = "straight"


def _triangle_map(edges_from, edges_to):
    """Vertex map of a triangle gluing given the three edge correspondences
    {role: (vertex pair)} on both sides."""
    mapping = {}
    roles = list(edges_from)
    for ra in roles:
        for rb in roles:
            if ra == rb:
                continue
            shared_from = set(edges_from[ra]) & set(edges_from[rb])
            shared_to = set(edges_to[ra]) & set(edges_to[rb])
            if len(shared_from) == 1 and len(shared_to) == 1:
                mapping[shared_from.pop()] = shared_to.pop()
    return mapping


def augmented_solid_torus(fillings):
    """Pinched-prism solid torus with its three annuli closed by the given
    fillings.  Every layered-solid-torus attachment pinches the two
    vertical edges of its annulus onto a single edge, which is what turns
    each annulus into a one-vertex torus."""
    if len(fillings) != 3:
        raise TriangulationError("exactly three annulus fillings required")
    b = _prism_builder()
    pending = []
    for annulus, filling in zip(PRISM_ANNULI, fillings):
        t1, f1 = annulus["tri1"]
        t2, f2 = annulus["tri2"]
        if filling.kind == "fold":
            e1, e2 = dict(annulus["edges1"]), dict(annulus["edges2"])
            if filling.style == "cross":
                e2 = {"h": e2["d"], "d": e2["h"], "v": e2["v"]}
            vmap = _triangle_map(e1, e2)
            vmap[f1] = f2
            b.join(t1, f1, t2, Perm4.from_map(vmap))
        elif filling.kind == "lst":
            pending.append((annulus, filling))
        else:
            raise TriangulationError(f"unknown filling kind {filling.kind!r}")

    prism_tets = 3
    tri = b.freeze() if not pending else None
    # attach solid tori one at a time, rebuilding the gluing table
    rows = [list(r) for r in b.rows]
    for annulus, filling in pending:
        triple = sorted((filling.w_h, filling.w_d, filling.w_v))
        if triple[0] + triple[1] != triple[2]:
            raise TriangulationError(
                f"weights {triple} do not form a solid torus boundary triple")
        if math.gcd(triple[0], triple[1]) != 1:
            raise TriangulationError(f"weights {triple} are not coprime")
        sub, meta = lst(triple[0], triple[1])
        offset = len(rows)
        for t in range(sub.tet_count):
            row = []
            for f in range(4):
                g = sub.gluing(t, f)
                row.append(None if g is None else (g[0] + offset, g[1]))
            rows.append(row)
        (lt1, lf1), (lt2, lf2) = sub.boundary_facets()
        sk = sub.skeleton
        by_weight = {}
        for e in meta.boundary_edges:
            by_weight[meta.edge_weights[e]] = e
        want = {"h": by_weight[filling.w_h], "d": by_weight[filling.w_d],
                "v": by_weight[filling.w_v]}

        def face_edges(t, f):
            out = {}
            verts = FACET_VERTICES[f]
            for i, x in enumerate(verts):
                for y in verts[i + 1:]:
                    cls = sk.edge_lookup[(t, EDGE_INDEX[(x, y)])][0]
                    for role, ecls in want.items():
                        if cls == ecls:
                            out[role] = (x, y)
            return out

        lst_faces = [(lt1, lf1, face_edges(lt1, lf1)),
                     (lt2, lf2, face_edges(lt2, lf2))]
        if filling.swap:
            lst_faces.reverse()
        for (lt, lf, edges_from), key in zip(lst_faces, ("1", "2")):
            t_p, f_p = annulus["tri" + key]
            vmap = _triangle_map(edges_from, annulus["edges" + key])
            vmap[lf] = f_p
            perm = Perm4.from_map(vmap)
            rows[lt + offset][lf] = (t_p, perm)
            rows[t_p][f_p] = (lt + offset, perm.inverse())
    return Triangulation(rows)


# ----- the named families -----------------------------------------------------


def augmented_quaternionic(k):
    """Augmented-solid-torus triangulation of the generalised quaternionic
    space of even order parameter k: two crossed folds plus the solid torus
    with boundary triple {1, k-1, k}.  One tetrahedron larger than the
    twisted layered loop of the same space."""
    if k < 4 or k % 2:
        raise TriangulationError("needs even k >= 4")
    tri = augmented_solid_torus((
        AnnulusFilling("fold", style="cross"),
        AnnulusFilling("fold", style="cross"),
        AnnulusFilling("lst", w_h=k - 1, w_d=1, w_v=k),
    ))
    predicted = homology.seifert_homology(((1, -1), (2, 1), (2, 1), (k, 1)))
    actual = homology.first_homology(tri)
    if (actual.invariant_factors, actual.betti) != \
            (predicted.invariant_factors, predicted.betti):
        raise AssertionError("augmented quaternionic homology mismatch")
    return tri


def seifert_family(tag, k, m=None, n=None):
    """Build one of the four minimal families and its Seifert parameters.

    M and M' are augmented solid tori, P is the prism family (two folded
    annuli plus one long solid torus) and Q is the twisted layered loop.
    The annulus weight assignments below were fixed by requiring the built
    complex to reproduce the Seifert-presentation homology over a parameter
    grid; that oracle runs again on every call.
    """
    tag = tag.upper().replace("'", "PRIME").replace("\u2032", "PRIME")
    if tag == "M":
        if not all(x and x >= 1 for x in (k, m, n)):
            raise TriangulationError("family M needs positive k, m, n")
        tri = augmented_solid_torus((
            AnnulusFilling("lst", w_h=2 * k + 2, w_d=1, w_v=2 * k + 1),
            AnnulusFilling("lst", w_h=2 * m + 2, w_d=1, w_v=2 * m + 1),
            AnnulusFilling("lst", w_h=2 * n, w_d=1, w_v=2 * n + 1),
        ))
        slopes = ((1, 1), (2 * k + 1, 1), (2 * m + 1, 1), (2 * n + 1, 1))
        params = (k, m, n)
    elif tag == "MPRIME":
        if not all(x and x >= 1 for x in (k, m, n)):
            raise TriangulationError("family M' needs positive k, m, n")
        tri = augmented_solid_torus((
            AnnulusFilling("lst", w_h=1, w_d=2 * k + 1, w_v=2 * k + 2),
            AnnulusFilling("lst", w_h=1, w_d=2 * m + 1, w_v=2 * m + 2),
            AnnulusFilling("lst", w_h=2 * n + 1, w_d=1, w_v=2 * n + 2),
        ))
        slopes = ((1, -1), (2 * k + 2, 1), (2 * m + 2, 1), (2 * n + 2, 1))
        params = (k, m, n)
    elif tag == "P":
        if not k or k < 1:
            raise TriangulationError("family P needs positive k")
        tri = augmented_solid_torus((
            AnnulusFilling("fold", style="cross"),
            AnnulusFilling("fold", style="cross"),
            AnnulusFilling("lst", w_h=3, w_d=6 * k + 1, w_v=6 * k + 4),
        ))
        slopes = ((1, -1), (2, 1), (2, 1), (6 * k + 4, 6 * k + 1))
        params = (k,)
    elif tag == "Q":
        if not k or k < 4 or k % 2:
            raise TriangulationError("family Q needs even k >= 4")
        tri = layered_loop(k, twisted=True)
        slopes = ((1, -1), (2, 1), (2, 1), (k, 1))
        params = (k,)
    else:
        raise TriangulationError(f"unknown family tag {tag!r}")
    predicted = homology.seifert_homology(slopes)
    actual = homology.first_homology(tri)
    if (actual.invariant_factors, actual.betti) != \
            (predicted.invariant_factors, predicted.betti):
        raise AssertionError(
            f"family {tag}{params}: built homology {actual} differs from "
            f"Seifert prediction {predicted}")
    return tri, SeifertParams(tag, params, slopes, predicted)
