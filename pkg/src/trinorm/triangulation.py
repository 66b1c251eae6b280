"""Pseudo-simplicial 3-manifold triangulations as face-gluing data.

A triangulation is a set of abstract tetrahedra together with gluings of
their facets.  Facet i of a tetrahedron is the triangle opposite vertex i,
and a gluing stores the full vertex permutation carrying one tetrahedron's
labels to the other's; the facet correspondence is derived from it.
Self-identifications of edges and vertices arise freely in the quotient,
which is what makes one-vertex triangulations of closed manifolds possible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .perm import Perm4, ALL_PERMS

# Fixed tables for the sub-simplices of a tetrahedron.
#
# Edges are indexed 0..5 in lexicographic order of their vertex pairs.
# OPPOSITE_EDGE pairs each edge with the one it is disjoint from, and
# FACET_EDGES lists the three edges lying inside each facet triangle.
EDGE_VERTICES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {pair: i for i, pair in enumerate(EDGE_VERTICES)}
for _a, _b in list(EDGE_INDEX):
    EDGE_INDEX[(_b, _a)] = EDGE_INDEX[(_a, _b)]
OPPOSITE_EDGE = (5, 4, 3, 2, 1, 0)
FACET_EDGES = ((3, 4, 5), (1, 2, 5), (0, 2, 4), (0, 1, 3))
FACET_VERTICES = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))


class TriangulationError(ValueError):
    """Invalid gluing data or an operation applied outside its domain."""


class ParseError(TriangulationError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class _UnionFind:
    """Union-find with a Z/2 weight on each node, used to track whether a
    slot's orientation agrees with its class representative."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.parity = [0] * n
        self.conflict = set()

    def find(self, x):
        path = []
        root = x
        while self.parent[root] != root:
            path.append(root)
            root = self.parent[root]
        # path compression, rewriting each node's parity relative to root
        acc = 0
        for node in reversed(path):
            acc ^= self.parity[node]
            self.parent[node] = root
            self.parity[node] = acc
        return root, (self.parity[x] if path else 0)

    def union(self, x, y, rel):
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            if (px ^ py) != rel:
                self.conflict.add(rx)
            return
        self.parent[ry] = rx
        self.parity[ry] = px ^ rel ^ py
        if ry in self.conflict:
            self.conflict.discard(ry)
            self.conflict.add(rx)


@dataclass(frozen=True)
class EdgeClass:
    index: int
    slots: tuple          # ((tet, edge_index), ...) in discovery order
    signs: tuple          # +1 if the slot's ascending orientation matches the class
    boundary: bool
    valid: bool           # False when identified with itself reversed

    @property
    def degree(self):
        return len(self.slots)


@dataclass(frozen=True)
class FaceClass:
    index: int
    slots: tuple          # ((tet, facet), ...), one or two entries
    signs: tuple
    boundary: bool
    self_glued: bool      # facet glued to itself by a non-trivial map


@dataclass(frozen=True)
class Skeleton:
    vertex_classes: tuple
    edge_classes: tuple
    face_classes: tuple
    vertex_lookup: dict = field(repr=False)
    edge_lookup: dict = field(repr=False)
    face_lookup: dict = field(repr=False)

    @property
    def vertex_count(self):
        return len(self.vertex_classes)

    @property
    def edge_count(self):
        return len(self.edge_classes)

    @property
    def face_count(self):
        return len(self.face_classes)

    def degrees(self):
        return tuple(e.degree for e in self.edge_classes)

    def degree_histogram(self):
        hist = {}
        for e in self.edge_classes:
            hist[e.degree] = hist.get(e.degree, 0) + 1
        return dict(sorted(hist.items()))

    def edge_class_of(self, tet, a, b):
        """Class index and orientation sign of edge {a,b} of the given
        tetrahedron; sign +1 means min(a,b)->max(a,b) is the class direction."""
        return self.edge_lookup[(tet, EDGE_INDEX[(a, b)])]


def _face_sign(perm, facet):
    """Orientation sign of the triangle map induced by a facet gluing: the
    parity of the permutation taking the ascending vertex triple of the
    source facet to the ascending triple of the target facet."""
    src = FACET_VERTICES[facet]
    img = [perm[v] for v in src]
    s = 1
    for i in range(3):
        for j in range(i + 1, 3):
            if img[i] > img[j]:
                s = -s
    return s


class Triangulation:
    """Immutable face-gluing table.

    gluings[t][f] is either None (boundary facet) or a pair (u, perm) where
    perm is the Perm4 carrying vertex labels of tetrahedron t to labels of
    u, and facet f of t is glued to facet perm[f] of u.
    """

    def __init__(self, gluings):
        table = tuple(tuple(row) for row in gluings)
        n = len(table)
        for t, row in enumerate(table):
            if len(row) != 4:
                raise TriangulationError(f"tetrahedron {t} needs 4 facet entries")
            for f, g in enumerate(row):
                if g is None:
                    continue
                u, perm = g
                if not 0 <= u < n:
                    raise TriangulationError(
                        f"dangling tetrahedron index {u} at tet {t} facet {f}")
                if u == t and perm[f] == f and perm.is_identity():
                    raise TriangulationError(
                        f"facet {f} of tet {t} glued to itself pointwise")
                back = table[u][perm[f]]
                if back is None or back[0] != t or back[1] != perm.inverse():
                    raise TriangulationError(
                        f"non-involutive gluing at tet {t} facet {f}")
        self._gluings = table

    @property
    def tet_count(self):
        return len(self._gluings)

    @property
    def gluings(self):
        return self._gluings

    def gluing(self, tet, facet):
        return self._gluings[tet][facet]

    def boundary_facets(self):
        return tuple((t, f) for t, row in enumerate(self._gluings)
                     for f, g in enumerate(row) if g is None)

    @property
    def is_closed(self):
        return not self.boundary_facets()

    def __eq__(self, other):
        return (isinstance(other, Triangulation)
                and self._gluings == other._gluings)

    def __hash__(self):
        return hash(self._gluings)

    def __repr__(self):
        return f"<Triangulation with {self.tet_count} tetrahedra>"

    # ----- skeleton ------------------------------------------------------

    @cached_property
    def skeleton(self):
        n = self.tet_count
        vert_uf = _UnionFind(4 * n)
        edge_uf = _UnionFind(6 * n)
        face_uf = _UnionFind(4 * n)

        for t in range(n):
            for f in range(4):
                g = self._gluings[t][f]
                if g is None:
                    continue
                u, perm = g
                face_uf.union(4 * t + f, 4 * u + perm[f],
                              0 if _face_sign(perm, f) > 0 else 1)
                for v in FACET_VERTICES[f]:
                    vert_uf.union(4 * t + v, 4 * u + perm[v], 0)
                for ei in FACET_EDGES[f]:
                    a, b = EDGE_VERTICES[ei]
                    ia, ib = perm[a], perm[b]
                    flip = 1 if ia > ib else 0
                    edge_uf.union(6 * t + ei, 6 * u + EDGE_INDEX[(ia, ib)], flip)

        def collect(uf, total, decode):
            roots = {}
            classes = []
            lookup = {}
            for slot in range(total):
                root, parity = uf.find(slot)
                if root not in roots:
                    roots[root] = len(classes)
                    classes.append([])
                idx = roots[root]
                classes[idx].append((decode(slot), parity))
                lookup[decode(slot)] = (idx, 1 if parity == 0 else -1)
            return roots, classes, lookup

        vroots, vclasses, vlookup = collect(vert_uf, 4 * n, lambda s: (s // 4, s % 4))
        eroots, eclasses, elookup = collect(edge_uf, 6 * n, lambda s: (s // 6, s % 6))
        froots, fclasses, flookup = collect(face_uf, 4 * n, lambda s: (s // 4, s % 4))

        bad_edges = {eroots[r] for r in edge_uf.conflict}

        boundary_faces = set()
        self_glued = set()
        for t in range(n):
            for f in range(4):
                g = self._gluings[t][f]
                idx = flookup[(t, f)][0]
                if g is None:
                    boundary_faces.add(idx)
                elif g[0] == t and g[1][f] == f:
                    self_glued.add(idx)

        edge_classes = []
        for i, members in enumerate(eclasses):
            slots = tuple(m[0] for m in members)
            signs = tuple(1 if m[1] == 0 else -1 for m in members)
            on_boundary = False
            for (t, ei), _ in members:
                a, b = EDGE_VERTICES[ei]
                for f in range(4):
                    if f != a and f != b and self._gluings[t][f] is None:
                        on_boundary = True
            edge_classes.append(EdgeClass(i, slots, signs, on_boundary,
                                          i not in bad_edges))

        face_classes = []
        for i, members in enumerate(fclasses):
            slots = tuple(m[0] for m in members)
            signs = tuple(1 if m[1] == 0 else -1 for m in members)
            face_classes.append(FaceClass(i, slots, signs,
                                          i in boundary_faces, i in self_glued))

        vertex_classes = tuple(tuple(m[0] for m in members) for members in vclasses)
        return Skeleton(vertex_classes, tuple(edge_classes), tuple(face_classes),
                        vlookup, elookup, flookup)

    @property
    def is_valid(self):
        return all(e.valid for e in self.skeleton.edge_classes)

    # ----- global structure ----------------------------------------------

    @cached_property
    def is_connected(self):
        n = self.tet_count
        if n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for g in self._gluings[t]:
                if g is not None and g[0] not in seen:
                    seen.add(g[0])
                    stack.append(g[0])
        return len(seen) == n

    @cached_property
    def is_orientable(self):
        """True iff the tetrahedra admit orientations compatible with every
        gluing.  Crossing a gluing with odd permutation keeps the
        orientation sign; an even permutation flips it."""
        n = self.tet_count
        sign = [0] * n
        for start in range(n):
            if sign[start]:
                continue
            sign[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for g in self._gluings[t]:
                    if g is None:
                        continue
                    u, perm = g
                    want = sign[t] * (-perm.sign())
                    if sign[u] == 0:
                        sign[u] = want
                        stack.append(u)
                    elif sign[u] != want:
                        return False
        return True

    # ----- edge links -----------------------------------------------------

    def edge_link(self, edge_class):
        """Walk around an edge class, returning the cyclic list of wedges
        (tet, head, tail, f_in, f_out) in traversal order.

        head/tail are the tetrahedron labels of the edge's endpoints taken
        in the class direction; f_in and f_out are the two remaining labels,
        f_in being the facet shared with the previous wedge.  Only closed
        edges (no boundary face incident) are supported.
        """
        sk = self.skeleton
        ec = sk.edge_classes[edge_class] if isinstance(edge_class, int) else edge_class
        if ec.boundary:
            raise TriangulationError("edge link walk requires an interior edge")
        (t0, ei0) = ec.slots[0]
        a, b = EDGE_VERTICES[ei0]
        if ec.signs[0] < 0:
            a, b = b, a
        others = [v for v in range(4) if v not in (a, b)]
        f_in = others[0]
        wedges = []
        t, head, tail, fin = t0, a, b, f_in
        for _ in range(ec.degree):
            fout = next(v for v in range(4) if v not in (head, tail, fin))
            wedges.append((t, head, tail, fin, fout))
            g = self._gluings[t][fout]
            if g is None:
                raise TriangulationError("edge link walk hit a boundary facet")
            u, perm = g
            t, head, tail, fin = u, perm[head], perm[tail], perm[fout]
        if (t, head, tail, fin) != (t0, a, b, f_in):
            raise TriangulationError("edge link walk failed to close up")
        return wedges

    # ----- canonical form and isomorphism ---------------------------------

    def _relabelled_table(self, start, start_perm):
        """Gluing table after the canonical BFS relabelling that assigns the
        given start tetrahedron label 0 with the given vertex relabelling."""
        n = self.tet_count
        label = [None] * n          # old tet -> new tet
        relab = [None] * n          # old tet -> Perm4 old labels -> new labels
        label[start] = 0
        relab[start] = start_perm
        order = [start]
        next_label = 1
        i = 0
        while i < len(order):
            t = order[i]
            rho = relab[t]
            rho_inv = rho.inverse()
            for new_f in range(4):
                old_f = rho_inv[new_f]
                g = self._gluings[t][old_f]
                if g is None:
                    continue
                u, perm = g
                if label[u] is None:
                    label[u] = next_label
                    next_label += 1
                    relab[u] = rho * perm.inverse()
                    order.append(u)
            i += 1
        if len(order) != n:
            raise TriangulationError("canonical form requires a connected triangulation")
        table = []
        for t in order:
            rho = relab[t]
            rho_inv = rho.inverse()
            row = []
            for new_f in range(4):
                g = self._gluings[t][rho_inv[new_f]]
                if g is None:
                    row.append(None)
                else:
                    u, perm = g
                    row.append((label[u], (relab[u] * perm * rho_inv).images))
            table.append(tuple(row))
        return tuple(table)

    @staticmethod
    def _table_key(table):
        return tuple(tuple((-1, (0, 1, 2, 3)) if g is None else g for g in row)
                     for row in table)

    @cached_property
    def canonical_table(self):
        best = None
        for start in range(self.tet_count):
            for perm in ALL_PERMS:
                table = self._relabelled_table(start, perm)
                key = self._table_key(table)
                if best is None or key < best[0]:
                    best = (key, table)
        return best[1]

    def canonical(self):
        return Triangulation(
            tuple(tuple(None if g is None else (g[0], Perm4(g[1])) for g in row)
                  for row in self.canonical_table))

    def isomorphic(self, other):
        if self.tet_count != other.tet_count:
            return False
        return self.canonical_table == other.canonical_table


class TriBuilder:
    """Mutable assembler used by the construction routines."""

    def __init__(self, tet_count=0):
        self.rows = [[None] * 4 for _ in range(tet_count)]

    def add_tet(self):
        self.rows.append([None] * 4)
        return len(self.rows) - 1

    def join(self, t, f, u, perm):
        """Glue facet f of t to facet perm[f] of u, recording both sides."""
        if self.rows[t][f] is not None or self.rows[u][perm[f]] is not None:
            raise TriangulationError(
                f"facet already glued: tet {t} facet {f} -> tet {u}")
        self.rows[t][f] = (u, perm)
        back = (t, perm.inverse())
        if (u, perm[f]) == (t, f):
            # self-paired facet: the two directions coincide
            if perm != perm.inverse():
                raise TriangulationError("self-gluing must be an involution")
        else:
            self.rows[u][perm[f]] = back

    def freeze(self):
        return Triangulation(self.rows)


# ----- text format ---------------------------------------------------------


def parse(text):
    """Parse the .tri interchange format.

    Format: a line "tri <n>", then for each tetrahedron a line
    "tet <i>: g0 g1 g2 g3" where each gj is "-" for a boundary facet or
    "<t>:<abcd>" giving the target tetrahedron and the images of vertices
    0123.  '%' starts a comment.
    """
    tet_count = None
    entries = {}
    entry_lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith("tri"):
            if tet_count is not None:
                raise ParseError("duplicate 'tri' header", lineno)
            try:
                tet_count = int(line.split()[1])
            except (IndexError, ValueError):
                raise ParseError("malformed 'tri' header", lineno) from None
            if tet_count < 0:
                raise ParseError("negative tetrahedron count", lineno)
            continue
        if not line.startswith("tet"):
            raise ParseError(f"unrecognised line {line!r}", lineno)
        if tet_count is None:
            raise ParseError("'tet' line before 'tri' header", lineno)
        head, _, rest = line.partition(":")
        try:
            index = int(head.split()[1])
        except (IndexError, ValueError):
            raise ParseError("malformed 'tet' line", lineno) from None
        if not 0 <= index < tet_count:
            raise ParseError(f"tetrahedron index {index} out of range", lineno)
        if index in entries:
            raise ParseError(f"duplicate entry for tetrahedron {index}", lineno)
        tokens = rest.split()
        if len(tokens) != 4:
            raise ParseError("expected 4 facet gluings", lineno)
        row = []
        for tok in tokens:
            if tok == "-":
                row.append(None)
                continue
            target, _, permtext = tok.partition(":")
            try:
                t = int(target)
            except ValueError:
                raise ParseError(f"malformed gluing {tok!r}", lineno) from None
            if not 0 <= t < tet_count:
                raise ParseError(f"dangling tetrahedron index {t}", lineno)
            try:
                perm = Perm4.from_compact(permtext)
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            row.append((t, perm))
        entries[index] = row
        entry_lines[index] = lineno
    if tet_count is None:
        raise ParseError("missing 'tri' header")
    missing = [i for i in range(tet_count) if i not in entries]
    if missing:
        raise ParseError(f"missing entry for tetrahedron {missing[0]}")
    # check involutivity here so failures carry the offending line number
    for t in range(tet_count):
        for f, g in enumerate(entries[t]):
            if g is None:
                continue
            u, perm = g
            if u == t and perm[f] == f and perm.is_identity():
                raise ParseError(
                    f"facet {f} of tet {t} glued to itself pointwise",
                    entry_lines[t])
            back = entries[u][perm[f]]
            if back is None or back[0] != t or back[1] != perm.inverse():
                raise ParseError(
                    f"non-involutive gluing at tet {t} facet {f}",
                    entry_lines[t])
    return Triangulation([entries[i] for i in range(tet_count)])


def serialize(tri):
    """Canonical re-emission: tetrahedra ascending, facets in order."""
    lines = [f"tri {tri.tet_count}"]
    for t in range(tri.tet_count):
        parts = []
        for f in range(4):
            g = tri.gluing(t, f)
            parts.append("-" if g is None else f"{g[0]}:{g[1].compact()}")
        lines.append(f"tet {t}: " + " ".join(parts))
    return "\n".join(lines) + "\n"
