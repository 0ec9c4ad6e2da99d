"""Jacobi diagram data model, canonical forms, and structural operations.

A diagram is a half-edge structure: internal trivalent vertices store an
ordered triple of half-edge ids (the cyclic order, counterclockwise), Wilson
loops store an oriented cyclic sequence of attachment half-edges, external
legs are position-labeled half-edges, and ``edges`` is a perfect matching on
all half-edge ids.  ``circles`` counts closed thin circles with no vertices
(these arise from smoothing, e.g. collapsing the doubled edge of a theta).

Canonicalization returns a label-independent key together with a sign: two
encodings of isomorphic diagrams get the same key, and the sign tracks the
antisymmetry of the vertex cyclic orders (swapping two half-edges at a vertex
is an odd permutation and flips the sign).  A diagram admitting an
orientation-reversing automorphism equals minus itself; its canonical form is
the special SELF_ZERO form with sign 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


class StructuralError(ValueError):
    """A diagram violates the half-edge structure invariants."""


# owner descriptor kinds used in canonical codes
_VERT, _POINT, _LEG = 0, 1, 2


@dataclass(frozen=True)
class JacobiDiagram:
    vertices: tuple = ()   # tuple of (h,h,h) ordered triples
    loops: tuple = ()      # tuple of tuples of half-edge ids (may be empty tuples)
    legs: tuple = ()       # tuple of half-edge ids, position-labeled
    edges: tuple = ()      # tuple of (h,h) sorted pairs, a perfect matching
    circles: int = 0       # closed vertexless thin circles

    @staticmethod
    def make(vertices=(), loops=(), legs=(), edges=(), circles=0) -> "JacobiDiagram":
        """Normalize constructor arguments and validate."""
        d = JacobiDiagram(
            vertices=tuple(tuple(v) for v in vertices),
            loops=tuple(tuple(l) for l in loops),
            legs=tuple(legs),
            edges=tuple(sorted(tuple(sorted(e)) for e in edges)),
            circles=int(circles),
        )
        d.validate()
        return d

    # -- structure ---------------------------------------------------------

    def half_edges(self):
        for v in self.vertices:
            yield from v
        for l in self.loops:
            yield from l
        yield from self.legs

    def owners(self) -> dict:
        """Map half-edge id -> owner descriptor.

        Descriptors: ('v', vertex_index, slot), ('p', loop_index, position),
        ('leg', position).
        """
        own = {}
        for vi, tri in enumerate(self.vertices):
            for si, h in enumerate(tri):
                if h in own:
                    raise StructuralError(f"half-edge {h} owned twice")
                own[h] = ("v", vi, si)
        for li, loop in enumerate(self.loops):
            for pi, h in enumerate(loop):
                if h in own:
                    raise StructuralError(f"half-edge {h} owned twice")
                own[h] = ("p", li, pi)
        for k, h in enumerate(self.legs):
            if h in own:
                raise StructuralError(f"half-edge {h} owned twice")
            own[h] = ("leg", k)
        return own

    def partner(self) -> dict:
        p = {}
        for a, b in self.edges:
            p[a] = b
            p[b] = a
        return p

    def validate(self) -> None:
        own = self.owners()
        if self.circles < 0:
            raise StructuralError("negative circle count")
        for v in self.vertices:
            if len(v) != 3:
                raise StructuralError(f"vertex {v} is not trivalent")
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise StructuralError(f"edge ({a},{b}) pairs a half-edge with itself")
            for h in (a, b):
                if h in seen:
                    raise StructuralError(f"half-edge {h} matched twice")
                if h not in own:
                    raise StructuralError(f"matched half-edge {h} has no owner")
                seen.add(h)
        missing = set(own) - seen
        if missing:
            raise StructuralError(f"half-edges {sorted(missing)} not matched")

    @property
    def kind(self) -> str:
        if self.loops and not self.legs:
            return "closed"
        if self.legs and not self.loops:
            return "open"
        if not self.legs and not self.loops:
            return "three-graph"
        raise StructuralError("diagram has both Wilson loops and free legs")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def is_chord_diagram(self) -> bool:
        return self.kind == "closed" and not self.vertices

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        obj = {
            "vertices": [list(v) for v in self.vertices],
            "loops": [list(l) for l in self.loops],
            "legs": list(self.legs),
            "edges": [list(e) for e in self.edges],
        }
        if self.circles:
            obj["circles"] = self.circles
        return json.dumps(obj, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "JacobiDiagram":
        obj = json.loads(text)
        return JacobiDiagram.make(
            vertices=obj.get("vertices", ()),
            loops=obj.get("loops", ()),
            legs=obj.get("legs", ()),
            edges=obj.get("edges", ()),
            circles=obj.get("circles", 0),
        )

    def relabel(self, mapping: dict) -> "JacobiDiagram":
        """Rename half-edge ids through a bijective mapping."""
        m = lambda h: mapping.get(h, h)
        return JacobiDiagram.make(
            vertices=[tuple(m(h) for h in v) for v in self.vertices],
            loops=[tuple(m(h) for h in l) for l in self.loops],
            legs=[m(h) for h in self.legs],
            edges=[(m(a), m(b)) for a, b in self.edges],
            circles=self.circles,
        )

    def fresh_offset(self) -> int:
        hes = list(self.half_edges())
        return (max(hes) + 1) if hes else 0


# --------------------------------------------------------------------------
# structural operations


def disjoint_union(a: JacobiDiagram, b: JacobiDiagram) -> JacobiDiagram:
    """Disjoint union; b's half-edges are shifted above a's, legs concatenated."""
    off = a.fresh_offset()
    return JacobiDiagram.make(
        vertices=a.vertices + tuple(tuple(h + off for h in v) for v in b.vertices),
        loops=a.loops + tuple(tuple(h + off for h in l) for l in b.loops),
        legs=a.legs + tuple(h + off for h in b.legs),
        edges=a.edges + tuple((x + off, y + off) for x, y in b.edges),
        circles=a.circles + b.circles,
    )


def self_glue(d: JacobiDiagram, pairs) -> JacobiDiagram:
    """Glue legs of one diagram pairwise; leg arguments are leg positions."""
    used = [i for p in pairs for i in p]
    if len(set(used)) != len(used):
        raise StructuralError("a leg may be glued at most once")
    for i in used:
        if not (0 <= i < len(d.legs)):
            raise StructuralError(f"no leg at position {i}")
    edges = {tuple(sorted(e)) for e in d.edges}
    circles = d.circles

    def partner_of(h):
        for a, b in edges:
            if a == h:
                return b
            if b == h:
                return a
        raise StructuralError(f"half-edge {h} not matched")

    for i, j in pairs:
        hi, hj = d.legs[i], d.legs[j]
        pi = partner_of(hi)
        if pi == hj:
            # the two legs were directly connected: gluing closes a circle
            edges.discard(tuple(sorted((hi, hj))))
            circles += 1
            continue
        pj = partner_of(hj)
        edges.discard(tuple(sorted((hi, pi))))
        edges.discard(tuple(sorted((hj, pj))))
        edges.add(tuple(sorted((pi, pj))))
    keep = [h for k, h in enumerate(d.legs) if k not in set(used)]
    return JacobiDiagram.make(
        vertices=d.vertices, loops=d.loops, legs=keep,
        edges=edges, circles=circles,
    )


def glue(a: JacobiDiagram, b: JacobiDiagram | None, pairing) -> JacobiDiagram:
    """Glue legs of a to legs of b (or of a to itself when b is None).

    ``pairing`` is a list of (leg-position-of-a, leg-position-of-b) pairs;
    paired legs become edges, remaining legs keep their relative order.
    """
    if b is None:
        return self_glue(a, pairing)
    d = disjoint_union(a, b)
    la = len(a.legs)
    return self_glue(d, [(i, la + j) for i, j in pairing])


def delete_vertex(d: JacobiDiagram, vi: int) -> JacobiDiagram:
    """Remove an internal vertex, turning its half-edges into trailing legs.

    The new legs appear in the vertex's stored cyclic order, so gluing a
    3-legged diagram back onto them realizes vertex insertion.
    """
    tri = d.vertices[vi]
    return JacobiDiagram.make(
        vertices=d.vertices[:vi] + d.vertices[vi + 1:],
        loops=d.loops,
        legs=d.legs + tri,
        edges=d.edges,
        circles=d.circles,
    )


def vertex_insert(target: JacobiDiagram, vi: int, lam: JacobiDiagram) -> JacobiDiagram:
    """Insert a 3-legged diagram into a trivalent vertex of the target."""
    if len(lam.legs) != 3 or lam.loops:
        raise StructuralError("vertex insertion needs a 3-legged open diagram")
    opened = delete_vertex(target, vi)
    base = len(target.legs)
    return glue(opened, lam, [(base + k, k) for k in range(3)])


# --------------------------------------------------------------------------
# canonicalization


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical key with orientation sign; sign 0 encodes SELF_ZERO."""
    key: tuple
    sign: int
    rep: JacobiDiagram | None = field(default=None, compare=False)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def to_bytes(self) -> bytes:
        """Length-prefixed integer serialization of the key, for golden files."""
        out = []

        def emit(x):
            if isinstance(x, tuple):
                out.append(len(x) + 2)
                for y in x:
                    emit(y)
            else:
                out.append(0)
                out.append(int(x))

        emit(self.key)
        return b"".join(v.to_bytes(4, "big", signed=True) for v in out)


SELF_ZERO = CanonicalForm(key=("SELF_ZERO",), sign=0, rep=None)


def _permutation_parity(perm) -> int:
    perm = list(perm)
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, n = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        if n % 2 == 0:
            sign = -sign
    return sign


class _Canonicalizer:
    """Individualization-refinement search for the minimal labeling.

    Nodes are internal vertices and Wilson-loop attachment points; legs are
    fixed anchors entering through node colors.  All labelings attaining the
    minimal (invariant-path, code) pair are visited so that sign consistency
    across the automorphism group can be checked.
    """

    def __init__(self, d: JacobiDiagram):
        self.d = d
        self.own = d.owners()
        self.partner = d.partner()
        # node ids: vertices first, then loop points of nonempty loops
        self.nodes = []
        self.node_of = {}
        for vi in range(len(d.vertices)):
            self.node_of[("v", vi)] = len(self.nodes)
            self.nodes.append(("v", vi))
        self.point_index = {}
        for li, loop in enumerate(d.loops):
            for pi in range(len(loop)):
                self.node_of[("p", li, pi)] = len(self.nodes)
                self.point_index[(li, pi)] = len(self.point_index)
                self.nodes.append(("p", li, pi))
        self.n = len(self.nodes)
        self.adj = [[] for _ in range(self.n)]       # (etype, node)
        self.leg_adj = [[] for _ in range(self.n)]   # leg positions
        self.strands = []                            # leg-leg edges
        self.tadpole = False
        for a, b in d.edges:
            oa, ob = self.own[a], self.own[b]
            if oa[0] == "leg" and ob[0] == "leg":
                self.strands.append(tuple(sorted((oa[1], ob[1]))))
                continue
            if oa[0] == "leg" or ob[0] == "leg":
                (leg, other) = (oa, ob) if oa[0] == "leg" else (ob, oa)
                self.leg_adj[self._node(other)].append(leg[1])
                continue
            na, nb = self._node(oa), self._node(ob)
            if na == nb:
                self.tadpole = True
                return
            self.adj[na].append((0, nb))
            self.adj[nb].append((0, na))
        for li, loop in enumerate(d.loops):
            L = len(loop)
            for pi in range(L):
                u = self.node_of[("p", li, pi)]
                v = self.node_of[("p", li, (pi + 1) % L)]
                self.adj[u].append((1, v))
                self.adj[v].append((2, u))
        self.best_path = None
        self.best_code = None
        self.best_signs = None
        self.best_labeling = None

    def _node(self, owner):
        if owner[0] == "v":
            return self.node_of[("v", owner[1])]
        return self.node_of[("p", owner[1], owner[2])]

    # -- refinement --

    def _initial_colors(self):
        cols = []
        for i, nd in enumerate(self.nodes):
            if nd[0] == "v":
                cols.append(("v", tuple(sorted(self.leg_adj[i]))))
            else:
                li = nd[1]
                cols.append(("p", len(self.d.loops[li]), tuple(sorted(self.leg_adj[i]))))
        return self._compress(cols)

    @staticmethod
    def _compress(cols):
        order = sorted(set(cols))
        rank = {c: r for r, c in enumerate(order)}
        return [rank[c] for c in cols]

    def _refine(self, cols):
        while True:
            sigs = []
            for i in range(self.n):
                nb = sorted((et, cols[j]) for et, j in self.adj[i])
                sigs.append((cols[i], tuple(nb)))
            new = self._compress(sigs)
            if new == cols:
                return cols
            cols = new

    # -- search --

    def run(self):
        if self.tadpole:
            return SELF_ZERO
        if self.n == 0:
            key = self._code({})
            return CanonicalForm(key=key, sign=1, rep=self._rebuild({}))
        cols = self._refine(self._initial_colors())
        self._search(cols, ())
        labeling = self.best_labeling
        if len(self.best_signs) > 1:
            return SELF_ZERO
        (sign,) = self.best_signs
        rep = self._rebuild(labeling)
        return CanonicalForm(key=self.best_code, sign=sign, rep=rep)

    def _shape(self, cols):
        sizes = {}
        for c in cols:
            sizes[c] = sizes.get(c, 0) + 1
        return tuple(sorted(sizes.items()))

    def _search(self, cols, path):
        path = path + (self._shape(cols),)
        if self.best_path is not None:
            prefix = self.best_path[: len(path)]
            if path > prefix:
                return
        cells = {}
        for i, c in enumerate(cols):
            cells.setdefault(c, []).append(i)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            self._leaf(cols, path)
            return
        fresh = max(cols) + 1
        for i in target:
            c2 = list(cols)
            c2[i] = fresh
            self._search(self._refine(self._compress(c2)), path)

    def _leaf(self, cols, path):
        labeling = {i: cols[i] for i in range(self.n)}
        code = self._code(labeling)
        sign = self._sign(labeling)
        full = (path, code)
        cur = (self.best_path, self.best_code)
        if self.best_path is None or full < cur:
            self.best_path, self.best_code = full
            self.best_signs = {sign}
            self.best_labeling = labeling
        elif full == cur:
            self.best_signs.add(sign)

    # -- code / sign / rebuild from a discrete labeling --

    def _ids(self, labeling):
        """Per-kind new ids (vertex ids and loop-point ids) from node ranks."""
        vids, pids = {}, {}
        vorder = sorted((labeling[i], i) for i in range(self.n) if self.nodes[i][0] == "v")
        porder = sorted((labeling[i], i) for i in range(self.n) if self.nodes[i][0] == "p")
        for r, (_, i) in enumerate(vorder):
            vids[i] = r
        for r, (_, i) in enumerate(porder):
            pids[i] = r
        return vids, pids

    def _descriptor(self, owner, vids, pids):
        if owner[0] == "v":
            return (_VERT, vids[self.node_of[("v", owner[1])]])
        if owner[0] == "p":
            return (_POINT, pids[self.node_of[("p", owner[1], owner[2])]])
        return (_LEG, owner[1])

    def _code(self, labeling):
        vids, pids = self._ids(labeling)
        d = self.d
        vrows = [None] * len(vids)
        for i, vid in vids.items():
            _, vi = self.nodes[i]
            row = tuple(sorted(
                self._descriptor(self.own[self.partner[h]], vids, pids)
                for h in d.vertices[vi]))
            vrows[vid] = row
        prows = [None] * len(pids)
        for i, pid in pids.items():
            _, li, pi = self.nodes[i]
            h = d.loops[li][pi]
            prows[pid] = self._descriptor(self.own[self.partner[h]], vids, pids)
        loops = []
        for li, loop in enumerate(d.loops):
            if not loop:
                continue
            ids = [pids[self.node_of[("p", li, pi)]] for pi in range(len(loop))]
            k = ids.index(min(ids))
            loops.append(tuple(ids[k:] + ids[:k]))
        legs = tuple(
            self._descriptor(self.own[self.partner[h]], vids, pids)
            for h in d.legs)
        empties = sum(1 for l in d.loops if not l)
        return (
            ("V", tuple(vrows)),
            ("P", tuple(prows)),
            ("L", tuple(sorted(loops))),
            ("legs", legs),
            ("circ", d.circles),
            ("emptyloops", empties),
        )

    def _slot_order(self, vi, vids, pids):
        """Canonical order of a vertex's half-edges under a labeling.

        Parallel edges to the same neighbor are ordered by the stored slot
        index at the endpoint whose (kind, id) is smaller; the other endpoint
        inherits the induced physical-edge order.  This keeps the AS sign
        well-defined for multi-edges.
        """
        d = self.d
        tri = d.vertices[vi]
        my_id = vids[self.node_of[("v", vi)]]
        keyed = []
        for si, h in enumerate(tri):
            desc = self._descriptor(self.own[self.partner[h]], vids, pids)
            keyed.append((desc, si, h))
        keyed.sort(key=lambda t: t[0])
        out = []
        i = 0
        while i < len(keyed):
            j = i
            while j < len(keyed) and keyed[j][0] == keyed[i][0]:
                j += 1
            group = keyed[i:j]
            if len(group) > 1:
                desc = group[0][0]
                # ties only occur for parallel edges to another vertex
                other_vi = None
                for k in range(len(d.vertices)):
                    if vids[self.node_of[("v", k)]] == desc[1]:
                        other_vi = k
                        break
                if (_VERT, my_id) <= desc:
                    group.sort(key=lambda t: t[1])
                else:
                    other_tri = d.vertices[other_vi]
                    group.sort(key=lambda t: other_tri.index(self.partner[t[2]]))
            out.extend(g[2] for g in group)
            i = j
        return out

    def _sign(self, labeling):
        vids, pids = self._ids(labeling)
        sign = 1
        for i, vid in vids.items():
            _, vi = self.nodes[i]
            tri = self.d.vertices[vi]
            target = self._slot_order(vi, vids, pids)
            perm = [target.index(h) for h in tri]
            sign *= _permutation_parity(perm)
        return sign

    def _rebuild(self, labeling):
        vids, pids = self._ids(labeling)
        d = self.d
        V, P = len(vids), len(pids)
        hmap = {}
        new_vertices = [None] * V
        for i, vid in vids.items():
            _, vi = self.nodes[i]
            order = self._slot_order(vi, vids, pids)
            for k, h in enumerate(order):
                hmap[h] = 3 * vid + k
            new_vertices[vid] = (3 * vid, 3 * vid + 1, 3 * vid + 2)
        for i, pid in pids.items():
            _, li, pi = self.nodes[i]
            hmap[d.loops[li][pi]] = 3 * V + pid
        new_legs = []
        for k, h in enumerate(d.legs):
            hmap[h] = 3 * V + P + k
            new_legs.append(3 * V + P + k)
        loops = []
        for li, loop in enumerate(d.loops):
            if not loop:
                continue
            ids = [pids[self.node_of[("p", li, pi)]] for pi in range(len(loop))]
            k = ids.index(min(ids))
            n = len(loop)
            loops.append(tuple(hmap[d.loops[li][(k + t) % n]] for t in range(n)))
        loops.sort()
        loops.extend(() for l in d.loops if not l)
        return JacobiDiagram.make(
            vertices=new_vertices,
            loops=loops,
            legs=new_legs,
            edges=[(hmap[a], hmap[b]) for a, b in d.edges],
            circles=d.circles,
        )


def canonicalize(d: JacobiDiagram) -> CanonicalForm:
    """Canonical key and AS sign of a diagram; SELF_ZERO if it equals minus itself."""
    d.validate()
    return _Canonicalizer(d).run()
