"""Rewriting moves on Jacobi diagrams: STU, IHX, bubble collapse, adjoint projection.

Cyclic-order conventions follow the planar pictures (counterclockwise at each
vertex, Wilson loops traversed in their stored orientation); each convention
is pinned by oracle tests (theta = 2t dim, the closed 2-wheel = (2t)^2 dim,
and STU/IHX soundness under family evaluation).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combo import DiagramCombo
from .diagram import JacobiDiagram, StructuralError, canonicalize


def _as_combo(x) -> DiagramCombo:
    if isinstance(x, JacobiDiagram):
        return DiagramCombo.of(x)
    return x


# --------------------------------------------------------------------------
# adjoint projection


def pi_adj_diagram(d: JacobiDiagram) -> JacobiDiagram:
    """Replace every Wilson loop by a cycle of ordinary trivalent vertices.

    Each attachment point becomes an internal vertex whose cyclic order is
    (incoming arc, attachment, outgoing arc), fixed by the loop orientation.
    An empty loop becomes a free circle.
    """
    if d.legs:
        raise StructuralError("pi_adj expects a closed diagram (no legs)")
    off = d.fresh_offset()
    vertices = list(d.vertices)
    edges = list(d.edges)
    circles = d.circles
    for loop in d.loops:
        L = len(loop)
        if L == 0:
            circles += 1
            continue
        arcs = []
        for i in range(L):
            a_out, a_in = off, off + 1
            off += 2
            arcs.append((a_out, a_in))
            edges.append((a_out, a_in))
        for i in range(L):
            incoming = arcs[(i - 1) % L][1]
            outgoing = arcs[i][0]
            vertices.append((incoming, loop[i], outgoing))
    return JacobiDiagram.make(vertices=vertices, loops=(), legs=(),
                              edges=edges, circles=circles)


def pi_adj(c) -> DiagramCombo:
    """Adjoint projection of a closed-diagram combo onto 3-graphs."""
    return _as_combo(c).map_diagrams(pi_adj_diagram)


# --------------------------------------------------------------------------
# STU


def _stu_site(d: JacobiDiagram):
    """Smallest-id internal vertex with a Wilson-loop attachment, on the
    canonically labeled representative."""
    own = d.owners()
    partner = d.partner()
    for vi, tri in enumerate(d.vertices):
        slots = [si for si, h in enumerate(tri) if own[partner[h]][0] == "p"]
        if slots:
            return vi, slots[0]
    return None


def stu_step(d: JacobiDiagram, vi: int, slot: int) -> DiagramCombo:
    """Resolve one internal vertex attached to a Wilson loop.

    With the vertex triple rotated to (x, y, z) where z runs to the loop, the
    result is (x then y along the loop orientation) minus (y then x).
    """
    own = d.owners()
    partner = d.partner()
    tri = d.vertices[vi]
    r = tri[slot:] + tri[:slot]
    z, x, y = r[0], r[1], r[2]
    pz = partner[z]
    oz = own[pz]
    if oz[0] != "p":
        raise StructuralError("chosen slot does not attach to a Wilson loop")
    li, pi = oz[1], oz[2]
    px, py = partner[x], partner[y]
    off = d.fresh_offset()
    hx, hy = off, off + 1

    vertices = d.vertices[:vi] + d.vertices[vi + 1:]
    base_edges = [e for e in d.edges
                  if set(e).isdisjoint({x, y, z, pz})]

    def build(first, second, pfirst, psecond):
        loops = []
        for lj, loop in enumerate(d.loops):
            if lj != li:
                loops.append(loop)
            else:
                loops.append(loop[:pi] + (first, second) + loop[pi + 1:])
        edges = base_edges + [(first, pfirst), (second, psecond)]
        return JacobiDiagram.make(vertices=vertices, loops=loops, legs=d.legs,
                                  edges=edges, circles=d.circles)

    out = DiagramCombo()
    out.add_term(Fraction(1), build(hx, hy, px, py))
    out.add_term(Fraction(-1), build(hy, hx, py, px))
    return out


def stu_resolve(c) -> DiagramCombo:
    """Resolve all internal vertices of closed diagrams into chord diagrams."""
    pending = _as_combo(c)
    done = DiagramCombo()
    guard = 0
    while not pending.is_zero:
        guard += 1
        if guard > 10000:
            raise RuntimeError("STU resolution did not terminate")
        nxt = DiagramCombo()
        for _, coeff, d in pending.items():
            if d.legs:
                raise StructuralError("stu_resolve expects closed diagrams")
            if not d.vertices:
                done._add_canonical(coeff, canonicalize(d).key, d)
                continue
            site = _stu_site(d)
            if site is None:
                raise StructuralError(
                    "closed diagram has internal vertices not connected to any loop")
            step = stu_step(d, *site)
            for _, c2, d2 in step.items():
                nxt.add_term(coeff * c2, d2)
        pending = nxt
    return done


# --------------------------------------------------------------------------
# IHX


def ihx_apply(d: JacobiDiagram, edge) -> DiagramCombo:
    """Rewrite one internal edge by IHX: the diagram equals H minus X.

    ``edge`` is a pair of half-edge ids joining two distinct internal vertices.
    """
    e = tuple(sorted(edge))
    if e not in set(d.edges):
        raise StructuralError(f"{edge} is not an edge")
    own = d.owners()
    h1, h2 = e
    o1, o2 = own[h1], own[h2]
    if o1[0] != "v" or o2[0] != "v":
        raise StructuralError("IHX needs an edge between two internal vertices")
    ui, vi = o1[1], o2[1]
    if ui == vi:
        raise StructuralError("IHX edge endpoints coincide (tadpole)")
    tu = d.vertices[ui]
    tv = d.vertices[vi]
    ru = tu[tu.index(h1):] + tu[:tu.index(h1)]   # (e, p, q)
    rv = tv[tv.index(h2):] + tv[:tv.index(h2)]   # (e-bar, s, r)
    p, q = ru[1], ru[2]
    s, r = rv[1], rv[2]
    off = d.fresh_offset()
    m1, m2 = off, off + 1
    others = [t for k, t in enumerate(d.vertices) if k not in (ui, vi)]
    base_edges = [ed for ed in d.edges if set(ed) != {h1, h2}] + [(m1, m2)]

    def build(lv, rv_):
        return JacobiDiagram.make(vertices=others + [lv, rv_], loops=d.loops,
                                  legs=d.legs, edges=base_edges,
                                  circles=d.circles)

    out = DiagramCombo()
    out.add_term(Fraction(1), build((m1, r, p), (m2, q, s)))    # H
    out.add_term(Fraction(-1), build((m1, s, p), (m2, q, r)))   # X
    return out


# --------------------------------------------------------------------------
# bubble factorization (weight-system semantics only)


@dataclass(frozen=True)
class BubbleReduction:
    """Result of collapsing 2-cycles: value is sign * (2t)^count * reduced."""
    count: int
    sign: int
    reduced: JacobiDiagram


def _find_bubble(d: JacobiDiagram):
    own = d.owners()
    pair = {}
    for a, b in d.edges:
        oa, ob = own[a], own[b]
        if oa[0] == "v" and ob[0] == "v" and oa[1] != ob[1]:
            key = tuple(sorted((oa[1], ob[1])))
            pair.setdefault(key, []).append((a, b))
    for key in sorted(pair):
        es = pair[key]
        if len(es) >= 2:
            return key, sorted(es)[:2]
    return None


def bubble_factor(d: JacobiDiagram) -> BubbleReduction:
    """Collapse every 2-cycle to an edge, cascading, in weight-system semantics.

    Each collapse contributes a factor sign*2t under a weight system; this is
    not a diagrammatic identity and callers must be in weight-system mode.
    """
    count = 0
    sign = 1
    cur = d
    while True:
        found = _find_bubble(cur)
        if found is None:
            return BubbleReduction(count=count, sign=sign, reduced=cur)
        (ui, vi), es = found
        own = cur.owners()
        partner = cur.partner()
        tu, tv = cur.vertices[ui], cur.vertices[vi]
        # half-edges of the two parallel edges at u and at v, in a fixed
        # physical order (e1, e2)
        e1, e2 = es
        u_par = [h for h in e1 + e2 if own[h][1] == ui and own[h][0] == "v"]
        v_par = [h for h in e1 + e2 if own[h][1] == vi and own[h][0] == "v"]
        # physical order: order u's pair by slot at u; v inherits via edges
        u_par.sort(key=lambda h: tu.index(h))
        v_par = [partner[h] for h in u_par]
        ux = next(h for h in tu if h not in u_par)
        vy = next(h for h in tv if h not in v_par)

        def parity(tri, target):
            perm = [target.index(h) for h in tri]
            inv = sum(1 for i in range(3) for j in range(i + 1, 3)
                      if perm[i] > perm[j])
            return -1 if inv % 2 else 1

        pu = parity(tu, [ux] + u_par)
        pv = parity(tv, [vy] + v_par)
        sign *= -pu * pv
        count += 1
        # smooth: join the partners of the two external half-edges
        px, py = partner[ux], partner[vy]
        vertices = [t for k, t in enumerate(cur.vertices) if k not in (ui, vi)]
        edges = [e for e in cur.edges if set(e).isdisjoint(set(tu) | set(tv))]
        circles = cur.circles
        if px == vy:  # third parallel edge: theta component closes to a circle
            circles += 1
        else:
            edges.append((px, py))
        cur = JacobiDiagram.make(vertices=vertices, loops=cur.loops,
                                 legs=cur.legs, edges=edges, circles=circles)
