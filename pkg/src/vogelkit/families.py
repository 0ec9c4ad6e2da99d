"""Classical-family weight systems on 3-graphs, exact in the rank parameter.

Each structure-constant vertex is expanded into its two defining-representation
trace terms, tr(XYZ) - tr(XZY), and each metric-contracted edge into the
completeness sum over a basis and its trace-form dual, which for sl/so/sp is a
short sum of defining-index pairings (with a symplectic-form decoration for
sp).  A 3-graph value is accumulated by a state sum whose states are pairings
of the dangling defining indices on the contraction frontier; closed index
loops contribute the defining dimension.  The result is an exact polynomial in
the family's rank N (Table-style parameterization: sl_N, so_N, sp_2N).

The brute-force structure-constant oracle in ``numeric`` is the independent
ground truth for this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .diagram import JacobiDiagram
from .polynomials import QPoly

DELTA, OMEGA = 0, 1


@dataclass(frozen=True)
class FamilySpec:
    name: str
    alpha: QPoly
    beta: QPoly
    gamma: QPoly
    dim: QPoly       # adjoint dimension as a polynomial in N
    defining: QPoly  # defining-representation dimension as a polynomial in N
    # Metric convention putting the adjoint Casimir at 2t: the defining trace
    # form for sl/sp, half of it for so.  Each vertex carries one power of the
    # metric's scale, each edge one inverse power.
    vertex_factor: Fraction = Fraction(1)

    @property
    def t(self) -> QPoly:
        return self.alpha + self.beta + self.gamma

    @property
    def sigma(self) -> QPoly:
        e2 = self.alpha * self.beta + self.beta * self.gamma + self.alpha * self.gamma
        return self.t * self.t * 2 + e2

    @property
    def omega(self) -> QPoly:
        return self.t * self.sigma + self.alpha * self.beta * self.gamma

    def abc_at(self, n: int):
        return (self.alpha(n), self.beta(n), self.gamma(n))


def _load_family_rows():
    text = resources.files("vogelkit.data").joinpath("table1.json").read_text()
    return json.loads(text)


_TABLE = _load_family_rows()


def _lin(row) -> QPoly:
    return QPoly.linear(Fraction(row[0]), Fraction(row[1]))


FAMILIES = {
    "sl": FamilySpec(
        "sl",
        _lin(_TABLE["families"]["sl"]["alpha"]),
        _lin(_TABLE["families"]["sl"]["beta"]),
        _lin(_TABLE["families"]["sl"]["gamma"]),
        dim=QPoly({2: 1, 0: -1}),                    # N^2 - 1
        defining=QPoly.var(),
    ),
    "so": FamilySpec(
        "so",
        _lin(_TABLE["families"]["so"]["alpha"]),
        _lin(_TABLE["families"]["so"]["beta"]),
        _lin(_TABLE["families"]["so"]["gamma"]),
        dim=QPoly({2: Fraction(1, 2), 1: Fraction(-1, 2)}),  # N(N-1)/2
        defining=QPoly.var(),
        vertex_factor=Fraction(1, 2),
    ),
    "sp": FamilySpec(
        "sp",
        _lin(_TABLE["families"]["sp"]["alpha"]),
        _lin(_TABLE["families"]["sp"]["beta"]),
        _lin(_TABLE["families"]["sp"]["gamma"]),
        dim=QPoly({2: 2, 1: 1}),                     # N(2N+1)
        defining=QPoly({1: 2}),                      # 2N
    ),
}

EXCEPTIONAL_ROWS = {
    name: tuple(Fraction(x) for x in row)
    for name, row in _TABLE["exceptional"].items()
}


class FamilyPolynomial:
    """Exact univariate polynomial in the rank N for one classical family."""

    __slots__ = ("family", "poly")

    def __init__(self, family: str, poly: QPoly):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        if not poly.is_polynomial:
            raise ValueError("family value must be polynomial in N")
        self.family = family
        self.poly = poly

    def __call__(self, n: int) -> Fraction:
        return self.poly(Fraction(n))

    def __eq__(self, other):
        if not isinstance(other, FamilyPolynomial):
            return NotImplemented
        return self.family == other.family and self.poly == other.poly

    def __add__(self, other):
        if isinstance(other, FamilyPolynomial):
            if other.family != self.family:
                raise ValueError("family mismatch")
            return FamilyPolynomial(self.family, self.poly + other.poly)
        return FamilyPolynomial(self.family, self.poly + other)

    def __mul__(self, other):
        if isinstance(other, FamilyPolynomial):
            if other.family != self.family:
                raise ValueError("family mismatch")
            return FamilyPolynomial(self.family, self.poly * other.poly)
        return FamilyPolynomial(self.family, self.poly * other)

    __rmul__ = __mul__

    def __repr__(self):
        return f"FamilyPolynomial({self.family}, {self.poly.to_string('N')})"


# --------------------------------------------------------------------------
# strand state sum


def _propagator_branches(spec: FamilySpec, h0: int, h1: int):
    """Expansion of Sigma_a T_a (x) T^a between edge ends h0, h1.

    Points (h, 0) and (h, 1) are the row and column defining indices of the
    operator sitting at end h.  Wires are (point, point, kind); for OMEGA the
    point order is the index order of the form.
    """
    r0, c0, r1, c1 = (h0, 0), (h0, 1), (h1, 0), (h1, 1)
    half = Fraction(1, 2)
    if spec.name == "sl":
        return [
            (QPoly.const(1), [(r0, c1, DELTA), (c0, r1, DELTA)]),
            (QPoly({-1: -1}), [(r0, c0, DELTA), (r1, c1, DELTA)]),
        ]
    if spec.name == "so":
        # inverse of half the trace form: twice the antisymmetrizer
        return [
            (QPoly.const(1), [(r0, c1, DELTA), (c0, r1, DELTA)]),
            (QPoly.const(-1), [(r0, r1, DELTA), (c0, c1, DELTA)]),
        ]
    if spec.name == "sp":
        return [
            (QPoly.const(half), [(r0, c1, DELTA), (c0, r1, DELTA)]),
            (QPoly.const(half), [(r0, r1, OMEGA), (c1, c0, OMEGA)]),
        ]
    raise ValueError(spec.name)


class _DeadState(Exception):
    pass


class _Strands:
    """Mutable pairing of frontier points with Omega decorations."""

    __slots__ = ("seg_of", "segs", "next_id", "sign", "loops_delta")

    def __init__(self, frozen=None):
        self.seg_of = {}
        self.segs = {}
        self.next_id = 0
        self.sign = 1
        self.loops_delta = 0
        if frozen:
            for (p, q, w) in frozen:
                sid = self.next_id
                self.next_id += 1
                self.segs[sid] = (p, q, w)
                self.seg_of[p] = sid
                self.seg_of[q] = sid

    def _detach(self, point, point_slot: int):
        """Remove the segment at ``point`` and return (other endpoint, kind).

        The returned kind refers to the tensor oriented with ``point`` in slot
        ``point_slot`` (0 = first index, 1 = second); reorienting an Omega
        segment flips the running sign.
        """
        sid = self.seg_of.pop(point)
        p, q, w = self.segs.pop(sid)
        other = q if p == point else p
        self.seg_of.pop(other, None)
        stored_slot = 0 if p == point else 1
        if stored_slot != point_slot and w == OMEGA:
            self.sign = -self.sign
        return other, w

    def join(self, x, y, kind):
        """Contract through a wire with tensor W_{xy} (delta or Omega_{xy})."""
        in_x, in_y = x in self.seg_of, y in self.seg_of
        if not in_x and not in_y:
            self._store(x, y, kind)
            return
        if in_x and not in_y:
            # T_{o,y} = sum_x S_{o,x} W_{x,y}
            o, w = self._detach(x, 1)
            self._store(o, y, self._compose(w, kind))
            return
        if in_y and not in_x:
            # T_{x,o} = sum_y W_{x,y} S_{y,o}
            o, w = self._detach(y, 0)
            self._store(x, o, self._compose(kind, w))
            return
        if self.seg_of[x] == self.seg_of[y]:
            # closing a loop: sum_{x,y} S_{y,x} W_{x,y} = tr(S o W)
            o, w = self._detach(x, 1)
            if o != y:
                raise AssertionError("loop endpoints mismatch")
            total = self._compose(w, kind)
            if total == OMEGA:
                raise _DeadState  # tr(Omega) = 0
            self.loops_delta += 1
            return
        ox, wx = self._detach(x, 1)   # S1_{ox,x}
        oy, wy = self._detach(y, 0)   # S2_{y,oy}
        self._store(ox, oy, self._compose(self._compose(wx, kind), wy))

    def _compose(self, wa, wb):
        if wa == OMEGA and wb == OMEGA:
            self.sign = -self.sign
            return DELTA
        return OMEGA if (wa == OMEGA or wb == OMEGA) else DELTA

    def _store(self, p, q, w):
        if p == q:
            raise AssertionError("segment endpoints collide")
        if q < p:
            p, q = q, p
            if w == OMEGA:
                self.sign = -self.sign
        sid = self.next_id
        self.next_id += 1
        self.segs[sid] = (p, q, w)
        self.seg_of[p] = sid
        self.seg_of[q] = sid

    def frozen(self):
        return frozenset(self.segs.values())


def _elimination_order(n_vertices: int, edges):
    """Vertex order keeping the open-edge frontier small (greedy, all starts)."""
    adj = [[] for _ in range(n_vertices)]
    for ei, (u, v) in enumerate(edges):
        adj[u].append((ei, v))
        adj[v].append((ei, u))
    best = None
    for start in range(n_vertices):
        placed = [start]
        inset = {start}
        maxb = len(adj[start])
        sumb = maxb
        open_edges = {ei for ei, _ in adj[start]}
        while len(placed) < n_vertices:
            cand, ckey = None, None
            for v in range(n_vertices):
                if v in inset:
                    continue
                closing = sum(1 for ei, u in adj[v] if u in inset)
                key = (-closing, v)
                if ckey is None or key < ckey:
                    cand, ckey = v, key
            v = cand
            inset.add(v)
            placed.append(v)
            for ei, u in adj[v]:
                if u == v:
                    continue
                if u in inset:
                    open_edges.discard(ei)
                else:
                    open_edges.add(ei)
            b = len(open_edges)
            maxb = max(maxb, b)
            sumb += b
        if best is None or (maxb, sumb) < best[0]:
            best = ((maxb, sumb), placed)
    return best[1]


def _component_value(spec: FamilySpec, vertices, edges) -> QPoly:
    """State-sum value of one connected 3-graph component."""
    vmap = {}  # half-edge -> (vertex index, slot)
    for vi, tri in enumerate(vertices):
        for si, h in enumerate(tri):
            vmap[h] = (vi, si)
    vedges = []  # (vertex u, vertex v) with half-edges
    he_edge = []
    for (a, b) in edges:
        vedges.append((vmap[a][0], vmap[b][0]))
        he_edge.append((a, b))
    if any(u == v for u, v in vedges):
        return QPoly()
    order = _elimination_order(len(vertices), vedges)
    pos = {v: i for i, v in enumerate(order)}

    defining = spec.defining
    states = {frozenset(): QPoly.const(1)}
    for step, vi in enumerate(order):
        a, b, c = vertices[vi]
        closing = [
            (he_edge[ei][0], he_edge[ei][1])
            for ei, (u, v) in enumerate(vedges)
            if (u == vi and pos[v] <= step) or (v == vi and pos[u] <= step)
        ]
        # branch lists: vertex trace order then one propagator branch per edge
        vertex_branches = [
            (spec.vertex_factor, (a, b, c)),
            (-spec.vertex_factor, (a, c, b)),
        ]
        prop_branches = [
            _propagator_branches(spec, h0, h1) for (h0, h1) in closing
        ]
        new_states = {}
        for state, coef in states.items():
            for vsign, (x, y, z) in vertex_branches:
                wire_sets = [[((x, 1), (y, 0), DELTA),
                              ((y, 1), (z, 0), DELTA),
                              ((z, 1), (x, 0), DELTA)]]
                coefs = [coef * vsign]
                for branches in prop_branches:
                    wire_sets = [ws + list(bw) for ws in wire_sets for _, bw in branches]
                    coefs = [cf * bc for cf in coefs for bc, _ in branches]
                for ws, cf in zip(wire_sets, coefs):
                    st = _Strands(state)
                    try:
                        for (p, q, kind) in ws:
                            st.join(p, q, kind)
                    except _DeadState:
                        continue
                    val = cf * st.sign * defining ** st.loops_delta
                    key = st.frozen()
                    acc = new_states.get(key)
                    new_states[key] = val if acc is None else acc + val
        states = {k: v for k, v in new_states.items() if v}
        if not states:
            return QPoly()
    if set(states) - {frozenset()}:
        raise AssertionError("unclosed strands after full contraction")
    return states.get(frozenset(), QPoly())


_component_cache = {}


def eval_family(combo, family: str) -> FamilyPolynomial:
    """Weight-system value of a 3-graph combo as an exact polynomial in N."""
    from .diagram import canonicalize  # local import to avoid cycles

    spec = FAMILIES[family]
    total = QPoly()
    items = combo.items() if hasattr(combo, "items") else [(None, Fraction(1), combo)]
    for _, coeff, d in items:
        if d.kind != "three-graph":
            raise ValueError("eval_family expects 3-graphs (apply pi_adj first)")
        value = spec.dim ** d.circles
        for comp_vertices, comp_edges in _components(d):
            sub = JacobiDiagram.make(vertices=comp_vertices, edges=comp_edges)
            ck = canonicalize(sub)
            if ck.is_zero:
                value = QPoly()
                break
            cache_key = (family, ck.key)
            got = _component_cache.get(cache_key)
            if got is None:
                rep = ck.rep
                got = _component_value(spec, rep.vertices, rep.edges)
                _component_cache[cache_key] = got
            value = value * got * ck.sign
        total = total + value * coeff
    return FamilyPolynomial(family, total)


def _components(d: JacobiDiagram):
    """Connected components of a 3-graph as (vertices, edges) with original ids."""
    vmap = {}
    for vi, tri in enumerate(d.vertices):
        for h in tri:
            vmap[h] = vi
    n = len(d.vertices)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in d.edges:
        ra, rb = find(vmap[a]), find(vmap[b])
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for vi in range(n):
        groups.setdefault(find(vi), []).append(vi)
    for vis in groups.values():
        vset = set(vis)
        verts = [d.vertices[vi] for vi in vis]
        edges = [e for e in d.edges if vmap[e[0]] in vset]
        yield verts, edges
