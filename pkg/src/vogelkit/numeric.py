"""Brute-force weight-system oracle: full structure-constant contraction.

This is the ground truth the polynomial evaluator is checked against.  A
3-graph is contracted as a tensor network: one f_{abc} per vertex, the inverse
metric absorbed along each edge, everything in exact rational arithmetic.
Deliberately simple; the only concession to speed is a greedy contraction
order and a per-component cache.
"""

from __future__ import annotations

from fractions import Fraction

from .algebras import AlgebraInstance
from .diagram import JacobiDiagram, canonicalize
from .families import _components, _elimination_order


class ResourceError(RuntimeError):
    """Contraction would exceed the configured tensor budget."""


DEFAULT_MAX_ENTRIES = 10 ** 8


def _absorb_metric(tensor, ports, port, g_inv, dim):
    """Contract g^{-1} into one port of a sparse tensor."""
    pi = ports.index(port)
    rows = [
        [(b, g_inv[a][b]) for b in range(dim) if g_inv[a][b]]
        for a in range(dim)
    ]
    out = {}
    for key, val in tensor.items():
        a = key[pi]
        for b, coef in rows[a]:
            nk = key[:pi] + (b,) + key[pi + 1:]
            s = out.get(nk, Fraction(0)) + val * coef
            if s:
                out[nk] = s
            else:
                out.pop(nk, None)
    return out


def _contract(t1, p1, t2, p2, dim, max_entries):
    """Hash-join two sparse tensors over their shared ports."""
    shared = [p for p in p1 if p in p2]
    out_ports = [p for p in p1 if p not in shared] + [p for p in p2 if p not in shared]
    if dim ** len(out_ports) > max_entries:
        raise ResourceError(
            f"intermediate tensor would have up to {dim ** len(out_ports)} entries")
    idx1 = [p1.index(p) for p in shared]
    keep1 = [i for i in range(len(p1)) if i not in idx1]
    idx2 = [p2.index(p) for p in shared]
    keep2 = [i for i in range(len(p2)) if i not in idx2]
    buckets = {}
    for key, val in t2.items():
        sig = tuple(key[i] for i in idx2)
        buckets.setdefault(sig, []).append((tuple(key[i] for i in keep2), val))
    out = {}
    for key, val in t1.items():
        sig = tuple(key[i] for i in idx1)
        for rest, val2 in buckets.get(sig, ()):
            nk = tuple(key[i] for i in keep1) + rest
            s = out.get(nk, Fraction(0)) + val * val2
            if s:
                out[nk] = s
            else:
                out.pop(nk, None)
    return out, out_ports


def _component_value(A: AlgebraInstance, vertices, edges, max_entries) -> Fraction:
    dim = A.dim
    vmap = {}
    for vi, tri in enumerate(vertices):
        for si, h in enumerate(tri):
            vmap[h] = vi
    vedges = [(vmap[a], vmap[b]) for a, b in edges]
    if any(u == v for u, v in vedges):
        return Fraction(0)

    # per-vertex sparse tensors over ports = half-edge ids, in triple order
    tensors = []
    ports = []
    for tri in vertices:
        data = {}
        for (a, b, c), val in A.f_lower.items():
            # f stored fully antisymmetrized: take entries in slot order
            data[(a, b, c)] = val
        tensors.append(data)
        ports.append(list(tri))

    # absorb the inverse metric into one end of each edge
    owner = list(range(len(vertices)))
    for (a, b) in edges:
        vi = vmap[a]
        tensors[vi] = _absorb_metric(tensors[vi], ports[vi], a, A.g_inv, dim)

    # port renaming: both ends of an edge get the same port label
    edge_of = {}
    for ei, (a, b) in enumerate(edges):
        edge_of[a] = ei
        edge_of[b] = ei
    for vi in range(len(vertices)):
        ports[vi] = [edge_of[h] for h in ports[vi]]

    order = _elimination_order(len(vertices), vedges)
    cur, cur_ports = tensors[order[0]], ports[order[0]]
    for vi in order[1:]:
        cur, cur_ports = _contract(cur, cur_ports, tensors[vi], ports[vi],
                                   dim, max_entries)
    if cur_ports:
        raise AssertionError("open ports after contracting a closed component")
    return cur.get((), Fraction(0))


_cache = {}


def eval_numeric(combo, A: AlgebraInstance, max_entries: int = DEFAULT_MAX_ENTRIES) -> Fraction:
    """Exact value of a 3-graph combo under one concrete algebra."""
    total = Fraction(0)
    items = combo.items() if hasattr(combo, "items") else [(None, Fraction(1), combo)]
    dim_adj = Fraction(A.dim)
    for _, coeff, d in items:
        if d.kind != "three-graph":
            raise ValueError("eval_numeric expects 3-graphs (apply pi_adj first)")
        value = dim_adj ** d.circles
        for comp_vertices, comp_edges in _components(d):
            sub = JacobiDiagram.make(vertices=comp_vertices, edges=comp_edges)
            ck = canonicalize(sub)
            if ck.is_zero:
                value = Fraction(0)
                break
            key = (A.family, A.rank, ck.key)
            got = _cache.get(key)
            if got is None:
                got = _component_value(A, ck.rep.vertices, ck.rep.edges, max_entries)
                _cache[key] = got
            value *= got * ck.sign
        total += coeff * value
    return total
