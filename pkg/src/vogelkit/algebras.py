"""Explicit classical Lie algebra instances: bases, metrics, structure constants.

The metric is the trace form of the defining representation, which puts the
adjoint quadratic Casimir at 2t with t = N (sl_N), N-2 (so_N), N+1 (sp_2N),
matching the parameter table used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def _zeros(n):
    return [[Fraction(0)] * n for _ in range(n)]


def _E(n, i, j, val=1):
    m = _zeros(n)
    m[i][j] = Fraction(val)
    return m


def _madd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _msub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _sparse(m):
    return {(i, j): v for i, row in enumerate(m) for j, v in enumerate(row) if v}


def _mul_sparse(a, b):
    """Product of two sparse matrices given as dicts (i,j)->val."""
    bT = {}
    for (i, j), v in b.items():
        bT.setdefault(i, []).append((j, v))
    out = {}
    for (i, k), va in a.items():
        for j, vb in bT.get(k, ()):
            key = (i, j)
            s = out.get(key, Fraction(0)) + va * vb
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _trace_product(a, b):
    """tr(a.b) for sparse matrices."""
    s = Fraction(0)
    for (i, j), v in a.items():
        w = b.get((j, i))
        if w:
            s += v * w
    return s


def _basis_sl(n):
    out = [_E(n, i, j) for i in range(n) for j in range(n) if i != j]
    for i in range(n - 1):
        out.append(_msub(_E(n, i, i), _E(n, i + 1, i + 1)))
    return out


def _basis_so(n):
    return [_msub(_E(n, i, j), _E(n, j, i)) for i in range(n) for j in range(i + 1, n)]


def _basis_sp(n):
    """sp_2n in the block form [[A, B], [C, -A^T]], B and C symmetric."""
    d = 2 * n
    out = []
    for i in range(n):
        for j in range(n):
            m = _zeros(d)
            m[i][j] = Fraction(1)
            m[n + j][n + i] = Fraction(-1)
            out.append(m)
    for i in range(n):
        for j in range(i, n):
            m = _zeros(d)
            m[i][n + j] = Fraction(1)
            m[j][n + i] = Fraction(1)
            out.append(m)
            m = _zeros(d)
            m[n + i][j] = Fraction(1)
            m[n + j][i] = Fraction(1)
            out.append(m)
    return out


def _invert(mat):
    n = len(mat)
    a = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("metric is degenerate")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


@dataclass
class AlgebraInstance:
    """One classical algebra at a concrete rank, with exact tensors."""

    family: str
    rank: int
    basis: list = field(repr=False)          # sparse defining matrices
    g: list = field(repr=False)               # metric tr(T_a T_b)
    g_inv: list = field(repr=False)
    f_lower: dict = field(repr=False)          # (a,b,c) -> tr([T_a,T_b] T_c)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def t(self) -> Fraction:
        return {"sl": Fraction(self.rank), "so": Fraction(self.rank - 2),
                "sp": Fraction(self.rank + 1)}[self.family]

    def dual_basis(self):
        """T^a = sum_b g^{ab} T_b as sparse matrices."""
        out = []
        for a in range(self.dim):
            acc = {}
            for b in range(self.dim):
                coef = self.g_inv[a][b]
                if not coef:
                    continue
                for key, v in self.basis[b].items():
                    s = acc.get(key, Fraction(0)) + coef * v
                    if s:
                        acc[key] = s
                    else:
                        acc.pop(key, None)
            out.append(acc)
        return out

    def check_jacobi(self, samples=None) -> bool:
        """Spot-check [T_a,[T_b,T_c]] + cyclic = 0 on basis triples."""
        import itertools

        idx = range(self.dim) if samples is None else samples
        for a, b, c in itertools.islice(itertools.combinations(idx, 3), 200):
            A, B, C = self.basis[a], self.basis[b], self.basis[c]

            def brk(x, y):
                return {
                    k: v
                    for k, v in (
                        (k, _mul_sparse(x, y).get(k, Fraction(0)) - _mul_sparse(y, x).get(k, Fraction(0)))
                        for k in set(_mul_sparse(x, y)) | set(_mul_sparse(y, x))
                    )
                    if v
                }

            total = {}
            for x, y, z in ((A, B, C), (B, C, A), (C, A, B)):
                for k, v in brk(x, brk(y, z)).items():
                    s = total.get(k, Fraction(0)) + v
                    if s:
                        total[k] = s
                    else:
                        total.pop(k, None)
            if total:
                return False
        return True


def algebra(family: str, rank: int) -> AlgebraInstance:
    if family == "sl":
        if rank < 2:
            raise ValueError("sl needs rank >= 2")
        mats = _basis_sl(rank)
    elif family == "so":
        if rank < 2:
            raise ValueError("so needs rank >= 2")
        mats = _basis_so(rank)
    elif family == "sp":
        if rank < 1:
            raise ValueError("sp needs rank >= 1")
        mats = _basis_sp(rank)
    else:
        raise ValueError(f"unknown family {family!r}")
    basis = [_sparse(m) for m in mats]
    dim = len(basis)
    # Metric normalization putting the adjoint Casimir at 2t with Table-style
    # t: the defining trace form works for sl/sp, but so_N needs half of it
    # (Killing = (N-2) tr for so_N versus 2N tr for sl_N).
    scale = Fraction(1, 2) if family == "so" else Fraction(1)

    # index basis elements by support for fast metric/bracket decomposition
    support = {}
    for a, mat in enumerate(basis):
        for key in mat:
            support.setdefault(key, []).append(a)

    g = [[Fraction(0)] * dim for _ in range(dim)]
    for a in range(dim):
        cands = set()
        for (i, j) in basis[a]:
            cands.update(support.get((j, i), ()))
        for b in cands:
            if b >= a:
                val = scale * _trace_product(basis[a], basis[b])
                g[a][b] = val
                g[b][a] = val
    g_inv = _invert(g)

    f_lower = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            ab = _mul_sparse(basis[a], basis[b])
            ba = _mul_sparse(basis[b], basis[a])
            comm = dict(ab)
            for k, v in ba.items():
                s = comm.get(k, Fraction(0)) - v
                if s:
                    comm[k] = s
                else:
                    comm.pop(k, None)
            if not comm:
                continue
            cands = set()
            for (i, j) in comm:
                cands.update(support.get((j, i), ()))
            for c in sorted(cands):
                val = scale * _trace_product(comm, basis[c])
                if val:
                    # store all permutations with total antisymmetry
                    f_lower[(a, b, c)] = val
                    f_lower[(b, c, a)] = val
                    f_lower[(c, a, b)] = val
                    f_lower[(b, a, c)] = -val
                    f_lower[(a, c, b)] = -val
                    f_lower[(c, b, a)] = -val
    return AlgebraInstance(family=family, rank=rank, basis=basis, g=g,
                           g_inv=g_inv, f_lower=f_lower)
