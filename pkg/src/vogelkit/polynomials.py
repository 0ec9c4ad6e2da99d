"""Small exact polynomial helpers: univariate Laurent polynomials over Q.

One class serves several roles: values of family weight systems (variable N),
torus-knot series coefficients (variable n), and intermediate Laurent
coefficients inside the strand state sum (1/N corrections for sl).
"""

from __future__ import annotations

from fractions import Fraction


class QPoly:
    """Laurent polynomial over Q in one unnamed variable, dict exponent -> coeff."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = Fraction(v)
                if v:
                    self.c[int(e)] = v

    @staticmethod
    def const(v) -> "QPoly":
        return QPoly({0: Fraction(v)})

    @staticmethod
    def var() -> "QPoly":
        return QPoly({1: Fraction(1)})

    @staticmethod
    def linear(const, slope) -> "QPoly":
        return QPoly({0: Fraction(const), 1: Fraction(slope)})

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        out = dict(self.c)
        for e, v in other.c.items():
            s = out.get(e, Fraction(0)) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = QPoly()
        r.c = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = QPoly()
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return QPoly()
            r = QPoly()
            r.c = {e: v * other for e, v in self.c.items()}
            return r
        if not isinstance(other, QPoly):
            return NotImplemented
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + v1 * v2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        r = QPoly()
        r.c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        r = QPoly.const(1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def shift(self, k: int) -> "QPoly":
        r = QPoly()
        r.c = {e + k: v for e, v in self.c.items()}
        return r

    def __call__(self, x):
        out = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for e, v in self.c.items():
            if e >= 0:
                out = out + v * x ** e
            else:
                out = out + v / (x ** (-e))
        return out

    @property
    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self.c)

    @property
    def degree(self):
        return max(self.c) if self.c else None

    def to_string(self, var: str = "N") -> str:
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            v = self.c[e]
            if e == 0:
                term = str(v)
            else:
                mag = "" if abs(v) == 1 else f"{abs(v)}*"
                sgn = "-" if v < 0 else ""
                pw = var if e == 1 else f"{var}^{e}"
                term = f"{sgn}{mag}{pw}"
            parts.append(term)
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return s

    def __repr__(self):
        return f"QPoly({self.to_string('x')})"


def solve_exact(rows, rhs):
    """Solve an exact linear system by Gaussian elimination over Q.

    Returns (solution, pivots, nullspace_basis). Raises ValueError("inconsistent")
    if no solution exists. ``solution`` is a particular solution with free
    variables set to zero; uniqueness holds iff nullspace_basis is empty.
    """
    m = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols]:
            raise ValueError("inconsistent")
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = m[i][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    null = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -m[i][fc]
        null.append(vec)
    return sol, pivots, null
