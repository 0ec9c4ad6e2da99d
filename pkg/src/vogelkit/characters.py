"""Character-level formulas on Vogel parameters: dimension, Casimirs, zero divisors.

Everything here is arithmetic in (alpha, beta, gamma) — exact rationals or
sympy expressions — with (t, sigma, omega) derived as in the standard
parameterization: t = e1, sigma = 2 t^2 + e2, omega = t sigma + e3.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import sympy


class DegeneratePoint(ValueError):
    """A formula's denominator vanishes at this parameter point."""


def _is_symbolic(x) -> bool:
    return isinstance(x, sympy.Basic)


@dataclass(frozen=True)
class VogelPoint:
    alpha: object
    beta: object
    gamma: object

    @staticmethod
    def make(alpha, beta, gamma) -> "VogelPoint":
        vals = (alpha, beta, gamma)
        if any(_is_symbolic(v) for v in vals):
            return VogelPoint(*(sympy.sympify(v) for v in vals))
        return VogelPoint(*(Fraction(v) for v in vals))

    @staticmethod
    def symbolic() -> "VogelPoint":
        return VogelPoint(*sympy.symbols("alpha beta gamma"))

    @property
    def symbolic_mode(self) -> bool:
        return _is_symbolic(self.alpha)

    @property
    def t(self):
        return self.alpha + self.beta + self.gamma

    @property
    def e2(self):
        return self.alpha * self.beta + self.beta * self.gamma + self.alpha * self.gamma

    @property
    def e3(self):
        return self.alpha * self.beta * self.gamma

    @property
    def sigma(self):
        return 2 * self.t * self.t + self.e2

    @property
    def omega(self):
        return self.t * self.sigma + self.e3

    def scaled(self, lam) -> "VogelPoint":
        return VogelPoint.make(self.alpha * lam, self.beta * lam, self.gamma * lam)

    def permuted(self, perm) -> "VogelPoint":
        vals = (self.alpha, self.beta, self.gamma)
        return VogelPoint(*(vals[i] for i in perm))


# --------------------------------------------------------------------------
# Table-1 registry


def _load_table():
    text = resources.files("vogelkit.data").joinpath("table1.json").read_text()
    return json.loads(text)


_TABLE = _load_table()

EXCEPTIONAL = {
    name: VogelPoint.make(*row) for name, row in _TABLE["exceptional"].items()
}

_FAMILY_RE = re.compile(r"^(sl|so|sp)\((\d+)\)$")


def named_point(name: str) -> VogelPoint:
    """Parameter point for names like 'sl(5)', 'so(7)', 'sp(6)' or 'e8'."""
    name = name.strip()
    if name in EXCEPTIONAL:
        return EXCEPTIONAL[name]
    m = _FAMILY_RE.match(name.replace(" ", ""))
    if not m:
        raise KeyError(f"unknown algebra name {name!r}")
    fam, arg = m.group(1), int(m.group(2))
    row = _TABLE["families"][fam]
    if fam == "sp":
        if arg % 2:
            raise KeyError("sp(2N) needs an even argument")
        n = arg // 2
    else:
        n = arg

    def lin(entry):
        return Fraction(entry[0]) + Fraction(entry[1]) * n

    return VogelPoint.make(lin(row["alpha"]), lin(row["beta"]), lin(row["gamma"]))


def classical_points(family: str, ranks) -> list:
    return [named_point(f"{family}({2 * r if family == 'sp' else r})") for r in ranks]


def all_table_rows() -> dict:
    """Every Table-1 row used by the verification suites."""
    rows = {}
    for n in range(2, 9):
        rows[f"sl({n})"] = named_point(f"sl({n})")
    for n in range(5, 10):
        rows[f"so({n})"] = named_point(f"so({n})")
    for n in range(2, 5):
        rows[f"sp({2 * n})"] = named_point(f"sp({2 * n})")
    for name in EXCEPTIONAL:
        rows[name] = EXCEPTIONAL[name]
    return rows


# --------------------------------------------------------------------------
# universal dimension


def universal_dim(v: VogelPoint):
    """(omega - 3 t sigma)/(omega - t sigma), asserted equal to the factored form."""
    t, sigma, omega = v.t, v.sigma, v.omega
    e3 = v.e3
    if v.symbolic_mode:
        form1 = (omega - 3 * t * sigma) / (omega - t * sigma)
        form2 = ((v.alpha - 2 * t) * (v.beta - 2 * t) * (v.gamma - 2 * t)) / e3
        if sympy.simplify(form1 - form2) != 0:
            raise AssertionError("dimension forms disagree symbolically")
        return sympy.simplify(form1)
    if e3 == 0 or omega == t * sigma:
        raise DegeneratePoint("alpha*beta*gamma = 0 or omega = t*sigma")
    form1 = (omega - 3 * t * sigma) / (omega - t * sigma)
    form2 = ((v.alpha - 2 * t) * (v.beta - 2 * t) * (v.gamma - 2 * t)) / e3
    if form1 != form2:
        raise AssertionError("dimension forms disagree")
    return form1


# --------------------------------------------------------------------------
# x̂_n characters: recurrence and closed form


def chi_x(n: int, v: VogelPoint):
    """Character of the n-th wheel-generator element by the linear recurrence.

    Seeds: 0, 2t, t^2; thereafter
    x_{m+3} = e1 x_{m+2} - e2 x_{m+1} + e3 x_m
              + e2 e1^{m+1}/2 - e3 e1^m / 2 - e3 (2 e1)^m.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    t, e2, e3 = v.t, v.e2, v.e3
    seq = [0 * t, 2 * t, t * t]
    for m in range(0, n - 2):
        nxt = (t * seq[m + 2] - e2 * seq[m + 1] + e3 * seq[m]
               + e2 * t ** (m + 1) / 2 - e3 * t ** m / 2 - e3 * (2 * t) ** m)
        seq.append(nxt)
    return seq[n] if n < 3 else seq[n]


def chi_x_closed(n: int, v: VogelPoint):
    """Closed form of chi_x; raises DegeneratePoint on repeated roots etc."""
    a, b, g = v.alpha, v.beta, v.gamma
    t, e3 = v.t, v.e3
    if not v.symbolic_mode:
        if (a - b) * (a - g) * (b - g) == 0:
            raise DegeneratePoint("repeated Vogel parameters")
        if (2 * t - a) * (2 * t - b) * (2 * t - g) == 0 or e3 == 0:
            raise DegeneratePoint("vanishing closed-form denominator")
    dim = universal_dim(v)

    def c_coef(x, y, z):
        num = -(-t * t * (dim - 8) + (2 + dim) * y * z + (3 * dim - 4) * t * (y + z))
        return num / (2 * dim * (x - y) * (x - z))

    ca = c_coef(a, b, g)
    cb = c_coef(b, a, g)
    cg = c_coef(g, a, b)
    val = (-e3 * (2 * t) ** n / ((2 * t - a) * (2 * t - b) * (2 * t - g))
           + t ** n / 2 + ca * a ** n + cb * b ** n + cg * g ** n)
    return sympy.simplify(val) if v.symbolic_mode else val


def chi_x_best(n: int, v: VogelPoint):
    """Closed form when nondegenerate, recurrence otherwise."""
    try:
        return chi_x_closed(n, v)
    except DegeneratePoint:
        return chi_x(n, v)


# --------------------------------------------------------------------------
# Casimir eigenvalues and generating function


def casimir_eigenvalue(p: int, v: VogelPoint):
    """C_p = 2 (-1)^p t chi(x_{p-1}) (adjoint higher Casimir)."""
    if p < 1:
        raise ValueError("p must be positive")
    return 2 * (-1) ** p * v.t * chi_x(p - 1, v)


class CharacterSeries:
    """Truncated exact power series in z."""

    def __init__(self, coeffs, order):
        self.coeffs = list(coeffs[: order + 1])
        while len(self.coeffs) < order + 1:
            self.coeffs.append(Fraction(0))
        self.order = order

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        return self.order == other.order and self.coeffs == other.coeffs


def _series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if i > order or not x:
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            out[i + j] += x * y
    return out


def _series_inv(a, order):
    if not a[0]:
        raise DegeneratePoint("series has no constant term")
    inv = [Fraction(0)] * (order + 1)
    inv[0] = 1 / a[0]
    for k in range(1, order + 1):
        s = Fraction(0)
        for j in range(1, k + 1):
            if j < len(a) and a[j]:
                s += a[j] * inv[k - j]
        inv[k] = -s / a[0]
    return inv


def casimir_series(v: VogelPoint, order: int) -> CharacterSeries:
    """Generating function of Killing-normalized Casimirs, expanded exactly.

    C(z) = dim + z^2 (96 t^3 + 168 t^3 z + 6 (14 t^3 + t t2 - t3) z^2
                      + (13 t^3 + 3 t t2 - 4 t3) z^3)
                 / (6 (2t + alpha z)(2t + beta z)(2t + gamma z)(2 + z)(1 + z)),
    asserted coefficient-by-coefficient equal to
    dim + sum_k chi(x_k) (-z)^{k+1} / (2t)^k.
    """
    if v.symbolic_mode:
        raise ValueError("use verify.generating_function_identity for symbolic checks")
    a, b, g = v.alpha, v.beta, v.gamma
    t = v.t
    if t == 0 or (2 * t + a) == 0 or (2 * t + b) == 0 or (2 * t + g) == 0:
        raise DegeneratePoint("vanishing generating-function denominator")
    t2 = a * a + b * b + g * g
    t3 = a ** 3 + b ** 3 + g ** 3
    dim = universal_dim(v)

    num = [Fraction(0)] * (order + 1)
    vals = [96 * t ** 3, 168 * t ** 3, 6 * (14 * t ** 3 + t * t2 - t3),
            13 * t ** 3 + 3 * t * t2 - 4 * t3]
    for i, c in enumerate(vals):
        if i + 2 <= order:
            num[i + 2] = Fraction(c)

    den = [Fraction(6)]
    for lin in ((2 * t, a), (2 * t, b), (2 * t, g), (2, 1), (1, 1)):
        den = _series_mul(den, [Fraction(lin[0]), Fraction(lin[1])], order)
    series = _series_mul(num, _series_inv(den, order), order)
    series[0] += dim

    # comparison identity against the character sum
    check = [Fraction(0)] * (order + 1)
    check[0] = dim
    for k in range(1, order):
        term = chi_x(k, v) / (2 * t) ** k
        check[k + 1] = term * (-1) ** (k + 1)
    if series != check:
        raise AssertionError("generating function disagrees with character sum")
    return CharacterSeries(series, order)


# --------------------------------------------------------------------------
# zero-divisor polynomials


def zero_divisor_polys(v: VogelPoint):
    """(P_sl, P_osp, P_exc): symmetric polynomials vanishing on family loci."""
    a, b, g = v.alpha, v.beta, v.gamma
    p_sl = (a + b) * (b + g) * (a + g)
    p_osp = ((a + 2 * b) * (2 * a + b) * (b + 2 * g)
             * (2 * b + g) * (a + 2 * g) * (2 * a + g))
    p_exc = (a - 2 * b - 2 * g) * (b - 2 * a - 2 * g) * (g - 2 * a - 2 * b)
    return p_sl, p_osp, p_exc
