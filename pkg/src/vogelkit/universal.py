"""Universal polynomials in (t, sigma, omega) and fitting of 3-graph values.

A 3-graph combo with 2k vertices per connected diagram evaluates, for every
classical family, to dim * p(t, sigma, omega) with p homogeneous of graded
degree k (grading t:1, sigma:2, omega:3).  ``fit_universal`` recovers p by
solving the exact linear system obtained from matching family values as
polynomials in the rank N.
"""

from __future__ import annotations

from fractions import Fraction

from .combo import DiagramCombo
from .diagram import JacobiDiagram
from .families import FAMILIES, FamilyPolynomial, eval_family, _components
from .polynomials import QPoly, solve_exact
from .relations import bubble_factor


class InconsistentFit(ValueError):
    """No universal polynomial matches all classical families."""


class UnderdeterminedFit(ValueError):
    """Classical-family data does not pin the fit; carries rank diagnostics."""

    def __init__(self, message, monomials=None, nullspace=None, diagnostics=None):
        super().__init__(message)
        self.monomials = monomials or []
        self.nullspace = nullspace or []
        self.diagnostics = diagnostics or {}


_VARS = ("t", "s", "w")


class UniversalPolynomial:
    """Exact-rational polynomial on monomials t^a sigma^b omega^c."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, v in terms.items():
                v = Fraction(v)
                if v:
                    self.terms[tuple(key)] = v

    @staticmethod
    def monomial(a, b, c, coeff=1) -> "UniversalPolynomial":
        return UniversalPolynomial({(a, b, c): Fraction(coeff)})

    def __eq__(self, other):
        if not isinstance(other, UniversalPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return UniversalPolynomial(out)

    def __sub__(self, other):
        return self + (other * Fraction(-1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniversalPolynomial(
                {k: v * Fraction(other) for k, v in self.terms.items()})
        out = {}
        for (a1, b1, c1), v1 in self.terms.items():
            for (a2, b2, c2), v2 in other.terms.items():
                k = (a1 + a2, b1 + b2, c1 + c2)
                s = out.get(k, Fraction(0)) + v1 * v2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return UniversalPolynomial(out)

    __rmul__ = __mul__

    @property
    def is_zero(self):
        return not self.terms

    def graded_degrees(self):
        return sorted({a + 2 * b + 3 * c for (a, b, c) in self.terms})

    def evaluate(self, t, sigma, omega):
        tot = Fraction(0) * t if not isinstance(t, Fraction) else Fraction(0)
        for (a, b, c), v in self.terms.items():
            tot = tot + v * t ** a * sigma ** b * omega ** c
        return tot

    # -- serialization: monomial maps like {"t^4": "20/3", "t*w": "-3"} ------

    @staticmethod
    def _mono_name(key) -> str:
        parts = []
        for x, e in zip(_VARS, key):
            if e == 1:
                parts.append(x)
            elif e > 1:
                parts.append(f"{x}^{e}")
        return "*".join(parts) if parts else "1"

    @staticmethod
    def _parse_mono(name: str):
        if name == "1":
            return (0, 0, 0)
        out = {"t": 0, "s": 0, "w": 0}
        for part in name.split("*"):
            if "^" in part:
                x, e = part.split("^")
                out[x] += int(e)
            else:
                out[part] += 1
        return (out["t"], out["s"], out["w"])

    def to_json_map(self) -> dict:
        return {
            self._mono_name(k): str(v)
            for k, v in sorted(self.terms.items(), reverse=True)
        }

    @staticmethod
    def from_json_map(m: dict) -> "UniversalPolynomial":
        return UniversalPolynomial(
            {UniversalPolynomial._parse_mono(k): Fraction(v) for k, v in m.items()})

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: (-(k[0] + 2 * k[1] + 3 * k[2]), k)):
            v = self.terms[k]
            name = self._mono_name(k)
            if name == "1":
                parts.append(str(v))
            elif v == 1:
                parts.append(name)
            elif v == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{v}*{name}")
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return s

    def __repr__(self):
        return f"UniversalPolynomial({self.to_string()})"


def vogel_substitute(p: UniversalPolynomial, alpha, beta, gamma):
    """Evaluate p after converting (alpha, beta, gamma) to (t, sigma, omega)."""
    alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
    t = alpha + beta + gamma
    sigma = 2 * t * t + (alpha * beta + beta * gamma + alpha * gamma)
    omega = t * sigma + alpha * beta * gamma
    return p.evaluate(t, sigma, omega)


# --------------------------------------------------------------------------
# family values with bubble factorization (weight-system semantics)


def family_value(combo, family: str) -> FamilyPolynomial:
    """eval_family accelerated by collapsing bubbles to (2t) factors first."""
    spec = FAMILIES[family]
    twot = spec.t * 2
    total = QPoly()
    items = combo.items() if hasattr(combo, "items") else [(None, Fraction(1), combo)]
    for _, coeff, d in items:
        br = bubble_factor(d)
        val = eval_family(br.reduced, family).poly
        total = total + val * (twot ** br.count) * (coeff * br.sign)
    return FamilyPolynomial(family, total)


# --------------------------------------------------------------------------
# fitting


def monomials_of_degree(k: int):
    """Graded-degree-k monomial exponents (a, b, c) with a + 2b + 3c = k."""
    out = []
    for c in range(k // 3 + 1):
        for b in range((k - 3 * c) // 2 + 1):
            a = k - 2 * b - 3 * c
            out.append((a, b, c))
    return sorted(out, reverse=True)


def _check_fittable(d: JacobiDiagram):
    ncomp = sum(1 for _ in _components(d))
    if ncomp + d.circles != 1:
        raise InconsistentFit(
            "diagram value is not of the form dim * polynomial "
            f"({ncomp} components, {d.circles} circles)")


def fit_universal(combo, families=("sl", "so", "sp")) -> UniversalPolynomial:
    """Fit dim * p(t, sigma, omega) to the classical family values of a combo.

    The combo is split into homogeneous parts by vertex count; each part is
    fitted on the graded-degree monomial basis and the results are summed.
    Raises InconsistentFit / UnderdeterminedFit with diagnostics.
    """
    if isinstance(combo, JacobiDiagram):
        combo = DiagramCombo.of(combo)
    parts = {}
    for key, coeff, d in combo.items():
        if d.kind != "three-graph":
            raise ValueError("fit_universal expects 3-graphs")
        if d.n_vertices % 2:
            raise InconsistentFit("odd vertex count has no graded degree")
        _check_fittable(d)
        parts.setdefault(d.n_vertices // 2, DiagramCombo())._add_canonical(
            coeff, key, d)
    total = UniversalPolynomial()
    for k, part in sorted(parts.items()):
        total = total + _fit_homogeneous(part, k, families)
    return total


def _fit_homogeneous(part, k, families) -> UniversalPolynomial:
    monos = monomials_of_degree(k)
    rows = []
    rhs = []
    for fam in families:
        spec = FAMILIES[fam]
        cols = []
        for (a, b, c) in monos:
            cols.append(spec.dim * spec.t ** a * spec.sigma ** b * spec.omega ** c)
        value = family_value(part, fam).poly
        degs = set(value.c)
        for col in cols:
            degs.update(col.c)
        for e in sorted(degs):
            rows.append([col.c.get(e, Fraction(0)) for col in cols])
            rhs.append(value.c.get(e, Fraction(0)))
    try:
        sol, pivots, null = solve_exact(rows, rhs)
    except ValueError:
        raise InconsistentFit(
            f"no universal polynomial of graded degree {k} matches the "
            f"families {families}") from None
    if null:
        null_polys = [
            UniversalPolynomial({m: v for m, v in zip(monos, vec)}) for vec in null
        ]
        from .families import EXCEPTIONAL_ROWS

        diag = {
            name: [str(vogel_substitute(q, *row)) for q in null_polys]
            for name, row in EXCEPTIONAL_ROWS.items()
        }
        raise UnderdeterminedFit(
            f"rank {len(pivots)} < {len(monos)} monomials at graded degree {k}; "
            "exceptional-row values would be needed to pin the remainder",
            monomials=monos,
            nullspace=null_polys,
            diagnostics=diag,
        )
    return UniversalPolynomial({m: v for m, v in zip(monos, sol)})
