"""Exact linear combinations of canonicalized Jacobi diagrams.

Coefficients are duck-typed: Fraction for most pipelines, polynomials in the
torus-knot parameter n for the knot series.  A coefficient must support +, *,
negation and comparison with 0.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import JacobiDiagram, canonicalize, disjoint_union


def _is_zero(c) -> bool:
    return c == 0


class DiagramCombo:
    """Finite map from canonical diagram keys to exact coefficients."""

    __slots__ = ("_terms",)

    def __init__(self):
        self._terms = {}  # key -> [coeff, representative JacobiDiagram]

    @staticmethod
    def zero() -> "DiagramCombo":
        return DiagramCombo()

    @staticmethod
    def of(diagram: JacobiDiagram, coeff=Fraction(1)) -> "DiagramCombo":
        c = DiagramCombo()
        c.add_term(coeff, diagram)
        return c

    @staticmethod
    def from_terms(terms) -> "DiagramCombo":
        c = DiagramCombo()
        for coeff, d in terms:
            c.add_term(coeff, d)
        return c

    def add_term(self, coeff, diagram: JacobiDiagram) -> None:
        form = canonicalize(diagram)
        if form.is_zero or _is_zero(coeff):
            return
        self._add_canonical(coeff * form.sign, form.key, form.rep)

    def _add_canonical(self, coeff, key, rep) -> None:
        cur = self._terms.get(key)
        if cur is None:
            self._terms[key] = [coeff, rep]
        else:
            s = cur[0] + coeff
            if _is_zero(s):
                del self._terms[key]
            else:
                cur[0] = s

    # -- ring-ish operations -------------------------------------------------

    def __add__(self, other: "DiagramCombo") -> "DiagramCombo":
        out = DiagramCombo()
        for key, (c, rep) in self._terms.items():
            out._add_canonical(c, key, rep)
        for key, (c, rep) in other._terms.items():
            out._add_canonical(c, key, rep)
        return out

    def __sub__(self, other: "DiagramCombo") -> "DiagramCombo":
        return self + (other * Fraction(-1))

    def __mul__(self, scalar) -> "DiagramCombo":
        out = DiagramCombo()
        if _is_zero(scalar):
            return out
        for key, (c, rep) in self._terms.items():
            out._add_canonical(c * scalar, key, rep)
        return out

    __rmul__ = __mul__

    def __neg__(self) -> "DiagramCombo":
        return self * Fraction(-1)

    def disjoint(self, other: "DiagramCombo") -> "DiagramCombo":
        """Bilinear extension of the disjoint-union product."""
        out = DiagramCombo()
        for _, (ca, da) in self._terms.items():
            for _, (cb, db) in other._terms.items():
                out.add_term(ca * cb, disjoint_union(da, db))
        return out

    # -- inspection -----------------------------------------------------------

    def items(self):
        """Deterministic iteration: (key, coeff, representative)."""
        for key in sorted(self._terms):
            c, rep = self._terms[key]
            yield key, c, rep

    def terms(self):
        return [(c, rep) for _, c, rep in self.items()]

    def coeff(self, diagram: JacobiDiagram):
        form = canonicalize(diagram)
        if form.is_zero:
            return Fraction(0)
        got = self._terms.get(form.key)
        if got is None:
            return Fraction(0)
        return got[0] * form.sign

    def map_diagrams(self, fn) -> "DiagramCombo":
        """Apply fn(rep) -> JacobiDiagram | DiagramCombo linearly."""
        out = DiagramCombo()
        for _, c, rep in self.items():
            img = fn(rep)
            if isinstance(img, JacobiDiagram):
                out.add_term(c, img)
            else:
                for _, c2, rep2 in img.items():
                    out.add_term(c * c2, rep2)
        return out

    def map_coeffs(self, fn) -> "DiagramCombo":
        out = DiagramCombo()
        for key, c, rep in self.items():
            c2 = fn(c)
            if not _is_zero(c2):
                out._add_canonical(c2, key, rep)
        return out

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagramCombo):
            return NotImplemented
        if set(self._terms) != set(other._terms):
            return False
        return all(self._terms[k][0] == other._terms[k][0] for k in self._terms)

    def __repr__(self) -> str:
        n = len(self._terms)
        return f"DiagramCombo({n} term{'s' if n != 1 else ''})"
