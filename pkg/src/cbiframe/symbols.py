"""Scalar symbols ``m : Omega -> C`` for Bessel multipliers.

The sup norm of a symbol is estimated on a dense grid (``SUP_GRID`` points
per panel); consumers add a relative guard of ``SUP_GUARD`` on top.
"""

from __future__ import annotations

from numbers import Number

import numpy as np

from .errors import ShapeMismatch
from .quadrature import MeasureSpace, ProductSpace

SUP_GRID = 10_000
SUP_GUARD = 1e-6


class ConstantSymbol:
    """Constant symbol on any space, product spaces included."""

    def __init__(self, value):
        self.value = complex(value)

    def __call__(self, omega):
        return self.value

    def tabulate(self, space):
        return np.full(space.size, self.value)

    def conj(self):
        return ConstantSymbol(self.value.conjugate())

    def sup_norm(self):
        return abs(self.value)

    @property
    def sup_grid(self):
        return {"constant": True}

    def __repr__(self):
        return f"ConstantSymbol({self.value!r})"


class PolynomialSymbol:
    """Piecewise-polynomial symbol; ``coeffs[p]`` are ascending powers on panel ``p``."""

    def __init__(self, panels, coeffs):
        self.panels = tuple((float(a), float(b)) for a, b in panels)
        if len(coeffs) != len(self.panels):
            raise ShapeMismatch(f"{len(coeffs)} coefficient lists for {len(self.panels)} panels")
        self.coeffs = tuple(np.array(c, dtype=complex, ndmin=1) for c in coeffs)
        for c in self.coeffs:
            c.setflags(write=False)

    @classmethod
    def constant(cls, panels, value):
        return cls(panels, [[value] for _ in panels])

    def _eval(self, p, omega):
        return np.polynomial.polynomial.polyval(omega, self.coeffs[p])

    def __call__(self, omega):
        omega = float(omega)
        for p, (a, b) in enumerate(self.panels):
            if a <= omega <= b:
                return complex(self._eval(p, omega))
        raise ValueError(f"omega = {omega} lies outside every panel")

    def tabulate(self, space):
        if not isinstance(space, MeasureSpace) or space.panels != self.panels:
            raise ShapeMismatch(f"symbol panels {list(self.panels)} do not match {space!r}")
        out = np.empty(space.size, complex)
        for p in range(len(self.panels)):
            idx = space.panel_of_node == p
            out[idx] = self._eval(p, space.nodes[idx])
        return out

    def conj(self):
        return PolynomialSymbol(self.panels, [c.conj() for c in self.coeffs])

    def sup_norm(self):
        best = 0.0
        for p, (a, b) in enumerate(self.panels):
            grid = np.linspace(a, b, SUP_GRID)
            best = max(best, float(np.max(np.abs(self._eval(p, grid)))))
        return best

    @property
    def sup_grid(self):
        return {"points_per_panel": SUP_GRID, "panels": len(self.panels)}

    def __add__(self, other):
        if not isinstance(other, PolynomialSymbol) or other.panels != self.panels:
            return NotImplemented
        return PolynomialSymbol(self.panels, [np.polynomial.polynomial.polyadd(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return PolynomialSymbol(self.panels, [c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __repr__(self):
        return f"PolynomialSymbol(panels={len(self.panels)}, degree={max(len(c) for c in self.coeffs) - 1})"


class TabulatedSymbol:
    """Symbol given by its values at the nodes of one space."""

    def __init__(self, space, values):
        values = np.asarray(values, dtype=complex)
        if values.shape != (space.size,):
            raise ShapeMismatch(f"{values.shape} symbol values for {space.size} nodes")
        values.setflags(write=False)
        self.space = space
        self.values = values

    def __call__(self, omega):
        pt = np.atleast_1d(np.asarray(omega, dtype=float))
        nodes = self.space.nodes.reshape(self.space.size, -1)
        hit = np.flatnonzero(np.all(nodes == pt, axis=1))
        if hit.size == 0:
            raise ValueError(f"omega = {omega} is not a node of the tabulation")
        return complex(self.values[hit[0]])

    def tabulate(self, space):
        if space != self.space:
            raise ShapeMismatch("tabulated symbol evaluated on a different node set")
        return self.values

    def conj(self):
        return TabulatedSymbol(self.space, self.values.conj())

    def sup_norm(self):
        return float(np.max(np.abs(self.values)))

    @property
    def sup_grid(self):
        return {"points": self.space.size, "grid": "quadrature nodes"}

    def __add__(self, other):
        if not isinstance(other, TabulatedSymbol) or other.space != self.space:
            return NotImplemented
        return TabulatedSymbol(self.space, self.values + other.values)

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return TabulatedSymbol(self.space, c * self.values)

    __rmul__ = __mul__


class SeparableSymbol:
    """``m(w1, w2) = m1(w1) m2(w2)`` on a product space."""

    def __init__(self, left, right):
        self.left = left
        self.right = right

    def __call__(self, omega):
        w1, w2 = omega
        return self.left(w1) * self.right(w2)

    def tabulate(self, space):
        if not isinstance(space, ProductSpace):
            raise ShapeMismatch("separable symbols live on product spaces")
        return np.outer(self.left.tabulate(space.left), self.right.tabulate(space.right)).ravel()

    def conj(self):
        return SeparableSymbol(self.left.conj(), self.right.conj())

    def sup_norm(self):
        return self.left.sup_norm() * self.right.sup_norm()

    @property
    def sup_grid(self):
        return {"separable": [self.left.sup_grid, self.right.sup_grid]}


def as_symbol(m, panels):
    """Promote a complex number to a constant symbol on ``panels``."""
    if isinstance(m, Number):
        return PolynomialSymbol.constant(panels, m)
    return m
