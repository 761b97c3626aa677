"""Measure spaces, frame maps and A-valued integration.

A :class:`MeasureSpace` is a finite union of intervals with Lebesgue
measure; each interval ("panel") is split into ``subdivisions`` equal cells
carrying a Gauss-Legendre rule of ``order`` nodes, so polynomials of degree
``2*order - 1`` are integrated exactly on every panel.

Frame maps ``Omega -> A^n`` are piecewise polynomial (one polynomial per
panel and per matrix entry) or tabulated at the quadrature nodes.  Every
map can :meth:`FrameMap.tabulate` itself on a space: per algebra block an
array of shape ``(N, k, n k)`` holding the row matrix of ``X(omega_q)``.
"""

from __future__ import annotations

from numbers import Number

import numpy as np

from .cstar import AlgebraElement, _frozen
from .errors import ShapeMismatch
from .module import ModuleVector

DEFAULT_ORDER = 8
DEFAULT_SUBDIVISIONS = 4
EXACTNESS_TOL = 1e-13


class MeasureSpace:
    """Finite union of disjoint intervals with a composite Gauss-Legendre rule.

    Parameters
    ----------
    panels : sequence of (float, float)
        Ordered, disjoint intervals ``[a_p, b_p]`` (shared endpoints allowed).
    order : int
        Gauss-Legendre nodes per cell.
    subdivisions : int
        Equal cells per panel.
    """

    def __init__(self, panels, order=DEFAULT_ORDER, subdivisions=DEFAULT_SUBDIVISIONS):
        panels = tuple((float(a), float(b)) for a, b in panels)
        if not panels:
            raise ValueError("a measure space needs at least one panel")
        for p, (a, b) in enumerate(panels):
            if not b > a:
                raise ValueError(f"panel {p} = [{a}, {b}] has nonpositive length")
            if p and a < panels[p - 1][1]:
                raise ValueError(f"panel {p} overlaps or precedes panel {p - 1}")
        if order < 1 or subdivisions < 1:
            raise ValueError("order and subdivisions must be positive")
        self.panels = panels
        self.order = int(order)
        self.subdivisions = int(subdivisions)

        t, w = np.polynomial.legendre.leggauss(self.order)
        nodes, weights, owner = [], [], []
        for p, (a, b) in enumerate(panels):
            edges = np.linspace(a, b, self.subdivisions + 1)
            for lo, hi in zip(edges[:-1], edges[1:]):
                half = (hi - lo) / 2
                mid = (hi + lo) / 2
                self._check_exactness(t, w, half)
                nodes.append(mid + half * t)
                weights.append(half * w)
                owner.append(np.full(self.order, p))
        self.nodes = _readonly(np.concatenate(nodes))
        self.weights = _readonly(np.concatenate(weights))
        self.panel_of_node = _readonly(np.concatenate(owner))

    def _check_exactness(self, t, w, half):
        # monomials in the cell-centred variable; the raw monomials span the same space
        for k in range(2 * self.order):
            exact = half * (1 + (-1) ** k) / (k + 1)
            approx = half * float(np.sum(w * t**k))
            if abs(approx - exact) > EXACTNESS_TOL * max(1.0, abs(exact)) * max(1.0, half):
                raise RuntimeError(f"quadrature rule fails exactness for degree {k}")

    @property
    def size(self):
        return self.nodes.shape[0]

    @property
    def measure(self):
        return sum(b - a for a, b in self.panels)

    def panel_measure(self, p):
        a, b = self.panels[p]
        return b - a

    def panel_index(self, omega):
        for p, (a, b) in enumerate(self.panels):
            if a <= omega <= b:
                return p
        raise ValueError(f"omega = {omega} lies outside every panel")

    def with_rule(self, order=None, subdivisions=None):
        return MeasureSpace(
            self.panels,
            self.order if order is None else order,
            self.subdivisions if subdivisions is None else subdivisions,
        )

    def refined(self):
        """Same panels with twice as many cells."""
        return self.with_rule(subdivisions=2 * self.subdivisions)

    def describe(self):
        return {
            "rule": "gauss-legendre",
            "order": self.order,
            "subdivisions": self.subdivisions,
            "panels": [list(p) for p in self.panels],
            "nodes": self.size,
        }

    def _key(self):
        return ("interval", self.panels, self.order, self.subdivisions)

    def __eq__(self, other):
        return isinstance(other, MeasureSpace) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"MeasureSpace({list(self.panels)}, order={self.order}, subdivisions={self.subdivisions})"


class ProductSpace:
    """Product measure space with the tensor grid of the factor rules.

    Node pairs are ordered lexicographically, left factor major.
    """

    def __init__(self, left, right):
        self.left = left
        self.right = right
        n1, n2 = left.size, right.size
        nodes = np.empty((n1 * n2, 2))
        nodes[:, 0] = np.repeat(left.nodes, n2)
        nodes[:, 1] = np.tile(right.nodes, n1)
        self.nodes = _readonly(nodes)
        self.weights = _readonly(np.outer(left.weights, right.weights).ravel())

    @property
    def size(self):
        return self.nodes.shape[0]

    @property
    def measure(self):
        return self.left.measure * self.right.measure

    def with_rule(self, order=None, subdivisions=None):
        return ProductSpace(self.left.with_rule(order, subdivisions), self.right.with_rule(order, subdivisions))

    def refined(self):
        return ProductSpace(self.left.refined(), self.right.refined())

    def describe(self):
        return {"product": [self.left.describe(), self.right.describe()], "nodes": self.size}

    def _key(self):
        return ("product", self.left._key(), self.right._key())

    def __eq__(self, other):
        return isinstance(other, ProductSpace) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"ProductSpace({self.left!r}, {self.right!r})"


def _readonly(arr):
    arr = np.asarray(arr)
    arr.setflags(write=False)
    return arr


def integrate_rows(values, space):
    """Weighted node sum of an ``(N, ...)`` array, in fixed node order."""
    values = np.asarray(values)
    if values.shape[0] != space.size:
        raise ShapeMismatch(f"{values.shape[0]} node values for a rule with {space.size} nodes")
    return np.tensordot(space.weights, values, axes=(0, 0))


def integrate_alg(values, space):
    """Integrate node-indexed algebra elements: ``sum_q w_q f(omega_q)``."""
    values = list(values)
    if len(values) != space.size:
        raise ShapeMismatch(f"{len(values)} node values for a rule with {space.size} nodes")
    desc = values[0].descriptor
    blocks = [integrate_rows(np.stack([v.blocks[b] for v in values]), space) for b in range(desc.n_blocks)]
    return AlgebraElement(desc, blocks)


def integrate_mod(values, space):
    """Integrate node-indexed module vectors componentwise."""
    values = list(values)
    if len(values) != space.size:
        raise ShapeMismatch(f"{len(values)} node values for a rule with {space.size} nodes")
    first = values[0]
    rows = [integrate_rows(np.stack([v.rows[b] for v in values]), space) for b in range(first.descriptor.n_blocks)]
    return ModuleVector(first.descriptor, first.rank, rows)


class FrameMap:
    """A weakly measurable map ``Omega -> A^n``.

    Subclasses implement :meth:`tabulate` and :meth:`__call__`.
    """

    descriptor = None
    rank = None

    def tabulate(self, space):
        raise NotImplementedError

    def __call__(self, omega):
        raise NotImplementedError

    def transform(self, T):
        """The map ``omega -> T X(omega)``."""
        _check_operator(self, T)
        return TransformedMap(self, T)

    def scaled(self, symbol):
        """The map ``omega -> m(omega) X(omega)``."""
        return ScaledMap(self, symbol)

    def values_at_nodes(self, space):
        """Tabulated values as a list of :class:`ModuleVector`."""
        tab = self.tabulate(space)
        return [
            ModuleVector(self.descriptor, self.rank, [t[q] for t in tab]) for q in range(space.size)
        ]

    def tabulated(self, space):
        return TabulatedMap(self.descriptor, self.rank, space, self.tabulate(space))


def _check_operator(X, T):
    if T.descriptor != X.descriptor or T.rank != X.rank:
        raise ShapeMismatch(f"operator on {T.descriptor}^{T.rank} cannot act on a map into {X.descriptor}^{X.rank}")


def _check_same_shape(X, Y):
    if X.descriptor != Y.descriptor or X.rank != Y.rank:
        raise ShapeMismatch(f"maps into {X.descriptor}^{X.rank} and {Y.descriptor}^{Y.rank}")


class PolynomialMap(FrameMap):
    """Piecewise-polynomial frame map.

    Parameters
    ----------
    descriptor : AlgebraDescriptor
    rank : int
    panels : sequence of (float, float)
        Pieces of the domain, matching the panels of the measure spaces the
        map is integrated over.
    coeffs : list over panels of list over blocks of arrays
        ``coeffs[p][b]`` has shape ``(deg + 1, k_b, rank * k_b)``: ascending
        powers of ``omega`` of the row matrix on panel ``p``.
    """

    def __init__(self, descriptor, rank, panels, coeffs):
        self.descriptor = descriptor
        self.rank = int(rank)
        self.panels = tuple((float(a), float(b)) for a, b in panels)
        if len(coeffs) != len(self.panels):
            raise ShapeMismatch(f"{len(coeffs)} coefficient sets for {len(self.panels)} panels")
        out = []
        for p, per_block in enumerate(coeffs):
            if len(per_block) != descriptor.n_blocks:
                raise ShapeMismatch(f"panel {p}: expected {descriptor.n_blocks} blocks")
            row = []
            for b, (c, k) in enumerate(zip(per_block, descriptor.block_sizes)):
                c = np.asarray(c, dtype=complex)
                if c.ndim != 3 or c.shape[1:] != (k, self.rank * k) or c.shape[0] < 1:
                    raise ShapeMismatch(f"panel {p} block {b}: coefficient shape {c.shape}")
                row.append(_frozen(c))
            out.append(tuple(row))
        self.coeffs = tuple(out)

    @classmethod
    def from_entries(cls, descriptor, panels, entries):
        """Build from entry-wise coefficients.

        ``entries[p][b]`` has shape ``(rank, k_b, k_b, deg + 1)``: for
        component ``j`` and matrix entry ``(r, c)`` of block ``b`` the ascending
        polynomial coefficients on panel ``p``.
        """
        coeffs = []
        rank = None
        for per_block in entries:
            row = []
            for c in per_block:
                c = np.asarray(c, dtype=complex)
                n, k, _, d = c.shape
                rank = n
                # (n, k, k, d) -> (d, k, n*k) with column index (j, c)
                row.append(np.transpose(c, (3, 1, 0, 2)).reshape(d, k, n * k))
            coeffs.append(row)
        return cls(descriptor, rank, panels, coeffs)

    @classmethod
    def constant(cls, panels, vector):
        coeffs = [[r[None, :, :] for r in vector.rows] for _ in panels]
        return cls(vector.descriptor, vector.rank, panels, coeffs)

    @property
    def degree(self):
        return max(c.shape[0] - 1 for per_block in self.coeffs for c in per_block)

    def _horner(self, p, b, omega):
        c = self.coeffs[p][b]
        omega = np.asarray(omega, dtype=float)
        acc = np.broadcast_to(c[-1], omega.shape + c.shape[1:]).astype(complex)
        for coef in c[-2::-1]:
            acc = acc * omega[..., None, None] + coef
        return acc

    def __call__(self, omega):
        omega = float(omega)
        for p, (a, b) in enumerate(self.panels):
            if a <= omega <= b:
                rows = [self._horner(p, blk, omega) for blk in range(self.descriptor.n_blocks)]
                return ModuleVector(self.descriptor, self.rank, rows)
        raise ValueError(f"omega = {omega} lies outside every panel")

    def tabulate(self, space):
        if not isinstance(space, MeasureSpace) or space.panels != self.panels:
            raise ShapeMismatch(f"map panels {list(self.panels)} do not match {space!r}")
        out = []
        for b, k in enumerate(self.descriptor.block_sizes):
            vals = np.empty((space.size, k, self.rank * k), complex)
            for p in range(len(self.panels)):
                idx = space.panel_of_node == p
                vals[idx] = self._horner(p, b, space.nodes[idx])
            out.append(vals)
        return tuple(out)

    def transform(self, T):
        _check_operator(self, T)
        coeffs = [[c @ rep for c, rep in zip(per_block, T.reps)] for per_block in self.coeffs]
        return PolynomialMap(self.descriptor, self.rank, self.panels, coeffs)

    def scaled(self, symbol):
        from .symbols import PolynomialSymbol

        if isinstance(symbol, Number):
            coeffs = [[symbol * c for c in per_block] for per_block in self.coeffs]
            return PolynomialMap(self.descriptor, self.rank, self.panels, coeffs)
        if isinstance(symbol, PolynomialSymbol) and symbol.panels == self.panels:
            coeffs = []
            for m, per_block in zip(symbol.coeffs, self.coeffs):
                row = []
                for c in per_block:
                    d = len(m) + c.shape[0] - 1
                    prod = np.zeros((d,) + c.shape[1:], complex)
                    for s, ms in enumerate(m):
                        prod[s:s + c.shape[0]] += ms * c
                    row.append(prod)
                coeffs.append(row)
            return PolynomialMap(self.descriptor, self.rank, self.panels, coeffs)
        return ScaledMap(self, symbol)

    def __add__(self, other):
        _check_same_shape(self, other)
        if not isinstance(other, PolynomialMap) or other.panels != self.panels:
            return NotImplemented
        coeffs = []
        for pa, pb in zip(self.coeffs, other.coeffs):
            row = []
            for a, b in zip(pa, pb):
                d = max(a.shape[0], b.shape[0])
                s = np.zeros((d,) + a.shape[1:], complex)
                s[:a.shape[0]] += a
                s[:b.shape[0]] += b
                row.append(s)
            coeffs.append(row)
        return PolynomialMap(self.descriptor, self.rank, self.panels, coeffs)

    def __repr__(self):
        return f"PolynomialMap(rank={self.rank}, {self.descriptor}, degree={self.degree}, panels={len(self.panels)})"


class TabulatedMap(FrameMap):
    """Frame map given by explicit values at the nodes of one space.

    The caller owns the discretization error of such maps.
    """

    def __init__(self, descriptor, rank, space, values):
        self.descriptor = descriptor
        self.rank = int(rank)
        self.space = space
        vals = []
        for b, (v, k) in enumerate(zip(values, descriptor.block_sizes)):
            v = np.asarray(v, dtype=complex)
            if v.shape != (space.size, k, self.rank * k):
                raise ShapeMismatch(f"block {b}: tabulated shape {v.shape}, expected {(space.size, k, self.rank * k)}")
            vals.append(_frozen(v))
        if len(vals) != descriptor.n_blocks:
            raise ShapeMismatch(f"expected {descriptor.n_blocks} blocks")
        self.values = tuple(vals)

    @classmethod
    def from_vectors(cls, space, vectors):
        vectors = list(vectors)
        if len(vectors) != space.size:
            raise ShapeMismatch(f"{len(vectors)} vectors for {space.size} nodes")
        v0 = vectors[0]
        values = [np.stack([v.rows[b] for v in vectors]) for b in range(v0.descriptor.n_blocks)]
        return cls(v0.descriptor, v0.rank, space, values)

    def tabulate(self, space):
        if space != self.space:
            raise ShapeMismatch("tabulated map evaluated on a different node set")
        return self.values

    def __call__(self, omega):
        pt = np.atleast_1d(np.asarray(omega, dtype=float))
        nodes = self.space.nodes.reshape(self.space.size, -1)
        hit = np.flatnonzero(np.all(nodes == pt, axis=1))
        if hit.size == 0:
            raise ValueError(f"omega = {omega} is not a node of the tabulation")
        q = hit[0]
        return ModuleVector(self.descriptor, self.rank, [v[q] for v in self.values])

    def transform(self, T):
        _check_operator(self, T)
        return TabulatedMap(self.descriptor, self.rank, self.space, [v @ r for v, r in zip(self.values, T.reps)])

    def __repr__(self):
        return f"TabulatedMap(rank={self.rank}, {self.descriptor}, nodes={self.space.size})"


class TransformedMap(FrameMap):
    """Pointwise image ``omega -> T X(omega)`` of an arbitrary map."""

    def __init__(self, base, T):
        _check_operator(base, T)
        self.base = base
        self.T = T
        self.descriptor = base.descriptor
        self.rank = base.rank

    def tabulate(self, space):
        return tuple(v @ r for v, r in zip(self.base.tabulate(space), self.T.reps))

    def __call__(self, omega):
        return self.T @ self.base(omega)

    def transform(self, T):
        return TransformedMap(self.base, self.T @ T)


class ScaledMap(FrameMap):
    """Pointwise product ``omega -> m(omega) X(omega)`` with a scalar symbol."""

    def __init__(self, base, symbol):
        self.base = base
        self.symbol = symbol
        self.descriptor = base.descriptor
        self.rank = base.rank

    def tabulate(self, space):
        m = self.symbol.tabulate(space)
        return tuple(m[:, None, None] * v for v in self.base.tabulate(space))

    def __call__(self, omega):
        return self.base(omega) * complex(self.symbol(omega))


def map_eval(X, omega):
    return X(omega)


def indicator_partition_map(space, parts, vectors):
    """Piecewise-constant map equal to ``v_j / sqrt(mu(part_j))`` on part ``j``.

    Parameters
    ----------
    space : MeasureSpace
    parts : list of list of int
        Panel indices; the parts must partition the panels of ``space``.
    vectors : list of ModuleVector
        One vector per part.
    """
    seen = sorted(p for part in parts for p in part)
    if seen != list(range(len(space.panels))):
        raise ValueError(f"parts {parts} do not partition {len(space.panels)} panels")
    if len(vectors) != len(parts):
        raise ValueError(f"{len(vectors)} vectors for {len(parts)} parts")
    v0 = vectors[0]
    per_panel = [None] * len(space.panels)
    for part, vec in zip(parts, vectors):
        scale = 1.0 / np.sqrt(sum(space.panel_measure(p) for p in part))
        for p in part:
            per_panel[p] = [scale * r[None, :, :] for r in vec.rows]
    return PolynomialMap(v0.descriptor, v0.rank, space.panels, per_panel)


__all__ = [
    "FrameMap",
    "MeasureSpace",
    "PolynomialMap",
    "ProductSpace",
    "ScaledMap",
    "TabulatedMap",
    "TransformedMap",
    "indicator_partition_map",
    "integrate_alg",
    "integrate_mod",
    "integrate_rows",
    "map_eval",
]
