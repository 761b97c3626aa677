"""The free Hilbert A-module H = A^n and adjointable operators on it.

Storage convention
------------------
A vector ``x = (x_1, ..., x_n)`` is kept, per algebra block ``b``, as the
``k_b x n k_b`` row matrix ``[x_1 | x_2 | ... | x_n]``.  With this layout

* the left action is ``a . x -> a_b @ row_b``,
* the inner product ``<x, y> = sum_k x_k y_k*`` is ``row_b(x) @ row_b(y)^H``,
* an adjointable operator with entries ``c[j][i]`` acting by
  ``(Tx)_i = sum_j x_j c[j][i]`` is right multiplication by the
  ``n k_b x n k_b`` block matrix whose ``(j, i)`` block is ``c[j][i]_b``.

Operators are stored as those per-block representation matrices, so
A-linearity holds by construction.
"""

from __future__ import annotations

from numbers import Number

import numpy as np

from .cstar import DEFAULT_TOL, AlgebraElement, _complex_gaussian, _frozen
from .errors import DescriptorMismatch, NotSelfAdjointError, ShapeMismatch, SingularError

COND_CAP = 1e12


class ModuleVector:
    """An element of ``A^n``."""

    __slots__ = ("descriptor", "rank", "rows")

    def __init__(self, descriptor, rank, rows):
        rows = tuple(_frozen(r) for r in rows)
        if rank < 1:
            raise ShapeMismatch("module rank must be at least 1")
        if len(rows) != descriptor.n_blocks:
            raise DescriptorMismatch(f"expected {descriptor.n_blocks} blocks, got {len(rows)}")
        for b, (r, k) in enumerate(zip(rows, descriptor.block_sizes)):
            if r.shape != (k, rank * k):
                raise ShapeMismatch(f"block {b} row has shape {r.shape}, expected {(k, rank * k)}")
        self.descriptor = descriptor
        self.rank = rank
        self.rows = rows

    @classmethod
    def from_components(cls, components):
        components = list(components)
        if not components:
            raise ShapeMismatch("a module vector needs at least one component")
        desc = components[0].descriptor
        for c in components:
            if c.descriptor != desc:
                raise DescriptorMismatch("components live in different algebras")
        rows = [np.concatenate([c.blocks[b] for c in components], axis=1) for b in range(desc.n_blocks)]
        return cls(desc, len(components), rows)

    @classmethod
    def zero(cls, descriptor, rank):
        return cls(descriptor, rank, [np.zeros((k, rank * k), complex) for k in descriptor.block_sizes])

    @classmethod
    def basis(cls, descriptor, rank, j):
        """``e_j`` with ``1_A`` in component ``j``."""
        comps = [descriptor.one() if i == j else descriptor.zero() for i in range(rank)]
        return cls.from_components(comps)

    @classmethod
    def random(cls, descriptor, rank, rng):
        """Probe vector with independent standard complex Gaussian entries."""
        return cls(descriptor, rank, [_complex_gaussian(rng, (k, rank * k)) for k in descriptor.block_sizes])

    def component(self, j):
        return AlgebraElement(
            self.descriptor,
            [r[:, j * k:(j + 1) * k] for r, k in zip(self.rows, self.descriptor.block_sizes)],
        )

    @property
    def components(self):
        return [self.component(j) for j in range(self.rank)]

    def _check(self, other):
        if other.descriptor != self.descriptor:
            raise DescriptorMismatch(f"{self.descriptor} vs {other.descriptor}")
        if other.rank != self.rank:
            raise ShapeMismatch(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        return ModuleVector(self.descriptor, self.rank, [a + b for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return ModuleVector(self.descriptor, self.rank, [a - b for a, b in zip(self.rows, other.rows)])

    def __neg__(self):
        return ModuleVector(self.descriptor, self.rank, [-a for a in self.rows])

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return ModuleVector(self.descriptor, self.rank, [c * a for a in self.rows])

    def __rmul__(self, a):
        # a . x: scalar scaling or the left A-action
        if isinstance(a, Number):
            return self * a
        if isinstance(a, AlgebraElement):
            if a.descriptor != self.descriptor:
                raise DescriptorMismatch(f"{a.descriptor} vs {self.descriptor}")
            return ModuleVector(self.descriptor, self.rank, [ab @ r for ab, r in zip(a.blocks, self.rows)])
        return NotImplemented

    def norm(self):
        return norm(self)

    def max_abs_diff(self, other):
        self._check(other)
        return max(float(np.max(np.abs(a - b))) for a, b in zip(self.rows, other.rows))

    def __repr__(self):
        return f"ModuleVector(rank={self.rank}, {self.descriptor})"


def inner(x, y):
    """A-valued inner product ``<x, y> = sum_k x_k y_k*``."""
    x._check(y)
    return AlgebraElement(x.descriptor, [a @ b.conj().T for a, b in zip(x.rows, y.rows)])


def norm(x):
    """``||x|| = ||<x, x>||^(1/2)``, i.e. the largest row-matrix singular value."""
    return max(float(np.linalg.norm(r, 2)) for r in x.rows)


class ModuleOperator:
    """An adjointable A-linear operator on ``A^n``.

    ``T @ x`` applies the operator, ``T1 @ T2`` composes (``T2`` acts
    first), ``T.H`` is the adjoint.
    """

    __slots__ = ("descriptor", "rank", "reps")

    def __init__(self, descriptor, rank, reps):
        reps = tuple(_frozen(r) for r in reps)
        if len(reps) != descriptor.n_blocks:
            raise DescriptorMismatch(f"expected {descriptor.n_blocks} blocks, got {len(reps)}")
        for b, (r, k) in enumerate(zip(reps, descriptor.block_sizes)):
            if r.shape != (rank * k, rank * k):
                raise ShapeMismatch(f"block {b} representation has shape {r.shape}")
        self.descriptor = descriptor
        self.rank = rank
        self.reps = reps

    @classmethod
    def from_entries(cls, entries):
        """Build from an ``n x n`` nested list with ``entries[j][i] = c[j][i]``."""
        n = len(entries)
        if n == 0 or any(len(row) != n for row in entries):
            raise ShapeMismatch("entries must be a non-empty square array")
        desc = entries[0][0].descriptor
        reps = []
        for b in range(desc.n_blocks):
            reps.append(np.block([[entries[j][i].blocks[b] for i in range(n)] for j in range(n)]))
        return cls(desc, n, reps)

    @classmethod
    def identity(cls, descriptor, rank):
        return cls(descriptor, rank, [np.eye(rank * k, dtype=complex) for k in descriptor.block_sizes])

    @classmethod
    def zero(cls, descriptor, rank):
        return cls(descriptor, rank, [np.zeros((rank * k, rank * k), complex) for k in descriptor.block_sizes])

    @classmethod
    def right_multiplication(cls, a):
        """The rank-one operator ``x -> x . a`` on ``A^1``."""
        return cls(a.descriptor, 1, a.blocks)

    @classmethod
    def random(cls, descriptor, rank, rng):
        return cls(descriptor, rank, [_complex_gaussian(rng, (rank * k, rank * k)) for k in descriptor.block_sizes])

    def entry(self, j, i):
        """The algebra element ``c[j][i]``."""
        return AlgebraElement(
            self.descriptor,
            [r[j * k:(j + 1) * k, i * k:(i + 1) * k] for r, k in zip(self.reps, self.descriptor.block_sizes)],
        )

    @property
    def entries(self):
        return [[self.entry(j, i) for i in range(self.rank)] for j in range(self.rank)]

    def _check(self, other):
        if other.descriptor != self.descriptor:
            raise DescriptorMismatch(f"{self.descriptor} vs {other.descriptor}")
        if other.rank != self.rank:
            raise ShapeMismatch(f"rank {self.rank} vs {other.rank}")

    def __matmul__(self, other):
        self._check(other)
        if isinstance(other, ModuleVector):
            return ModuleVector(self.descriptor, self.rank, [x @ c for x, c in zip(other.rows, self.reps)])
        if isinstance(other, ModuleOperator):
            # (T1 T2) x = T1 (T2 x)  <=>  rep(T1 T2) = rep(T2) rep(T1)
            return ModuleOperator(self.descriptor, self.rank, [c2 @ c1 for c1, c2 in zip(self.reps, other.reps)])
        return NotImplemented

    def __call__(self, x):
        return self @ x

    def __add__(self, other):
        self._check(other)
        return ModuleOperator(self.descriptor, self.rank, [a + b for a, b in zip(self.reps, other.reps)])

    def __sub__(self, other):
        self._check(other)
        return ModuleOperator(self.descriptor, self.rank, [a - b for a, b in zip(self.reps, other.reps)])

    def __neg__(self):
        return ModuleOperator(self.descriptor, self.rank, [-a for a in self.reps])

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return ModuleOperator(self.descriptor, self.rank, [c * a for a in self.reps])

    __rmul__ = __mul__

    @property
    def H(self):
        return ModuleOperator(self.descriptor, self.rank, [r.conj().T for r in self.reps])

    def norm(self):
        return op_norm(self)

    def max_abs_diff(self, other):
        self._check(other)
        return max(float(np.max(np.abs(a - b))) for a, b in zip(self.reps, other.reps))

    def __repr__(self):
        return f"ModuleOperator(rank={self.rank}, {self.descriptor})"


def op_norm(T):
    return max(float(np.linalg.norm(r, 2)) for r in T.reps)


def self_adjoint_deviation(T):
    return op_norm(T - T.H)


def self_adjoint_bounds(T, tol=DEFAULT_TOL):
    """Optimal ``(lower, upper)`` with ``lower I <= T <= upper I``.

    Raises
    ------
    NotSelfAdjointError
        If ``||T - T*|| > tol``.
    """
    dev = self_adjoint_deviation(T)
    if dev > tol:
        raise NotSelfAdjointError(dev)
    return hermitian_part_bounds(T)


def hermitian_part_bounds(T):
    """Extreme eigenvalues of the Hermitian part, over all blocks."""
    lo, hi = np.inf, -np.inf
    for r in T.reps:
        w = np.linalg.eigvalsh((r + r.conj().T) / 2)
        lo = min(lo, float(w[0]))
        hi = max(hi, float(w[-1]))
    return lo, hi


def is_positive(T, tol=DEFAULT_TOL, herm_tol=None):
    """Operator positivity ``<Tx, x> >= 0`` for all ``x``.

    Since the row matrix of a probe vector ranges over all matrices, this
    is positive semidefiniteness of each representation matrix.
    """
    herm_tol = tol if herm_tol is None else herm_tol
    if self_adjoint_deviation(T) > herm_tol:
        return False
    return hermitian_part_bounds(T)[0] >= -tol


def leq(S, T, tol=DEFAULT_TOL, herm_tol=None):
    """``S <= T`` in the operator order."""
    S._check(T)
    return is_positive(T - S, tol, herm_tol)


def min_singular_value(T):
    return min(float(np.linalg.svd(r, compute_uv=False)[-1]) for r in T.reps)


def extremal_vector(T, which="min"):
    """Unit vector attaining the smallest (or largest) eigenvalue of the Hermitian part.

    The vector carries a single nonzero row in the attaining block, so
    ``<Tf, f>`` compared against ``lam <f, f>`` is sharp.
    """
    best = None
    for b, r in enumerate(T.reps):
        w, v = np.linalg.eigh((r + r.conj().T) / 2)
        idx = 0 if which == "min" else -1
        val = w[idx]
        if best is None or (val < best[0] if which == "min" else val > best[0]):
            best = (val, b, v[:, idx])
    _, b, vec = best
    rows = [np.zeros((k, T.rank * k), complex) for k in T.descriptor.block_sizes]
    rows[b][0, :] = vec.conj()
    return ModuleVector(T.descriptor, T.rank, rows)


def inverse(T, cond_cap=COND_CAP):
    """Inverse operator; refuses blocks with condition number above ``cond_cap``."""
    out = []
    for b, r in enumerate(T.reps):
        s = np.linalg.svd(r, compute_uv=False)
        if s[-1] == 0 or s[0] / s[-1] > cond_cap:
            raise SingularError(b, s[-1])
        out.append(np.linalg.inv(r))
    return ModuleOperator(T.descriptor, T.rank, out)


def apply(T, x):
    return T @ x


def compose(T1, T2):
    return T1 @ T2


def rep_matrices(T):
    return T.reps
