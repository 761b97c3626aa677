"""Exterior tensor products of algebras, modules, operators and frame maps.

Index fusion is lexicographic everywhere: product blocks ``(b1, b2)``,
module components ``(j1, j2)``, matrix rows ``(r1, r2)`` and quadrature
node pairs ``(q1, q2)`` all run with the left factor major.  Raw Kronecker
products of representation matrices use ``((j1, a1), (j2, a2))`` ordering
instead and are permutation-similar to ours.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import module as mod
from .biframe import _rng, frame_operator, transform_theorem_check, verify_biframe
from .cstar import DEFAULT_TOL, AlgebraDescriptor, AlgebraElement
from .errors import NotSelfAdjointError
from .module import ModuleOperator, ModuleVector
from .multipliers import multiplier
from .quadrature import FrameMap, ProductSpace
from .symbols import SeparableSymbol, as_symbol


def tensor_descriptor(left, right):
    """Descriptor of ``A (x) B``: blocks ``k1 * k2`` over all pairs."""
    return AlgebraDescriptor(tuple(k1 * k2 for k1 in left.block_sizes for k2 in right.block_sizes))


def _pairs(left, right):
    return [(b1, b2) for b1 in range(left.n_blocks) for b2 in range(right.n_blocks)]


def alg_tensor(a, b):
    desc = tensor_descriptor(a.descriptor, b.descriptor)
    return AlgebraElement(desc, [np.kron(a.blocks[i], b.blocks[j]) for i, j in _pairs(a.descriptor, b.descriptor)])


def _rows_tensor(r1, k1, n1, r2, k2, n2):
    out = np.einsum("rja,skc->rsjkac", r1.reshape(k1, n1, k1), r2.reshape(k2, n2, k2))
    return out.reshape(k1 * k2, n1 * n2 * k1 * k2)


def mod_tensor(x, y):
    """``x (x) y`` in ``(A (x) B)^(n m)`` with components ``x_j1 (x) y_j2``."""
    d1, d2 = x.descriptor, y.descriptor
    rows = [
        _rows_tensor(x.rows[i], d1.block_sizes[i], x.rank, y.rows[j], d2.block_sizes[j], y.rank)
        for i, j in _pairs(d1, d2)
    ]
    return ModuleVector(tensor_descriptor(d1, d2), x.rank * y.rank, rows)


def op_tensor(T1, T2):
    """``T1 (x) T2`` with entries ``c1[j1][i1] (x) c2[j2][i2]``."""
    d1, d2 = T1.descriptor, T2.descriptor
    n1, n2 = T1.rank, T2.rank
    reps = []
    for i, j in _pairs(d1, d2):
        k1, k2 = d1.block_sizes[i], d2.block_sizes[j]
        c1 = T1.reps[i].reshape(n1, k1, n1, k1)
        c2 = T2.reps[j].reshape(n2, k2, n2, k2)
        out = np.einsum("japc,kbqd->jkabpqcd", c1, c2)
        size = n1 * n2 * k1 * k2
        reps.append(out.reshape(size, size))
    return ModuleOperator(tensor_descriptor(d1, d2), n1 * n2, reps)


def kron_permutation(n1, k1, n2, k2):
    """Index map from our fused order into raw Kronecker order.

    ``perm[ours] = raw`` where ``ours`` enumerates ``((j1, j2), (a1, a2))``
    and ``raw`` enumerates ``((j1, a1), (j2, a2))``.  For every block,
    ``rep(T1 (x) T2) == kron(rep T1, rep T2)[perm][:, perm]``.
    """
    j1, j2, a1, a2 = np.meshgrid(np.arange(n1), np.arange(n2), np.arange(k1), np.arange(k2), indexing="ij")
    raw = ((j1 * k1 + a1) * n2 + j2) * k2 + a2
    return raw.ravel()


class TensorMap(FrameMap):
    """``(w1, w2) -> X1(w1) (x) X2(w2)`` on a product space."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.descriptor = tensor_descriptor(left.descriptor, right.descriptor)
        self.rank = left.rank * right.rank

    def tabulate(self, space):
        if not isinstance(space, ProductSpace):
            raise TypeError("tensor maps are tabulated on product spaces")
        t1 = self.left.tabulate(space.left)
        t2 = self.right.tabulate(space.right)
        d1, d2 = self.left.descriptor, self.right.descriptor
        n1, n2 = self.left.rank, self.right.rank
        out = []
        for i, j in _pairs(d1, d2):
            k1, k2 = d1.block_sizes[i], d2.block_sizes[j]
            a = t1[i].reshape(-1, k1, n1, k1)
            b = t2[j].reshape(-1, k2, n2, k2)
            v = np.einsum("xrja,yskc->xyrsjkac", a, b, optimize=True)
            out.append(v.reshape(a.shape[0] * b.shape[0], k1 * k2, n1 * n2 * k1 * k2))
        return tuple(out)

    def __call__(self, omega):
        w1, w2 = omega
        return mod_tensor(self.left(w1), self.right(w2))

    def __repr__(self):
        return f"TensorMap({self.left!r}, {self.right!r})"


def map_tensor(X1, X2):
    return TensorMap(X1, X2)


@dataclass
class TensorBiframeReport:
    left: dict
    right: dict
    tensor: dict
    lower_product: float
    upper_product: float
    equivalence_holds: bool
    bounds_hold: bool | None
    holds: bool

    def to_dict(self):
        return asdict(self)


def tensor_biframe_check(X1, Y1, space1, X2, Y2, space2, tol=DEFAULT_TOL, rng=None):
    """Tensor pair is a biframe iff both factors are, with bounds ``A1 A2`` and ``B1 B2``."""
    rng = _rng(rng)
    r1 = verify_biframe(X1, Y1, space1, tol=tol, rng=rng)
    r2 = verify_biframe(X2, Y2, space2, tol=tol, rng=rng)
    space = ProductSpace(space1, space2)
    rt = verify_biframe(TensorMap(X1, X2), TensorMap(Y1, Y2), space, tol=tol, rng=rng)
    equiv = rt.is_biframe == (r1.is_biframe and r2.is_biframe)
    lo, hi = r1.lower * r2.lower, r1.upper * r2.upper
    bounds = None
    if r1.is_biframe and r2.is_biframe:
        scale = max(1.0, hi)
        bounds = bool(rt.lower >= lo - tol * scale and rt.upper <= hi + tol * scale)
    return TensorBiframeReport(
        r1.to_dict(), r2.to_dict(), rt.to_dict(), lo, hi, bool(equiv), bounds, bool(equiv and bounds is not False)
    )


def tensor_operator_factorization_check(X1, Y1, space1, X2, Y2, space2):
    """``||S_{X1 (x) X2, Y1 (x) Y2} - S_{X1,Y1} (x) S_{X2,Y2}||``."""
    S = frame_operator(TensorMap(X1, X2), TensorMap(Y1, Y2), ProductSpace(space1, space2))
    return mod.op_norm(S - op_tensor(frame_operator(X1, Y1, space1), frame_operator(X2, Y2, space2)))


def tensor_bounds_lemma_check(X1, Y1, space1, X2, Y2, space2, tol=DEFAULT_TOL):
    """``A C I <= S <= B D I`` for the tensor pair, from the factor bounds.

    Raises
    ------
    NotSelfAdjointError
        If a factor operator or the tensor operator is not self-adjoint.
    """
    S1, S2 = frame_operator(X1, Y1, space1), frame_operator(X2, Y2, space2)
    A, B = mod.self_adjoint_bounds(S1, tol)
    C, D = mod.self_adjoint_bounds(S2, tol)
    S = frame_operator(TensorMap(X1, X2), TensorMap(Y1, Y2), ProductSpace(space1, space2))
    dev = mod.self_adjoint_deviation(S)
    if dev > tol:
        raise NotSelfAdjointError(dev)
    I = ModuleOperator.identity(S.descriptor, S.rank)
    scale = max(1.0, B * D)
    return bool(mod.leq(I * (A * C), S, tol * scale) and mod.leq(S, I * (B * D), tol * scale))


@dataclass
class InvertibilityReport:
    transformed_is_biframe: bool
    tensor_invertible: bool
    factors_invertible: bool
    sigma_min_tensor: float
    sigma_min_left: float
    sigma_min_right: float
    agree: bool
    bracket_holds: bool | None
    holds: bool

    def to_dict(self):
        return asdict(self)


def tensor_invertibility_check(T1, T2, X1, Y1, space1, X2, Y2, space2, tol=DEFAULT_TOL, rng=None):
    """Three-way agreement: transformed tensor pair is a biframe, ``T1 (x) T2`` is
    invertible, and both ``T1`` and ``T2`` are invertible.

    When all three hold the transformed bounds are also checked against the
    invertible-transform brackets on the tensor module.
    """
    rng = _rng(rng)
    T = op_tensor(T1, T2)
    space = ProductSpace(space1, space2)
    X, Y = TensorMap(X1, X2), TensorMap(Y1, Y2)
    delta = verify_biframe(X.transform(T), Y.transform(T), space, tol=tol, rng=rng)
    s_t, s1, s2 = mod.min_singular_value(T), mod.min_singular_value(T1), mod.min_singular_value(T2)
    inv_t = s_t > tol
    inv_f = s1 > tol and s2 > tol
    agree = delta.is_biframe == inv_t == inv_f
    bracket = None
    if agree and inv_t:
        bracket = transform_theorem_check(T, X, Y, space, tol=max(tol, 1e-8), rng=rng).holds
    return InvertibilityReport(
        delta.is_biframe, bool(inv_t), bool(inv_f), s_t, s1, s2, bool(agree), bracket,
        bool(agree and bracket is not False),
    )


def tensor_multiplier_factorization_check(m1, m2, X1, Y1, space1, X2, Y2, space2):
    """``||M_{m1 m2, X, Y} - M_{m1,X1,Y1} (x) M_{m2,X2,Y2}||`` for a separable symbol."""
    m1, m2 = as_symbol(m1, space1.panels), as_symbol(m2, space2.panels)
    M = multiplier(SeparableSymbol(m1, m2), TensorMap(X1, X2), TensorMap(Y1, Y2), ProductSpace(space1, space2))
    return mod.op_norm(M - op_tensor(multiplier(m1, X1, Y1, space1), multiplier(m2, X2, Y2, space2)))
