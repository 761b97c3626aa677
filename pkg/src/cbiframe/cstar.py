"""Block-diagonal matrix C*-algebras A = M_{k_1} (+) ... (+) M_{k_B}.

An element is stored as one complex ``k_b x k_b`` matrix per block.  The
order structure is block-local: ``a >= 0`` iff every block is Hermitian
positive semidefinite.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np

from .errors import DescriptorMismatch, NotPositiveError, SingularError

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Shape of a block-diagonal matrix algebra.

    Parameters
    ----------
    block_sizes : tuple of int
        Matrix sizes ``k_b`` of the direct summands, in order.
    """

    block_sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(k) for k in self.block_sizes)
        if not sizes:
            raise ValueError("an algebra needs at least one block")
        if any(k < 1 for k in sizes):
            raise ValueError(f"block sizes must be positive, got {sizes}")
        object.__setattr__(self, "block_sizes", sizes)

    @property
    def n_blocks(self):
        return len(self.block_sizes)

    @property
    def dim(self):
        """Complex dimension ``sum k_b**2``."""
        return sum(k * k for k in self.block_sizes)

    def one(self):
        return AlgebraElement(self, [np.eye(k, dtype=complex) for k in self.block_sizes])

    def zero(self):
        return AlgebraElement(self, [np.zeros((k, k), dtype=complex) for k in self.block_sizes])

    def scalar(self, c):
        return AlgebraElement(self, [c * np.eye(k, dtype=complex) for k in self.block_sizes])

    def random(self, rng):
        """Element with independent standard complex Gaussian entries."""
        return AlgebraElement(self, [_complex_gaussian(rng, (k, k)) for k in self.block_sizes])

    def diag(self, values):
        """Element of a commutative algebra (all blocks 1x1) from a list of scalars."""
        if any(k != 1 for k in self.block_sizes):
            raise ValueError("diag() needs an algebra of 1x1 blocks")
        if len(values) != self.n_blocks:
            raise ValueError(f"expected {self.n_blocks} values, got {len(values)}")
        return AlgebraElement(self, [np.array([[v]], dtype=complex) for v in values])

    def __repr__(self):
        return f"AlgebraDescriptor({list(self.block_sizes)})"


def _complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def _frozen(arr):
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


class AlgebraElement:
    """An element of a block-diagonal matrix algebra.

    Supports ``+``, ``-``, ``*`` (algebra product, or scaling by a complex
    number) and ``.H`` for the involution.
    """

    __slots__ = ("descriptor", "blocks")

    def __init__(self, descriptor, blocks):
        blocks = tuple(_frozen(b) for b in blocks)
        if len(blocks) != descriptor.n_blocks:
            raise DescriptorMismatch(
                f"expected {descriptor.n_blocks} blocks, got {len(blocks)}"
            )
        for b, (blk, k) in enumerate(zip(blocks, descriptor.block_sizes)):
            if blk.shape != (k, k):
                raise DescriptorMismatch(f"block {b} has shape {blk.shape}, expected {(k, k)}")
        self.descriptor = descriptor
        self.blocks = blocks

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if other.descriptor != self.descriptor:
            raise DescriptorMismatch(f"{self.descriptor} vs {other.descriptor}")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.descriptor, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.descriptor, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return AlgebraElement(self.descriptor, [-a for a in self.blocks])

    def __mul__(self, other):
        if isinstance(other, Number):
            return AlgebraElement(self.descriptor, [other * a for a in self.blocks])
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        return AlgebraElement(self.descriptor, [a @ b for a, b in zip(self.blocks, other.blocks)])

    def __rmul__(self, other):
        if isinstance(other, Number):
            return AlgebraElement(self.descriptor, [other * a for a in self.blocks])
        return NotImplemented

    @property
    def H(self):
        return AlgebraElement(self.descriptor, [a.conj().T for a in self.blocks])

    def norm(self):
        return norm(self)

    def allclose(self, other, atol=1e-12):
        self._check(other)
        return all(np.allclose(a, b, rtol=0, atol=atol) for a, b in zip(self.blocks, other.blocks))

    def max_abs_diff(self, other):
        self._check(other)
        return max(float(np.max(np.abs(a - b))) for a, b in zip(self.blocks, other.blocks))

    def __repr__(self):
        inner = ", ".join(np.array2string(b, precision=6) for b in self.blocks)
        return f"AlgebraElement({inner})"


def mul(a, b):
    return a * b


def adjoint(a):
    return a.H


def norm(a):
    """C*-norm: the largest singular value over all blocks."""
    return max(float(np.linalg.norm(blk, 2)) for blk in a.blocks)


def positivity_diagnostics(a):
    """Return ``(hermitian_deviation, min_eigenvalue)`` of ``a``.

    The deviation is ``max_b ||a_b - a_b*||`` and the eigenvalue is the
    smallest one of the Hermitian parts ``(a_b + a_b*)/2``.
    """
    dev = 0.0
    lam = np.inf
    for blk in a.blocks:
        dev = max(dev, float(np.linalg.norm(blk - blk.conj().T, 2)))
        lam = min(lam, float(np.linalg.eigvalsh((blk + blk.conj().T) / 2)[0]))
    return dev, lam


def is_positive(a, tol=DEFAULT_TOL, herm_tol=None):
    """Whether ``a >= 0`` in the C*-order.

    ``herm_tol`` bounds the Hermitian deviation and defaults to ``tol``,
    which bounds how negative the smallest eigenvalue may be.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    herm_tol = tol if herm_tol is None else herm_tol
    dev, lam = positivity_diagnostics(a)
    return dev <= herm_tol and lam >= -tol


def leq(a, b, tol=DEFAULT_TOL, herm_tol=None):
    """Whether ``a <= b``, i.e. ``b - a`` is positive."""
    a._check(b)
    return is_positive(b - a, tol, herm_tol)


def sqrt(a, tol=DEFAULT_TOL):
    """Unique positive square root of a positive element."""
    if not is_positive(a, tol):
        dev, lam = positivity_diagnostics(a)
        raise NotPositiveError(
            f"sqrt needs a positive element (hermitian deviation {dev:.3e}, min eigenvalue {lam:.3e})"
        )
    out = []
    for blk in a.blocks:
        w, v = np.linalg.eigh((blk + blk.conj().T) / 2)
        w = np.clip(w, 0.0, None)
        out.append((v * np.sqrt(w)) @ v.conj().T)
    return AlgebraElement(a.descriptor, out)


def absolute(a):
    """``|a| = (a* a)^(1/2)``."""
    return sqrt(a.H * a, tol=np.inf)


def inverse(a, tol=DEFAULT_TOL):
    for b, blk in enumerate(a.blocks):
        smin = float(np.linalg.svd(blk, compute_uv=False)[-1])
        if smin <= tol:
            raise SingularError(b, smin)
    return AlgebraElement(a.descriptor, [np.linalg.inv(blk) for blk in a.blocks])
