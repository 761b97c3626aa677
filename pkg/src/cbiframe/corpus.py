"""Worked examples and random scenario generators.

The generators draw polynomial frame maps with at most three components,
at most two algebra blocks of size at most two, and degree at most three.
Random pairs come in three families:

``sigma``
    ``Y = sigma X`` for a real polynomial ``sigma > 0``; ``S_{X,Y}`` is
    self-adjoint and positive.
``gram``
    ``Y = P X`` with ``P = c0 I + c1 S_X`` applied on the right; again
    ``S_{X,Y} = c0 S_X + c1 S_X^2`` is self-adjoint.
``generic``
    ``X`` and ``Y`` independent; ``S_{X,Y}`` is almost never self-adjoint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import module as mod
from .biframe import frame_operator
from .cstar import AlgebraDescriptor
from .module import ModuleOperator, ModuleVector
from .multipliers import multiplier
from .quadrature import MeasureSpace, PolynomialMap, indicator_partition_map
from .symbols import PolynomialSymbol

UNIT = ((0.0, 1.0),)
BLOCK_CHOICES = ((1,), (2,), (1, 1), (1, 2), (2, 2))
FAMILIES = ("sigma", "gram", "generic")


@dataclass
class Instance:
    name: str
    X: object
    Y: object
    space: MeasureSpace
    family: str = ""


def scalar_diag_map(panels, diagonals):
    """Map into ``C (+) ... (+) C`` (rank 1) from one coefficient list per block.

    ``diagonals[b]`` holds ascending coefficients of block ``b``, shared by
    every panel.
    """
    desc = AlgebraDescriptor((1,) * len(diagonals))
    entries = [[np.array(c, dtype=complex).reshape(1, 1, 1, -1) for c in diagonals] for _ in panels]
    return PolynomialMap.from_entries(desc, panels, entries)


def worked_example(space=None):
    """``X = diag(2w, 1 - w)``, ``Y = diag(3w, w + 1)`` on ``[0, 1]`` over ``C (+) C``."""
    space = MeasureSpace(UNIT) if space is None else space
    X = scalar_diag_map(space.panels, [[0, 2], [1, -1]])
    Y = scalar_diag_map(space.panels, [[0, 3], [1, 1]])
    return Instance("worked_example", X, Y, space, "worked")


def partition_example(n_parts, descriptor=None, literal=False):
    """Piecewise-constant pair on ``n_parts`` equal parts of ``[0, 1]`` in ``A^n_parts``.

    On part ``j`` both maps equal ``e_j / sqrt(mu(part))``, which gives a
    Parseval biframe.  With ``literal=True`` the maps are instead ``e_1`` and
    ``e_2`` (suitably normalized) on every part, which is not a biframe.
    """
    descriptor = AlgebraDescriptor((1,)) if descriptor is None else descriptor
    edges = np.linspace(0.0, 1.0, n_parts + 1)
    panels = list(zip(edges[:-1], edges[1:]))
    space = MeasureSpace(panels)
    parts = [[p] for p in range(n_parts)]
    if literal:
        fs = [ModuleVector.basis(descriptor, n_parts, 0)] * n_parts
        gs = [ModuleVector.basis(descriptor, n_parts, 1)] * n_parts
    else:
        fs = gs = [ModuleVector.basis(descriptor, n_parts, j) for j in range(n_parts)]
    F = indicator_partition_map(space, parts, fs)
    G = indicator_partition_map(space, parts, gs)
    return Instance(f"partition_{n_parts}" + ("_literal" if literal else ""), F, G, space, "partition")


def zero_map(descriptor, rank, panels):
    return PolynomialMap.constant(panels, ModuleVector.zero(descriptor, rank))


def random_descriptor(rng):
    return AlgebraDescriptor(BLOCK_CHOICES[rng.integers(len(BLOCK_CHOICES))])


def random_space(rng, order=None, subdivisions=None):
    kwargs = {}
    if order is not None:
        kwargs["order"] = order
    if subdivisions is not None:
        kwargs["subdivisions"] = subdivisions
    if rng.random() < 0.5:
        return MeasureSpace(UNIT, **kwargs)
    cut = float(np.round(rng.uniform(0.25, 0.75), 3))
    return MeasureSpace([(0.0, cut), (cut, 1.0)], **kwargs)


def random_polynomial_map(descriptor, rank, panels, degree, rng):
    coeffs = [
        [
            (rng.standard_normal((degree + 1, k, rank * k)) + 1j * rng.standard_normal((degree + 1, k, rank * k)))
            / np.sqrt(2.0)
            for k in descriptor.block_sizes
        ]
        for _ in panels
    ]
    return PolynomialMap(descriptor, rank, panels, coeffs)


def positive_polynomial_symbol(panels, degree, rng):
    """Real polynomial bounded below by 1/2 on ``[0, 1]`` (nonnegative higher coefficients)."""
    c = np.concatenate([[rng.uniform(0.5, 2.0)], rng.uniform(0.0, 1.0, degree)])
    return PolynomialSymbol(panels, [c for _ in panels])


def random_symbol(panels, rng, degree=2):
    return PolynomialSymbol(
        panels, [rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1) for _ in panels]
    )


def random_instance(rng, family=None, space=None):
    """One random pair; ``family`` defaults to a uniform draw from :data:`FAMILIES`."""
    family = FAMILIES[rng.integers(len(FAMILIES))] if family is None else family
    desc = random_descriptor(rng)
    rank = int(rng.integers(1, 4))
    space = random_space(rng) if space is None else space
    panels = space.panels
    if family == "sigma":
        sdeg = int(rng.integers(0, 2))
        X = random_polynomial_map(desc, rank, panels, int(rng.integers(0, 4 - sdeg)), rng)
        Y = X.scaled(positive_polynomial_symbol(panels, sdeg, rng))
    elif family == "gram":
        X = random_polynomial_map(desc, rank, panels, int(rng.integers(0, 4)), rng)
        G = frame_operator(X, X, space)
        c0, c1 = rng.uniform(0.5, 2.0), rng.uniform(0.0, 1.0)
        Y = X.transform(ModuleOperator.identity(desc, rank) * c0 + G * c1)
    elif family == "generic":
        X = random_polynomial_map(desc, rank, panels, int(rng.integers(0, 4)), rng)
        Y = random_polynomial_map(desc, rank, panels, int(rng.integers(0, 4)), rng)
    else:
        raise ValueError(f"unknown family {family!r}")
    return Instance(f"{family}", X, Y, space, family)


def random_corpus(count, seed=0, families=FAMILIES):
    """``count`` random instances cycling through ``families``."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        inst = random_instance(rng, families[i % len(families)])
        inst.name = f"{inst.family}_{i}"
        out.append(inst)
    return out


def random_invertible_operator(descriptor, rank, rng, min_sigma=0.2, max_cond=1e3):
    """Random operator with smallest singular value and condition number controlled."""
    while True:
        T = ModuleOperator.random(descriptor, rank, rng)
        ok = True
        for r in T.reps:
            s = np.linalg.svd(r, compute_uv=False)
            ok = ok and s[-1] >= min_sigma and s[0] / s[-1] <= max_cond
        if ok:
            return T


def near_dual_instance(rng, symbol=None, eps=0.3, space=None):
    """Pair whose multiplier is ``I + E`` with Hermitian ``||E|| = eps``.

    ``X`` is drawn until ``M_{m,X,X}`` is invertible and then
    ``Y = R X`` with ``R = M_{m,X,X}^-1 (I + E)`` applied on the right, so
    ``M_{m,X,Y} = I + E``.  Used where criteria need ``||I - M|| < 1``.
    """
    desc = random_descriptor(rng)
    rank = int(rng.integers(1, 4))
    space = random_space(rng) if space is None else space
    m = 1.0 if symbol is None else symbol
    while True:
        X = random_polynomial_map(desc, rank, space.panels, 3, rng)
        Mx = multiplier(m, X, X, space)
        if mod.min_singular_value(Mx) > 1e-2:
            break
    H = ModuleOperator.random(desc, rank, rng)
    H = H + H.H
    E = H * (eps / mod.op_norm(H))
    # rep(M_{m,X,Y}) = rep(M_{m,X,X}) rep(R), so R = (I + E) composed after M^-1
    R = (ModuleOperator.identity(desc, rank) + E) @ mod.inverse(Mx)
    return Instance("near_dual", X, X.transform(R), space, "near_dual")
