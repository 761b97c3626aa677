"""Biframe operators, certified biframe bounds and dual biframes.

For maps ``X, Y : Omega -> A^n`` the biframe operator

    S_{X,Y} f = int <f, X(w)> Y(w) dmu(w)

has entries ``c[j][i] = int X_j(w)* Y_i(w) dmu``; in the row-matrix
representation of :mod:`cbiframe.module` this is, per block, the weighted
sum of ``X_q^H Y_q`` over quadrature nodes.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import cstar
from . import module as mod
from .cstar import DEFAULT_TOL
from .errors import NotSelfAdjointError, ShapeMismatch
from .module import ModuleOperator, ModuleVector

PROBES = 100


def _rng(rng):
    if rng is None:
        return np.random.default_rng(0)
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def gram_operator(tab_x, tab_y, weights, descriptor, rank, symbol=None):
    """Operator with entries ``sum_q w_q m_q X_j(q)* Y_i(q)`` from tabulated maps."""
    w = np.asarray(weights, dtype=complex)
    if symbol is not None:
        w = w * symbol
    reps = [np.einsum("q,qra,qrc->ac", w, x.conj(), y, optimize=True) for x, y in zip(tab_x, tab_y)]
    return ModuleOperator(descriptor, rank, reps)


def _check_pair(X, Y):
    if X.descriptor != Y.descriptor or X.rank != Y.rank:
        raise ShapeMismatch(f"maps into {X.descriptor}^{X.rank} and {Y.descriptor}^{Y.rank}")


def frame_operator(X, Y, space):
    """The biframe operator ``S_{X,Y}`` assembled by quadrature."""
    _check_pair(X, Y)
    return gram_operator(X.tabulate(space), Y.tabulate(space), space.weights, X.descriptor, X.rank)


def integral_action(X, Y, space, f, symbol=None):
    """``int m(w) <f, X(w)> Y(w) dmu`` evaluated node by node.

    This walks the defining integral with module-level inner products and
    the left action; it does not go through the assembled operator.
    """
    xs = X.values_at_nodes(space)
    ys = Y.values_at_nodes(space)
    m = np.ones(space.size) if symbol is None else symbol.tabulate(space)
    acc = ModuleVector.zero(f.descriptor, f.rank)
    for q in range(space.size):
        coef = mod.inner(f, xs[q]) * complex(space.weights[q] * m[q])
        acc = acc + coef * ys[q]
    return acc


@dataclass
class BiframeReport:
    """Outcome of :func:`verify_biframe`.

    ``lower``/``upper`` are the optimal order bounds of ``S_{X,Y}``.  When
    ``S`` is not self-adjoint they describe its Hermitian part only and the
    verdict is negative.
    """

    self_adjoint_residual: float
    lower: float
    upper: float
    is_biframe: bool
    probes_passed: int
    probes: int
    tight: bool
    parseval: bool
    quadrature: dict = field(default_factory=dict)
    diagnostic: str = ""

    def to_dict(self):
        return asdict(self)


def certify_bounds(S, lower, upper, probes, rng, tol):
    """Count probes ``f`` with ``lower<f,f> <= <Sf,f> <= upper<f,f>``."""
    scale = max(1.0, mod.op_norm(S), abs(lower), abs(upper))
    passed = 0
    for _ in range(probes):
        f = ModuleVector.random(S.descriptor, S.rank, rng)
        ff = mod.inner(f, f)
        sff = mod.inner(S @ f, f)
        ptol = tol * scale * cstar.norm(ff)
        if cstar.leq(ff * lower, sff, ptol) and cstar.leq(sff, ff * upper, ptol):
            passed += 1
    return passed


def verify_biframe(X, Y, space, tol=DEFAULT_TOL, probes=PROBES, rng=None):
    """Decide whether ``(X, Y)`` is a continuous biframe and report its bounds.

    Parameters
    ----------
    X, Y : FrameMap
    space : MeasureSpace or ProductSpace
    tol : float
        Self-adjointness gate and positivity margin.
    probes : int
        Random probes used to certify the bounds against the order inequality.
    rng : numpy Generator or int, optional
        Probe stream; defaults to seed 0.

    Returns
    -------
    BiframeReport
    """
    rng = _rng(rng)
    S = frame_operator(X, Y, space)
    residual = mod.self_adjoint_deviation(S)
    lower, upper = mod.hermitian_part_bounds(S)
    diagnostic = ""
    if residual > tol:
        diagnostic = f"S is not self-adjoint (||S - S*|| = {residual:.3e}); bounds refer to its Hermitian part"
        passed = 0
        is_biframe = False
    else:
        passed = certify_bounds(S, lower, upper, probes, rng, tol)
        is_biframe = lower > tol and passed == probes
        if lower <= tol:
            diagnostic = f"lower bound {lower:.6g} is not positive"
        elif passed < probes:
            diagnostic = f"only {passed} of {probes} probes satisfy the order inequality"
    tight = residual <= tol and upper - lower <= tol
    return BiframeReport(
        self_adjoint_residual=residual,
        lower=lower,
        upper=upper,
        is_biframe=is_biframe,
        probes_passed=passed,
        probes=probes,
        tight=tight,
        parseval=tight and abs(lower - 1) <= tol and abs(upper - 1) <= tol,
        quadrature=space.describe(),
        diagnostic=diagnostic,
    )


def adjoint_identity_check(X, Y, space):
    """``||S_{X,Y}* - S_{Y,X}||`` with both operators assembled independently."""
    return mod.op_norm(frame_operator(X, Y, space).H - frame_operator(Y, X, space))


def characterization_check(X, Y, space, A, tol=DEFAULT_TOL):
    """Whether ``S_{X,Y} >= A I`` in the operator order.

    Raises
    ------
    NotSelfAdjointError
        If ``S_{X,Y}`` is not self-adjoint within ``tol``.
    """
    S = frame_operator(X, Y, space)
    dev = mod.self_adjoint_deviation(S)
    if dev > tol:
        raise NotSelfAdjointError(dev)
    return mod.leq(ModuleOperator.identity(S.descriptor, S.rank) * A, S, tol)


def transform_maps(T, X):
    """``w -> T X(w)``."""
    return X.transform(T)


@dataclass
class TransformReport:
    lower: float
    upper: float
    transformed_lower: float
    transformed_upper: float
    bracket_lower: float
    bracket_upper: float
    slack_lower: float
    slack_upper: float
    verdict: bool
    transformed_verdict: bool
    conjugation_residual: float
    holds: bool

    def to_dict(self):
        return asdict(self)


def transform_theorem_check(T, X, Y, space, tol=1e-8, rng=None):
    """Check the bound brackets for the transformed pair ``(TX, TY)``.

    With ``(A, B)`` the bounds of ``(X, Y)`` and ``(A', B')`` those of
    ``(TX, TY)``, asserts ``A' >= A ||(T^-1)*||^-2`` and ``B' <= B ||T*||^2``,
    plus ``S_{TX,TY} = T S T*`` and equality of both verdicts.

    Raises
    ------
    SingularError
        If ``T`` is not invertible.
    """
    rng = _rng(rng)
    T_inv = mod.inverse(T)
    base = verify_biframe(X, Y, space, tol=tol, rng=rng)
    TX, TY = X.transform(T), Y.transform(T)
    moved = verify_biframe(TX, TY, space, tol=tol, rng=rng)
    S = frame_operator(X, Y, space)
    S_moved = frame_operator(TX, TY, space)
    conj_res = mod.op_norm(S_moved - T @ S @ T.H)

    bracket_lower = base.lower / mod.op_norm(T_inv.H) ** 2
    bracket_upper = base.upper * mod.op_norm(T.H) ** 2
    slack_lower = moved.lower - bracket_lower
    slack_upper = bracket_upper - moved.upper
    holds = base.is_biframe == moved.is_biframe
    if base.is_biframe:
        holds = holds and slack_lower >= -tol and slack_upper >= -tol
    return TransformReport(
        lower=base.lower,
        upper=base.upper,
        transformed_lower=moved.lower,
        transformed_upper=moved.upper,
        bracket_lower=bracket_lower,
        bracket_upper=bracket_upper,
        slack_lower=slack_lower,
        slack_upper=slack_upper,
        verdict=base.is_biframe,
        transformed_verdict=moved.is_biframe,
        conjugation_residual=conj_res,
        holds=bool(holds),
    )


def dual_check(X_dual, Y, space):
    """Residual of the reproducing identity ``<f, g> = int <f, X'> <Y, g> dmu``.

    Over the basis pairs ``(e_j E_pq, e_i E_rs)`` built from matrix units the
    left side minus the right side picks out single entries of
    ``rep(S_{X',Y}) - I``, so the maximum over all pairs is the largest
    entry of that difference.
    """
    S = frame_operator(X_dual, Y, space)
    return max(float(np.max(np.abs(r - np.eye(r.shape[0])))) for r in S.reps)


def canonical_duals(X, Y, space, tol=DEFAULT_TOL):
    """``(S^-1 X, S^-1 Y)``, the canonical duals of ``Y`` and ``X``.

    Raises
    ------
    NotSelfAdjointError
        ``S_{X,Y}`` must be self-adjoint for ``(S^-1 X, Y)`` to be dual.
    SingularError
    """
    S = frame_operator(X, Y, space)
    dev = mod.self_adjoint_deviation(S)
    if dev > tol:
        raise NotSelfAdjointError(dev)
    S_inv = mod.inverse(S)
    return X.transform(S_inv), Y.transform(S_inv)
