"""Continuous biframe Bessel multipliers.

    <M_{m,X,Y} f, g> = int m(w) <f, X(w)> <Y(w), g> dmu

assembled entrywise as ``c[j][i] = int m(w) X_j(w)* Y_i(w) dmu``.

``D1`` and ``D2`` below are the optimal Bessel bounds of ``(X, X)`` and
``(Y, Y)``, and ``||m||_inf`` is the grid estimate of the symbol's sup
norm inflated by :data:`cbiframe.symbols.SUP_GUARD`.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from numbers import Number

import numpy as np

from . import module as mod
from .biframe import _check_pair, _rng, frame_operator, gram_operator
from .module import ModuleOperator, ModuleVector
from .symbols import SUP_GUARD, ConstantSymbol, as_symbol

HYPOTHESIS_PROBES = 500


def _symbol_for(m, X, space):
    if isinstance(m, Number):
        if hasattr(space, "panels"):
            return as_symbol(m, space.panels)
        return ConstantSymbol(m)
    return m


def multiplier(m, X, Y, space):
    """The Bessel multiplier ``M_{m,X,Y}``; ``m`` may be a symbol or a number."""
    _check_pair(X, Y)
    sym = _symbol_for(m, X, space)
    return gram_operator(
        X.tabulate(space), Y.tabulate(space), space.weights, X.descriptor, X.rank, symbol=sym.tabulate(space)
    )


def bessel_bound(X, space):
    """Optimal Bessel bound of ``(X, X)``, i.e. ``||S_X||``."""
    return mod.hermitian_part_bounds(frame_operator(X, X, space))[1]


def frame_lower_bound(X, space):
    return mod.hermitian_part_bounds(frame_operator(X, X, space))[0]


def guarded_sup(sym):
    return sym.sup_norm() * (1 + SUP_GUARD)


@dataclass
class NormBoundReport:
    norm: float
    sup_norm: float
    bessel_x: float
    bessel_y: float
    bound: float
    holds: bool

    def to_dict(self):
        return asdict(self)


def multiplier_norm_check(m, X, Y, space, tol=1e-12):
    """``||M|| <= ||m||_inf sqrt(D1 D2)``, with the sup-norm guard applied."""
    sym = _symbol_for(m, X, space)
    norm = mod.op_norm(multiplier(sym, X, Y, space))
    sup = sym.sup_norm()
    d1, d2 = bessel_bound(X, space), bessel_bound(Y, space)
    bound = sup * np.sqrt(max(d1, 0.0) * max(d2, 0.0))
    return NormBoundReport(norm, sup, d1, d2, bound, bool(norm <= bound * (1 + SUP_GUARD) + tol))


def multiplier_adjoint_check(m, X, Y, space):
    """``||M_{m,X,Y}* - M_{conj m,Y,X}||``."""
    sym = _symbol_for(m, X, space)
    return mod.op_norm(multiplier(sym, X, Y, space).H - multiplier(sym.conj(), Y, X, space))


@dataclass
class CriterionReport:
    """Outcome of one multiplier criterion.

    ``bound`` is the lower frame bound the criterion concludes and
    ``observed`` the optimal lower bound actually attained; ``holds`` is
    ``observed >= bound - tol``.  When the hypothesis is not met the criterion
    is not applicable and ``holds`` is ``None``.
    """

    name: str
    applicable: bool
    hypothesis: dict
    bound: float | None
    observed: float | None
    holds: bool | None
    detail: str = ""

    def to_dict(self):
        return asdict(self)


def lower_bound_criterion(m, X, Y, space, tol=1e-8):
    """If ``||M f|| >= alpha ||f||``, then ``(X, X)`` has lower bound ``alpha^2 / (||m||^2 D2)``.

    ``alpha`` is the smallest singular value of ``M`` over all blocks, which
    is a valid constant for every ``f``.
    """
    sym = _symbol_for(m, X, space)
    M = multiplier(sym, X, Y, space)
    alpha = mod.min_singular_value(M)
    hyp = {"alpha": alpha}
    if alpha <= tol:
        return CriterionReport("lower_bound", False, hyp, None, None, None, "M is singular: criterion not applicable")
    sup = guarded_sup(sym)
    d2 = bessel_bound(Y, space)
    bound = alpha**2 / (sup**2 * d2)
    observed = frame_lower_bound(X, space)
    hyp.update(sup_norm=sup, bessel_y=d2)
    return CriterionReport("lower_bound", True, hyp, bound, observed, bool(observed >= bound - tol))


def _row_probe(descriptor, rank, block, u):
    rows = [np.zeros((k, rank * k), complex) for k in descriptor.block_sizes]
    rows[block][0, :] = u
    return ModuleVector(descriptor, rank, rows)


def _singular_probes(T, which):
    """Row probes attaining the largest (or smallest) value of ``||T f|| / ||f||`` per block."""
    out = []
    for b, r in enumerate(T.reps):
        U, _, _ = np.linalg.svd(r)
        col = U[:, 0] if which == "max" else U[:, -1]
        out.append(_row_probe(T.descriptor, T.rank, b, col.conj()))
    return out


def _probe_set(M, rng, probes):
    I = ModuleOperator.identity(M.descriptor, M.rank)
    fixed = _singular_probes(I - M, "max") + _singular_probes(M, "min") + _singular_probes(I - M.H, "max")
    return fixed + [ModuleVector.random(M.descriptor, M.rank, rng) for _ in range(probes)]


def perturbation_criterion(m, X, Y, space, alpha=None, beta=0.0, tol=1e-8, probes=HYPOTHESIS_PROBES, rng=None):
    """If ``||f - M f|| <= alpha ||f|| + beta ||M f||`` for each ``f``, then
    ``(X, X)`` has lower bound ``((1 - alpha) / (||m|| sqrt(D2) (1 + beta)))^2``.

    The hypothesis is checked on ``probes`` random vectors plus the extremal
    singular directions of ``I - M`` and ``M``.  ``alpha`` defaults to
    ``||I - M||``, for which the hypothesis holds with any ``beta >= 0``.

    Raises
    ------
    ValueError
        Unless ``1 - alpha > 0`` and ``1 + beta > 0``.
    """
    rng = _rng(rng)
    sym = _symbol_for(m, X, space)
    M = multiplier(sym, X, Y, space)
    I = ModuleOperator.identity(M.descriptor, M.rank)
    if alpha is None:
        alpha = mod.op_norm(I - M)
        if alpha >= 1:
            return CriterionReport(
                "perturbation", False, {"alpha": alpha, "beta": beta}, None, None, None,
                "||I - M|| >= 1: criterion not applicable",
            )
    if not (1 - alpha > 0 and 1 + beta > 0):
        raise ValueError(f"need 1 - alpha > 0 and 1 + beta > 0, got alpha={alpha}, beta={beta}")

    worst = -np.inf
    ok = 0
    pset = _probe_set(M, rng, probes)
    for f in pset:
        nf = f.norm()
        mf = M @ f
        excess = (f - mf).norm() - alpha * nf - beta * mf.norm()
        worst = max(worst, excess / nf)
        ok += excess <= tol * nf
    hyp = {"alpha": alpha, "beta": beta, "probes": len(pset), "probes_passed": int(ok), "worst_excess": worst}
    if ok < len(pset):
        return CriterionReport("perturbation", False, hyp, None, None, None, "hypothesis violated on a probe")
    sup = guarded_sup(sym)
    d2 = bessel_bound(Y, space)
    bound = ((1 - alpha) / (sup * np.sqrt(d2) * (1 + beta))) ** 2
    observed = frame_lower_bound(X, space)
    hyp.update(sup_norm=sup, bessel_y=d2)
    return CriterionReport("perturbation", True, hyp, bound, observed, bool(observed >= bound - tol))


@dataclass
class TwoSidedReport:
    """Outcome of :func:`two_sided_criterion`.

    ``claimed_y_bound`` is ``(1 - beta^2) / (||m||^2 D1)``, the lower bound
    for ``(Y, Y)`` as originally stated.  Its derivation uses
    ``||f||^2 - ||M* f||^2 <= ||f - M* f||^2``, which fails in general, so the
    bound can be violated (see ``claimed_y_holds``).  ``certified_y_bound``
    is ``(1 - beta)^2 / (||m||^2 D1)``, which follows from the reverse
    triangle inequality and always holds under the hypothesis.
    """

    applicable: bool
    alpha: float
    beta: float
    x_bound: float | None
    x_observed: float | None
    x_holds: bool | None
    claimed_y_bound: float | None
    certified_y_bound: float | None
    y_observed: float | None
    claimed_y_holds: bool | None
    certified_y_holds: bool | None
    detail: str = ""

    def to_dict(self):
        return asdict(self)


def two_sided_criterion(m, X, Y, space, alpha=None, beta=None, tol=1e-8, probes=HYPOTHESIS_PROBES, rng=None):
    """Two-sided variant: ``||f - Mf|| <= alpha ||f||`` and ``||f - M* f|| <= beta ||f||``.

    ``alpha`` and ``beta`` default to ``||I - M||`` and ``||I - M*||``.
    Concludes lower bounds for both ``(X, X)`` and ``(Y, Y)``.
    """
    rng = _rng(rng)
    sym = _symbol_for(m, X, space)
    M = multiplier(sym, X, Y, space)
    I = ModuleOperator.identity(M.descriptor, M.rank)
    alpha = mod.op_norm(I - M) if alpha is None else alpha
    beta = mod.op_norm(I - M.H) if beta is None else beta
    if not (0 <= alpha < 1 and 0 <= beta < 1):
        return TwoSidedReport(False, alpha, beta, None, None, None, None, None, None, None, None,
                              "needs alpha, beta in [0, 1)")
    for f in _probe_set(M, rng, probes):
        nf = f.norm()
        if (f - M @ f).norm() > alpha * nf + tol * nf or (f - M.H @ f).norm() > beta * nf + tol * nf:
            return TwoSidedReport(False, alpha, beta, None, None, None, None, None, None, None, None,
                                  "hypothesis violated on a probe")
    sup = guarded_sup(sym)
    d1, d2 = bessel_bound(X, space), bessel_bound(Y, space)
    x_bound = ((1 - alpha) / (sup * np.sqrt(d2))) ** 2
    x_obs = frame_lower_bound(X, space)
    claimed = (1 - beta**2) / (sup**2 * d1)
    certified = (1 - beta) ** 2 / (sup**2 * d1)
    y_obs = frame_lower_bound(Y, space)
    return TwoSidedReport(
        True, alpha, beta, x_bound, x_obs, bool(x_obs >= x_bound - tol),
        claimed, certified, y_obs, bool(y_obs >= claimed - tol), bool(y_obs >= certified - tol),
    )


def multiplier_dual(m, X, Y, space):
    """The map ``w -> conj(m(w)) (M^-1)* X(w)``, dual to ``Y``.

    Raises
    ------
    SingularError
        If ``M_{m,X,Y}`` is not invertible within the condition cap.
    """
    sym = _symbol_for(m, X, space)
    M_inv = mod.inverse(multiplier(sym, X, Y, space))
    return X.transform(M_inv.H).scaled(sym.conj())
