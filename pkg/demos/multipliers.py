"""
Bessel multipliers
==================

A symbol ``m`` weights the frame integral: ``M_{m,X,Y} f = int m <f, X> Y``.
This script computes multipliers of the diagonal example, checks the norm
bound and the adjoint rule, runs both lower-bound criteria and builds a dual
from an invertible multiplier.
"""

from cbiframe import (
    dual_check,
    lower_bound_criterion,
    multiplier,
    multiplier_adjoint_check,
    multiplier_dual,
    multiplier_norm_check,
    perturbation_criterion,
    two_sided_criterion,
)
from cbiframe.corpus import worked_example
from cbiframe.symbols import PolynomialSymbol

inst = worked_example()
X, Y, space = inst.X, inst.Y, inst.space
w = PolynomialSymbol(space.panels, [[0, 1]])
iw = PolynomialSymbol(space.panels, [[0, 1j]])

print("M(w) =", multiplier(w, X, Y, space).entry(0, 0))  # diag(3/2, 1/4)
r = multiplier_norm_check(w, X, Y, space)
print(f"||M|| = {r.norm:.4f} <= ||m|| sqrt(D1 D2) = {r.bound:.4f}")
print("adjoint residual for m = iw:", multiplier_adjoint_check(iw, X, Y, space))

# Lower bound for (X, X) from the smallest singular value of M.
r = lower_bound_criterion(1.0, X, Y, space)
print(f"lower-bound criterion: bound {r.bound:.4f} <= observed {r.observed:.4f}")

# Lower bound from ||f - Mf|| <= alpha ||f|| + beta ||Mf||.
r = perturbation_criterion(0.5, X, Y, space, rng=0)
print(f"perturbation criterion (m = 1/2): bound {r.bound:.4f} <= observed {r.observed:.4f}")

# The two-sided variant also bounds (Y, Y) from below.  Its stated bound
# (1 - beta^2) / (||m||^2 D1) fails for m = 1/4, while (1 - beta)^2 / (||m||^2 D1)
# holds.
for m in (0.5, 0.25):
    r = two_sided_criterion(m, X, Y, space, rng=0)
    print(
        f"two-sided (m = {m}): alpha = beta = {r.beta:.4f}, observed (Y, Y) lower {r.y_observed:.4f}, "
        f"stated {r.claimed_y_bound:.4f} ({'holds' if r.claimed_y_holds else 'VIOLATED'}), "
        f"certified {r.certified_y_bound:.4f}"
    )

# conj(m) (M^-1)* X is dual to Y whenever M is invertible.
Xd = multiplier_dual(w, X, Y, space)
print("multiplier dual residual:", dual_check(Xd, Y, space))
