"""
Invertible transforms and the lower-bound characterization
==========================================================

Applying an invertible module operator ``T`` to both maps conjugates the
frame operator, ``S_{TX,TY} = T S T*``, and moves the bounds inside the
brackets ``A / ||(T^-1)*||^2`` and ``B ||T*||^2``.
"""

import numpy as np

from cbiframe import AlgebraDescriptor, ModuleOperator, characterization_check, transform_theorem_check
from cbiframe.corpus import worked_example, random_instance, random_invertible_operator

inst = worked_example()
cc = AlgebraDescriptor((1, 1))

# The lower bound 2/3 is the largest A with S >= A I.
for A in (0.0, 2 / 3, 0.7):
    print(f"S >= {A:.4f} I ?", characterization_check(inst.X, inst.Y, inst.space, A))

# Scaling by diag(2, 1) lands exactly on both brackets; diag(1, 2) leaves
# room on either side.
for values in ([2, 1], [1, 2]):
    T = ModuleOperator.right_multiplication(cc.diag(values))
    r = transform_theorem_check(T, inst.X, inst.Y, inst.space, rng=0)
    print(
        f"T = diag{tuple(values)}: bounds ({r.transformed_lower:.4f}, {r.transformed_upper:.4f}), "
        f"brackets ({r.bracket_lower:.4f}, {r.bracket_upper:.4f}), holds={r.holds}"
    )

# A random self-adjoint pair over a noncommutative algebra.
rng = np.random.default_rng(3)
pair = random_instance(rng, "gram")
T = random_invertible_operator(pair.X.descriptor, pair.X.rank, rng)
r = transform_theorem_check(T, pair.X, pair.Y, pair.space, rng=rng)
print(f"random pair over blocks {pair.X.descriptor.block_sizes}, rank {pair.X.rank}:")
print(f"  conjugation residual {r.conjugation_residual:.2e}, slack ({r.slack_lower:.3g}, {r.slack_upper:.3g})")
