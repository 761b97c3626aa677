"""
Tensor products of biframes
===========================

Pairs on two measure spaces combine into a pair on the product space with
values in the exterior tensor product module.  The frame operator factors,
the bounds multiply, and transformed tensor pairs are biframes exactly when
the tensor operator is invertible.
"""

from cbiframe import AlgebraDescriptor, ModuleOperator
from cbiframe.corpus import worked_example, zero_map
from cbiframe.symbols import PolynomialSymbol
from cbiframe.tensor import (
    tensor_biframe_check,
    tensor_invertibility_check,
    tensor_multiplier_factorization_check,
    tensor_operator_factorization_check,
)

ex = worked_example()
pair = (ex.X, ex.Y, ex.space)
cc = AlgebraDescriptor((1, 1))

r = tensor_biframe_check(*pair, *pair, rng=0)
print(f"tensor bounds ({r.tensor['lower']:.6f}, {r.tensor['upper']:.6f}); products ({r.lower_product:.6f}, {r.upper_product:.6f})")
print("||S - S1 (x) S2|| =", tensor_operator_factorization_check(*pair, *pair))

# A zero factor destroys the tensor biframe.
Y0 = zero_map(cc, 1, ex.space.panels)
r = tensor_biframe_check(*pair, ex.X, Y0, ex.space, rng=0)
print("with a zero factor, tensor is a biframe:", r.tensor["is_biframe"])

# Flipping the sign of both second maps makes each factor fail, yet the
# signs cancel in the tensor product, which is still a biframe.
neg = ex.X.scaled(PolynomialSymbol(ex.space.panels, [[-1.0]]))
r = tensor_biframe_check(ex.X, neg, ex.space, ex.X, neg, ex.space, rng=0)
print(
    f"sign flip: factors {r.left['is_biframe']}, {r.right['is_biframe']}; tensor {r.tensor['is_biframe']}; "
    f"equivalence holds: {r.equivalence_holds}"
)

T1 = ModuleOperator.right_multiplication(cc.diag([2, 1 + 1j]))
for name, T2 in [("invertible", ModuleOperator.right_multiplication(cc.diag([0.5, 3]))),
                 ("singular", ModuleOperator.right_multiplication(cc.diag([0, 1])))]:
    r = tensor_invertibility_check(T1, T2, *pair, *pair, rng=0)
    print(f"{name} T2: transformed biframe {r.transformed_is_biframe}, T1 (x) T2 invertible {r.tensor_invertible}")

w = PolynomialSymbol(ex.space.panels, [[0, 1]])
one_minus_w = PolynomialSymbol(ex.space.panels, [[1, -1]])
print("separable multiplier residual:", tensor_multiplier_factorization_check(w, one_minus_w, *pair, *pair))
