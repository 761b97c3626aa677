"""Continuous biframes over finite-dimensional Hilbert C*-modules.

The algebra is a finite direct sum of full matrix algebras, the module is
the free module A^n, and integrals over the parameter space are evaluated
with composite Gauss-Legendre quadrature.
"""

from .cstar import AlgebraDescriptor, AlgebraElement
from .errors import (
    BiframeError,
    DescriptorMismatch,
    NotPositiveError,
    NotSelfAdjointError,
    ShapeMismatch,
    SingularError,
)
from .module import ModuleOperator, ModuleVector
from .quadrature import (
    MeasureSpace,
    PolynomialMap,
    ProductSpace,
    TabulatedMap,
    indicator_partition_map,
)
from .symbols import ConstantSymbol, PolynomialSymbol, SeparableSymbol, TabulatedSymbol
from .biframe import (
    BiframeReport,
    adjoint_identity_check,
    canonical_duals,
    characterization_check,
    dual_check,
    frame_operator,
    transform_maps,
    transform_theorem_check,
    verify_biframe,
)
from .multipliers import (
    lower_bound_criterion,
    multiplier,
    multiplier_adjoint_check,
    multiplier_dual,
    multiplier_norm_check,
    perturbation_criterion,
    two_sided_criterion,
)
from .tensor import (
    TensorMap,
    alg_tensor,
    kron_permutation,
    map_tensor,
    mod_tensor,
    op_tensor,
    tensor_biframe_check,
    tensor_bounds_lemma_check,
    tensor_descriptor,
    tensor_invertibility_check,
    tensor_multiplier_factorization_check,
    tensor_operator_factorization_check,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraDescriptor",
    "AlgebraElement",
    "BiframeError",
    "BiframeReport",
    "ConstantSymbol",
    "DescriptorMismatch",
    "MeasureSpace",
    "ModuleOperator",
    "ModuleVector",
    "NotPositiveError",
    "NotSelfAdjointError",
    "PolynomialMap",
    "PolynomialSymbol",
    "ProductSpace",
    "SeparableSymbol",
    "ShapeMismatch",
    "SingularError",
    "TabulatedMap",
    "TabulatedSymbol",
    "adjoint_identity_check",
    "TensorMap",
    "alg_tensor",
    "kron_permutation",
    "canonical_duals",
    "characterization_check",
    "dual_check",
    "frame_operator",
    "indicator_partition_map",
    "lower_bound_criterion",
    "map_tensor",
    "mod_tensor",
    "multiplier",
    "multiplier_adjoint_check",
    "multiplier_dual",
    "multiplier_norm_check",
    "op_tensor",
    "perturbation_criterion",
    "tensor_biframe_check",
    "tensor_bounds_lemma_check",
    "tensor_descriptor",
    "tensor_invertibility_check",
    "tensor_multiplier_factorization_check",
    "tensor_operator_factorization_check",
    "transform_maps",
    "transform_theorem_check",
    "two_sided_criterion",
    "verify_biframe",
]
