import numpy as np
import pytest

from cbiframe import module as mod
from cbiframe import (
    ModuleOperator,
    ModuleVector,
    adjoint_identity_check,
    canonical_duals,
    characterization_check,
    dual_check,
    frame_operator,
    transform_maps,
    transform_theorem_check,
    verify_biframe,
)
from cbiframe.biframe import integral_action
from cbiframe.corpus import (
    partition_example,
    random_instance,
    random_invertible_operator,
    random_polynomial_map,
    scalar_diag_map,
    zero_map,
)
from cbiframe.cstar import AlgebraDescriptor
from cbiframe.errors import NotSelfAdjointError, ShapeMismatch, SingularError
from cbiframe.quadrature import MeasureSpace


def test_frame_operator_of_example(worked, cc):
    S = frame_operator(worked.X, worked.Y, worked.space)
    assert S.max_abs_diff(ModuleOperator.right_multiplication(cc.diag([2, 2 / 3]))) < 1e-14


def test_frame_operator_of_zero_map(worked):
    Y0 = zero_map(worked.X.descriptor, 1, worked.space.panels)
    assert mod.op_norm(frame_operator(worked.X, Y0, worked.space)) == 0


def test_frame_operator_matches_defining_integral(rng):
    for family in ("sigma", "gram", "generic"):
        inst = random_instance(rng, family)
        S = frame_operator(inst.X, inst.Y, inst.space)
        for _ in range(100 // 3):
            f = ModuleVector.random(inst.X.descriptor, inst.X.rank, rng)
            assert (S @ f - integral_action(inst.X, inst.Y, inst.space, f)).norm() <= 1e-10 * max(1, mod.op_norm(S))


def test_shape_mismatch(worked, rng):
    other = random_polynomial_map(AlgebraDescriptor((2,)), 1, worked.space.panels, 1, rng)
    with pytest.raises(ShapeMismatch):
        frame_operator(worked.X, other, worked.space)


def test_verify_example(worked):
    r = verify_biframe(worked.X, worked.Y, worked.space)
    assert r.is_biframe
    assert r.lower == pytest.approx(2 / 3, abs=1e-12) and r.upper == pytest.approx(2, abs=1e-12)
    assert r.probes_passed == r.probes == 100
    assert not r.tight and not r.parseval
    assert r.quadrature["order"] == 8


def test_verify_swapped_order_is_identical(worked):
    a = verify_biframe(worked.X, worked.Y, worked.space).to_dict()
    b = verify_biframe(worked.Y, worked.X, worked.space).to_dict()
    assert a == b


def test_constant_orthonormal_map_is_parseval(desc):
    X = scalar_diag_map([(0, 1)], [[1], [1]]) if desc.block_sizes == (1, 1) else None
    space = MeasureSpace([(0, 1)])
    from cbiframe.quadrature import PolynomialMap

    X = PolynomialMap.constant(space.panels, ModuleVector.basis(desc, 1, 0))
    r = verify_biframe(X, X, space)
    assert r.is_biframe and r.tight and r.parseval
    assert r.lower == pytest.approx(1) and r.upper == pytest.approx(1)


def test_partition_example_is_parseval():
    inst = partition_example(3)
    r = verify_biframe(inst.X, inst.Y, inst.space)
    assert r.parseval


def test_literal_partition_example_is_not_a_biframe():
    inst = partition_example(2, literal=True)
    r = verify_biframe(inst.X, inst.Y, inst.space)
    assert not r.is_biframe
    assert r.self_adjoint_residual > 0.5
    assert "not self-adjoint" in r.diagnostic


def test_zero_map_is_not_a_biframe(worked):
    Y0 = zero_map(worked.X.descriptor, 1, worked.space.panels)
    r = verify_biframe(worked.X, Y0, worked.space)
    assert not r.is_biframe and r.lower == 0
    assert "not positive" in r.diagnostic


def test_non_self_adjoint_short_circuits(rng):
    inst = random_instance(rng, "generic")
    r = verify_biframe(inst.X, inst.Y, inst.space)
    assert r.self_adjoint_residual > 1e-3
    assert not r.is_biframe and r.probes_passed == 0


def test_adjoint_identity(worked, rng):
    assert adjoint_identity_check(worked.X, worked.Y, worked.space) <= 1e-12
    assert adjoint_identity_check(worked.X, worked.X, worked.space) <= 1e-12
    d = AlgebraDescriptor((2, 1))
    space = MeasureSpace([(0, 1)])
    for _ in range(10):
        X = random_polynomial_map(d, 2, space.panels, 2, rng)
        Y = random_polynomial_map(d, 2, space.panels, 2, rng)
        assert adjoint_identity_check(X, Y, space) <= 1e-10


def test_characterization(worked):
    assert characterization_check(worked.X, worked.Y, worked.space, 2 / 3)
    assert not characterization_check(worked.X, worked.Y, worked.space, 0.7)
    assert characterization_check(worked.X, worked.Y, worked.space, 0.0)


def test_characterization_agrees_with_probe_sweep(rng):
    for _ in range(8):
        inst = random_instance(rng, "gram")
        lower = verify_biframe(inst.X, inst.Y, inst.space).lower
        if lower < 1e-6:
            continue
        for A in (lower * (1 - 1e-3), lower * (1 + 1e-3) + 1e-6):
            assert characterization_check(inst.X, inst.Y, inst.space, A) == (A <= lower)


def test_characterization_needs_self_adjoint(rng):
    inst = random_instance(rng, "generic")
    with pytest.raises(NotSelfAdjointError):
        characterization_check(inst.X, inst.Y, inst.space, 0.1)


def test_transform_maps_pointwise(worked, rng):
    T = ModuleOperator.identity(worked.X.descriptor, 1)
    assert transform_maps(T, worked.X)(0.3).max_abs_diff(worked.X(0.3)) == 0
    inst = random_instance(rng, "sigma")
    U = random_invertible_operator(inst.X.descriptor, inst.X.rank, rng)
    for w in (0.0, 0.2, 0.9):
        assert transform_maps(U, inst.X)(w).max_abs_diff(U @ inst.X(w)) < 1e-12


def test_transform_by_identity_and_scalar(worked):
    I = ModuleOperator.identity(worked.X.descriptor, 1)
    r = transform_theorem_check(I, worked.X, worked.Y, worked.space)
    assert (r.transformed_lower, r.transformed_upper) == (r.lower, r.upper)
    r = transform_theorem_check(I * 2.0, worked.X, worked.Y, worked.space)
    assert r.transformed_lower == pytest.approx(8 / 3) and r.transformed_upper == pytest.approx(8)
    assert r.holds


def test_transform_by_block_scaling(worked, cc):
    # T = diag(2, 1): S' = diag(8, 2/3) sits exactly on both brackets
    T = ModuleOperator.right_multiplication(cc.diag([2, 1]))
    r = transform_theorem_check(T, worked.X, worked.Y, worked.space)
    assert r.holds
    assert r.slack_lower == pytest.approx(0, abs=1e-12) and r.slack_upper == pytest.approx(0, abs=1e-12)
    # T = diag(1, 2): S' = diag(2, 8/3) has strict slack on both sides
    T = ModuleOperator.right_multiplication(cc.diag([1, 2]))
    r = transform_theorem_check(T, worked.X, worked.Y, worked.space)
    assert r.holds
    assert r.slack_lower == pytest.approx(2 - 2 / 3) and r.slack_upper == pytest.approx(8 - 8 / 3)


def test_transform_conjugation_identity(rng):
    for _ in range(10):
        inst = random_instance(rng)
        T = random_invertible_operator(inst.X.descriptor, inst.X.rank, rng)
        r = transform_theorem_check(T, inst.X, inst.Y, inst.space, rng=rng)
        assert r.conjugation_residual <= 1e-9 * max(1.0, mod.op_norm(T) ** 2 * abs(r.upper))
        assert r.holds


def test_transform_requires_invertible(worked, cc):
    with pytest.raises(SingularError):
        transform_theorem_check(ModuleOperator.right_multiplication(cc.diag([1, 0])), worked.X, worked.Y, worked.space)


def test_canonical_duals_closed_form(worked, cc):
    Xd, Yd = canonical_duals(worked.X, worked.Y, worked.space)
    for w in (0.0, 0.3, 1.0):
        assert Xd(w).component(0).max_abs_diff(cc.diag([w, 1.5 * (1 - w)])) < 1e-14
    assert dual_check(Xd, worked.Y, worked.space) <= 1e-12
    assert dual_check(worked.X, Yd, worked.space) <= 1e-12


def test_dual_check_against_zero(worked):
    Y0 = zero_map(worked.X.descriptor, 1, worked.space.panels)
    assert dual_check(worked.X, Y0, worked.space) == pytest.approx(1.0)


def test_dual_check_matches_basis_pair_definition(rng):
    # residual equals the max over matrix-unit basis pairs of |<f, g> - int <f, X'> <Y, g>|
    inst = random_instance(rng, "gram")
    Xd, _ = canonical_duals(inst.X, inst.Y, inst.space)
    Xp = Xd.transform(ModuleOperator.identity(inst.X.descriptor, inst.X.rank) * 1.01)
    d, n = inst.X.descriptor, inst.X.rank
    worst = 0.0
    for b, k in enumerate(d.block_sizes):
        for j in range(n):
            for p in range(k):
                for q in range(k):
                    rows = [np.zeros((kk, n * kk), complex) for kk in d.block_sizes]
                    rows[b][p, j * k + q] = 1.0
                    f = ModuleVector(d, n, rows)
                    lhs_minus = integral_action(Xp, inst.Y, inst.space, f) - f
                    worst = max(worst, max(float(np.max(np.abs(r))) for r in lhs_minus.rows))
    assert dual_check(Xp, inst.Y, inst.space) == pytest.approx(worst, rel=1e-9)


def test_canonical_reconstruction(rng):
    for family in ("sigma", "gram"):
        inst = random_instance(rng, family)
        if not verify_biframe(inst.X, inst.Y, inst.space).is_biframe:
            continue
        Xd, Yd = canonical_duals(inst.X, inst.Y, inst.space)
        for _ in range(10):
            f = ModuleVector.random(inst.X.descriptor, inst.X.rank, rng)
            assert (f - integral_action(Xd, inst.Y, inst.space, f)).norm() <= 1e-8


def test_canonical_duals_errors(worked, rng):
    inst = random_instance(rng, "generic")
    with pytest.raises(NotSelfAdjointError):
        canonical_duals(inst.X, inst.Y, inst.space)
    Y0 = zero_map(worked.X.descriptor, 1, worked.space.panels)
    with pytest.raises(SingularError):
        canonical_duals(worked.X, Y0, worked.space)
