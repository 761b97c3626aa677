import numpy as np
import pytest

from cbiframe import module as mod
from cbiframe import AlgebraDescriptor, ModuleOperator, ModuleVector, frame_operator, verify_biframe
from cbiframe.corpus import partition_example, random_instance, random_invertible_operator, random_symbol, zero_map
from cbiframe.cstar import is_positive
from cbiframe.errors import NotSelfAdjointError
from cbiframe.quadrature import MeasureSpace, PolynomialMap, ProductSpace
from cbiframe.symbols import PolynomialSymbol
from cbiframe.tensor import (
    TensorMap,
    alg_tensor,
    kron_permutation,
    mod_tensor,
    op_tensor,
    tensor_biframe_check,
    tensor_bounds_lemma_check,
    tensor_descriptor,
    tensor_invertibility_check,
    tensor_multiplier_factorization_check,
    tensor_operator_factorization_check,
)
from conftest import random_positive

DESCS = [AlgebraDescriptor(b) for b in [(1,), (2,), (1, 2)]]


def test_descriptor_blocks():
    d = tensor_descriptor(AlgebraDescriptor((1, 2)), AlgebraDescriptor((2, 3)))
    assert d.block_sizes == (2, 3, 4, 6)


def test_alg_tensor_diag(cc):
    a = cc.diag([2, 2 / 3])
    t = alg_tensor(a, a)
    assert t.max_abs_diff(tensor_descriptor(cc, cc).diag([4, 4 / 3, 4 / 3, 4 / 9])) < 1e-15


def test_alg_tensor_algebra_rules(rng):
    for d1 in DESCS:
        for d2 in DESCS:
            a, b = d1.random(rng), d1.random(rng)
            c, e = d2.random(rng), d2.random(rng)
            assert (alg_tensor(a, c) * alg_tensor(b, e)).max_abs_diff(alg_tensor(a * b, c * e)) < 1e-12
            assert alg_tensor(a, c).H.max_abs_diff(alg_tensor(a.H, c.H)) < 1e-14
            assert alg_tensor(a, c).norm() == pytest.approx(a.norm() * c.norm())
            assert is_positive(alg_tensor(random_positive(d1, rng), random_positive(d2, rng)))


def test_inner_product_and_norm_factorize(rng):
    for d1 in DESCS:
        for d2 in DESCS:
            x, y = ModuleVector.random(d1, 2, rng), ModuleVector.random(d1, 2, rng)
            u, v = ModuleVector.random(d2, 3, rng), ModuleVector.random(d2, 3, rng)
            lhs = mod.inner(mod_tensor(x, u), mod_tensor(y, v))
            assert lhs.max_abs_diff(alg_tensor(mod.inner(x, y), mod.inner(u, v))) < 1e-12
            assert mod_tensor(x, u).norm() == pytest.approx(x.norm() * u.norm())


def test_tensor_components_are_lexicographic(rng):
    d1, d2 = AlgebraDescriptor((2,)), AlgebraDescriptor((1, 2))
    x, u = ModuleVector.random(d1, 2, rng), ModuleVector.random(d2, 3, rng)
    t = mod_tensor(x, u)
    for j1 in range(2):
        for j2 in range(3):
            assert t.component(j1 * 3 + j2).max_abs_diff(alg_tensor(x.component(j1), u.component(j2))) < 1e-14


def test_operator_tensor_rules(rng):
    for d1 in DESCS:
        for d2 in DESCS:
            T1, U1 = ModuleOperator.random(d1, 2, rng), ModuleOperator.random(d1, 2, rng)
            T2, U2 = ModuleOperator.random(d2, 2, rng), ModuleOperator.random(d2, 2, rng)
            x, u = ModuleVector.random(d1, 2, rng), ModuleVector.random(d2, 2, rng)
            T = op_tensor(T1, T2)
            assert (T @ mod_tensor(x, u)).max_abs_diff(mod_tensor(T1 @ x, T2 @ u)) < 1e-11
            assert (T @ op_tensor(U1, U2)).max_abs_diff(op_tensor(T1 @ U1, T2 @ U2)) < 1e-11
            assert T.H.max_abs_diff(op_tensor(T1.H, T2.H)) < 1e-14
            assert mod.op_norm(T) == pytest.approx(mod.op_norm(T1) * mod.op_norm(T2))


def test_operator_tensor_entries(rng):
    d1, d2 = AlgebraDescriptor((2,)), AlgebraDescriptor((1, 2))
    T1, T2 = ModuleOperator.random(d1, 2, rng), ModuleOperator.random(d2, 3, rng)
    T = op_tensor(T1, T2)
    for j1 in range(2):
        for i1 in range(2):
            for j2 in range(3):
                for i2 in range(3):
                    expected = alg_tensor(T1.entry(j1, i1), T2.entry(j2, i2))
                    assert T.entry(j1 * 3 + j2, i1 * 3 + i2).max_abs_diff(expected) < 1e-14


def test_kron_permutation(rng):
    for n1, k1, n2, k2 in [(1, 1, 1, 1), (2, 1, 3, 1), (2, 2, 1, 3), (3, 2, 2, 2)]:
        T1 = ModuleOperator.random(AlgebraDescriptor((k1,)), n1, rng)
        T2 = ModuleOperator.random(AlgebraDescriptor((k2,)), n2, rng)
        perm = kron_permutation(n1, k1, n2, k2)
        assert sorted(perm) == list(range(n1 * k1 * n2 * k2))
        raw = np.kron(T1.reps[0], T2.reps[0])
        np.testing.assert_allclose(op_tensor(T1, T2).reps[0], raw[perm][:, perm], atol=1e-14)


def test_tensor_map_tabulation_matches_pointwise(worked, rng):
    inst = random_instance(rng, "generic")
    X = TensorMap(worked.X, inst.X)
    space = ProductSpace(worked.space, inst.space)
    tab = X.tabulate(space)
    nodes = space.nodes
    for q in (0, 5, len(nodes) - 1):
        v = X(nodes[q])
        for b, r in enumerate(v.rows):
            np.testing.assert_allclose(tab[b][q], r, atol=1e-13)
    with pytest.raises(TypeError):
        X.tabulate(worked.space)


def test_tensor_bounds_on_example(worked):
    r = tensor_biframe_check(worked.X, worked.Y, worked.space, worked.X, worked.Y, worked.space, rng=0)
    assert r.holds and r.equivalence_holds and r.bounds_hold
    assert r.tensor["lower"] == pytest.approx(4 / 9) and r.tensor["upper"] == pytest.approx(4)
    assert r.lower_product == pytest.approx(4 / 9) and r.upper_product == pytest.approx(4)


def test_tensor_factorization_on_example(worked):
    assert tensor_operator_factorization_check(worked.X, worked.Y, worked.space, worked.X, worked.Y, worked.space) < 1e-12
    assert tensor_bounds_lemma_check(worked.X, worked.Y, worked.space, worked.X, worked.Y, worked.space)


def test_tensor_factorization_random(rng):
    for _ in range(5):
        a, b = random_instance(rng), random_instance(rng)
        res = tensor_operator_factorization_check(a.X, a.Y, a.space, b.X, b.Y, b.space)
        S1, S2 = frame_operator(a.X, a.Y, a.space), frame_operator(b.X, b.Y, b.space)
        assert res <= 1e-10 * max(1.0, mod.op_norm(S1) * mod.op_norm(S2))


def test_bounds_lemma_needs_self_adjoint(worked, rng):
    inst = random_instance(rng, "generic")
    with pytest.raises(NotSelfAdjointError):
        tensor_bounds_lemma_check(inst.X, inst.Y, inst.space, worked.X, worked.Y, worked.space)


def test_partition_tensor_is_parseval():
    a, b = partition_example(2), partition_example(3)
    r = tensor_biframe_check(a.X, a.Y, a.space, b.X, b.Y, b.space, rng=0)
    assert r.holds and r.tensor["parseval"]


def test_degenerate_factor(worked):
    Y0 = zero_map(worked.X.descriptor, 1, worked.space.panels)
    r = tensor_biframe_check(worked.X, Y0, worked.space, worked.X, worked.Y, worked.space, rng=0)
    assert not r.tensor["is_biframe"] and not r.left["is_biframe"]
    assert r.equivalence_holds and r.bounds_hold is None and r.holds


def test_rank_deficient_factor(worked):
    d = AlgebraDescriptor((1,))
    space = MeasureSpace([(0.0, 1.0)])
    R = PolynomialMap.constant(space.panels, ModuleVector.basis(d, 3, 0))
    r = tensor_biframe_check(worked.X, worked.Y, worked.space, R, R, space, rng=0)
    assert not r.right["is_biframe"] and not r.tensor["is_biframe"]
    assert r.equivalence_holds


def test_sign_flip_breaks_the_converse(worked):
    """(X, -X) is not a biframe, yet (X (x) X, (-X) (x) (-X)) equals (X (x) X, X (x) X)."""
    negX = worked.X.scaled(PolynomialSymbol(worked.space.panels, [[-1.0]]))
    r = tensor_biframe_check(worked.X, negX, worked.space, worked.X, negX, worked.space, rng=0)
    assert not r.left["is_biframe"] and not r.right["is_biframe"]
    assert r.tensor["is_biframe"]
    assert r.equivalence_holds is False


def test_invertibility_agreement(worked, cc):
    T1 = ModuleOperator.right_multiplication(cc.diag([2, 1 + 1j]))
    T2 = ModuleOperator.right_multiplication(cc.diag([0.5, 3]))
    r = tensor_invertibility_check(T1, T2, worked.X, worked.Y, worked.space, worked.X, worked.Y, worked.space, rng=0)
    assert r.agree and r.transformed_is_biframe and r.tensor_invertible and r.bracket_holds and r.holds
    singular = ModuleOperator.right_multiplication(cc.diag([0, 1]))
    r = tensor_invertibility_check(T1, singular, worked.X, worked.Y, worked.space, worked.X, worked.Y, worked.space, rng=0)
    assert r.agree and not r.transformed_is_biframe and not r.tensor_invertible and not r.factors_invertible
    assert r.sigma_min_tensor == pytest.approx(0, abs=1e-14)


def test_invertibility_random(worked, rng):
    for _ in range(3):
        inst = random_instance(rng, "sigma")
        if not verify_biframe(inst.X, inst.Y, inst.space).is_biframe:
            continue
        T1 = random_invertible_operator(worked.X.descriptor, 1, rng)
        T2 = random_invertible_operator(inst.X.descriptor, inst.X.rank, rng)
        r = tensor_invertibility_check(T1, T2, worked.X, worked.Y, worked.space, inst.X, inst.Y, inst.space, rng=rng)
        assert r.holds


def test_separable_multiplier(worked, rng):
    w = PolynomialSymbol(worked.space.panels, [[0, 1]])
    one_minus_w = PolynomialSymbol(worked.space.panels, [[1, -1]])
    args = (worked.X, worked.Y, worked.space, worked.X, worked.Y, worked.space)
    assert tensor_multiplier_factorization_check(w, one_minus_w, *args) < 1e-12
    assert tensor_multiplier_factorization_check(1.0, 1.0, *args) < 1e-12
    inst = random_instance(rng)
    m = random_symbol(inst.space.panels, rng)
    assert tensor_multiplier_factorization_check(w, m, worked.X, worked.Y, worked.space, inst.X, inst.Y, inst.space) < 1e-10
