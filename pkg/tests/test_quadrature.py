import numpy as np
import pytest

from cbiframe import AlgebraDescriptor, ModuleOperator, ModuleVector
from cbiframe.corpus import worked_example, random_polynomial_map, scalar_diag_map
from cbiframe.errors import ShapeMismatch
from cbiframe.quadrature import (
    MeasureSpace,
    PolynomialMap,
    ProductSpace,
    TabulatedMap,
    indicator_partition_map,
    integrate_alg,
    integrate_mod,
    map_eval,
)
from cbiframe.symbols import PolynomialSymbol


def test_default_rule():
    s = MeasureSpace([(0, 1)])
    assert (s.order, s.subdivisions, s.size) == (8, 4, 32)
    assert s.weights.sum() == pytest.approx(1.0, abs=1e-15)
    assert np.all((s.nodes > 0) & (s.nodes < 1))


def test_panel_validation():
    with pytest.raises(ValueError):
        MeasureSpace([])
    with pytest.raises(ValueError):
        MeasureSpace([(1, 1)])
    with pytest.raises(ValueError):
        MeasureSpace([(0, 0.6), (0.5, 1)])
    with pytest.raises(ValueError):
        MeasureSpace([(0, 1)], order=0)


def test_measure_and_panel_lookup():
    s = MeasureSpace([(0, 0.5), (1, 3)])
    assert s.measure == pytest.approx(2.5)
    assert s.weights.sum() == pytest.approx(2.5)
    assert s.panel_index(2.0) == 1
    with pytest.raises(ValueError):
        s.panel_index(0.75)
    assert set(s.panel_of_node[s.nodes > 1]) == {1}


@pytest.mark.parametrize("order", [1, 2, 4, 8])
def test_polynomial_exactness(order):
    s = MeasureSpace([(0.0, 0.3), (0.3, 2.0)], order=order, subdivisions=3)
    for k in range(2 * order):
        exact = (2.0 ** (k + 1)) / (k + 1)
        assert np.sum(s.weights * s.nodes**k) == pytest.approx(exact, rel=1e-13)


def test_cubic_integral():
    s = MeasureSpace([(0, 1)], order=2, subdivisions=1)
    assert np.sum(s.weights * s.nodes**3) == pytest.approx(0.25, abs=1e-15)


def test_integrate_alg_example(cc):
    s = MeasureSpace([(0, 1)])
    vals = [cc.diag([6 * w**2, 1 - w**2]) for w in s.nodes]
    assert integrate_alg(vals, s).max_abs_diff(cc.diag([2, 2 / 3])) < 1e-14
    assert integrate_alg([cc.zero()] * s.size, s).allclose(cc.zero())
    with pytest.raises(ShapeMismatch):
        integrate_alg(vals[:-1], s)


def test_integrate_mod_is_componentwise(desc, rng):
    s = MeasureSpace([(0, 1)], order=3, subdivisions=2)
    X = random_polynomial_map(desc, 2, s.panels, 2, rng)
    total = integrate_mod(X.values_at_nodes(s), s)
    for j in range(2):
        expected = integrate_alg([X(w).component(j) for w in s.nodes], s)
        assert total.component(j).max_abs_diff(expected) < 1e-13


def test_integrate_mod_closed_form(cc):
    # int_0^1 (w, w^2) dw = (1/2, 1/3) in A^2
    s = MeasureSpace([(0, 1)])
    vals = [ModuleVector.from_components([cc.scalar(w), cc.scalar(w * w)]) for w in s.nodes]
    out = integrate_mod(vals, s)
    assert out.component(0).max_abs_diff(cc.scalar(0.5)) < 1e-15
    assert out.component(1).max_abs_diff(cc.scalar(1 / 3)) < 1e-15


def test_map_eval_example(worked, cc):
    v = map_eval(worked.X, 0.5)
    assert v.component(0).allclose(cc.diag([1, 0.5]))
    with pytest.raises(ValueError):
        worked.X(1.5)


def test_constant_map(desc, rng):
    v = ModuleVector.random(desc, 2, rng)
    X = PolynomialMap.constant([(0, 1)], v)
    assert X(0.123).max_abs_diff(v) == 0
    assert X.degree == 0


def test_from_entries_layout(rng):
    # entry (r, c) of component j on block b has coefficients entries[p][b][j, r, c]
    d = AlgebraDescriptor((2,))
    e = rng.standard_normal((2, 2, 2, 3))
    X = PolynomialMap.from_entries(d, [(0, 1)], [[e]])
    w = 0.37
    comp = X(w).component(1).blocks[0]
    expected = np.polynomial.polynomial.polyval(w, e[1].transpose(2, 0, 1))
    assert np.max(np.abs(comp - expected)) < 1e-14


def test_tabulate_round_trip(desc, rng):
    s = MeasureSpace([(0, 0.4), (0.4, 1)], order=3, subdivisions=2)
    X = random_polynomial_map(desc, 3, s.panels, 3, rng)
    T = X.tabulated(s)
    assert isinstance(T, TabulatedMap)
    for q in (0, 5, s.size - 1):
        assert T(s.nodes[q]).max_abs_diff(X(s.nodes[q])) < 1e-14
    with pytest.raises(ValueError):
        T(0.5)
    with pytest.raises(ShapeMismatch):
        T.tabulate(s.refined())


def test_tabulate_requires_matching_panels(worked):
    with pytest.raises(ShapeMismatch):
        worked.X.tabulate(MeasureSpace([(0, 0.5), (0.5, 1)]))


def test_panelwise_evaluation(cc):
    # different polynomials on different panels
    panels = [(0, 1), (1, 2)]
    X = PolynomialMap.from_entries(
        cc, panels, [[np.array([[[[1, 0]]]]), np.array([[[[0, 1]]]])], [np.array([[[[5, 0]]]]), np.array([[[[1, 1]]]])]]
    )
    assert X(0.5).component(0).allclose(cc.diag([1, 0.5]))
    assert X(1.5).component(0).allclose(cc.diag([5, 2.5]))
    s = MeasureSpace(panels)
    tab = X.tabulate(s)
    assert np.allclose(tab[0][s.panel_of_node == 1, 0, 0], 5)


def test_transform_and_scaled_maps(desc, rng):
    s = MeasureSpace([(0, 1)], order=4, subdivisions=1)
    X = random_polynomial_map(desc, 2, s.panels, 2, rng)
    T = ModuleOperator.random(desc, 2, rng)
    w = 0.61
    assert X.transform(T)(w).max_abs_diff(T @ X(w)) < 1e-13
    sigma = PolynomialSymbol(s.panels, [[1.0, 2.0, -1.0]])
    assert X.scaled(sigma)(w).max_abs_diff(X(w) * sigma(w)) < 1e-13
    assert X.scaled(sigma).degree == 4
    assert X.scaled(0.5)(w).max_abs_diff(X(w) * 0.5) < 1e-15
    tab = X.tabulated(s).transform(T)
    assert tab(s.nodes[2]).max_abs_diff(T @ X(s.nodes[2])) < 1e-13


def test_map_addition(desc, rng):
    X = random_polynomial_map(desc, 2, [(0, 1)], 1, rng)
    Y = random_polynomial_map(desc, 2, [(0, 1)], 3, rng)
    assert (X + Y)(0.2).max_abs_diff(X(0.2) + Y(0.2)) < 1e-14


def test_indicator_partition_map(cc):
    s = MeasureSpace([(0, 0.25), (0.25, 0.5), (0.5, 1.0)])
    vecs = [ModuleVector.basis(cc, 2, 0), ModuleVector.basis(cc, 2, 1)]
    F = indicator_partition_map(s, [[0, 1], [2]], vecs)
    assert F(0.3).max_abs_diff(vecs[0] * (1 / np.sqrt(0.5))) < 1e-15
    assert F(0.7).max_abs_diff(vecs[1] * (1 / np.sqrt(0.5))) < 1e-15
    with pytest.raises(ValueError):
        indicator_partition_map(s, [[0], [2]], vecs)
    with pytest.raises(ValueError):
        indicator_partition_map(s, [[0, 1, 2]], vecs)


def test_product_space_layout():
    a = MeasureSpace([(0, 1)], order=2, subdivisions=1)
    b = MeasureSpace([(0, 2)], order=3, subdivisions=1)
    p = ProductSpace(a, b)
    assert p.size == 6 and p.measure == pytest.approx(2.0)
    # left factor major
    assert np.allclose(p.nodes[:3, 0], a.nodes[0]) and np.allclose(p.nodes[:3, 1], b.nodes)
    assert np.allclose(p.weights, np.outer(a.weights, b.weights).ravel())
    # exactness is inherited per axis
    f = p.nodes[:, 0] ** 3 * p.nodes[:, 1] ** 5
    assert np.sum(p.weights * f) == pytest.approx(0.25 * 2**6 / 6, rel=1e-14)
    assert p == ProductSpace(a, b) and p != ProductSpace(b, a)
    assert p.describe()["product"][0]["order"] == 2


def test_scalar_diag_helper_matches_example():
    X = scalar_diag_map([(0, 1)], [[0, 2], [1, -1]])
    assert X(0.25).max_abs_diff(worked_example().X(0.25)) == 0
