import numpy as np
import pytest

from taucorr import gauss_legendre


@pytest.mark.parametrize("order", [1, 2, 4, 8, 16, 32, 64])
def test_matches_numpy_reference(order):
    nodes, weights = gauss_legendre(order)
    ref_nodes, ref_weights = np.polynomial.legendre.leggauss(order)
    assert np.allclose(nodes, ref_nodes, atol=1e-14)
    assert np.allclose(weights, ref_weights, atol=1e-14)


@pytest.mark.parametrize("order", [4, 9, 20])
def test_polynomial_exactness(order):
    nodes, weights = gauss_legendre(order)
    for degree in range(2 * order):
        exact = 0.0 if degree % 2 else 2.0 / (degree + 1)
        assert np.dot(weights, nodes**degree) == pytest.approx(exact, abs=1e-13)


def test_weights_sum_to_two():
    for order in (3, 7, 33):
        _, weights = gauss_legendre(order)
        assert weights.sum() == pytest.approx(2.0, abs=1e-14)
        assert np.all(weights > 0)


def test_nodes_sorted_and_symmetric():
    nodes, weights = gauss_legendre(12)
    assert np.all(np.diff(nodes) > 0)
    assert np.allclose(nodes, -nodes[::-1], atol=1e-15)
    assert np.allclose(weights, weights[::-1], atol=1e-15)


@pytest.mark.parametrize("order", [0, -3, 65])
def test_order_bounds(order):
    with pytest.raises(ValueError, match="order must be in 1..64"):
        gauss_legendre(order)
