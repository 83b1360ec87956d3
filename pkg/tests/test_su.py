import numpy as np
import pytest
from numpy.testing import assert_allclose

from magicsimplex.errors import UnsupportedDimensionError
from magicsimplex.su import generators


@pytest.mark.parametrize("d", [2, 3, 4])
def test_generator_count(d):
    basis = generators(d)
    assert len(basis.generators) == d * d - 1


@pytest.mark.parametrize("d", [2, 3, 4])
def test_hermitian_traceless(d):
    for g in generators(d).generators:
        assert_allclose(g, g.conj().T, atol=1e-15)
        assert abs(np.trace(g)) < 1e-15


@pytest.mark.parametrize("d", [2, 3, 4])
def test_orthogonality_normalization(d):
    """Tr[g_i g_j] = 2 delta_ij for the whole basis."""
    basis = generators(d).generators
    gram = np.array([[np.trace(gi @ gj).real for gj in basis] for gi in basis])
    assert_allclose(gram, 2 * np.eye(d * d - 1), atol=1e-14)


def test_d3_diagonal_positions():
    # the two diagonal generators sit at 1-based indices 3 and 8
    basis = generators(3)
    assert basis.diagonal_indices() == (2, 7)
    for k in basis.diagonal_indices():
        g = basis.generators[k]
        assert_allclose(g, np.diag(np.diag(g)), atol=1e-15)


def test_d4_diagonal_positions():
    basis = generators(4)
    assert basis.diagonal_indices() == (2, 7, 14)


def test_d3_first_generator_is_symmetric_coupling():
    g1 = generators(3).generators[0]
    expected = np.zeros((3, 3))
    expected[0, 1] = expected[1, 0] = 1.0
    assert_allclose(g1, expected)


def test_unsupported_dimension():
    with pytest.raises(UnsupportedDimensionError):
        generators(5)
