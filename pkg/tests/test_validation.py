import numpy as np
import pytest

from choipoly._validation import (
    DimensionError,
    Dims,
    NotHermitianError,
    check_bipartite,
    check_dims,
    check_hermitian,
    check_matrix,
    check_vector,
    is_hermitian,
)


def test_check_dims():
    assert check_dims([2, 3]) == Dims(2, 3)
    assert check_dims((2, 3)).total == 6
    for bad in [(0, 2), (2,), "ab", None]:
        with pytest.raises(DimensionError):
            check_dims(bad)


def test_check_matrix_and_vector():
    assert check_matrix([[1, 2], [3, 4]]).dtype == complex
    with pytest.raises(DimensionError):
        check_matrix([1, 2])
    with pytest.raises(ValueError):
        check_matrix([[np.nan]])
    np.testing.assert_array_equal(check_vector([[1], [2]], 2), [1, 2])
    with pytest.raises(DimensionError):
        check_vector([1, 2, 3], 2)
    with pytest.raises(DimensionError):
        check_vector(np.eye(2))


def test_check_bipartite():
    check_bipartite(np.eye(6), (2, 3))
    with pytest.raises(DimensionError):
        check_bipartite(np.eye(6), (2, 2))
    with pytest.raises(DimensionError):
        check_bipartite(np.ones((6, 5)), (2, 3))


def test_hermitian_checks():
    h = np.array([[1, 1j], [-1j, 2]])
    assert is_hermitian(h)
    assert not is_hermitian(np.array([[0, 1], [0, 0]]))
    # relative tolerance: tiny asymmetry on a large matrix is accepted
    big = 1e6 * np.eye(2)
    big[0, 1] = 1e-4
    assert is_hermitian(big)
    np.testing.assert_allclose(check_hermitian(h + 1e-12j * np.eye(2)), h)
    with pytest.raises(NotHermitianError):
        check_hermitian([[0, 1], [0, 0]])
