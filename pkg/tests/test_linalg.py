import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from choipoly._validation import DimensionError, NotHermitianError
from choipoly.linalg import (
    check_projection,
    hermitian_eig,
    is_product_vector,
    is_psd,
    jacobi_eigh,
    kernel_projector,
    kron,
    min_eigenvalue,
    numerical_rank,
    partial_transpose_first,
    partial_transpose_second,
    product_factors,
    schmidt_singular_values,
)

from conftest import rand_complex, rand_hermitian, rand_psd, rand_unit


def loop_partial_transpose(c, m, n, first=False):
    # entry-by-entry definition on the (i,k),(j,l) index pairs
    out = np.zeros_like(c)
    for i in range(m):
        for k in range(n):
            for j in range(m):
                for l in range(n):
                    if first:
                        out[i * n + k, j * n + l] = c[j * n + k, i * n + l]
                    else:
                        out[i * n + k, j * n + l] = c[i * n + l, j * n + k]
    return out


def test_kron_index_convention():
    x = np.array([1, 2])
    y = np.array([10, 20, 30])
    np.testing.assert_array_equal(kron(x, y), [10, 20, 30, 20, 40, 60])


@pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (3, 2), (3, 3), (2, 4)])
def test_partial_transposes_match_loops(rng, m, n):
    c = rand_complex(rng, m * n, m * n)
    np.testing.assert_allclose(partial_transpose_second(c, (m, n)), loop_partial_transpose(c, m, n))
    np.testing.assert_allclose(partial_transpose_first(c, (m, n)), loop_partial_transpose(c, m, n, first=True))


def test_partial_transpose_on_products(rng):
    a = rand_complex(rng, 2, 2)
    b = rand_complex(rng, 3, 3)
    np.testing.assert_allclose(partial_transpose_second(np.kron(a, b), (2, 3)), np.kron(a, b.T))
    np.testing.assert_allclose(partial_transpose_first(np.kron(a, b), (2, 3)), np.kron(a.T, b))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_partial_transpose_involution_and_full_transpose(m, n, seed):
    rng = np.random.default_rng(seed)
    c = rand_complex(rng, m * n, m * n)
    g = partial_transpose_second(c, (m, n))
    np.testing.assert_array_equal(partial_transpose_second(g, (m, n)), c)
    np.testing.assert_allclose(partial_transpose_first(g, (m, n)), c.T)


def test_partial_transpose_rejects_bad_shape():
    with pytest.raises(DimensionError):
        partial_transpose_second(np.eye(5), (2, 3))
    with pytest.raises(DimensionError):
        partial_transpose_second(np.eye(6), (0, 6))


@pytest.mark.parametrize("d", [1, 2, 5, 9])
def test_jacobi_matches_lapack(rng, d):
    h = rand_hermitian(rng, d)
    w_j, v_j = jacobi_eigh(h)
    np.testing.assert_allclose(w_j, np.linalg.eigvalsh(h), atol=1e-12)
    np.testing.assert_allclose(v_j.conj().T @ v_j, np.eye(d), atol=1e-12)
    np.testing.assert_allclose(jacobi_eigh(h).reconstruct(), h, atol=1e-12)


def test_jacobi_degenerate_spectrum():
    # projector with eigenvalue 1 of multiplicity 2
    v = np.array([[1, 1j, 0], [0, 0, 1]]).T / np.array([np.sqrt(2), 1])
    p = v @ v.conj().T
    w, _ = hermitian_eig(p, method="jacobi")
    np.testing.assert_allclose(w, [0, 1, 1], atol=1e-14)


def test_hermitian_eig_rejects_nonhermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eig(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        hermitian_eig(np.eye(2), method="qr")


def test_is_psd_and_min_eigenvalue(rng):
    p = rand_psd(rng, 4, rank=2)
    assert is_psd(p)
    assert not is_psd(p - 1e-3 * np.eye(4))
    assert min_eigenvalue(np.diag([3.0, -2.0, 1.0])) == pytest.approx(-2.0)


def test_numerical_rank(rng):
    a = rand_complex(rng, 6, 2) @ rand_complex(rng, 2, 6)
    assert numerical_rank(a) == 2
    assert numerical_rank(np.zeros((3, 3))) == 0
    assert numerical_rank(np.diag([1.0, 1e-12])) == 1


def test_kernel_projector(rng):
    p = rand_psd(rng, 5, rank=3)
    k = kernel_projector(p)
    np.testing.assert_allclose(k @ k, k, atol=1e-10)
    assert numerical_rank(k) == 2
    np.testing.assert_allclose(p @ k, 0, atol=1e-9)
    np.testing.assert_allclose(kernel_projector(np.eye(3)), 0)


def test_product_vectors(rng):
    x, y = rand_unit(rng, 2), rand_unit(rng, 3)
    z = np.kron(x, y)
    s = schmidt_singular_values(z, (2, 3))
    np.testing.assert_allclose(s, [1, 0], atol=1e-14)
    a, b = product_factors(z, (2, 3))
    np.testing.assert_allclose(np.kron(a, b), z, atol=1e-14)
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert product_factors(bell, (2, 2)) is None
    assert not is_product_vector(bell, (2, 2))
    assert not is_product_vector(np.zeros(4), (2, 2))


def test_check_projection():
    v = np.array([1, 1j]) / np.sqrt(2)
    p = np.outer(v, v.conj())
    np.testing.assert_allclose(check_projection(p), p)
    with pytest.raises(ValueError):
        check_projection(2 * p)
