import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohkit.errors import (
    DimensionMismatchError,
    MissingSplitError,
    NonHermitianError,
    NotPSDError,
    TraceMismatchError,
)
from cohkit.matcore import (
    DensityMatrix,
    dephase,
    frobenius,
    herm_eigvals,
    partial_trace,
    product_of_reductions,
    schatten1,
    tensor,
)
from cohkit.states import max_entangled_ket, pure_dm, separable_entangled_family, uniform_ket

SX = np.array([[0, 1], [1, 0]], dtype=complex)


def random_hermitian(dim, rng):
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (x + x.conj().T) / 2


def random_unitary(dim, rng):
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(x)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def charpoly_roots_3x3(m):
    # independent oracle: characteristic polynomial coefficients from traces
    # and determinant, solved by numpy's polynomial root finder
    tr = np.trace(m)
    minors = (
        m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
        + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
        + m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    )
    det = np.linalg.det(m)
    roots = np.roots([1.0, -tr.real, minors.real, -det.real])
    return np.sort(roots.real)[::-1]


class TestHermEigvals:
    def test_diagonal(self):
        assert np.allclose(herm_eigvals(np.diag([3.0, 1.0, 2.0])), [3, 2, 1])

    def test_pauli_x(self):
        assert np.allclose(herm_eigvals(SX), [1, -1])

    def test_ones_shift(self):
        # (J - I)/3 with J all ones: rank-1 plus identity shift
        m = (np.ones((3, 3), dtype=complex) - np.eye(3)) / 3
        got = herm_eigvals(m)
        assert np.allclose(got, [2 / 3, -1 / 3, -1 / 3], atol=1e-12)
        assert np.allclose(got, charpoly_roots_3x3(m), atol=1e-9)

    def test_non_hermitian_rejected(self):
        with pytest.raises(NonHermitianError):
            herm_eigvals(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_reconstruction_residual(self):
        rng = np.random.default_rng(11)
        for dim in (2, 5, 9):
            m = random_hermitian(dim, rng)
            w, v = np.linalg.eigh(m)
            assert np.max(np.abs((v * w) @ v.conj().T - m)) < 1e-9 * dim

    def test_descending_random(self):
        rng = np.random.default_rng(3)
        w = herm_eigvals(random_hermitian(6, rng))
        assert np.all(np.diff(w) <= 0)


class TestNorms:
    def test_schatten1_zero(self):
        assert schatten1(np.zeros((3, 3))) == 0.0

    def test_schatten1_diag(self):
        assert schatten1(np.diag([0.5, -0.5])) == pytest.approx(1.0, abs=1e-14)

    def test_schatten1_rank_one_shift(self):
        # |psi><psi| - I/4 has spectrum {3/4, -1/4 x3} by rank-1 perturbation
        psi = uniform_ket(4)
        m = np.outer(psi, psi.conj()) - np.eye(4) / 4
        assert schatten1(m) == pytest.approx(1.5, abs=1e-12)

    def test_schatten1_general_matrix_uses_singular_values(self):
        m = np.array([[0, 1], [0, 0]], dtype=complex)
        assert schatten1(m) == pytest.approx(1.0, abs=1e-12)

    def test_frobenius_identity(self):
        assert frobenius(np.eye(3)) == pytest.approx(np.sqrt(3), abs=1e-14)
        assert frobenius(np.diag([0.5, -0.5])) == pytest.approx(1 / np.sqrt(2), abs=1e-14)

    def test_frobenius_below_schatten1_sweep(self):
        # 10^3 random matrices per dimension 2..9
        rng = np.random.default_rng(7)
        for dim in range(2, 10):
            for _ in range(1000):
                m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
                assert frobenius(m) <= schatten1(m) + 1e-9

    def test_schatten1_unitary_invariance(self):
        rng = np.random.default_rng(17)
        for dim in (2, 4, 7):
            a = random_hermitian(dim, rng)
            u = random_unitary(dim, rng)
            assert abs(schatten1(u.conj().T @ a @ u) - schatten1(a)) < 1e-9

    def test_triangle_inequality(self):
        rng = np.random.default_rng(23)
        for _ in range(200):
            dim = int(rng.integers(2, 8))
            a = random_hermitian(dim, rng)
            b = random_hermitian(dim, rng)
            assert schatten1(a + b) <= schatten1(a) + schatten1(b) + 1e-9

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 6), st.integers(0, 2**31 - 1))
    def test_frobenius_below_schatten1_property(self, dim, seed):
        rng = np.random.default_rng(seed)
        m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        assert frobenius(m) <= schatten1(m) + 1e-9


class TestTensor:
    def test_identities(self):
        assert np.array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))
        assert np.array_equal(tensor(np.diag([1, 0]), np.diag([0, 1])),
                              np.diag([0, 1, 0, 0]).astype(complex))

    def test_matches_direct_construction(self):
        direct = np.zeros((4, 4), dtype=complex)
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        direct[2 * i + j, 2 * k + l] = SX[i, k] * SX[j, l]
        assert np.array_equal(tensor(SX, SX), direct)


class TestPartialTrace:
    def test_product_state(self):
        rng = np.random.default_rng(5)
        from cohkit.channels import random_density

        ra = random_density(2, 2, rng)
        rb = random_density(3, 3, rng)
        rho = DensityMatrix(tensor(ra.matrix, rb.matrix), split=(2, 3))
        assert np.max(np.abs(partial_trace(rho, "A").matrix - ra.matrix)) < 1e-12
        assert np.max(np.abs(partial_trace(rho, "B").matrix - rb.matrix)) < 1e-12

    def test_bell_reduces_to_maximally_mixed(self):
        bell = pure_dm(max_entangled_ket(2), split=(2, 2))
        assert np.max(np.abs(partial_trace(bell, "A").matrix - np.eye(2) / 2)) < 1e-12

    def test_against_loop_oracle(self):
        rho = separable_entangled_family(2, 0.5)
        da, db = rho.split
        expected = np.zeros((da, da), dtype=complex)
        for i in range(da):
            for k in range(da):
                for j in range(db):
                    expected[i, k] += rho.matrix[i * db + j, k * db + j]
        assert np.max(np.abs(partial_trace(rho, "A").matrix - expected)) < 1e-14

    def test_preserves_trace_and_hermiticity(self):
        rng = np.random.default_rng(9)
        from cohkit.channels import random_density

        for _ in range(20):
            rho = DensityMatrix(random_density(6, 6, rng).matrix, split=(2, 3))
            for keep in ("A", "B"):
                red = partial_trace(rho, keep).matrix
                assert abs(np.trace(red) - 1) < 1e-12
                assert np.max(np.abs(red - red.conj().T)) < 1e-12

    def test_missing_split(self):
        rho = DensityMatrix(np.eye(4, dtype=complex) / 4)
        with pytest.raises(MissingSplitError):
            partial_trace(rho, "A")


class TestDephase:
    def test_diagonal_fixed_point(self):
        rho = DensityMatrix(np.diag([0.2, 0.3, 0.5]).astype(complex))
        assert np.array_equal(dephase(rho).matrix, rho.matrix)

    def test_plus_state(self):
        plus = pure_dm(uniform_ket(2))
        assert np.allclose(dephase(plus).matrix, np.eye(2) / 2, atol=1e-15)

    def test_idempotent_exact(self):
        rho = separable_entangled_family(3, 0.4)
        once = dephase(rho)
        assert np.array_equal(dephase(once).matrix, once.matrix)

    def test_factorizes_over_products(self):
        rho = separable_entangled_family(2, 0.3)
        pi = product_of_reductions(rho)
        lhs = dephase(pi).matrix
        rhs = tensor(dephase(partial_trace(rho, "A")).matrix,
                     dephase(partial_trace(rho, "B")).matrix)
        assert np.max(np.abs(lhs - rhs)) < 1e-14


class TestDensityMatrixInvariants:
    def test_rejects_non_hermitian(self):
        m = np.array([[0.5, 0.5], [0.1, 0.5]], dtype=complex)
        with pytest.raises(NonHermitianError):
            DensityMatrix(m)

    def test_rejects_bad_trace(self):
        with pytest.raises(TraceMismatchError):
            DensityMatrix(np.eye(2, dtype=complex))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(NotPSDError):
            DensityMatrix(np.diag([1.5, -0.5]).astype(complex))

    def test_rejects_bad_split(self):
        with pytest.raises(DimensionMismatchError):
            DensityMatrix(np.eye(4, dtype=complex) / 4, split=(3, 2))

    def test_matrix_is_immutable(self):
        rho = DensityMatrix(np.eye(2, dtype=complex) / 2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 9.0
