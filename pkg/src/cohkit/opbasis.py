"""Orthonormal Hermitian operator bases.

Provides the standard matrix-unit basis, the Pauli set, generalized
Gell-Mann sets, truncated collective-spin sets, and bipartite product
bases.  Every basis satisfies Tr(S_l S_l') = delta_ll' with each operator
Hermitian; ``complete`` means the basis spans all Hermitian operators
(N = D^2).

Product bases keep their factor structure and evaluate expectation values
and resummations without materializing the Kronecker operators, which keeps
dimension-81 workloads cheap.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidDimensionError,
    NonHermitianError,
)
from .matcore import TOL_HERM, as_matrix, is_hermitian

_ORTHO_TOL = 1e-10


class ObservableBasis:
    """Ordered set of mutually orthonormal Hermitian operators on C^dim."""

    def __init__(self, dim, ops=None, labels=None, complete=None, product_structure=None,
                 validate=True):
        self.dim = int(dim)
        self.product_structure = product_structure
        self._ops = None
        if ops is not None:
            stack = np.array(ops, dtype=complex)  # copy: instances are immutable
            if stack.ndim != 3 or stack.shape[1:] != (self.dim, self.dim):
                raise DimensionMismatchError(
                    f"operator stack shape {stack.shape} does not match dim {self.dim}"
                )
            stack.flags.writeable = False
            self._ops = stack
            self.n_ops = stack.shape[0]
        elif product_structure is not None:
            a, b = product_structure
            self.n_ops = a.n_ops * b.n_ops
        else:
            raise ValueError("either ops or product_structure is required")
        if labels is None:
            labels = tuple(f"S{i}" for i in range(self.n_ops))
        self.labels = tuple(labels)
        if len(self.labels) != self.n_ops:
            raise DimensionMismatchError("label count does not match operator count")
        self.complete = bool(self.n_ops == self.dim**2 if complete is None else complete)
        if validate and self._ops is not None:
            self._validate()

    def _validate(self):
        for i, op in enumerate(self._ops):
            if not is_hermitian(op):
                raise NonHermitianError(f"basis operator {self.labels[i]} is not Hermitian")
        g = self.gram()
        if np.max(np.abs(g - np.eye(self.n_ops))) > _ORTHO_TOL:
            raise ValueError("operators are not orthonormal under the trace inner product")

    @property
    def ops(self) -> np.ndarray:
        """Stacked (N, dim, dim) operators; built on demand for product bases."""
        if self._ops is None:
            a, b = self.product_structure
            stack = np.einsum("aik,bjl->abijkl", a.ops, b.ops).reshape(
                self.n_ops, self.dim, self.dim
            )
            stack.flags.writeable = False
            self._ops = stack
        return self._ops

    def gram(self) -> np.ndarray:
        """Matrix of pairwise trace inner products Tr(S_a S_b)."""
        if self._ops is None:
            a, b = self.product_structure
            return np.kron(a.gram(), b.gram())
        return np.einsum("aij,bji->ab", self._ops, self._ops).real

    def _check_input(self, m: np.ndarray):
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"matrix shape {m.shape} does not match basis dimension {self.dim}"
            )
        if not is_hermitian(m, TOL_HERM):
            raise NonHermitianError("expectation values are defined for Hermitian matrices")

    def expectations(self, m) -> np.ndarray:
        """Real coefficient vector c_l = Tr(S_l m) for Hermitian m.

        Both factors Hermitian make every trace real; the value is taken as
        the real part of the trace against the Hermitian part of m, which is
        exact for Hermitian input.
        """
        a = as_matrix(m)
        self._check_input(a)
        if self._ops is None:
            fa, fb = self.product_structure
            t = a.reshape(fa.dim, fb.dim, fa.dim, fb.dim)
            vals = np.einsum("pik,qjl,klij->pq", fa.ops, fb.ops, t, optimize=True)
            return vals.real.reshape(self.n_ops)
        return np.einsum("lij,ji->l", self._ops, a).real

    def pair_expectations(self, m) -> np.ndarray:
        """Expectations reshaped to (N_A, N_B); requires product structure."""
        if self.product_structure is None:
            raise ValueError("pair_expectations requires a product basis")
        a, b = self.product_structure
        return self.expectations(m).reshape(a.n_ops, b.n_ops)

    def resum(self, coeffs) -> np.ndarray:
        """Linear combination sum_l coeffs[l] S_l as a dense matrix."""
        c = np.asarray(coeffs, dtype=float)
        if c.shape == (self.n_ops,):
            pass
        elif self.product_structure is not None and c.shape == (
            self.product_structure[0].n_ops,
            self.product_structure[1].n_ops,
        ):
            c = c.reshape(self.n_ops)
        else:
            raise DimensionMismatchError(
                f"coefficient shape {c.shape} does not match {self.n_ops} operators"
            )
        if self._ops is None:
            fa, fb = self.product_structure
            c2 = c.reshape(fa.n_ops, fb.n_ops)
            out = np.einsum("pq,pik,qjl->ijkl", c2, fa.ops, fb.ops, optimize=True)
            return out.reshape(self.dim, self.dim)
        return np.tensordot(c, self._ops, axes=1)

    def diagonals(self) -> np.ndarray:
        """Real (N, dim) array of operator diagonals S_l[k, k]."""
        if self._ops is None:
            fa, fb = self.product_structure
            d = np.einsum("pi,qj->pqij", fa.diagonals(), fb.diagonals())
            return d.reshape(self.n_ops, self.dim)
        return np.einsum("lii->li", self._ops).real

    def identity_index(self) -> tuple[int, float] | None:
        """Index and scale of an operator proportional to the identity, if any."""
        eye = np.eye(self.dim)
        for i, op in enumerate(self.ops):
            scale = np.trace(op).real / self.dim
            if abs(scale) > 1e-12 and np.max(np.abs(op - scale * eye)) < 1e-12:
                return i, float(scale)
        return None

    def __len__(self) -> int:
        return self.n_ops

    def __repr__(self) -> str:
        kind = "complete" if self.complete else "truncated"
        return f"ObservableBasis(dim={self.dim}, n_ops={self.n_ops}, {kind})"


def standard_basis(dim: int) -> ObservableBasis:
    """Matrix-unit basis: projectors |k><k|, symmetric and antisymmetric
    off-diagonal combinations, ordered row-major over (k, k')."""
    if dim < 2:
        raise InvalidDimensionError("standard basis needs dimension >= 2")
    ops, labels = [], []
    for k in range(dim):
        for k2 in range(dim):
            m = np.zeros((dim, dim), dtype=complex)
            if k2 == k:
                m[k, k] = 1.0
                labels.append(f"P{k}")
            elif k2 > k:
                m[k, k2] = m[k2, k] = 1 / np.sqrt(2)
                labels.append(f"X{k}_{k2}")
            else:
                m[k, k2] = 1j / np.sqrt(2)
                m[k2, k] = -1j / np.sqrt(2)
                labels.append(f"Y{k2}_{k}")
            ops.append(m)
    return ObservableBasis(dim, ops=ops, labels=labels, complete=True)


def pauli_basis() -> ObservableBasis:
    """{I, sigma_x, sigma_y, sigma_z}/sqrt(2): complete qubit basis."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    ops = [m / np.sqrt(2) for m in (np.eye(2, dtype=complex), sx, sy, sz)]
    return ObservableBasis(2, ops=ops, labels=("I", "X", "Y", "Z"), complete=True)


def gell_mann_basis(dim: int) -> ObservableBasis:
    """Generalized Gell-Mann basis, each operator at unit Frobenius norm.

    Order: identity/sqrt(d), symmetric pairs (j < k), antisymmetric pairs,
    then the d-1 diagonal generators.  For dim 2 this reproduces the Pauli
    set; for dim 3 it is the lambda matrices scaled by 1/sqrt(2).
    """
    if dim < 2:
        raise InvalidDimensionError("Gell-Mann basis needs dimension >= 2")
    ops = [np.eye(dim, dtype=complex) / np.sqrt(dim)]
    labels = ["I"]
    for j in range(dim):
        for k in range(j + 1, dim):
            m = np.zeros((dim, dim), dtype=complex)
            m[j, k] = m[k, j] = 1 / np.sqrt(2)
            ops.append(m)
            labels.append(f"S{j}_{k}")
    for j in range(dim):
        for k in range(j + 1, dim):
            m = np.zeros((dim, dim), dtype=complex)
            m[j, k] = -1j / np.sqrt(2)
            m[k, j] = 1j / np.sqrt(2)
            ops.append(m)
            labels.append(f"A{j}_{k}")
    for l in range(1, dim):
        diag = np.zeros(dim)
        diag[:l] = 1.0
        diag[l] = -l
        ops.append(np.diag(diag / np.sqrt(l * (l + 1))).astype(complex))
        labels.append(f"D{l}")
    return ObservableBasis(dim, ops=ops, labels=labels, complete=True)


def collective_spin_ops(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Sz, S+, S-) for n qubits in the symmetric spin-n/2 representation.

    Qubit convention sigma^z|0> = +|0>: Sz = diag(n, n-2, ..., -n) with the
    fully polarized state first.  S+ carries the usual ladder elements
    sqrt(J(J+1) - M(M+1)) of the J = n/2 representation.
    """
    if n < 1:
        raise InvalidDimensionError("collective spin operators need n >= 1")
    d = n + 1
    j = n / 2.0
    sz = np.diag(np.arange(n, -n - 1, -2).astype(complex))
    sp = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        m = j - k  # S+ maps |j, m> (index k) up to index k-1
        sp[k - 1, k] = np.sqrt(j * (j + 1) - m * (m + 1))
    return sz, sp, sp.conj().T


def spin_truncated_basis(n: int) -> ObservableBasis:
    """Four-operator collective-spin set {c I, Sx, Sy, Sz}/norm on spin n/2.

    Orthonormal but complete only for n = 1 (where it equals the Pauli set);
    for larger n it is a truncated basis suited to the Frobenius estimator.
    """
    if n < 1:
        raise InvalidDimensionError("spin basis needs n >= 1")
    sz, sp, sm = collective_spin_ops(n)
    sx = sp + sm
    sy = -1j * (sp - sm)
    den = np.sqrt(n * (1 + n) * (2 + n) / 3.0)
    ident = np.sqrt(n * (2 + n) / 3.0) * np.eye(n + 1, dtype=complex)
    ops = [m / den for m in (ident, sx, sy, sz)]
    return ObservableBasis(n + 1, ops=ops, labels=("I", "Sx", "Sy", "Sz"),
                           complete=(n == 1))


def product_basis(a: ObservableBasis, b: ObservableBasis) -> ObservableBasis:
    """Bipartite basis {A_l (x) B_l'}, A-index major; factors stay accessible."""
    labels = tuple(f"{la}⊗{lb}" for la in a.labels for lb in b.labels)
    return ObservableBasis(
        a.dim * b.dim,
        labels=labels,
        complete=a.complete and b.complete,
        product_structure=(a, b),
    )


def expansion_coeffs(basis: ObservableBasis, target) -> np.ndarray:
    """Real coefficients c_l = Tr(S_l target) of a Hermitian target matrix."""
    return basis.expectations(target)


def parse_basis(tag: str) -> ObservableBasis:
    """Build a basis from its string tag.

    Tags: ``standard:D``, ``pauli``, ``gellmann:d``, ``spin:n``, and
    ``prod(<tag>,<tag>)`` for bipartite products (nesting allowed).
    """
    t = tag.strip()
    if t.startswith("prod(") and t.endswith(")"):
        inner = t[5:-1]
        depth = 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                return product_basis(parse_basis(inner[:i]), parse_basis(inner[i + 1:]))
        raise ValueError(f"prod tag needs two comma-separated factors: {tag!r}")
    if t == "pauli":
        return pauli_basis()
    name, _, arg = t.partition(":")
    builders = {"standard": standard_basis, "gellmann": gell_mann_basis,
                "spin": spin_truncated_basis}
    if name in builders and arg:
        try:
            value = int(arg)
        except ValueError:
            raise ValueError(f"basis tag argument must be an integer: {tag!r}") from None
        return builders[name](value)
    raise ValueError(f"unknown basis tag {tag!r}")


def orthogonal_mix(basis: ObservableBasis, o: np.ndarray) -> ObservableBasis:
    """Replace {S_l} by {sum_m O_lm S_m} for an orthogonal matrix O."""
    o = np.asarray(o, dtype=float)
    if o.shape != (basis.n_ops, basis.n_ops):
        raise DimensionMismatchError("mixing matrix shape does not match basis size")
    mixed = np.einsum("lm,mij->lij", o, basis.ops)
    return ObservableBasis(basis.dim, ops=mixed, complete=basis.complete)
