"""Dense real matrix kernels built on a cyclic Jacobi eigensolver.

All tolerances are relative to ``1 + ||M||_F`` so they behave the same for
tiny and large matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from graphenergy._jacobi import jacobi_sweeps
from graphenergy.errors import ConvergenceError, NotSymmetricError, PreconditionError

JACOBI_TOL = 1e-12
MAX_SWEEPS = 100
# asymmetry accepted (and then mirrored away) when a symmetric matrix is requested
SYMMETRY_TOL = 1e-12
# tiny negative eigenvalues of M^T M tolerated before clamping to 0
CLAMP_TOL = 1e-12


class SymMatrix:
    """Square real matrix with a symmetry flag.

    When ``symmetric`` is true the stored entries are exactly symmetric:
    the strict upper triangle is mirrored onto the lower one. With
    ``symmetric=None`` the flag is inferred from the entries.
    """

    __slots__ = ("_data", "symmetric")

    def __init__(self, entries, symmetric: Optional[bool] = None) -> None:
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        near = _asymmetry(a) <= SYMMETRY_TOL * (1.0 + np.linalg.norm(a))
        if symmetric is None:
            symmetric = bool(near)
        elif symmetric and not near:
            raise NotSymmetricError(
                f"matrix asymmetry {_asymmetry(a):.3e} exceeds tolerance"
            )
        if symmetric:
            a = np.triu(a) + np.triu(a, 1).T
        a.setflags(write=False)
        self._data = a
        self.symmetric = symmetric

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls(np.eye(n), symmetric=True)

    @classmethod
    def zeros(cls, n: int) -> "SymMatrix":
        return cls(np.zeros((n, n)), symmetric=True)

    @classmethod
    def diag(cls, values: Iterable[float]) -> "SymMatrix":
        return cls(np.diag(np.asarray(list(values), dtype=float)), symmetric=True)

    @property
    def data(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._data

    @property
    def n(self) -> int:
        return self._data.shape[0]

    def frobenius(self) -> float:
        return float(np.linalg.norm(self._data))

    def trace(self) -> float:
        return float(np.trace(self._data))

    def to_list(self) -> list[list[float]]:
        return self._data.tolist()

    def __array__(self, dtype=None, copy=None):
        return self._data.astype(dtype) if dtype is not None else self._data.copy()

    def _combine(self, other: "SymMatrix", data: np.ndarray) -> "SymMatrix":
        both = self.symmetric and other.symmetric
        return SymMatrix(data, symmetric=True if both else None)

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        other = as_matrix(other)
        _same_order(self, other)
        return self._combine(other, self._data + other._data)

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        other = as_matrix(other)
        _same_order(self, other)
        return self._combine(other, self._data - other._data)

    def __neg__(self) -> "SymMatrix":
        return SymMatrix(-self._data, symmetric=self.symmetric)

    def __mul__(self, scalar: float) -> "SymMatrix":
        return SymMatrix(float(scalar) * self._data, symmetric=self.symmetric)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.symmetric == other.symmetric and np.array_equal(self._data, other._data)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        flag = "symmetric" if self.symmetric else "general"
        return f"SymMatrix(n={self.n}, {flag})"


MatrixLike = Union[SymMatrix, np.ndarray, Sequence[Sequence[float]]]


def as_matrix(m: MatrixLike) -> SymMatrix:
    return m if isinstance(m, SymMatrix) else SymMatrix(m)


def _asymmetry(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.T))) if a.size else 0.0


def _same_order(a: SymMatrix, b: SymMatrix) -> None:
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in non-increasing order, eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None


@dataclass(frozen=True)
class SingularValues:
    values: np.ndarray


def eigh(m: MatrixLike, vectors: bool = True) -> Spectrum:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.

    Iterates until the off-diagonal Frobenius norm drops to
    ``1e-12 * (1 + ||M||_F)``; raises :class:`ConvergenceError` after
    ``MAX_SWEEPS`` sweeps otherwise.
    """
    m = as_matrix(m)
    if not m.symmetric:
        raise NotSymmetricError("eigh requires a symmetric matrix")
    work = np.array(m.data, dtype=float, order="C")
    threshold = JACOBI_TOL * (1.0 + m.frobenius())
    diag, vecs, sweeps, off = jacobi_sweeps(work, threshold, MAX_SWEEPS, vectors)
    if off > threshold:
        raise ConvergenceError(off, sweeps, threshold)
    order = np.argsort(-diag, kind="stable")
    values = diag[order]
    if not vectors:
        return Spectrum(values)
    return Spectrum(values, vecs[:, order])


def eigvalsh(m: MatrixLike) -> np.ndarray:
    """Eigenvalues only, non-increasing."""
    return eigh(m, vectors=False).eigenvalues


def singular_values(m: MatrixLike) -> SingularValues:
    m = as_matrix(m)
    if m.symmetric:
        s = np.abs(eigvalsh(m))
    else:
        gram = SymMatrix(m.data.T @ m.data, symmetric=True)
        lam = eigvalsh(gram)
        floor = -CLAMP_TOL * (1.0 + gram.frobenius())
        if lam[-1] < floor:
            raise PreconditionError(f"M^T M has eigenvalue {lam[-1]:.3e} below {floor:.3e}")
        s = np.sqrt(np.clip(lam, 0.0, None))
    return SingularValues(np.sort(s)[::-1])


def matrix_energy(m: MatrixLike) -> float:
    """Sum of singular values; for symmetric input, the sum of |eigenvalues|."""
    return float(np.sum(singular_values(m).values))


def is_psd(m: MatrixLike, tol: float = 1e-10) -> bool:
    m = as_matrix(m)
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return bool(eigvalsh(m)[-1] >= -tol * (1.0 + m.frobenius()))


def matrix_abs(m: MatrixLike) -> SymMatrix:
    """|M| = (M^T M)^(1/2), built spectrally."""
    m = as_matrix(m)
    if m.symmetric:
        spec = eigh(m)
        mags = np.abs(spec.eigenvalues)
    else:
        spec = eigh(SymMatrix(m.data.T @ m.data, symmetric=True))
        mags = np.sqrt(np.clip(spec.eigenvalues, 0.0, None))
    v = spec.eigenvectors
    return SymMatrix((v * mags) @ v.T, symmetric=True)


def direct_sum(blocks: Sequence[MatrixLike]) -> SymMatrix:
    blocks = [as_matrix(b) for b in blocks]
    if not blocks:
        raise ValueError("direct_sum needs at least one block")
    total = sum(b.n for b in blocks)
    out = np.zeros((total, total))
    at = 0
    for b in blocks:
        out[at:at + b.n, at:at + b.n] = b.data
        at += b.n
    return SymMatrix(out, symmetric=all(b.symmetric for b in blocks) or None)


def psd_zero_diag_rows(m: MatrixLike, tol: float = 1e-10) -> bool:
    """A PSD matrix with a (numerically) zero diagonal entry has a zero row there."""
    m = as_matrix(m)
    if not is_psd(m, tol):
        raise PreconditionError("psd_zero_diag_rows expects a positive semi-definite matrix")
    bound = np.sqrt(tol) * (1.0 + m.frobenius())
    a = m.data
    for i in np.flatnonzero(np.abs(np.diag(a)) <= tol):
        if np.any(np.abs(a[i]) > bound):
            return False
    return True
