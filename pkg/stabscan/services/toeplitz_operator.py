"""Implicit symmetric Toeplitz operator and a Lanczos largest-eigenvalue iteration."""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import fft, linalg
from scipy.sparse.linalg import LinearOperator

from stabscan.core.exceptions import ConvergenceError, ParameterError
from stabscan.models import EigenSolveOptions

logger = logging.getLogger(__name__)


class SymmetricToeplitzOperator(LinearOperator):
    """
    Symmetric Toeplitz matrix T_jk = c(|j - k|) stored by its first column.

    Products use a circulant embedding of power-of-two size >= 2N - 1, so a
    matvec costs O(N log N) and O(N) memory.
    """

    def __init__(self, column: np.ndarray):
        column = np.asarray(column, dtype=float)
        if column.ndim != 1 or column.size == 0:
            raise ParameterError(f"column must be a nonempty 1-D array, got shape {column.shape}")

        n = column.size
        self.embedding_size = 1 << max(0, int(np.ceil(np.log2(max(2 * n - 1, 1)))))
        circ = np.zeros(self.embedding_size)
        circ[:n] = column
        if n > 1:
            circ[-(n - 1) :] = column[1:][::-1]
        # Real and even embedding: its spectrum is real
        self.circ_spectrum = fft.rfft(circ)
        self.column = column
        super().__init__(dtype=np.float64, shape=(n, n))

    def _matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(-1)
        x_hat = fft.rfft(x, n=self.embedding_size)
        return fft.irfft(self.circ_spectrum * x_hat, n=self.embedding_size)[: self.shape[0]]

    def _matmat(self, X: np.ndarray) -> np.ndarray:
        return np.column_stack([self._matvec(col) for col in np.asarray(X).T])

    def _adjoint(self) -> "SymmetricToeplitzOperator":
        return self

    def to_dense(self) -> np.ndarray:
        return linalg.toeplitz(self.column)


@dataclass(frozen=True)
class LanczosResult:
    """Largest Ritz pair summary."""

    eigenvalue: float
    iterations: int
    residual: float


def lanczos_largest(operator: LinearOperator, opts: EigenSolveOptions) -> LanczosResult:
    """
    Largest eigenvalue of a symmetric operator by Lanczos with full reorthogonalization.

    Stops when the relative residual ||A v - λ v|| / |λ| of the largest Ritz
    pair is at most opts.rel_tolerance, or when the Krylov space is exhausted
    (the Ritz values are then exact).

    Raises:
        ConvergenceError: If the iteration cap is reached first
    """
    n = operator.shape[0]
    cap = opts.iteration_cap(n)
    rng = np.random.Generator(np.random.Philox(opts.seed))

    q = rng.standard_normal(n)
    q /= np.linalg.norm(q)

    block = min(n, 64)
    basis = np.empty((block, n))
    alphas: list[float] = []
    betas: list[float] = []
    residual = np.inf

    for j in range(min(cap, n)):
        if j == basis.shape[0]:
            basis = np.vstack([basis, np.empty((min(block, n - j), n))])
        basis[j] = q

        w = operator.matvec(q)
        alpha = float(q @ w)
        alphas.append(alpha)

        # Full reorthogonalization against every Lanczos vector, applied twice
        active = basis[: j + 1]
        w -= active.T @ (active @ w)
        w -= active.T @ (active @ w)
        beta = float(np.linalg.norm(w))

        if j == 0:
            ritz_values, ritz_vectors = np.array([alpha]), np.ones((1, 1))
        else:
            ritz_values, ritz_vectors = linalg.eigh_tridiagonal(
                np.asarray(alphas),
                np.asarray(betas),
                select="i",
                select_range=(j, j),
            )
        eigenvalue = float(ritz_values[0])
        scale = max(abs(eigenvalue), np.finfo(float).tiny)
        estimate = abs(beta * ritz_vectors[-1, 0]) / scale
        exhausted = j + 1 == n or beta <= np.finfo(float).eps * scale

        if estimate <= opts.rel_tolerance or exhausted:
            v = active.T @ ritz_vectors[:, 0]
            residual = float(np.linalg.norm(operator.matvec(v) - eigenvalue * v)) / scale
            if residual <= opts.rel_tolerance or exhausted:
                logger.debug(
                    f"Lanczos converged: n={n} iterations={j + 1} residual={residual:.3e}"
                )
                return LanczosResult(eigenvalue=eigenvalue, iterations=j + 1, residual=residual)

        betas.append(beta)
        q = w / beta

    raise ConvergenceError(
        f"Lanczos did not reach rel_tolerance={opts.rel_tolerance} within {min(cap, n)} "
        f"iterations (n={n}, residual={residual:.3e})",
        iterations=min(cap, n),
        residual=residual,
    )
