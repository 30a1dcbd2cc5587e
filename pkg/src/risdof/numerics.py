"""Dense complex linear-algebra kernel: SVD, numerical rank, null spaces,
pseudo-inverse, and water-filling power allocation.

Everything here is a pure function of its inputs; matrices are plain
``numpy.ndarray`` of complex128 and all randomness stays with the caller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Rank decisions use a *relative* threshold sigma_i > rel_tol * sigma_max so
# that scaling a channel by any positive constant never changes its rank.
DEFAULT_REL_TOL = 1e-8


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a nonempty 2-D complex128 array."""
    mat = np.asarray(a, dtype=np.complex128)
    if mat.ndim == 1:
        mat = mat.reshape(1, -1)
    if mat.ndim != 2:
        raise ValueError(f"expected a matrix, got array with ndim={mat.ndim}")
    if mat.size == 0:
        raise ValueError(f"matrix must be nonempty, got shape {mat.shape}")
    return mat


@dataclass(frozen=True)
class SvdResult:
    """Compact SVD ``A = U diag(s) V^H`` with descending singular values."""

    singular_values: np.ndarray  # (r,), real, descending, >= 0
    left_vectors: np.ndarray     # (m, r), orthonormal columns (U)
    right_vectors: np.ndarray    # (n, r), orthonormal columns (V)

    def reconstruct(self) -> np.ndarray:
        return (self.left_vectors * self.singular_values) @ self.right_vectors.conj().T


@dataclass(frozen=True)
class PowerAllocation:
    """Per-stream transmit powers (watts) plus the common water level."""

    per_stream_power: np.ndarray
    water_level: float

    @property
    def total_power(self) -> float:
        return float(np.sum(self.per_stream_power))


def svd(a) -> SvdResult:
    """Compact SVD of a nonempty complex matrix.

    Deterministic for identical input; singular values are returned in
    descending order and ``reconstruct()`` matches the input to machine
    precision.
    """
    mat = as_matrix(a)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    return SvdResult(singular_values=s, left_vectors=u, right_vectors=vh.conj().T)


def numerical_rank(a, rel_tol: float = DEFAULT_REL_TOL) -> int:
    """Count singular values above ``rel_tol * sigma_max``.

    The zero matrix has sigma_max = 0 and rank 0 by definition.
    """
    if not 0.0 < rel_tol < 1.0:
        raise ValueError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    s = svd(a).singular_values
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_tol * smax))


def null_space_basis(a, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """Orthonormal basis B of the (right) null space of ``a``.

    B has ``cols(a) - numerical_rank(a)`` columns and ``a @ B`` vanishes
    entrywise below ``rel_tol * sigma_max``.  Full column rank yields a
    0-column matrix, not an error.
    """
    mat = as_matrix(a)
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.count_nonzero(s > rel_tol * smax)) if smax > 0.0 else 0
    return vh.conj().T[:, rank:]


def pseudo_inverse(a, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """Moore-Penrose pseudo-inverse with the same relative rank cutoff.

    The zero matrix maps to a zero matrix of transposed shape.
    """
    mat = as_matrix(a)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    smax = s[0] if s.size else 0.0
    inv = np.zeros_like(s)
    if smax > 0.0:
        keep = s > rel_tol * smax
        inv[keep] = 1.0 / s[keep]
    return (vh.conj().T * inv) @ u.conj().T


def water_filling(gains, total_power: float, noise_power: float) -> PowerAllocation:
    """Rate-maximising power allocation over parallel subchannels.

    Maximises ``sum log2(1 + g_i p_i / noise_power)`` subject to
    ``sum p_i = total_power`` and ``p_i >= 0``; the optimum satisfies
    ``p_i = max(0, mu - noise_power / g_i)`` for a common water level mu.
    """
    g = np.atleast_1d(np.asarray(gains, dtype=float))
    if g.size == 0:
        raise ValueError("gains must be nonempty")
    if np.any(g <= 0):
        raise ValueError("all gains must be positive")
    if total_power <= 0:
        raise ValueError(f"total_power must be positive, got {total_power}")
    if noise_power <= 0:
        raise ValueError(f"noise_power must be positive, got {noise_power}")

    inv = noise_power / g
    order = np.argsort(inv)  # strongest subchannel first
    inv_sorted = inv[order]
    # Largest active set whose water level clears every member's floor.
    mu = inv_sorted[0] + total_power
    for count in range(g.size, 0, -1):
        mu = (total_power + inv_sorted[:count].sum()) / count
        if mu > inv_sorted[count - 1]:
            break
    powers = np.maximum(0.0, mu - inv)
    # Remove rounding drift so the budget is met exactly.
    active = powers > 0
    powers[active] += (total_power - powers.sum()) / active.sum()
    return PowerAllocation(per_stream_power=powers, water_level=float(mu))


def allocation_rate(gains, powers, noise_power: float) -> float:
    """Sum rate (bits/s/Hz) of an arbitrary allocation over subchannels."""
    g = np.asarray(gains, dtype=float)
    p = np.asarray(powers, dtype=float)
    return float(np.sum(np.log2(1.0 + g * p / noise_power)))
