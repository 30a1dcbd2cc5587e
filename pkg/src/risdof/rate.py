"""Achievable-rate evaluation with coloured noise from amplifying surfaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .beamforming import LinkDesign
from .numerics import as_matrix, numerical_rank
from .ris import RisConfig


def dbm_to_watts(p_dbm: float) -> float:
    """Exact dBm -> watt conversion, ``10 ** ((p - 30) / 10)``."""
    if not np.isfinite(p_dbm):
        raise ValueError(f"power must be finite, got {p_dbm}")
    return float(10.0 ** ((p_dbm - 30.0) / 10.0))


def watts_to_dbm(p_watts: float) -> float:
    if p_watts <= 0:
        raise ValueError(f"power must be positive, got {p_watts}")
    return float(10.0 * np.log10(p_watts) + 30.0)


@dataclass(frozen=True)
class NoiseModel:
    """Thermal noise powers at the user and at each surface element (watts)."""

    user_noise: float
    ris_noise: float = 0.0

    def __post_init__(self):
        if self.user_noise < 0 or self.ris_noise < 0:
            raise ValueError("noise powers must be >= 0")

    @classmethod
    def from_dbm(cls, user_dbm: float, ris_dbm: Optional[float] = None) -> "NoiseModel":
        ris = dbm_to_watts(ris_dbm) if ris_dbm is not None else 0.0
        return cls(user_noise=dbm_to_watts(user_dbm), ris_noise=ris)


@dataclass(frozen=True)
class RateResult:
    """One rate evaluation: bits/s/Hz, effective rank, per-stream SNRs."""

    rate: float
    effective_rank: int
    per_stream_snr_db: tuple = field(default_factory=tuple)
    config_fingerprint: str = ""


def noise_covariance(k: int, ru_links: Sequence, ris_configs: Sequence[RisConfig],
                     model: NoiseModel) -> np.ndarray:
    """Receive-noise covariance ``sigma_u^2 I + sigma_r^2 sum_j (G_RU Theta)(G_RU Theta)^H``.

    Surface thermal noise reaches the user through each return hop scaled by
    that surface's reflection coefficients.  The result must be positive
    definite for rate evaluation; a zero user noise combined with a
    rank-deficient surface term is rejected.
    """
    if len(ru_links) != len(ris_configs):
        raise ValueError(
            f"got {len(ris_configs)} surface configs for {len(ru_links)} return hops")
    cov = model.user_noise * np.eye(k, dtype=np.complex128)
    for idx, (g_ru, cfg) in enumerate(zip(ru_links, ris_configs)):
        link = as_matrix(g_ru)
        if link.shape[0] != k:
            raise ValueError(f"return hop {idx} has {link.shape[0]} rows, expected {k}")
        if link.shape[1] != cfg.element_count:
            raise ValueError(
                f"return hop {idx} has {link.shape[1]} columns for "
                f"{cfg.element_count} surface elements")
        scaled = link * cfg.reflection_coefficients()
        cov += model.ris_noise * (scaled @ scaled.conj().T)
    if model.user_noise == 0.0 and numerical_rank(cov) < k:
        raise ValueError("noise covariance is singular (zero user noise and "
                         "rank-deficient surface noise)")
    return cov


def achievable_rate(h_eff, design: LinkDesign, noise_cov,
                    config_fingerprint: str = "") -> RateResult:
    """Rate ``log2 det(I + R^(-1/2) H F P F^H H^H R^(-1/2))`` in bits/s/Hz.

    Whitening uses the Cholesky factor of the noise covariance, which stays
    stable in the near-singular low-noise regimes of the sweeps.  Per-stream
    SNRs are evaluated through the design's combiner.
    """
    h = as_matrix(h_eff)
    r = as_matrix(noise_cov)
    k = h.shape[0]
    if r.shape != (k, k):
        raise ValueError(f"noise covariance shape {r.shape} does not match K={k}")
    try:
        chol = np.linalg.cholesky(r)
    except np.linalg.LinAlgError as exc:
        raise ValueError("noise covariance is singular") from exc

    scaled = h @ design.precoder * np.sqrt(design.stream_powers)
    whitened = np.linalg.solve(chol, scaled)
    gram = whitened @ whitened.conj().T
    sign, logdet = np.linalg.slogdet(np.eye(k) + gram)
    rate = float(logdet / np.log(2.0))

    snrs = per_stream_snr(h, design, r)
    snr_db = tuple(10.0 * np.log10(s) if s > 0 else -np.inf for s in snrs)
    return RateResult(rate=rate, effective_rank=numerical_rank(h),
                      per_stream_snr_db=snr_db,
                      config_fingerprint=config_fingerprint)


def eigenmode_rate(h_eff, design: LinkDesign, noise_cov) -> float:
    """Cross-check path: ``sum log2(1 + lambda_i)`` over the eigenvalues of the
    whitened transmit Gram matrix.  Must match :func:`achievable_rate`."""
    h = as_matrix(h_eff)
    r = as_matrix(noise_cov)
    chol = np.linalg.cholesky(r)
    scaled = h @ design.precoder * np.sqrt(design.stream_powers)
    whitened = np.linalg.solve(chol, scaled)
    eigs = np.linalg.eigvalsh(whitened @ whitened.conj().T)
    eigs = np.clip(eigs, 0.0, None)
    return float(np.sum(np.log2(1.0 + eigs)))


def per_stream_snr(h_eff, design: LinkDesign, noise_cov) -> np.ndarray:
    """Post-combining per-stream SNRs (linear).

    Stream s sees signal ``p_s |(W H F)_ss|^2`` against the combiner-shaped
    noise ``(W R W^H)_ss``; interference is excluded, so this is exact only
    when the effective stream matrix is diagonal (the designed operating
    point).
    """
    h = as_matrix(h_eff)
    w = design.combiner
    effective = w @ h @ design.precoder
    noise = np.real(np.diag(w @ as_matrix(noise_cov) @ w.conj().T))
    signal = design.stream_powers * np.abs(np.diag(effective)) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        snr = np.where(noise > 0, signal / noise, 0.0)
    return snr
