"""Reflecting-surface control: per-element phase shifts, coherent phase
alignment against a direct path, and amplification/power accounting for
amplifying (active) surfaces."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class RisConfig:
    """Per-surface element phases (radians, wrapped to [0, 2pi)) and a common
    amplification factor (1.0 = passive)."""

    phases: np.ndarray
    amplification: float = 1.0
    element_count: int = 0

    def __post_init__(self):
        phases = np.mod(np.asarray(self.phases, dtype=float).ravel(), TWO_PI)
        object.__setattr__(self, "phases", phases)
        count = self.element_count or phases.size
        object.__setattr__(self, "element_count", count)
        if phases.size != count:
            raise ValueError(
                f"phase vector has length {phases.size}, expected {count}")
        if self.amplification < 0:
            raise ValueError(f"amplification must be >= 0, got {self.amplification}")

    def reflection_coefficients(self) -> np.ndarray:
        """Diagonal of Theta: ``amplification * exp(1j * phases)``."""
        return self.amplification * np.exp(1j * self.phases)

    def with_amplification(self, amplification: float) -> "RisConfig":
        return RisConfig(self.phases, amplification, self.element_count)


def identity_config(element_count: int, amplification: float = 1.0) -> RisConfig:
    """All-zero phases (Theta = amplification * I)."""
    return RisConfig(np.zeros(element_count), amplification, element_count)


def quantize_phases(config: RisConfig, bits: int) -> RisConfig:
    """Snap phases to the nearest of 2**bits uniform levels.

    Off by default everywhere; provided for discrete-phase studies.
    """
    if bits < 1:
        raise ValueError(f"bits must be >= 1, got {bits}")
    step = TWO_PI / (1 << bits)
    snapped = np.round(config.phases / step) * step
    return RisConfig(snapped, config.amplification, config.element_count)


def phase_align(g_br_col, g_ru_row, direct_phase: float = 0.0) -> RisConfig:
    """Choose phases so every cascaded element path adds coherently.

    ``g_br_col`` and ``g_ru_row`` are the effective per-element cascade
    coefficients for the chosen transmit/receive directions (length N each).
    With ``phase_n = direct_phase - arg(g_ru_n) - arg(g_br_n)`` the cascade
    sum has phase ``direct_phase`` and magnitude ``sum_n |g_ru_n||g_br_n|``,
    the coherent maximum.
    """
    incident = np.asarray(g_br_col, dtype=np.complex128).ravel()
    outgoing = np.asarray(g_ru_row, dtype=np.complex128).ravel()
    if incident.size != outgoing.size:
        raise ValueError(
            f"coefficient lengths differ: {incident.size} vs {outgoing.size}")
    phases = direct_phase - np.angle(outgoing) - np.angle(incident)
    return RisConfig(phases, 1.0, incident.size)


def active_power(config: RisConfig, incident_covariance, ris_noise_power: float) -> float:
    """Radiated power ``trace(Theta (C_in + sigma_r^2 I) Theta^H)`` in watts.

    Includes the surface's own amplified thermal noise; the covariance must be
    Hermitian positive semidefinite.
    """
    c = np.asarray(incident_covariance, dtype=np.complex128)
    n = config.element_count
    if c.shape != (n, n):
        raise ValueError(f"covariance shape {c.shape} does not match {n} elements")
    asym = np.max(np.abs(c - c.conj().T)) if c.size else 0.0
    scale = max(1.0, float(np.max(np.abs(c)))) if c.size else 1.0
    if asym > 1e-8 * scale:
        raise ValueError(f"incident covariance is not Hermitian (asymmetry {asym:.3e})")
    if ris_noise_power < 0:
        raise ValueError("ris_noise_power must be >= 0")
    coeff = config.reflection_coefficients()
    diag = np.real(np.diag(c)) + ris_noise_power
    return float(np.sum(np.abs(coeff) ** 2 * diag))


def solve_amplification(phase_config: RisConfig, incident_covariance,
                        ris_noise_power: float, ris_power_budget: float) -> float:
    """Amplification rho that makes :func:`active_power` meet the budget exactly.

    Closed form: ``rho = sqrt(budget / (trace(C_in) + N sigma_r^2))``.
    """
    if ris_power_budget <= 0:
        raise ValueError(f"power budget must be positive, got {ris_power_budget}")
    unit = phase_config.with_amplification(1.0)
    base = active_power(unit, incident_covariance, ris_noise_power)
    if base <= 0.0:
        raise ValueError(
            "amplification is undefined: zero incident power and zero surface noise")
    return float(np.sqrt(ris_power_budget / base))
