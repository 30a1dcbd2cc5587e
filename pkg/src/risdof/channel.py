"""Channel synthesis: uniform-linear-array steering, line-of-sight and
Rayleigh links with a log-distance link budget, and composition of the
end-to-end effective channel through one or more reflecting surfaces.

Dimension convention (fixed throughout the package): the direct channel H is
K x M (user antennas x base-station antennas), each forward hop G_BR is
N_j x M, each return hop G_RU is K x N_j, and the effective channel is
``sum_j G_RU^j @ Theta^j @ G_BR^j + H``.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .numerics import as_matrix
from .ris import RisConfig

# Carrier defaults: 3 GHz (lambda = 0.1 m) with half-wavelength spacing.
DEFAULT_WAVELENGTH = 0.1
# Log-distance loss PL(d) = reference_loss_db + 10 * alpha * log10(d / 1 m).
DEFAULT_REFERENCE_LOSS_DB = 28.0
DEFAULT_PATH_LOSS_EXPONENT = 2.0


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform linear array: element count, spacing (m) and wavelength (m).

    Spacing defaults to half the carrier wavelength.
    """

    element_count: int
    element_spacing: float = None
    carrier_wavelength: float = DEFAULT_WAVELENGTH

    def __post_init__(self):
        if self.element_spacing is None:
            object.__setattr__(self, "element_spacing", self.carrier_wavelength / 2)
        if self.element_count < 1:
            raise ValueError(f"element_count must be >= 1, got {self.element_count}")
        if self.element_spacing <= 0 or self.carrier_wavelength <= 0:
            raise ValueError("element_spacing and carrier_wavelength must be positive")

    @classmethod
    def half_wavelength(cls, element_count: int,
                        wavelength: float = DEFAULT_WAVELENGTH) -> "ArrayGeometry":
        return cls(element_count, wavelength / 2, wavelength)


@dataclass(frozen=True)
class LinkBudget:
    """Log-distance amplitude budget for one link."""

    distance: float                      # metres
    path_loss_exponent: float = DEFAULT_PATH_LOSS_EXPONENT
    reference_loss_db: float = DEFAULT_REFERENCE_LOSS_DB  # dB at 1 m

    def __post_init__(self):
        if self.distance <= 0:
            raise ValueError(f"distance must be positive, got {self.distance}")

    @property
    def loss_db(self) -> float:
        return self.reference_loss_db + 10.0 * self.path_loss_exponent * np.log10(self.distance)

    @property
    def amplitude_gain(self) -> float:
        """Linear amplitude gain, always > 0."""
        return float(10.0 ** (-self.loss_db / 20.0))


class Cascade(NamedTuple):
    """One reflecting surface's pair of hops."""

    g_br: np.ndarray  # N_j x M, base station -> surface
    g_ru: np.ndarray  # K x N_j, surface -> user


@dataclass
class ChannelSet:
    """One realisation of the direct channel plus every cascade pair.

    Regenerating with the same seed and model tags must reproduce identical
    entries; builders derive per-link RNG streams via :func:`link_rng`.
    """

    direct: np.ndarray                 # K x M
    cascades: list = field(default_factory=list)  # list[Cascade]
    seed: int = 0
    model_tags: dict = field(default_factory=dict)

    def __post_init__(self):
        k, m = self.direct.shape
        for idx, cascade in enumerate(self.cascades):
            n_b, m_b = cascade.g_br.shape
            k_r, n_r = cascade.g_ru.shape
            if m_b != m or k_r != k or n_b != n_r:
                raise ValueError(
                    f"cascade {idx} dimensions ({n_b}x{m_b}, {k_r}x{n_r}) are "
                    f"inconsistent with direct channel {k}x{m}")

    @property
    def shape(self):
        return self.direct.shape


def link_rng(seed: int, tag: str) -> np.random.Generator:
    """Independent per-link RNG stream derived from (seed, link tag).

    Uses a stable CRC of the tag so adding a link never perturbs the draws of
    existing links and results do not depend on process hash randomisation.
    """
    return np.random.default_rng(np.random.SeedSequence([int(seed), zlib.crc32(tag.encode())]))


def steering_vector(geometry: ArrayGeometry, angle: float) -> np.ndarray:
    """ULA array response a(angle) with unit-modulus entries.

    Entry m is ``exp(1j * 2 pi * (d / lambda) * m * cos(angle))`` for
    m = 0 .. count-1; broadside (angle = pi/2) gives the all-ones vector.
    """
    if not 0.0 <= angle <= np.pi:
        raise ValueError(f"angle must lie in [0, pi], got {angle}")
    m = np.arange(geometry.element_count)
    phase = 2.0 * np.pi * (geometry.element_spacing / geometry.carrier_wavelength)
    return np.exp(1j * phase * m * np.cos(angle))


def los_channel(tx: ArrayGeometry, rx: ArrayGeometry, aod: float, aoa: float,
                budget: LinkBudget) -> np.ndarray:
    """Rank-one line-of-sight channel ``g * b(aoa) a(aod)^H`` (rx x tx).

    Every entry has magnitude g (the budget's amplitude gain).
    """
    g = budget.amplitude_gain
    return g * np.outer(steering_vector(rx, aoa), steering_vector(tx, aod).conj())


def rayleigh_channel(rows: int, cols: int, budget: LinkBudget,
                     seed: int, tag: str = "rayleigh") -> np.ndarray:
    """IID circularly-symmetric complex Gaussian channel.

    Per-entry variance is ``budget.amplitude_gain ** 2``; identical
    (seed, tag) pairs reproduce identical matrices.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"rows and cols must be >= 1, got {rows}x{cols}")
    rng = link_rng(seed, tag)
    g = budget.amplitude_gain
    re = rng.standard_normal((rows, cols))
    im = rng.standard_normal((rows, cols))
    return g / np.sqrt(2.0) * (re + 1j * im)


def blocked_channel(rows: int, cols: int) -> np.ndarray:
    """Fully blocked link: the all-zero (rank-0) matrix."""
    if rows < 1 or cols < 1:
        raise ValueError(f"rows and cols must be >= 1, got {rows}x{cols}")
    return np.zeros((rows, cols), dtype=np.complex128)


def composite_channel(channels: ChannelSet,
                      ris_configs: Sequence[RisConfig]) -> np.ndarray:
    """Effective end-to-end channel ``sum_j G_RU^j Theta^j G_BR^j + H``.

    ``Theta^j = amplification_j * diag(exp(1j * phases_j))``.
    """
    if len(ris_configs) != len(channels.cascades):
        raise ValueError(
            f"got {len(ris_configs)} surface configs for "
            f"{len(channels.cascades)} cascades")
    k, m = channels.direct.shape
    total = np.array(as_matrix(channels.direct), copy=True)
    for idx, (cascade, cfg) in enumerate(zip(channels.cascades, ris_configs)):
        n = cascade.g_br.shape[0]
        if cfg.element_count != n:
            raise ValueError(
                f"cascade {idx}: surface has {cfg.element_count} elements "
                f"but the hop matrices have {n}")
        # G_RU @ Theta scales the columns of G_RU by the reflection coefficients.
        total += (cascade.g_ru * cfg.reflection_coefficients()) @ cascade.g_br
    return total
