"""Transmit/receive beamforming designs: maximum-ratio transmission with
matched-filter combining, zero-forcing stream separation, and
null-space-projected multi-stream precoding."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .numerics import as_matrix, null_space_basis, numerical_rank, pseudo_inverse, svd, water_filling


@dataclass(frozen=True)
class LinkDesign:
    """A complete linear transceiver for one link.

    ``precoder`` is M x S with unit-norm columns, ``combiner`` is S x K, and
    ``stream_powers`` (watts) sums to the transmit budget.
    """

    precoder: np.ndarray
    combiner: np.ndarray
    stream_count: int
    stream_powers: np.ndarray

    def __post_init__(self):
        norms = np.linalg.norm(self.precoder, axis=0)
        if np.any(np.abs(norms - 1.0) > 1e-10):
            raise ValueError("precoder columns must have unit norm")
        if self.precoder.shape[1] != self.stream_count:
            raise ValueError("stream_count does not match precoder columns")
        if self.combiner.shape[0] != self.stream_count:
            raise ValueError("combiner rows do not match stream count")
        if np.any(np.asarray(self.stream_powers) < 0):
            raise ValueError("stream powers must be nonnegative")

    def with_powers(self, powers) -> "LinkDesign":
        return replace(self, stream_powers=np.asarray(powers, dtype=float))


def mrt(h_eff, total_power: float = 1.0) -> LinkDesign:
    """Single-stream maximum-ratio transmission with matched-filter combining.

    The precoder is the dominant right singular vector, the combiner the
    conjugated dominant left one, achieving SNR ``sigma_max^2 P / sigma^2``.
    """
    h = as_matrix(h_eff)
    res = svd(h)
    if res.singular_values[0] == 0.0:
        raise ValueError("zero channel has no transmit direction")
    precoder = res.right_vectors[:, :1]
    combiner = res.left_vectors[:, :1].conj().T
    return LinkDesign(precoder=precoder, combiner=combiner, stream_count=1,
                      stream_powers=np.array([float(total_power)]))


def eigenmode_design(h_eff, stream_count: Optional[int] = None,
                     rel_tol: float = 1e-8) -> LinkDesign:
    """Transmit along the dominant singular directions, one stream per mode.

    Streams default to the numerical rank; the combiner is U^H, which
    diagonalises the effective stream matrix.  Powers start equal and are
    typically replaced via :func:`allocate_stream_power`.
    """
    h = as_matrix(h_eff)
    rank = numerical_rank(h, rel_tol)
    if rank == 0:
        raise ValueError("zero channel supports no streams")
    s = rank if stream_count is None else min(stream_count, rank)
    res = svd(h)
    precoder = res.right_vectors[:, :s]
    combiner = res.left_vectors[:, :s].conj().T
    return LinkDesign(precoder=precoder, combiner=combiner, stream_count=s,
                      stream_powers=np.full(s, 1.0 / s))


def zero_forcing_combiner(h_eff, precoder) -> np.ndarray:
    """Combiner W with ``W @ (h_eff @ precoder) = I_S`` exactly.

    Inverts the effective stream matrix, removing inter-stream interference;
    the paired precoder's effective matrix must have full column rank.
    """
    h = as_matrix(h_eff)
    f = as_matrix(precoder)
    effective = h @ f
    streams = f.shape[1]
    rank = numerical_rank(effective)
    if rank < streams:
        raise ValueError(
            f"effective stream matrix has rank {rank} < {streams} streams; "
            f"zero-forcing is infeasible")
    return pseudo_inverse(effective)


def null_space_precoders(cascade_effective_rows: Sequence, direct=None) -> LinkDesign:
    """One precoder per stream, each confined to the null space of every other
    stream's effective row channel.

    Within its null space a stream points along the dominant direction of its
    own row (projected maximum-ratio), so cross-stream products vanish while
    own-stream gain is maximised.  The optional ``direct`` row contributes an
    extra stream.  The combiner is left as identity; pair with
    :func:`zero_forcing_combiner` on the composite channel.
    """
    rows = [np.asarray(r, dtype=np.complex128).reshape(1, -1)
            for r in cascade_effective_rows]
    if direct is not None:
        rows.append(np.asarray(direct, dtype=np.complex128).reshape(1, -1))
    if not rows:
        raise ValueError("at least one effective row channel is required")
    m = rows[0].shape[1]
    if any(r.shape[1] != m for r in rows):
        raise ValueError("effective rows must share the transmit dimension")
    streams = len(rows)
    if streams > m:
        raise ValueError(f"{streams} streams exceed {m} transmit antennas")

    columns = []
    for s, own in enumerate(rows):
        others = [r for i, r in enumerate(rows) if i != s]
        if others:
            basis = null_space_basis(np.vstack(others))
            if basis.shape[1] == 0:
                raise ValueError(
                    f"stream {s}: null space of the other streams is empty "
                    f"(transmit array too small)")
            projected = own @ basis  # 1 x dim
            norm = np.linalg.norm(projected)
            if norm == 0.0:
                raise ValueError(
                    f"stream {s}: own channel vanishes inside the null space")
            column = basis @ projected.conj().T / norm
        else:
            norm = np.linalg.norm(own)
            if norm == 0.0:
                raise ValueError("stream 0: zero effective row channel")
            column = own.conj().T / norm
        columns.append(column / np.linalg.norm(column))
    precoder = np.hstack(columns)
    return LinkDesign(precoder=precoder, combiner=np.eye(streams, dtype=np.complex128),
                      stream_count=streams,
                      stream_powers=np.full(streams, 1.0 / streams))


def allocate_stream_power(design: LinkDesign, per_stream_gains, p_tx: float,
                          noise_power: float) -> LinkDesign:
    """Water-fill the transmit budget over the design's streams."""
    gains = np.asarray(per_stream_gains, dtype=float)
    if gains.size != design.stream_count:
        raise ValueError(
            f"got {gains.size} gains for {design.stream_count} streams")
    allocation = water_filling(gains, p_tx, noise_power)
    return design.with_powers(allocation.per_stream_power)
