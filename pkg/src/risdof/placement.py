"""Distributed-surface placement planning.

Plans angular positions so that the rank-one cascades are mutually orthogonal
on both array faces and the composite channel reaches the target rank with a
bounded condition number.  For a uniform linear array with M elements at
spacing d, the responses at angles theta_i and theta_j are exactly orthogonal
when ``cos(theta_j) - cos(theta_i) = lambda * l / (M d)`` for an integer l
not divisible by M; the planner walks such offsets greedily from a base angle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import ArrayGeometry, LinkBudget, los_channel, steering_vector
from .numerics import as_matrix, svd


class InfeasibleAngleError(ValueError):
    """The requested orthogonal-angle offset leaves the arccos domain."""


@dataclass(frozen=True)
class RisSite:
    """One planned surface position."""

    aod_from_bs: float       # radians, departure angle at the base station
    aoa_at_user: float       # radians, arrival angle at the user
    bs_ris_distance: float   # metres
    ris_user_distance: float  # metres
    element_count: int
    aligned_with_direct: bool = False  # user-side signature coincides with H's

    def __post_init__(self):
        for name, angle in (("aod_from_bs", self.aod_from_bs),
                            ("aoa_at_user", self.aoa_at_user)):
            if not 0.0 <= angle <= np.pi:
                raise ValueError(f"{name} must lie in [0, pi], got {angle}")
        if self.bs_ris_distance <= 0 or self.ris_user_distance <= 0:
            raise ValueError("site distances must be positive")
        if self.element_count < 1:
            raise ValueError("element_count must be >= 1")


@dataclass(frozen=True)
class PlacementPlan:
    sites: tuple                      # tuple[RisSite, ...]
    target_rank: int
    alignment_with_direct: bool       # direct path counted towards the rank
    direct_aod: Optional[float] = None
    direct_aoa: Optional[float] = None

    @property
    def site_count(self) -> int:
        return len(self.sites)


def orthogonal_angle(theta_i: float, geometry: ArrayGeometry, l: int) -> float:
    """Angle whose steering vector is exactly orthogonal to the one at theta_i.

    ``theta_j = arccos(cos(theta_i) + lambda * l / (M d))`` with M the element
    count and d the spacing; offsets with ``l % M == 0`` are degenerate (they
    reproduce the same response) and out-of-domain arguments are infeasible.
    """
    l = int(l)
    m = geometry.element_count
    if l % m == 0:
        raise ValueError(f"offset l={l} is degenerate for an {m}-element array")
    step = geometry.carrier_wavelength * l / (m * geometry.element_spacing)
    arg = np.cos(theta_i) + step
    if abs(arg) > 1.0 + 1e-15:
        raise InfeasibleAngleError(
            f"cos(theta_i) + lambda*l/(M d) = {arg:.6f} lies outside [-1, 1]; "
            f"try a smaller |l|")
    return float(np.arccos(np.clip(arg, -1.0, 1.0)))


def orthogonal_angle_chain(base_angle: float, geometry: ArrayGeometry,
                           count: int, skip_base: bool = True) -> list:
    """``count`` angles mutually orthogonal over ``geometry``, walking offsets
    l = +1, -1, +2, -2, ... from the base angle.

    With ``skip_base`` the base angle is reserved (a direct path already owns
    that response) and every result is orthogonal to it; otherwise the base
    angle itself is handed out as the first member.  Greedy small-|l| steps
    maximise the feasibility margin of the arccos argument.  Raises
    :class:`InfeasibleAngleError` when the chain runs off the domain before
    enough angles are found.
    """
    m = geometry.element_count
    angles = [] if skip_base else [float(base_angle)]
    used = {0}
    candidates = []
    for mag in range(1, 2 * m):
        candidates.extend((mag, -mag))
    for l in candidates:
        if len(angles) == count:
            break
        if l % m == 0 or any((l - u) % m == 0 for u in used):
            continue
        try:
            angles.append(orthogonal_angle(base_angle, geometry, l))
        except InfeasibleAngleError:
            continue
        used.add(l)
    if len(angles) < count:
        raise InfeasibleAngleError(
            f"only {len(angles)} of {count} mutually orthogonal angles are "
            f"feasible from base {base_angle:.4f} rad over {m} elements")
    return angles


def plan_distributed(target_rank: int, direct_rank: int,
                     bs_geometry: ArrayGeometry, user_geometry: ArrayGeometry,
                     base_angles=(np.pi / 2, np.pi / 2),
                     bs_ris_distance: float = 82.0,
                     ris_user_distance: float = 28.0,
                     total_elements: Optional[int] = None) -> PlacementPlan:
    """Plan J = target_rank - direct_rank surface sites.

    Base-station-side departure angles are pairwise orthogonal over the BS
    array (and orthogonal to the direct departure when a direct path exists);
    user-side arrival angles are pairwise orthogonal over the user array and
    orthogonal to the direct arrival.  Element budgets split equally.
    """
    if target_rank < 1:
        raise ValueError(f"target_rank must be >= 1, got {target_rank}")
    if direct_rank not in (0, 1):
        raise ValueError(f"direct_rank must be 0 or 1, got {direct_rank}")
    if target_rank > user_geometry.element_count:
        raise ValueError(
            f"target rank {target_rank} exceeds the user array size "
            f"{user_geometry.element_count}")
    site_count = target_rank - direct_rank
    direct_aod, direct_aoa = base_angles
    if site_count == 0:
        return PlacementPlan((), target_rank, bool(direct_rank),
                             direct_aod, direct_aoa)

    has_direct = direct_rank == 1
    bs_angles = orthogonal_angle_chain(direct_aod, bs_geometry, site_count,
                                       skip_base=has_direct)
    user_angles = orthogonal_angle_chain(direct_aoa, user_geometry, site_count,
                                         skip_base=has_direct)
    per_site = (total_elements // site_count) if total_elements else 128
    if per_site < 1:
        raise ValueError(
            f"element budget {total_elements} cannot cover {site_count} sites")
    sites = tuple(
        RisSite(aod_from_bs=theta, aoa_at_user=phi,
                bs_ris_distance=bs_ris_distance,
                ris_user_distance=ris_user_distance,
                element_count=per_site)
        for theta, phi in zip(bs_angles, user_angles))
    return PlacementPlan(sites, target_rank, bool(direct_rank),
                         direct_aod, direct_aoa)


def alignment_check(h, cascade_ru) -> float:
    """Largest principal-angle cosine between the user-side (column) spaces.

    1.0 means the receive signatures fully overlap, 0.0 means orthogonal.
    Zero matrices are unaligned by convention.
    """
    a = as_matrix(h)
    b = as_matrix(cascade_ru)
    if a.shape[0] != b.shape[0]:
        raise ValueError(
            f"row counts differ: {a.shape[0]} vs {b.shape[0]}")
    if not np.any(a) or not np.any(b):
        return 0.0
    ua = _column_space_basis(a)
    ub = _column_space_basis(b)
    overlap = ua.conj().T @ ub
    return float(np.linalg.svd(overlap, compute_uv=False)[0])


def _column_space_basis(a: np.ndarray) -> np.ndarray:
    res = svd(a)
    smax = res.singular_values[0]
    rank = int(np.count_nonzero(res.singular_values > 1e-8 * smax))
    return res.left_vectors[:, :rank]


def plan_composite(plan: PlacementPlan, bs_geometry: ArrayGeometry,
                   user_geometry: ArrayGeometry,
                   direct_budget: Optional[LinkBudget] = None,
                   site_budgets=None) -> np.ndarray:
    """All-line-of-sight composite channel realised from a plan.

    Each site contributes its coherently-combined rank-one cascade
    ``N_j * g_br * g_ru * b(phi_j) a(theta_j)^H``; the direct path is added
    when the plan counts one.  Used to verify achieved rank and conditioning.
    """
    k = user_geometry.element_count
    m = bs_geometry.element_count
    total = np.zeros((k, m), dtype=np.complex128)
    if plan.alignment_with_direct:
        if direct_budget is None:
            direct_budget = LinkBudget(100.0)
        total += los_channel(bs_geometry, user_geometry,
                             plan.direct_aod, plan.direct_aoa, direct_budget)
    for idx, site in enumerate(plan.sites):
        if site_budgets is not None:
            budget_br, budget_ru = site_budgets[idx]
        else:
            budget_br = LinkBudget(site.bs_ris_distance)
            budget_ru = LinkBudget(site.ris_user_distance)
        gain = site.element_count * budget_br.amplitude_gain * budget_ru.amplitude_gain
        cascade = gain * np.outer(
            steering_vector(user_geometry, site.aoa_at_user),
            steering_vector(bs_geometry, site.aod_from_bs).conj())
        total += cascade
    return total


def restricted_condition_number(a, rank: int) -> float:
    """sigma_max / sigma_rank over the leading ``rank`` singular values."""
    s = svd(a).singular_values
    if rank < 1 or rank > s.size or s[rank - 1] == 0.0:
        return float("inf")
    return float(s[0] / s[rank - 1])


def format_plan_report(plan: PlacementPlan, achieved_rank: Optional[int] = None,
                       condition_number: Optional[float] = None) -> str:
    """Human-readable site report (angles in degrees)."""
    lines = [
        f"target_rank: {plan.target_rank}",
        f"direct_path_counted: {'yes' if plan.alignment_with_direct else 'no'}",
        f"sites: {plan.site_count}",
    ]
    for idx, site in enumerate(plan.sites, start=1):
        lines.append(
            f"site {idx}: bs_departure_deg={np.degrees(site.aod_from_bs):.4f} "
            f"user_arrival_deg={np.degrees(site.aoa_at_user):.4f} "
            f"bs_distance_m={site.bs_ris_distance:g} "
            f"user_distance_m={site.ris_user_distance:g} "
            f"elements={site.element_count}")
    if achieved_rank is not None:
        lines.append(f"achieved_rank: {achieved_rank}")
    if condition_number is not None:
        lines.append(f"restricted_condition_number: {condition_number:.6g}")
    return "\n".join(lines) + "\n"
