"""Scenario definition, Monte-Carlo sweeps, and CSV emission.

A scenario fixes the geometry (array sizes, surface count and placement),
per-link channel models, noise floors, the shared power budget, and the
beamforming design; a sweep varies one axis (element count, antenna count, or
a noise floor in dBm) over a value list with a fixed number of independent
trials per point.  Records are deterministic for a fixed seed regardless of
execution order or worker count.
"""

from __future__ import annotations

import concurrent.futures
import configparser
import csv
import hashlib
import io
import os
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .beamforming import (LinkDesign, eigenmode_design, mrt,
                          null_space_precoders, zero_forcing_combiner)
from .channel import (ArrayGeometry, Cascade, ChannelSet, LinkBudget,
                      blocked_channel, composite_channel, los_channel,
                      rayleigh_channel, steering_vector)
from .numerics import numerical_rank, svd, water_filling
from .placement import RisSite, orthogonal_angle_chain
from .rate import (NoiseModel, RateResult, achievable_rate,
                   noise_covariance, per_stream_snr)
from .ris import RisConfig, identity_config, phase_align, solve_amplification

BROADSIDE = np.pi / 2

DIRECT_TAGS = ("los", "blocked")
HOP_TAGS = ("los", "rayleigh")
DESIGNS = ("mrt", "eigen_wf", "nullspace_zf_wf")
SURFACE_MODES = ("passive", "active")
SWEEP_AXES = ("n", "m", "ris_noise_dbm", "user_noise_dbm")

# Arrival/departure angles at each surface face; arbitrary but fixed, so the
# element phase profiles are nontrivial.
SURFACE_ARRIVAL = 1.0
SURFACE_DEPARTURE = 2.0

ALIGN_ITERATIONS = 2  # fixed-point rounds for phase alignment on faded hops


class ConfigError(ValueError):
    """Scenario configuration is invalid; raised before any computation."""


@dataclass(frozen=True)
class ScenarioConfig:
    """Full experiment description for one scenario."""

    scenario_id: str
    m: int = 64                      # base-station antennas
    n: int = 256                     # elements per surface
    k: int = 4                       # user antennas
    j: int = 0                       # number of surfaces (0 = no RIS)
    bs_ris_distance: float = 82.0    # metres
    ris_user_distance: float = 28.0
    bs_user_distance: float = 100.0
    direct_tag: str = "los"          # los | blocked
    bs_ris_tag: str = "los"          # los | rayleigh
    ris_user_tag: str = "los"
    user_noise_dbm: float = -70.0
    ris_noise_dbm: float = -90.0
    power_sum: float = 1.0           # watts, joint transmit + surface budget
    design: str = "eigen_wf"         # mrt | eigen_wf | nullspace_zf_wf
    surface_mode: str = "passive"    # passive | active
    sweep_axis: str = "n"
    sweep_values: tuple = (256,)
    trials: int = 1
    seed: int = 20240501
    los_exponent: float = 2.0
    nlos_exponent: float = 2.0
    reference_loss_db: float = 28.0
    wavelength: float = 0.1

    @property
    def design_labels(self) -> str:
        parts = [self.design]
        if self.j > 0:
            parts.append("phase_align")
            parts.append(self.surface_mode)
        return "+".join(parts)

    def fingerprint(self) -> str:
        digest = hashlib.sha256(repr(self).encode()).hexdigest()
        return digest[:12]


@dataclass(frozen=True)
class SweepRecord:
    """One (sweep value, trial) outcome; the CSV row schema."""

    scenario_id: str
    sweep_value: float
    trial_index: int
    rate: float
    effective_rank: int
    seed: int
    design_labels: str

    @property
    def sort_key(self):
        return (self.scenario_id, self.sweep_value, self.trial_index)


CSV_COLUMNS = ("scenario_id", "sweep_value", "trial_index", "rate",
               "effective_rank", "seed", "design_labels")


@dataclass(frozen=True)
class SummaryRow:
    scenario_id: str
    sweep_value: float
    mean_rate: float
    ratio_vs_baseline: float  # inf marks a zero-rate baseline


def validate_scenario(cfg: ScenarioConfig) -> None:
    """Reject invalid configurations before any computation."""
    if cfg.m < 1 or cfg.k < 1 or cfg.n < 1 or cfg.j < 0:
        raise ConfigError("array sizes must be positive and j >= 0")
    if cfg.k > cfg.m:
        raise ConfigError(f"user antennas k={cfg.k} must not exceed m={cfg.m}")
    if cfg.direct_tag not in DIRECT_TAGS:
        raise ConfigError(f"unknown direct channel tag {cfg.direct_tag!r}")
    if cfg.bs_ris_tag not in HOP_TAGS or cfg.ris_user_tag not in HOP_TAGS:
        raise ConfigError("cascade hop tags must be 'los' or 'rayleigh'")
    if cfg.design not in DESIGNS:
        raise ConfigError(f"unknown design {cfg.design!r}")
    if cfg.surface_mode not in SURFACE_MODES:
        raise ConfigError(f"unknown surface mode {cfg.surface_mode!r}")
    if cfg.sweep_axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis {cfg.sweep_axis!r}")
    if not cfg.sweep_values:
        raise ConfigError("sweep_values must be nonempty")
    if cfg.trials < 1:
        raise ConfigError("trials must be >= 1")
    if cfg.power_sum <= 0:
        raise ConfigError("power_sum must be positive")
    if cfg.design == "nullspace_zf_wf" and cfg.j < 1:
        raise ConfigError("null-space design needs at least one surface")
    if cfg.j > 0 and cfg.direct_tag == "los" and cfg.j > cfg.k:
        raise ConfigError(
            f"j={cfg.j} surfaces with a direct path exceed the user-side "
            f"orthogonality budget (k={cfg.k})")
    if cfg.j > cfg.k:
        raise ConfigError(f"j={cfg.j} surfaces exceed the user array size k={cfg.k}")


def apply_sweep_value(cfg: ScenarioConfig, value: float) -> ScenarioConfig:
    if cfg.sweep_axis == "n":
        return replace(cfg, n=int(value))
    if cfg.sweep_axis == "m":
        return replace(cfg, m=int(value))
    if cfg.sweep_axis == "ris_noise_dbm":
        return replace(cfg, ris_noise_dbm=float(value))
    if cfg.sweep_axis == "user_noise_dbm":
        return replace(cfg, user_noise_dbm=float(value))
    raise ConfigError(f"unknown sweep axis {cfg.sweep_axis!r}")


def trial_seed(cfg: ScenarioConfig, sweep_index: int, trial_index: int) -> int:
    """Stable per-task seed; independent of execution order."""
    ss = np.random.SeedSequence([cfg.seed, sweep_index, trial_index])
    return int(ss.generate_state(1, np.uint64)[0])


# ---------------------------------------------------------------------------
# Geometry and channel construction
# ---------------------------------------------------------------------------

def site_layout(cfg: ScenarioConfig) -> list:
    """Angular positions for the configured surfaces.

    Base-station-side departure angles walk the orthogonal-offset chain from
    broadside; user-side arrival angles do the same over the (small) user
    array.  With a live direct path and j == k, the last surface is aligned
    with the direct path on both faces so its cascade reinforces that stream.
    """
    if cfg.j == 0:
        return []
    bs_geom = ArrayGeometry.half_wavelength(cfg.m, cfg.wavelength)
    user_geom = ArrayGeometry.half_wavelength(cfg.k, cfg.wavelength)
    direct_live = cfg.direct_tag != "blocked"
    aligned_last = direct_live and cfg.j == cfg.k
    chained = cfg.j - 1 if aligned_last else cfg.j

    bs_angles = orthogonal_angle_chain(BROADSIDE, bs_geom, chained,
                                       skip_base=direct_live)
    user_angles = orthogonal_angle_chain(BROADSIDE, user_geom, chained,
                                         skip_base=direct_live)
    sites = [RisSite(aod_from_bs=theta, aoa_at_user=phi,
                     bs_ris_distance=cfg.bs_ris_distance,
                     ris_user_distance=cfg.ris_user_distance,
                     element_count=cfg.n)
             for theta, phi in zip(bs_angles, user_angles)]
    if aligned_last:
        sites.append(RisSite(aod_from_bs=BROADSIDE, aoa_at_user=BROADSIDE,
                             bs_ris_distance=cfg.bs_ris_distance,
                             ris_user_distance=cfg.ris_user_distance,
                             element_count=cfg.n, aligned_with_direct=True))
    return sites


def _budget(cfg: ScenarioConfig, distance: float, faded: bool) -> LinkBudget:
    exponent = cfg.nlos_exponent if faded else cfg.los_exponent
    return LinkBudget(distance, exponent, cfg.reference_loss_db)


def build_channels(cfg: ScenarioConfig, seed: int) -> ChannelSet:
    """One channel realisation for a scenario (deterministic per seed)."""
    bs_geom = ArrayGeometry.half_wavelength(cfg.m, cfg.wavelength)
    user_geom = ArrayGeometry.half_wavelength(cfg.k, cfg.wavelength)

    if cfg.direct_tag == "blocked":
        direct = blocked_channel(cfg.k, cfg.m)
    else:
        direct = los_channel(bs_geom, user_geom, BROADSIDE, BROADSIDE,
                             _budget(cfg, cfg.bs_user_distance, faded=False))

    cascades = []
    for idx, site in enumerate(site_layout(cfg)):
        ris_geom = ArrayGeometry.half_wavelength(site.element_count, cfg.wavelength)
        if cfg.bs_ris_tag == "los":
            g_br = los_channel(bs_geom, ris_geom, site.aod_from_bs,
                               SURFACE_ARRIVAL,
                               _budget(cfg, site.bs_ris_distance, faded=False))
        else:
            g_br = rayleigh_channel(site.element_count, cfg.m,
                                    _budget(cfg, site.bs_ris_distance, faded=True),
                                    seed, tag=f"cascade{idx}-bs")
        if cfg.ris_user_tag == "los":
            g_ru = los_channel(ris_geom, user_geom, SURFACE_DEPARTURE,
                               site.aoa_at_user,
                               _budget(cfg, site.ris_user_distance, faded=False))
        else:
            g_ru = rayleigh_channel(cfg.k, site.element_count,
                                    _budget(cfg, site.ris_user_distance, faded=True),
                                    seed, tag=f"cascade{idx}-user")
        cascades.append(Cascade(g_br=g_br, g_ru=g_ru))
    tags = {"direct": cfg.direct_tag,
            "cascade": f"{cfg.bs_ris_tag}/{cfg.ris_user_tag}"}
    return ChannelSet(direct=direct, cascades=cascades, seed=seed, model_tags=tags)


def align_surface(g_br: np.ndarray, g_ru: np.ndarray, direct_phase: float = 0.0,
                  iterations: int = ALIGN_ITERATIONS) -> RisConfig:
    """Phase-align one cascade for coherent combining.

    Fixed point between the cascade's dominant transmit/receive pair and the
    per-element alignment for that pair; for rank-one (all line-of-sight)
    hops one round is already exact.
    """
    config = identity_config(g_br.shape[0])
    for _ in range(max(1, iterations)):
        cascade = (g_ru * config.reflection_coefficients()) @ g_br
        res = svd(cascade)
        if res.singular_values[0] == 0.0:
            return config
        u = res.left_vectors[:, 0]
        w = res.right_vectors[:, 0]
        config = phase_align(g_br @ w, u.conj() @ g_ru, direct_phase)
    return config


# ---------------------------------------------------------------------------
# Rate evaluation pipeline
# ---------------------------------------------------------------------------

def _direct_phase_reference(direct: np.ndarray) -> float:
    """Phase of the direct path's broadside coefficient (0 for zero H)."""
    if not np.any(direct):
        return 0.0
    return float(np.angle(np.sum(direct)))


def _surface_phases(cfg: ScenarioConfig, channels: ChannelSet,
                    sites) -> list:
    configs = []
    for site, cascade in zip(sites, channels.cascades):
        phase_ref = 0.0
        if site.aligned_with_direct:
            phase_ref = _direct_phase_reference(channels.direct)
        configs.append(align_surface(cascade.g_br, cascade.g_ru, phase_ref))
    return configs


def _noise_model(cfg: ScenarioConfig) -> NoiseModel:
    return NoiseModel.from_dbm(cfg.user_noise_dbm, cfg.ris_noise_dbm)


def _stream_gains(h_eff, design: LinkDesign, cov) -> np.ndarray:
    """Unit-power per-stream gains through the design's combiner."""
    probe = design.with_powers(np.ones(design.stream_count))
    return per_stream_snr(h_eff, probe, cov)


def _waterfill_design(h_eff, design: LinkDesign, cov, p_tx: float) -> LinkDesign:
    gains = _stream_gains(h_eff, design, cov)
    if np.any(gains <= 0):
        keep = gains > 0
        powers = np.zeros(design.stream_count)
        if np.any(keep):
            alloc = water_filling(gains[keep], p_tx, 1.0)
            powers[keep] = alloc.per_stream_power
        return design.with_powers(powers)
    return design.with_powers(water_filling(gains, p_tx, 1.0).per_stream_power)


def _zero_rate(cfg: ScenarioConfig, fingerprint: str) -> RateResult:
    return RateResult(rate=0.0, effective_rank=0, per_stream_snr_db=(),
                      config_fingerprint=fingerprint)


def _evaluate_direct_only(cfg, channels, fingerprint) -> RateResult:
    h = channels.direct
    if numerical_rank(h) == 0:
        return _zero_rate(cfg, fingerprint)
    model = _noise_model(cfg)
    cov = noise_covariance(cfg.k, [], [], model)
    if cfg.design == "mrt" or numerical_rank(h) == 1:
        design = mrt(h, cfg.power_sum)
    else:
        design = eigenmode_design(h)
        design = _waterfill_design(h, design, cov, cfg.power_sum)
    return achievable_rate(h, design, cov, fingerprint)


def _evaluate_eigen(cfg, channels, surfaces, fingerprint) -> RateResult:
    h = composite_channel(channels, surfaces)
    if numerical_rank(h) == 0:
        return _zero_rate(cfg, fingerprint)
    model = _noise_model(cfg)
    ru_links = [c.g_ru for c in channels.cascades]
    cov = noise_covariance(cfg.k, ru_links, surfaces, model)
    if cfg.design == "mrt":
        design = mrt(h, cfg.power_sum)
    else:
        design = eigenmode_design(h)
        design = _waterfill_design(h, design, cov, cfg.power_sum)
    return achievable_rate(h, design, cov, fingerprint)


def _nullspace_rows(cfg, channels, sites, surfaces):
    """Per-stream effective row channels (base-station side).

    Each non-aligned surface contributes its own row; the direct path's row
    absorbs any aligned surface so the pair is carried by a single stream.
    """
    user_geom = ArrayGeometry.half_wavelength(cfg.k, cfg.wavelength)
    rows = []
    direct_row = None
    merged = channels.direct.copy()
    for site, cascade, cfg_s in zip(sites, channels.cascades, surfaces):
        contribution = (cascade.g_ru * cfg_s.reflection_coefficients()) @ cascade.g_br
        if site.aligned_with_direct:
            merged += contribution
            continue
        u = steering_vector(user_geom, site.aoa_at_user)
        u = u / np.linalg.norm(u)
        rows.append(u.conj() @ contribution)
    if cfg.direct_tag != "blocked":
        u0 = steering_vector(user_geom, BROADSIDE)
        u0 = u0 / np.linalg.norm(u0)
        direct_row = u0.conj() @ merged
    return rows, direct_row


def _solve_amplifications(cfg, channels, surfaces, design: LinkDesign,
                          model: NoiseModel, budget_per_site: float) -> list:
    """Per-surface amplification meeting the site budget for this design."""
    solved = []
    weighted = design.precoder * np.sqrt(design.stream_powers)
    for cascade, surface in zip(channels.cascades, surfaces):
        incident = cascade.g_br @ weighted
        c_in = incident @ incident.conj().T
        rho = solve_amplification(surface, c_in, model.ris_noise, budget_per_site)
        solved.append(surface.with_amplification(rho))
    return solved


def _evaluate_nullspace(cfg, channels, sites, surfaces, fingerprint) -> RateResult:
    model = _noise_model(cfg)
    active = cfg.surface_mode == "active"
    # Fixed equal per-node allotment: the transmitter and each of up to k
    # surfaces hold the same share at every j, so sites are identical across
    # a surface-count sweep; the no-surface baseline spends the whole sum.
    node_budget = cfg.power_sum / (cfg.k + 1) if active else cfg.power_sum
    p_tx = node_budget

    design = None
    for _ in range(2):
        rows, direct_row = _nullspace_rows(cfg, channels, sites, surfaces)
        design = null_space_precoders(rows, direct_row)
        h = composite_channel(channels, surfaces)
        ru_links = [c.g_ru for c in channels.cascades]
        cov = noise_covariance(cfg.k, ru_links, surfaces, model)
        combiner = zero_forcing_combiner(h, design.precoder)
        design = LinkDesign(precoder=design.precoder, combiner=combiner,
                            stream_count=design.stream_count,
                            stream_powers=design.stream_powers)
        design = _waterfill_design(h, design, cov, p_tx)
        if not active:
            break
        surfaces = _solve_amplifications(cfg, channels, surfaces, design,
                                         model, node_budget)
    h = composite_channel(channels, surfaces)
    ru_links = [c.g_ru for c in channels.cascades]
    cov = noise_covariance(cfg.k, ru_links, surfaces, model)
    combiner = zero_forcing_combiner(h, design.precoder)
    design = LinkDesign(precoder=design.precoder, combiner=combiner,
                        stream_count=design.stream_count,
                        stream_powers=design.stream_powers)
    return achievable_rate(h, design, cov, fingerprint)


def evaluate_point(cfg: ScenarioConfig, seed: int) -> RateResult:
    """Full pipeline for one channel realisation of one configuration."""
    fingerprint = cfg.fingerprint()
    channels = build_channels(cfg, seed)
    if cfg.j == 0:
        return _evaluate_direct_only(cfg, channels, fingerprint)
    sites = site_layout(cfg)
    surfaces = _surface_phases(cfg, channels, sites)
    if cfg.design == "nullspace_zf_wf":
        return _evaluate_nullspace(cfg, channels, sites, surfaces, fingerprint)
    return _evaluate_eigen(cfg, channels, surfaces, fingerprint)


# ---------------------------------------------------------------------------
# Sweep driver
# ---------------------------------------------------------------------------

def run_scenario(cfg: ScenarioConfig, workers: int = 1) -> list:
    """All (sweep value, trial) records for one scenario.

    Deterministic for a fixed seed at any worker count: every task derives
    its own seed from (scenario seed, sweep index, trial index) and records
    are sorted by their natural key.
    """
    validate_scenario(cfg)
    tasks = [(si, value, ti)
             for si, value in enumerate(cfg.sweep_values)
             for ti in range(cfg.trials)]

    def run_task(task):
        si, value, ti = task
        point_cfg = apply_sweep_value(cfg, value)
        seed = trial_seed(cfg, si, ti)
        result = evaluate_point(point_cfg, seed)
        return SweepRecord(scenario_id=cfg.scenario_id, sweep_value=float(value),
                           trial_index=ti, rate=result.rate,
                           effective_rank=result.effective_rank, seed=seed,
                           design_labels=cfg.design_labels)

    if workers <= 1:
        records = [run_task(t) for t in tasks]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run_task, tasks))
    return sorted(records, key=lambda r: r.sort_key)


def run_scenarios(configs: Sequence[ScenarioConfig], workers: int = 1) -> list:
    records = []
    for cfg in configs:
        records.extend(run_scenario(cfg, workers=workers))
    return records


def summarize(records: Sequence[SweepRecord], baseline_id: str) -> list:
    """Mean rate per (scenario, sweep value) plus the ratio over a baseline.

    A zero-rate baseline yields an infinite-gain marker rather than an error.
    """
    by_scenario = {}
    for record in records:
        by_scenario.setdefault(record.scenario_id, {}).setdefault(
            record.sweep_value, []).append(record.rate)
    if baseline_id not in by_scenario:
        raise ValueError(f"baseline scenario {baseline_id!r} has no records")
    baseline = {value: float(np.mean(rates))
                for value, rates in by_scenario[baseline_id].items()}
    rows = []
    for scenario_id in sorted(by_scenario):
        points = by_scenario[scenario_id]
        if set(points) != set(baseline):
            raise ValueError(
                f"scenario {scenario_id!r} sweeps {sorted(points)} but the "
                f"baseline covers {sorted(baseline)}")
        for value in sorted(points):
            mean_rate = float(np.mean(points[value]))
            base = baseline[value]
            if base == 0.0:
                ratio = float("inf") if mean_rate > 0 else 1.0
            else:
                ratio = mean_rate / base
            rows.append(SummaryRow(scenario_id=scenario_id, sweep_value=value,
                                   mean_rate=mean_rate, ratio_vs_baseline=ratio))
    return rows


# ---------------------------------------------------------------------------
# CSV emission and scenario files
# ---------------------------------------------------------------------------

def _format_number(x) -> str:
    return f"{float(x):.12g}"


def records_to_csv_bytes(records: Sequence[SweepRecord]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([r.scenario_id, _format_number(r.sweep_value),
                         r.trial_index, _format_number(r.rate),
                         r.effective_rank, r.seed, r.design_labels])
    return buf.getvalue().encode()


def summary_to_csv_bytes(rows: Sequence[SummaryRow]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["scenario_id", "sweep_value", "mean_rate", "ratio_vs_baseline"])
    for row in rows:
        writer.writerow([row.scenario_id, _format_number(row.sweep_value),
                         _format_number(row.mean_rate),
                         _format_number(row.ratio_vs_baseline)])
    return buf.getvalue().encode()


def write_atomic(path: str, payload: bytes) -> None:
    """Write via a sibling temp file and rename; never leaves partial output."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "wb") as handle:
        handle.write(payload)
    os.replace(tmp, path)


def read_records_csv(path: str) -> list:
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        missing = [c for c in CSV_COLUMNS if c not in (reader.fieldnames or [])]
        if missing:
            raise ValueError(f"CSV {path} is missing columns {missing}")
        return [SweepRecord(scenario_id=row["scenario_id"],
                            sweep_value=float(row["sweep_value"]),
                            trial_index=int(row["trial_index"]),
                            rate=float(row["rate"]),
                            effective_rank=int(row["effective_rank"]),
                            seed=int(row["seed"]),
                            design_labels=row["design_labels"])
                for row in reader]


_SCENARIO_KEYS = {
    "id": ("scenario_id", str),
    "bs_antennas": ("m", int),
    "user_antennas": ("k", int),
    "surfaces": ("j", int),
    "elements_per_surface": ("n", int),
    "direct": ("direct_tag", str),
    "bs_ris": ("bs_ris_tag", str),
    "ris_user": ("ris_user_tag", str),
    "design": ("design", str),
    "surface_mode": ("surface_mode", str),
    "trials": ("trials", int),
    "seed": ("seed", int),
    "power_sum_watts": ("power_sum", float),
}


def parse_scenario_file(path: str) -> ScenarioConfig:
    """Load a key/value scenario file (INI sections) into a ScenarioConfig."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read scenario file {path}")
    if "scenario" not in parser:
        raise ConfigError(f"{path}: missing [scenario] section")

    kwargs = {}
    for key, raw in parser["scenario"].items():
        if key not in _SCENARIO_KEYS:
            raise ConfigError(f"{path}: unknown scenario key {key!r}")
        name, cast = _SCENARIO_KEYS[key]
        try:
            kwargs[name] = cast(raw)
        except ValueError as exc:
            raise ConfigError(f"{path}: bad value for {key!r}: {raw!r}") from exc
    if "scenario_id" not in kwargs:
        raise ConfigError(f"{path}: [scenario] must set 'id'")

    if "distances" in parser:
        section = parser["distances"]
        for key, name in (("bs_ris", "bs_ris_distance"),
                          ("ris_user", "ris_user_distance"),
                          ("bs_user", "bs_user_distance")):
            if key in section:
                kwargs[name] = section.getfloat(key)
    if "noise" in parser:
        section = parser["noise"]
        if "user_dbm" in section:
            kwargs["user_noise_dbm"] = section.getfloat("user_dbm")
        if "ris_dbm" in section:
            kwargs["ris_noise_dbm"] = section.getfloat("ris_dbm")
    if "sweep" in parser:
        section = parser["sweep"]
        axis = section.get("axis", "n").strip()
        values_raw = section.get("values", "")
        try:
            values = tuple(float(v) for v in values_raw.split(",") if v.strip())
        except ValueError as exc:
            raise ConfigError(f"{path}: bad sweep values {values_raw!r}") from exc
        if not values:
            raise ConfigError(f"{path}: [sweep] must list values")
        kwargs["sweep_axis"] = axis
        kwargs["sweep_values"] = values

    cfg = ScenarioConfig(**kwargs)
    validate_scenario(cfg)
    return cfg
