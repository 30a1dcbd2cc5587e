"""Link-level simulator for rank-deficient MIMO channels aided by
reconfigurable reflecting surfaces: channel synthesis, surface placement and
control, beamforming, achievable-rate evaluation, and sweep harness."""

from .numerics import (DEFAULT_REL_TOL, PowerAllocation, SvdResult,
                       null_space_basis, numerical_rank, pseudo_inverse, svd,
                       water_filling)
from .channel import (ArrayGeometry, Cascade, ChannelSet, LinkBudget,
                      blocked_channel, composite_channel, los_channel,
                      rayleigh_channel, steering_vector)
from .ris import RisConfig, active_power, phase_align, solve_amplification
from .placement import (InfeasibleAngleError, PlacementPlan, RisSite,
                        alignment_check, orthogonal_angle, plan_distributed)
from .beamforming import (LinkDesign, allocate_stream_power, eigenmode_design,
                          mrt, null_space_precoders, zero_forcing_combiner)
from .rate import (NoiseModel, RateResult, achievable_rate, dbm_to_watts,
                   noise_covariance)
from .harness import (ConfigError, ScenarioConfig, SweepRecord, SummaryRow,
                      run_scenario, run_scenarios, summarize)
from .presets import PRESET_NAMES, preset_baseline, preset_scenarios

__version__ = "0.1.0"
