"""isacbench: wideband ISAC waveform synthesis, sensing and communication
metrics, and variance-constrained power allocation, with a seeded
CSV-emitting experiment runner."""

__version__ = "0.1.0"

from .signals import (
    ComplexSequence,
    Constellation,
    acorr_aperiodic,
    acorr_circular,
    dft,
    get_constellation,
    idft,
    map_bits,
    psd,
    random_symbols,
)
from .ofdm import OfdmConfig, PowerAllocation, apply_freq_channel, modulate_symbol
from .otfs import DdGrid, PilotScheme, isfft, place_pilots, sfft, synthesize_time
from .channel import (
    ChannelProfile,
    ChannelTap,
    FadingProfile,
    apply_time_channel,
    freq_response,
    make_notched_profile,
    pathloss_db,
)
from .sensing import (
    RangingScenario,
    crb_ranging_mse,
    estimate_delay_mf,
    fisher_info,
    imaging_snr,
    isl,
    isl_gap_curve,
    psl,
    rms_bandwidth,
    sensing_se,
)
from .comm import LinkBudget, gap_region, gaussian_se, qpsk_mi, se_vs_distance, sum_rate
from .allocator import (
    AllocProblem,
    AllocSolution,
    baseband_weights,
    classical_waterfill,
    exhaustive_oracle,
    single_stage_pg,
    stage1_waterfill,
    stage2_project,
    two_stage,
)
