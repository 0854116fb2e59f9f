"""Silicon-photonic MAC accelerator models: link budgets, receiver noise,
energy per operation, scaling limits and MZI mesh programming."""

from ._sipmac import (
    Config,
    ConfigError,
    InfeasibleError,
    UnreachableTarget,
    afe_sensitivity,
    bit_resolution,
    clements_decompose,
    clements_reconstruct,
    cmos_mac_baseline,
    config_keys,
    energy_per_op,
    figure_csv,
    figure_ids,
    fsr_channel_limit,
    haar_unitary,
    link_budget,
    optimum_network,
    pcm_average_energy,
    propagate,
    q_function,
    rho_ase,
    run_cli,
    scaling_limit,
    snr_to_bits,
    soa_plan,
    soa_scaling_limit,
    splitter_loss,
    throughput_ratio,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
