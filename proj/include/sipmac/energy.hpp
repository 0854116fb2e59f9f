#pragma once

#include "sipmac/catalog.hpp"

namespace sipmac {

/// Energy per operation (J/Op) split by contributor. One N x N
/// vector-matrix product counts 2 N^2 operations.
struct EnergyBreakdown {
  double laser = 0.0;
  double input_drivers = 0.0;
  double mem_interface = 0.0;
  double matrix_tuning = 0.0;
  double soa = 0.0;
  double output_afe = 0.0;
  double total = 0.0;
  double ops_per_second = 0.0;
};

struct TuningPowerResult {
  double total_static_w = 0.0;
  /// Energy of one full weight update.
  double per_update_dynamic_j = 0.0;
  /// Static power plus dynamic energy at DR / weight_reuse updates per second.
  double effective_power_w = 0.0;
};

/// Electrical laser power (W) that delivers p_pd_w to each of N detectors.
/// Throws InfeasibleError above kLaserPowerLimitW.
double mzm_laser_electrical_power(int n, double p_pd_w, const MzmTechParams& tech);
double mrr_laser_electrical_power(int n, double p_pd_w, const MrrTechParams& tech);

inline constexpr double kLaserPowerLimitW = 1e6;

TuningPowerResult avg_tuning_power(const TuningTechnology& tech, Architecture arch, int n,
                                   double data_rate_sps);

/// Linear gain of cfg.soa_count SOAs (1 without SOAs).
double soa_chain_gain(const SimConfig& cfg);

/// Breakdown for cfg.arch at size n and resolution cfg.bits.
EnergyBreakdown energy_per_op(const SimConfig& cfg, int n);

EnergyBreakdown mzm_energy_per_op(const SimConfig& cfg);
EnergyBreakdown mrr_energy_per_op(const SimConfig& cfg);

/// Digital CMOS MAC: (0.046 pJ + 0.0117 pJ) / 2 per operation.
double cmos_mac_baseline();

/// Optical over CMOS throughput, 2 N alpha f_opt / f_cmos.
double throughput_ratio(int n, double alpha, double f_opt_hz, double f_cmos_hz);

}  // namespace sipmac
