#pragma once

// Network-size limits, energy optimum, SOA planning and batch sweeps.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sipmac/catalog.hpp"
#include "sipmac/energy.hpp"

namespace sipmac {

enum class LimitingFactor { LaserRatedPower, FsrChannels, AfeCeiling, SearchBound };

std::string_view to_string(LimitingFactor f);

inline constexpr int kMaxNetworkSize = 4096;

struct ScalingResult {
  Architecture arch = Architecture::Mzm;
  double n_target = 1.0;
  double data_rate_sps = 0.0;
  bool feasible = false;
  /// 0 when infeasible.
  int n_ltd = 0;
  LimitingFactor limiting_factor = LimitingFactor::LaserRatedPower;
  double sensitivity_dbm = 0.0;
  /// Detector power at N_ltd and rated laser power.
  double output_dbm = 0.0;
  /// Energy per op at N_ltd; unset when it cannot be evaluated.
  std::optional<double> energy_at_limit;
};

/// Largest N whose detector power at rated laser power meets the
/// sensitivity for n_target bits at the configured data rate. Uses
/// cfg.arch, cfg.noise and the tuning technology's insertion loss.
ScalingResult scaling_limit(const SimConfig& cfg, double n_target);

/// Overload that takes the architecture and data rate explicitly.
ScalingResult scaling_limit(Architecture arch, double n_target, double data_rate_sps,
                            const SimConfig& cfg);

struct OptimumResult {
  int n_opt = 0;
  EnergyBreakdown energy;
  ScalingResult limit;
};

/// argmin over N in [1, N_ltd] of energy per op at resolution cfg.bits; ties
/// go to the larger N. Throws InfeasibleError without a feasible limit.
OptimumResult optimum_network(const SimConfig& cfg);

struct SoaPlan {
  int n = 0;
  double n_target = 0.0;
  int soa_count = 0;
  double achieved_bits = 0.0;
  /// Amplified power at the detector.
  double afe_input_dbm = 0.0;
  bool feasible = false;
};

/// Bits reached with `soa_count` SOAs at size n and rated laser power, and
/// the amplified detector power.
struct AmplifiedLink {
  double bits = 0.0;
  double snr_db = 0.0;
  double afe_input_dbm = 0.0;
};
AmplifiedLink amplified_link(const SimConfig& cfg, int n, int soa_count);

/// Smallest SOA count in {0, 1, 2} reaching n_target without exceeding the
/// AFE input ceiling; infeasible plans report the 2-SOA figures.
SoaPlan soa_plan(const SimConfig& cfg, int n, double n_target);

/// Largest N reachable with exactly `soa_count` SOAs (0 when none).
int soa_scaling_limit(const SimConfig& cfg, double n_target, int soa_count);

/// Channels that fit strictly inside one FSR.
int fsr_channel_limit(double fsr_nm, double spacing_nm);

struct SweepGrid {
  SimConfig base;
  std::vector<Architecture> archs;
  /// Empty means "evaluate each row at its own N_ltd".
  std::vector<int> sizes;
  std::vector<int> bits;
  std::vector<double> data_rates_sps;
  std::vector<TuningKind> tunings;
  std::vector<double> responsivities;
  unsigned workers = 1;
};

struct SweepRow {
  Architecture arch = Architecture::Mzm;
  int n = 0;
  int bits = 1;
  double data_rate_sps = 0.0;
  TuningKind tuning = TuningKind::TopsInsulated;
  double responsivity = 0.0;
  int n_ltd = 0;
  std::string limiting_factor;
  double output_dbm = 0.0;
  double achieved_bits = 0.0;
  double snr_db = 0.0;
  std::optional<EnergyBreakdown> energy;
  bool feasible = false;
  std::string note;
};

/// Cartesian product in the order arch, tuning, bits, data rate,
/// responsivity, size. Empty axes take the base configuration's value.
std::vector<SweepRow> sweep(const SweepGrid& grid);

}  // namespace sipmac
