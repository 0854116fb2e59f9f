#pragma once

// Device and technology parameters for silicon-photonic MAC accelerators.
// Losses are kept in dB throughout; conversion to linear transmission happens
// only inside the evaluators.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace sipmac {

enum class Architecture { Mzm, Mrr };

enum class TuningKind { TopsPlain, TopsInsulated, Noems, Lcos, Pcm };

std::string_view to_string(Architecture arch);
std::string_view to_string(TuningKind kind);
std::optional<Architecture> parse_architecture(std::string_view text);
std::optional<TuningKind> parse_tuning_kind(std::string_view text);

inline constexpr std::array<TuningKind, 5> kAllTuningKinds = {
    TuningKind::TopsPlain, TuningKind::TopsInsulated, TuningKind::Noems, TuningKind::Lcos,
    TuningKind::Pcm};

/// Photodetector / AFE noise context.
struct NoiseParams {
  double responsivity_a_per_w = 1.0;
  double load_resistance_ohm = 50.0;
  double dark_current_a = 35e-9;
  double temperature_k = 300.0;
  double data_rate_sps = 10e9;
  double optical_bandwidth_hz = 25e9;
  /// Unset means DR/sqrt(2), tracking the data rate.
  std::optional<double> electrical_bandwidth_hz;
  double wavelength_m = 1550e-9;
  double rin_db_per_hz = -140.0;
  /// Unset means the zero-signal noise floor of the AFE model.
  std::optional<double> input_referred_noise_a;

  double electrical_bandwidth() const {
    return electrical_bandwidth_hz.value_or(data_rate_sps / std::sqrt(2.0));
  }
  double rin_linear() const { return std::pow(10.0, rin_db_per_hz / 10.0); }
};

/// MZM-mesh link parameters.
struct MzmTechParams {
  double wpe = 0.1;
  double il_smf_db = 0.0;
  double il_ec_db = 1.6;
  double il_wg_db_per_mm = 0.3;
  double el_splitter_db = 0.01;
  /// PN phase-shifter loss density of the input modulators.
  double il_ps_db_per_mm = 1.0;
  double l_mzi_mm = 0.5;
  /// Directional-coupler loss per mesh depth step.
  double il_dc_db = 0.1;
  /// Loss of one weight (mesh) phase shifter; follows the tuning technology
  /// unless pinned in the configuration.
  double weight_ps_il_db = 0.01;
  /// Phase shifters / couplers counted per depth step (1 or 2).
  int mesh_stage_multiplicity = 1;
  double il_penalty_db = 4.8;
  double laser_rated_power_dbm = 10.0;
  double max_afe_input_dbm = 10.0;

  double input_modulator_loss_db() const { return il_ps_db_per_mm * l_mzi_mm; }
};

/// MRR weight-bank link parameters.
struct MrrTechParams {
  double wpe = 0.1;
  double il_smf_db = 0.0;
  double il_ec_db = 1.6;
  double il_wg_db_per_mm = 0.3;
  double el_splitter_db = 0.01;
  double il_mrm_db = 4.0;
  double obl_mrm_db = 0.01;
  double il_mrr_db = 0.01;
  double obl_mrr_db = 0.01;
  /// Center-to-center ring pitch.
  double d_mrr_um = 20.0;
  double il_penalty_db = 4.8;
  double laser_rated_power_dbm = 10.0;
  double max_afe_input_dbm = 10.0;
  /// WDM channel-count limit; applied only when both are set.
  std::optional<double> fsr_nm;
  std::optional<double> channel_spacing_nm;
};

/// One weight-tuning technology as seen by the energy and loss models.
struct TuningTechnology {
  TuningKind kind = TuningKind::TopsInsulated;
  /// Per pi shift (MZM) or per FSR (MRR) for thermal shifters; per element
  /// hold power otherwise.
  double static_power_w = 0.0;
  double dynamic_energy_per_update_j = 0.0;
  double insertion_loss_db = 0.0;
  /// Matrix evaluations per weight update.
  double weight_reuse = 1.0;

  bool is_thermal() const {
    return kind == TuningKind::TopsPlain || kind == TuningKind::TopsInsulated;
  }
};

/// Raw numbers behind every tuning option; `resolve` picks the record for an
/// architecture and weight resolution.
struct TuningCatalog {
  double tops_p_pi_w = 20e-3;
  double tops_insulated_p_pi_w = 4e-3;
  double tops_p_fsr_w = 40e-3;
  double tops_insulated_p_fsr_w = 2.8e-3;
  double tops_il_db = 0.01;
  double noems_energy_j = 1e-15;
  double noems_il_db = 0.01;
  double lcos_power_w = 2e-9;
  double lcos_il_db = 0.35;
  double pcm_il_db = 0.32;

  TuningTechnology resolve(TuningKind kind, Architecture arch, int bits, double weight_reuse) const;
  double insertion_loss_db(TuningKind kind) const;
};

/// Average PCM programming energy for uniformly distributed n-bit weights,
/// n in 1..4.
double pcm_average_energy(int bits);

/// Driver, AFE and interface energy figures.
struct DriverAfeCatalog {
  std::array<double, 4> mzm_driver_j = {2e-12, 4e-12, 6e-12, 8e-12};
  std::array<double, 4> mrm_driver_j = {0.3e-12, 0.6e-12, 0.9e-12, 1.2e-12};
  double binary_afe_j = 0.4e-12;
  double linear_tia_j = 0.6e-12;
  /// ADC energy for 2, 3 and 4 bits.
  std::array<double, 3> adc_j = {1.7e-12, 3.1e-12, 5.7e-12};
  double mem_interface_w = 5.77e-3;
  double mrm_control_w = 0.2e-3;

  /// Energy per symbol of one input driver; bits in 1..4.
  double driver_energy(Architecture arch, int bits) const;
  /// Energy per sample of one output AFE; bits in 1..4.
  double afe_energy(int bits) const;
};

struct SoaParams {
  double gain_db = 17.0;
  double n_sp = 2.0;
  double electrical_power_w = 42e-3;
};

/// Where a gain block sits along the link. ASE generated there is attenuated
/// by every stage downstream of it.
enum class SoaPlacement {
  WeightInput,  ///< in front of the weight mesh / weight banks
  Output,       ///< right before the photodetector
};

std::string_view to_string(SoaPlacement placement);
std::optional<SoaPlacement> parse_soa_placement(std::string_view text);

/// Everything needed to evaluate one accelerator configuration.
struct SimConfig {
  Architecture arch = Architecture::Mzm;
  int n = 8;
  int bits = 1;
  NoiseParams noise;
  MzmTechParams mzm;
  MrrTechParams mrr;
  TuningCatalog tuning_catalog;
  TuningKind tuning = TuningKind::TopsInsulated;
  double weight_reuse = 4096.0;
  /// Pins the mesh phase-shifter loss instead of taking it from the tuning
  /// technology.
  std::optional<double> weight_ps_il_db;
  DriverAfeCatalog drivers;
  SoaParams soa;
  int soa_count = 0;
  SoaPlacement soa_placement = SoaPlacement::WeightInput;
  double rho_opt = 1.0;

  TuningTechnology tuning_technology() const;
  /// MZM parameters with the weight phase-shifter loss resolved.
  MzmTechParams mzm_effective() const;
};

}  // namespace sipmac
