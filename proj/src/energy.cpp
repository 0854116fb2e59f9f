#include "sipmac/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sipmac/errors.hpp"
#include "sipmac/noise.hpp"
#include "sipmac/units.hpp"

namespace sipmac {
namespace {

double ceil_log2(int n) {
  int stages = 0;
  while ((1 << stages) < n) ++stages;
  return stages;
}

double guard(double watts) {
  if (!(watts <= kLaserPowerLimitW)) {
    throw InfeasibleError("required laser power " + std::to_string(watts) + " W exceeds " +
                          std::to_string(kLaserPowerLimitW) + " W");
  }
  return watts;
}

double ops_per_second(int n, double data_rate) {
  const double nn = static_cast<double>(n);
  return 2.0 * nn * nn * data_rate;
}

void sum_parts(EnergyBreakdown& e) {
  e.total = e.laser + e.input_drivers + e.mem_interface + e.matrix_tuning + e.soa + e.output_afe;
}

}  // namespace

double mzm_laser_electrical_power(int n, double p_pd_w, const MzmTechParams& tech) {
  if (n < 1) throw std::invalid_argument("laser power: N must be >= 1");
  const double nn = static_cast<double>(n);
  const double steps = tech.mesh_stage_multiplicity * nn;
  const double numerator = db_to_linear(tech.il_wg_db_per_mm * nn * tech.l_mzi_mm) * nn * p_pd_w;
  const double denominator =
      tech.wpe * loss_to_transmission(tech.il_smf_db) * loss_to_transmission(tech.il_ec_db) *
      std::pow(loss_to_transmission(tech.el_splitter_db), ceil_log2(n)) *
      loss_to_transmission(tech.input_modulator_loss_db()) *
      std::pow(loss_to_transmission(tech.weight_ps_il_db), steps) *
      std::pow(loss_to_transmission(tech.il_dc_db), steps) *
      loss_to_transmission(tech.il_penalty_db);
  return guard(numerator / denominator);
}

double mrr_laser_electrical_power(int n, double p_pd_w, const MrrTechParams& tech) {
  if (n < 1) throw std::invalid_argument("laser power: N must be >= 1");
  const double nn = static_cast<double>(n);
  const double numerator =
      db_to_linear(tech.il_wg_db_per_mm * nn * tech.d_mrr_um * 1e-3) * nn * p_pd_w;
  const double denominator =
      tech.wpe * loss_to_transmission(tech.il_smf_db) * loss_to_transmission(tech.il_ec_db) *
      loss_to_transmission(tech.il_mrm_db) *
      std::pow(loss_to_transmission(tech.obl_mrm_db), nn - 1.0) *
      std::pow(loss_to_transmission(tech.el_splitter_db), ceil_log2(n)) *
      loss_to_transmission(tech.il_mrr_db) *
      std::pow(loss_to_transmission(tech.obl_mrr_db), nn - 1.0) *
      loss_to_transmission(tech.il_penalty_db);
  return guard(numerator / denominator);
}

TuningPowerResult avg_tuning_power(const TuningTechnology& tech, Architecture arch, int n,
                                   double data_rate_sps) {
  const double nn = static_cast<double>(n);
  TuningPowerResult r;
  if (tech.is_thermal()) {
    // Uniformly distributed weights need half a pi (or half an FSR) on
    // average.
    r.total_static_w = arch == Architecture::Mzm ? nn * (nn - 1.0) / 4.0 * tech.static_power_w
                                                 : nn * nn * tech.static_power_w / 2.0;
  } else {
    r.total_static_w = nn * nn * tech.static_power_w;
    r.per_update_dynamic_j = nn * nn * tech.dynamic_energy_per_update_j;
  }
  r.effective_power_w =
      r.total_static_w + r.per_update_dynamic_j * data_rate_sps / tech.weight_reuse;
  return r;
}

double soa_chain_gain(const SimConfig& cfg) {
  if (cfg.soa_count <= 0) return 1.0;
  return db_to_linear(cfg.soa.gain_db * cfg.soa_count);
}

EnergyBreakdown energy_per_op(const SimConfig& cfg, int n) {
  if (n < 1) throw std::invalid_argument("energy: N must be >= 1");
  const double dr = cfg.noise.data_rate_sps;
  const double nn = static_cast<double>(n);
  const double ops = ops_per_second(n, dr);
  const double p_pd = afe_sensitivity(cfg.bits, cfg.noise);
  const double rho_soa = soa_chain_gain(cfg);

  EnergyBreakdown e;
  e.ops_per_second = ops;
  double driver_w = nn * dr * cfg.drivers.driver_energy(cfg.arch, cfg.bits);
  if (cfg.arch == Architecture::Mzm) {
    const double gamma = cfg.rho_opt * cfg.rho_opt * rho_soa;
    e.laser = mzm_laser_electrical_power(n, p_pd, cfg.mzm_effective()) / (gamma * ops);
  } else {
    e.laser = mrr_laser_electrical_power(n, p_pd, cfg.mrr) / (rho_soa * ops);
    driver_w += nn * cfg.drivers.mrm_control_w;
  }
  e.input_drivers = driver_w / ops;
  e.mem_interface = 2.0 * cfg.drivers.mem_interface_w / ops;
  e.matrix_tuning = avg_tuning_power(cfg.tuning_technology(), cfg.arch, n, dr).effective_power_w / ops;
  e.soa = cfg.soa_count * cfg.soa.electrical_power_w / ops;
  e.output_afe = nn * dr * cfg.drivers.afe_energy(cfg.bits) / ops;
  sum_parts(e);
  return e;
}

EnergyBreakdown mzm_energy_per_op(const SimConfig& cfg) {
  SimConfig c = cfg;
  c.arch = Architecture::Mzm;
  return energy_per_op(c, c.n);
}

EnergyBreakdown mrr_energy_per_op(const SimConfig& cfg) {
  SimConfig c = cfg;
  c.arch = Architecture::Mrr;
  return energy_per_op(c, c.n);
}

double cmos_mac_baseline() { return (0.046e-12 + 0.0117e-12) / 2.0; }

double throughput_ratio(int n, double alpha, double f_opt_hz, double f_cmos_hz) {
  if (n < 1 || !(alpha > 0.0) || !(f_opt_hz > 0.0) || !(f_cmos_hz > 0.0)) {
    throw std::invalid_argument("throughput_ratio: all arguments must be positive");
  }
  return 2.0 * n * alpha * f_opt_hz / f_cmos_hz;
}

}  // namespace sipmac
