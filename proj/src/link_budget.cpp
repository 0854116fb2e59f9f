#include "sipmac/link_budget.hpp"

#include <cmath>
#include <stdexcept>

namespace sipmac {
namespace {

int ceil_log2(int n) {
  int stages = 0;
  while ((1 << stages) < n) ++stages;
  return stages;
}

void check_size(int n) {
  if (n < 1) throw std::invalid_argument("link budget: N must be >= 1");
}

void finish(LinkBudgetReport& report) {
  double sum = 0.0;
  for (auto& stage : report.stages) {
    sum += stage.loss_db;
    stage.cumulative_dbm = report.laser_dbm - sum;
  }
  report.total_loss_db = sum;
  report.output_dbm = report.laser_dbm - sum;
}

}  // namespace

double LinkBudgetReport::loss_from(std::size_t first) const {
  double sum = 0.0;
  for (std::size_t k = first; k < stages.size(); ++k) sum += stages[k].loss_db;
  return sum;
}

double splitter_loss(int n, double el_splitter_db) {
  check_size(n);
  return 10.0 * std::log10(static_cast<double>(n)) + el_splitter_db * ceil_log2(n);
}

LinkBudgetReport mzm_link_budget(int n, const MzmTechParams& tech, double laser_dbm) {
  check_size(n);
  const double nn = static_cast<double>(n);
  const double steps = tech.mesh_stage_multiplicity * nn;
  LinkBudgetReport r;
  r.arch = Architecture::Mzm;
  r.n = n;
  r.laser_dbm = laser_dbm;
  r.stages = {
      {"smf", tech.il_smf_db, 0.0},
      {"edge_coupler", tech.il_ec_db, 0.0},
      {"splitter", splitter_loss(n, tech.el_splitter_db), 0.0},
      {"input_mzm", tech.input_modulator_loss_db(), 0.0},
      {"waveguide", tech.il_wg_db_per_mm * nn * tech.l_mzi_mm, 0.0},
      {"mesh_phase_shifters", steps * tech.weight_ps_il_db, 0.0},
      {"directional_couplers", steps * tech.il_dc_db, 0.0},
      {"penalty", tech.il_penalty_db, 0.0},
  };
  r.weight_section_begin = 4;
  finish(r);
  return r;
}

LinkBudgetReport mrr_link_budget(int n, const MrrTechParams& tech, double laser_dbm) {
  check_size(n);
  const double nn = static_cast<double>(n);
  LinkBudgetReport r;
  r.arch = Architecture::Mrr;
  r.n = n;
  r.laser_dbm = laser_dbm;
  r.stages = {
      {"smf", tech.il_smf_db, 0.0},
      {"edge_coupler", tech.il_ec_db, 0.0},
      {"input_mrm", tech.il_mrm_db, 0.0},
      {"mrm_out_of_band", (nn - 1.0) * tech.obl_mrm_db, 0.0},
      {"splitter", splitter_loss(n, tech.el_splitter_db), 0.0},
      {"weight_mrr", tech.il_mrr_db, 0.0},
      {"mrr_out_of_band", (nn - 1.0) * tech.obl_mrr_db, 0.0},
      {"waveguide", tech.il_wg_db_per_mm * nn * tech.d_mrr_um * 1e-3, 0.0},
      {"penalty", tech.il_penalty_db, 0.0},
  };
  r.weight_section_begin = 5;
  finish(r);
  return r;
}

LinkBudgetReport link_budget(const SimConfig& cfg, int n, double laser_dbm) {
  if (cfg.arch == Architecture::Mzm) return mzm_link_budget(n, cfg.mzm_effective(), laser_dbm);
  return mrr_link_budget(n, cfg.mrr, laser_dbm);
}

double rated_laser_dbm(const SimConfig& cfg) {
  return cfg.arch == Architecture::Mzm ? cfg.mzm.laser_rated_power_dbm
                                       : cfg.mrr.laser_rated_power_dbm;
}

double max_afe_input_dbm(const SimConfig& cfg) {
  return cfg.arch == Architecture::Mzm ? cfg.mzm.max_afe_input_dbm : cfg.mrr.max_afe_input_dbm;
}

}  // namespace sipmac
