#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sipmac/catalog.hpp"

namespace sipmac {

struct LinkStage {
  std::string label;
  double loss_db = 0.0;
  /// Power after this stage.
  double cumulative_dbm = 0.0;
};

/// Optical power from the laser to one photodetector, stage by stage.
struct LinkBudgetReport {
  Architecture arch = Architecture::Mzm;
  int n = 1;
  double laser_dbm = 0.0;
  std::vector<LinkStage> stages;
  double total_loss_db = 0.0;
  double output_dbm = 0.0;
  /// First stage that belongs to the weight section (mesh or weight bank).
  std::size_t weight_section_begin = 0;

  /// Summed loss of stages [first, end).
  double loss_from(std::size_t first) const;
};

/// 10 log10(N) + EL * ceil(log2 N).
double splitter_loss(int n, double el_splitter_db);

LinkBudgetReport mzm_link_budget(int n, const MzmTechParams& tech, double laser_dbm);
LinkBudgetReport mrr_link_budget(int n, const MrrTechParams& tech, double laser_dbm);

/// Link for cfg.arch at size n with the configured tuning technology.
LinkBudgetReport link_budget(const SimConfig& cfg, int n, double laser_dbm);

/// Rated laser power of the configured architecture.
double rated_laser_dbm(const SimConfig& cfg);
double max_afe_input_dbm(const SimConfig& cfg);

}  // namespace sipmac
