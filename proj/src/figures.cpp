#include "sipmac/figures.hpp"

#include <cmath>
#include <stdexcept>

#include "sipmac/energy.hpp"
#include "sipmac/errors.hpp"
#include "sipmac/link_budget.hpp"
#include "sipmac/noise.hpp"
#include "sipmac/scaling.hpp"
#include "sipmac/units.hpp"

namespace sipmac {
namespace {

constexpr int kFigureSizes[] = {8, 16, 32, 64, 128};
constexpr TuningKind kThermal[] = {TuningKind::TopsPlain, TuningKind::TopsInsulated};

SimConfig figure_config(const SimConfig& cfg, Architecture arch) {
  SimConfig c = cfg;
  c.arch = arch;
  c.noise.responsivity_a_per_w = 1.2;
  return c;
}

std::vector<std::string> energy_cells(const EnergyBreakdown& e) {
  return {fmt_num(e.total * 1e12), fmt_fj(e.laser),         fmt_fj(e.input_drivers),
          fmt_fj(e.mem_interface), fmt_fj(e.matrix_tuning), fmt_fj(e.soa),
          fmt_fj(e.output_afe)};
}

const std::vector<std::string> kEnergyColumns = {
    "energy_pj_per_op", "laser_fj", "drivers_fj", "mem_fj", "tuning_fj", "soa_fj", "afe_fj"};

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Table link_stages(const SimConfig& base, Architecture arch) {
  const SimConfig cfg = figure_config(base, arch);
  Table t;
  t.columns = {"N", "stage_index", "stage", "power_dbm"};
  for (int n : kFigureSizes) {
    const auto r = link_budget(cfg, n, 0.0);
    t.add({fmt_int(n), "0", "laser", fmt_dbm(r.laser_dbm)});
    for (std::size_t k = 0; k < r.stages.size(); ++k) {
      t.add({fmt_int(n), fmt_int(static_cast<long long>(k + 1)), r.stages[k].label,
             fmt_dbm(r.stages[k].cumulative_dbm)});
    }
  }
  return t;
}

Table sensitivity_levels(const SimConfig& base, Architecture arch) {
  const SimConfig cfg = figure_config(base, arch);
  Table t;
  t.columns = {"N", "output_power_dbm"};
  std::vector<std::string> levels;
  for (int b = 1; b <= 6; ++b) {
    t.columns.push_back("sensitivity_" + std::to_string(b) + "b_dbm");
    try {
      levels.push_back(fmt_dbm(watts_to_dbm(afe_sensitivity(b, cfg.noise))));
    } catch (const UnreachableTarget&) {
      levels.push_back("");
    }
  }
  const double laser = rated_laser_dbm(cfg);
  for (int n = 1; n <= kFigureSizes[4]; ++n) {
    t.add(concat({fmt_int(n), fmt_dbm(link_budget(cfg, n, laser).output_dbm)}, levels));
  }
  return t;
}

Table energy_vs_n(const SimConfig& base, Architecture arch) {
  SimConfig cfg = figure_config(base, arch);
  cfg.bits = 1;
  Table t;
  t.columns = concat({"N", "tuning"}, kEnergyColumns);
  for (auto kind : kThermal) {
    cfg.tuning = kind;
    const auto lim = scaling_limit(cfg, 1);
    for (int n = 2; n <= lim.n_ltd; ++n) {
      cfg.n = n;
      t.add(concat({fmt_int(n), std::string(to_string(kind))}, energy_cells(energy_per_op(cfg, n))));
    }
  }
  return t;
}

Table energy_at_limit(const SimConfig& base, Architecture arch) {
  SimConfig cfg = figure_config(base, arch);
  Table t;
  t.columns = concat({"bits", "tuning", "n_ltd"}, kEnergyColumns);
  t.columns.push_back("ratio_to_cmos");
  for (auto kind : kThermal) {
    cfg.tuning = kind;
    for (int b = 1; b <= 4; ++b) {
      cfg.bits = b;
      const auto lim = scaling_limit(cfg, b);
      if (!lim.feasible) continue;
      cfg.n = lim.n_ltd;
      const auto e = energy_per_op(cfg, lim.n_ltd);
      auto row = concat({fmt_int(b), std::string(to_string(kind)), fmt_int(lim.n_ltd)}, energy_cells(e));
      row.push_back(fmt_num(e.total / cmos_mac_baseline()));
      t.add(std::move(row));
    }
  }
  return t;
}

Table data_rate_sweep(const SimConfig& base, Architecture arch) {
  SweepGrid grid;
  grid.base = figure_config(base, arch);
  grid.archs = {arch};
  grid.tunings = {std::begin(kThermal), std::end(kThermal)};
  grid.bits = {1, 2, 3, 4};
  for (int g = 1; g <= 10; ++g) grid.data_rates_sps.push_back(g * 1e9);
  const auto rows = sweep(grid);
  Table t;
  t.columns = {"data_rate_gsps", "bits", "tuning", "n_ltd", "energy_pj_per_op"};
  for (const auto& r : rows) {
    t.add({fmt_num(r.data_rate_sps / 1e9), fmt_int(r.bits), std::string(to_string(r.tuning)),
           fmt_int(r.n_ltd), r.energy ? fmt_num(r.energy->total * 1e12) : ""});
  }
  return t;
}

Table precision_tradeoff(const SimConfig& base) {
  SimConfig cfg = figure_config(base, Architecture::Mzm);
  cfg.bits = 1;
  const auto lim = scaling_limit(cfg, 1);
  const int n = lim.n_ltd;
  const double p_out = dbm_to_watts(link_budget(cfg, n, rated_laser_dbm(cfg)).output_dbm);
  Table t;
  t.columns = {"N", "rho_opt", "bits_lost", "laser_fj", "total_fj", "error_probability"};
  cfg.n = n;
  for (double rho = 1.0; rho <= n; rho *= 2.0) {
    cfg.rho_opt = rho;
    const auto e = energy_per_op(cfg, n);
    t.add({fmt_int(n), fmt_num(rho), fmt_num(std::log2(rho)), fmt_fj(e.laser), fmt_fj(e.total),
           fmt_num(binary_error_prob(p_out, rho, cfg.noise))});
  }
  return t;
}

Table tuning_breakdown(const SimConfig& base) {
  Table t;
  t.columns = concat({"arch", "tuning", "bits", "n_ltd"}, kEnergyColumns);
  for (auto arch : {Architecture::Mzm, Architecture::Mrr}) {
    SimConfig cfg = figure_config(base, arch);
    for (auto kind : kAllTuningKinds) {
      cfg.tuning = kind;
      for (int b = 1; b <= 4; ++b) {
        cfg.bits = b;
        const auto lim = scaling_limit(cfg, b);
        if (!lim.feasible) continue;
        cfg.n = lim.n_ltd;
        t.add(concat({std::string(to_string(arch)), std::string(to_string(kind)), fmt_int(b),
                      fmt_int(lim.n_ltd)},
                     energy_cells(energy_per_op(cfg, lim.n_ltd))));
      }
    }
  }
  return t;
}

Table soa_grid(const SimConfig& base, Architecture arch) {
  const SimConfig cfg = figure_config(base, arch);
  const int step = arch == Architecture::Mzm ? 4 : 8;
  const int last = arch == Architecture::Mzm ? 160 : 320;
  Table t;
  t.columns = {"N", "bits", "soa_count", "feasible", "achieved_bits", "afe_input_dbm"};
  for (int b = 1; b <= 6; ++b) {
    for (int n = step; n <= last; n += step) {
      const SoaPlan p = soa_plan(cfg, n, b);
      t.add({fmt_int(n), fmt_int(b), fmt_int(p.soa_count), p.feasible ? "1" : "0",
             fmt_num(p.achieved_bits), fmt_dbm(p.afe_input_dbm)});
    }
  }
  return t;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig2",  "fig3",  "fig5",  "fig6",  "fig7",
                                               "precision", "fig9", "fig10", "fig11", "fig12",
                                               "fig13", "fig14", "fig16", "fig17"};
  return ids;
}

Table emit_figure_data(std::string_view id, const SimConfig& cfg) {
  using A = Architecture;
  if (id == "fig2") return link_stages(cfg, A::Mzm);
  if (id == "fig3") return sensitivity_levels(cfg, A::Mzm);
  if (id == "fig5") return energy_vs_n(cfg, A::Mzm);
  if (id == "fig6") return energy_at_limit(cfg, A::Mzm);
  if (id == "fig7") return data_rate_sweep(cfg, A::Mzm);
  if (id == "precision") return precision_tradeoff(cfg);
  if (id == "fig9") return link_stages(cfg, A::Mrr);
  if (id == "fig10") return sensitivity_levels(cfg, A::Mrr);
  if (id == "fig11") return energy_vs_n(cfg, A::Mrr);
  if (id == "fig12") return energy_at_limit(cfg, A::Mrr);
  if (id == "fig13") return data_rate_sweep(cfg, A::Mrr);
  if (id == "fig14") return tuning_breakdown(cfg);
  if (id == "fig16") return soa_grid(cfg, A::Mzm);
  if (id == "fig17") return soa_grid(cfg, A::Mrr);
  throw std::invalid_argument("unknown figure id `" + std::string(id) + "`");
}

}  // namespace sipmac
