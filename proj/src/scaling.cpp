#include "sipmac/scaling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "sipmac/errors.hpp"
#include "sipmac/link_budget.hpp"
#include "sipmac/noise.hpp"
#include "sipmac/units.hpp"

namespace sipmac {

std::string_view to_string(LimitingFactor f) {
  switch (f) {
    case LimitingFactor::LaserRatedPower: return "laser_rated_power";
    case LimitingFactor::FsrChannels: return "fsr_channels";
    case LimitingFactor::AfeCeiling: return "afe_ceiling";
    case LimitingFactor::SearchBound: return "search_bound";
  }
  return "?";
}

namespace {

std::optional<double> try_energy(SimConfig cfg, int n, double n_target) {
  const double rounded = std::round(n_target);
  if (rounded != n_target || rounded < 1.0 || rounded > 4.0) return std::nullopt;
  cfg.bits = static_cast<int>(rounded);
  cfg.n = n;
  try {
    return energy_per_op(cfg, n).total;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

ScalingResult scaling_limit(const SimConfig& cfg, double n_target) {
  ScalingResult r;
  r.arch = cfg.arch;
  r.n_target = n_target;
  r.data_rate_sps = cfg.noise.data_rate_sps;

  double sens_w = 0.0;
  try {
    sens_w = afe_sensitivity(n_target, cfg.noise);
  } catch (const UnreachableTarget&) {
    r.limiting_factor = LimitingFactor::AfeCeiling;
    return r;
  }
  r.sensitivity_dbm = watts_to_dbm(sens_w);
  const double laser = rated_laser_dbm(cfg);
  auto output_at = [&](int n) { return link_budget(cfg, n, laser).output_dbm; };
  auto meets = [&](int n) { return output_at(n) >= r.sensitivity_dbm; };

  if (!meets(1)) {
    r.limiting_factor = LimitingFactor::LaserRatedPower;
    r.output_dbm = output_at(1);
    return r;
  }
  int n_ltd = kMaxNetworkSize;
  r.limiting_factor = LimitingFactor::SearchBound;
  if (!meets(kMaxNetworkSize)) {
    int lo = 1;
    int hi = kMaxNetworkSize;
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      (meets(mid) ? lo : hi) = mid;
    }
    n_ltd = lo;
    r.limiting_factor = LimitingFactor::LaserRatedPower;
  }
  if (cfg.arch == Architecture::Mrr && cfg.mrr.fsr_nm && cfg.mrr.channel_spacing_nm) {
    const int cap = fsr_channel_limit(*cfg.mrr.fsr_nm, *cfg.mrr.channel_spacing_nm);
    if (cap < n_ltd) {
      n_ltd = cap;
      r.limiting_factor = LimitingFactor::FsrChannels;
    }
  }
  if (n_ltd < 1) return r;
  r.feasible = true;
  r.n_ltd = n_ltd;
  r.output_dbm = output_at(n_ltd);
  r.energy_at_limit = try_energy(cfg, n_ltd, n_target);
  return r;
}

ScalingResult scaling_limit(Architecture arch, double n_target, double data_rate_sps,
                            const SimConfig& cfg) {
  SimConfig c = cfg;
  c.arch = arch;
  c.noise.data_rate_sps = data_rate_sps;
  return scaling_limit(c, n_target);
}

OptimumResult optimum_network(const SimConfig& cfg) {
  OptimumResult out;
  out.limit = scaling_limit(cfg, cfg.bits);
  if (!out.limit.feasible) {
    throw InfeasibleError("optimum_network: no network size reaches " + std::to_string(cfg.bits) +
                          " bits (" + std::string(to_string(out.limit.limiting_factor)) + ")");
  }
  SimConfig c = cfg;
  bool have = false;
  for (int n = 1; n <= out.limit.n_ltd; ++n) {
    c.n = n;
    const EnergyBreakdown e = energy_per_op(c, n);
    if (!have || e.total <= out.energy.total) {
      out.energy = e;
      out.n_opt = n;
      have = true;
    }
  }
  return out;
}

AmplifiedLink amplified_link(const SimConfig& cfg, int n, int soa_count) {
  const LinkBudgetReport report = link_budget(cfg, n, rated_laser_dbm(cfg));
  const double p = dbm_to_watts(report.output_dbm);
  const double g1 = db_to_linear(cfg.soa.gain_db);

  SoaChainSpec chain;
  chain.count = soa_count;
  chain.gain = soa_count > 0 ? db_to_linear(cfg.soa.gain_db * soa_count) : 1.0;
  if (soa_count > 0) {
    // ASE generated at the insertion point sees every later stage.
    const double downstream_db = cfg.soa_placement == SoaPlacement::WeightInput
                                     ? report.loss_from(report.weight_section_begin)
                                     : 0.0;
    chain.rho_ase_w_per_hz = rho_ase(soa_count, cfg.soa.n_sp, cfg.noise.wavelength_m, g1) *
                             loss_to_transmission(downstream_db);
  }
  AmplifiedLink out;
  out.snr_db = soa_snr(p, chain, cfg.noise);
  out.bits = snr_to_bits(out.snr_db);
  out.afe_input_dbm = report.output_dbm + (soa_count > 0 ? cfg.soa.gain_db * soa_count : 0.0);
  return out;
}

SoaPlan soa_plan(const SimConfig& cfg, int n, double n_target) {
  SoaPlan plan;
  plan.n = n;
  plan.n_target = n_target;
  const double ceiling = max_afe_input_dbm(cfg);
  for (int k = 0; k <= 2; ++k) {
    const AmplifiedLink link = amplified_link(cfg, n, k);
    plan.soa_count = k;
    plan.achieved_bits = link.bits;
    plan.afe_input_dbm = link.afe_input_dbm;
    if (link.bits >= n_target && link.afe_input_dbm <= ceiling) {
      plan.feasible = true;
      return plan;
    }
  }
  return plan;
}

int soa_scaling_limit(const SimConfig& cfg, double n_target, int soa_count) {
  const double ceiling = max_afe_input_dbm(cfg);
  int best = 0;
  for (int n = 1; n <= kMaxNetworkSize; ++n) {
    const AmplifiedLink link = amplified_link(cfg, n, soa_count);
    if (link.bits >= n_target && link.afe_input_dbm <= ceiling) best = n;
  }
  return best;
}

int fsr_channel_limit(double fsr_nm, double spacing_nm) {
  if (!(fsr_nm > 0.0) || !(spacing_nm > 0.0)) {
    throw std::invalid_argument("fsr_channel_limit: FSR and spacing must be positive");
  }
  const double ratio = fsr_nm / spacing_nm;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<int>(nearest) - 1;
  }
  return static_cast<int>(std::floor(ratio));
}

namespace {

struct GridPoint {
  Architecture arch;
  TuningKind tuning;
  int bits;
  double data_rate;
  double responsivity;
  std::optional<int> size;
};

SweepRow evaluate(const SimConfig& base, const GridPoint& p) {
  SimConfig cfg = base;
  cfg.arch = p.arch;
  cfg.tuning = p.tuning;
  cfg.bits = p.bits;
  cfg.noise.data_rate_sps = p.data_rate;
  cfg.noise.responsivity_a_per_w = p.responsivity;

  SweepRow row;
  row.arch = p.arch;
  row.tuning = p.tuning;
  row.bits = p.bits;
  row.data_rate_sps = p.data_rate;
  row.responsivity = p.responsivity;

  const ScalingResult lim = scaling_limit(cfg, p.bits);
  row.n_ltd = lim.n_ltd;
  row.limiting_factor = std::string(to_string(lim.limiting_factor));
  row.n = p.size.value_or(lim.n_ltd);
  if (row.n < 1) {
    row.note = "no feasible network size";
    return row;
  }
  cfg.n = row.n;
  const LinkBudgetReport report = link_budget(cfg, row.n, rated_laser_dbm(cfg));
  row.output_dbm = report.output_dbm;
  const ResolutionResult res = bit_resolution(dbm_to_watts(report.output_dbm), cfg.noise);
  row.achieved_bits = res.bits;
  row.snr_db = res.snr_db;
  row.feasible = res.bits >= p.bits;
  try {
    row.energy = energy_per_op(cfg, row.n);
  } catch (const std::exception& e) {
    row.note = e.what();
  }
  if (!row.feasible && row.note.empty()) row.note = "resolution target missed at rated laser power";
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepGrid& grid) {
  const SimConfig& base = grid.base;
  const auto archs = grid.archs.empty() ? std::vector<Architecture>{base.arch} : grid.archs;
  const auto tunings = grid.tunings.empty() ? std::vector<TuningKind>{base.tuning} : grid.tunings;
  const auto bits = grid.bits.empty() ? std::vector<int>{base.bits} : grid.bits;
  const auto rates =
      grid.data_rates_sps.empty() ? std::vector<double>{base.noise.data_rate_sps} : grid.data_rates_sps;
  const auto resp = grid.responsivities.empty()
                        ? std::vector<double>{base.noise.responsivity_a_per_w}
                        : grid.responsivities;
  std::vector<std::optional<int>> sizes;
  if (grid.sizes.empty()) {
    sizes.push_back(std::nullopt);
  } else {
    for (int n : grid.sizes) sizes.emplace_back(n);
  }

  std::vector<GridPoint> points;
  for (auto a : archs)
    for (auto t : tunings)
      for (int b : bits)
        for (double dr : rates)
          for (double r : resp)
            for (const auto& n : sizes) points.push_back({a, t, b, dr, r, n});

  std::vector<SweepRow> rows(points.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(grid.workers, static_cast<unsigned>(points.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      try {
        rows[k] = evaluate(base, points[k]);
      } catch (const std::exception& e) {
        const auto& p = points[k];
        rows[k].arch = p.arch;
        rows[k].tuning = p.tuning;
        rows[k].bits = p.bits;
        rows[k].data_rate_sps = p.data_rate;
        rows[k].responsivity = p.responsivity;
        rows[k].n = p.size.value_or(0);
        rows[k].note = e.what();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace sipmac
