// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sipmac/catalog.hpp"
#include "sipmac/energy.hpp"
#include "sipmac/errors.hpp"
#include "sipmac/figures.hpp"
#include "sipmac/link_budget.hpp"
#include "sipmac/mesh.hpp"
#include "sipmac/noise.hpp"
#include "sipmac/scaling.hpp"
#include "sipmac/units.hpp"

using namespace sipmac;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

SimConfig base12(Architecture arch) {
  SimConfig c;
  c.arch = arch;
  c.noise.responsivity_a_per_w = 1.2;
  c.noise.data_rate_sps = 10e9;
  return c;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome c1_mzm_limit() {
  const auto r = scaling_limit(base12(Architecture::Mzm), 1.0);
  Outcome o;
  o.pass = r.feasible && r.n_ltd >= 32 && r.n_ltd <= 38;
  o.detail = "N_ltd = " + std::to_string(r.n_ltd) + ", want [32, 38]";
  return o;
}

Outcome c2_mrr_limit() {
  const auto r = scaling_limit(base12(Architecture::Mrr), 1.0);
  Outcome o;
  o.pass = r.feasible && r.n_ltd >= 80 && r.n_ltd <= 90;
  o.detail = "N_ltd = " + std::to_string(r.n_ltd) + ", want [80, 90]";
  return o;
}

Outcome c3_mrr_optimum() {
  SimConfig c = base12(Architecture::Mrr);
  c.tuning = TuningKind::TopsInsulated;
  c.bits = 1;
  const auto opt = optimum_network(c);
  const double fj = opt.energy.total * 1e15;
  const double ratio = opt.energy.total / cmos_mac_baseline();
  Outcome o;
  o.pass = fj >= 60.0 && fj <= 90.0 && ratio >= 2.1 && ratio <= 3.1;
  o.detail = "N_opt = " + std::to_string(opt.n_opt) + ", E = " + fmt("%.2f", fj) +
             " fJ/Op (want [60, 90]), ratio " + fmt("%.3f", ratio) + " (want [2.1, 3.1])";
  return o;
}

Outcome c4_mzm_ratios() {
  Outcome o;
  o.pass = true;
  const std::pair<int, double> cases[] = {{1, 3.5}, {4, 17.5}};
  for (const auto& [bits, target] : cases) {
    SimConfig c = base12(Architecture::Mzm);
    c.bits = bits;
    const auto lim = scaling_limit(c, bits);
    if (!lim.feasible) {
      o.pass = false;
      o.detail += std::to_string(bits) + "b infeasible; ";
      continue;
    }
    const double ratio = energy_per_op(c, lim.n_ltd).total / cmos_mac_baseline();
    const bool ok = std::abs(ratio - target) <= 0.25 * target;
    o.pass = o.pass && ok;
    o.detail += std::to_string(bits) + "b at N=" + std::to_string(lim.n_ltd) + ": " +
                fmt("%.3f", ratio) + "x (want " + fmt("%.1f", target) + "x +-25%); ";
  }
  return o;
}

Outcome c5_pcm() {
  const double quoted[] = {186e-12, 231e-12, 165e-12, 121e-12};
  Outcome o;
  o.pass = true;
  for (int n = 1; n <= 4; ++n) {
    const double e = pcm_average_energy(n);
    const double ref = oracle::pcm_energy(n);
    const bool ok = std::abs(e - quoted[n - 1]) <= 1e-12 && std::abs(e - ref) <= 1e-9 * ref;
    o.pass = o.pass && ok;
    o.detail += fmt("%.2f", e * 1e12) + " ";
  }
  o.detail += "pJ (want 186 231 165 121 +-1, oracle agrees)";
  return o;
}

Outcome c6_soa() {
  Outcome o;
  const SimConfig mzm = base12(Architecture::Mzm);
  const SimConfig mrr = base12(Architecture::Mrr);
  const auto pz = soa_plan(mzm, 55, 4.0);
  const auto pr = soa_plan(mrr, 94, 4.0);
  const int mzm_one = soa_scaling_limit(mzm, 4.0, 1);
  const bool mzm_ok = pz.feasible && pz.soa_count == 1 && pz.achieved_bits >= 4.0 &&
                      mzm_one >= 50 && mzm_one <= 60;
  const bool mrr_ok = pr.feasible && pr.soa_count == 1 && pr.achieved_bits >= 4.0;

  int max_count = 0;
  for (const char* id : {"fig16", "fig17"}) {
    const Table t = emit_figure_data(id, mzm);
    std::size_t col = 0;
    while (col < t.columns.size() && t.columns[col] != "soa_count") ++col;
    for (const auto& row : t.rows) max_count = std::max(max_count, std::stoi(row.at(col)));
  }
  o.pass = mzm_ok && mrr_ok && max_count <= 2;
  o.detail = "MZM N=55: " + std::to_string(pz.soa_count) + " SOA, " + fmt("%.2f", pz.achieved_bits) +
             " b, 1-SOA limit " + std::to_string(mzm_one) + " (want [50, 60]); MRR N=94: " +
             std::to_string(pr.soa_count) + " SOA, " + fmt("%.2f", pr.achieved_bits) +
             " b; max SOA count on grids " + std::to_string(max_count);
  return o;
}

Outcome c7_fsr() {
  const int n = fsr_channel_limit(50.0, 0.8);
  return {n == 62, "fsr_channel_limit(50 nm, 0.8 nm) = " + std::to_string(n)};
}

Outcome c8_mesh() {
  std::mt19937_64 rng(20240607);
  std::normal_distribution<double> g(0.0, 1.0);
  const MeshLossModel lossy{0.01, 0.1, std::nullopt};
  double worst_recon = 0.0;
  double worst_power = 0.0;
  double worst_loss = 0.0;
  for (int n : {2, 4, 8, 16, 32}) {
    const double budget_db = n * lossy.per_column_db();
    for (int trial = 0; trial < 100; ++trial) {
      const CMatrix u = haar_unitary(n, rng);
      const auto p = clements_decompose(u);
      worst_recon = std::max(worst_recon, (clements_reconstruct(p) - u).cwiseAbs().maxCoeff());
      CVector in(n);
      for (int k = 0; k < n; ++k) in(k) = Complex(g(rng), g(rng));
      const double pin = in.squaredNorm();
      const double pout = propagate(p, MeshLossModel{}, in).sum();
      worst_power = std::max(worst_power, std::abs(pout - pin) / pin);
      const double lossy_out = propagate(p, lossy, in).sum();
      worst_loss = std::max(worst_loss, std::abs(10.0 * std::log10(pout / lossy_out) - budget_db));
    }
  }
  Outcome o;
  o.pass = worst_recon < 1e-9 && worst_power < 1e-12 && worst_loss < 0.1;
  std::ostringstream s;
  s << "max recon err " << worst_recon << ", max power err " << worst_power
    << ", max loss mismatch " << worst_loss << " dB";
  o.detail = s.str();
  return o;
}

Outcome c9_noise() {
  const NoiseParams p = base12(Architecture::Mzm).noise;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dbm(-50.0, 10.0);
  double worst_rel = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double w = dbm_to_watts(dbm(rng));
    const double a = soa_snr(w, SoaChainSpec{0, 1.0, 0.0}, p);
    const double b = bit_resolution(w, p).snr_db;
    worst_rel = std::max(worst_rel, std::abs(a - b) / std::abs(b));
  }
  double worst_db = 0.0;
  bool roundtrip = true;
  for (int step = 0; step <= 100; ++step) {
    const double n = 1.0 + 5.0 * step / 100.0;
    const double w = afe_sensitivity(n, p);
    // Forward evaluation must clear the target, and the power 0.01 dB lower
    // must not.
    roundtrip = roundtrip && bit_resolution(w, p).bits >= n &&
                bit_resolution(w * db_to_linear(-0.01), p).bits < n;
    const double scan = oracle::sensitivity_dbm(n, oracle::Receiver{1.2});
    worst_db = std::max(worst_db, std::abs(watts_to_dbm(w) - scan));
  }
  Outcome o;
  o.pass = worst_rel <= 1e-10 && roundtrip && worst_db <= 0.01;
  std::ostringstream s;
  s << "max rel SNR diff " << worst_rel << ", roundtrip " << (roundtrip ? "ok" : "broken")
    << ", max sensitivity diff " << worst_db << " dB";
  o.detail = s.str();
  return o;
}

Outcome c10_trends() {
  std::vector<std::string> failures;
  for (auto arch : {Architecture::Mzm, Architecture::Mrr}) {
    const SimConfig c = base12(arch);
    const std::string a(to_string(arch));
    for (int n = 1; n < 512; ++n) {
      if (!(link_budget(c, n + 1, 10.0).output_dbm < link_budget(c, n, 10.0).output_dbm)) {
        failures.push_back(a + " output not decreasing at N=" + std::to_string(n));
        break;
      }
    }
    for (int bits = 1; bits <= 4; ++bits) {
      int prev = kMaxNetworkSize + 1;
      for (int g = 1; g <= 10; ++g) {
        const int n = scaling_limit(arch, bits, g * 1e9, c).n_ltd;
        if (n > prev) failures.push_back(a + " N_ltd rises with DR");
        prev = n;
      }
    }
    const int span = arch == Architecture::Mzm ? 128 : 1024;
    for (auto tuning : {TuningKind::TopsPlain, TuningKind::TopsInsulated}) {
      SimConfig t = c;
      t.tuning = tuning;
      int minima = 0;
      double prev = energy_per_op(t, 1).total;
      double cur = energy_per_op(t, 2).total;
      if (cur > prev) ++minima;
      for (int n = 3; n <= span; ++n) {
        const double next = energy_per_op(t, n).total;
        if (cur <= prev && cur < next) ++minima;
        prev = cur;
        cur = next;
      }
      if (minima != 1) {
        failures.push_back(a + " " + std::string(to_string(tuning)) + " has " +
                           std::to_string(minima) + " energy minima");
      }
    }
    for (int bits = 1; bits <= 4; ++bits) {
      double best = 1e300;
      TuningKind best_kind = TuningKind::TopsPlain;
      double noems = 0.0;
      double tops_min = 1e300;
      for (auto kind : kAllTuningKinds) {
        SimConfig t = c;
        t.tuning = kind;
        t.bits = bits;
        t.weight_reuse = 4096.0;
        const auto lim = scaling_limit(t, bits);
        if (!lim.feasible) continue;
        const double e = energy_per_op(t, lim.n_ltd).total;
        if (e < best) {
          best = e;
          best_kind = kind;
        }
        if (kind == TuningKind::Noems) noems = e;
        if (kind == TuningKind::TopsPlain || kind == TuningKind::TopsInsulated) {
          tops_min = std::min(tops_min, e);
        }
      }
      const bool zero_static = best_kind == TuningKind::Noems || best_kind == TuningKind::Lcos ||
                               best_kind == TuningKind::Pcm;
      if (!zero_static || !(noems < tops_min)) {
        failures.push_back(a + " " + std::to_string(bits) + "b lowest is " +
                           std::string(to_string(best_kind)));
      }
    }
  }
  Outcome o;
  o.pass = failures.empty();
  o.detail = failures.empty() ? "output, DR, U-shape and tuning ranking all hold" : failures.front();
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "MZM scaling limit", 1.0, c1_mzm_limit},
      {2, "MRR scaling limit", 1.0, c2_mrr_limit},
      {3, "MRR optimum energy", 0.0, c3_mrr_optimum},
      {4, "MZM vs CMOS ratios", 0.0, c4_mzm_ratios},
      {5, "PCM energies", 0.0, c5_pcm},
      {6, "SOA anchor points", 0.0, c6_soa},
      {7, "FSR limit", 0.0, c7_fsr},
      {8, "Mesh oracle equivalence", 30.0, c8_mesh},
      {9, "Noise-model consistency", 0.0, c9_noise},
      {10, "Trend properties", 0.0, c10_trends},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && s >= c.budget_s) {
      o.pass = false;
      o.detail += "; runtime " + fmt("%.3f", s) + " s over budget " + fmt("%.0f", c.budget_s) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("%s [%d] %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), s);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
