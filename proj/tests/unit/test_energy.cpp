#include <doctest.h>

#include <cmath>

#include "sipmac/catalog.hpp"
#include "sipmac/energy.hpp"
#include "sipmac/errors.hpp"
#include "sipmac/link_budget.hpp"
#include "sipmac/noise.hpp"
#include "sipmac/units.hpp"

using namespace sipmac;

namespace {

SimConfig base12() {
  SimConfig c;
  c.noise.responsivity_a_per_w = 1.2;
  return c;
}

template <typename Fn>
int count_local_minima(int lo, int hi, Fn&& f) {
  int minima = 0;
  double prev = f(lo);
  double cur = f(lo + 1);
  if (cur > prev) ++minima;
  for (int n = lo + 2; n <= hi; ++n) {
    const double next = f(n);
    if (cur <= prev && cur < next) ++minima;
    prev = cur;
    cur = next;
  }
  return minima;
}

}  // namespace

TEST_CASE("laser power identities") {
  MzmTechParams m;
  m.il_smf_db = m.il_ec_db = m.il_wg_db_per_mm = m.el_splitter_db = 0.0;
  m.il_ps_db_per_mm = m.il_dc_db = m.weight_ps_il_db = m.il_penalty_db = 0.0;
  m.wpe = 1.0;
  CHECK(mzm_laser_electrical_power(1, 1e-5, m) == doctest::Approx(1e-5));
  m.wpe = 0.1;
  CHECK(mzm_laser_electrical_power(1, 1e-5, m) == doctest::Approx(1e-4));

  MrrTechParams r;
  r.il_smf_db = r.il_ec_db = r.il_wg_db_per_mm = r.el_splitter_db = 0.0;
  r.il_mrm_db = r.obl_mrm_db = r.il_mrr_db = r.obl_mrr_db = r.il_penalty_db = 0.0;
  r.wpe = 1.0;
  CHECK(mrr_laser_electrical_power(1, 1e-5, r) == doctest::Approx(1e-5));
}

TEST_CASE("laser power agrees with the dB link budget") {
  const SimConfig c;
  const double p = 1e-5;
  for (int n : {1, 2, 5, 8, 17, 36, 85, 128}) {
    CAPTURE(n);
    const auto mz = mzm_link_budget(n, c.mzm_effective(), 0.0);
    CHECK(mzm_laser_electrical_power(n, p, c.mzm_effective()) * c.mzm.wpe ==
          doctest::Approx(p * db_to_linear(mz.total_loss_db)).epsilon(1e-10));
    const auto mr = mrr_link_budget(n, c.mrr, 0.0);
    CHECK(mrr_laser_electrical_power(n, p, c.mrr) * c.mrr.wpe ==
          doctest::Approx(p * db_to_linear(mr.total_loss_db)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(mzm_laser_electrical_power(4000, 1e-3, c.mzm_effective()), InfeasibleError);
}

TEST_CASE("tuning power") {
  const TuningCatalog cat;
  const auto plain = cat.resolve(TuningKind::TopsPlain, Architecture::Mzm, 1, 4096);
  CHECK(avg_tuning_power(plain, Architecture::Mzm, 8, 10e9).total_static_w ==
        doctest::Approx(8.0 * 7.0 / 4.0 * 20e-3));
  CHECK(avg_tuning_power(plain, Architecture::Mzm, 8, 10e9).effective_power_w ==
        doctest::Approx(0.28));

  const auto ring = cat.resolve(TuningKind::TopsInsulated, Architecture::Mrr, 1, 4096);
  CHECK(avg_tuning_power(ring, Architecture::Mrr, 10, 10e9).total_static_w ==
        doctest::Approx(100 * 2.8e-3 / 2.0));

  const auto pcm = cat.resolve(TuningKind::Pcm, Architecture::Mzm, 2, 4096);
  const auto t = avg_tuning_power(pcm, Architecture::Mzm, 16, 10e9);
  CHECK(t.total_static_w == 0.0);
  CHECK(t.effective_power_w == doctest::Approx(256 * pcm_average_energy(2) * 10e9 / 4096));

  double last = 1e300;
  for (double reuse : {1.0, 1e3, 1e6, 1e9, 1e12}) {
    const auto noems = cat.resolve(TuningKind::Noems, Architecture::Mzm, 1, reuse);
    const double w = avg_tuning_power(noems, Architecture::Mzm, 32, 10e9).effective_power_w;
    CHECK(w < last);
    last = w;
  }
  CHECK(last < 1e-9);
}

TEST_CASE("single contributors") {
  SimConfig c = base12();
  c.n = 16;
  const double ops = 2.0 * 16 * 16 * 10e9;
  const auto e = energy_per_op(c, 16);
  CHECK(e.ops_per_second == ops);
  CHECK(e.mem_interface == doctest::Approx(11.54e-3 / ops));
  CHECK(e.output_afe == doctest::Approx(16 * 10e9 * 0.4e-12 / ops));
  CHECK(e.output_afe == doctest::Approx(0.4e-12 / (2.0 * 16)));
  CHECK(e.soa == 0.0);

  c.drivers = DriverAfeCatalog{};
  c.drivers.binary_afe_j = 0.0;
  c.drivers.mem_interface_w = 0.0;
  c.drivers.mzm_driver_j = {0.0, 0.0, 0.0, 0.0};
  c.tuning = TuningKind::Noems;
  c.tuning_catalog.noems_energy_j = 0.0;
  const auto only_laser = energy_per_op(c, 16);
  CHECK(only_laser.total == only_laser.laser);
}

TEST_CASE("total is the sum of the parts") {
  for (auto arch : {Architecture::Mzm, Architecture::Mrr}) {
    for (auto tuning : kAllTuningKinds) {
      for (int bits = 1; bits <= 4; ++bits) {
        SimConfig c = base12();
        c.arch = arch;
        c.tuning = tuning;
        c.bits = bits;
        c.soa_count = bits > 2 ? 1 : 0;
        const auto e = energy_per_op(c, 12);
        CHECK(e.total ==
              e.laser + e.input_drivers + e.mem_interface + e.matrix_tuning + e.soa + e.output_afe);
      }
    }
  }
}

TEST_CASE("scale-down factor and SOA gain reduce the laser term") {
  SimConfig c = base12();
  c.n = 16;
  const double ref = mzm_energy_per_op(c).laser;
  c.rho_opt = 2.0;
  CHECK(mzm_energy_per_op(c).laser == doctest::Approx(ref / 4.0).epsilon(1e-12));
  c.rho_opt = 1.0;
  c.soa_count = 1;
  CHECK(mzm_energy_per_op(c).laser == doctest::Approx(ref / db_to_linear(17.0)).epsilon(1e-12));
  CHECK(mzm_energy_per_op(c).soa == doctest::Approx(42e-3 / (2.0 * 256 * 10e9)));

  const double mrr_ref = mrr_energy_per_op(base12()).laser;
  SimConfig m = base12();
  m.soa_count = 2;
  CHECK(mrr_energy_per_op(m).laser == doctest::Approx(mrr_ref / db_to_linear(34.0)).epsilon(1e-12));
}

TEST_CASE("energy per op has one minimum for lossy thermal tuning") {
  for (auto tuning : {TuningKind::TopsPlain, TuningKind::TopsInsulated}) {
    SimConfig c = base12();
    c.tuning = tuning;
    c.arch = Architecture::Mzm;
    CHECK(count_local_minima(1, 128, [&](int n) { return energy_per_op(c, n).total; }) == 1);
    c.arch = Architecture::Mrr;
    CHECK(count_local_minima(1, 1024, [&](int n) { return energy_per_op(c, n).total; }) == 1);
  }
}

TEST_CASE("CMOS baseline and throughput") {
  CHECK(cmos_mac_baseline() == doctest::Approx(28.85e-15));
  CHECK(75e-15 / cmos_mac_baseline() == doctest::Approx(2.6).epsilon(0.01));
  CHECK(cmos_mac_baseline() / cmos_mac_baseline() == 1.0);
  CHECK(throughput_ratio(1, 1.0, 1e9, 1e9) == 2.0);
  CHECK(throughput_ratio(35, 1.0, 10e9, 1e9) == doctest::Approx(700.0));
  CHECK_THROWS_AS(throughput_ratio(0, 1.0, 1.0, 1.0), std::invalid_argument);
}
