#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sipmac/config.hpp"
#include "sipmac/link_budget.hpp"
#include "sipmac/mesh.hpp"

using namespace sipmac;

namespace {

// Two phase shifters and two couplers per depth step, 0.5 dB shifters.
SimConfig two_step_mzm() {
  return load_config("mzm.stage_multiplicity = 2\nmzm.weight_ps_il = 0.5 dB\nmzm.il_dc = 0.01 dB");
}

MzmTechParams lossless_mzm() {
  MzmTechParams t;
  t.il_smf_db = t.il_ec_db = t.il_wg_db_per_mm = t.el_splitter_db = 0.0;
  t.il_ps_db_per_mm = t.il_dc_db = t.weight_ps_il_db = t.il_penalty_db = 0.0;
  return t;
}

MrrTechParams lossless_mrr() {
  MrrTechParams t;
  t.il_smf_db = t.il_ec_db = t.il_wg_db_per_mm = t.el_splitter_db = 0.0;
  t.il_mrm_db = t.obl_mrm_db = t.il_mrr_db = t.obl_mrr_db = t.il_penalty_db = 0.0;
  return t;
}

double mzm_oracle(int n, const MzmTechParams& t) {
  return oracle::mzm_loss_db(n, t.il_smf_db, t.il_ec_db, t.el_splitter_db,
                             t.il_ps_db_per_mm * t.l_mzi_mm, t.il_wg_db_per_mm * t.l_mzi_mm,
                             t.weight_ps_il_db, t.il_dc_db, t.mesh_stage_multiplicity,
                             t.il_penalty_db);
}

double mrr_oracle(int n, const MrrTechParams& t) {
  return oracle::mrr_loss_db(n, t.il_smf_db, t.il_ec_db, t.il_mrm_db, t.obl_mrm_db,
                             t.el_splitter_db, t.il_mrr_db, t.obl_mrr_db, t.il_wg_db_per_mm,
                             t.d_mrr_um * 1e-3, t.il_penalty_db);
}

}  // namespace

TEST_CASE("splitter loss") {
  CHECK(splitter_loss(1, 0.01) == 0.0);
  CHECK(splitter_loss(8, 0.01) == doctest::Approx(9.0609).epsilon(1e-5));
  CHECK(splitter_loss(6, 0.01) == doctest::Approx(7.8115).epsilon(1e-5));
  CHECK(splitter_loss(6, 0.01) == doctest::Approx(10.0 * std::log10(6.0) + 0.03));
  CHECK_THROWS_AS(splitter_loss(0, 0.01), std::invalid_argument);
}

TEST_CASE("lossless single-port links") {
  CHECK(mzm_link_budget(1, lossless_mzm(), 0.0).output_dbm == 0.0);
  CHECK(mrr_link_budget(1, lossless_mrr(), 0.0).output_dbm == 0.0);
}

TEST_CASE("MZM link with two steps per column at N = 8") {
  const SimConfig c = two_step_mzm();
  const auto r = link_budget(c, 8, 0.0);
  CHECK(r.output_dbm == doctest::Approx(-25.3).epsilon(0.002));
  const double hand = 1.6 + (10.0 * std::log10(8.0) + 0.03) + 0.5 + 1.2 + 8.0 + 0.16 + 4.8;
  CHECK(-r.output_dbm == doctest::Approx(hand).epsilon(1e-12));
  CHECK(r.total_loss_db == doctest::Approx(mzm_oracle(8, c.mzm_effective())).epsilon(1e-12));
}

TEST_CASE("MZM default link stages") {
  const SimConfig c;
  const auto r = link_budget(c, 8, 0.0);
  REQUIRE(r.stages.size() == 8);
  CHECK(r.stages[0].label == "smf");
  CHECK(r.stages[2].label == "splitter");
  CHECK(r.stages[5].label == "mesh_phase_shifters");
  CHECK(r.stages[r.weight_section_begin].label == "waveguide");
  CHECK(r.stages[5].loss_db == doctest::Approx(8 * 0.01));
  CHECK(r.stages[6].loss_db == doctest::Approx(8 * 0.1));
  CHECK(r.total_loss_db == doctest::Approx(mzm_oracle(8, c.mzm_effective())).epsilon(1e-12));
}

TEST_CASE("MZM column-dependent loss doubles with N") {
  const MzmTechParams t = two_step_mzm().mzm_effective();
  for (int n : {4, 8, 16, 32}) {
    const auto a = mzm_link_budget(n, t, 0.0);
    const auto b = mzm_link_budget(2 * n, t, 0.0);
    const double col = t.il_wg_db_per_mm * t.l_mzi_mm +
                       t.mesh_stage_multiplicity * (t.weight_ps_il_db + t.il_dc_db);
    const double extra = 10.0 * std::log10(2.0) + t.el_splitter_db + col * n;
    CHECK(a.output_dbm - b.output_dbm == doctest::Approx(extra).epsilon(1e-12));
  }
}

TEST_CASE("MRR link") {
  const SimConfig c;
  const auto r = mrr_link_budget(8, c.mrr, 0.0);
  CHECK(r.output_dbm == doctest::Approx(-19.7).epsilon(0.002));
  const double hand = 1.6 + 4.0 + 0.07 + (10.0 * std::log10(8.0) + 0.03) + 0.01 + 0.07 + 0.048 + 4.8;
  CHECK(-r.output_dbm == doctest::Approx(hand).epsilon(1e-12));
  CHECK(r.stages[r.weight_section_begin].label == "weight_mrr");

  const auto big = mrr_link_budget(128, c.mrr, 0.0);
  const double extra = 10.0 * std::log10(16.0) + 4 * 0.01 + 240 * 0.01 + 0.72;
  CHECK(r.output_dbm - big.output_dbm == doctest::Approx(extra).epsilon(1e-12));
}

TEST_CASE("stage sums, cumulative values and oracle agreement") {
  const SimConfig c;
  for (int n = 1; n <= 256; ++n) {
    CAPTURE(n);
    for (const auto& r : {mzm_link_budget(n, c.mzm_effective(), 10.0), mrr_link_budget(n, c.mrr, 10.0)}) {
      double sum = 0.0;
      for (const auto& s : r.stages) {
        sum += s.loss_db;
        CHECK(s.cumulative_dbm == doctest::Approx(10.0 - sum).epsilon(1e-12));
      }
      CHECK(r.total_loss_db == sum);
      CHECK(r.output_dbm == r.laser_dbm - r.total_loss_db);
      CHECK(r.loss_from(0) == sum);
    }
    CHECK(mzm_link_budget(n, c.mzm_effective(), 0.0).total_loss_db ==
          doctest::Approx(mzm_oracle(n, c.mzm_effective())).epsilon(1e-12));
    CHECK(mrr_link_budget(n, c.mrr, 0.0).total_loss_db ==
          doctest::Approx(mrr_oracle(n, c.mrr)).epsilon(1e-12));
  }
}

TEST_CASE("output power strictly decreases with N") {
  const SimConfig c;
  for (int n = 1; n < 512; ++n) {
    CHECK(mzm_link_budget(n + 1, c.mzm_effective(), 10.0).output_dbm <
          mzm_link_budget(n, c.mzm_effective(), 10.0).output_dbm);
    CHECK(mrr_link_budget(n + 1, c.mrr, 10.0).output_dbm <
          mrr_link_budget(n, c.mrr, 10.0).output_dbm);
  }
}

TEST_CASE("mesh portion agrees with lossy propagation") {
  const SimConfig c;
  const MzmTechParams t = c.mzm_effective();
  std::mt19937_64 rng(31);
  for (int n : {8, 16, 32}) {
    CAPTURE(n);
    const auto r = mzm_link_budget(n, t, 0.0);
    const double mesh_db = r.stages[5].loss_db + r.stages[6].loss_db;
    const auto p = clements_decompose(haar_unitary(n, rng));
    const MeshLossModel loss{t.mesh_stage_multiplicity * t.weight_ps_il_db,
                             t.mesh_stage_multiplicity * t.il_dc_db, std::nullopt};
    CVector in = CVector::Constant(n, Complex(1.0, 0.0));
    in(0) = 0.0;
    const double lossless = propagate(p, MeshLossModel{}, in).sum();
    const double lossy = propagate(p, loss, in).sum();
    CHECK(std::abs(10.0 * std::log10(lossless / lossy) - mesh_db) < 0.1);
  }
}

TEST_CASE("rated power follows the architecture") {
  SimConfig c = load_config("mzm.laser_power = 12 dBm\nmrr.max_afe_input = 7 dBm");
  CHECK(rated_laser_dbm(c) == 12.0);
  c.arch = Architecture::Mrr;
  CHECK(rated_laser_dbm(c) == 10.0);
  CHECK(max_afe_input_dbm(c) == 7.0);
}
