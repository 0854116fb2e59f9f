#include "sipmac/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "sipmac/units.hpp"

namespace sipmac {
namespace {

std::string printf_double(const char* format, double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Json cell_value(const std::string& cell) {
  if (cell.empty()) return nullptr;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end && *end == '\0' && std::isfinite(v)) return v;
  return cell;
}

Json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

Json finite_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("Table::add: row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += csv_escape(cells[k]);
    }
    out += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out;
}

Json Table::to_json() const {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json obj = Json::object();
    for (std::size_t k = 0; k < columns.size(); ++k) obj[columns[k]] = cell_value(r[k]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

Table parse_csv(const std::string& text) {
  Table t;
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool header = true;
  auto end_row = [&] {
    cells.push_back(cell);
    cell.clear();
    if (header) {
      t.columns = std::move(cells);
      header = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
    cells.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c == '\n') {
      end_row();
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (!cell.empty() || !cells.empty()) end_row();
  return t;
}

std::string fmt_dbm(double dbm) { return printf_double("%.3f", dbm); }
std::string fmt_fj(double joules) { return printf_double("%.2f", joules * 1e15); }
std::string fmt_num(double value) { return printf_double("%.9g", value); }
std::string fmt_int(long long value) { return std::to_string(value); }

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::random_device rd;
  const fs::path tmp = path.string() + ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("cannot write " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place: " + path.string());
  }
}

Table link_budget_table(const LinkBudgetReport& report) {
  Table t;
  t.columns = {"stage", "label", "loss_db", "cumulative_dbm"};
  t.add({"0", "laser", fmt_num(0.0), fmt_dbm(report.laser_dbm)});
  for (std::size_t k = 0; k < report.stages.size(); ++k) {
    const auto& s = report.stages[k];
    t.add({fmt_int(static_cast<long long>(k + 1)), s.label, fmt_num(s.loss_db), fmt_dbm(s.cumulative_dbm)});
  }
  t.add({fmt_int(static_cast<long long>(report.stages.size() + 1)), "total",
         fmt_num(report.total_loss_db), fmt_dbm(report.output_dbm)});
  return t;
}

Table energy_table(const std::vector<std::pair<SimConfig, EnergyBreakdown>>& rows) {
  Table t;
  t.columns = {"N",          "arch",         "bits",     "tuning",   "total_fj_per_op",
               "laser_fj",   "drivers_fj",   "mem_fj",   "tuning_fj", "soa_fj",
               "afe_fj",     "ops_per_second"};
  for (const auto& [cfg, e] : rows) {
    t.add({fmt_int(cfg.n), std::string(to_string(cfg.arch)), fmt_int(cfg.bits),
           std::string(to_string(cfg.tuning)), fmt_fj(e.total), fmt_fj(e.laser),
           fmt_fj(e.input_drivers), fmt_fj(e.mem_interface), fmt_fj(e.matrix_tuning), fmt_fj(e.soa),
           fmt_fj(e.output_afe), fmt_num(e.ops_per_second)});
  }
  return t;
}

Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t;
  t.columns = {"arch",        "tuning",        "bits",          "data_rate_gsps", "responsivity",
               "N",           "n_ltd",         "limiting_factor", "output_dbm",   "achieved_bits",
               "snr_db",      "total_fj_per_op", "feasible",    "note"};
  for (const auto& r : rows) {
    t.add({std::string(to_string(r.arch)), std::string(to_string(r.tuning)), fmt_int(r.bits),
           fmt_num(r.data_rate_sps / 1e9), fmt_num(r.responsivity), fmt_int(r.n), fmt_int(r.n_ltd),
           r.limiting_factor, fmt_dbm(r.output_dbm), fmt_num(r.achieved_bits), fmt_num(r.snr_db),
           r.energy ? fmt_fj(r.energy->total) : "", r.feasible ? "1" : "0", r.note});
  }
  return t;
}

Json to_json(const LinkBudgetReport& report) {
  Json stages = Json::array();
  for (const auto& s : report.stages) {
    stages.push_back({{"label", s.label}, {"loss_db", s.loss_db}, {"cumulative_dbm", s.cumulative_dbm}});
  }
  return {{"arch", to_string(report.arch)},
          {"N", report.n},
          {"laser_dbm", report.laser_dbm},
          {"stages", stages},
          {"total_loss_db", report.total_loss_db},
          {"output_dbm", report.output_dbm}};
}

Json to_json(const EnergyBreakdown& e) {
  return {{"laser", e.laser},
          {"input_drivers", e.input_drivers},
          {"mem_interface", e.mem_interface},
          {"matrix_tuning", e.matrix_tuning},
          {"soa", e.soa},
          {"output_afe", e.output_afe},
          {"total", e.total},
          {"ops_per_second", e.ops_per_second},
          {"unit", "J/Op"}};
}

Json to_json(const ResolutionResult& r) {
  return {{"bits", finite_or_null(r.bits)},
          {"snr_db", finite_or_null(r.snr_db)},
          {"signal_current_a", r.signal_current_a},
          {"noise_current_a", r.noise_current_a},
          {"achievable", r.achievable()}};
}

Json to_json(const ScalingResult& r) {
  return {{"arch", to_string(r.arch)},
          {"n_target", r.n_target},
          {"data_rate_sps", r.data_rate_sps},
          {"feasible", r.feasible},
          {"n_ltd", r.n_ltd},
          {"limiting_factor", to_string(r.limiting_factor)},
          {"sensitivity_dbm", r.sensitivity_dbm},
          {"output_dbm", r.output_dbm},
          {"energy_at_limit", optional_number(r.energy_at_limit)}};
}

Json to_json(const SoaPlan& p) {
  return {{"N", p.n},
          {"n_target", p.n_target},
          {"soa_count", p.soa_count},
          {"achieved_bits", finite_or_null(p.achieved_bits)},
          {"afe_input_dbm", p.afe_input_dbm},
          {"feasible", p.feasible}};
}

Json to_json(const SimConfig& cfg) {
  const auto& n = cfg.noise;
  const auto mz = cfg.mzm_effective();
  const auto& mr = cfg.mrr;
  const auto& tc = cfg.tuning_catalog;
  const auto& d = cfg.drivers;
  Json j;
  j["arch"] = to_string(cfg.arch);
  j["n"] = cfg.n;
  j["bits"] = cfg.bits;
  j["tuning"] = to_string(cfg.tuning);
  j["weight_reuse"] = cfg.weight_reuse;
  j["rho_opt"] = cfg.rho_opt;
  j["soa_count"] = cfg.soa_count;
  j["soa_placement"] = to_string(cfg.soa_placement);
  j["noise"] = {{"responsivity_a_per_w", n.responsivity_a_per_w},
                {"load_resistance_ohm", n.load_resistance_ohm},
                {"dark_current_a", n.dark_current_a},
                {"temperature_k", n.temperature_k},
                {"data_rate_sps", n.data_rate_sps},
                {"optical_bandwidth_hz", n.optical_bandwidth_hz},
                {"electrical_bandwidth_hz", n.electrical_bandwidth()},
                {"wavelength_m", n.wavelength_m},
                {"rin_db_per_hz", n.rin_db_per_hz},
                {"input_referred_noise_a", input_referred_noise(n)}};
  j["mzm"] = {{"wpe", mz.wpe},
              {"il_smf_db", mz.il_smf_db},
              {"il_ec_db", mz.il_ec_db},
              {"il_wg_db_per_mm", mz.il_wg_db_per_mm},
              {"el_splitter_db", mz.el_splitter_db},
              {"il_ps_db_per_mm", mz.il_ps_db_per_mm},
              {"l_mzi_mm", mz.l_mzi_mm},
              {"il_dc_db", mz.il_dc_db},
              {"weight_ps_il_db", mz.weight_ps_il_db},
              {"mesh_stage_multiplicity", mz.mesh_stage_multiplicity},
              {"il_penalty_db", mz.il_penalty_db},
              {"laser_rated_power_dbm", mz.laser_rated_power_dbm},
              {"max_afe_input_dbm", mz.max_afe_input_dbm}};
  j["mrr"] = {{"wpe", mr.wpe},
              {"il_smf_db", mr.il_smf_db},
              {"il_ec_db", mr.il_ec_db},
              {"il_wg_db_per_mm", mr.il_wg_db_per_mm},
              {"el_splitter_db", mr.el_splitter_db},
              {"il_mrm_db", mr.il_mrm_db},
              {"obl_mrm_db", mr.obl_mrm_db},
              {"il_mrr_db", mr.il_mrr_db},
              {"obl_mrr_db", mr.obl_mrr_db},
              {"d_mrr_um", mr.d_mrr_um},
              {"il_penalty_db", mr.il_penalty_db},
              {"laser_rated_power_dbm", mr.laser_rated_power_dbm},
              {"max_afe_input_dbm", mr.max_afe_input_dbm},
              {"fsr_nm", optional_number(mr.fsr_nm)},
              {"channel_spacing_nm", optional_number(mr.channel_spacing_nm)}};
  j["tuning_catalog"] = {{"tops_p_pi_w", tc.tops_p_pi_w},
                         {"tops_insulated_p_pi_w", tc.tops_insulated_p_pi_w},
                         {"tops_p_fsr_w", tc.tops_p_fsr_w},
                         {"tops_insulated_p_fsr_w", tc.tops_insulated_p_fsr_w},
                         {"tops_il_db", tc.tops_il_db},
                         {"noems_energy_j", tc.noems_energy_j},
                         {"noems_il_db", tc.noems_il_db},
                         {"lcos_power_w", tc.lcos_power_w},
                         {"lcos_il_db", tc.lcos_il_db},
                         {"pcm_il_db", tc.pcm_il_db}};
  j["drivers"] = {{"mzm_driver_j", d.mzm_driver_j},
                  {"mrm_driver_j", d.mrm_driver_j},
                  {"binary_afe_j", d.binary_afe_j},
                  {"linear_tia_j", d.linear_tia_j},
                  {"adc_j", d.adc_j},
                  {"mem_interface_w", d.mem_interface_w},
                  {"mrm_control_w", d.mrm_control_w}};
  j["soa"] = {{"gain_db", cfg.soa.gain_db},
              {"n_sp", cfg.soa.n_sp},
              {"electrical_power_w", cfg.soa.electrical_power_w}};
  return j;
}

Json program_to_json(const ClementsProgram& p) {
  Json nodes = Json::array();
  for (const auto& node : p.nodes) nodes.push_back({{"m", node.m}, {"theta", node.theta}, {"phi", node.phi}});
  return {{"N", p.n}, {"nodes", nodes}, {"output_phases", p.output_phases}};
}

ClementsProgram program_from_json(const Json& j) {
  ClementsProgram p;
  p.n = j.at("N").get<int>();
  if (p.n < 1) throw std::invalid_argument("program: N must be >= 1");
  for (const auto& node : j.at("nodes")) {
    TbsNode t{node.at("m").get<int>(), node.at("theta").get<double>(), node.at("phi").get<double>()};
    if (t.m < 0 || t.m + 1 >= p.n) {
      throw std::invalid_argument("program: node port " + std::to_string(t.m) + " out of range");
    }
    p.nodes.push_back(t);
  }
  p.output_phases = j.at("output_phases").get<std::vector<double>>();
  if (static_cast<int>(p.output_phases.size()) != p.n) {
    throw std::invalid_argument("program: expected " + std::to_string(p.n) + " output phases");
  }
  return p;
}

Json matrix_to_json(const CMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"real", re}, {"imag", im}};
}

CMatrix matrix_from_json(const Json& j) {
  auto read = [](const Json& rows) {
    const auto data = rows.get<std::vector<std::vector<double>>>();
    const auto nr = static_cast<Eigen::Index>(data.size());
    const auto nc = nr ? static_cast<Eigen::Index>(data[0].size()) : 0;
    Eigen::MatrixXd m(nr, nc);
    for (Eigen::Index r = 0; r < nr; ++r) {
      if (static_cast<Eigen::Index>(data[static_cast<std::size_t>(r)].size()) != nc) {
        throw std::invalid_argument("matrix: ragged rows");
      }
      for (Eigen::Index c = 0; c < nc; ++c) {
        m(r, c) = data[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      }
    }
    return m;
  };
  if (j.is_array()) return read(j).cast<Complex>();
  const Eigen::MatrixXd re = read(j.at("real"));
  CMatrix out = re.cast<Complex>();
  if (j.contains("imag")) {
    const Eigen::MatrixXd im = read(j.at("imag"));
    if (im.rows() != re.rows() || im.cols() != re.cols()) {
      throw std::invalid_argument("matrix: real and imag parts differ in shape");
    }
    out.imag() = im;
  }
  return out;
}

}  // namespace sipmac
