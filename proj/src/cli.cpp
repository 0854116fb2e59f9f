#include "sipmac/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "sipmac/config.hpp"
#include "sipmac/energy.hpp"
#include "sipmac/errors.hpp"
#include "sipmac/figures.hpp"
#include "sipmac/link_budget.hpp"
#include "sipmac/mesh.hpp"
#include "sipmac/noise.hpp"
#include "sipmac/report.hpp"
#include "sipmac/scaling.hpp"
#include "sipmac/units.hpp"

namespace sipmac::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config_path;
  std::vector<std::string> archs;
  std::vector<int> sizes;
  std::vector<int> bits;
  std::vector<double> rates_ghz;
  std::vector<std::string> tunings;
  std::vector<double> responsivities;
  std::string out_path;
  std::string format = "csv";
  double laser_dbm = 0.0;
  double power_dbm = 0.0;
  unsigned workers = 1;
  std::string decompose_path;
  std::string reconstruct_path;
  int random_n = 0;
  unsigned long long seed = 1;
  std::string figure_id;
  bool list_figures = false;
};

class Emitter {
 public:
  Emitter(std::ostream& out) : out_(out) {}

  void emit(const std::string& content, const std::string& path) {
    if (path.empty()) {
      out_ << content;
      if (!content.empty() && content.back() != '\n') out_ << '\n';
    } else {
      write_file_atomic(path, content);
    }
  }

 private:
  std::ostream& out_;
};

Architecture arch_from(const std::string& s) {
  auto a = parse_architecture(s);
  if (!a) throw ConfigError(ConfigError::Kind::Validation, "--arch", "expected mzm or mrr, got `" + s + "`");
  return *a;
}

TuningKind tuning_from(const std::string& s) {
  auto t = parse_tuning_kind(s);
  if (!t) {
    throw ConfigError(ConfigError::Kind::Validation, "--tuning",
                      "expected tops, tops_insulated, noems, lcos or pcm, got `" + s + "`");
  }
  return *t;
}

SimConfig build_config(const Options& o) {
  SimConfig cfg = o.config_path.empty() ? default_config() : load_config_file(o.config_path);
  if (!o.archs.empty()) cfg.arch = arch_from(o.archs.front());
  if (!o.sizes.empty()) cfg.n = o.sizes.front();
  if (!o.bits.empty()) cfg.bits = o.bits.front();
  if (!o.rates_ghz.empty()) cfg.noise.data_rate_sps = o.rates_ghz.front() * 1e9;
  if (!o.tunings.empty()) cfg.tuning = tuning_from(o.tunings.front());
  if (!o.responsivities.empty()) cfg.noise.responsivity_a_per_w = o.responsivities.front();
  if (cfg.n < 1) throw ConfigError(ConfigError::Kind::Validation, "--n", "must be >= 1");
  if (cfg.bits < 1 || cfg.bits > 6) {
    throw ConfigError(ConfigError::Kind::Validation, "--bits", "resolution must lie in [1, 6] bits");
  }
  if (!(cfg.noise.data_rate_sps > 0.0)) {
    throw ConfigError(ConfigError::Kind::Validation, "--dr", "must be > 0");
  }
  if (!(cfg.noise.responsivity_a_per_w > 0.0)) {
    throw ConfigError(ConfigError::Kind::Validation, "--responsivity", "must be > 0");
  }
  // rho_opt is bounded by the final network size.
  if (cfg.rho_opt > cfg.n) cfg.rho_opt = 1.0;
  validate(cfg);
  return cfg;
}

bool want_json(const Options& o) { return o.format == "json"; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string path_for_size(const std::string& out, int n) {
  fs::path p(out);
  const std::string stem = p.stem().string();
  const std::string ext = p.extension().string();
  return (p.parent_path() / (stem + "_N" + std::to_string(n) + ext)).string();
}

int cmd_link_budget(const Options& o, Emitter& em) {
  const SimConfig cfg = build_config(o);
  std::vector<int> sizes = o.sizes.empty() ? std::vector<int>{cfg.n} : o.sizes;
  for (int n : sizes) {
    if (n < 1) throw ConfigError(ConfigError::Kind::Validation, "--n", "must be >= 1");
  }
  const bool per_file = sizes.size() > 1 && !o.out_path.empty();
  std::string combined;
  Json all = Json::array();
  for (int n : sizes) {
    const auto report = link_budget(cfg, n, o.laser_dbm);
    const std::string text = want_json(o) ? dump(to_json(report)) : link_budget_table(report).to_csv();
    if (per_file) {
      em.emit(text, path_for_size(o.out_path, n));
    } else if (want_json(o)) {
      all.push_back(to_json(report));
    } else {
      combined += text;
    }
  }
  if (!per_file) {
    if (want_json(o)) combined = dump(all.size() == 1 ? all[0] : all);
    em.emit(combined, o.out_path);
  }
  return kOk;
}

int cmd_snr(const Options& o, Emitter& em) {
  const SimConfig cfg = build_config(o);
  const double p = dbm_to_watts(o.power_dbm);
  const ResolutionResult r = bit_resolution(p, cfg.noise);
  const NoiseTerms t = noise_terms(p, cfg.noise);
  Json j = to_json(r);
  j["power_dbm"] = o.power_dbm;
  j["noise_terms_a2_per_hz"] = {{"shot", t.shot}, {"thermal", t.thermal}, {"rin", t.rin}, {"dark_shot", t.dark_shot}};
  j["bandwidth_factor_sqrt_hz"] = std::sqrt(cfg.noise.data_rate_sps / std::sqrt(2.0));
  em.emit(dump(j), o.out_path);
  return r.achievable() ? kOk : kInfeasible;
}

int cmd_energy(const Options& o, Emitter& em) {
  const SimConfig cfg = build_config(o);
  std::optional<EnergyBreakdown> e;
  std::string note;
  try {
    e = energy_per_op(cfg, cfg.n);
  } catch (const InfeasibleError& ex) {
    note = ex.what();
  } catch (const UnreachableTarget& ex) {
    note = ex.what();
  }
  if (want_json(o)) {
    Json j = {{"N", cfg.n}, {"arch", to_string(cfg.arch)}, {"bits", cfg.bits},
              {"tuning", to_string(cfg.tuning)}, {"feasible", e.has_value()}};
    j["breakdown"] = e ? to_json(*e) : Json(nullptr);
    if (!note.empty()) j["note"] = note;
    em.emit(dump(j), o.out_path);
  } else {
    Table t = energy_table({{cfg, e.value_or(EnergyBreakdown{})}});
    t.columns.push_back("feasible");
    t.columns.push_back("note");
    t.rows[0].push_back(e ? "1" : "0");
    t.rows[0].push_back(note);
    if (!e) {
      for (std::size_t k = 4; k + 2 < t.columns.size(); ++k) t.rows[0][k] = "";
    }
    em.emit(t.to_csv(), o.out_path);
  }
  return e ? kOk : kInfeasible;
}

int cmd_scaling(const Options& o, Emitter& em) {
  const SimConfig cfg = build_config(o);
  const ScalingResult r = scaling_limit(cfg, cfg.bits);
  std::optional<OptimumResult> opt;
  if (r.feasible && cfg.bits <= 4) opt = optimum_network(cfg);
  if (want_json(o)) {
    Json j = to_json(r);
    if (opt) {
      j["n_opt"] = opt->n_opt;
      j["energy_at_optimum"] = to_json(opt->energy);
    }
    em.emit(dump(j), o.out_path);
  } else {
    Table t;
    t.columns = {"arch", "bits", "data_rate_gsps", "feasible", "n_ltd", "limiting_factor",
                 "sensitivity_dbm", "output_dbm", "energy_at_limit_fj", "n_opt", "energy_at_opt_fj"};
    t.add({std::string(to_string(r.arch)), fmt_num(r.n_target), fmt_num(r.data_rate_sps / 1e9),
           r.feasible ? "1" : "0", fmt_int(r.n_ltd), std::string(to_string(r.limiting_factor)),
           fmt_dbm(r.sensitivity_dbm), fmt_dbm(r.output_dbm),
           r.energy_at_limit ? fmt_fj(*r.energy_at_limit) : "", opt ? fmt_int(opt->n_opt) : "",
           opt ? fmt_fj(opt->energy.total) : ""});
    em.emit(t.to_csv(), o.out_path);
  }
  return r.feasible ? kOk : kInfeasible;
}

int cmd_soa(const Options& o, Emitter& em) {
  const SimConfig cfg = build_config(o);
  const SoaPlan p = soa_plan(cfg, cfg.n, cfg.bits);
  std::vector<int> limits;
  for (int k = 0; k <= 2; ++k) limits.push_back(soa_scaling_limit(cfg, cfg.bits, k));
  if (want_json(o)) {
    Json j = to_json(p);
    j["arch"] = to_string(cfg.arch);
    j["placement"] = to_string(cfg.soa_placement);
    j["n_ltd_by_soa_count"] = limits;
    em.emit(dump(j), o.out_path);
  } else {
    Table t;
    t.columns = {"arch", "N", "bits", "soa_count", "feasible", "achieved_bits", "afe_input_dbm",
                 "n_ltd_0_soa", "n_ltd_1_soa", "n_ltd_2_soa"};
    t.add({std::string(to_string(cfg.arch)), fmt_int(p.n), fmt_num(p.n_target), fmt_int(p.soa_count),
           p.feasible ? "1" : "0", fmt_num(p.achieved_bits), fmt_dbm(p.afe_input_dbm),
           fmt_int(limits[0]), fmt_int(limits[1]), fmt_int(limits[2])});
    em.emit(t.to_csv(), o.out_path);
  }
  return p.feasible ? kOk : kInfeasible;
}

int cmd_sweep(const Options& o, Emitter& em) {
  Options base_opts = o;
  base_opts.archs.clear();
  base_opts.sizes.clear();
  base_opts.bits.clear();
  base_opts.rates_ghz.clear();
  base_opts.tunings.clear();
  base_opts.responsivities.clear();
  SweepGrid grid;
  grid.base = build_config(base_opts);
  for (const auto& a : o.archs) grid.archs.push_back(arch_from(a));
  for (const auto& t : o.tunings) grid.tunings.push_back(tuning_from(t));
  for (int n : o.sizes) {
    if (n < 1) throw ConfigError(ConfigError::Kind::Validation, "--n", "must be >= 1");
  }
  for (int b : o.bits) {
    if (b < 1 || b > 6) throw ConfigError(ConfigError::Kind::Validation, "--bits", "must lie in [1, 6]");
  }
  for (double g : o.rates_ghz) {
    if (!(g > 0.0)) throw ConfigError(ConfigError::Kind::Validation, "--dr", "must be > 0");
    grid.data_rates_sps.push_back(g * 1e9);
  }
  for (double r : o.responsivities) {
    if (!(r > 0.0)) throw ConfigError(ConfigError::Kind::Validation, "--responsivity", "must be > 0");
  }
  grid.sizes = o.sizes;
  grid.bits = o.bits;
  grid.responsivities = o.responsivities;
  grid.workers = std::max(1u, o.workers);
  const auto rows = sweep(grid);
  const Table t = sweep_table(rows);
  em.emit(want_json(o) ? dump(t.to_json()) : t.to_csv(), o.out_path);
  if (!o.out_path.empty()) {
    Json side = {{"config", to_json(grid.base)}};
    Json axes;
    axes["arch"] = o.archs;
    axes["N"] = o.sizes;
    axes["bits"] = o.bits;
    axes["data_rate_gsps"] = o.rates_ghz;
    axes["tuning"] = o.tunings;
    axes["responsivity"] = o.responsivities;
    side["grid"] = axes;
    side["columns"] = t.columns;
    write_file_atomic(o.out_path + ".config.json", dump(side));
  }
  return kOk;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

int cmd_mesh(const Options& o, Emitter& em) {
  const int modes = (!o.decompose_path.empty()) + (!o.reconstruct_path.empty()) + (o.random_n > 0);
  if (modes != 1) {
    throw std::invalid_argument("mesh: give exactly one of --decompose, --reconstruct, --random");
  }
  Json result;
  if (!o.decompose_path.empty()) {
    result = program_to_json(clements_decompose(matrix_from_json(read_json_file(o.decompose_path))));
  } else if (!o.reconstruct_path.empty()) {
    result = matrix_to_json(clements_reconstruct(program_from_json(read_json_file(o.reconstruct_path))));
  } else {
    std::mt19937_64 rng(o.seed);
    result = matrix_to_json(haar_unitary(o.random_n, rng));
  }
  em.emit(dump(result), o.out_path);
  return kOk;
}

int cmd_figures(const Options& o, Emitter& em) {
  if (o.list_figures) {
    std::string text;
    for (const auto& id : figure_ids()) text += id + "\n";
    em.emit(text, o.out_path);
    return kOk;
  }
  if (o.figure_id.empty()) throw std::invalid_argument("figures: --id is required");
  const SimConfig cfg = build_config(o);
  const Table t = emit_figure_data(o.figure_id, cfg);
  em.emit(want_json(o) ? dump(t.to_json()) : t.to_csv(), o.out_path);
  return kOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "Configuration file (key = value unit)");
  sub->add_option("--out", o.out_path, "Output file (written atomically); stdout when omitted");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_model(CLI::App* sub, Options& o, bool lists) {
  auto* a = sub->add_option("--arch", o.archs, "mzm or mrr");
  auto* n = sub->add_option("--n", o.sizes, "Network size N");
  auto* b = sub->add_option("--bits", o.bits, "Resolution in bits");
  auto* d = sub->add_option("--dr", o.rates_ghz, "Data rate in GS/s");
  auto* t = sub->add_option("--tuning", o.tunings, "tops | tops_insulated | noems | lcos | pcm");
  auto* r = sub->add_option("--responsivity", o.responsivities, "Photodiode responsivity in A/W");
  for (auto* opt : {a, n, b, d, t, r}) {
    opt->delimiter(',');
    if (!lists) opt->expected(1);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Link budget, noise, energy and scaling model for silicon-photonic MAC accelerators",
               "sipmac"};
  app.require_subcommand(1);

  auto* lb = app.add_subcommand("link-budget", "Stage-by-stage optical power");
  add_common(lb, o);
  add_model(lb, o, false);
  lb->get_option("--n")->expected(1, 1 << 20);
  lb->add_option("--laser-dbm", o.laser_dbm, "Laser optical power in dBm");

  auto* snr = app.add_subcommand("snr", "Bit resolution at a received power");
  add_common(snr, o);
  add_model(snr, o, false);
  snr->add_option("--power-dbm", o.power_dbm, "Received optical power in dBm")->required();

  auto* energy = app.add_subcommand("energy", "Energy per operation breakdown");
  add_common(energy, o);
  add_model(energy, o, false);

  auto* scaling = app.add_subcommand("scaling", "Maximum network size and energy optimum");
  add_common(scaling, o);
  add_model(scaling, o, false);

  auto* soa = app.add_subcommand("soa", "SOA count needed for a resolution target");
  add_common(soa, o);
  add_model(soa, o, false);

  auto* sw = app.add_subcommand("sweep", "Cartesian sweep over model knobs");
  add_common(sw, o);
  add_model(sw, o, true);
  sw->add_option("--workers", o.workers, "Parallel evaluation threads");

  auto* mesh = app.add_subcommand("mesh", "Decompose or reconstruct MZI mesh programs");
  add_common(mesh, o);
  mesh->add_option("--decompose", o.decompose_path, "Unitary matrix JSON to decompose");
  mesh->add_option("--reconstruct", o.reconstruct_path, "Program JSON to multiply out");
  mesh->add_option("--random", o.random_n, "Emit a Haar-random unitary of this size");
  mesh->add_option("--seed", o.seed, "Seed for --random");

  auto* fig = app.add_subcommand("figures", "Plot-ready figure datasets");
  add_common(fig, o);
  add_model(fig, o, false);
  fig->add_option("--id", o.figure_id, "Figure identifier");
  fig->add_flag("--list", o.list_figures, "List figure identifiers");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "sipmac: " << msg << "\n";
    return kInvalid;
  }

  Emitter em(out);
  try {
    if (lb->parsed()) return cmd_link_budget(o, em);
    if (snr->parsed()) return cmd_snr(o, em);
    if (energy->parsed()) return cmd_energy(o, em);
    if (scaling->parsed()) return cmd_scaling(o, em);
    if (soa->parsed()) return cmd_soa(o, em);
    if (sw->parsed()) return cmd_sweep(o, em);
    if (mesh->parsed()) return cmd_mesh(o, em);
    if (fig->parsed()) return cmd_figures(o, em);
  } catch (const InfeasibleError& e) {
    err << "sipmac: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const UnreachableTarget& e) {
    err << "sipmac: infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "sipmac: " << msg << "\n";
    return kInvalid;
  }
  return kInvalid;
}

int main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, std::cout, std::cerr);
}

}  // namespace sipmac::cli
