#include "sipmac/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sipmac/errors.hpp"

namespace sipmac {
namespace {

enum class Family {
  Plain,
  Count,
  Text,
  Db,
  Dbm,
  DbPerMm,
  DbPerHz,
  Power,
  Energy,
  Frequency,
  Length,
  Current,
  Responsivity,
  Resistance,
  Temperature,
};

enum class Check { Any, Positive, NonNegative, UnitInterval, AtLeastOne, Bits, SoaCount };

using NumberSetter = std::function<void(SimConfig&, double)>;
using TextSetter = std::function<void(SimConfig&, std::string_view)>;

struct KeySpec {
  std::string key;
  Family family;
  Check check;
  std::string description;
  NumberSetter set_number;
  TextSetter set_text;
};

const std::map<std::string, double, std::less<>>& unit_table(Family family) {
  static const std::map<Family, std::map<std::string, double, std::less<>>> tables = {
      {Family::Db, {{"dB", 1.0}}},
      {Family::Dbm, {{"dBm", 1.0}}},
      {Family::DbPerMm, {{"dB/mm", 1.0}, {"dB/cm", 0.1}, {"dB/m", 1e-3}}},
      {Family::DbPerHz, {{"dB/Hz", 1.0}}},
      {Family::Power, {{"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}, {"µW", 1e-6}, {"nW", 1e-9}}},
      {Family::Energy,
       {{"J", 1.0}, {"nJ", 1e-9}, {"pJ", 1e-12}, {"fJ", 1e-15}, {"pJ/b", 1e-12}}},
      {Family::Frequency,
       {{"Hz", 1.0},
        {"kHz", 1e3},
        {"MHz", 1e6},
        {"GHz", 1e9},
        {"S/s", 1.0},
        {"MS/s", 1e6},
        {"GS/s", 1e9}}},
      {Family::Length,
       {{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"µm", 1e-6}, {"nm", 1e-9}}},
      {Family::Current, {{"A", 1.0}, {"mA", 1e-3}, {"uA", 1e-6}, {"µA", 1e-6}, {"nA", 1e-9}}},
      {Family::Responsivity, {{"A/W", 1.0}, {"mA/mW", 1.0}}},
      {Family::Resistance, {{"ohm", 1.0}, {"Ohm", 1.0}, {"Ω", 1.0}, {"kohm", 1e3}}},
      {Family::Temperature, {{"K", 1.0}}},
  };
  static const std::map<std::string, double, std::less<>> empty;
  auto it = tables.find(family);
  return it == tables.end() ? empty : it->second;
}

std::string family_units(Family family) {
  switch (family) {
    case Family::Plain: return "";
    case Family::Count: return "integer";
    case Family::Text: return "name";
    default: break;
  }
  std::string out;
  for (const auto& [unit, scale] : unit_table(family)) {
    (void)scale;
    if (!out.empty()) out += "|";
    out += unit;
  }
  return out;
}

void check_value(const std::string& key, Check check, double v) {
  auto fail = [&](const std::string& what) {
    throw ConfigError(ConfigError::Kind::Validation, key, what);
  };
  if (!std::isfinite(v)) fail("value must be finite");
  switch (check) {
    case Check::Any: break;
    case Check::Positive:
      if (!(v > 0.0)) fail("must be > 0");
      break;
    case Check::NonNegative:
      if (v < 0.0) fail("must be >= 0");
      break;
    case Check::UnitInterval:
      if (!(v > 0.0 && v <= 1.0)) fail("must lie in (0, 1]");
      break;
    case Check::AtLeastOne:
      if (v < 1.0) fail("must be >= 1");
      break;
    case Check::Bits:
      if (v < 1.0 || v > 6.0) fail("resolution must lie in [1, 6] bits");
      break;
    case Check::SoaCount:
      if (v < 0.0 || v > 2.0) fail("at most 2 SOAs can be chained");
      break;
  }
}

#define SIPMAC_NUM(expr) [](SimConfig& c, double v) { expr = v; }
#define SIPMAC_INT(expr) [](SimConfig& c, double v) { expr = static_cast<int>(v); }

std::vector<KeySpec> build_specs() {
  std::vector<KeySpec> s;
  auto num = [&](std::string key, Family f, Check chk, std::string desc, NumberSetter set) {
    s.push_back({std::move(key), f, chk, std::move(desc), std::move(set), nullptr});
  };
  auto text = [&](std::string key, std::string desc, TextSetter set) {
    s.push_back({std::move(key), Family::Text, Check::Any, std::move(desc), nullptr, std::move(set)});
  };

  text("arch", "mzm or mrr", [](SimConfig& c, std::string_view v) {
    auto a = parse_architecture(v);
    if (!a) throw ConfigError(ConfigError::Kind::Validation, "arch", "expected mzm or mrr");
    c.arch = *a;
  });
  num("n", Family::Count, Check::AtLeastOne, "network size N", SIPMAC_INT(c.n));
  num("bits", Family::Count, Check::Bits, "input/output resolution", SIPMAC_INT(c.bits));
  text("tuning", "tops | tops_insulated | noems | lcos | pcm", [](SimConfig& c, std::string_view v) {
    auto t = parse_tuning_kind(v);
    if (!t) {
      throw ConfigError(ConfigError::Kind::Validation, "tuning",
                        "expected tops, tops_insulated, noems, lcos or pcm");
    }
    c.tuning = *t;
  });
  num("weight_reuse", Family::Plain, Check::AtLeastOne, "matrix evaluations per weight update",
      SIPMAC_NUM(c.weight_reuse));
  num("rho_opt", Family::Plain, Check::AtLeastOne, "laser power scale-down factor",
      SIPMAC_NUM(c.rho_opt));
  num("soa_count", Family::Count, Check::SoaCount, "SOAs in the link", SIPMAC_INT(c.soa_count));
  text("soa_placement", "weight_input | output", [](SimConfig& c, std::string_view v) {
    auto p = parse_soa_placement(v);
    if (!p) {
      throw ConfigError(ConfigError::Kind::Validation, "soa_placement",
                        "expected weight_input or output");
    }
    c.soa_placement = *p;
  });

  num("responsivity", Family::Responsivity, Check::Positive, "photodiode responsivity",
      SIPMAC_NUM(c.noise.responsivity_a_per_w));
  num("load_resistance", Family::Resistance, Check::Positive, "TIA load resistance",
      SIPMAC_NUM(c.noise.load_resistance_ohm));
  num("dark_current", Family::Current, Check::Positive, "photodiode dark current",
      SIPMAC_NUM(c.noise.dark_current_a));
  num("temperature", Family::Temperature, Check::Positive, "receiver temperature",
      SIPMAC_NUM(c.noise.temperature_k));
  num("data_rate", Family::Frequency, Check::Positive, "symbol rate",
      SIPMAC_NUM(c.noise.data_rate_sps));
  num("optical_bandwidth", Family::Frequency, Check::Positive, "optical filter bandwidth",
      SIPMAC_NUM(c.noise.optical_bandwidth_hz));
  num("electrical_bandwidth", Family::Frequency, Check::Positive,
      "receiver bandwidth (default data_rate/sqrt(2))", SIPMAC_NUM(c.noise.electrical_bandwidth_hz));
  num("wavelength", Family::Length, Check::Positive, "carrier wavelength",
      SIPMAC_NUM(c.noise.wavelength_m));
  num("rin", Family::DbPerHz, Check::Any, "laser relative intensity noise",
      SIPMAC_NUM(c.noise.rin_db_per_hz));
  num("input_referred_noise", Family::Current, Check::Positive,
      "AFE input-referred noise current for the binary error model",
      SIPMAC_NUM(c.noise.input_referred_noise_a));

  // Keys shared by both architectures set both records; the prefixed forms
  // set only one.
  num("wpe", Family::Plain, Check::UnitInterval, "laser wall-plug efficiency",
      [](SimConfig& c, double v) { c.mzm.wpe = c.mrr.wpe = v; });
  num("il_smf", Family::Db, Check::NonNegative, "fiber loss",
      [](SimConfig& c, double v) { c.mzm.il_smf_db = c.mrr.il_smf_db = v; });
  num("il_ec", Family::Db, Check::NonNegative, "edge coupler loss",
      [](SimConfig& c, double v) { c.mzm.il_ec_db = c.mrr.il_ec_db = v; });
  num("il_wg", Family::DbPerMm, Check::NonNegative, "waveguide propagation loss",
      [](SimConfig& c, double v) { c.mzm.il_wg_db_per_mm = c.mrr.il_wg_db_per_mm = v; });
  num("el_splitter", Family::Db, Check::NonNegative, "excess loss per splitter stage",
      [](SimConfig& c, double v) { c.mzm.el_splitter_db = c.mrr.el_splitter_db = v; });
  num("il_penalty", Family::Db, Check::NonNegative, "lumped link penalty",
      [](SimConfig& c, double v) { c.mzm.il_penalty_db = c.mrr.il_penalty_db = v; });
  num("laser_power", Family::Dbm, Check::Any, "laser rated optical power",
      [](SimConfig& c, double v) { c.mzm.laser_rated_power_dbm = c.mrr.laser_rated_power_dbm = v; });
  num("max_afe_input", Family::Dbm, Check::Any, "highest optical power tolerated at the AFE",
      [](SimConfig& c, double v) { c.mzm.max_afe_input_dbm = c.mrr.max_afe_input_dbm = v; });

  num("mzm.wpe", Family::Plain, Check::UnitInterval, "", SIPMAC_NUM(c.mzm.wpe));
  num("mzm.il_smf", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.mzm.il_smf_db));
  num("mzm.il_ec", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.mzm.il_ec_db));
  num("mzm.il_wg", Family::DbPerMm, Check::NonNegative, "", SIPMAC_NUM(c.mzm.il_wg_db_per_mm));
  num("mzm.el_splitter", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.mzm.el_splitter_db));
  num("mzm.il_ps", Family::DbPerMm, Check::NonNegative, "PN phase shifter loss",
      SIPMAC_NUM(c.mzm.il_ps_db_per_mm));
  num("mzm.l_mzi", Family::Length, Check::Positive, "MZI length",
      [](SimConfig& c, double v) { c.mzm.l_mzi_mm = v * 1e3; });
  num("mzm.il_dc", Family::Db, Check::NonNegative, "directional coupler loss",
      SIPMAC_NUM(c.mzm.il_dc_db));
  num("mzm.weight_ps_il", Family::Db, Check::NonNegative,
      "mesh phase shifter loss (default: tuning technology loss)", SIPMAC_NUM(c.weight_ps_il_db));
  num("mzm.stage_multiplicity", Family::Count, Check::AtLeastOne,
      "phase shifters and couplers per mesh depth step", SIPMAC_INT(c.mzm.mesh_stage_multiplicity));
  num("mzm.il_penalty", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.mzm.il_penalty_db));
  num("mzm.laser_power", Family::Dbm, Check::Any, "", SIPMAC_NUM(c.mzm.laser_rated_power_dbm));
  num("mzm.max_afe_input", Family::Dbm, Check::Any, "", SIPMAC_NUM(c.mzm.max_afe_input_dbm));

  num("mrr.wpe", Family::Plain, Check::UnitInterval, "", SIPMAC_NUM(c.mrr.wpe));
  num("mrr.il_smf", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.mrr.il_smf_db));
  num("mrr.il_ec", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.mrr.il_ec_db));
  num("mrr.il_wg", Family::DbPerMm, Check::NonNegative, "", SIPMAC_NUM(c.mrr.il_wg_db_per_mm));
  num("mrr.el_splitter", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.mrr.el_splitter_db));
  num("mrr.il_mrm", Family::Db, Check::NonNegative, "input modulator ring loss",
      SIPMAC_NUM(c.mrr.il_mrm_db));
  num("mrr.obl_mrm", Family::Db, Check::NonNegative, "modulator out-of-band loss",
      SIPMAC_NUM(c.mrr.obl_mrm_db));
  num("mrr.il_mrr", Family::Db, Check::NonNegative, "weight ring loss", SIPMAC_NUM(c.mrr.il_mrr_db));
  num("mrr.obl_mrr", Family::Db, Check::NonNegative, "weight ring out-of-band loss",
      SIPMAC_NUM(c.mrr.obl_mrr_db));
  num("mrr.d_mrr", Family::Length, Check::Positive, "ring center-to-center pitch",
      [](SimConfig& c, double v) { c.mrr.d_mrr_um = v * 1e6; });
  num("mrr.il_penalty", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.mrr.il_penalty_db));
  num("mrr.laser_power", Family::Dbm, Check::Any, "", SIPMAC_NUM(c.mrr.laser_rated_power_dbm));
  num("mrr.max_afe_input", Family::Dbm, Check::Any, "", SIPMAC_NUM(c.mrr.max_afe_input_dbm));
  num("mrr.fsr", Family::Length, Check::Positive, "ring free spectral range",
      [](SimConfig& c, double v) { c.mrr.fsr_nm = v * 1e9; });
  num("mrr.channel_spacing", Family::Length, Check::Positive, "WDM channel spacing",
      [](SimConfig& c, double v) { c.mrr.channel_spacing_nm = v * 1e9; });

  num("tuning.tops_p_pi", Family::Power, Check::NonNegative, "heater power per pi shift",
      SIPMAC_NUM(c.tuning_catalog.tops_p_pi_w));
  num("tuning.tops_insulated_p_pi", Family::Power, Check::NonNegative,
      "insulated heater power per pi shift", SIPMAC_NUM(c.tuning_catalog.tops_insulated_p_pi_w));
  num("tuning.tops_p_fsr", Family::Power, Check::NonNegative, "ring heater power per FSR",
      SIPMAC_NUM(c.tuning_catalog.tops_p_fsr_w));
  num("tuning.tops_insulated_p_fsr", Family::Power, Check::NonNegative,
      "insulated ring heater power per FSR", SIPMAC_NUM(c.tuning_catalog.tops_insulated_p_fsr_w));
  num("tuning.tops_il", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.tuning_catalog.tops_il_db));
  num("tuning.noems_energy", Family::Energy, Check::NonNegative, "energy per NOEMS update",
      SIPMAC_NUM(c.tuning_catalog.noems_energy_j));
  num("tuning.noems_il", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.tuning_catalog.noems_il_db));
  num("tuning.lcos_power", Family::Power, Check::NonNegative, "LCOS hold power per element",
      SIPMAC_NUM(c.tuning_catalog.lcos_power_w));
  num("tuning.lcos_il", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.tuning_catalog.lcos_il_db));
  num("tuning.pcm_il", Family::Db, Check::NonNegative, "", SIPMAC_NUM(c.tuning_catalog.pcm_il_db));

  for (int b = 1; b <= 4; ++b) {
    const auto i = static_cast<std::size_t>(b - 1);
    num("driver.mzm_" + std::to_string(b) + "b", Family::Energy, Check::NonNegative,
        "MZM driver energy per symbol", [i](SimConfig& c, double v) { c.drivers.mzm_driver_j[i] = v; });
  }
  for (int b = 1; b <= 4; ++b) {
    const auto i = static_cast<std::size_t>(b - 1);
    num("driver.mrm_" + std::to_string(b) + "b", Family::Energy, Check::NonNegative,
        "MRM driver energy per symbol", [i](SimConfig& c, double v) { c.drivers.mrm_driver_j[i] = v; });
  }
  num("afe.binary", Family::Energy, Check::NonNegative, "binary receiver energy per bit",
      SIPMAC_NUM(c.drivers.binary_afe_j));
  num("afe.tia", Family::Energy, Check::NonNegative, "linear TIA energy per sample",
      SIPMAC_NUM(c.drivers.linear_tia_j));
  for (int b = 2; b <= 4; ++b) {
    const auto i = static_cast<std::size_t>(b - 2);
    num("afe.adc_" + std::to_string(b) + "b", Family::Energy, Check::NonNegative,
        "ADC energy per conversion", [i](SimConfig& c, double v) { c.drivers.adc_j[i] = v; });
  }
  num("mem_interface_power", Family::Power, Check::NonNegative, "memory interface power (x2)",
      SIPMAC_NUM(c.drivers.mem_interface_w));
  num("mrm_control_power", Family::Power, Check::NonNegative, "MRM lock power per ring",
      SIPMAC_NUM(c.drivers.mrm_control_w));

  num("soa.gain", Family::Db, Check::Positive, "gain per SOA", SIPMAC_NUM(c.soa.gain_db));
  num("soa.n_sp", Family::Plain, Check::AtLeastOne, "spontaneous emission factor",
      SIPMAC_NUM(c.soa.n_sp));
  num("soa.power", Family::Power, Check::NonNegative, "electrical power per SOA",
      SIPMAC_NUM(c.soa.electrical_power_w));
  return s;
}

#undef SIPMAC_NUM
#undef SIPMAC_INT

const std::vector<KeySpec>& specs() {
  static const std::vector<KeySpec> table = build_specs();
  return table;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

void apply_line(SimConfig& cfg, std::string_view line, int line_no) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(ConfigError::Kind::Parse, std::string(trim(line)),
                      "line " + std::to_string(line_no) + ": expected `key = value`");
  }
  const std::string key(trim(line.substr(0, eq)));
  const std::string_view rhs = trim(line.substr(eq + 1));
  if (key.empty()) {
    throw ConfigError(ConfigError::Kind::Parse, "<empty>",
                      "line " + std::to_string(line_no) + ": missing key");
  }
  const KeySpec* spec = nullptr;
  for (const auto& s : specs()) {
    if (s.key == key) {
      spec = &s;
      break;
    }
  }
  if (!spec) throw ConfigError(ConfigError::Kind::Parse, key, "unknown key");
  if (rhs.empty()) throw ConfigError(ConfigError::Kind::Parse, key, "missing value");

  if (spec->family == Family::Text) {
    spec->set_text(cfg, rhs);
    return;
  }

  double value = 0.0;
  const char* first = rhs.data();
  const char* last = rhs.data() + rhs.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr == first) {
    throw ConfigError(ConfigError::Kind::Parse, key, "malformed number `" + std::string(rhs) + "`");
  }
  const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));

  if (spec->family == Family::Plain || spec->family == Family::Count) {
    if (!unit.empty()) {
      throw ConfigError(ConfigError::Kind::Parse, key,
                        "takes a plain number, got unit `" + std::string(unit) + "`");
    }
    if (spec->family == Family::Count && value != std::floor(value)) {
      throw ConfigError(ConfigError::Kind::Parse, key, "expected an integer");
    }
  } else {
    const auto& units = unit_table(spec->family);
    if (unit.empty()) {
      throw ConfigError(ConfigError::Kind::Parse, key,
                        "missing unit (one of " + family_units(spec->family) + ")");
    }
    auto it = units.find(unit);
    if (it == units.end()) {
      throw ConfigError(ConfigError::Kind::Parse, key,
                        "unknown unit `" + std::string(unit) + "` (one of " +
                            family_units(spec->family) + ")");
    }
    value *= it->second;
  }
  check_value(key, spec->check, value);
  spec->set_number(cfg, value);
}

}  // namespace

SimConfig load_config(std::string_view text, const SimConfig& base) {
  SimConfig cfg = base;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    apply_line(cfg, line, line_no);
  }
  validate(cfg);
  return cfg;
}

SimConfig load_config_file(const std::filesystem::path& path, const SimConfig& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(ConfigError::Kind::Parse, path.string(), "cannot open config file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str(), base);
}

SimConfig default_config() {
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return load_config_file(env);
  return SimConfig{};
}

void validate(const SimConfig& cfg) {
  auto fail = [](const char* key, const std::string& what) {
    throw ConfigError(ConfigError::Kind::Validation, key, what);
  };
  if (cfg.n < 1) fail("n", "must be >= 1");
  if (cfg.bits < 1 || cfg.bits > 6) fail("bits", "resolution must lie in [1, 6] bits");
  if (cfg.rho_opt < 1.0) fail("rho_opt", "must be >= 1");
  if (cfg.rho_opt > cfg.n) fail("rho_opt", "cannot exceed the network size n");
  if (cfg.weight_reuse < 1.0) fail("weight_reuse", "must be >= 1");
  if (cfg.soa_count < 0 || cfg.soa_count > 2) fail("soa_count", "at most 2 SOAs can be chained");
  if (cfg.noise.electrical_bandwidth() <= 0.0) fail("electrical_bandwidth", "must be > 0");
  if (!(cfg.mzm.wpe > 0.0 && cfg.mzm.wpe <= 1.0)) fail("mzm.wpe", "must lie in (0, 1]");
  if (!(cfg.mrr.wpe > 0.0 && cfg.mrr.wpe <= 1.0)) fail("mrr.wpe", "must lie in (0, 1]");
  if (cfg.mrr.fsr_nm && cfg.mrr.channel_spacing_nm &&
      !(*cfg.mrr.fsr_nm > *cfg.mrr.channel_spacing_nm)) {
    fail("mrr.fsr", "must exceed mrr.channel_spacing");
  }
  for (std::size_t i = 1; i < cfg.drivers.mzm_driver_j.size(); ++i) {
    if (cfg.drivers.mzm_driver_j[i] < cfg.drivers.mzm_driver_j[i - 1]) {
      fail("driver.mzm_4b", "energies must not decrease with resolution");
    }
    if (cfg.drivers.mrm_driver_j[i] < cfg.drivers.mrm_driver_j[i - 1]) {
      fail("driver.mrm_4b", "energies must not decrease with resolution");
    }
  }
}

const std::vector<ConfigKeyInfo>& config_keys() {
  static const std::vector<ConfigKeyInfo> keys = [] {
    std::vector<ConfigKeyInfo> out;
    for (const auto& s : specs()) out.push_back({s.key, family_units(s.family), s.description});
    return out;
  }();
  return keys;
}

}  // namespace sipmac
