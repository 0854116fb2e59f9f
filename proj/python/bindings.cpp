#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>

#include "sipmac/catalog.hpp"
#include "sipmac/cli.hpp"
#include "sipmac/config.hpp"
#include "sipmac/energy.hpp"
#include "sipmac/errors.hpp"
#include "sipmac/figures.hpp"
#include "sipmac/link_budget.hpp"
#include "sipmac/mesh.hpp"
#include "sipmac/noise.hpp"
#include "sipmac/report.hpp"
#include "sipmac/scaling.hpp"

namespace py = pybind11;
using namespace sipmac;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) {
  return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Architecture arch_arg(const std::string& s) {
  auto a = parse_architecture(s);
  if (!a) throw std::invalid_argument("unknown architecture `" + s + "`");
  return *a;
}

TuningKind tuning_arg(const std::string& s) {
  auto t = parse_tuning_kind(s);
  if (!t) throw std::invalid_argument("unknown tuning technology `" + s + "`");
  return *t;
}

}  // namespace

PYBIND11_MODULE(_sipmac, m) {
  m.doc() = "Silicon-photonic MAC accelerator models";

  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
  py::register_exception<UnreachableTarget>(m, "UnreachableTarget", PyExc_RuntimeError);
  (void)config_error;

  py::class_<SimConfig>(m, "Config")
      .def(py::init<>())
      .def_static("from_text", [](const std::string& text) { return load_config(text); },
                  py::arg("text"))
      .def_static("from_file", [](const std::string& path) { return load_config_file(path); },
                  py::arg("path"))
      .def_static("default", &default_config)
      .def("updated", [](const SimConfig& c, const std::string& text) { return load_config(text, c); },
           py::arg("text"), "Copy with `key = value unit` lines applied")
      .def_property(
          "arch", [](const SimConfig& c) { return std::string(to_string(c.arch)); },
          [](SimConfig& c, const std::string& s) { c.arch = arch_arg(s); })
      .def_property(
          "tuning", [](const SimConfig& c) { return std::string(to_string(c.tuning)); },
          [](SimConfig& c, const std::string& s) { c.tuning = tuning_arg(s); })
      .def_readwrite("n", &SimConfig::n)
      .def_readwrite("bits", &SimConfig::bits)
      .def_readwrite("soa_count", &SimConfig::soa_count)
      .def_readwrite("rho_opt", &SimConfig::rho_opt)
      .def_readwrite("weight_reuse", &SimConfig::weight_reuse)
      .def_property(
          "responsivity", [](const SimConfig& c) { return c.noise.responsivity_a_per_w; },
          [](SimConfig& c, double v) { c.noise.responsivity_a_per_w = v; })
      .def_property(
          "data_rate", [](const SimConfig& c) { return c.noise.data_rate_sps; },
          [](SimConfig& c, double v) { c.noise.data_rate_sps = v; })
      .def("validate", [](const SimConfig& c) { validate(c); })
      .def("to_dict", [](const SimConfig& c) { return to_py(to_json(c)); })
      .def("__repr__", [](const SimConfig& c) {
        std::ostringstream s;
        s << "Config(arch=" << to_string(c.arch) << ", n=" << c.n << ", bits=" << c.bits
          << ", tuning=" << to_string(c.tuning) << ")";
        return s.str();
      });

  m.def("config_keys", [] {
    py::list out;
    for (const auto& k : config_keys()) out.append(py::make_tuple(k.key, k.unit, k.description));
    return out;
  });

  m.def("link_budget",
        [](const SimConfig& c, int n, double laser_dbm) { return to_py(to_json(link_budget(c, n, laser_dbm))); },
        py::arg("config"), py::arg("n"), py::arg("laser_dbm") = 0.0);
  m.def("splitter_loss", &splitter_loss, py::arg("n"), py::arg("el_splitter_db"));

  m.def("bit_resolution",
        [](double p_w, const SimConfig& c) { return to_py(to_json(bit_resolution(p_w, c.noise))); },
        py::arg("power_w"), py::arg("config"));
  m.def("afe_sensitivity", [](double bits, const SimConfig& c) { return afe_sensitivity(bits, c.noise); },
        py::arg("bits"), py::arg("config"), "Smallest received power (W) reaching `bits`");
  m.def("q_function", &q_function);
  m.def("snr_to_bits", &snr_to_bits);
  m.def("rho_ase", &rho_ase, py::arg("soa_count"), py::arg("n_sp"), py::arg("wavelength_m"),
        py::arg("gain_linear"));

  m.def("energy_per_op",
        [](const SimConfig& c, std::optional<int> n) { return to_py(to_json(energy_per_op(c, n.value_or(c.n)))); },
        py::arg("config"), py::arg("n") = py::none());
  m.def("pcm_average_energy", &pcm_average_energy, py::arg("bits"));
  m.def("cmos_mac_baseline", &cmos_mac_baseline);
  m.def("throughput_ratio", &throughput_ratio, py::arg("n"), py::arg("alpha"), py::arg("f_opt_hz"),
        py::arg("f_cmos_hz"));

  m.def("scaling_limit",
        [](const SimConfig& c, std::optional<double> bits) {
          return to_py(to_json(scaling_limit(c, bits.value_or(c.bits))));
        },
        py::arg("config"), py::arg("bits") = py::none());
  m.def("optimum_network", [](const SimConfig& c) {
    const auto r = optimum_network(c);
    Json j = to_json(r.limit);
    j["n_opt"] = r.n_opt;
    j["energy_at_optimum"] = to_json(r.energy);
    return to_py(j);
  });
  m.def("soa_plan",
        [](const SimConfig& c, int n, double bits) { return to_py(to_json(soa_plan(c, n, bits))); },
        py::arg("config"), py::arg("n"), py::arg("bits"));
  m.def("soa_scaling_limit", &soa_scaling_limit, py::arg("config"), py::arg("bits"),
        py::arg("soa_count"));
  m.def("fsr_channel_limit", &fsr_channel_limit, py::arg("fsr_nm"), py::arg("spacing_nm"));

  m.def("haar_unitary",
        [](int n, std::uint64_t seed) {
          std::mt19937_64 rng(seed);
          return haar_unitary(n, rng);
        },
        py::arg("n"), py::arg("seed") = 0);
  m.def("clements_decompose",
        [](const CMatrix& u) { return to_py(program_to_json(clements_decompose(u))); }, py::arg("u"));
  m.def("clements_reconstruct",
        [](const py::object& program) { return clements_reconstruct(program_from_json(from_py(program))); },
        py::arg("program"));
  m.def("propagate",
        [](const py::object& program, const CVector& input, double ps_loss_db, double dc_loss_db) {
          return propagate(program_from_json(from_py(program)), MeshLossModel{ps_loss_db, dc_loss_db, {}}, input);
        },
        py::arg("program"), py::arg("input"), py::arg("ps_loss_db") = 0.0, py::arg("dc_loss_db") = 0.0);

  m.def("figure_ids", &figure_ids);
  m.def("figure_csv",
        [](const std::string& id, const SimConfig& c) { return emit_figure_data(id, c).to_csv(); },
        py::arg("id"), py::arg("config") = SimConfig{});

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out;
          std::ostringstream err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one CLI command in-process; returns (exit_code, stdout, stderr)");
}
