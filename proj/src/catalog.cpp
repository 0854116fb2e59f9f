#include "sipmac/catalog.hpp"

#include <stdexcept>
#include <string>

namespace sipmac {

std::string_view to_string(Architecture arch) {
  switch (arch) {
    case Architecture::Mzm: return "mzm";
    case Architecture::Mrr: return "mrr";
  }
  return "?";
}

std::string_view to_string(TuningKind kind) {
  switch (kind) {
    case TuningKind::TopsPlain: return "tops";
    case TuningKind::TopsInsulated: return "tops_insulated";
    case TuningKind::Noems: return "noems";
    case TuningKind::Lcos: return "lcos";
    case TuningKind::Pcm: return "pcm";
  }
  return "?";
}

std::string_view to_string(SoaPlacement placement) {
  switch (placement) {
    case SoaPlacement::WeightInput: return "weight_input";
    case SoaPlacement::Output: return "output";
  }
  return "?";
}

std::optional<Architecture> parse_architecture(std::string_view text) {
  if (text == "mzm" || text == "MZM") return Architecture::Mzm;
  if (text == "mrr" || text == "MRR" || text == "mrm" || text == "MRM") return Architecture::Mrr;
  return std::nullopt;
}

std::optional<TuningKind> parse_tuning_kind(std::string_view text) {
  for (auto kind : kAllTuningKinds) {
    if (text == to_string(kind)) return kind;
  }
  if (text == "tops_plain") return TuningKind::TopsPlain;
  return std::nullopt;
}

std::optional<SoaPlacement> parse_soa_placement(std::string_view text) {
  if (text == "weight_input") return SoaPlacement::WeightInput;
  if (text == "output") return SoaPlacement::Output;
  return std::nullopt;
}

double pcm_average_energy(int bits) {
  if (bits < 1 || bits > 4) {
    throw std::invalid_argument("pcm_average_energy: resolution must be 1..4 bits, got " +
                                std::to_string(bits));
  }
  // Write (amorphization) and erase (crystallization) pulse energies of the
  // first level, and the spread up to the last level.
  constexpr double kWriteFirst = 372e-12;
  constexpr double kWriteLast = 601e-12;
  constexpr double kEraseFirst = 373e-12;
  constexpr double kEraseLast = 562e-12;

  const double levels = std::ldexp(1.0, bits);  // 2^n
  const double pairs = levels * levels;         // 2^2n
  const double first_coeff = (levels - 1.0) / pairs;
  const double step_coeff = ((pairs - 1.0) * (levels / 2.0) / 3.0 - (levels - 1.0)) / pairs;

  // The step coefficient vanishes at n = 1, where the per-step increments
  // are undefined (2^n - 2 = 0).
  double steps = 0.0;
  if (bits > 1) {
    steps = (kWriteLast - kWriteFirst) / (levels - 2.0) + (kEraseLast - kEraseFirst) / (levels - 2.0);
  }
  return first_coeff * (kWriteFirst + kEraseFirst) + step_coeff * steps;
}

double TuningCatalog::insertion_loss_db(TuningKind kind) const {
  switch (kind) {
    case TuningKind::TopsPlain:
    case TuningKind::TopsInsulated: return tops_il_db;
    case TuningKind::Noems: return noems_il_db;
    case TuningKind::Lcos: return lcos_il_db;
    case TuningKind::Pcm: return pcm_il_db;
  }
  return 0.0;
}

TuningTechnology TuningCatalog::resolve(TuningKind kind, Architecture arch, int bits,
                                        double weight_reuse) const {
  TuningTechnology t;
  t.kind = kind;
  t.insertion_loss_db = insertion_loss_db(kind);
  switch (kind) {
    case TuningKind::TopsPlain:
      t.static_power_w = arch == Architecture::Mzm ? tops_p_pi_w : tops_p_fsr_w;
      break;
    case TuningKind::TopsInsulated:
      t.static_power_w = arch == Architecture::Mzm ? tops_insulated_p_pi_w : tops_insulated_p_fsr_w;
      break;
    case TuningKind::Noems:
      t.dynamic_energy_per_update_j = noems_energy_j;
      t.weight_reuse = weight_reuse;
      break;
    case TuningKind::Lcos:
      t.static_power_w = lcos_power_w;
      t.weight_reuse = weight_reuse;
      break;
    case TuningKind::Pcm:
      t.dynamic_energy_per_update_j = pcm_average_energy(bits);
      t.weight_reuse = weight_reuse;
      break;
  }
  return t;
}

double DriverAfeCatalog::driver_energy(Architecture arch, int bits) const {
  if (bits < 1 || bits > 4) {
    throw std::invalid_argument("no driver energy figure for " + std::to_string(bits) + " bits");
  }
  const auto& table = arch == Architecture::Mzm ? mzm_driver_j : mrm_driver_j;
  return table[static_cast<std::size_t>(bits - 1)];
}

double DriverAfeCatalog::afe_energy(int bits) const {
  if (bits < 1 || bits > 4) {
    throw std::invalid_argument("no AFE energy figure for " + std::to_string(bits) + " bits");
  }
  if (bits == 1) return binary_afe_j;
  return linear_tia_j + adc_j[static_cast<std::size_t>(bits - 2)];
}

TuningTechnology SimConfig::tuning_technology() const {
  return tuning_catalog.resolve(tuning, arch, bits, weight_reuse);
}

MzmTechParams SimConfig::mzm_effective() const {
  MzmTechParams t = mzm;
  t.weight_ps_il_db = weight_ps_il_db.value_or(tuning_catalog.insertion_loss_db(tuning));
  return t;
}

}  // namespace sipmac
