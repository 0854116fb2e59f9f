#include "sipmac/noise.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sipmac/errors.hpp"
#include "sipmac/units.hpp"

namespace sipmac {
namespace {

using constants::kBoltzmann;
using constants::kElementaryCharge;

double bandwidth_factor(const NoiseParams& ctx) {
  return std::sqrt(ctx.data_rate_sps / std::sqrt(2.0));
}

double floor_density(const NoiseParams& ctx) {
  return 2.0 * kElementaryCharge * ctx.dark_current_a +
         4.0 * kBoltzmann * ctx.temperature_k / ctx.load_resistance_ohm;
}

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double snr_to_bits(double snr_db) { return (snr_db - 1.76) / 6.02; }

double bits_to_snr(double bits) { return bits * 6.02 + 1.76; }

NoiseTerms noise_terms(double p_opt_w, const NoiseParams& ctx) {
  const double r = ctx.responsivity_a_per_w;
  NoiseTerms t;
  t.shot = 2.0 * kElementaryCharge * (r * p_opt_w + ctx.dark_current_a);
  t.thermal = 4.0 * kBoltzmann * ctx.temperature_k / ctx.load_resistance_ohm;
  t.rin = r * r * p_opt_w * p_opt_w * ctx.rin_linear();
  t.dark_shot = 2.0 * kElementaryCharge * ctx.dark_current_a;
  return t;
}

ResolutionResult bit_resolution(double p_opt_w, const NoiseParams& ctx) {
  const NoiseTerms t = noise_terms(p_opt_w, ctx);
  ResolutionResult out;
  out.signal_current_a = ctx.responsivity_a_per_w * p_opt_w;
  out.noise_current_a =
      (std::sqrt(t.shot + t.thermal + t.rin) + std::sqrt(t.dark_shot + t.thermal)) *
      bandwidth_factor(ctx);
  if (!(out.signal_current_a > 0.0)) {
    out.snr_db = -std::numeric_limits<double>::infinity();
    out.bits = -std::numeric_limits<double>::infinity();
    return out;
  }
  out.snr_db = 20.0 * std::log10(out.signal_current_a / out.noise_current_a);
  out.bits = snr_to_bits(out.snr_db);
  return out;
}

double afe_sensitivity(double n_target, const NoiseParams& ctx) {
  double lo = 1e-12;
  double hi = 0.1;
  if (bit_resolution(hi, ctx).bits < n_target) {
    throw UnreachableTarget("afe_sensitivity: " + std::to_string(n_target) +
                            " bits not reachable below 100 mW (RIN-limited ceiling)");
  }
  if (bit_resolution(lo, ctx).bits >= n_target) return lo;
  while (10.0 * std::log10(hi / lo) > 1e-3) {
    const double mid = std::sqrt(lo * hi);
    if (bit_resolution(mid, ctx).bits >= n_target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double input_referred_noise(const NoiseParams& ctx) {
  if (ctx.input_referred_noise_a) return *ctx.input_referred_noise_a;
  return 2.0 * std::sqrt(floor_density(ctx)) * bandwidth_factor(ctx);
}

double binary_error_prob(double p_opt_out_w, double rho_opt, const NoiseParams& ctx) {
  const double arg =
      (p_opt_out_w / rho_opt) * ctx.responsivity_a_per_w / (2.0 * input_referred_noise(ctx));
  return q_function(arg);
}

double rho_ase(int soa_count, double n_sp, double wavelength_m, double gain_linear) {
  const double photon = constants::kPlanck * constants::kSpeedOfLight / wavelength_m;
  return 2.0 * soa_count * n_sp * photon * (gain_linear - 1.0);
}

double soa_snr(double p_out_w, const SoaChainSpec& chain, const NoiseParams& ctx) {
  const double r = ctx.responsivity_a_per_w;
  const double g = chain.gain;
  const double rho = chain.rho_ase_w_per_hz;
  const double be = ctx.electrical_bandwidth();
  const double bo = ctx.optical_bandwidth_hz;
  const double thermal = 4.0 * kBoltzmann * ctx.temperature_k / ctx.load_resistance_ohm;
  const double ase_ase = rho * rho * r * r * (2.0 * bo - be);

  const double signal = r * g * p_out_w;
  const double first = 2.0 * kElementaryCharge * (signal + ctx.dark_current_a) + thermal +
                       2.0 * rho * r * r * g * p_out_w + ase_ase +
                       r * r * p_out_w * p_out_w * ctx.rin_linear();
  const double second = 2.0 * kElementaryCharge * ctx.dark_current_a + thermal + ase_ase;
  const double root = std::sqrt(first) + std::sqrt(second);
  const double snr = signal * signal / (root * root * be);
  if (!(snr > 0.0)) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(snr);
}

}  // namespace sipmac
