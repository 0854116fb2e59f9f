#pragma once

// Receiver noise model: bit resolution from received optical power, its
// inverse, the binary error probability and the SNR of an SOA-amplified link.

#include "sipmac/catalog.hpp"

namespace sipmac {

struct ResolutionResult {
  /// Fractional bits; -inf when no signal reaches the detector.
  double bits = 0.0;
  double snr_db = 0.0;
  double signal_current_a = 0.0;
  double noise_current_a = 0.0;

  bool achievable() const { return bits > 0.0; }
};

/// Noise current densities (A^2/Hz) of the detector branch, before the
/// bandwidth factor.
struct NoiseTerms {
  double shot = 0.0;
  double thermal = 0.0;
  double rin = 0.0;
  double dark_shot = 0.0;
};

/// Upper tail of the standard normal distribution.
double q_function(double x);

/// (snr_db - 1.76) / 6.02
double snr_to_bits(double snr_db);
double bits_to_snr(double bits);

NoiseTerms noise_terms(double p_opt_w, const NoiseParams& ctx);

ResolutionResult bit_resolution(double p_opt_w, const NoiseParams& ctx);

/// Smallest received power reaching n_target bits, bracketed on
/// [1 pW, 100 mW] and narrowed to 0.001 dB. Throws UnreachableTarget when the
/// upper end of the bracket falls short.
double afe_sensitivity(double n_target, const NoiseParams& ctx);

/// Input-referred noise current; defaults to the zero-signal noise floor.
double input_referred_noise(const NoiseParams& ctx);

/// Q((P / rho_opt) * R / (2 i_irn)).
double binary_error_prob(double p_opt_out_w, double rho_opt, const NoiseParams& ctx);

/// ASE spectral density 2 N_SOA n_sp (h c / lambda) (G - 1), G linear.
double rho_ase(int soa_count, double n_sp, double wavelength_m, double gain_linear);

struct SoaChainSpec {
  int count = 0;
  /// Signal gain of the whole chain (linear).
  double gain = 1.0;
  double rho_ase_w_per_hz = 0.0;
};

/// SNR (dB) of an amplified link; p_out_w is the detector power before gain.
double soa_snr(double p_out_w, const SoaChainSpec& chain, const NoiseParams& ctx);

}  // namespace sipmac
