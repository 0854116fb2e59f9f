#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's model code.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline constexpr double kQ = 1.602176634e-19;
inline constexpr double kKb = 1.380649e-23;
inline constexpr double kHc = 1.98644586e-25;  // J m

/// Average PCM programming energy (J) by enumerating every ordered pair of
/// levels. Moving up from the lowest level costs a full write plus one write
/// step per extra level; moving up from level i > 0 costs one step per
/// level. Moving down to the lowest level costs a full erase plus one erase
/// step per level above the first; other downward moves cost one erase step
/// per level.
inline double pcm_energy(int bits) {
  const int levels = 1 << bits;
  const double ea = 372e-12;
  const double ec = 373e-12;
  const double dea = bits > 1 ? (601e-12 - 372e-12) / (levels - 2) : 0.0;
  const double dec = bits > 1 ? (562e-12 - 373e-12) / (levels - 2) : 0.0;
  double sum = 0.0;
  for (int from = 0; from < levels; ++from) {
    for (int to = 0; to < levels; ++to) {
      if (to > from) {
        sum += from == 0 ? ea + (to - 1) * dea : (to - from) * dea;
      } else if (to < from) {
        sum += to == 0 ? ec + (from - 1) * dec : (from - to) * dec;
      }
    }
  }
  return sum / (static_cast<double>(levels) * levels);
}

struct Receiver {
  double r = 1.0;
  double rl = 50.0;
  double id = 35e-9;
  double t = 300.0;
  double dr = 10e9;
  double rin_db = -140.0;
};

/// Bits from the detector noise expression, written out directly.
inline double bits(double p, const Receiver& rx) {
  const double rin = std::pow(10.0, rx.rin_db / 10.0);
  const double th = 4.0 * kKb * rx.t / rx.rl;
  const double n1 = std::sqrt(2.0 * kQ * (rx.r * p + rx.id) + th + rx.r * rx.r * p * p * rin);
  const double n2 = std::sqrt(2.0 * kQ * rx.id + th);
  const double noise = (n1 + n2) * std::sqrt(rx.dr / std::sqrt(2.0));
  const double snr_db = 20.0 * std::log10(rx.r * p / noise);
  return (snr_db - 1.76) / 6.02;
}

/// Sensitivity (dBm) by a forward scan: 0.01 dB steps from -60 dBm, then
/// 1e-5 dB steps inside the bracketing interval.
inline double sensitivity_dbm(double n_target, const Receiver& rx) {
  auto b = [&](double dbm) { return bits(1e-3 * std::pow(10.0, dbm / 10.0), rx); };
  double x = -60.0;
  while (b(x) < n_target) x += 0.01;
  double y = x - 0.01;
  while (b(y) < n_target) y += 1e-5;
  return y;
}

/// Upper normal tail by composite Simpson integration of the density.
inline double q(double x) {
  const double pi = 3.14159265358979323846;
  const double upper = std::max(x, 0.0) + 40.0;
  const double lower = x;
  const int steps = 200000;
  const double h = (upper - lower) / steps;
  auto f = [&](double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * pi); };
  double s = f(lower) + f(upper);
  for (int k = 1; k < steps; ++k) s += f(lower + k * h) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double log2_ceil(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

/// Hand summation of the MZM stage losses (dB).
inline double mzm_loss_db(int n, double smf, double ec, double el, double in_mzm, double wg_per_col,
                          double ps_per_step, double dc_per_step, double steps_per_col,
                          double penalty) {
  return smf + ec + 10.0 * std::log10(n) + el * log2_ceil(n) + in_mzm + wg_per_col * n +
         steps_per_col * n * ps_per_step + steps_per_col * n * dc_per_step + penalty;
}

/// Hand summation of the MRR stage losses (dB).
inline double mrr_loss_db(int n, double smf, double ec, double mrm, double obl_mrm, double el,
                          double mrr, double obl_mrr, double wg_db_per_mm, double pitch_mm,
                          double penalty) {
  return smf + ec + mrm + (n - 1) * obl_mrm + 10.0 * std::log10(n) + el * log2_ceil(n) + mrr +
         (n - 1) * obl_mrr + wg_db_per_mm * n * pitch_mm + penalty;
}

using CMat = Eigen::MatrixXcd;

/// N x N embedding of the 2x2 node transfer, written out from the node
/// definition.
inline CMat embedded_node(int n, int m, double theta, double phi) {
  const std::complex<double> i(0.0, 1.0);
  const auto g = i * std::exp(i * (theta / 2.0));
  const auto e = std::exp(i * phi);
  CMat t = CMat::Identity(n, n);
  t(m, m) = g * e * std::sin(theta / 2.0);
  t(m, m + 1) = g * std::cos(theta / 2.0);
  t(m + 1, m) = g * e * std::cos(theta / 2.0);
  t(m + 1, m + 1) = -g * std::sin(theta / 2.0);
  return t;
}

struct Node {
  int m;
  double theta;
  double phi;
};

/// D * T_K * ... * T_1 as a dense product of embedded factors.
inline CMat mesh_product(int n, const std::vector<Node>& nodes, const std::vector<double>& phases) {
  CMat m = CMat::Identity(n, n);
  for (const auto& node : nodes) m = embedded_node(n, node.m, node.theta, node.phi) * m;
  CMat d = CMat::Zero(n, n);
  for (int k = 0; k < n; ++k) d(k, k) = std::exp(std::complex<double>(0.0, phases[k]));
  return d * m;
}

/// Singular values from the eigenvalues of W^H W, descending.
inline Eigen::VectorXd singular_values(const CMat& w) {
  Eigen::SelfAdjointEigenSolver<CMat> es(w.adjoint() * w);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return ev.reverse();
}

}  // namespace oracle
