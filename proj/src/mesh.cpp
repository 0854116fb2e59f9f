#include "sipmac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sipmac/errors.hpp"
#include "sipmac/units.hpp"

namespace sipmac {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Right-multiplies columns (m, m+1) of `u` by t^H.
void apply_right_inverse(CMatrix& u, int m, const Eigen::Matrix2cd& t) {
  const Eigen::Matrix2cd th = t.adjoint();
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    const Complex a = u(r, m);
    const Complex b = u(r, m + 1);
    u(r, m) = a * th(0, 0) + b * th(1, 0);
    u(r, m + 1) = a * th(0, 1) + b * th(1, 1);
  }
}

// Left-multiplies rows (m, m+1) of `u` by t.
void apply_left(CMatrix& u, int m, const Eigen::Matrix2cd& t) {
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    const Complex a = u(m, c);
    const Complex b = u(m + 1, c);
    u(m, c) = t(0, 0) * a + t(0, 1) * b;
    u(m + 1, c) = t(1, 0) * a + t(1, 1) * b;
  }
}

void apply_to_field(CVector& v, int m, const Eigen::Matrix2cd& t) {
  const Complex a = v(m);
  const Complex b = v(m + 1);
  v(m) = t(0, 0) * a + t(0, 1) * b;
  v(m + 1) = t(1, 0) * a + t(1, 1) * b;
}

struct Commuted {
  double theta;
  double phi;
  Complex e1;
  Complex e2;
};

// Rewrites T(theta, phi)^H * diag(d1, d2) as diag(e1, e2) * T(theta', phi').
Commuted commute_through_diagonal(double theta, double phi, Complex d1, Complex d2) {
  Eigen::Matrix2cd m = tbs_transfer(theta, phi).adjoint();
  m.col(0) *= d1;
  m.col(1) *= d2;

  const double s_mag = std::abs(m(0, 0));
  const double c_mag = std::abs(m(0, 1));
  const double t = 2.0 * std::atan2(s_mag, c_mag);
  const double s = std::sin(t / 2.0);
  const double c = std::cos(t / 2.0);
  const Complex g = kI * std::exp(Complex(0.0, t / 2.0));

  constexpr double kTiny = 1e-13;
  Complex e1g;
  Complex e2g;
  double p = 0.0;
  if (s < kTiny) {
    e1g = m(0, 1);
    e2g = m(1, 0);
  } else if (c < kTiny) {
    e1g = m(0, 0);
    e2g = -m(1, 1);
  } else {
    e1g = m(0, 1) / c;
    p = std::arg(m(0, 0) / (s * e1g));
    e2g = -m(1, 1) / s;
  }
  return {t, wrap_angle(p), e1g / g, e2g / g};
}

}  // namespace

Eigen::Matrix2cd tbs_transfer(double theta, double phi) {
  const double s = std::sin(theta / 2.0);
  const double c = std::cos(theta / 2.0);
  const Complex g = kI * std::exp(Complex(0.0, theta / 2.0));
  const Complex ep = std::exp(Complex(0.0, phi));
  Eigen::Matrix2cd t;
  t << g * ep * s, g * c, g * ep * c, -g * s;
  return t;
}

Eigen::Matrix2cd tbs_transfer_imbalanced(double theta, double phi, double alpha1, double alpha2) {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd bs;
  bs << h, kI * h, kI * h, h;
  Eigen::Matrix2cd arms = Eigen::Matrix2cd::Zero();
  arms(0, 0) = std::sqrt(alpha1) * std::exp(Complex(0.0, theta));
  arms(1, 1) = std::sqrt(alpha2);
  Eigen::Matrix2cd ext = Eigen::Matrix2cd::Identity();
  ext(0, 0) = std::exp(Complex(0.0, phi));
  return bs * arms * bs * ext;
}

std::vector<int> node_columns(const ClementsProgram& program) {
  std::vector<int> last(static_cast<std::size_t>(std::max(program.n, 0)), -1);
  std::vector<int> cols;
  cols.reserve(program.nodes.size());
  for (const auto& node : program.nodes) {
    auto& a = last[static_cast<std::size_t>(node.m)];
    auto& b = last[static_cast<std::size_t>(node.m + 1)];
    const int col = std::max(a, b) + 1;
    a = b = col;
    cols.push_back(col);
  }
  return cols;
}

int optical_depth(const ClementsProgram& program) {
  const auto cols = node_columns(program);
  if (cols.empty()) return 0;
  return *std::max_element(cols.begin(), cols.end()) + 1;
}

ClementsProgram clements_decompose(const CMatrix& u_in, double unitarity_tol) {
  if (u_in.rows() != u_in.cols()) {
    throw std::invalid_argument("clements_decompose: matrix is " + std::to_string(u_in.rows()) +
                                "x" + std::to_string(u_in.cols()) + ", expected square");
  }
  const int n = static_cast<int>(u_in.rows());
  if (n == 0) throw std::invalid_argument("clements_decompose: empty matrix");
  const double err = (u_in.adjoint() * u_in - CMatrix::Identity(n, n)).norm();
  if (!(err <= unitarity_tol)) {
    throw std::invalid_argument("clements_decompose: matrix is not unitary (||U^H U - I||_F = " +
                                std::to_string(err) + ")");
  }

  CMatrix u = u_in;
  std::vector<TbsNode> right;  // applied to the input side, in order
  std::vector<TbsNode> left;   // peeled off the output side, in order

  for (int i = 0; i < n - 1; ++i) {
    if (i % 2 == 0) {
      for (int j = 0; j <= i; ++j) {
        const int r = n - 1 - j;
        const int m = i - j;
        const Complex a = u(r, m);
        const Complex b = u(r, m + 1);
        double theta = 0.0;
        double phi = 0.0;
        if (std::abs(a) == 0.0) {
          theta = std::numbers::pi;
        } else if (std::abs(b) != 0.0) {
          theta = 2.0 * std::atan(std::abs(b) / std::abs(a));
          phi = wrap_angle(std::arg(-a / b));
        }
        apply_right_inverse(u, m, tbs_transfer(theta, phi));
        right.push_back({m, theta, phi});
      }
    } else {
      for (int j = 1; j <= i + 1; ++j) {
        const int m = n + j - i - 3;
        const int col = j - 1;
        const Complex a = u(m, col);
        const Complex b = u(m + 1, col);
        double theta = 0.0;
        double phi = 0.0;
        if (std::abs(b) == 0.0) {
          theta = std::numbers::pi;
        } else if (std::abs(a) != 0.0) {
          theta = 2.0 * std::atan(std::abs(a) / std::abs(b));
          phi = wrap_angle(std::arg(b) - std::arg(a));
        }
        apply_left(u, m, tbs_transfer(theta, phi));
        left.push_back({m, theta, phi});
      }
    }
  }

  // u is now diagonal: U = L_1^H ... L_K^H * D * R_m ... R_1. Move every
  // L^H to the right of D, innermost first.
  std::vector<Complex> d(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) d[static_cast<std::size_t>(k)] = u(k, k);

  std::vector<TbsNode> moved;
  moved.reserve(left.size());
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    auto& d1 = d[static_cast<std::size_t>(it->m)];
    auto& d2 = d[static_cast<std::size_t>(it->m + 1)];
    const Commuted c = commute_through_diagonal(it->theta, it->phi, d1, d2);
    d1 = c.e1;
    d2 = c.e2;
    moved.push_back({it->m, c.theta, c.phi});
  }

  ClementsProgram program;
  program.n = n;
  program.nodes = std::move(right);
  // The node commuted last sits next to D, so it is applied last.
  program.nodes.insert(program.nodes.end(), moved.begin(), moved.end());
  program.output_phases.reserve(static_cast<std::size_t>(n));
  for (const auto& z : d) program.output_phases.push_back(wrap_angle(std::arg(z)));
  return program;
}

CMatrix clements_reconstruct(const ClementsProgram& program) {
  const int n = program.n;
  CMatrix m = CMatrix::Identity(n, n);
  for (const auto& node : program.nodes) apply_left(m, node.m, tbs_transfer(node.theta, node.phi));
  for (int k = 0; k < n; ++k) {
    m.row(k) *= std::exp(Complex(0.0, program.output_phases[static_cast<std::size_t>(k)]));
  }
  return m;
}

CMatrix haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix z(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) z(r, c) = Complex(gauss(rng), gauss(rng)) / std::sqrt(2.0);
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const Complex rk = r(k, k);
    const double mag = std::abs(rk);
    if (mag > 0.0) q.col(k) *= rk / mag;
  }
  return q;
}

CMatrix SvdProgram::realized() const {
  return scale * clements_reconstruct(u) * sigma.cast<Complex>().asDiagonal() *
         clements_reconstruct(v_dagger);
}

SvdProgram svd_program(const CMatrix& w, bool allow_rescale) {
  if (w.rows() != w.cols() || w.rows() == 0) {
    throw std::invalid_argument("svd_program: expected a non-empty square matrix");
  }
  if (!w.allFinite()) throw std::invalid_argument("svd_program: matrix has non-finite entries");
  Eigen::JacobiSVD<CMatrix> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;

  SvdProgram out;
  if (top > 1.0) {
    if (!allow_rescale) {
      throw InfeasibleError("svd_program: largest singular value " + std::to_string(top) +
                            " exceeds 1 and rescaling is disabled");
    }
    out.scale = top;
  }
  out.sigma = sv / out.scale;
  out.u = clements_decompose(svd.matrixU(), 1e-9);
  out.v_dagger = clements_decompose(svd.matrixV().adjoint(), 1e-9);
  return out;
}

CVector propagate_field(const ClementsProgram& program, const MeshLossModel& loss,
                        const CVector& input) {
  if (input.size() != program.n) {
    throw std::invalid_argument("propagate: input has " + std::to_string(input.size()) +
                                " entries, mesh has " + std::to_string(program.n) + " ports");
  }
  const auto cols = node_columns(program);
  const int packed = cols.empty() ? 0 : *std::max_element(cols.begin(), cols.end()) + 1;
  // A rectangular mesh has n columns even where a column holds no node.
  const int depth = std::max(packed, program.n > 1 ? program.n : 0);
  const double amp = std::sqrt(loss_to_transmission(loss.per_column_db()));

  // Greedy packing keeps every node after the nodes it depends on, so
  // applying column by column is the same as applying in program order.
  std::vector<std::vector<std::size_t>> by_col(static_cast<std::size_t>(depth));
  for (std::size_t k = 0; k < cols.size(); ++k) by_col[static_cast<std::size_t>(cols[k])].push_back(k);

  CVector v = input;
  for (const auto& column : by_col) {
    for (auto k : column) {
      const auto& node = program.nodes[k];
      const Eigen::Matrix2cd t =
          loss.arm_imbalance
              ? tbs_transfer_imbalanced(node.theta, node.phi, loss.arm_imbalance->first,
                                        loss.arm_imbalance->second)
              : tbs_transfer(node.theta, node.phi);
      apply_to_field(v, node.m, t);
    }
    v *= amp;
  }
  for (int k = 0; k < program.n; ++k) {
    v(k) *= std::exp(Complex(0.0, program.output_phases[static_cast<std::size_t>(k)]));
  }
  return v;
}

Eigen::VectorXd propagate(const ClementsProgram& program, const MeshLossModel& loss,
                          const CVector& input) {
  return propagate_field(program, loss, input).cwiseAbs2();
}

double imbalance_corrected_theta(double alpha1, double alpha2, double theta1) {
  if (!(alpha2 > 0.0 && alpha2 <= alpha1 && alpha1 <= 1.0)) {
    throw std::invalid_argument("imbalance_corrected_theta: need 0 < alpha2 <= alpha1 <= 1");
  }
  const double rhs =
      ((alpha1 - alpha2) + 2.0 * alpha1 * std::cos(theta1)) / (2.0 * std::sqrt(alpha1 * alpha2));
  if (rhs > 1.0 || rhs < -1.0) {
    throw InfeasibleError("imbalance_corrected_theta: cos(theta) = " + std::to_string(rhs) +
                          " is outside [-1, 1]; the arm imbalance cannot be compensated");
  }
  return std::acos(rhs);
}

}  // namespace sipmac
