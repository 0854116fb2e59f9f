#pragma once

// Rectangular (Clements) MZI meshes: node transfer matrices, unitary
// decomposition and reconstruction, SVD weight programming and lossy
// field propagation.

#include <complex>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace sipmac {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// 2x2 transfer of a tunable beam splitter with internal phase theta and
/// external phase phi:
///   i e^{i theta/2} [[e^{i phi} sin(theta/2),  cos(theta/2)],
///                    [e^{i phi} cos(theta/2), -sin(theta/2)]]
Eigen::Matrix2cd tbs_transfer(double theta, double phi);

/// One node acting on ports (m, m+1).
struct TbsNode {
  int m = 0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Nodes are stored in the order light meets them; the realized matrix is
/// D * T_K * ... * T_1.
struct ClementsProgram {
  int n = 0;
  std::vector<TbsNode> nodes;
  std::vector<double> output_phases;
};

/// Zero-based mesh column of each node when nodes are packed greedily.
std::vector<int> node_columns(const ClementsProgram& program);

/// Number of node columns.
int optical_depth(const ClementsProgram& program);

/// Throws std::invalid_argument for non-square or non-unitary input.
ClementsProgram clements_decompose(const CMatrix& u, double unitarity_tol = 1e-10);

CMatrix clements_reconstruct(const ClementsProgram& program);

/// Haar-distributed random unitary (QR of a complex Gaussian matrix with the
/// phases of R's diagonal divided out).
CMatrix haar_unitary(int n, std::mt19937_64& rng);

/// W = scale * U * diag(sigma) * V^H with the two unitaries programmed as
/// meshes and every sigma in [0, 1].
struct SvdProgram {
  ClementsProgram u;
  Eigen::VectorXd sigma;
  ClementsProgram v_dagger;
  double scale = 1.0;

  /// scale * U * diag(sigma) * V^H.
  CMatrix realized() const;
};

/// Throws InfeasibleError when the largest singular value exceeds 1 and
/// rescaling is not allowed.
SvdProgram svd_program(const CMatrix& w, bool allow_rescale = true);

/// Per-node losses. Both values are applied once per mesh column to every
/// mode, so a node and an idle waveguide in the same column attenuate alike.
/// An n-port mesh (n > 1) has at least n columns.
struct MeshLossModel {
  double ps_loss_db = 0.0;
  double dc_loss_db = 0.0;
  /// Arm intensity transmissions (alpha1, alpha2) of every node; unset means
  /// balanced arms.
  std::optional<std::pair<double, double>> arm_imbalance;

  double per_column_db() const { return ps_loss_db + dc_loss_db; }
};

/// Node transfer with unequal arm losses, built from two 50:50 couplers and
/// the internal/external phase sections. Balanced lossless arms give
/// tbs_transfer(theta, phi).
Eigen::Matrix2cd tbs_transfer_imbalanced(double theta, double phi, double alpha1, double alpha2);

/// Output field for an input field. Throws std::invalid_argument on size
/// mismatch.
CVector propagate_field(const ClementsProgram& program, const MeshLossModel& loss,
                        const CVector& input);

/// Output intensities |E|^2 (W when the input amplitudes are sqrt(W)).
Eigen::VectorXd propagate(const ClementsProgram& program, const MeshLossModel& loss,
                          const CVector& input);

/// Internal phase that restores the balanced cross-state intensity of a node
/// whose arms transmit alpha1 >= alpha2. Throws InfeasibleError when no such
/// phase exists.
double imbalance_corrected_theta(double alpha1, double alpha2, double theta1);

}  // namespace sipmac
