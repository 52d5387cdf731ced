#pragma once

// Discrete-velocity wave models and the moment transforms that connect
// distribution space (k waves x p variables) with Jin-Xin space
// (u, v1, v2). Every operator here has the block form M (x) I_p, so only the
// scalar-lattice matrix is stored; vectors are laid out wave-major
// (index = row * p + component).

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace kinrelax::lattice {

inline constexpr int kDim = 2;

enum class LatticeKind { D2Q4, D2Q8 };

struct WaveModel {
  LatticeKind kind = LatticeKind::D2Q4;
  int k = 0;      // number of waves
  int p = 0;      // conserved variables per wave
  double a = 0.;  // kinetic speed
  // speed[i][w]: signed velocity of wave w along direction i.
  std::array<std::vector<double>, kDim> speed;
  // Maxwellian closure, M_w = weight_u[w] * u + sum_i weight_f[i][w] * f_i.
  std::vector<double> weight_u;
  std::array<std::vector<double>, kDim> weight_f;

  /// Largest wave speed along any direction (identical for every direction).
  double norm() const;
  int jin_xin_size() const { return (kDim + 1) * p; }
  int distribution_size() const { return k * p; }
};

struct MomentBasis {
  int p = 0;
  Eigen::MatrixXd q;          // k x k
  Eigen::MatrixXd q_inv;      // k x k
  Eigen::MatrixXd q_bar;      // (d+1) x k, rows P, P*Lambda_1, P*Lambda_2
  Eigen::MatrixXd q_bar_plus; // k x (d+1)
  Eigen::MatrixXd h;          // (k-d-1) x k, high-order moment rows

  /// Dense (rows*p) x (cols*p) expansion M (x) I_p, for checks and oracles.
  Eigen::MatrixXd expand(const Eigen::MatrixXd& scalar) const;
};

struct Lattice {
  WaveModel model;
  MomentBasis basis;
};

Lattice build_d2q4(double a, int p);
Lattice build_d2q8(double a, int p);
Lattice build_lattice(LatticeKind kind, double a, int p);

/// Applies the block operator (scalar (x) I_p) to a vector of p-blocks.
Eigen::VectorXd apply_block(const Eigen::MatrixXd& scalar, const Eigen::VectorXd& x, int p);

Eigen::VectorXd maxwellian(const WaveModel& model, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& f1, const Eigen::VectorXd& f2);

Eigen::VectorXd to_moments(const MomentBasis& basis, const Eigen::VectorXd& dist);
Eigen::VectorXd from_moments(const MomentBasis& basis, const Eigen::VectorXd& moments);

/// Distribution of a regularized state (H F = 0) from its Jin-Xin vector.
Eigen::VectorXd reconstruct(const MomentBasis& basis, const Eigen::VectorXd& jin_xin);
/// Jin-Xin vector (u, v1, v2) of a distribution.
Eigen::VectorXd reduce(const MomentBasis& basis, const Eigen::VectorXd& dist);

/// Scalar-lattice (d+1) x (d+1) transport matrix A_i = Qbar Lambda_i Qbar^+.
Eigen::MatrixXd jin_xin_transport(const Lattice& lattice, int direction);

/// Diagonal Lambda_i of the scalar lattice as a k x k matrix.
Eigen::MatrixXd speed_matrix(const WaveModel& model, int direction);

}  // namespace kinrelax::lattice
