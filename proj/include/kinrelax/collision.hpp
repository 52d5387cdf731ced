#pragma once

// Regularized collision model: the per-cell relaxation matrix chosen so that
// the first-order Chapman-Enskog diffusion of the kinetic model equals the
// target D(u). Only the product D (J_Lambda - J_f)^-1 is ever needed.

#include <array>

#include <Eigen/Dense>

#include "kinrelax/error.hpp"
#include "kinrelax/lattice.hpp"
#include "kinrelax/systems.hpp"

namespace kinrelax::collision {

using lattice::kDim;

/// Lattice sums entering J_Lambda:
///   J_Lambda(i,j) = base[i][j] I + sum_k grad[i][j][k] f_k'(u).
struct LatticeMoments {
  double base[kDim][kDim] = {};
  double grad[kDim][kDim][kDim] = {};
};

LatticeMoments lattice_moments(const lattice::WaveModel& model);

template <class Sys>
using DMat = Eigen::Matrix<double, kDim * Sys::P, kDim * Sys::P>;

template <class Sys>
DMat<Sys> assemble_j_lambda(const LatticeMoments& lm, const Sys& sys,
                            const systems::Vec<Sys::P>& u) {
  constexpr int P = Sys::P;
  using M = systems::Mat<P>;
  std::array<M, kDim> jac;
  for (int k = 0; k < kDim; ++k) jac[k] = sys.jacobian(u, k);
  DMat<Sys> j;
  for (int a = 0; a < kDim; ++a) {
    for (int b = 0; b < kDim; ++b) {
      M blk = lm.base[a][b] * M::Identity();
      for (int k = 0; k < kDim; ++k) {
        if (lm.grad[a][b][k] != 0.) blk += lm.grad[a][b][k] * jac[k];
      }
      j.template block<P, P>(a * P, b * P) = blk;
    }
  }
  return j;
}

template <class Sys>
DMat<Sys> assemble_j_f(const Sys& sys, const systems::Vec<Sys::P>& u) {
  constexpr int P = Sys::P;
  std::array<systems::Mat<P>, kDim> jac;
  for (int k = 0; k < kDim; ++k) jac[k] = sys.jacobian(u, k);
  DMat<Sys> j;
  for (int a = 0; a < kDim; ++a) {
    for (int b = 0; b < kDim; ++b) j.template block<P, P>(a * P, b * P) = jac[a] * jac[b];
  }
  return j;
}

template <class Sys>
DMat<Sys> assemble_d(const Sys& sys, const systems::Vec<Sys::P>& u) {
  constexpr int P = Sys::P;
  DMat<Sys> d;
  for (int a = 0; a < kDim; ++a) {
    for (int b = 0; b < kDim; ++b) d.template block<P, P>(a * P, b * P) = sys.diffusion(u, a, b);
  }
  return d;
}

/// G = D (J_Lambda - J_f)^-1, i.e. dt times the scaled inverse collision matrix.
template <class Sys>
DMat<Sys> relaxation_matrix(const LatticeMoments& lm, const Sys& sys,
                            const systems::Vec<Sys::P>& u) {
  if (!sys.has_diffusion()) return DMat<Sys>::Zero();
  const DMat<Sys> m = assemble_j_lambda(lm, sys, u) - assemble_j_f(sys, u);
  // G m = D  <=>  m^T G^T = D^T
  Eigen::PartialPivLU<DMat<Sys>> lu(m.transpose());
  return lu.solve(assemble_d(sys, u).transpose()).transpose();
}

template <class Sys>
struct RelaxationOperator {
  DMat<Sys> chat_inv;
  systems::Vec<Sys::P> state_ref;
  double dt = 0.;
};

template <class Sys>
RelaxationOperator<Sys> relaxation_inverse(const lattice::WaveModel& model, const Sys& sys,
                                           const systems::Vec<Sys::P>& u, double dt) {
  if (!(dt > 0.)) throw ConfigError("relaxation_inverse: dt must be positive");
  const LatticeMoments lm = lattice_moments(model);
  const DMat<Sys> m = assemble_j_lambda(lm, sys, u) - assemble_j_f(sys, u);
  Eigen::FullPivLU<DMat<Sys>> lu(m);
  if (!lu.isInvertible()) {
    throw ConfigError("J_Lambda - J_f is singular; increase the kinetic speed");
  }
  RelaxationOperator<Sys> op;
  op.state_ref = u;
  op.dt = dt;
  op.chat_inv = sys.has_diffusion() ? DMat<Sys>(assemble_d(sys, u) * lu.inverse() / dt)
                                    : DMat<Sys>(DMat<Sys>::Zero());
  return op;
}

/// dt * chat_inv * (J_Lambda - J_f); reproduces D(u) when op was built at u.
template <class Sys>
DMat<Sys> effective_diffusion(const lattice::WaveModel& model, const Sys& sys,
                              const systems::Vec<Sys::P>& u, const RelaxationOperator<Sys>& op) {
  const LatticeMoments lm = lattice_moments(model);
  return op.dt * op.chat_inv * (assemble_j_lambda(lm, sys, u) - assemble_j_f(sys, u));
}

/// Distribution-space inverse collision matrix Q^-1 blockdiag(0, chat_inv, 0) Q.
template <class Sys>
Eigen::MatrixXd omega_inverse_distribution(const lattice::MomentBasis& basis,
                                           const RelaxationOperator<Sys>& op) {
  constexpr int P = Sys::P;
  const auto k = basis.q.rows();
  Eigen::MatrixXd mid = Eigen::MatrixXd::Zero(k * P, k * P);
  mid.block(P, P, kDim * P, kDim * P) = op.chat_inv;
  return basis.expand(basis.q_inv) * mid * basis.expand(basis.q);
}

/// Knudsen-number diagnostic eps = |D| / (|Lambda| l).
inline double knudsen(double diffusion_norm, double lambda_norm, double length) {
  return diffusion_norm / (lambda_norm * length);
}

}  // namespace kinrelax::collision
