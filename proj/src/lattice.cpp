#include "kinrelax/lattice.hpp"

#include <cmath>
#include <string>

#include "kinrelax/error.hpp"

namespace kinrelax::lattice {
namespace {

void check_args(double a, int p) {
  if (!(a > 0.) || !std::isfinite(a)) {
    throw ConfigError("kinetic speed must be positive, got " + std::to_string(a));
  }
  if (p < 1) throw ConfigError("conserved-variable count must be >= 1");
}

MomentBasis make_basis(Eigen::MatrixXd q, int p) {
  MomentBasis b;
  b.p = p;
  const auto k = q.rows();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(q);
  if (!lu.isInvertible()) throw NumericalError("moments matrix is singular");
  b.q_inv = lu.inverse();
  b.q_bar = q.topRows(kDim + 1);
  b.q_bar_plus = b.q_inv.leftCols(kDim + 1);
  b.h = q.bottomRows(k - kDim - 1);
  b.q = std::move(q);
  return b;
}

}  // namespace

double WaveModel::norm() const {
  double m = 0.;
  for (double s : speed[0]) m = std::max(m, std::abs(s));
  return m;
}

Eigen::MatrixXd MomentBasis::expand(const Eigen::MatrixXd& scalar) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(scalar.rows() * p, scalar.cols() * p);
  for (Eigen::Index r = 0; r < scalar.rows(); ++r) {
    for (Eigen::Index c = 0; c < scalar.cols(); ++c) {
      out.block(r * p, c * p, p, p).diagonal().setConstant(scalar(r, c));
    }
  }
  return out;
}

Lattice build_d2q4(double a, int p) {
  check_args(a, p);
  Lattice l;
  auto& m = l.model;
  m.kind = LatticeKind::D2Q4;
  m.k = 4;
  m.p = p;
  m.a = a;
  m.speed[0] = {-a, a, 0., 0.};
  m.speed[1] = {0., 0., -a, a};
  // Isotropic closure M_1 + M_2 = u / 2.
  m.weight_u = {0.25, 0.25, 0.25, 0.25};
  m.weight_f[0] = {-0.5 / a, 0.5 / a, 0., 0.};
  m.weight_f[1] = {0., 0., -0.5 / a, 0.5 / a};

  Eigen::MatrixXd q(4, 4);
  q << 1., 1., 1., 1.,
      -a, a, 0., 0.,
      0., 0., -a, a,
      1., 1., -1., -1.;
  l.basis = make_basis(std::move(q), p);
  return l;
}

Lattice build_d2q8(double a, int p) {
  check_args(a, p);
  Lattice l;
  auto& m = l.model;
  m.kind = LatticeKind::D2Q8;
  m.k = 8;
  m.p = p;
  m.a = a;
  m.weight_u.assign(8, 0.125);
  for (int i = 0; i < kDim; ++i) {
    m.speed[i].resize(8);
    m.weight_f[i].resize(8);
  }
  // Unit lattice directions at angles w*pi/4; the diagonal speed a*sqrt2
  // projects to exactly +-a on each axis.
  static constexpr int ex[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  static constexpr int ey[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  for (int w = 0; w < 8; ++w) {
    m.speed[0][w] = a * ex[w];
    m.speed[1][w] = a * ey[w];
    m.weight_f[0][w] = ex[w] / (6. * a);
    m.weight_f[1][w] = ey[w] / (6. * a);
  }

  const double a2 = a * a;
  const double a3 = a2 * a;
  Eigen::MatrixXd q(8, 8);
  q << 1., 1., 1., 1., 1., 1., 1., 1.,
      a, a, 0., -a, -a, -a, 0., a,
      0., a, a, a, 0., -a, -a, -a,
      a2, a2, -3. * a2, a2, a2, a2, -3. * a2, a2,
      -3. * a2, a2, a2, a2, -3. * a2, a2, a2, a2,
      0., a2, 0., -a2, 0., a2, 0., -a2,
      0., a3, -2. * a3, a3, 0., -a3, 2. * a3, -a3,
      -2. * a3, a3, 0., -a3, 2. * a3, -a3, 0., a3;
  l.basis = make_basis(std::move(q), p);
  return l;
}

Lattice build_lattice(LatticeKind kind, double a, int p) {
  return kind == LatticeKind::D2Q4 ? build_d2q4(a, p) : build_d2q8(a, p);
}

Eigen::VectorXd apply_block(const Eigen::MatrixXd& scalar, const Eigen::VectorXd& x, int p) {
  const auto rows = scalar.rows();
  const auto cols = scalar.cols();
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rows * p);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double s = scalar(r, c);
      if (s == 0.) continue;
      y.segment(r * p, p) += s * x.segment(c * p, p);
    }
  }
  return y;
}

Eigen::VectorXd maxwellian(const WaveModel& model, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& f1, const Eigen::VectorXd& f2) {
  const int p = model.p;
  Eigen::VectorXd m(model.k * p);
  for (int w = 0; w < model.k; ++w) {
    m.segment(w * p, p) =
        model.weight_u[w] * u + model.weight_f[0][w] * f1 + model.weight_f[1][w] * f2;
  }
  return m;
}

Eigen::VectorXd to_moments(const MomentBasis& basis, const Eigen::VectorXd& dist) {
  return apply_block(basis.q, dist, basis.p);
}

Eigen::VectorXd from_moments(const MomentBasis& basis, const Eigen::VectorXd& moments) {
  return apply_block(basis.q_inv, moments, basis.p);
}

Eigen::VectorXd reconstruct(const MomentBasis& basis, const Eigen::VectorXd& jin_xin) {
  return apply_block(basis.q_bar_plus, jin_xin, basis.p);
}

Eigen::VectorXd reduce(const MomentBasis& basis, const Eigen::VectorXd& dist) {
  return apply_block(basis.q_bar, dist, basis.p);
}

Eigen::MatrixXd speed_matrix(const WaveModel& model, int direction) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(model.k, model.k);
  for (int w = 0; w < model.k; ++w) s(w, w) = model.speed[direction][w];
  return s;
}

Eigen::MatrixXd jin_xin_transport(const Lattice& lattice, int direction) {
  return lattice.basis.q_bar * speed_matrix(lattice.model, direction) * lattice.basis.q_bar_plus;
}

}  // namespace kinrelax::lattice
