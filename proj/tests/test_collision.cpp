#include <doctest.h>

#include <random>

#include "kinrelax/collision.hpp"
#include "kinrelax/error.hpp"

using namespace kinrelax;
using namespace kinrelax::collision;
using systems::CompressibleNS;
using systems::ScalarAdvDiff;
using systems::Vec;

TEST_CASE("J_Lambda of the lattices") {
  const ScalarAdvDiff s(10., 10., 0.01);
  const auto m4 = lattice::build_d2q4(21., 1).model;
  const auto j4 = assemble_j_lambda(lattice_moments(m4), s, Vec<1>(1.));
  CHECK(j4(0, 0) == doctest::Approx(220.5));
  CHECK(j4(1, 1) == doctest::Approx(220.5));
  CHECK(j4(0, 1) == 0.);
  CHECK(j4(1, 0) == 0.);

  const auto m8 = lattice::build_d2q8(1., 1).model;
  const auto j8 = assemble_j_lambda(lattice_moments(m8), s, Vec<1>(1.));
  CHECK(j8(0, 0) == doctest::Approx(0.75));
  CHECK(j8(1, 1) == doctest::Approx(0.75));
  CHECK(std::abs(j8(0, 1)) < 1e-14);

  // D2Q4 cross blocks vanish for any p since Lambda_1 Lambda_2 = 0.
  const CompressibleNS ns(1.4, 0.01, 0.73);
  const auto jn = assemble_j_lambda(lattice_moments(lattice::build_d2q4(5., 4).model), ns,
                                    Vec<4>(1., 0.3, -0.2, 2.7));
  CHECK(jn.block<4, 4>(0, 4).norm() == 0.);
  CHECK(jn.block<4, 4>(4, 0).norm() == 0.);
}

TEST_CASE("J_f") {
  const ScalarAdvDiff s(10., 10., 0.01);
  const auto jf = assemble_j_f(s, Vec<1>(1.));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(jf(i, j) == 100.);

  const CompressibleNS ns(1.4, 0.01, 0.73);
  const Vec<4> rest(1., 0., 0., 2.5);
  const auto jn = assemble_j_f(ns, rest);
  const Eigen::Matrix4d b = jn.block<4, 4>(0, 0);
  const auto ev = b.eigenvalues();
  double rad = 0.;
  for (int i = 0; i < 4; ++i) rad = std::max(rad, std::abs(ev[i]));
  CHECK(rad == doctest::Approx(1.4));  // gamma P / rho
}

TEST_CASE("relaxation inverse") {
  const ScalarAdvDiff s(10., 10., 0.01);
  const auto m = lattice::build_d2q4(21., 1).model;
  const auto op = relaxation_inverse(m, s, Vec<1>(1.), 1.);
  CHECK(op.chat_inv(0, 0) == doctest::Approx(2.6657e-4).epsilon(1e-4));
  CHECK(op.chat_inv(0, 1) == doctest::Approx(2.2123e-4).epsilon(1e-4));
  CHECK(op.chat_inv(1, 0) == doctest::Approx(2.2123e-4).epsilon(1e-4));
  CHECK(op.chat_inv(1, 1) == doctest::Approx(2.6657e-4).epsilon(1e-4));
  CHECK(op.chat_inv(0, 0) == doctest::Approx(0.01 * 120.5 / 4520.25));

  const ScalarAdvDiff inviscid(10., 10., 0.);
  CHECK(relaxation_inverse(m, inviscid, Vec<1>(1.), 1.).chat_inv.norm() == 0.);
  const CompressibleNS euler(1.4, 0., 0.73);
  const auto m4 = lattice::build_d2q4(5., 4).model;
  CHECK(relaxation_inverse(m4, euler, Vec<4>(1., 0.2, 0.1, 2.5), 0.1).chat_inv.norm() == 0.);

  // a^2/2 = c1^2 + c2^2 gives a singular J_Lambda - J_f.
  const auto crit = lattice::build_d2q4(20., 1).model;
  CHECK_THROWS_AS(relaxation_inverse(crit, s, Vec<1>(1.), 1.), ConfigError);
  CHECK_THROWS_AS(relaxation_inverse(m, s, Vec<1>(1.), 0.), ConfigError);
}

TEST_CASE("Chapman-Enskog closure recovers D") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> unit(-1., 1.);
  for (auto kind : {lattice::LatticeKind::D2Q4, lattice::LatticeKind::D2Q8}) {
    for (int trial = 0; trial < 100; ++trial) {
      const ScalarAdvDiff s(10. * unit(rng), 10. * unit(rng), 0.02 * (1. + unit(rng)));
      const auto m = lattice::build_lattice(kind, 40., 1).model;
      const Vec<1> u(unit(rng));
      const double dt = 0.01 * (1.5 + unit(rng));
      const auto op = relaxation_inverse(m, s, u, dt);
      const auto d = assemble_d(s, u);
      CHECK((effective_diffusion(m, s, u, op) - d).cwiseAbs().maxCoeff() < 1e-10);
    }
    const CompressibleNS ns(1.4, 0.01, 0.73);
    std::uniform_real_distribution<double> rho(0.3, 2.), vel(-1., 1.), p(0.5, 2.);
    for (int trial = 0; trial < 100; ++trial) {
      const Vec<4> u = ns.state_from(rho(rng), vel(rng), vel(rng), p(rng));
      const double a = 2.1 * 2. * ns.max_wave_speed(u) + 1.;
      const auto m = lattice::build_lattice(kind, a, 4).model;
      const auto op = relaxation_inverse(m, ns, u, 0.01);
      const auto d = assemble_d(ns, u);
      const double scale = std::max(1e-3, d.cwiseAbs().maxCoeff());
      CHECK((effective_diffusion(m, ns, u, op) - d).cwiseAbs().maxCoeff() / scale < 1e-10);
    }
  }
}

TEST_CASE("relaxation matrix is dt times the inverse collision block") {
  const CompressibleNS ns(1.4, 0.02, 0.73);
  const Vec<4> u = ns.state_from(1.2, 0.4, -0.3, 1.1);
  const auto m = lattice::build_d2q4(6., 4).model;
  const double dt = 0.003;
  const auto g = relaxation_matrix(lattice_moments(m), ns, u);
  const auto op = relaxation_inverse(m, ns, u, dt);
  CHECK((g - dt * op.chat_inv).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("distribution-space inverse collision matrix") {
  const ScalarAdvDiff s(10., 10., 0.);
  const auto l = lattice::build_d2q4(21., 1);
  const auto op = relaxation_inverse(l.model, s, Vec<1>(1.), 0.01);
  CHECK(omega_inverse_distribution(l.basis, op).norm() == 0.);
  CHECK(knudsen(0.01, 21., 0.1) == doctest::Approx(0.01 / 2.1));
}
