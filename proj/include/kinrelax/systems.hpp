#pragma once

// Target convection-diffusion systems: u_t + sum_i d_i f_i(u) = sum_ij d_i (D_ij(u) d_j u).
// Each system exposes a compile-time variable count P so solver kernels can
// use fixed-size Eigen types.

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "kinrelax/error.hpp"

namespace kinrelax::systems {

template <int P>
using Vec = Eigen::Matrix<double, P, 1>;
template <int P>
using Mat = Eigen::Matrix<double, P, P>;

/// Scalar advection-diffusion with constant velocity (c1, c2) and D = alpha I.
struct ScalarAdvDiff {
  static constexpr int P = 1;
  static constexpr bool kLinear = true;
  // Components whose diffusion rows vanish for every state.
  static constexpr std::array<bool, P> kInviscidRows{false};

  double c[2] = {0., 0.};
  double alpha = 0.;

  ScalarAdvDiff() = default;
  ScalarAdvDiff(double c1, double c2, double diffusion) : c{c1, c2}, alpha(diffusion) {
    if (!(alpha >= 0.) || !std::isfinite(c1) || !std::isfinite(c2)) {
      throw ConfigError("scalar system needs finite speeds and alpha >= 0");
    }
  }

  bool has_diffusion() const { return alpha > 0.; }
  void check_admissible(const Vec<1>&) const {}
  bool admissible(const Vec<1>& u) const { return std::isfinite(u[0]); }

  Vec<1> flux(const Vec<1>& u, int dir) const { return Vec<1>(c[dir] * u[0]); }
  Mat<1> jacobian(const Vec<1>&, int dir) const { return Mat<1>(c[dir]); }
  Mat<1> diffusion(const Vec<1>&, int i, int j) const {
    return Mat<1>(i == j ? alpha : 0.);
  }
  double max_wave_speed(const Vec<1>&) const { return std::max(std::abs(c[0]), std::abs(c[1])); }
  /// Mirror image of a state across a plane with the given normal.
  Vec<1> reflect(const Vec<1>& u, int) const { return u; }
};

/// 2D compressible Navier-Stokes, ideal gas, state (rho, rho u, rho v, E).
struct CompressibleNS {
  static constexpr int P = 4;
  static constexpr bool kLinear = false;
  static constexpr std::array<bool, P> kInviscidRows{true, false, false, false};

  double gamma = 1.4;
  double mu = 0.;
  double lambda2 = 0.;  // second viscosity
  double pr = 0.73;

  CompressibleNS() = default;
  /// lambda2 defaults to -2 mu / 3 when passed as NaN.
  CompressibleNS(double gamma_, double mu_, double pr_, double lambda2_ = std::nan(""));

  bool has_diffusion() const { return mu != 0. || lambda2 != 0.; }

  double pressure(const Vec<4>& u) const {
    return (gamma - 1.) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]);
  }
  double temperature(const Vec<4>& u) const { return pressure(u) / u[0]; }
  double sound_speed(const Vec<4>& u) const { return std::sqrt(gamma * pressure(u) / u[0]); }
  Vec<4> state_from(double rho, double vx, double vy, double p) const;

  bool admissible(const Vec<4>& u) const {
    return u[0] > 0. && pressure(u) > 0. && u.allFinite();
  }
  /// Throws AdmissibilityError when rho <= 0 or P <= 0.
  void check_admissible(const Vec<4>& u) const;

  Vec<4> flux(const Vec<4>& u, int dir) const;
  Mat<4> jacobian(const Vec<4>& u, int dir) const;
  Mat<4> diffusion(const Vec<4>& u, int i, int j) const;
  double max_wave_speed(const Vec<4>& u) const;
  Vec<4> reflect(const Vec<4>& u, int normal) const {
    Vec<4> r = u;
    r[1 + normal] = -r[1 + normal];
    return r;
  }
};

}  // namespace kinrelax::systems
