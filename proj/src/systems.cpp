#include "kinrelax/systems.hpp"

#include <sstream>

namespace kinrelax::systems {

CompressibleNS::CompressibleNS(double gamma_, double mu_, double pr_, double lambda2_)
    : gamma(gamma_), mu(mu_), lambda2(std::isnan(lambda2_) ? -2. * mu_ / 3. : lambda2_), pr(pr_) {
  if (!(gamma > 1.)) throw ConfigError("gamma must exceed 1");
  if (!(pr > 0.)) throw ConfigError("Prandtl number must be positive");
  if (!(mu >= 0.)) throw ConfigError("viscosity must be non-negative");
}

Vec<4> CompressibleNS::state_from(double rho, double vx, double vy, double p) const {
  if (!(rho > 0.)) throw AdmissibilityError("state_from: density must be positive");
  return {rho, rho * vx, rho * vy, p / (gamma - 1.) + 0.5 * rho * (vx * vx + vy * vy)};
}

void CompressibleNS::check_admissible(const Vec<4>& u) const {
  if (admissible(u)) return;
  std::ostringstream os;
  os << "inadmissible state rho=" << u[0] << " P=" << (u[0] != 0. ? pressure(u) : 0.);
  throw AdmissibilityError(os.str());
}

Vec<4> CompressibleNS::flux(const Vec<4>& u, int dir) const {
  const double rho = u[0];
  const double p = pressure(u);
  const double w = u[1 + dir] / rho;
  Vec<4> f = w * u;
  f[1 + dir] += p;
  f[3] += p * w;
  return f;
}

Mat<4> CompressibleNS::jacobian(const Vec<4>& u, int dir) const {
  const double vx = u[1] / u[0];
  const double vy = u[2] / u[0];
  const double g1 = gamma - 1.;
  const double q = 0.5 * (vx * vx + vy * vy);
  const double h = (u[3] + pressure(u)) / u[0];
  Mat<4> a;
  if (dir == 0) {
    a << 0., 1., 0., 0.,
        -vx * vx + g1 * q, (3. - gamma) * vx, -g1 * vy, g1,
        -vx * vy, vy, vx, 0.,
        vx * (g1 * q - h), h - g1 * vx * vx, -g1 * vx * vy, gamma * vx;
  } else {
    a << 0., 0., 1., 0.,
        -vx * vy, vy, vx, 0.,
        -vy * vy + g1 * q, -g1 * vx, (3. - gamma) * vy, g1,
        vy * (g1 * q - h), -g1 * vx * vy, h - g1 * vy * vy, gamma * vy;
  }
  return a;
}

Mat<4> CompressibleNS::diffusion(const Vec<4>& u, int i, int j) const {
  const double rho = u[0];
  const double vx = u[1] / rho;
  const double vy = u[2] / rho;
  const double e = u[3] / rho;
  const double lam = lambda2;
  const double k = gamma * mu / pr;  // heat-conduction weight
  Mat<4> d = Mat<4>::Zero();
  if (i == 0 && j == 0) {
    d.row(1) << -(2. * mu + lam) * vx, 2. * mu + lam, 0., 0.;
    d.row(2) << -mu * vy, 0., mu, 0.;
    d.row(3) << -(2. * mu + lam) * vx * vx - mu * vy * vy - k * (e - vx * vx - vy * vy),
        (2. * mu + lam - k) * vx, (mu - k) * vy, k;
  } else if (i == 0 && j == 1) {
    d.row(1) << -lam * vy, 0., lam, 0.;
    d.row(2) << -mu * vx, mu, 0., 0.;
    d.row(3) << -(mu + lam) * vx * vy, mu * vy, lam * vx, 0.;
  } else if (i == 1 && j == 0) {
    d.row(1) << -mu * vy, 0., mu, 0.;
    d.row(2) << -lam * vx, lam, 0., 0.;
    d.row(3) << -(mu + lam) * vx * vy, lam * vy, mu * vx, 0.;
  } else {
    d.row(1) << -mu * vx, mu, 0., 0.;
    d.row(2) << -(2. * mu + lam) * vy, 0., 2. * mu + lam, 0.;
    d.row(3) << -(2. * mu + lam) * vy * vy - mu * vx * vx - k * (e - vx * vx - vy * vy),
        (mu - k) * vx, (2. * mu + lam - k) * vy, k;
  }
  return d / rho;
}

double CompressibleNS::max_wave_speed(const Vec<4>& u) const {
  const double c = sound_speed(u);
  return std::max(std::abs(u[1] / u[0]), std::abs(u[2] / u[0])) + c;
}

}  // namespace kinrelax::systems
