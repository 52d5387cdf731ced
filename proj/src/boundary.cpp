#include "kinrelax/boundary.hpp"

#include <sstream>

#include "kinrelax/error.hpp"

namespace kinrelax::boundary {

systems::Vec<4> wall_state(const systems::CompressibleNS& sys, const WallSpec& spec,
                           const systems::Vec<4>& u1, const systems::Vec<4>& u2) {
  const double p1 = sys.pressure(u1);
  const double p2 = sys.pressure(u2);
  const double pb = 9. / 8. * p1 - 1. / 8. * p2;
  double tb = spec.temperature;
  if (spec.kind == BoundaryKind::WallAdiabatic) {
    tb = 9. / 8. * (p1 / u1[0]) - 1. / 8. * (p2 / u2[0]);
  }
  if (!(pb > 0.) || !(tb > 0.)) {
    std::ostringstream os;
    os << "wall state not admissible: P_b=" << pb << " T_b=" << tb;
    throw AdmissibilityError(os.str());
  }
  return sys.state_from(pb / tb, spec.vel[0], spec.vel[1], pb);
}

Eigen::VectorXd boundary_flux(const lattice::Lattice& lat, int normal, const Eigen::VectorXd& fb) {
  const int p = lat.model.p;
  Eigen::VectorXd phi(fb.size());
  for (int w = 0; w < lat.model.k; ++w) {
    phi.segment(w * p, p) = lat.model.speed[normal][w] * fb.segment(w * p, p);
  }
  return phi;
}

void wall_data(const space::Grid2D& g, const lattice::Lattice& lat,
               const systems::CompressibleNS& sys, const WallSpecs& specs,
               const space::Field& jin_xin, space::WallData& out) {
  constexpr int P = 4;
  const int kp = lat.model.k * P;
  for (int s = 0; s < 4; ++s) {
    const Side side = static_cast<Side>(s);
    if (!space::is_wall(g.side(side))) continue;
    const int normal = space::normal_dir(side);
    const bool high = s % 2 == 1;
    const int n_along = g.n(normal);
    const int lines = g.n(1 - normal);
    auto& fb = out.fb[s];
    fb.resize(static_cast<std::size_t>(lines) * kp);
    WallSpec spec = specs[s];
    spec.kind = g.side(side);
    Eigen::VectorXd U1(3 * P);
    Eigen::VectorXd U2(3 * P);
    for (int t = 0; t < lines; ++t) {
      const int c1 = high ? n_along - 1 : 0;
      const int c2 = high ? n_along - 2 : 1;
      const auto i1 = normal == 0 ? g.idx(c1, t) : g.idx(t, c1);
      const auto i2 = normal == 0 ? g.idx(c2, t) : g.idx(t, c2);
      for (int c = 0; c < 3 * P; ++c) {
        U1[c] = jin_xin.comp(c)[i1];
        U2[c] = jin_xin.comp(c)[i2];
      }
      const systems::Vec<P> ub = wall_state(sys, spec, U1.head<P>(), U2.head<P>());
      const Eigen::VectorXd f = boundary_distribution(lat, sys, normal, ub, U1, U2);
      std::copy(f.data(), f.data() + kp, fb.data() + static_cast<std::size_t>(t) * kp);
    }
  }
}

}  // namespace kinrelax::boundary
