#pragma once

// Wall and symmetry boundary conditions. Walls impose the flux across the
// wall interface from a boundary state u_b; symmetry planes fill ghost cells.

#include <array>

#include "kinrelax/lattice.hpp"
#include "kinrelax/space.hpp"
#include "kinrelax/systems.hpp"

namespace kinrelax::boundary {

using space::BoundaryKind;
using space::Side;

struct WallSpec {
  BoundaryKind kind = BoundaryKind::WallAdiabatic;
  double vel[2] = {0., 0.};
  double temperature = 1.;  // isothermal walls only
};

using WallSpecs = std::array<WallSpec, 4>;

/// Boundary state from the two nearest interior states: pressure (and for
/// adiabatic walls temperature) extrapolated with weights 9/8, -1/8.
systems::Vec<4> wall_state(const systems::CompressibleNS& sys, const WallSpec& spec,
                           const systems::Vec<4>& u1, const systems::Vec<4>& u2);

/// Boundary distribution F_b with P F_b = u_b and P Lambda_n F_b = f_n(u_b) + d_b,
/// where d_b = 3/2 d_1 - 1/2 d_2 and d_j = v_n,j - f_n(u_j). Tangential v is zero.
/// U1, U2 are Jin-Xin vectors of the two nearest interior cells.
template <class Sys>
Eigen::VectorXd boundary_distribution(const lattice::Lattice& lat, const Sys& sys, int normal,
                                      const systems::Vec<Sys::P>& ub,
                                      const Eigen::VectorXd& U1, const Eigen::VectorXd& U2) {
  constexpr int P = Sys::P;
  const systems::Vec<P> u1 = U1.head<P>();
  const systems::Vec<P> u2 = U2.head<P>();
  const systems::Vec<P> d1 = U1.segment<P>((1 + normal) * P) - sys.flux(u1, normal);
  const systems::Vec<P> d2 = U2.segment<P>((1 + normal) * P) - sys.flux(u2, normal);
  Eigen::VectorXd Ub = Eigen::VectorXd::Zero(3 * P);
  Ub.head<P>() = ub;
  Ub.segment<P>((1 + normal) * P) = sys.flux(ub, normal) + 1.5 * d1 - 0.5 * d2;
  return lattice::reconstruct(lat.basis, Ub);
}

/// Wall interface flux Lambda_n F_b.
Eigen::VectorXd boundary_flux(const lattice::Lattice& lat, int normal, const Eigen::VectorXd& fb);

/// Fills `out` with F_b for every line of every wall side of a Jin-Xin field.
void wall_data(const space::Grid2D& g, const lattice::Lattice& lat,
               const systems::CompressibleNS& sys, const WallSpecs& specs,
               const space::Field& jin_xin, space::WallData& out);

/// Ghost g at distance l from the plane mirrors interior cell at distance l:
/// u_g = S u_m, tangential v_g = S v_m, normal v_g = -S v_m, S negating the
/// normal momentum.
template <class Sys>
void symmetry_fill(const space::Grid2D& g, const Sys& sys, space::Field& U, Side side) {
  constexpr int P = Sys::P;
  const int normal = space::normal_dir(side);
  const bool high = static_cast<int>(side) % 2 == 1;
  const int n_along = g.n(normal);
  const int n_across = g.n(1 - normal);
  for (int l = 1; l <= space::kHalo; ++l) {
    const int ghost = high ? n_along - 1 + l : -l;
    const int mirror = high ? n_along - l : l - 1;
    for (int t = -space::kHalo; t < n_across + space::kHalo; ++t) {
      const auto gi = normal == 0 ? g.idx(ghost, t) : g.idx(t, ghost);
      const auto mi = normal == 0 ? g.idx(mirror, t) : g.idx(t, mirror);
      for (int blk = 0; blk < 3; ++blk) {
        systems::Vec<P> x;
        for (int c = 0; c < P; ++c) x[c] = U.comp(blk * P + c)[mi];
        x = sys.reflect(x, normal);
        if (blk == 1 + normal) x = -x;
        for (int c = 0; c < P; ++c) U.comp(blk * P + c)[gi] = x[c];
      }
    }
  }
}

}  // namespace kinrelax::boundary
