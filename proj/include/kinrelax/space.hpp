#pragma once

// Uniform Cartesian grids, structure-of-arrays fields with a 3-cell halo, and
// the upwind finite-volume flux operators used for every kinetic wave.

#include <array>
#include <cstddef>
#include <vector>

#include "kinrelax/lattice.hpp"

namespace kinrelax::space {

inline constexpr int kHalo = 3;

enum class Side { Left = 0, Right = 1, Bottom = 2, Top = 3 };
enum class BoundaryKind { Periodic, WallIsothermal, WallAdiabatic, Symmetry };

inline bool is_wall(BoundaryKind k) {
  return k == BoundaryKind::WallIsothermal || k == BoundaryKind::WallAdiabatic;
}
/// Direction (0 = x, 1 = y) normal to a side.
inline int normal_dir(Side s) { return static_cast<int>(s) / 2; }

struct Grid2D {
  int nx = 0;
  int ny = 0;
  double dx = 0.;
  double dy = 0.;
  double x0 = 0.;
  double y0 = 0.;
  std::array<BoundaryKind, 4> sides{BoundaryKind::Periodic, BoundaryKind::Periodic,
                                    BoundaryKind::Periodic, BoundaryKind::Periodic};

  /// Validates sizes and side pairing; throws ConfigError.
  void validate(int order) const;

  int sx() const { return nx + 2 * kHalo; }
  int sy() const { return ny + 2 * kHalo; }
  std::size_t padded() const { return static_cast<std::size_t>(sx()) * sy(); }
  std::ptrdiff_t idx(int i, int j) const {
    return static_cast<std::ptrdiff_t>(j + kHalo) * sx() + (i + kHalo);
  }
  double xc(int i) const { return x0 + (i + 0.5) * dx; }
  double yc(int j) const { return y0 + (j + 0.5) * dy; }
  double h(int dir) const { return dir == 0 ? dx : dy; }
  int n(int dir) const { return dir == 0 ? nx : ny; }
  BoundaryKind side(Side s) const { return sides[static_cast<int>(s)]; }
};

/// Component-major field over the padded grid.
class Field {
 public:
  Field() = default;
  Field(const Grid2D& g, int ncomp);

  int ncomp() const { return ncomp_; }
  std::size_t stride() const { return stride_; }
  double* comp(int c) { return data_.data() + c * stride_; }
  const double* comp(int c) const { return data_.data() + c * stride_; }
  double& at(const Grid2D& g, int c, int i, int j) { return comp(c)[g.idx(i, j)]; }
  double at(const Grid2D& g, int c, int i, int j) const { return comp(c)[g.idx(i, j)]; }
  void fill(double v);
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

 private:
  int ncomp_ = 0;
  std::size_t stride_ = 0;
  std::vector<double> data_;
};

/// Upwind flux of one scalar wave at interface k+1/2. `f` points at cell k,
/// `st` is the stride between neighbouring cells along the sweep direction.
inline double wave_flux(int order, double a, const double* f, std::ptrdiff_t st) {
  if (a > 0.) {
    switch (order) {
      case 1: return a * f[0];
      case 2: return a * (f[st] / 3. + 5. * f[0] / 6. - f[-st] / 6.);
      default:
        return a * (f[st] / 4. + 13. * f[0] / 12. - 5. * f[-st] / 12. + f[-2 * st] / 12.);
    }
  }
  if (a < 0.) {
    switch (order) {
      case 1: return a * f[st];
      case 2: return a * (f[0] / 3. + 5. * f[st] / 6. - f[2 * st] / 6.);
      default:
        return a * (f[0] / 4. + 13. * f[st] / 12. - 5. * f[2 * st] / 12. + f[3 * st] / 12.);
    }
  }
  return 0.;
}

/// Flux formula chosen at an interface close to a wall.
enum class FluxKind { Wall, Phi1, Phi2, Phi2Star, Phi4 };

/// Formula at interface m+1/2 (m = -1 .. n-1) of an n-cell line for a wave
/// of sign `sign`; left_wall/right_wall flag wall ends of the line.
FluxKind near_wall_flux(int order, int sign, int m, int n, bool left_wall, bool right_wall);

/// Boundary distributions F_b at wall sides: side -> [line * kp + comp].
struct WallData {
  std::array<std::vector<double>, 4> fb;
};

/// out = sum_i Lambda_i delta_i F for a distribution field F (k*p components,
/// halos filled). Wall sides read F_b from `walls`. Only interior cells of
/// `out` are written.
void divergence(const Grid2D& g, int order, const lattice::WaveModel& model, const Field& dist,
                const WallData* walls, Field& out);

/// Jin-Xin field (3p comps) -> distribution field (kp comps), halos included.
void reconstruct_field(const Grid2D& g, const lattice::Lattice& lat, const Field& jin_xin,
                       Field& dist);

/// Copies periodic halos; wall halos are poisoned with NaN so any stray read
/// shows up in the result. Symmetry sides are left to boundary::symmetry_fill.
void halo_exchange(const Grid2D& g, Field& f);

}  // namespace kinrelax::space
