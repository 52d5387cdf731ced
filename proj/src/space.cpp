#include "kinrelax/space.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>

#include "kinrelax/error.hpp"

namespace kinrelax::space {

void Grid2D::validate(int order) const {
  if (nx < 1 || ny < 1) throw ConfigError("grid needs at least one cell per direction");
  if (!(dx > 0.) || !(dy > 0.)) throw ConfigError("grid spacing must be positive");
  for (int d = 0; d < 2; ++d) {
    const bool lo = sides[2 * d] == BoundaryKind::Periodic;
    const bool hi = sides[2 * d + 1] == BoundaryKind::Periodic;
    if (lo != hi) throw ConfigError("periodic sides must come in opposite pairs");
    const bool walls = is_wall(sides[2 * d]) || is_wall(sides[2 * d + 1]);
    // Near-wall stencils must not reach the opposite boundary.
    if (walls && n(d) < 6) {
      throw ConfigError("wall-bounded direction needs at least 6 cells, got " +
                        std::to_string(n(d)));
    }
    if (!lo && n(d) < kHalo) {
      throw ConfigError("non-periodic direction needs at least 3 cells");
    }
  }
  if (order != 1 && order != 2 && order != 4) throw ConfigError("order must be 1, 2 or 4");
}

Field::Field(const Grid2D& g, int ncomp)
    : ncomp_(ncomp), stride_(g.padded()), data_(static_cast<std::size_t>(ncomp) * g.padded(), 0.) {}

void Field::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

FluxKind near_wall_flux(int order, int sign, int m, int n, bool left_wall, bool right_wall) {
  if (left_wall && m == -1) return FluxKind::Wall;
  if (right_wall && m == n - 1) return FluxKind::Wall;
  if (order == 1) return FluxKind::Phi1;
  const FluxKind full = order == 2 ? FluxKind::Phi2 : FluxKind::Phi4;
  // Distance (in interfaces) from the wall the wave is leaving.
  int dist = -1;
  if (sign > 0 && left_wall) dist = m;
  if (sign < 0 && right_wall) dist = n - 2 - m;
  if (dist == 0) return FluxKind::Phi2Star;
  if (dist == 1 && order == 4) return FluxKind::Phi2;
  return full;
}

namespace {

template <int Q, bool Pos>
inline double flux_q(double a, const double* f, std::ptrdiff_t st) {
  if constexpr (Pos) {
    if constexpr (Q == 1) return a * f[0];
    if constexpr (Q == 2) return a * (f[st] / 3. + 5. * f[0] / 6. - f[-st] / 6.);
    if constexpr (Q == 4)
      return a * (f[st] / 4. + 13. * f[0] / 12. - 5. * f[-st] / 12. + f[-2 * st] / 12.);
  } else {
    if constexpr (Q == 1) return a * f[st];
    if constexpr (Q == 2) return a * (f[0] / 3. + 5. * f[st] / 6. - f[2 * st] / 6.);
    if constexpr (Q == 4)
      return a * (f[0] / 4. + 13. * f[st] / 12. - 5. * f[2 * st] / 12. + f[3 * st] / 12.);
  }
  return 0.;
}

// Flux at interface m+1/2 for a non-standard (near-wall) interface.
inline double special_flux(FluxKind kind, double a, const double* f, std::ptrdiff_t st, int m,
                           int n, double fbl, double fbr) {
  const double* fm = f + m * st;
  switch (kind) {
    case FluxKind::Wall: return a * (m < 0 ? fbl : fbr);
    case FluxKind::Phi1: return wave_flux(1, a, fm, st);
    case FluxKind::Phi2: return wave_flux(2, a, fm, st);
    case FluxKind::Phi4: return wave_flux(4, a, fm, st);
    case FluxKind::Phi2Star:
      return a > 0. ? a * (f[0] + (f[st] - fbl) / 3.)
                    : a * (f[(n - 1) * st] + (f[(n - 2) * st] - fbr) / 3.);
  }
  return 0.;
}

struct Sweep {
  int order;
  int n;        // cells along the sweep
  int lines;    // lines across
  std::ptrdiff_t st;      // stride along
  std::ptrdiff_t across;  // stride across
  bool lw, rw;
  int lo, hi;  // interfaces in [lo, hi] use the standard stencil
  double inv_h;
  bool assign;  // overwrite the output instead of accumulating
};

// Line-major sweep: contiguous along the line (x direction).
template <int Q, bool Pos>
void sweep_lines(const Sweep& sw, double a, const double* f0, double* o0, const double* fbl,
                 const double* fbr, std::size_t fb_stride, double* phi) {
  const int sign = Pos ? 1 : -1;
  for (int t = 0; t < sw.lines; ++t) {
    const double* f = f0 + t * sw.across;
    double* o = o0 + t * sw.across;
    for (int m = sw.lo; m <= sw.hi; ++m) phi[m + 1] = flux_q<Q, Pos>(a, f + m * sw.st, sw.st);
    const double bl = sw.lw ? fbl[t * fb_stride] : 0.;
    const double br = sw.rw ? fbr[t * fb_stride] : 0.;
    for (int m = -1; m < sw.lo; ++m) {
      phi[m + 1] = special_flux(near_wall_flux(sw.order, sign, m, sw.n, sw.lw, sw.rw), a, f, sw.st,
                                m, sw.n, bl, br);
    }
    for (int m = sw.hi + 1; m <= sw.n - 1; ++m) {
      phi[m + 1] = special_flux(near_wall_flux(sw.order, sign, m, sw.n, sw.lw, sw.rw), a, f, sw.st,
                                m, sw.n, bl, br);
    }
    if (sw.assign) {
      for (int m = 0; m < sw.n; ++m) o[m * sw.st] = (phi[m + 1] - phi[m]) * sw.inv_h;
    } else {
      for (int m = 0; m < sw.n; ++m) o[m * sw.st] += (phi[m + 1] - phi[m]) * sw.inv_h;
    }
  }
}

// Interface-major sweep: contiguous across lines (y direction).
template <int Q, bool Pos>
void sweep_rows(const Sweep& sw, double a, const double* f0, double* o0, const double* fbl,
                const double* fbr, std::size_t fb_stride, double* prev, double* cur) {
  const int sign = Pos ? 1 : -1;
  for (int m = -1; m <= sw.n - 1; ++m) {
    const double* fm = f0 + m * sw.st;
    if (m >= sw.lo && m <= sw.hi) {
      for (int t = 0; t < sw.lines; ++t) cur[t] = flux_q<Q, Pos>(a, fm + t, sw.st);
    } else {
      const FluxKind kind = near_wall_flux(sw.order, sign, m, sw.n, sw.lw, sw.rw);
      for (int t = 0; t < sw.lines; ++t) {
        const double bl = sw.lw ? fbl[t * fb_stride] : 0.;
        const double br = sw.rw ? fbr[t * fb_stride] : 0.;
        cur[t] = special_flux(kind, a, f0 + t, sw.st, m, sw.n, bl, br);
      }
    }
    if (m >= 0) {
      double* o = o0 + m * sw.st;
      for (int t = 0; t < sw.lines; ++t) o[t] += (cur[t] - prev[t]) * sw.inv_h;
    }
    std::swap(prev, cur);
  }
}

template <bool Pos>
void dispatch(const Sweep& sw, bool rows, double a, const double* f0, double* o0,
              const double* fbl, const double* fbr, std::size_t fb_stride, double* b1,
              double* b2) {
  auto run = [&](auto q) {
    constexpr int Q = decltype(q)::value;
    if (rows) sweep_rows<Q, Pos>(sw, a, f0, o0, fbl, fbr, fb_stride, b1, b2);
    else sweep_lines<Q, Pos>(sw, a, f0, o0, fbl, fbr, fb_stride, b1);
  };
  switch (sw.order) {
    case 1: run(std::integral_constant<int, 1>{}); break;
    case 2: run(std::integral_constant<int, 2>{}); break;
    default: run(std::integral_constant<int, 4>{}); break;
  }
}

}  // namespace

void divergence(const Grid2D& g, int order, const lattice::WaveModel& model, const Field& dist,
                const WallData* walls, Field& out) {
  // Only interior cells of `out` are written. The x sweep runs first and
  // overwrites, the y sweep accumulates.
  const int kp = model.k * model.p;
  const std::size_t buf = static_cast<std::size_t>(std::max(g.nx, g.ny)) + 1;
  std::vector<double> b1(buf), b2(buf);
  for (int dir = 0; dir < 2; ++dir) {
    Sweep sw;
    sw.order = order;
    sw.n = g.n(dir);
    sw.lines = g.n(1 - dir);
    sw.st = dir == 0 ? 1 : g.sx();
    sw.across = dir == 0 ? g.sx() : 1;
    const Side lo_side = dir == 0 ? Side::Left : Side::Bottom;
    const Side hi_side = dir == 0 ? Side::Right : Side::Top;
    sw.lw = is_wall(g.side(lo_side));
    sw.rw = is_wall(g.side(hi_side));
    if ((sw.lw || sw.rw) && walls == nullptr) throw NumericalError("wall data missing");
    sw.lo = sw.lw ? 2 : -1;
    sw.hi = sw.rw ? sw.n - 4 : sw.n - 1;
    sw.inv_h = 1. / g.h(dir);
    sw.assign = dir == 0;
    for (int w = 0; w < model.k; ++w) {
      const double a = model.speed[dir][w];
      if (a == 0.) {
        if (dir == 0) {
          for (int c = 0; c < model.p; ++c)
            for (int j = 0; j < g.ny; ++j) {
              double* o = out.comp(w * model.p + c) + g.idx(0, j);
              std::fill(o, o + g.nx, 0.);
            }
        }
        continue;
      }
      for (int c = 0; c < model.p; ++c) {
        const int comp = w * model.p + c;
        const double* fbl = sw.lw ? walls->fb[static_cast<int>(lo_side)].data() + comp : nullptr;
        const double* fbr = sw.rw ? walls->fb[static_cast<int>(hi_side)].data() + comp : nullptr;
        const double* f0 = dist.comp(comp) + g.idx(0, 0);
        double* o0 = out.comp(comp) + g.idx(0, 0);
        if (a > 0.) {
          dispatch<true>(sw, dir == 1, a, f0, o0, fbl, fbr, kp, b1.data(), b2.data());
        } else {
          dispatch<false>(sw, dir == 1, a, f0, o0, fbl, fbr, kp, b1.data(), b2.data());
        }
      }
    }
  }
}

void reconstruct_field(const Grid2D& g, const lattice::Lattice& lat, const Field& jin_xin,
                       Field& dist) {
  const int p = lat.model.p;
  const int k = lat.model.k;
  const std::size_t cells = g.padded();
  const auto& qp = lat.basis.q_bar_plus;
  for (int w = 0; w < k; ++w) {
    for (int c = 0; c < p; ++c) {
      double* out = dist.comp(w * p + c);
      const double c0 = qp(w, 0);
      const double c1 = qp(w, 1);
      const double c2 = qp(w, 2);
      const double* u = jin_xin.comp(c);
      const double* v1 = jin_xin.comp(p + c);
      const double* v2 = jin_xin.comp(2 * p + c);
      for (std::size_t i = 0; i < cells; ++i) out[i] = c0 * u[i] + c1 * v1[i] + c2 * v2[i];
    }
  }
}

void halo_exchange(const Grid2D& g, Field& f) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const int sx = g.sx();
  for (int c = 0; c < f.ncomp(); ++c) {
    double* p = f.comp(c);
    // x halos on interior rows
    for (int j = 0; j < g.ny; ++j) {
      double* row = p + g.idx(0, j);
      for (int l = 1; l <= kHalo; ++l) {
        if (g.side(Side::Left) == BoundaryKind::Periodic) {
          row[-l] = row[g.nx - l];
          row[g.nx - 1 + l] = row[l - 1];
        } else {
          if (is_wall(g.side(Side::Left))) row[-l] = nan;
          if (is_wall(g.side(Side::Right))) row[g.nx - 1 + l] = nan;
        }
      }
    }
    // y halos over the full padded width, which also fills corners
    for (int l = 1; l <= kHalo; ++l) {
      double* below = p + static_cast<std::ptrdiff_t>(kHalo - l) * sx;
      double* above = p + static_cast<std::ptrdiff_t>(kHalo + g.ny - 1 + l) * sx;
      if (g.side(Side::Bottom) == BoundaryKind::Periodic) {
        const double* src_b = p + static_cast<std::ptrdiff_t>(kHalo + g.ny - l) * sx;
        const double* src_a = p + static_cast<std::ptrdiff_t>(kHalo + l - 1) * sx;
        std::copy(src_b, src_b + sx, below);
        std::copy(src_a, src_a + sx, above);
      } else {
        if (is_wall(g.side(Side::Bottom))) std::fill(below, below + sx, nan);
        if (is_wall(g.side(Side::Top))) std::fill(above, above + sx, nan);
      }
    }
  }
}

}  // namespace kinrelax::space
