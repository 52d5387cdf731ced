#pragma once

// Time integration of the Jin-Xin form: first-order IMEX and deferred
// correction (DeC) on Lobatto IIIC tableaus. Transport is explicit; the
// relaxation is implicit and solved per cell, coupled across stages.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kinrelax/boundary.hpp"
#include "kinrelax/collision.hpp"
#include "kinrelax/error.hpp"
#include "kinrelax/lattice.hpp"
#include "kinrelax/space.hpp"
#include "kinrelax/systems.hpp"

namespace kinrelax::timeint {

struct DecTableau {
  int s = 1;
  std::vector<double> c;
  Eigen::MatrixXd a;

  /// Order 1 gives the single-stage implicit Euler tableau; 2 and 4 the
  /// Lobatto IIIC tableaus.
  static DecTableau for_order(int order);
};

struct SpeedPolicy {
  bool dynamic = false;
  double value = 0.;    // fixed kinetic speed
  double factor = 2.1;  // dynamic: a = factor * max wave speed
  double floor = 0.;
};

struct SchemeConfig {
  int order = 4;
  int iterations = 0;  // 0: same as order
  double cfl = 0.;     // 0: 1 for orders 1 and 4, 0.8 for order 2
  SpeedPolicy speed;
  lattice::LatticeKind lattice = lattice::LatticeKind::D2Q4;

  int resolved_iterations() const { return order == 1 ? 1 : (iterations > 0 ? iterations : order); }
  double resolved_cfl() const { return cfl > 0. ? cfl : (order == 2 ? 0.8 : 1.); }
};

template <class Sys>
class Solver {
 public:
  static constexpr int P = Sys::P;
  static constexpr int kJx = 3 * P;  // Jin-Xin components per cell
  static constexpr int kD = 2 * P;   // relaxed components per cell

  Solver(space::Grid2D grid, Sys sys, SchemeConfig cfg, boundary::WallSpecs walls = {})
      : grid_(std::move(grid)), sys_(std::move(sys)), cfg_(cfg), walls_(walls),
        tableau_(DecTableau::for_order(cfg.order)), state_(grid_, kJx) {
    grid_.validate(cfg_.order);
    if (cfg_.resolved_iterations() < 1) throw ConfigError("DeC iterations must be >= 1");
    if (!cfg_.speed.dynamic && !(cfg_.speed.value > 0.)) {
      throw ConfigError("fixed kinetic speed must be positive");
    }
    for (auto k : grid_.sides) {
      if (space::is_wall(k) && !std::is_same_v<Sys, systems::CompressibleNS>) {
        throw ConfigError("wall boundaries are only available for Navier-Stokes");
      }
    }
    stages_.assign(tableau_.s, space::Field(grid_, kJx));
    res_.assign(tableau_.s, space::Field(grid_, kJx));
    dist_ = space::Field(grid_, 8 * P);
    div_ = space::Field(grid_, 8 * P);
  }

  const space::Grid2D& grid() const { return grid_; }
  const Sys& system() const { return sys_; }
  const SchemeConfig& config() const { return cfg_; }
  space::Field& state() { return state_; }
  const space::Field& state() const { return state_; }
  long steps() const { return steps_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  systems::Vec<P> cell(int i, int j) const { return state_cell(grid_.idx(i, j)); }

  /// Sum of each conserved variable over interior cells (times cell area).
  systems::Vec<P> totals() const {
    systems::Vec<P> s = systems::Vec<P>::Zero();
    for (int j = 0; j < grid_.ny; ++j)
      for (int i = 0; i < grid_.nx; ++i) s += cell(i, j);
    return s * grid_.dx * grid_.dy;
  }

  double max_wave_speed() const {
    double m = 0.;
    for (int j = 0; j < grid_.ny; ++j)
      for (int i = 0; i < grid_.nx; ++i) m = std::max(m, sys_.max_wave_speed(cell(i, j)));
    return m;
  }

  /// Kinetic speed and step size for the current field.
  std::pair<double, double> cfl_policy() const {
    double a = cfg_.speed.value;
    if (cfg_.speed.dynamic) a = std::max(cfg_.speed.factor * max_wave_speed(), cfg_.speed.floor);
    if (!(a > 0.) || !std::isfinite(a)) throw NumericalError("kinetic speed is not positive");
    return {a, cfg_.resolved_cfl() * std::min(grid_.dx, grid_.dy) / a};
  }

  /// One time step with the kinetic speed frozen at `a`.
  void step(double a, double dt) {
    prepare(a, dt);
    dt_ = dt;
    const int s = tableau_.s;
    std::vector<const space::Field*> res(s);
    residual(state_, res_[0]);
    for (int m = 0; m < s; ++m) res[m] = &res_[0];
    relax(res);
    for (int it = 1; it < cfg_.resolved_iterations(); ++it) {
      for (int m = 0; m < s; ++m) {
        residual(stages_[m], res_[m]);
        res[m] = &res_[m];
      }
      relax(res);
    }
    std::swap(state_, stages_[s - 1]);
    time_ += dt;
    ++steps_;
  }

  /// Step with the CFL policy, clipping the last step to land on t_end.
  double step_to(double t_end) {
    auto [a, dt] = cfl_policy();
    if (time_ + dt > t_end) dt = t_end - time_;
    step(a, dt);
    if (std::abs(time_ - t_end) < 1e-14 * std::max(1., t_end)) time_ = t_end;
    return dt;
  }

  void advance(double t_end) {
    while (time_ < t_end) step_to(t_end);
  }

  /// Sets v = f(u) - D grad u from a supplied gradient, or v = f(u) if null.
  template <class Grad>
  void set_equilibrium_fluxes(Grad&& grad_u) {
    for (int j = 0; j < grid_.ny; ++j) {
      for (int i = 0; i < grid_.nx; ++i) {
        const auto id = grid_.idx(i, j);
        const systems::Vec<P> u = cell(i, j);
        std::array<systems::Vec<P>, 2> g = grad_u(i, j);
        for (int d = 0; d < 2; ++d) {
          systems::Vec<P> v = sys_.flux(u, d);
          for (int e = 0; e < 2; ++e) v -= sys_.diffusion(u, d, e) * g[e];
          for (int c = 0; c < P; ++c) state_.comp((1 + d) * P + c)[id] = v[c];
        }
      }
    }
  }

  /// Jin-Xin residual Qbar sum_i Lambda_i delta_i (Qbar^+ U); fills halos of U.
  void residual(space::Field& U, space::Field& out) {
    fill_halos(U);
    space::reconstruct_field(grid_, lat_, U, dist_);
    space::divergence(grid_, cfg_.order, lat_.model, dist_, walls_ptr(), div_);
    const int k = lat_.model.k;
    const int nx = grid_.nx;
    for (int c = 0; c < P; ++c) {
      for (int j = 0; j < grid_.ny; ++j) {
        const auto row = grid_.idx(0, j);
        double* ru = out.comp(c) + row;
        double* r1 = out.comp(P + c) + row;
        double* r2 = out.comp(2 * P + c) + row;
        for (int w = 0; w < k; ++w) {
          const double l1 = lat_.model.speed[0][w];
          const double l2 = lat_.model.speed[1][w];
          const double* d = div_.comp(w * P + c) + row;
          if (w == 0) {
            for (int i = 0; i < nx; ++i) {
              ru[i] = d[i];
              r1[i] = l1 * d[i];
              r2[i] = l2 * d[i];
            }
          } else {
            for (int i = 0; i < nx; ++i) {
              ru[i] += d[i];
              r1[i] += l1 * d[i];
              r2[i] += l2 * d[i];
            }
          }
        }
      }
    }
  }

  void fill_halos(space::Field& U) {
    space::halo_exchange(grid_, U);
    for (int s = 0; s < 4; ++s) {
      if (grid_.sides[s] == space::BoundaryKind::Symmetry) {
        boundary::symmetry_fill(grid_, sys_, U, static_cast<space::Side>(s));
      }
    }
    if constexpr (std::is_same_v<Sys, systems::CompressibleNS>) {
      if (has_walls()) boundary::wall_data(grid_, lat_, sys_, walls_, U, wall_data_);
    }
  }

  const lattice::Lattice& lattice() const { return lat_; }
  /// Rebuilds lattice-dependent data for kinetic speed a (no-op if unchanged).
  void prepare(double a, double dt) {
    if (a != lat_a_) {
      lat_ = lattice::build_lattice(cfg_.lattice, a, P);
      moments_ = collision::lattice_moments(lat_.model);
      lat_a_ = a;
      linear_dt_ = -1.;
    }
    if constexpr (Sys::kLinear) {
      if (dt != linear_dt_ && sys_.has_diffusion()) build_linear_cache(dt);
    }
  }

 private:
  using DVec = Eigen::Matrix<double, kD, 1>;
  using DMat = Eigen::Matrix<double, kD, kD>;

  systems::Vec<P> state_cell(std::ptrdiff_t id) const {
    systems::Vec<P> u;
    for (int c = 0; c < P; ++c) u[c] = state_.comp(c)[id];
    return u;
  }

  bool has_walls() const {
    for (auto k : grid_.sides)
      if (space::is_wall(k)) return true;
    return false;
  }
  const space::WallData* walls_ptr() const { return has_walls() ? &wall_data_ : nullptr; }

  static constexpr int count_viscous() {
    int n = 0;
    for (bool z : Sys::kInviscidRows) n += z ? 0 : 1;
    return 2 * n;
  }
  static constexpr int kNR = count_viscous();  // relaxed components with diffusion

  static constexpr std::array<int, kNR> viscous_index() {
    std::array<int, kNR> idx{};
    int n = 0;
    for (int d = 0; d < 2; ++d)
      for (int c = 0; c < P; ++c)
        if (!Sys::kInviscidRows[c]) idx[n++] = d * P + c;
    return idx;
  }
  static constexpr std::array<int, kD - kNR> inviscid_index() {
    std::array<int, kD - kNR> idx{};
    int n = 0;
    for (int d = 0; d < 2; ++d)
      for (int c = 0; c < P; ++c)
        if (Sys::kInviscidRows[c]) idx[n++] = d * P + c;
    return idx;
  }

  void build_linear_cache(double dt) {
    const int s = tableau_.s;
    const DMat g = collision::relaxation_matrix(moments_, sys_, systems::Vec<P>::Zero());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(s * kD, s * kD);
    Eigen::MatrixXd at = Eigen::MatrixXd::Zero(s * kD, s * kD);
    for (int i = 0; i < s; ++i) {
      m.block(i * kD, i * kD, kD, kD) = g;
      for (int r = 0; r < s; ++r) {
        m.block(i * kD, r * kD, kD, kD).diagonal().array() += dt * tableau_.a(i, r);
        at.block(i * kD, r * kD, kD, kD).diagonal().array() += dt * tableau_.a(i, r);
      }
    }
    linear_k_.setZero();
    linear_k_.topLeftCorner(s * kD, s * kD) = at * m.partialPivLu().inverse();
    linear_dt_ = dt;
  }

  void relax(const std::vector<const space::Field*>& res) {
    switch (tableau_.s) {
      case 1: relax_s<1>(res); break;
      case 2: relax_s<2>(res); break;
      default: relax_s<3>(res); break;
    }
  }

  template <int S>
  void relax_s(const std::vector<const space::Field*>& res) {
    const Eigen::Matrix<double, S, S> A = tableau_.a.template topLeftCorner<S, S>();
    const Eigen::Matrix<double, S, S> a_inv = A.inverse();
    const bool diffusive = sys_.has_diffusion();
    long bad_cell = -1;
    systems::Vec<P> bad_state = systems::Vec<P>::Zero();
    const int nx = grid_.nx;
    const int ny = grid_.ny;
    const double h = dt_;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const auto id = grid_.idx(i, j);
        std::array<systems::Vec<P>, S> u;
        std::array<DVec, S> b, f;
        for (int m = 0; m < S; ++m) {
          for (int c = 0; c < kJx; ++c) {
            double acc = 0.;
            for (int r = 0; r < S; ++r) acc += A(m, r) * res[r]->comp(c)[id];
            const double x0 = state_.comp(c)[id] - h * acc;
            if (c < P) u[m][c] = x0; else b[m][c - P] = x0;
          }
          if (!sys_.admissible(u[m])) {
#pragma omp critical(kr_bad_cell)
            {
              bad_cell = j * static_cast<long>(nx) + i;
              bad_state = u[m];
            }
            u[m] = state_cell(id);
          }
          f[m].template head<P>() = sys_.flux(u[m], 0);
          f[m].template tail<P>() = sys_.flux(u[m], 1);
        }
        std::array<DVec, S> v = f;
        if (diffusive) v = solve_relaxation<S>(u, b, f, A, a_inv, h);
        for (int m = 0; m < S; ++m) {
          for (int c = 0; c < P; ++c) stages_[m].comp(c)[id] = u[m][c];
          for (int c = 0; c < kD; ++c) stages_[m].comp(P + c)[id] = v[m][c];
        }
      }
    }
    if (bad_cell >= 0) {
      std::ostringstream os;
      os << "inadmissible state at cell (" << bad_cell % nx << ", " << bad_cell / nx
         << ") at t=" << time_ << " after " << steps_ << " steps, stage state ["
         << bad_state.transpose() << ']';
      throw AdmissibilityError(os.str());
    }
  }

  // Solves M w = f - b with M = blockdiag(G_m) + h A (x) I, v = b + h (A (x) I) w.
  // Inviscid rows have zero G rows, so their w follows from A alone and v = f there.
  template <int S>
  std::array<DVec, S> solve_relaxation(const std::array<systems::Vec<P>, S>& u,
                                       const std::array<DVec, S>& b,
                                       const std::array<DVec, S>& f,
                                       const Eigen::Matrix<double, S, S>& A,
                                       const Eigen::Matrix<double, S, S>& a_inv, double h) const {
    std::array<DVec, S> v;
    if constexpr (Sys::kLinear) {
      constexpr int N = S * kD;
      Eigen::Matrix<double, N, 1> r;
      for (int m = 0; m < S; ++m) r.template segment<kD>(m * kD) = f[m] - b[m];
      const Eigen::Matrix<double, N, 1> corr =
          linear_k_.template topLeftCorner<N, N>() * r;
      for (int m = 0; m < S; ++m) v[m] = b[m] + corr.template segment<kD>(m * kD);
      (void)u;
      (void)A;
      (void)a_inv;
      return v;
    } else {
      constexpr int N = S * kNR;
      constexpr auto vis = viscous_index();
      constexpr auto inv = inviscid_index();
      constexpr int NZ = kD - kNR;
      std::array<DMat, S> g;
      for (int m = 0; m < S; ++m) g[m] = collision::relaxation_matrix(moments_, sys_, u[m]);
      // inviscid components: h A w_z = r_z
      std::array<Eigen::Matrix<double, NZ, 1>, S> wz;
      for (int z = 0; z < NZ; ++z) {
        Eigen::Matrix<double, S, 1> rz;
        for (int m = 0; m < S; ++m) rz[m] = f[m][inv[z]] - b[m][inv[z]];
        const Eigen::Matrix<double, S, 1> w = a_inv * rz / h;
        for (int m = 0; m < S; ++m) wz[m][z] = w[m];
      }
      Eigen::Matrix<double, N, N> mat = Eigen::Matrix<double, N, N>::Zero();
      Eigen::Matrix<double, N, 1> rhs;
      for (int m = 0; m < S; ++m) {
        for (int i = 0; i < kNR; ++i) {
          const int ri = vis[i];
          double acc = f[m][ri] - b[m][ri];
          for (int z = 0; z < NZ; ++z) acc -= g[m](ri, inv[z]) * wz[m][z];
          rhs[m * kNR + i] = acc;
          for (int jj = 0; jj < kNR; ++jj) mat(m * kNR + i, m * kNR + jj) = g[m](ri, vis[jj]);
          for (int r = 0; r < S; ++r) mat(m * kNR + i, r * kNR + i) += h * A(m, r);
        }
      }
      const Eigen::Matrix<double, N, 1> w = mat.partialPivLu().solve(rhs);
      for (int m = 0; m < S; ++m) {
        v[m] = b[m];
        for (int r = 0; r < S; ++r) {
          for (int i = 0; i < kNR; ++i) v[m][vis[i]] += h * A(m, r) * w[r * kNR + i];
        }
        for (int z = 0; z < NZ; ++z) v[m][inv[z]] = f[m][inv[z]];
      }
      return v;
    }
  }

  space::Grid2D grid_;
  Sys sys_;
  SchemeConfig cfg_;
  boundary::WallSpecs walls_;
  DecTableau tableau_;
  space::Field state_;
  std::vector<space::Field> stages_;
  std::vector<space::Field> res_;
  space::Field dist_;
  space::Field div_;
  space::WallData wall_data_;
  lattice::Lattice lat_;
  collision::LatticeMoments moments_;
  double lat_a_ = -1.;
  double linear_dt_ = -1.;
  Eigen::Matrix<double, 3 * kD, 3 * kD> linear_k_;
  double dt_ = 0.;
  double time_ = 0.;
  long steps_ = 0;
};

}  // namespace kinrelax::timeint

namespace kinrelax::timeint {

/// First-order IMEX step written directly on distributions,
///   F+ = (I + W)^-1 (W (F - dt sum Lambda_i delta_i F) + M(u+)),
/// with W the distribution-space inverse collision matrix at u+. Kept as an
/// independent reference for the Jin-Xin solver; periodic grids only.
template <class Sys>
space::Field step_imex1_distribution(const space::Grid2D& g, const lattice::Lattice& lat,
                                     const Sys& sys, int order, space::Field dist, double dt) {
  constexpr int P = Sys::P;
  for (auto k : g.sides) {
    if (k != space::BoundaryKind::Periodic) throw ConfigError("distribution step is periodic only");
  }
  const int kp = lat.model.k * P;
  space::halo_exchange(g, dist);
  space::Field div(g, kp);
  space::divergence(g, order, lat.model, dist, nullptr, div);
  space::Field out(g, kp);
  Eigen::VectorXd fs(kp);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const auto id = g.idx(i, j);
      for (int c = 0; c < kp; ++c) fs[c] = dist.comp(c)[id] - dt * div.comp(c)[id];
      systems::Vec<P> u = systems::Vec<P>::Zero();
      for (int w = 0; w < lat.model.k; ++w) u += fs.segment<P>(w * P);
      const auto op = collision::relaxation_inverse(lat.model, sys, u, dt);
      const Eigen::MatrixXd om = collision::omega_inverse_distribution(lat.basis, op);
      const Eigen::VectorXd mx = lattice::maxwellian(lat.model, u, sys.flux(u, 0), sys.flux(u, 1));
      const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(kp, kp) + om;
      const Eigen::VectorXd fn = lhs.partialPivLu().solve(om * fs + mx);
      for (int c = 0; c < kp; ++c) out.comp(c)[id] = fn[c];
    }
  }
  return out;
}

}  // namespace kinrelax::timeint
