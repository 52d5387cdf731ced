#include "kinrelax/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

namespace kinrelax::harness {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

GaussianCase GaussianCase::preset(const std::string& id) {
  GaussianCase gc;
  if (id == "a") return gc;
  if (id == "b") {
    gc.a = 1000.;
    return gc;
  }
  if (id == "c") {
    gc.alpha = 0.;
    return gc;
  }
  throw ConfigError("unknown Gaussian preset '" + id + "'");
}

double exact_gaussian(const GaussianCase& gc, double x, double y, double t) {
  const double d2 = gc.delta * gc.delta;
  const double spread = d2 + 4. * gc.alpha * t;
  const double dx = x - 0.5 - gc.c1 * t;
  const double dy = y - 0.5 - gc.c2 * t;
  return 1. + 0.01 * d2 / spread * std::exp(-(dx * dx + dy * dy) / spread);
}

timeint::Solver<systems::ScalarAdvDiff> make_gaussian(const GaussianCase& gc, int n, int order) {
  space::Grid2D g;
  g.nx = g.ny = n;
  g.dx = g.dy = 1. / n;
  // Samples sit at the nodes x_i = i / N.
  g.x0 = g.y0 = -0.5 * g.dx;
  timeint::SchemeConfig cfg;
  cfg.order = order;
  cfg.cfl = gc.cfl;
  cfg.iterations = gc.iterations;
  cfg.speed.value = gc.a;
  cfg.lattice = gc.lattice;
  timeint::Solver<systems::ScalarAdvDiff> s(g, systems::ScalarAdvDiff(gc.c1, gc.c2, gc.alpha), cfg);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) s.state().at(g, 0, i, j) = exact_gaussian(gc, g.xc(i), g.yc(j), 0.);
  const double d2 = gc.delta * gc.delta;
  s.set_equilibrium_fluxes([&](int i, int j) {
    std::array<systems::Vec<1>, 2> grad{systems::Vec<1>::Zero(), systems::Vec<1>::Zero()};
    if (gc.v_init == VInit::ChapmanEnskog) {
      const double x = g.xc(i) - 0.5;  // analytic gradient of the initial bump
      const double y = g.yc(j) - 0.5;
      const double bump = 0.01 * std::exp(-(x * x + y * y) / d2);
      grad[0][0] = -2. * x / d2 * bump;
      grad[1][0] = -2. * y / d2 * bump;
    }
    return grad;
  });
  return s;
}

double l2_error(const timeint::Solver<systems::ScalarAdvDiff>& s, const GaussianCase& gc) {
  const auto& g = s.grid();
  double num = 0.;
  double den = 0.;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double ue = exact_gaussian(gc, g.xc(i), g.yc(j), s.time());
      const double e = s.state().at(g, 0, i, j) - ue;
      num += e * e;
      den += ue * ue;
    }
  }
  return std::sqrt(num / den);
}

ErrorReport run_gaussian(const GaussianCase& gc, int n, int order) {
  const auto t0 = Clock::now();
  auto s = make_gaussian(gc, n, order);
  const double m0 = s.totals()[0];
  s.advance(gc.t_end);
  ErrorReport r;
  r.n = n;
  r.order = order;
  r.a = gc.a;
  r.error = l2_error(s, gc);
  r.slope = std::numeric_limits<double>::quiet_NaN();
  r.knudsen = collision::knudsen(gc.alpha, gc.a, gc.delta);
  r.mass_drift = std::abs(s.totals()[0] - m0) / m0;
  r.steps = s.steps();
  r.seconds = seconds_since(t0);
  return r;
}

void fill_slopes(std::vector<ErrorReport>& reports) {
  for (std::size_t i = 0; i < reports.size(); ++i) {
    reports[i].slope = std::numeric_limits<double>::quiet_NaN();
    if (i > 0 && reports[i - 1].order == reports[i].order) {
      reports[i].slope = std::log2(reports[i - 1].error / reports[i].error);
    }
  }
}

std::vector<ErrorReport> convergence_study(const GaussianCase& gc, const std::vector<int>& orders,
                                           const std::vector<int>& grids) {
  std::vector<ErrorReport> out;
  for (int order : orders)
    for (int n : grids) out.push_back(run_gaussian(gc, n, order));
  fill_slopes(out);
  return out;
}

std::vector<ErrorReport> knudsen_study(GaussianCase gc, int n, int order,
                                       const std::vector<double>& multipliers) {
  std::vector<ErrorReport> out;
  const double c = std::max(std::abs(gc.c1), std::abs(gc.c2));
  for (double m : multipliers) {
    gc.a = m * c;
    out.push_back(run_gaussian(gc, n, order));
  }
  fill_slopes(out);
  return out;
}

// ---- Couette -----------------------------------------------------------------

double CouetteCase::wall_speed() const {
  return v_wall > 0. ? v_wall : 1.3 * std::sqrt(gamma);
}

double CouetteCase::exact_temperature(double x) const {
  const double v = wall_speed();
  const double k = (gamma - 1.) * pr / (2. * gamma) * v * v;
  return adiabatic ? 1. + k * (1. - x * x) : 1. + k * x * (1. - x);
}

CouetteReport run_couette(const CouetteCase& cc, int n, int order) {
  const auto t0 = Clock::now();
  space::Grid2D g;
  g.nx = n;
  g.ny = cc.ny;
  g.dx = g.dy = 1. / n;
  g.sides = {cc.adiabatic ? space::BoundaryKind::WallAdiabatic : space::BoundaryKind::WallIsothermal,
             space::BoundaryKind::WallIsothermal, space::BoundaryKind::Periodic,
             space::BoundaryKind::Periodic};
  boundary::WallSpecs walls;
  walls[0].vel[1] = cc.wall_speed();
  walls[0].temperature = 1.;
  walls[1].temperature = 1.;
  timeint::SchemeConfig cfg;
  cfg.order = order;
  cfg.cfl = cc.cfl;
  cfg.iterations = cc.iterations;
  cfg.speed = cc.speed;
  const systems::CompressibleNS sys(cc.gamma, cc.mu, cc.pr);
  timeint::Solver<systems::CompressibleNS> s(g, sys, cfg, walls);
  const systems::Vec<4> rest = sys.state_from(1., 0., 0., 1.);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      for (int c = 0; c < 4; ++c) s.state().at(g, c, i, j) = rest[c];
  s.set_equilibrium_fluxes([](int, int) {
    return std::array<systems::Vec<4>, 2>{systems::Vec<4>::Zero(), systems::Vec<4>::Zero()};
  });
  const double m0 = s.totals()[0];

  std::vector<double> temp(static_cast<std::size_t>(n));
  auto read_t = [&](std::vector<double>& t) {
    for (int i = 0; i < n; ++i) t[i] = sys.temperature(s.cell(i, 0));
  };
  read_t(temp);
  // The rate is taken over a window rather than one step: the first steps
  // of a low-order run can leave T bit-identical while momentum develops.
  if (!(cc.rate_window > 0.)) throw ConfigError("rate window must be positive");
  std::vector<double> prev = temp;
  double t_prev = s.time();
  CouetteReport out;
  double rate = std::numeric_limits<double>::infinity();
  while (s.steps() < cc.max_steps && s.time() < cc.t_max) {
    auto [a, dt] = s.cfl_policy();
    s.step(a, dt);
    if (s.time() - t_prev < cc.rate_window) continue;
    read_t(temp);
    rate = 0.;
    for (int i = 0; i < n; ++i) rate = std::max(rate, std::abs(temp[i] - prev[i]));
    rate /= s.time() - t_prev;
    if (rate < cc.steady_tol) break;
    std::swap(prev, temp);
    t_prev = s.time();
  }
  if (!(rate < cc.steady_tol)) {
    throw NumericalError("Couette run did not reach steady state (max |dT/dt| = " +
                         std::to_string(rate) + ")");
  }
  out.residual = rate;
  out.t_final = s.time();
  auto& r = out.report;
  r.n = n;
  r.order = order;
  r.slope = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < n; ++i) {
    const double x = g.xc(i);
    const double te = cc.exact_temperature(x);
    out.x.push_back(x);
    out.temperature.push_back(temp[i]);
    out.exact.push_back(te);
    r.error = std::max(r.error, std::abs(temp[i] - te));
  }
  r.a = s.cfl_policy().first;
  r.mass_drift = std::abs(s.totals()[0] - m0) / m0;
  r.steps = s.steps();
  r.seconds = seconds_since(t0);
  return out;
}

// ---- Shock / boundary layer ---------------------------------------------------

timeint::Solver<systems::CompressibleNS> make_shock(const ShockCase& sc) {
  space::Grid2D g;
  g.nx = sc.nx;
  g.ny = sc.ny;
  g.dx = 1. / sc.nx;
  g.dy = 0.5 / sc.ny;
  g.sides = {space::BoundaryKind::WallAdiabatic, space::BoundaryKind::WallAdiabatic,
             space::BoundaryKind::WallAdiabatic, space::BoundaryKind::Symmetry};
  timeint::SchemeConfig cfg;
  cfg.order = sc.order;
  cfg.cfl = sc.cfl;
  cfg.speed = sc.speed;
  if (!(sc.re > 0.)) throw ConfigError("Reynolds number must be positive");
  const systems::CompressibleNS sys(sc.gamma, 1. / sc.re, sc.pr);
  timeint::Solver<systems::CompressibleNS> s(g, sys, cfg, boundary::WallSpecs{});
  // Primitive (rho, u, v, P) = (120, 0, 0, 120/gamma) left of x = 1/2, (1.2, 0, 0, 1.2/gamma) right.
  const systems::Vec<4> left = sys.state_from(120., 0., 0., 120. / sc.gamma);
  const systems::Vec<4> right = sys.state_from(1.2, 0., 0., 1.2 / sc.gamma);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const systems::Vec<4>& u = g.xc(i) <= 0.5 ? left : right;
      for (int c = 0; c < 4; ++c) s.state().at(g, c, i, j) = u[c];
    }
  }
  s.set_equilibrium_fluxes([](int, int) {
    return std::array<systems::Vec<4>, 2>{systems::Vec<4>::Zero(), systems::Vec<4>::Zero()};
  });
  return s;
}

ShockReport run_shock(const ShockCase& sc,
                      const std::function<void(const timeint::Solver<systems::CompressibleNS>&)>&
                          on_snapshot) {
  const auto t0 = Clock::now();
  auto s = make_shock(sc);
  const auto& sys = s.system();
  ShockReport r;
  r.mass0 = s.totals()[0];
  std::vector<double> stops = sc.snapshot_times;
  std::sort(stops.begin(), stops.end());
  std::size_t next = 0;
  while (next < stops.size() && stops[next] <= 0.) {
    if (on_snapshot) on_snapshot(s);
    ++next;
  }
  const auto& g = s.grid();
  r.min_rho = r.min_p = r.t_min = std::numeric_limits<double>::infinity();
  r.t_max = -r.t_min;
  auto track = [&] {
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const auto u = s.cell(i, j);
        const double p = sys.pressure(u);
        r.min_rho = std::min(r.min_rho, u[0]);
        r.min_p = std::min(r.min_p, p);
        r.t_min = std::min(r.t_min, p / u[0]);
        r.t_max = std::max(r.t_max, p / u[0]);
      }
    }
  };
  track();
  while (s.time() < sc.t_end) {
    const double target = next < stops.size() ? std::min(stops[next], sc.t_end) : sc.t_end;
    s.step_to(target);
    track();
    if (next < stops.size() && s.time() >= stops[next]) {
      if (on_snapshot) on_snapshot(s);
      ++next;
    }
  }
  r.mass = s.totals()[0];
  r.steps = s.steps();
  r.t_final = s.time();
  r.seconds = seconds_since(t0);
  return r;
}

// ---- Output ------------------------------------------------------------------

void write_snapshot(const std::string& path, const timeint::Solver<systems::CompressibleNS>& s) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  const auto& g = s.grid();
  const auto& sys = s.system();
  os << "x,y,rho,u,v,P,T\n" << std::setprecision(10);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const auto u = s.cell(i, j);
      const double p = sys.pressure(u);
      os << g.xc(i) << ',' << g.yc(j) << ',' << u[0] << ',' << u[1] / u[0] << ',' << u[2] / u[0]
         << ',' << p << ',' << p / u[0] << '\n';
    }
  }
}

void write_reports(const std::string& path, const std::vector<ErrorReport>& reports) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << "order,n,a,error,slope,knudsen,mass_drift,steps,seconds\n" << std::setprecision(10);
  for (const auto& r : reports) {
    os << r.order << ',' << r.n << ',' << r.a << ',' << r.error << ',' << r.slope << ','
       << r.knudsen << ',' << r.mass_drift << ',' << r.steps << ',' << r.seconds << '\n';
  }
}

}  // namespace kinrelax::harness
