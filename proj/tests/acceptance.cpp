// Acceptance checks. Prints one PASS/FAIL line per criterion; pass criterion
// numbers on the command line to run a subset. Exit status is non-zero if any
// selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kinrelax/collision.hpp"
#include "kinrelax/error.hpp"
#include "kinrelax/harness.hpp"
#include "kinrelax/stability.hpp"
#include "reference_tables.hpp"

using namespace kinrelax;
namespace ref = kinrelax::reference;
using systems::CompressibleNS;
using systems::Vec;

namespace {

// ---- pinned tolerances --------------------------------------------------------

constexpr double kCflTol = 0.01;
constexpr double kStabilitySeconds = 10.;
constexpr double kSlopeTolC = 0.15;
constexpr double kValueTolC = 0.05;
constexpr double kValueTolA = 0.05;
constexpr double kSlopeTolB2 = 0.3;
constexpr double kSlopeTolB4 = 0.4;
constexpr double kKnudsenSlope = 2.00;
constexpr double kKnudsenSlopeTol = 0.05;
constexpr double kKnudsenPlateauTol = 0.10;
constexpr double kKnudsenMeshTol = 0.02;
constexpr double kCouetteIsoTol = 2e-3;
constexpr double kCouetteAdiabaticTol = 3e-3;
constexpr double kMassDriftTol = 1e-10;
constexpr double kShockMass = 30.3;
constexpr double kShockMassTol = 1e-8;
constexpr double kShockTMin = 0.3;
constexpr double kShockTMax = 1.3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

double rel(double v, double r) { return std::abs(v - r) / std::abs(r); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

// ---- 1 ----------------------------------------------------------------------------

Outcome stability_table() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto table = stability::critical_table();
  const double secs = seconds_since(t0);
  int matched = 0, total = 0;
  double worst = 0.;
  for (const auto& row : ref::kCriticalCfl) {
    for (int it = 1; it <= row.count; ++it) {
      ++total;
      for (const auto& e : table) {
        if (e.pairing.time_order != row.time_order || e.pairing.spatial != row.flux_order) continue;
        if (row.time_order != 1 && e.pairing.iterations != it) continue;
        const double d = std::abs(e.lambda - row.lambda[it - 1]);
        worst = std::max(worst, d);
        if (d <= kCflTol) ++matched;
      }
    }
  }
  o.require(matched == total && total == 39,
            std::to_string(matched) + "/" + std::to_string(total) + " entries within " +
                fmt(kCflTol) + " (worst " + fmt(worst, 3) + ")");
  o.require(secs < kStabilitySeconds, "runtime " + fmt(secs, 3) + " s < " + fmt(kStabilitySeconds) + " s");
  return o;
}

// ---- 2 ----------------------------------------------------------------------------

Outcome gaussian_c() {
  Outcome o;
  const int orders[3] = {1, 2, 4};
  const std::vector<int> grids(std::begin(ref::kGrids), std::end(ref::kGrids));
  for (int k = 0; k < 3; ++k) {
    const auto rs = harness::convergence_study(harness::GaussianCase::preset("c"), {orders[k]}, grids);
    double worst = 0.;
    for (std::size_t i = 0; i < rs.size(); ++i) worst = std::max(worst, rel(rs[i].error, ref::kGaussianC[k][i]));
    const double slope = rs.back().slope;
    o.require(std::abs(slope - ref::kGaussianCSlope320[k]) <= kSlopeTolC,
              "order " + std::to_string(orders[k]) + " slope 160->320 " + fmt(slope, 3) + " vs " +
                  fmt(ref::kGaussianCSlope320[k], 3));
    o.require(worst <= kValueTolC, "order " + std::to_string(orders[k]) + " L2 max rel dev " +
                                       fmt(worst, 2) + " (N=10..320)");
  }
  return o;
}

// ---- 3 ----------------------------------------------------------------------------

Outcome gaussian_a() {
  Outcome o;
  const auto gc = harness::GaussianCase::preset("a");
  const auto r4 = harness::convergence_study(gc, {4}, {160, 320});
  for (const auto& r : r4) {
    o.require(rel(r.error, ref::kGaussianAPlateau) <= kValueTolA,
              "order 4 N=" + std::to_string(r.n) + " L2 " + fmt(r.error, 6));
  }
  const auto r1 = harness::convergence_study(gc, {1}, {10, 20, 40, 80, 160});
  double worst = 0.;
  for (std::size_t i = 0; i < r1.size(); ++i) worst = std::max(worst, rel(r1[i].error, ref::kGaussianAOrder1[i]));
  o.require(worst <= kValueTolA, "order 1 N<=160 max rel dev " + fmt(worst, 2));
  return o;
}

// ---- 4 ----------------------------------------------------------------------------

Outcome gaussian_b() {
  Outcome o;
  const auto gc = harness::GaussianCase::preset("b");
  for (int order : {2, 4}) {
    const auto rs = harness::convergence_study(gc, {order}, {80, 160, 320});
    const double target = order == 2 ? ref::kGaussianBSlope2 : ref::kGaussianBSlope4;
    const double tol = order == 2 ? kSlopeTolB2 : kSlopeTolB4;
    for (std::size_t i = 1; i < rs.size(); ++i) {
      o.require(std::abs(rs[i].slope - target) <= tol,
                "order " + std::to_string(order) + " slope " + std::to_string(rs[i - 1].n) + "->" +
                    std::to_string(rs[i].n) + " " + fmt(rs[i].slope, 3) + " vs " + fmt(target, 2));
    }
  }
  return o;
}

// ---- 5 ----------------------------------------------------------------------------

Outcome knudsen() {
  Outcome o;
  const auto gc = harness::GaussianCase::preset("a");
  const auto rs = harness::knudsen_study(gc, 320, 4, {2.1, 4.2, 8.4, 16.8});
  o.require(rel(rs[0].error, ref::kGaussianAPlateau) <= kKnudsenPlateauTol,
            "a=2.1c plateau " + fmt(rs[0].error, 6));
  for (std::size_t i = 2; i < rs.size(); ++i) {
    o.require(std::abs(rs[i].slope - kKnudsenSlope) <= kKnudsenSlopeTol,
              "slope a=" + fmt(rs[i - 1].a) + "->" + fmt(rs[i].a) + " " + fmt(rs[i].slope, 3) +
                  " vs " + fmt(kKnudsenSlope, 3));
  }
  const auto fine = harness::knudsen_study(gc, 640, 4, {2.1});
  o.require(rel(fine[0].error, rs[0].error) < kKnudsenMeshTol,
            "plateau change N=320->640 " + fmt(100. * rel(fine[0].error, rs[0].error), 2) + "%");
  return o;
}

// ---- 6, 7 -------------------------------------------------------------------------

Outcome couette_iso() {
  Outcome o;
  harness::CouetteCase cc;
  cc.adiabatic = false;
  for (int order : {2, 4}) {
    const auto r = harness::run_couette(cc, 8, order);
    double peak = 0.;
    for (double t : r.temperature) peak = std::max(peak, t);
    o.require(r.report.error <= kCouetteIsoTol,
              "order " + std::to_string(order) + " N=8 max|T-Te| " + fmt(r.report.error, 3) +
                  " (T peak " + fmt(peak, 7) + " vs " + fmt(ref::kCouetteIsoPeak, 7) + ")");
    o.require(r.report.mass_drift <= kMassDriftTol, "mass drift " + fmt(r.report.mass_drift, 2));
  }
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  std::string errs;
  double drift = 0.;
  for (int n : {100, 200, 1000}) {
    const auto r = harness::run_couette(cc, n, 1);
    monotone = monotone && r.report.error < prev;
    prev = r.report.error;
    drift = std::max(drift, r.report.mass_drift);
    errs += (errs.empty() ? "" : ", ") + fmt(r.report.error, 3);
  }
  o.require(monotone, "order 1 errors N=100,200,1000: " + errs + " decreasing");
  o.require(drift <= kMassDriftTol, "order 1 mass drift " + fmt(drift, 2));
  return o;
}

Outcome couette_adiabatic() {
  Outcome o;
  harness::CouetteCase cc;
  cc.adiabatic = true;
  for (int order : {2, 4}) {
    const auto r = harness::run_couette(cc, 16, order);
    o.require(r.report.error <= kCouetteAdiabaticTol,
              "order " + std::to_string(order) + " N=16 max|T-Te| " + fmt(r.report.error, 3) +
                  " (wall T " + fmt(r.temperature.front(), 7) + " vs " +
                  fmt(ref::kCouetteAdiabaticWall, 7) + ")");
    o.require(r.report.mass_drift <= kMassDriftTol, "mass drift " + fmt(r.report.mass_drift, 2));
  }
  return o;
}

// ---- 8 ----------------------------------------------------------------------------

space::Grid2D periodic_grid(int nx, int ny, double lx = 1., double ly = 1.) {
  space::Grid2D g;
  g.nx = nx;
  g.ny = ny;
  g.dx = lx / nx;
  g.dy = ly / ny;
  return g;
}

template <class Sys>
void zero_gradient(timeint::Solver<Sys>& s) {
  using V = Vec<Sys::P>;
  s.set_equilibrium_fluxes([](int, int) { return std::array<V, 2>{V::Zero(), V::Zero()}; });
}

double check_maxwellian(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-2., 2.);
  double worst = 0.;
  for (auto kind : {lattice::LatticeKind::D2Q4, lattice::LatticeKind::D2Q8}) {
    for (int p : {1, 4}) {
      const auto l = lattice::build_lattice(kind, 3.5, p);
      for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd u(p), f1(p), f2(p);
        for (int c = 0; c < p; ++c) u[c] = d(rng), f1[c] = d(rng), f2[c] = d(rng);
        const Eigen::VectorXd m = lattice::maxwellian(l.model, u, f1, f2);
        const Eigen::VectorXd jx = lattice::reduce(l.basis, m);
        worst = std::max(worst, (jx.head(p) - u).cwiseAbs().maxCoeff());
        worst = std::max(worst, (jx.segment(p, p) - f1).cwiseAbs().maxCoeff());
        worst = std::max(worst, (jx.segment(2 * p, p) - f2).cwiseAbs().maxCoeff());
        worst = std::max(worst, lattice::apply_block(l.basis.h, m, p).cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

double check_pseudo_inverse() {
  double worst = 0.;
  for (auto kind : {lattice::LatticeKind::D2Q4, lattice::LatticeKind::D2Q8}) {
    const auto l = lattice::build_lattice(kind, 2.3, 1);
    const Eigen::MatrixXd& qb = l.basis.q_bar;
    const Eigen::MatrixXd& qp = l.basis.q_bar_plus;
    worst = std::max(worst, (qb * qp - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (qb * qp * qb - qb).cwiseAbs().maxCoeff());
    worst = std::max(worst, (qp * qb * qp - qp).cwiseAbs().maxCoeff());
  }
  return worst;
}

double check_closure(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-1., 1.);
  double worst = 0.;
  for (int trial = 0; trial < 100; ++trial) {
    const systems::ScalarAdvDiff s(10. * unit(rng), 10. * unit(rng), 0.02 * (1. + unit(rng)));
    const auto m = lattice::build_d2q4(40., 1).model;
    const Vec<1> u(unit(rng));
    const auto op = collision::relaxation_inverse(m, s, u, 0.01);
    worst = std::max(worst, (collision::effective_diffusion(m, s, u, op) - collision::assemble_d(s, u))
                                .cwiseAbs()
                                .maxCoeff());
  }
  const CompressibleNS ns(1.4, 0.01, 0.73);
  std::uniform_real_distribution<double> rho(0.3, 2.), p(0.5, 2.);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec<4> u = ns.state_from(rho(rng), unit(rng), unit(rng), p(rng));
    const auto m = lattice::build_d2q4(4.2 * ns.max_wave_speed(u) + 1., 4).model;
    const auto op = collision::relaxation_inverse(m, ns, u, 0.01);
    const auto d = collision::assemble_d(ns, u);
    worst = std::max(worst, (collision::effective_diffusion(m, ns, u, op) - d).cwiseAbs().maxCoeff() /
                                std::max(1e-3, d.cwiseAbs().maxCoeff()));
  }
  return worst;
}

double check_equivalence() {
  const auto gc = harness::GaussianCase::preset("a");
  auto s = harness::make_gaussian(gc, 10, 1);
  const auto lat = lattice::build_d2q4(gc.a, 1);
  space::Field u0 = s.state();
  space::halo_exchange(s.grid(), u0);
  space::Field dist(s.grid(), 4);
  space::reconstruct_field(s.grid(), lat, u0, dist);
  const double dt = 1. / 210.;
  const auto next = timeint::step_imex1_distribution(s.grid(), lat, s.system(), 1, dist, dt);
  s.step(gc.a, dt);
  double worst = 0.;
  for (int j = 0; j < 10; ++j)
    for (int i = 0; i < 10; ++i) {
      Eigen::VectorXd f(4);
      for (int c = 0; c < 4; ++c) f[c] = next.at(s.grid(), c, i, j);
      const Eigen::VectorXd jx = lattice::reduce(lat.basis, f);
      for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(jx[c] - s.state().at(s.grid(), c, i, j)));
    }
  return worst;
}

void ns_wave(timeint::Solver<CompressibleNS>& s) {
  const auto& g = s.grid();
  const auto& sys = s.system();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double cy = std::cos(2. * std::numbers::pi * g.yc(j) / (g.ny * g.dy));
      const double sx = std::sin(2. * std::numbers::pi * g.xc(i) / (g.nx * g.dx));
      const Vec<4> u = sys.state_from(1. + 0.2 * sx * cy, 0.3 * cy, 0.2 * sx, 1. + 0.1 * cy);
      for (int c = 0; c < 4; ++c) s.state().at(g, c, i, j) = u[c];
    }
  zero_gradient(s);
}

double check_conservation() {
  double worst = 0.;
  for (int order : {1, 2, 4}) {
    auto s = harness::make_gaussian(harness::GaussianCase::preset("a"), 16, order);
    const double m0 = s.totals()[0];
    for (int n = 0; n < 10; ++n) s.step_to(1.);
    worst = std::max(worst, rel(s.totals()[0], m0));

    timeint::SchemeConfig cfg;
    cfg.order = order;
    cfg.speed.dynamic = true;
    timeint::Solver<CompressibleNS> sn(periodic_grid(12, 10), CompressibleNS(1.4, 0.02, 0.73), cfg);
    ns_wave(sn);
    const Vec<4> t0 = sn.totals();
    for (int n = 0; n < 10; ++n) sn.step_to(1.);
    for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(sn.totals()[c] - t0[c]) / std::max(1., std::abs(t0[c])));
  }
  return worst;
}

double check_jacobian(std::mt19937& rng) {
  const CompressibleNS sys(1.4, 0.01, 0.73);
  std::uniform_real_distribution<double> rho(0.2, 3.), vel(-2., 2.), p(0.2, 4.);
  double worst = 0.;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec<4> u = sys.state_from(rho(rng), vel(rng), vel(rng), p(rng));
    for (int dir = 0; dir < 2; ++dir) {
      const auto j = sys.jacobian(u, dir);
      for (int c = 0; c < 4; ++c) {
        const double h = 1e-6 * (1. + std::abs(u[c]));
        Vec<4> up = u, um = u;
        up[c] += h;
        um[c] -= h;
        const Vec<4> fd = (sys.flux(up, dir) - sys.flux(um, dir)) / (2. * h);
        worst = std::max(worst, (fd - j.col(c)).norm() / std::max(1., j.col(c).norm()));
      }
    }
  }
  return worst;
}

double check_symmetry() {
  const CompressibleNS sys(1.4, 0.02, 0.73);
  timeint::SchemeConfig cfg;
  cfg.order = 4;
  cfg.speed.dynamic = true;
  const int nx = 8, nh = 6;
  const space::Grid2D full = periodic_grid(nx, 2 * nh);
  space::Grid2D half = full;
  half.ny = nh;
  half.sides[2] = half.sides[3] = space::BoundaryKind::Symmetry;
  timeint::Solver<CompressibleNS> sf(full, sys, cfg), sh(half, sys, cfg);
  // Even about y = 0 and y = 1/2, with rho v odd.
  for (int j = 0; j < full.ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double y = full.yc(j);
      const Vec<4> u = sys.state_from(1. + 0.2 * std::sin(2. * std::numbers::pi * full.xc(i)) *
                                                 std::cos(4. * std::numbers::pi * y),
                                      0.3 * std::cos(4. * std::numbers::pi * y),
                                      0.2 * std::sin(4. * std::numbers::pi * y), 1.);
      for (int c = 0; c < 4; ++c) {
        sf.state().at(full, c, i, j) = u[c];
        if (j < nh) sh.state().at(half, c, i, j) = u[c];
      }
    }
  zero_gradient(sf);
  zero_gradient(sh);
  for (int n = 0; n < 5; ++n) {
    const auto [a, dt] = sf.cfl_policy();
    sf.step(a, dt);
    sh.step(a, dt);
  }
  double worst = 0.;
  for (int c = 0; c < 12; ++c)
    for (int j = 0; j < nh; ++j)
      for (int i = 0; i < nx; ++i)
        worst = std::max(worst, std::abs(sf.state().at(full, c, i, j) - sh.state().at(half, c, i, j)));
  return worst;
}

Outcome properties() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937 rng(2024);
  const double mx = check_maxwellian(rng);
  o.require(mx <= 1e-12, "maxwellian " + fmt(mx, 2));
  const double pi = check_pseudo_inverse();
  o.require(pi <= 1e-12, "pseudo-inverse " + fmt(pi, 2));
  const double ce = check_closure(rng);
  o.require(ce <= 1e-10, "closure " + fmt(ce, 2));
  const double eq = check_equivalence();
  o.require(eq <= 1e-12, "jin-xin vs distribution " + fmt(eq, 2));
  const double cons = check_conservation();
  o.require(cons <= 1e-12, "conservation " + fmt(cons, 2));
  const double jac = check_jacobian(rng);
  o.require(jac <= 1e-5, "jacobian fd " + fmt(jac, 2));
  const double sym = check_symmetry();
  o.require(sym <= 1e-12, "symmetry plane " + fmt(sym, 2));
  const double secs = seconds_since(t0);
  o.require(secs < 60., "runtime " + fmt(secs, 3) + " s");
  return o;
}

// ---- 9 ----------------------------------------------------------------------------

Outcome shock() {
  Outcome o;
  harness::ShockCase sc;  // Re 200, 250 x 125, t = 0.6, order 4, dynamic a
  const auto r = harness::run_shock(sc);
  o.require(r.t_final == sc.t_end, "reached t=" + fmt(r.t_final) + " in " + std::to_string(r.steps) +
                                       " steps, " + fmt(r.seconds, 3) + " s");
  o.require(r.min_rho > 0. && r.min_p > 0., "min rho " + fmt(r.min_rho) + ", min P " + fmt(r.min_p));
  o.require(rel(r.mass, kShockMass) <= kShockMassTol, "mass " + fmt(r.mass, 12));
  o.require(r.t_min >= kShockTMin && r.t_max <= kShockTMax,
            "T in [" + fmt(r.t_min) + ", " + fmt(r.t_max) + "]");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "stability table", stability_table},
      {2, "gaussian case c convergence", gaussian_c},
      {3, "gaussian case a plateau", gaussian_a},
      {4, "gaussian case b superconvergence", gaussian_b},
      {5, "knudsen plateau scaling", knudsen},
      {6, "couette isothermal", couette_iso},
      {7, "couette adiabatic", couette_adiabatic},
      {8, "property suite", properties},
      {9, "shock boundary layer", shock},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
