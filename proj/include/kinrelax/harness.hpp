#pragma once

// Verification cases with known answers: a diffusing Gaussian on the periodic
// unit square, thermal Couette flows between two walls, and a shock tube with
// viscous walls used as a robustness and conservation check.

#include <functional>
#include <string>
#include <vector>

#include "kinrelax/timeint.hpp"

namespace kinrelax::harness {

struct ErrorReport {
  int n = 0;
  int order = 0;
  double a = 0.;
  double error = 0.;  // L2 (Gaussian) or max-norm (Couette)
  double slope = 0.;  // log2 ratio against the previous entry, NaN if none
  double knudsen = 0.;
  double mass_drift = 0.;  // relative
  long steps = 0;
  double seconds = 0.;
};

// ---- Gaussian advection-diffusion -------------------------------------------

enum class VInit { Equilibrium, ChapmanEnskog };

struct GaussianCase {
  double c1 = 10.;
  double c2 = 10.;
  double alpha = 0.01;
  double delta = 0.1;
  double t_end = 0.005;
  double a = 21.;  // fixed kinetic speed
  VInit v_init = VInit::Equilibrium;
  double cfl = 0.;  // 0: order default
  int iterations = 0;
  lattice::LatticeKind lattice = lattice::LatticeKind::D2Q4;

  static GaussianCase preset(const std::string& id);  // "a", "b" or "c"
};

double exact_gaussian(const GaussianCase& gc, double x, double y, double t);

/// sqrt(sum (u - ue)^2 / sum ue^2) over interior cells.
double l2_error(const timeint::Solver<systems::ScalarAdvDiff>& s, const GaussianCase& gc);

timeint::Solver<systems::ScalarAdvDiff> make_gaussian(const GaussianCase& gc, int n, int order);
ErrorReport run_gaussian(const GaussianCase& gc, int n, int order);

/// Fills slopes as log2(e_prev / e) between consecutive entries of equal order.
void fill_slopes(std::vector<ErrorReport>& reports);

std::vector<ErrorReport> convergence_study(const GaussianCase& gc, const std::vector<int>& orders,
                                           const std::vector<int>& grids);

/// Fixed mesh, kinetic speed a = m * max(|c1|, |c2|) for each multiplier m;
/// slopes are against the previous multiplier (Knudsen number halves per doubling).
std::vector<ErrorReport> knudsen_study(GaussianCase gc, int n, int order,
                                       const std::vector<double>& multipliers);

// ---- Couette -----------------------------------------------------------------

struct CouetteCase {
  bool adiabatic = false;
  double gamma = 1.4;
  double pr = 0.73;
  double mu = 0.01;
  double v_wall = 0.;   // 0: 1.3 sqrt(gamma)
  double steady_tol = 1e-8;  // stop when max |dT/dt| drops below this
  double rate_window = 1.;   // time span over which dT/dt is measured
  long max_steps = 10'000'000;
  double t_max = 1e4;
  int ny = 1;
  double cfl = 0.;
  int iterations = 0;
  timeint::SpeedPolicy speed{true, 0., 2.1, 0.};

  double wall_speed() const;
  double exact_temperature(double x) const;
};

struct CouetteReport {
  ErrorReport report;
  double residual = 0.;  // final max |dT/dt|
  double t_final = 0.;
  std::vector<double> x, temperature, exact;
};

CouetteReport run_couette(const CouetteCase& cc, int n, int order);

// ---- Shock / boundary layer ---------------------------------------------------

struct ShockCase {
  double re = 200.;
  int nx = 250;
  int ny = 125;
  double t_end = 0.6;
  double gamma = 1.2;
  double pr = 0.73;
  int order = 4;
  double cfl = 0.;
  timeint::SpeedPolicy speed{true, 0., 2.1, 0.};
  std::vector<double> snapshot_times;
};

/// Extremes are taken over every step of the run.
struct ShockReport {
  double mass0 = 0.;
  double mass = 0.;
  double min_rho = 0.;
  double min_p = 0.;
  double t_min = 0.;
  double t_max = 0.;
  long steps = 0;
  double seconds = 0.;
  double t_final = 0.;
};

timeint::Solver<systems::CompressibleNS> make_shock(const ShockCase& sc);

/// Runs to t_end; `on_snapshot` is called at each requested time (clipped steps).
ShockReport run_shock(const ShockCase& sc,
                      const std::function<void(const timeint::Solver<systems::CompressibleNS>&)>&
                          on_snapshot = {});

// ---- Output ------------------------------------------------------------------

/// Cell table with columns x, y, rho, u, v, P, T.
void write_snapshot(const std::string& path, const timeint::Solver<systems::CompressibleNS>& s);
void write_reports(const std::string& path, const std::vector<ErrorReport>& reports);

}  // namespace kinrelax::harness
