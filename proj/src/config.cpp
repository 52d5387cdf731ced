#include "kinrelax/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "kinrelax/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kinrelax::config {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
  return x;
}

long to_long(const std::string& key, const std::string& v) {
  long x = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  }
  return x;
}

int to_positive_int(const std::string& key, const std::string& v) {
  const long x = to_long(key, v);
  if (x < 1 || x > 1'000'000) throw ConfigError("key '" + key + "': must be a positive integer");
  return static_cast<int>(x);
}

double to_positive(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (!(x > 0.)) throw ConfigError("key '" + key + "': must be positive");
  return x;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

CaseId parse_case(const std::string& v) {
  static const std::map<std::string, CaseId> ids{
      {"gaussian_a", CaseId::GaussianA},     {"gaussian_b", CaseId::GaussianB},
      {"gaussian_c", CaseId::GaussianC},     {"couette_iso", CaseId::CouetteIso},
      {"couette_adiab", CaseId::CouetteAdiab}, {"shock_bl", CaseId::ShockBl}};
  const auto it = ids.find(lower(v));
  if (it == ids.end()) throw ConfigError("unknown case '" + v + "'");
  return it->second;
}

bool is_gaussian(CaseId c) {
  return c == CaseId::GaussianA || c == CaseId::GaussianB || c == CaseId::GaussianC;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(9) << x;
  return os.str();
}

}  // namespace

std::string case_name(CaseId id) {
  switch (id) {
    case CaseId::GaussianA: return "gaussian_a";
    case CaseId::GaussianB: return "gaussian_b";
    case CaseId::GaussianC: return "gaussian_c";
    case CaseId::CouetteIso: return "couette_iso";
    case CaseId::CouetteAdiab: return "couette_adiab";
    case CaseId::ShockBl: return "shock_bl";
  }
  return "?";
}

double default_cfl(int order) { return order == 2 ? 0.8 : 1.; }

RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!kv.emplace(key, value).second) throw ConfigError("duplicate key '" + key + "'");
  }

  RunConfig c;
  if (!kv.count("case")) throw ConfigError("missing required key 'case'");
  std::set<std::string> seen;
  for (const auto& [key, v] : kv) {
    seen.insert(key);
    if (key == "case") {
      c.case_id = parse_case(v);
    } else if (key == "n") {
      for (const auto& item : split_list(v)) c.n.push_back(to_positive_int(key, item));
      if (c.n.empty()) throw ConfigError("key 'n': empty list");
    } else if (key == "nx") {
      c.nx = to_positive_int(key, v);
    } else if (key == "ny") {
      c.ny = to_positive_int(key, v);
    } else if (key == "order") {
      const long o = to_long(key, v);
      if (o != 1 && o != 2 && o != 4) throw ConfigError("order must be 1, 2 or 4, got " + v);
      c.order = static_cast<int>(o);
    } else if (key == "iterations") {
      c.iterations = to_positive_int(key, v);
    } else if (key == "cfl") {
      c.cfl = to_positive(key, v);
    } else if (key == "a") {
      c.a = to_positive(key, v);
    } else if (key == "a_policy") {
      const std::string p = lower(v);
      if (p != "fixed" && p != "dynamic") throw ConfigError("a_policy must be fixed or dynamic");
      c.dynamic_a = p == "dynamic";
    } else if (key == "a_factor") {
      c.a_factor = to_positive(key, v);
    } else if (key == "a_floor") {
      c.a_floor = to_positive(key, v);
    } else if (key == "t_end") {
      c.t_end = to_positive(key, v);
    } else if (key == "output_dir") {
      c.output_dir = v;
    } else if (key == "snapshot_times") {
      for (const auto& item : split_list(v)) {
        const double t = to_double(key, item);
        if (t < 0.) throw ConfigError("snapshot times must be non-negative");
        c.snapshot_times.push_back(t);
      }
    } else if (key == "threads") {
      c.threads = to_positive_int(key, v);
    } else if (key == "alpha") {
      c.alpha = to_double(key, v);
      if (*c.alpha < 0.) throw ConfigError("alpha must be non-negative");
    } else if (key == "c1") {
      c.c1 = to_double(key, v);
    } else if (key == "c2") {
      c.c2 = to_double(key, v);
    } else if (key == "delta") {
      c.delta = to_positive(key, v);
    } else if (key == "mu") {
      c.mu = to_double(key, v);
      if (*c.mu < 0.) throw ConfigError("mu must be non-negative");
    } else if (key == "re") {
      c.re = to_positive(key, v);
    } else if (key == "gamma") {
      c.gamma = to_double(key, v);
      if (!(*c.gamma > 1.)) throw ConfigError("gamma must exceed 1");
    } else if (key == "pr") {
      c.pr = to_positive(key, v);
    } else if (key == "v_init") {
      const std::string p = lower(v);
      if (p == "equilibrium") c.v_init = harness::VInit::Equilibrium;
      else if (p == "chapman_enskog") c.v_init = harness::VInit::ChapmanEnskog;
      else throw ConfigError("v_init must be equilibrium or chapman_enskog");
    } else if (key == "steady_tol") {
      c.steady_tol = to_positive(key, v);
    } else if (key == "max_steps") {
      c.max_steps = to_long(key, v);
      if (*c.max_steps < 1) throw ConfigError("max_steps must be positive");
    } else if (key == "lattice") {
      const std::string p = lower(v);
      if (p == "d2q4") c.lattice = lattice::LatticeKind::D2Q4;
      else if (p == "d2q8") c.lattice = lattice::LatticeKind::D2Q8;
      else throw ConfigError("lattice must be d2q4 or d2q8");
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  // conflicts
  if (!c.n.empty() && (c.nx || c.ny)) throw ConfigError("'n' conflicts with 'nx'/'ny'");
  if (c.a && c.dynamic_a.value_or(false)) {
    throw ConfigError("'a' conflicts with 'a_policy = dynamic'");
  }
  if ((c.a_factor || c.a_floor) && (c.a || (c.dynamic_a && !*c.dynamic_a))) {
    throw ConfigError("'a_factor'/'a_floor' only apply to the dynamic kinetic speed");
  }
  if (c.mu && c.re) throw ConfigError("'mu' conflicts with 'Re'");
  if (c.order == 1 && c.iterations && *c.iterations != 1) {
    throw ConfigError("order 1 has no DeC iterations");
  }
  const bool gaussian = is_gaussian(c.case_id);
  const bool shock = c.case_id == CaseId::ShockBl;
  if (gaussian && (c.mu || c.re || c.gamma || c.pr || c.steady_tol || c.max_steps)) {
    throw ConfigError("Navier-Stokes keys given for a Gaussian case");
  }
  if (!gaussian && (c.alpha || c.c1 || c.c2 || c.delta || c.v_init)) {
    throw ConfigError("Gaussian keys given for a Navier-Stokes case");
  }
  if (gaussian && c.dynamic_a.value_or(false)) {
    throw ConfigError("Gaussian cases use a fixed kinetic speed");
  }
  if (!shock && (c.nx || c.ny)) throw ConfigError("'nx'/'ny' only apply to shock_bl");
  if (shock && !c.n.empty()) throw ConfigError("shock_bl takes 'nx' and 'ny', not 'n'");
  if (shock && (c.steady_tol || c.max_steps)) throw ConfigError("steady keys do not apply to shock_bl");
  if (!shock && !c.snapshot_times.empty()) throw ConfigError("snapshot_times only apply to shock_bl");
  if (!gaussian && c.lattice != lattice::LatticeKind::D2Q4) {
    throw ConfigError("Navier-Stokes cases run on D2Q4 only");
  }
  if (!gaussian && !shock && c.t_end) throw ConfigError("Couette runs to steady state; drop 't_end'");
  if (c.case_id != CaseId::ShockBl && c.re) throw ConfigError("'Re' only applies to shock_bl");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

static timeint::SpeedPolicy speed_policy(const RunConfig& cfg) {
  timeint::SpeedPolicy sp{true, 0., 2.1, 0.};
  if (cfg.a) {
    sp.dynamic = false;
    sp.value = *cfg.a;
  }
  if (cfg.dynamic_a && !*cfg.dynamic_a && !cfg.a) {
    throw ConfigError("'a_policy = fixed' needs a value for 'a'");
  }
  if (cfg.a_factor) sp.factor = *cfg.a_factor;
  if (cfg.a_floor) sp.floor = *cfg.a_floor;
  return sp;
}

RunSummary run(const RunConfig& cfg) {
#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + cfg.output_dir + "'");
  const fs::path out = cfg.output_dir;
  const std::string name = case_name(cfg.case_id);
  RunSummary sum;
  std::ostringstream log;

  if (is_gaussian(cfg.case_id)) {
    const std::string preset = name.substr(name.size() - 1);
    harness::GaussianCase gc = harness::GaussianCase::preset(preset);
    if (cfg.alpha) gc.alpha = *cfg.alpha;
    if (cfg.c1) gc.c1 = *cfg.c1;
    if (cfg.c2) gc.c2 = *cfg.c2;
    if (cfg.delta) gc.delta = *cfg.delta;
    if (cfg.a) gc.a = *cfg.a;
    if (cfg.t_end) gc.t_end = *cfg.t_end;
    if (cfg.cfl) gc.cfl = *cfg.cfl;
    if (cfg.iterations) gc.iterations = *cfg.iterations;
    if (cfg.v_init) gc.v_init = *cfg.v_init;
    gc.lattice = cfg.lattice;
    const std::vector<int> grids = cfg.n.empty() ? std::vector<int>{10, 20, 40, 80} : cfg.n;
    sum.reports = harness::convergence_study(gc, {cfg.order}, grids);
    const fs::path file = out / (name + "_order" + std::to_string(cfg.order) + ".csv");
    harness::write_reports(file.string(), sum.reports);
    sum.files.push_back(file.string());
    log << "case=" << name << " order=" << cfg.order << " a=" << fmt(gc.a)
        << " knudsen=" << fmt(collision::knudsen(gc.alpha, gc.a, gc.delta)) << '\n';
    log << "N,L2,slope,mass_drift,steps,seconds\n";
    for (const auto& r : sum.reports) {
      log << r.n << ',' << fmt(r.error) << ',' << (std::isnan(r.slope) ? std::string("-") : fmt(r.slope))
          << ',' << fmt(r.mass_drift) << ',' << r.steps << ',' << fmt(r.seconds) << '\n';
    }
  } else if (cfg.case_id == CaseId::ShockBl) {
    harness::ShockCase sc;
    if (cfg.re) sc.re = *cfg.re;
    if (cfg.mu) {
      if (!(*cfg.mu > 0.)) throw ConfigError("shock_bl needs mu > 0");
      sc.re = 1. / *cfg.mu;
    }
    if (cfg.nx) sc.nx = *cfg.nx;
    if (cfg.ny) sc.ny = *cfg.ny;
    if (cfg.t_end) sc.t_end = *cfg.t_end;
    if (cfg.gamma) sc.gamma = *cfg.gamma;
    if (cfg.pr) sc.pr = *cfg.pr;
    if (cfg.cfl) sc.cfl = *cfg.cfl;
    sc.order = cfg.order;
    sc.speed = speed_policy(cfg);
    sc.snapshot_times = cfg.snapshot_times;
    if (sc.snapshot_times.empty()) sc.snapshot_times.push_back(sc.t_end);
    const auto rep = harness::run_shock(sc, [&](const timeint::Solver<systems::CompressibleNS>& s) {
      std::ostringstream fn;
      fn << name << "_t" << std::fixed << std::setprecision(3) << s.time() << ".csv";
      const fs::path file = out / fn.str();
      harness::write_snapshot(file.string(), s);
      sum.files.push_back(file.string());
    });
    const double drift = std::abs(rep.mass - rep.mass0) / rep.mass0;
    log << "case=" << name << " Re=" << fmt(sc.re) << " grid=" << sc.nx << 'x' << sc.ny
        << " order=" << sc.order << '\n'
        << "t_final=" << fmt(rep.t_final) << " steps=" << rep.steps << " seconds=" << fmt(rep.seconds)
        << '\n'
        << "mass0=" << fmt(rep.mass0) << " mass=" << fmt(rep.mass) << " drift=" << fmt(drift) << '\n'
        << "min_rho=" << fmt(rep.min_rho) << " min_P=" << fmt(rep.min_p) << " T_range=["
        << fmt(rep.t_min) << ", " << fmt(rep.t_max) << "]\n";
    harness::ErrorReport r;
    r.order = sc.order;
    r.n = sc.nx;
    r.mass_drift = drift;
    r.steps = rep.steps;
    r.seconds = rep.seconds;
    sum.reports.push_back(r);
    sum.ok = rep.min_rho > 0. && rep.min_p > 0.;
  } else {
    harness::CouetteCase cc;
    cc.adiabatic = cfg.case_id == CaseId::CouetteAdiab;
    if (cfg.mu) cc.mu = *cfg.mu;
    if (cfg.gamma) cc.gamma = *cfg.gamma;
    if (cfg.pr) cc.pr = *cfg.pr;
    if (cfg.cfl) cc.cfl = *cfg.cfl;
    if (cfg.iterations) cc.iterations = *cfg.iterations;
    if (cfg.steady_tol) cc.steady_tol = *cfg.steady_tol;
    if (cfg.max_steps) cc.max_steps = *cfg.max_steps;
    cc.speed = speed_policy(cfg);
    const std::vector<int> grids = cfg.n.empty() ? std::vector<int>{cc.adiabatic ? 16 : 8} : cfg.n;
    log << "case=" << name << " order=" << cfg.order << '\n'
        << "N,max_err,mass_drift,steps,t_final,residual,seconds\n";
    for (int n : grids) {
      const auto cr = harness::run_couette(cc, n, cfg.order);
      std::ostringstream fn;
      fn << name << "_order" << cfg.order << "_N" << n << ".csv";
      const fs::path file = out / fn.str();
      std::ofstream os(file);
      if (!os) throw ConfigError("cannot write " + file.string());
      os << "x,T,T_exact\n" << std::setprecision(12);
      for (std::size_t i = 0; i < cr.x.size(); ++i) {
        os << cr.x[i] << ',' << cr.temperature[i] << ',' << cr.exact[i] << '\n';
      }
      sum.files.push_back(file.string());
      sum.reports.push_back(cr.report);
      log << n << ',' << fmt(cr.report.error) << ',' << fmt(cr.report.mass_drift) << ','
          << cr.report.steps << ',' << fmt(cr.t_final) << ',' << fmt(cr.residual) << ','
          << fmt(cr.report.seconds) << '\n';
    }
  }
  sum.ledger = log.str();
  return sum;
}

}  // namespace kinrelax::config
