#pragma once

// Run configuration: `key = value` lines, '#' comments. Parsing validates
// types, ranges and conflicting keys; case-dependent defaults are filled in
// by `resolve`.

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kinrelax/harness.hpp"

namespace kinrelax::config {

enum class CaseId { GaussianA, GaussianB, GaussianC, CouetteIso, CouetteAdiab, ShockBl };

struct RunConfig {
  CaseId case_id = CaseId::GaussianC;
  std::vector<int> n;  // Gaussian and Couette: one run per entry
  std::optional<int> nx, ny;
  int order = 4;
  std::optional<int> iterations;
  std::optional<double> cfl;
  std::optional<double> a;  // fixed kinetic speed
  std::optional<bool> dynamic_a;
  std::optional<double> a_factor, a_floor;
  std::optional<double> t_end;
  std::string output_dir = ".";
  std::vector<double> snapshot_times;
  int threads = 0;
  std::optional<double> alpha, c1, c2, delta;
  std::optional<double> mu, re, gamma, pr;
  std::optional<harness::VInit> v_init;
  std::optional<double> steady_tol;
  std::optional<long> max_steps;
  lattice::LatticeKind lattice = lattice::LatticeKind::D2Q4;
};

/// Throws ConfigError on unknown keys, bad values, or conflicts.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::string case_name(CaseId id);

/// Default CFL number for an order: 0.8 for order 2, otherwise 1.
double default_cfl(int order);

struct RunSummary {
  std::vector<harness::ErrorReport> reports;
  std::vector<std::string> files;
  std::string ledger;  // human-readable lines
  bool ok = true;      // false if a run finished but failed its own check
};

/// Executes the configured case and writes CSV artifacts to output_dir.
RunSummary run(const RunConfig& cfg);

}  // namespace kinrelax::config
