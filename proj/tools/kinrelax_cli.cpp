// kinrelax command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kinrelax/kinrelax.h"

namespace {

int exit_code(kr_status st) {
  switch (st) {
    case KR_OK: return 0;
    case KR_CONFIG_ERROR: return 2;
    default: return 1;
  }
}

int fail(kr_status st) {
  std::cerr << "kinrelax: " << kr_last_error() << '\n';
  return exit_code(st);
}

// "10..320" doubles from 10 up to 320; "8,16,32" is taken literally.
bool parse_grids(const std::string& spec, std::vector<int>& out) {
  out.clear();
  const auto dots = spec.find("..");
  try {
    if (dots != std::string::npos) {
      const int lo = std::stoi(spec.substr(0, dots));
      const int hi = std::stoi(spec.substr(dots + 2));
      if (lo < 1 || hi < lo) return false;
      for (long n = lo; n <= hi; n *= 2) out.push_back(static_cast<int>(n));
      return true;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const int n = std::stoi(item);
      if (n < 1) return false;
      out.push_back(n);
    }
  } catch (const std::exception&) {
    return false;
  }
  return !out.empty();
}

int emit(char* text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(path);
    if (!os) {
      std::cerr << "kinrelax: cannot write " << path << '\n';
      kr_string_free(text);
      return 2;
    }
    os << text;
  }
  kr_string_free(text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic relaxation solver for convection-diffusion and Navier-Stokes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kr_version());

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the case described by a config file");
  run->add_option("config", config_path, "key = value config file")->required();

  std::string table_out;
  auto* table = app.add_subcommand("stability-table", "Critical CFL numbers as CSV");
  table->add_option("--out", table_out, "write CSV here instead of stdout");

  std::string conv_case;
  std::vector<int> orders{1, 2, 4};
  std::string grids_spec = "10..320";
  std::string conv_out;
  auto* conv = app.add_subcommand("convergence", "Gaussian convergence study as CSV");
  conv->add_option("case", conv_case, "gaussian_a, gaussian_b or gaussian_c")->required();
  conv->add_option("--orders", orders, "comma-separated orders")->delimiter(',');
  conv->add_option("--grids", grids_spec, "dyadic range lo..hi or a comma list");
  conv->add_option("--out", conv_out, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*run) {
    kr_config* cfg = nullptr;
    kr_status st = kr_config_from_file(config_path.c_str(), &cfg);
    if (st != KR_OK) return fail(st);
    char* ledger = nullptr;
    st = kr_run(cfg, &ledger);
    kr_config_free(cfg);
    if (ledger != nullptr) {
      std::cout << ledger;
      kr_string_free(ledger);
    }
    return st == KR_OK ? 0 : fail(st);
  }
  if (*table) {
    char* csv = nullptr;
    const kr_status st = kr_stability_table(&csv);
    if (st != KR_OK) return fail(st);
    return emit(csv, table_out);
  }
  std::vector<int> grids;
  if (!parse_grids(grids_spec, grids)) {
    std::cerr << "kinrelax: bad --grids '" << grids_spec << "'\n";
    return 2;
  }
  char* csv = nullptr;
  const kr_status st =
      kr_convergence(conv_case.c_str(), orders.data(), orders.size(), grids.data(), grids.size(), &csv);
  if (st != KR_OK) return fail(st);
  return emit(csv, conv_out);
}
