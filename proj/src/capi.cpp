#include "kinrelax/kinrelax.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <iomanip>
#include <new>
#include <sstream>
#include <string>

#include "kinrelax/config.hpp"
#include "kinrelax/error.hpp"
#include "kinrelax/stability.hpp"

struct kr_config {
  kinrelax::config::RunConfig cfg;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
kr_status guarded(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const kinrelax::ConfigError& e) {
    g_last_error = e.what();
    return KR_CONFIG_ERROR;
  } catch (const kinrelax::AdmissibilityError& e) {
    g_last_error = e.what();
    return KR_NUMERICAL_ERROR;
  } catch (const kinrelax::NumericalError& e) {
    g_last_error = e.what();
    return KR_NUMERICAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return KR_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return KR_INTERNAL_ERROR;
  }
}

kr_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return KR_CONFIG_ERROR;
}

}  // namespace

extern "C" {

const char* kr_version(void) { return "1.0.0"; }

const char* kr_last_error(void) { return g_last_error.c_str(); }

void kr_string_free(char* s) { std::free(s); }

kr_status kr_config_from_string(const char* text, kr_config** out) {
  if (text == nullptr || out == nullptr) return null_arg("text/out");
  *out = nullptr;
  return guarded([&] {
    *out = new kr_config{kinrelax::config::parse_config(text)};
    return KR_OK;
  });
}

kr_status kr_config_from_file(const char* path, kr_config** out) {
  if (path == nullptr || out == nullptr) return null_arg("path/out");
  *out = nullptr;
  return guarded([&] {
    *out = new kr_config{kinrelax::config::load_config(path)};
    return KR_OK;
  });
}

void kr_config_free(kr_config* cfg) { delete cfg; }

kr_status kr_run(const kr_config* cfg, char** ledger) {
  if (cfg == nullptr || ledger == nullptr) return null_arg("cfg/ledger");
  *ledger = nullptr;
  return guarded([&] {
    const auto sum = kinrelax::config::run(cfg->cfg);
    std::string text = sum.ledger;
    for (const auto& f : sum.files) text += "wrote " + f + "\n";
    *ledger = dup_string(text);
    if (!sum.ok) {
      g_last_error = "run finished with failed checks";
      return KR_NUMERICAL_ERROR;
    }
    return KR_OK;
  });
}

kr_status kr_stability_table(char** csv) {
  if (csv == nullptr) return null_arg("csv");
  *csv = nullptr;
  return guarded([&] {
    std::ostringstream os;
    os << "time_order,flux_order,iterations,lambda\n" << std::fixed << std::setprecision(4);
    for (const auto& e : kinrelax::stability::critical_table()) {
      os << e.pairing.time_order << ',' << e.pairing.spatial << ',' << e.pairing.iterations << ','
         << e.lambda << '\n';
    }
    *csv = dup_string(os.str());
    return KR_OK;
  });
}

kr_status kr_convergence(const char* case_id, const int* orders, size_t n_orders, const int* grids,
                         size_t n_grids, char** csv) {
  if (case_id == nullptr || orders == nullptr || grids == nullptr || csv == nullptr) {
    return null_arg("case_id/orders/grids/csv");
  }
  *csv = nullptr;
  return guarded([&] {
    const std::string id = case_id;
    if (id.rfind("gaussian_", 0) != 0 || id.size() != 10) {
      throw kinrelax::ConfigError("convergence studies are defined for gaussian_a|b|c");
    }
    const auto gc = kinrelax::harness::GaussianCase::preset(id.substr(9));
    std::vector<int> os_(orders, orders + n_orders);
    std::vector<int> gs(grids, grids + n_grids);
    for (int o : os_)
      if (o != 1 && o != 2 && o != 4) throw kinrelax::ConfigError("order must be 1, 2 or 4");
    for (int n : gs)
      if (n < 1) throw kinrelax::ConfigError("grid sizes must be positive");
    const auto reps = kinrelax::harness::convergence_study(gc, os_, gs);
    std::ostringstream os;
    os << "order,n,l2,slope,steps,seconds\n" << std::setprecision(9);
    for (const auto& r : reps) {
      os << r.order << ',' << r.n << ',' << r.error << ',';
      if (std::isnan(r.slope)) os << "";
      else os << r.slope;
      os << ',' << r.steps << ',' << r.seconds << '\n';
    }
    *csv = dup_string(os.str());
    return KR_OK;
  });
}

}  // extern "C"
