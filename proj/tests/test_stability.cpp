#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "kinrelax/stability.hpp"
#include "reference_tables.hpp"

using namespace kinrelax::stability;

TEST_CASE("spatial symbols") {
  CHECK(std::abs(spatial_symbol(1, 0.)) < 1e-15);
  CHECK(std::abs(spatial_symbol(1, std::numbers::pi) - 2.) < 1e-14);
  for (int q : {1, 2, 4}) CHECK(std::abs(spatial_symbol(q, 0.)) < 1e-14);

  // Brute-force DFT: apply the flux difference to e^{ik theta} directly.
  const double w2[3] = {-1. / 6., 5. / 6., 1. / 3.};  // cells k-1, k, k+1
  for (double theta : {0.3, 1.1, std::numbers::pi}) {
    auto mode = [&](int k) { return std::polar(1., k * theta); };
    auto flux = [&](int k) {  // interface k+1/2
      return w2[0] * mode(k - 1) + w2[1] * mode(k) + w2[2] * mode(k + 1);
    };
    const std::complex<double> s = (flux(0) - flux(-1)) / mode(0);
    CHECK(std::abs(spatial_symbol(2, theta) - s) < 1e-13);
  }
}

TEST_CASE("amplification factors") {
  for (int q : {1, 2, 4})
    for (double theta : {0., 0.7, 2.})
      CHECK(amplification({4, q, 4}, 0., theta) == doctest::Approx(1.));
  for (double theta : {0.1, 1., 2.5, 3.1})
    CHECK(amplification({1, 1, 1}, 1., theta) == doctest::Approx(1.).epsilon(1e-12));
  CHECK(max_amplification({2, 2, 2}, 0.9) > 1.);
  CHECK(max_amplification({2, 2, 2}, 0.85) <= 1. + 1e-10);
}

TEST_CASE("critical CFL spot values") {
  CHECK(critical_cfl({1, 2, 1}) == 0.);
  CHECK(critical_cfl({4, 4, 4}) == doctest::Approx(1.04).epsilon(0.01));
  CHECK(std::abs(critical_cfl({4, 2, 5}) - 1.81) <= 0.01);
}

TEST_CASE("critical CFL table") {
  const auto table = critical_table();
  int checked = 0;
  for (const auto& row : kinrelax::reference::kCriticalCfl) {
    for (int it = 1; it <= row.count; ++it) {
      bool found = false;
      for (const auto& e : table) {
        if (e.pairing.time_order != row.time_order || e.pairing.spatial != row.flux_order) continue;
        if (row.time_order != 1 && e.pairing.iterations != it) continue;
        found = true;
        CAPTURE(row.time_order);
        CAPTURE(row.flux_order);
        CAPTURE(it);
        CHECK(std::abs(e.lambda - row.lambda[it - 1]) <= 0.01);
        ++checked;
      }
      CHECK(found);
    }
  }
  CHECK(checked == 39);
  CHECK(table.size() == 39);
}
