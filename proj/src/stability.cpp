#include "kinrelax/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "kinrelax/error.hpp"
#include "kinrelax/timeint.hpp"

namespace kinrelax::stability {
namespace {

using cplx = std::complex<double>;
constexpr double kUnstable = 1. + 1e-10;
constexpr double kMinResolved = 1e-3;

struct Stencil {
  int lo;  // offset of first weight relative to the upwind cell
  std::vector<double> w;
};

Stencil stencil(int q) {
  switch (q) {
    case 1: return {0, {1.}};
    case 2: return {-1, {-1. / 6., 5. / 6., 1. / 3.}};
    case 4: return {-2, {1. / 12., -5. / 12., 13. / 12., 1. / 4.}};
    default: throw ConfigError("flux order must be 1, 2 or 4");
  }
}

struct Evaluator {
  SchemePairing pairing;
  timeint::DecTableau tab;
  int iters;

  explicit Evaluator(const SchemePairing& p)
      : pairing(p), tab(timeint::DecTableau::for_order(p.time_order)),
        iters(p.time_order == 1 ? 1 : p.iterations) {
    if (iters < 1) throw ConfigError("iteration count must be >= 1");
  }

  double operator()(double lambda, double theta) const {
    const cplx z = lambda * spatial_symbol(pairing.spatial, theta);
    const int s = tab.s;
    std::array<cplx, 3> y{1., 1., 1.};
    std::array<cplx, 3> next{};
    for (int it = 0; it < iters; ++it) {
      for (int m = 0; m < s; ++m) {
        cplx acc = 0.;
        for (int r = 0; r < s; ++r) acc += tab.a(m, r) * y[r];
        next[m] = 1. - z * acc;
      }
      y = next;
    }
    return std::abs(y[s - 1]);
  }
};

double golden_max(const Evaluator& ev, double lambda, double lo, double hi) {
  const double r = (std::sqrt(5.) - 1.) / 2.;
  double a = lo;
  double b = hi;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = ev(lambda, c);
  double fd = ev(lambda, d);
  for (int i = 0; i < 60 && b - a > 1e-13; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = ev(lambda, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = ev(lambda, d);
    }
  }
  return std::max(fc, fd);
}

double max_amp(const Evaluator& ev, double lambda, int samples) {
  const double h = 2. * std::numbers::pi / samples;
  double best = 0.;
  int arg = 0;
  for (int k = 0; k < samples; ++k) {
    const double g = ev(lambda, k * h);
    if (g > best) {
      best = g;
      arg = k;
    }
  }
  return std::max(best, golden_max(ev, lambda, (arg - 1) * h, (arg + 1) * h));
}

}  // namespace

std::complex<double> spatial_symbol(int q, double theta, int sign) {
  if (sign < 0) theta = -theta;
  const Stencil st = stencil(q);
  cplx sum = 0.;
  for (std::size_t j = 0; j < st.w.size(); ++j) {
    sum += st.w[j] * std::polar(1., (st.lo + static_cast<int>(j)) * theta);
  }
  return sum * (1. - std::polar(1., -theta));
}

double amplification(const SchemePairing& pairing, double lambda, double theta) {
  return Evaluator(pairing)(lambda, theta);
}

double max_amplification(const SchemePairing& pairing, double lambda, int theta_samples) {
  return max_amp(Evaluator(pairing), lambda, theta_samples);
}

double critical_cfl(const SchemePairing& pairing, int theta_samples, double tol) {
  const Evaluator ev(pairing);
  auto stable = [&](double lambda) { return max_amp(ev, lambda, theta_samples) <= kUnstable; };
  if (!stable(1e-6)) return 0.;
  constexpr double kStep = 0.01;
  constexpr double kMax = 4.;
  double lo = 1e-6;
  double hi = -1.;
  for (double l = kStep; l <= kMax + 1e-12; l += kStep) {
    if (!stable(l)) {
      hi = l;
      break;
    }
    lo = l;
  }
  if (hi < 0.) return kMax;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  // Unconditional instabilities grow like lambda^2 or slower near lambda = 0,
  // which hides them below the 1e-10 growth threshold for tiny lambda.
  return lo < kMinResolved ? 0. : lo;
}

std::vector<TableEntry> critical_table(int theta_samples, double tol) {
  std::vector<TableEntry> out;
  for (int q : {1, 2, 4}) {
    SchemePairing p{1, q, 1};
    out.push_back({p, critical_cfl(p, theta_samples, tol)});
  }
  for (int order : {2, 4}) {
    for (int q : {1, 2, 4}) {
      for (int it = 1; it <= 6; ++it) {
        SchemePairing p{order, q, it};
        out.push_back({p, critical_cfl(p, theta_samples, tol)});
      }
    }
  }
  return out;
}

}  // namespace kinrelax::stability
