#pragma once

// Von Neumann analysis of the transport discretization for scalar linear
// advection: amplification factors and critical CFL numbers per pairing of
// time scheme, upwind flux order and DeC iteration count.

#include <complex>
#include <vector>

namespace kinrelax::stability {

struct SchemePairing {
  int time_order = 1;  // 1, 2 or 4
  int spatial = 1;     // flux order q: 1, 2 or 4
  int iterations = 1;  // DeC iterations (ignored for time_order 1)
};

/// s(theta) with delta^q e^{ik theta} = s(theta)/dx e^{ik theta}, per unit |a|;
/// sign < 0 selects the mirrored (downwind-facing) stencil.
std::complex<double> spatial_symbol(int q, double theta, int sign = 1);

/// |G(theta; lambda)| of one full step.
double amplification(const SchemePairing& pairing, double lambda, double theta);

/// max over theta of |G|, from uniform samples refined by golden-section search.
double max_amplification(const SchemePairing& pairing, double lambda, int theta_samples = 4096);

/// Largest lambda below which every smaller lambda is stable, to `tol`.
/// Returns 0 when already unstable at lambda = 1e-6, or when the stable range
/// ends below 1e-3 (growth there is under the detection threshold).
double critical_cfl(const SchemePairing& pairing, int theta_samples = 4096, double tol = 1e-4);

struct TableEntry {
  SchemePairing pairing;
  double lambda = 0.;
};

/// Every pairing of the reference table: order 1 with one iteration, DeC 2 and
/// 4 with 1..6 iterations, each against flux orders 1, 2, 4.
std::vector<TableEntry> critical_table(int theta_samples = 4096, double tol = 1e-4);

}  // namespace kinrelax::stability
