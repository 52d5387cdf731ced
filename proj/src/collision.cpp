#include "kinrelax/collision.hpp"

namespace kinrelax::collision {

LatticeMoments lattice_moments(const lattice::WaveModel& model) {
  LatticeMoments lm;
  for (int w = 0; w < model.k; ++w) {
    for (int a = 0; a < kDim; ++a) {
      for (int b = 0; b < kDim; ++b) {
        const double s = model.speed[a][w] * model.speed[b][w];
        lm.base[a][b] += s * model.weight_u[w];
        for (int k = 0; k < kDim; ++k) lm.grad[a][b][k] += s * model.weight_f[k][w];
      }
    }
  }
  // Drop round-off so structurally zero terms stay exactly zero.
  const double scale = model.a * model.a * 1e-14;
  for (auto& row : lm.base)
    for (double& v : row)
      if (std::abs(v) < scale) v = 0.;
  for (auto& plane : lm.grad)
    for (auto& row : plane)
      for (double& v : row)
        if (std::abs(v) < scale / model.a) v = 0.;
  return lm;
}

}  // namespace kinrelax::collision
