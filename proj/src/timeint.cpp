#include "kinrelax/timeint.hpp"

namespace kinrelax::timeint {

DecTableau DecTableau::for_order(int order) {
  DecTableau t;
  switch (order) {
    case 1:
      t.s = 1;
      t.c = {1.};
      t.a = Eigen::MatrixXd::Constant(1, 1, 1.);
      break;
    case 2:
      t.s = 2;
      t.c = {0., 1.};
      t.a.resize(2, 2);
      t.a << 0.5, -0.5,
          0.5, 0.5;
      break;
    case 4:
      t.s = 3;
      t.c = {0., 0.5, 1.};
      t.a.resize(3, 3);
      t.a << 1. / 6., -1. / 3., 1. / 6.,
          1. / 6., 5. / 12., -1. / 12.,
          1. / 6., 2. / 3., 1. / 6.;
      break;
    default:
      throw ConfigError("order must be 1, 2 or 4");
  }
  return t;
}

}  // namespace kinrelax::timeint
