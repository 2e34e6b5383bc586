#include "ivpp/seeding.hpp"

namespace ivpp {

GaussianRational draw_grid(SplitMix64& g) {
  for (;;) {
    const long re = static_cast<long>(g.below(49)) - 24;
    const long im = static_cast<long>(g.below(49)) - 24;
    if (re == 0 && im == 0) continue;
    return {BigRational(re, 8), BigRational(im, 8)};
  }
}

BigRational draw_rational(SplitMix64& g, long max_num, long max_den) {
  const long num = static_cast<long>(g.below(static_cast<std::uint64_t>(2 * max_num + 1))) - max_num;
  const long den = 1 + static_cast<long>(g.below(static_cast<std::uint64_t>(max_den)));
  return BigRational(num, den);
}

Cx draw_complex(SplitMix64& g, double scale) {
  const double re = (2.0 * g.uniform() - 1.0) * scale;
  const double im = (2.0 * g.uniform() - 1.0) * scale;
  return Cx(re, im);
}

}  // namespace ivpp
