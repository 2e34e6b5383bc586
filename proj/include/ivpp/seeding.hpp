#pragma once

#include <cstdint>

#include "ivpp/algebra/cx.hpp"
#include "ivpp/algebra/rational.hpp"

namespace ivpp {

/// SplitMix64: tiny, portable, and bit-identical on every platform, unlike
/// the standard distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept { return next() % n; }
  /// Uniform double in [0, 1).
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Seed of sample `index` in a campaign with base seed `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  SplitMix64 g(base ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  return g.next();
}

/// A complex number with rational parts, as drawn from the sampling grid.
struct GaussianRational {
  BigRational re, im;
  Cx value() const { return Cx(re.to_double(), im.to_double()); }
};

/// Uniform draw from {k/8 : |k| <= 24}^2, excluding 0.
GaussianRational draw_grid(SplitMix64& g);

/// Random rational num/den with |num| <= max_num, 1 <= den <= max_den.
BigRational draw_rational(SplitMix64& g, long max_num, long max_den);

/// Random complex double with parts uniform in [-scale, scale].
Cx draw_complex(SplitMix64& g, double scale);

}  // namespace ivpp
