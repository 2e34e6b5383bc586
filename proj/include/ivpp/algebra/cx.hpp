#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>
#include <vector>

#include "ivpp/errors.hpp"

namespace ivpp {

/// Finite complex double. Construction and every arithmetic result are
/// checked; a NaN or infinite component raises NonFiniteError.
class Cx {
 public:
  constexpr Cx() = default;
  Cx(double re, double im = 0.0) : v_(re, im) { check(); }  // NOLINT(google-explicit-constructor)
  Cx(std::complex<double> v) : v_(v) { check(); }            // NOLINT(google-explicit-constructor)

  double re() const noexcept { return v_.real(); }
  double im() const noexcept { return v_.imag(); }
  std::complex<double> value() const noexcept { return v_; }
  double abs() const noexcept { return std::abs(v_); }

  Cx operator-() const { return Cx(-v_); }
  Cx& operator+=(const Cx& o) { v_ += o.v_; check(); return *this; }
  Cx& operator-=(const Cx& o) { v_ -= o.v_; check(); return *this; }
  Cx& operator*=(const Cx& o) { v_ *= o.v_; check(); return *this; }
  Cx& operator/=(const Cx& o) { v_ /= o.v_; check(); return *this; }
  friend Cx operator+(Cx a, const Cx& b) { return a += b; }
  friend Cx operator-(Cx a, const Cx& b) { return a -= b; }
  friend Cx operator*(Cx a, const Cx& b) { return a *= b; }
  friend Cx operator/(Cx a, const Cx& b) { return a /= b; }
  friend bool operator==(const Cx& a, const Cx& b) noexcept { return a.v_ == b.v_; }

 private:
  void check() const {
    if (!std::isfinite(v_.real()) || !std::isfinite(v_.imag()))
      throw NonFiniteError("non-finite complex value");
  }
  std::complex<double> v_{};
};

std::ostream& operator<<(std::ostream& os, const Cx& z);

inline Cx sqrt(const Cx& z) { return Cx(std::sqrt(z.value())); }

using PointC = std::vector<Cx>;

/// max_j |a_j - b_j| / (1 + |a_j|)
double relative_distance(const PointC& a, const PointC& b);

}  // namespace ivpp
