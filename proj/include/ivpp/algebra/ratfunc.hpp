#pragma once

#include <string>

#include "ivpp/algebra/mpoly.hpp"

namespace ivpp {

/// num / den with den != 0. Canonical: common polynomial factors cancelled,
/// den has coprime integer coefficients and a positive leading coefficient.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(MPoly num);  // NOLINT(google-explicit-constructor)
  RatFunc(MPoly num, MPoly den);

  static RatFunc parse(std::string_view num, std::string_view den = "1");

  const MPoly& num() const noexcept { return num_; }
  const MPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  /// Throws PoleError when |den| <= pole_tol * (1 + |num|).
  Cx eval(const Assignment& at, double pole_tol = 1e-12) const;
  BigRational eval_exact(const ExactAssignment& at) const;
  RatFunc substitute(const std::map<std::string, RatFunc, std::less<>>& values) const;

  std::string str() const;

  RatFunc operator-() const { return RatFunc(-num_, den_, Raw{}); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  struct Raw {};
  RatFunc(MPoly num, MPoly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  MPoly num_;
  MPoly den_;
};

}  // namespace ivpp
