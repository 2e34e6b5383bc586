#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ivpp {

/// Exact rational number. Always canonical: denominator positive, numerator
/// and denominator coprime, zero stored as 0/1.
class BigRational {
 public:
  BigRational() = default;
  template <std::integral I>
  BigRational(I v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  BigRational(long num, long den);
  explicit BigRational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  BigRational(const mpz_class& num, const mpz_class& den);

  /// Accepts "n", "-n", "n/d" and finite decimals such as "-0.125".
  static BigRational parse(std::string_view text);

  const mpq_class& raw() const noexcept { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const noexcept { return sgn(v_) == 0; }
  bool is_one() const noexcept { return v_ == 1; }
  bool is_integer() const noexcept { return v_.get_den() == 1; }
  int sign() const noexcept { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }

  BigRational abs() const { return BigRational(mpq_class(::abs(v_))); }
  BigRational inverse() const;
  BigRational pow(unsigned e) const;

  BigRational operator-() const { return BigRational(mpq_class(-v_)); }
  BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
  BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
  BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const BigRational& q);

/// gcd of two rationals: the largest positive rational g with a/g, b/g both
/// integers. gcd(0, 0) = 0.
BigRational rational_gcd(const BigRational& a, const BigRational& b);

}  // namespace ivpp
