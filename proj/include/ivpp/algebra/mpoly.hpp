#pragma once

#include <complex>
#include <concepts>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ivpp/algebra/cx.hpp"
#include "ivpp/algebra/rational.hpp"

namespace ivpp {

/// Exponent vector, one entry per variable of the owning polynomial.
using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order, greatest first. Variables are compared in the
/// owning polynomial's (sorted) variable order.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const noexcept;
};

using Assignment = std::map<std::string, Cx, std::less<>>;
using ExactAssignment = std::map<std::string, BigRational, std::less<>>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Canonical form: variables sorted by name and each one occurs in some
/// term; no zero coefficients; terms kept in graded-lex order. Two
/// polynomials are equal iff their canonical forms are equal.
class MPoly {
 public:
  using TermMap = std::map<Exponents, BigRational, GrlexGreater>;

  MPoly() = default;
  MPoly(const BigRational& c);  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  MPoly(I c) : MPoly(BigRational(c)) {}  // NOLINT(google-explicit-constructor)

  static MPoly variable(const std::string& name);
  /// Builds from raw terms; `vars` need not be sorted nor minimal.
  static MPoly from_terms(std::vector<std::string> vars, const TermMap& terms);
  static MPoly parse(std::string_view text);

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return vars_.empty(); }
  /// Value of the constant polynomial; throws if not constant.
  BigRational constant_value() const;
  bool has_var(std::string_view name) const noexcept { return var_index(name) >= 0; }
  int var_index(std::string_view name) const noexcept;

  /// Degree in `name`; -1 for the zero polynomial.
  int degree(std::string_view name) const;
  int total_degree() const;
  const Exponents& leading_exponents() const;
  const BigRational& leading_coeff() const;

  /// Coefficients in `name`, index = power. Empty for the zero polynomial.
  std::vector<MPoly> coeffs(std::string_view name) const;
  MPoly coeff(std::string_view name, int power) const;
  static MPoly from_coeffs(const std::string& name, const std::vector<MPoly>& coeffs);

  MPoly substitute(const std::string& name, const MPoly& value) const;
  /// Simultaneous substitution.
  MPoly substitute(const std::map<std::string, MPoly, std::less<>>& values) const;
  MPoly substitute(const ExactAssignment& values) const;
  MPoly rename(const std::map<std::string, std::string, std::less<>>& names) const;
  MPoly derivative(std::string_view name) const;
  MPoly pow(unsigned e) const;

  /// Positive rational c such that p / c has coprime integer coefficients.
  BigRational content() const;
  /// p / content, sign chosen so that the leading coefficient is positive.
  MPoly primitive() const;
  MPoly operator*(const BigRational& c) const;

  /// Horner evaluation; `point` is positional in `vars()` order.
  Cx eval(std::span<const Cx> point) const;
  Cx eval(const Assignment& named) const;
  BigRational eval_exact(const ExactAssignment& named) const;
  /// Sum over terms of |c| * |monomial| at the point: the natural scale for
  /// relative residuals.
  double magnitude(const Assignment& named) const;

  std::string str() const;

  /// Terms re-expressed over a superset `vars` (sorted) of vars().
  TermMap terms_over(const std::vector<std::string>& vars) const { return remapped(vars); }

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  void canonicalize();
  TermMap remapped(const std::vector<std::string>& to) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MPoly& p);

/// Sorted union of the variable lists of the arguments.
std::vector<std::string> merged_vars(std::span<const MPoly> polys);

/// Numeric polynomial with variables bound to positions of an external
/// coordinate order. Immutable; evaluation uses nested Horner.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const MPoly& p, const std::vector<std::string>& order);

  std::complex<double> operator()(std::span<const std::complex<double>> x) const;
  double magnitude(std::span<const std::complex<double>> x) const;
  bool is_zero() const noexcept { return terms_.empty(); }

 private:
  struct Term {
    Exponents exps;
    double coeff;
  };
  std::vector<Term> terms_;  // lex-descending in the polynomial's own vars
  std::vector<std::size_t> slot_;  // level -> position in the external order
};

}  // namespace ivpp
