#include "ivpp/algebra/ratfunc.hpp"

#include "ivpp/algebra/polyops.hpp"
#include "ivpp/errors.hpp"

namespace ivpp {

RatFunc::RatFunc(MPoly num) : num_(std::move(num)), den_(1) {}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

RatFunc RatFunc::parse(std::string_view num, std::string_view den) {
  return RatFunc(MPoly::parse(num), MPoly::parse(den));
}

void RatFunc::normalize() {
  if (den_.is_zero()) throw DegenerateParametersError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = MPoly(1);
    return;
  }
  if (!den_.is_constant()) {
    const MPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_divide(num_, g);
      den_ = exact_divide(den_, g);
    }
  }
  const MPoly dp = den_.primitive();
  const BigRational scale = den_.leading_coeff() / dp.leading_coeff();
  num_ = num_ * scale.inverse();
  den_ = dp;
}

Cx RatFunc::eval(const Assignment& at, double pole_tol) const {
  const Cx d = den_.eval(at);
  const Cx n = num_.eval(at);
  if (d.abs() <= pole_tol * (1.0 + n.abs())) throw PoleError("pole of " + str());
  return n / d;
}

BigRational RatFunc::eval_exact(const ExactAssignment& at) const {
  const BigRational d = den_.eval_exact(at);
  if (d.is_zero()) throw PoleError("exact pole of " + str());
  return num_.eval_exact(at) / d;
}

RatFunc RatFunc::substitute(const std::map<std::string, RatFunc, std::less<>>& values) const {
  // Horner-free: expand each monomial over the substituted fractions.
  auto expand = [&](const MPoly& p) {
    RatFunc acc(MPoly(0));
    for (const auto& [e, c] : p.terms()) {
      RatFunc term{MPoly(c)};
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (!e[k]) continue;
        auto it = values.find(p.vars()[k]);
        const RatFunc base = it == values.end() ? RatFunc(MPoly::variable(p.vars()[k])) : it->second;
        for (std::uint32_t j = 0; j < e[k]; ++j) term = term * base;
      }
      acc = acc + term;
    }
    return acc;
  };
  return expand(num_) / expand(den_);
}

std::string RatFunc::str() const {
  if (den_ == MPoly(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DegenerateParametersError("rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

}  // namespace ivpp
