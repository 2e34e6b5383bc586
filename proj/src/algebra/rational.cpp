#include "ivpp/algebra/rational.hpp"

#include <cctype>
#include <ostream>

#include "ivpp/errors.hpp"

namespace ivpp {

BigRational::BigRational(long num, long den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

BigRational::BigRational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (s.empty()) throw ParseError("empty rational literal");
  bool neg = false;
  std::string body = s;
  if (body[0] == '-' || body[0] == '+') {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  auto all_digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  mpq_class v;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    const std::string n = body.substr(0, slash), d = body.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) throw ParseError("bad rational literal: " + s);
    mpz_class dz(d);
    if (dz == 0) throw ParseError("zero denominator in literal: " + s);
    v = mpq_class(mpz_class(n), dz);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    const std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
        (ip.empty() && fp.empty()))
      throw ParseError("bad decimal literal: " + s);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    v = mpq_class(mpz_class(ip.empty() ? "0" : ip) * scale + mpz_class(fp.empty() ? "0" : fp),
                  scale);
  } else {
    if (!all_digits(body)) throw ParseError("bad integer literal: " + s);
    v = mpq_class(mpz_class(body));
  }
  v.canonicalize();
  if (neg) v = -v;
  return BigRational(std::move(v));
}

BigRational BigRational::inverse() const {
  if (is_zero()) throw std::domain_error("BigRational: inverse of zero");
  return BigRational(mpq_class(1 / v_));
}

BigRational BigRational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), e);
  return BigRational(n, d);
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const BigRational& q) { return os << q.str(); }

BigRational rational_gcd(const BigRational& a, const BigRational& b) {
  // gcd(n1/d1, n2/d2) = gcd(n1, n2) / lcm(d1, d2)
  mpz_class n, d;
  mpz_gcd(n.get_mpz_t(), a.raw().get_num_mpz_t(), b.raw().get_num_mpz_t());
  if (n == 0) return BigRational(0);
  mpz_lcm(d.get_mpz_t(), a.raw().get_den_mpz_t(), b.raw().get_den_mpz_t());
  return BigRational(n, d);
}

}  // namespace ivpp
