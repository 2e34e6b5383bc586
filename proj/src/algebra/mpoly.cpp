#include "ivpp/algebra/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ivpp/errors.hpp"

namespace ivpp {

namespace {

std::uint64_t total(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

template <class S>
S ipow(S base, std::uint32_t e) {
  S result(1);
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

// Nested Horner over a lex-descending term range. All terms in [b, e) share
// the exponents of levels < `level`.
template <class S, class T, class Value>
S horner(const T* b, const T* e, std::size_t level, std::size_t levels, const Value& value) {
  if (level == levels) return S(b->coeff);
  S acc(0);
  bool first = true;
  std::uint32_t prev = 0;
  const S x = value(level);
  for (const T* it = b; it != e;) {
    const std::uint32_t ex = it->exps[level];
    const T* g = it;
    while (g != e && g->exps[level] == ex) ++g;
    S inner = horner<S>(it, g, level + 1, levels, value);
    if (first) {
      acc = inner;
      first = false;
    } else {
      acc = acc * ipow(x, prev - ex) + inner;
    }
    prev = ex;
    it = g;
  }
  return acc * ipow(x, prev);
}

struct ExactTerm {
  Exponents exps;
  BigRational coeff;
};

std::vector<ExactTerm> lex_terms(const MPoly::TermMap& terms) {
  std::vector<ExactTerm> out;
  out.reserve(terms.size());
  for (const auto& [e, c] : terms) out.push_back({e, c});
  std::sort(out.begin(), out.end(),
            [](const ExactTerm& a, const ExactTerm& b) { return a.exps > b.exps; });
  return out;
}

}  // namespace

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const noexcept {
  const auto ta = total(a), tb = total(b);
  if (ta != tb) return ta > tb;
  return a > b;
}

MPoly::MPoly(const BigRational& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

MPoly MPoly::variable(const std::string& name) {
  MPoly p;
  p.vars_ = {name};
  p.terms_.emplace(Exponents{1}, BigRational(1));
  return p;
}

MPoly MPoly::from_terms(std::vector<std::string> vars, const TermMap& terms) {
  MPoly p;
  std::vector<std::size_t> perm(vars.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](auto i, auto j) { return vars[i] < vars[j]; });
  std::vector<std::string> sorted;
  for (auto i : perm) sorted.push_back(vars[i]);
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) throw ArityError("duplicate variable " + sorted[i]);
  p.vars_ = std::move(sorted);
  for (const auto& [e, c] : terms) {
    if (e.size() != vars.size()) throw ArityError("exponent vector length mismatch");
    if (c.is_zero()) continue;
    Exponents ne(vars.size());
    for (std::size_t k = 0; k < perm.size(); ++k) ne[k] = e[perm[k]];
    auto [it, inserted] = p.terms_.emplace(std::move(ne), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) p.terms_.erase(it);
    }
  }
  p.canonicalize();
  return p;
}

void MPoly::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) used[k] = true;
  if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
  std::vector<std::string> keep;
  for (std::size_t k = 0; k < vars_.size(); ++k)
    if (used[k]) keep.push_back(vars_[k]);
  terms_ = remapped(keep);
  vars_ = std::move(keep);
}

MPoly::TermMap MPoly::remapped(const std::vector<std::string>& to) const {
  if (to == vars_) return terms_;
  std::vector<std::size_t> pos(vars_.size(), to.size());
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    auto it = std::lower_bound(to.begin(), to.end(), vars_[k]);
    if (it != to.end() && *it == vars_[k]) pos[k] = static_cast<std::size_t>(it - to.begin());
  }
  TermMap out;
  for (const auto& [e, c] : terms_) {
    Exponents ne(to.size(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (!e[k]) continue;
      if (pos[k] == to.size()) throw ArityError("remap drops used variable " + vars_[k]);
      ne[pos[k]] = e[k];
    }
    out.emplace(std::move(ne), c);
  }
  return out;
}

std::vector<std::string> merged_vars(std::span<const MPoly> polys) {
  std::vector<std::string> out;
  for (const auto& p : polys) {
    std::vector<std::string> m;
    std::set_union(out.begin(), out.end(), p.vars().begin(), p.vars().end(),
                   std::back_inserter(m));
    out = std::move(m);
  }
  return out;
}

BigRational MPoly::constant_value() const {
  if (!is_constant()) throw ArityError("polynomial is not constant: " + str());
  return is_zero() ? BigRational(0) : terms_.begin()->second;
}

int MPoly::var_index(std::string_view name) const noexcept {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
  if (it != vars_.end() && *it == name) return static_cast<int>(it - vars_.begin());
  return -1;
}

int MPoly::degree(std::string_view name) const {
  if (is_zero()) return -1;
  const int k = var_index(name);
  if (k < 0) return 0;
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(k)]);
  return static_cast<int>(d);
}

int MPoly::total_degree() const {
  if (is_zero()) return -1;
  return static_cast<int>(total(terms_.begin()->first));
}

const Exponents& MPoly::leading_exponents() const {
  if (is_zero()) throw ArityError("leading term of zero polynomial");
  return terms_.begin()->first;
}

const BigRational& MPoly::leading_coeff() const {
  if (is_zero()) throw ArityError("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

std::vector<MPoly> MPoly::coeffs(std::string_view name) const {
  std::vector<MPoly> out;
  if (is_zero()) return out;
  const int k = var_index(name);
  if (k < 0) return {*this};
  const auto kk = static_cast<std::size_t>(k);
  std::vector<TermMap> parts(static_cast<std::size_t>(degree(name)) + 1);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    ne[kk] = 0;
    parts[e[kk]].emplace(std::move(ne), c);
  }
  for (auto& t : parts) {
    MPoly p;
    p.vars_ = vars_;
    p.terms_ = std::move(t);
    p.canonicalize();
    out.push_back(std::move(p));
  }
  return out;
}

MPoly MPoly::coeff(std::string_view name, int power) const {
  auto cs = coeffs(name);
  if (power < 0 || static_cast<std::size_t>(power) >= cs.size()) return MPoly();
  return cs[static_cast<std::size_t>(power)];
}

MPoly MPoly::from_coeffs(const std::string& name, const std::vector<MPoly>& coeffs) {
  MPoly out;
  const MPoly v = variable(name);
  for (std::size_t k = coeffs.size(); k-- > 0;) out = out * v + coeffs[k];
  return out;
}

MPoly MPoly::substitute(const std::string& name, const MPoly& value) const {
  if (!has_var(name)) return *this;
  auto cs = coeffs(name);
  MPoly out;
  for (std::size_t k = cs.size(); k-- > 0;) out = out * value + cs[k];
  return out;
}

MPoly MPoly::substitute(const std::map<std::string, MPoly, std::less<>>& values) const {
  // Precompute powers of each substituted value on demand.
  std::vector<std::vector<MPoly>> powers(vars_.size());
  std::vector<const MPoly*> target(vars_.size(), nullptr);
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    auto it = values.find(vars_[k]);
    if (it != values.end()) target[k] = &it->second;
  }
  auto power_of = [&](std::size_t k, std::uint32_t e) -> const MPoly& {
    auto& pw = powers[k];
    if (pw.empty()) pw.push_back(MPoly(1));
    while (pw.size() <= e) pw.push_back(pw.back() * *target[k]);
    return pw[e];
  };
  MPoly out;
  for (const auto& [e, c] : terms_) {
    MPoly term(c);
    std::vector<std::string> kv;
    TermMap kept;
    Exponents ke;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (target[k]) {
        if (e[k]) term *= power_of(k, e[k]);
      } else {
        kv.push_back(vars_[k]);
        ke.push_back(e[k]);
      }
    }
    if (!kv.empty()) {
      kept.emplace(ke, BigRational(1));
      term *= from_terms(kv, kept);
    }
    out += term;
  }
  return out;
}

MPoly MPoly::substitute(const ExactAssignment& values) const {
  std::map<std::string, MPoly, std::less<>> m;
  for (const auto& [n, v] : values) m.emplace(n, MPoly(v));
  return substitute(m);
}

MPoly MPoly::rename(const std::map<std::string, std::string, std::less<>>& names) const {
  std::vector<std::string> nv = vars_;
  for (auto& v : nv)
    if (auto it = names.find(v); it != names.end()) v = it->second;
  // Renaming onto an existing name merges exponents.
  std::vector<std::string> uniq = nv;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  TermMap t;
  for (const auto& [e, c] : terms_) {
    Exponents ne(uniq.size(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) {
      auto pos = std::lower_bound(uniq.begin(), uniq.end(), nv[k]) - uniq.begin();
      ne[static_cast<std::size_t>(pos)] += e[k];
    }
    auto [it, ins] = t.emplace(std::move(ne), c);
    if (!ins) it->second += c;
  }
  return from_terms(uniq, t);
}

MPoly MPoly::derivative(std::string_view name) const {
  const int k = var_index(name);
  if (k < 0) return MPoly();
  const auto kk = static_cast<std::size_t>(k);
  MPoly p;
  p.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    if (!e[kk]) continue;
    Exponents ne = e;
    --ne[kk];
    p.terms_.emplace(std::move(ne), c * BigRational(static_cast<long>(e[kk])));
  }
  p.canonicalize();
  return p;
}

MPoly MPoly::pow(unsigned e) const { return ipow(*this, e); }

BigRational MPoly::content() const {
  BigRational g(0);
  for (const auto& [e, c] : terms_) g = rational_gcd(g, c);
  return g;
}

MPoly MPoly::primitive() const {
  if (is_zero()) return *this;
  BigRational g = content();
  if (leading_coeff().sign() < 0) g = -g;
  return *this * g.inverse();
}

MPoly MPoly::operator*(const BigRational& c) const {
  if (c.is_zero()) return MPoly();
  MPoly p = *this;
  for (auto& [e, v] : p.terms_) v *= c;
  return p;
}

Cx MPoly::eval(std::span<const Cx> point) const {
  if (point.size() < vars_.size())
    throw ArityError("poly_eval: point has " + std::to_string(point.size()) +
                     " coordinates, polynomial uses " + std::to_string(vars_.size()));
  std::vector<std::complex<double>> x;
  for (const auto& z : point) x.push_back(z.value());
  return Cx(CompiledPoly(*this, vars_)(x));
}

Cx MPoly::eval(const Assignment& named) const {
  std::vector<Cx> x;
  for (const auto& v : vars_) {
    auto it = named.find(v);
    if (it == named.end()) throw ArityError("poly_eval: no value for variable " + v);
    x.push_back(it->second);
  }
  return eval(std::span<const Cx>(x));
}

BigRational MPoly::eval_exact(const ExactAssignment& named) const {
  std::vector<BigRational> x;
  for (const auto& v : vars_) {
    auto it = named.find(v);
    if (it == named.end()) throw ArityError("eval_exact: no value for variable " + v);
    x.push_back(it->second);
  }
  if (is_zero()) return BigRational(0);
  auto lt = lex_terms(terms_);
  return horner<BigRational>(lt.data(), lt.data() + lt.size(), 0, vars_.size(),
                             [&](std::size_t level) { return x[level]; });
}

double MPoly::magnitude(const Assignment& named) const {
  std::vector<std::complex<double>> x;
  for (const auto& v : vars_) {
    auto it = named.find(v);
    if (it == named.end()) throw ArityError("magnitude: no value for variable " + v);
    x.push_back(it->second.value());
  }
  return CompiledPoly(*this, vars_).magnitude(x);
}

std::string MPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool neg = c.sign() < 0;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    const BigRational a = c.abs();
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (!e[k]) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[k];
      if (e[k] > 1) mono += '^' + std::to_string(e[k]);
    }
    if (mono.empty())
      os << a.str();
    else if (a.is_one())
      os << mono;
    else
      os << a.str() << '*' << mono;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

MPoly MPoly::operator-() const { return *this * BigRational(-1); }

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.is_zero()) return *this;
  if (vars_ != o.vars_) {
    const MPoly pair[2] = {*this, o};
    auto mv = merged_vars(pair);
    terms_ = remapped(mv);
    vars_ = mv;
    for (auto& [e, c] : o.remapped(mv)) {
      auto [it, ins] = terms_.emplace(e, c);
      if (!ins) it->second += c;
    }
  } else {
    for (const auto& [e, c] : o.terms_) {
      auto [it, ins] = terms_.emplace(e, c);
      if (!ins) it->second += c;
    }
  }
  canonicalize();
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly();
  const MPoly pair[2] = {a, b};
  auto mv = merged_vars(pair);
  auto ta = a.remapped(mv), tb = b.remapped(mv);
  MPoly p;
  p.vars_ = mv;
  Exponents e(mv.size());
  for (const auto& [ea, ca] : ta) {
    for (const auto& [eb, cb] : tb) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      auto it = p.terms_.find(e);
      if (it == p.terms_.end())
        p.terms_.emplace(e, ca * cb);
      else
        it->second += ca * cb;
    }
  }
  p.canonicalize();
  return p;
}

// ---- parsing ---------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MPoly parse_all() {
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial parse error at offset " + std::to_string(pos_) + ": " + why +
                     " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  MPoly expr() {
    MPoly acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }
  MPoly term() {
    MPoly acc = unary();
    for (;;) {
      if (eat('*')) {
        acc *= unary();
      } else if (eat('/')) {
        MPoly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc = acc * d.constant_value().inverse();
      } else {
        return acc;
      }
    }
  }
  MPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  MPoly power() {
    MPoly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }
  MPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
        ++pos_;
      return MPoly(BigRational::parse(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return MPoly::variable(std::string(s_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly MPoly::parse(std::string_view text) { return Parser(text).parse_all(); }

// ---- compiled evaluation -----------------------------------------------------

CompiledPoly::CompiledPoly(const MPoly& p, const std::vector<std::string>& order) {
  for (const auto& v : p.vars()) {
    auto it = std::find(order.begin(), order.end(), v);
    if (it == order.end()) throw ArityError("no coordinate slot for variable " + v);
    slot_.push_back(static_cast<std::size_t>(it - order.begin()));
  }
  for (const auto& [e, c] : p.terms()) terms_.push_back({e, c.to_double()});
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exps > b.exps; });
}

std::complex<double> CompiledPoly::operator()(std::span<const std::complex<double>> x) const {
  if (terms_.empty()) return 0.0;
  using C = std::complex<double>;
  C v = horner<C>(terms_.data(), terms_.data() + terms_.size(), 0, slot_.size(),
                  [&](std::size_t level) { return x[slot_[level]]; });
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NonFiniteError("polynomial evaluation overflowed");
  return v;
}

double CompiledPoly::magnitude(std::span<const std::complex<double>> x) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double m = std::abs(t.coeff);
    for (std::size_t k = 0; k < t.exps.size(); ++k)
      if (t.exps[k]) m *= std::pow(std::abs(x[slot_[k]]), t.exps[k]);
    s += m;
  }
  return s;
}

}  // namespace ivpp
