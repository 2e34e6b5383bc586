#include "ivpp/elim.hpp"

#include <algorithm>
#include <cctype>

#include "ivpp/algebra/polyops.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/seeding.hpp"
#include "ivpp/varieties.hpp"

namespace ivpp {

double relative_residual(const MPoly& p, const Assignment& at) {
  return p.eval(at).abs() / (1.0 + p.magnitude(at));
}

std::string image_name(const std::string& coord) {
  std::string out = coord;
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

MPoly map_relation(const IntegrableMap& m, std::size_t j) {
  const RatFunc& f = m.components().at(j);
  return MPoly::variable(image_name(m.coords()[j])) * f.den() - f.num();
}

namespace {

void add_unique(std::vector<MPoly>& out, const MPoly& f) {
  for (const auto& g : out)
    if (equal_up_to_scale(g, f)) return;
  out.push_back(f);
}

}  // namespace

std::vector<MPoly> split_factors(const MPoly& p) {
  std::vector<MPoly> work{p}, out;
  while (!work.empty()) {
    MPoly f = work.back();
    work.pop_back();
    if (f.is_zero() || f.is_constant()) continue;
    f = f.primitive();
    bool split = false;
    for (const auto& v : f.vars()) {
      const MPoly c = content_in(f, v);
      if (!c.is_constant()) {
        work.push_back(c);
        work.push_back(exact_divide(f, c));
        split = true;
        break;
      }
    }
    if (!split) {
      for (const auto& v : f.vars()) {
        const MPoly g = gcd(f, f.derivative(v));
        if (!g.is_constant() && g.total_degree() < f.total_degree()) {
          work.push_back(g);
          work.push_back(exact_divide(f, g));
          split = true;
          break;
        }
      }
    }
    if (!split) add_unique(out, f);
  }
  return out;
}

namespace {

struct Collapse {};

bool vanishes_on(const MPoly& f, const std::vector<Assignment>& samples) {
  for (const auto& s : samples)
    if (!(relative_residual(f, s) <= 1e-8)) return false;
  return true;
}

// Keeps the factors of p that vanish on every sample (all factors without
// samples).
std::vector<MPoly> filtered(const MPoly& p, const std::vector<Assignment>& samples) {
  std::vector<MPoly> out;
  for (const auto& f : split_factors(p))
    if (samples.empty() || vanishes_on(f, samples)) out.push_back(f);
  return out;
}

std::vector<MPoly> run(const std::vector<MPoly>& relations, const std::vector<std::string>& order,
                       const std::vector<Assignment>& samples) {
  std::vector<MPoly> polys;
  for (const auto& r : relations)
    if (!r.is_zero()) polys.push_back(r);
  for (const auto& v : order) {
    std::vector<MPoly> with, next;
    for (const auto& p : polys) (p.has_var(v) ? with : next).push_back(p);
    if (with.empty()) continue;
    auto pivot = std::min_element(with.begin(), with.end(), [&](const MPoly& a, const MPoly& b) {
      const int da = a.degree(v), db = b.degree(v);
      return da != db ? da < db : a.size() < b.size();
    });
    std::swap(*pivot, with.front());
    std::vector<MPoly> produced;
    if (with.size() == 1) {
      produced.push_back(content_in(with[0], v));
    } else {
      for (std::size_t i = 1; i < with.size(); ++i) {
        MPoly r = resultant(with[0], with[i], v);
        if (r.is_zero()) throw Collapse{};
        produced.push_back(std::move(r));
      }
    }
    for (const auto& r : produced)
      for (auto& f : filtered(r, samples)) add_unique(next, f);
    polys = std::move(next);
  }
  return polys;
}

}  // namespace

std::vector<MPoly> eliminate(const EliminationProblem& prob, std::uint64_t seed) {
  if (prob.eliminate.empty() || prob.eliminate.size() > 2)
    throw EliminationError("eliminate: one or two variables are supported");
  for (const auto& v : prob.eliminate)
    if (std::find(prob.keep.begin(), prob.keep.end(), v) != prob.keep.end())
      throw EliminationError("eliminate: variable '" + v + "' is both kept and eliminated");
  if (prob.relations.size() < 2) throw EliminationError("eliminate: need at least two relations");

  std::vector<Assignment> samples;
  if (prob.sampler) samples = prob.sampler(8, seed);

  auto kept_only = [&](const std::vector<MPoly>& polys) {
    std::vector<MPoly> out;
    for (const auto& p : polys) {
      const bool only_kept = std::all_of(p.vars().begin(), p.vars().end(), [&](const auto& v) {
        return prob.keep.empty() ||
               std::find(prob.keep.begin(), prob.keep.end(), v) != prob.keep.end();
      });
      if (only_kept) add_unique(out, p.primitive());
    }
    return out;
  };

  std::vector<std::vector<std::string>> orders{prob.eliminate};
  if (prob.eliminate.size() == 2) orders.push_back({prob.eliminate[1], prob.eliminate[0]});
  std::vector<std::vector<MPoly>> results;
  for (const auto& order : orders) {
    try {
      results.push_back(kept_only(run(prob.relations, order, samples)));
    } catch (const Collapse&) {
    }
  }
  if (results.empty())
    throw EliminationError(
        "eliminate: resultants vanish identically in every order; the relations share a common "
        "component, reorder or reduce them");

  // Each order leaves its own extraneous cofactors; common factors of the
  // two results are sharper than either.
  std::vector<MPoly> out = results[0];
  if (results.size() == 2) {
    std::vector<MPoly> refined;
    for (const auto& f : results[0]) {
      bool found = false;
      for (const auto& g : results[1]) {
        const MPoly h = gcd(f, g);
        if (h.is_constant()) continue;
        for (const auto& piece : filtered(h, samples)) {
          add_unique(refined, piece.primitive());
          found = true;
        }
      }
      if (!found) add_unique(refined, f);
    }
    out = std::move(refined);
  }
  if (out.empty())
    throw EliminationError("eliminate: no factor survives filtering on " +
                           std::to_string(samples.size()) + " transitions");
  return out;
}

std::vector<std::string> reduced_coordinates(const IntegrableMap& m, int period) {
  const VarietyGenerator g = gamma_get(m, period);
  std::vector<std::string> out;
  for (const auto& c : m.coords())
    if (std::find(g.eliminate.begin(), g.eliminate.end(), c) == g.eliminate.end()) out.push_back(c);
  return out;
}

EliminationProblem recurrence_problem(const IntegrableMap& m, int period,
                                      const std::string& target) {
  const VarietyGenerator g = gamma_get(m, period);
  auto it = std::find(m.coords().begin(), m.coords().end(), target);
  if (it == m.coords().end()) throw EliminationError("map has no coordinate '" + target + "'");
  if (std::find(g.eliminate.begin(), g.eliminate.end(), target) != g.eliminate.end())
    throw EliminationError("coordinate '" + target + "' is eliminated at this period");
  EliminationProblem prob;
  prob.relations.push_back(map_relation(m, static_cast<std::size_t>(it - m.coords().begin())));
  for (auto& n : g.composed_numerators()) prob.relations.push_back(std::move(n));
  prob.eliminate = g.eliminate;
  prob.keep = reduced_coordinates(m, period);
  prob.keep.push_back(image_name(target));
  prob.sampler = [m, g](int count, std::uint64_t seed) {
    std::vector<Assignment> out;
    for (int i = 0; static_cast<int>(out.size()) < count && i < 4 * count; ++i) {
      try {
        const PointC p = sample_on_variety(g, derive_seed(seed, static_cast<std::uint64_t>(i)));
        const PointC q = ivpp::apply(m, p);
        Assignment a;
        for (std::size_t j = 0; j < p.size(); ++j) {
          a.emplace(m.coords()[j], p[j]);
          a.emplace(image_name(m.coords()[j]), q[j]);
        }
        out.push_back(std::move(a));
      } catch (const Error&) {
      }
    }
    return out;
  };
  return prob;
}

}  // namespace ivpp
