#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ivpp/biquad.hpp"
#include "ivpp/catalog.hpp"
#include "ivpp/elim.hpp"
#include "ivpp/errors.hpp"
#include "ivpp/fixtures.hpp"
#include "ivpp/orbit.hpp"
#include "ivpp/qrt.hpp"
#include "ivpp/seeding.hpp"
#include "ivpp/serialize.hpp"
#include "ivpp/varieties.hpp"

namespace ivpp::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct RunConfig {
  std::string command;
  std::string map_name;
  int period = 0;
  int seeds = 100;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string format = "json";
  std::string out;
  bool off_variety = false;
  int max_period = 12;
  bool timing = false;
  std::string a, b, alpha, beta, gamma, qp, qpp;
  std::vector<std::string> params;  // name=value
  std::string init;
  int steps = 0;
  std::string target;
};

/// Bad configuration detected after parsing; maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<BigRational> six_rationals(const std::string& list, const char* flag) {
  const auto parts = split(list, ',');
  if (parts.size() != 6) throw UsageError(std::string(flag) + " needs 6 comma-separated rationals");
  std::vector<BigRational> out;
  for (const auto& p : parts) out.push_back(BigRational::parse(p));
  return out;
}

ParamBindings bindings(const RunConfig& c) {
  ParamBindings p;
  auto put = [&](const char* k, const std::string& v) {
    if (!v.empty()) p.insert_or_assign(k, BigRational::parse(v));
  };
  put("a", c.a);
  put("b", c.b);
  put("alpha", c.alpha);
  put("beta", c.beta);
  put("gamma", c.gamma);
  const char* letters = "abcdef";
  if (!c.qp.empty()) {
    const auto v = six_rationals(c.qp, "--qp");
    for (std::size_t i = 0; i < 6; ++i) p.insert_or_assign(std::string(1, letters[i]) + "1", v[i]);
  }
  if (!c.qpp.empty()) {
    const auto v = six_rationals(c.qpp, "--qpp");
    for (std::size_t i = 0; i < 6; ++i) p.insert_or_assign(std::string(1, letters[i]) + "2", v[i]);
  }
  for (const auto& kv : c.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + kv + "'");
    p.insert_or_assign(kv.substr(0, eq), BigRational::parse(kv.substr(eq + 1)));
  }
  return p;
}

std::optional<QRTParams> qrt_params(const ParamBindings& p) {
  if (p.empty()) return std::nullopt;
  QRTParams P;
  const char* letters = "abcdef";
  for (std::size_t i = 0; i < 6; ++i) {
    const std::string k1 = std::string(1, letters[i]) + "1", k2 = std::string(1, letters[i]) + "2";
    if (!p.contains(k1) || !p.contains(k2)) throw UsageError("qrt needs both --qp and --qpp");
    P.qp[i] = p.find(k1)->second;
    P.qpp[i] = p.find(k2)->second;
  }
  return P;
}

/// "re", "re+imi", "re-imi" or "imi" ("j" also accepted).
Cx parse_complex(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw UsageError("empty coordinate in --init");
  try {
    if (s.back() != 'i' && s.back() != 'j') return Cx(std::stod(s));
    s.pop_back();
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        cut = k;
        break;
      }
    auto part = [](const std::string& t) {
      if (t.empty() || t == "+") return 1.0;
      if (t == "-") return -1.0;
      return std::stod(t);
    };
    if (cut == std::string::npos) return Cx(0.0, part(s));
    return Cx(std::stod(s.substr(0, cut)), part(s.substr(cut)));
  } catch (const std::logic_error&) {
    throw UsageError("cannot read '" + s + "' as a complex number");
  }
}

int natural_period(const std::string& map) {
  if (map == "lyness2") return 2;
  if (map == "lyness5") return 5;
  if (map == "lyness8") return 8;
  return 0;
}

bool has_period(const std::string& map, int n) {
  const auto ps = gamma_periods(map);
  return std::find(ps.begin(), ps.end(), n) != ps.end();
}

Json config_json(const RunConfig& c, const ParamBindings& params) {
  Json p = Json::object();
  for (const auto& [k, v] : params) p[k] = v.str();
  Json j{{"command", c.command}, {"map", c.map_name}, {"params", p}};
  if (c.command == "verify" || c.command == "sample") {
    j["period"] = c.period;
    j["seeds"] = c.seeds;
    j["seed"] = c.seed;
  }
  if (c.command == "verify") {
    j["tol"] = c.tol;
    j["off_variety"] = c.off_variety;
    if (c.off_variety) j["max_period"] = c.max_period;
  }
  if (c.command == "eliminate") {
    j["period"] = c.period;
    j["target"] = c.target;
    j["seed"] = c.seed;
  }
  if (c.command == "orbit") {
    j["init"] = c.init;
    j["steps"] = c.steps;
    j["period"] = c.period;
    j["tol"] = c.tol;
  }
  j["format"] = c.format;
  return j;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + c.out);
  f << text;
}

double elapsed_ms(const RunConfig& c, Clock::time_point t0) {
  if (!c.timing) return 0.0;
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// list ------------------------------------------------------------------------

int cmd_list(const RunConfig& c, std::ostream& out) {
  const ParamBindings params = bindings(c);
  std::vector<std::string> names = catalog_names();
  names.push_back("biquad");
  if (!c.map_name.empty()) {
    if (std::find(names.begin(), names.end(), c.map_name) == names.end())
      throw UnknownMapError("unknown map '" + c.map_name + "'");
    names = {c.map_name};
  }
  Json maps = Json::array();
  for (const auto& name : names) {
    Json e;
    if (name == "biquad") {
      e = Json{{"name", name}, {"family", true}, {"parameters", Json::array({"a", "b", "c", "d", "e", "f"})},
               {"periods", gamma_periods(name)}};
    } else {
      e = Json{{"name", name}, {"parameters", catalog_parameters(name)}, {"periods", gamma_periods(name)}};
      try {
        const Json d = to_json(catalog_get(name, c.map_name.empty() ? ParamBindings{} : params));
        for (const auto& [k, v] : d.items()) e[k] = v;
      } catch (const MissingParameterError&) {
      }
    }
    maps.push_back(std::move(e));
  }
  if (c.format == "json") {
    emit(c, Json{{"maps", maps}}.dump(2) + "\n", out);
    return kOk;
  }
  std::ostringstream os;
  for (const auto& e : maps) {
    std::string ps, ns;
    for (const auto& p : e["parameters"]) ps += (ps.empty() ? "" : ",") + p.get<std::string>();
    for (const auto& n : e["periods"]) ns += (ns.empty() ? "" : " ") + std::to_string(n.get<int>());
    os << e["name"].get<std::string>();
    if (e.contains("d")) os << "  d=" << e["d"].get<int>();
    os << "  parameters: " << (ps.empty() ? "-" : ps) << "  periods: " << (ns.empty() ? "-" : ns)
       << "\n";
  }
  emit(c, os.str(), out);
  return kOk;
}

// verify / sample ---------------------------------------------------------------

enum class Family { kLyness, kVariety, kQrt, kBiquad };

struct Setup {
  Family family = Family::kVariety;
  ParamBindings params;
  std::optional<IntegrableMap> map;
  std::optional<VarietyGenerator> gen;
  std::optional<QRTParams> qrt;
  int period = 0;
};

Setup make_setup(const RunConfig& c) {
  Setup s;
  s.params = bindings(c);
  s.period = c.period;
  if (c.map_name == "biquad") {
    s.family = Family::kBiquad;
    if (!s.params.empty()) throw UsageError("biquad draws its own parameters");
  } else if (c.map_name == "qrt") {
    s.family = Family::kQrt;
    s.qrt = qrt_params(s.params);
    if (s.qrt) s.map = catalog_get("qrt", s.params);
  } else {
    s.map = catalog_get(c.map_name, s.params);
    if (natural_period(c.map_name) > 0) {
      s.family = Family::kLyness;
      if (s.period == 0) s.period = natural_period(c.map_name);
      return s;
    }
  }
  if (s.period == 0) throw UsageError("--period is required for " + c.map_name);
  if (!has_period(c.map_name, s.period))
    throw UnknownVarietyError(c.map_name + " has no period-" + std::to_string(s.period) + " variety");
  if (s.family == Family::kVariety) s.gen = gamma_get(*s.map, s.period);
  return s;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) { return derive_seed(seed, stream); }

/// False when the orbit already returned at a proper divisor d >= 2 of n.
bool primitive_orbit(const std::vector<Cx>& orbit, int n, double tol) {
  for (int d = 2; d < n; ++d)
    if (n % d == 0 && (orbit[static_cast<std::size_t>(d)] - orbit[0]).abs() / (1.0 + orbit[0].abs()) <= tol)
      return false;
  return true;
}

struct Tally {
  int passed = 0, failed = 0, skipped = 0;
  double max_return = 0.0, max_drift = 0.0;
};

Json on_variety_verdict(const Setup& s, const RunConfig& c, int i, Tally& t) {
  const std::uint64_t seed = derive_seed(c.seed, static_cast<std::uint64_t>(i));
  Json v{{"index", i}, {"seed", seed}};
  const int n = s.period;
  try {
    double ret = 0.0, drift = 0.0;
    bool primitive = true, fixed = false;
    switch (s.family) {
      case Family::kLyness: {
        SplitMix64 g(seed);
        PointC p;
        for (std::size_t j = 0; j < s.map->dim(); ++j) p.push_back(draw_complex(g, 2.0));
        const OrbitReport r = verify_period(*s.map, p, n, c.tol);
        ret = r.return_error;
        primitive = r.primitive;
        fixed = r.fixed_point;
        v["point"] = to_json(p);
        break;
      }
      case Family::kVariety: {
        const PointC p = sample_on_variety(*s.gen, seed);
        const OrbitReport r = verify_period(*s.map, p, n, c.tol);
        ret = r.return_error;
        drift = conservation(*s.map, p, n);
        primitive = r.primitive;
        fixed = r.fixed_point;
        v["point"] = to_json(p);
        break;
      }
      case Family::kQrt: {
        const QRTParams P = s.qrt ? *s.qrt : draw_qrt_params(sub_seed(seed, 1));
        const IntegrableMap m = catalog_get("qrt", qrt_bindings(P));
        const QRTSample q = sample_qrt_on_gamma(P, n, sub_seed(seed, 2));
        const PointC p{q.x, q.y};
        const OrbitReport r = verify_period(m, p, n, c.tol);
        ret = r.return_error;
        drift = conservation(m, p, n);
        primitive = r.primitive;
        fixed = r.fixed_point;
        if (!s.qrt) {
          v["qp"] = biquad_to_json(P.qp);
          v["qpp"] = biquad_to_json(P.qpp);
        }
        v["h"] = to_json(q.h);
        v["point"] = to_json(p);
        break;
      }
      case Family::kBiquad: {
        const BiquadSample b = sample_biquad_on_gamma(n, seed);
        const Cx X1 = solve_branches(b.q, b.x0).front();
        const auto orbit = follow_branch(b.q, b.x0, X1, n);
        ret = (orbit.back() - b.x0).abs() / (1.0 + b.x0.abs());
        primitive = primitive_orbit(orbit, n, c.tol);
        fixed = (orbit[1] - b.x0).abs() / (1.0 + b.x0.abs()) <= c.tol;
        Json q = Json::array();
        for (const auto& z : b.q) q.push_back(to_json(z));
        v["q"] = std::move(q);
        v["point"] = Json::array({to_json(b.x0)});
        break;
      }
    }
    const bool ok = ret <= c.tol && drift <= c.tol && primitive && !fixed;
    v["status"] = ok ? "pass" : "fail";
    v["return_error"] = ret;
    v["drift"] = drift;
    v["primitive"] = primitive;
    v["fixed_point"] = fixed;
    (ok ? t.passed : t.failed)++;
    t.max_return = std::max(t.max_return, ret);
    t.max_drift = std::max(t.max_drift, drift);
  } catch (const Error& e) {
    v["status"] = "skip";
    v["note"] = e.what();
    ++t.skipped;
  }
  return v;
}

Json off_variety_verdict(const Setup& s, const RunConfig& c, int i, Tally& t) {
  const std::uint64_t seed = derive_seed(c.seed, static_cast<std::uint64_t>(i));
  Json v{{"index", i}, {"seed", seed}};
  try {
    SplitMix64 g(seed);
    PointC p;
    for (std::size_t j = 0; j < s.map->dim(); ++j) p.push_back(draw_grid(g).value());
    v["point"] = to_json(p);
    if (s.gen && membership(*s.gen, p, 1e-6).member) throw SamplingError("point lies on the variety");
    const ExclusivityScan scan = exclusivity_scan(*s.map, p, c.max_period, c.tol);
    Json returns = Json::array();
    for (std::size_t k = 0; k < scan.returned.size(); ++k)
      if (scan.returned[k]) returns.push_back(static_cast<int>(k) + 2);
    const bool ok = returns.empty();
    v["status"] = ok ? "pass" : "fail";
    v["returns"] = std::move(returns);
    v["poles"] = scan.poles;
    (ok ? t.passed : t.failed)++;
  } catch (const Error& e) {
    v["status"] = "skip";
    v["note"] = e.what();
    ++t.skipped;
  }
  return v;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const auto t0 = Clock::now();
  const Setup s = make_setup(c);
  if (c.off_variety && (s.family == Family::kLyness || s.family == Family::kBiquad || !s.map))
    throw UsageError("--off-variety needs a map with fixed parameters and a variety");

  Json report;
  report["config"] = config_json(c, s.params);
  report["config"]["period"] = s.period;
  if (s.map) report["map"] = to_json(*s.map);
  if (s.gen) report["generator"] = to_json(*s.gen);

  Tally t;
  Json verdicts = Json::array();
  for (int i = 0; i < c.seeds; ++i)
    verdicts.push_back(c.off_variety ? off_variety_verdict(s, c, i, t) : on_variety_verdict(s, c, i, t));
  const bool ok = t.failed == 0 && t.passed > 0;

  report["verdicts"] = verdicts;
  Json summary{{"passed", t.passed}, {"failed", t.failed}, {"skipped", t.skipped}};
  if (!c.off_variety) {
    summary["max_return_error"] = t.max_return;
    summary["max_drift"] = t.max_drift;
  }
  summary["ok"] = ok;
  report["residual_summary"] = summary;
  report["wall_time_ms"] = elapsed_ms(c, t0);

  if (c.format == "json") {
    emit(c, report.dump(2) + "\n", out);
  } else if (c.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << (c.off_variety ? "index,seed,status,returns,poles\n" : "index,seed,status,return_error,drift\n");
    for (const auto& v : verdicts) {
      os << v["index"].get<int>() << ',' << v["seed"].get<std::uint64_t>() << ','
         << v["status"].get<std::string>() << ',';
      if (v["status"] == "skip") {
        os << ",\n";
      } else if (c.off_variety) {
        std::string r;
        for (const auto& k : v["returns"]) r += (r.empty() ? "" : " ") + std::to_string(k.get<int>());
        os << r << ',' << v["poles"].get<int>() << '\n';
      } else {
        os << v["return_error"].get<double>() << ',' << v["drift"].get<double>() << '\n';
      }
    }
    emit(c, os.str(), out);
  } else {
    std::ostringstream os;
    os << c.map_name << " period " << s.period << (c.off_variety ? " off-variety" : "") << ": "
       << t.passed << " passed, " << t.failed << " failed, " << t.skipped << " skipped";
    if (!c.off_variety)
      os << "; max return " << fmt(t.max_return) << ", max drift " << fmt(t.max_drift);
    os << '\n';
    for (const auto& v : verdicts)
      if (v["status"] != "pass") {
        os << "  seed " << v["index"].get<int>() << ": " << v["status"].get<std::string>();
        if (v.contains("note")) os << " (" << v["note"].get<std::string>() << ")";
        if (v.contains("return_error")) os << " return " << fmt(v["return_error"].get<double>());
        if (v.contains("returns") && !v["returns"].empty()) os << " returns " << v["returns"].dump();
        os << '\n';
      }
    os << (ok ? "PASS" : "FAIL") << '\n';
    emit(c, os.str(), out);
  }
  return ok ? kOk : kFailed;
}

int cmd_sample(const RunConfig& c, std::ostream& out) {
  const auto t0 = Clock::now();
  const Setup s = make_setup(c);
  if (s.family == Family::kLyness) throw UsageError(c.map_name + " has no variety to sample");

  Json report;
  report["config"] = config_json(c, s.params);
  if (s.gen) report["generator"] = to_json(*s.gen);
  Json samples = Json::array();
  std::vector<PointC> points;
  int failures = 0;
  for (int i = 0; i < c.seeds; ++i) {
    const std::uint64_t seed = derive_seed(c.seed, static_cast<std::uint64_t>(i));
    Json e{{"index", i}, {"seed", seed}};
    try {
      PointC p;
      if (s.family == Family::kVariety) {
        p = sample_on_variety(*s.gen, seed);
        Json r = Json::array();
        for (double x : membership(*s.gen, p, c.tol).residuals) r.push_back(x);
        e["residuals"] = std::move(r);
      } else if (s.family == Family::kQrt) {
        const QRTParams P = s.qrt ? *s.qrt : draw_qrt_params(sub_seed(seed, 1));
        const QRTSample q = sample_qrt_on_gamma(P, s.period, sub_seed(seed, 2));
        p = {q.x, q.y};
        if (!s.qrt) {
          e["qp"] = biquad_to_json(P.qp);
          e["qpp"] = biquad_to_json(P.qpp);
        }
        e["h"] = to_json(q.h);
      } else {
        const BiquadSample b = sample_biquad_on_gamma(s.period, seed);
        Json q = Json::array();
        for (const auto& z : b.q) q.push_back(to_json(z));
        e["q"] = std::move(q);
        p = {b.x0};
      }
      e["point"] = to_json(p);
      points.push_back(p);
    } catch (const Error& ex) {
      e["note"] = ex.what();
      ++failures;
    }
    samples.push_back(std::move(e));
  }
  report["samples"] = samples;
  report["wall_time_ms"] = elapsed_ms(c, t0);

  if (c.format == "json") {
    emit(c, report.dump(2) + "\n", out);
  } else {
    std::vector<std::string> coords = s.map ? s.map->coords() : std::vector<std::string>{"x"};
    if (s.family == Family::kQrt) coords = {"x", "y"};
    std::ostringstream os;
    os.precision(17);
    os << "index,seed";
    for (const auto& v : coords) os << ',' << v << "_re," << v << "_im";
    os << '\n';
    for (const auto& e : samples) {
      if (!e.contains("point")) continue;
      os << e["index"].get<int>() << ',' << e["seed"].get<std::uint64_t>();
      for (const auto& z : e["point"]) os << ',' << z[0].get<double>() << ',' << z[1].get<double>();
      os << '\n';
    }
    emit(c, os.str(), out);
  }
  return failures == 0 ? kOk : kFailed;
}

// eliminate -----------------------------------------------------------------------

int cmd_eliminate(const RunConfig& c, std::ostream& out) {
  const auto t0 = Clock::now();
  const ParamBindings params = bindings(c);
  const IntegrableMap m = catalog_get(c.map_name, params);
  if (c.period == 0) throw UsageError("--period is required");
  if (!has_period(c.map_name, c.period))
    throw UnknownVarietyError(c.map_name + " has no period-" + std::to_string(c.period) + " variety");
  std::vector<std::string> targets = reduced_coordinates(m, c.period);
  if (!c.target.empty()) {
    if (std::find(targets.begin(), targets.end(), c.target) == targets.end())
      throw UsageError("'" + c.target + "' is not a reduced coordinate of " + c.map_name);
    targets = {c.target};
  }

  Json report;
  report["config"] = config_json(c, params);
  report["generator"] = to_json(gamma_get(m, c.period));
  Json results = Json::array();
  bool ok = true;
  for (const auto& t : targets) {
    Json r{{"target", t}, {"image", image_name(t)}};
    try {
      const auto factors = eliminate(recurrence_problem(m, c.period, t), c.seed);
      Json fs = Json::array();
      for (const auto& f : factors) fs.push_back(f.str());
      r["factors"] = std::move(fs);
      Json diffs = Json::array();
      for (const auto& d : compare_with_fixtures(m, c.period, t, factors)) {
        diffs.push_back(Json{{"label", d.label}, {"expected", d.expected}, {"match", d.match}});
        ok = ok && d.match;
      }
      r["fixtures"] = std::move(diffs);
    } catch (const Error& e) {
      r["error"] = e.what();
      ok = false;
    }
    results.push_back(std::move(r));
  }
  report["results"] = results;
  report["ok"] = ok;
  report["wall_time_ms"] = elapsed_ms(c, t0);

  if (c.format == "json") {
    emit(c, report.dump(2) + "\n", out);
  } else {
    std::ostringstream os;
    for (const auto& r : results) {
      os << r["target"].get<std::string>() << " -> " << r["image"].get<std::string>() << ":";
      if (r.contains("error")) {
        os << " error: " << r["error"].get<std::string>() << '\n';
        continue;
      }
      os << '\n';
      for (const auto& f : r["factors"]) os << "  " << f.get<std::string>() << '\n';
      for (const auto& d : r["fixtures"])
        os << "  " << (d["match"].get<bool>() ? "matches" : "differs from") << " fixture '"
           << d["label"].get<std::string>() << "'\n";
    }
    emit(c, os.str(), out);
  }
  return ok ? kOk : kFailed;
}

// orbit ---------------------------------------------------------------------------

int cmd_orbit(const RunConfig& c, std::ostream& out) {
  const auto t0 = Clock::now();
  const ParamBindings params = bindings(c);
  const IntegrableMap m = catalog_get(c.map_name, params);
  PointC p0;
  for (const auto& s : split(c.init, ',')) p0.push_back(parse_complex(s));
  if (p0.size() != m.dim())
    throw UsageError("--init needs " + std::to_string(m.dim()) + " coordinates for " + c.map_name);
  const int steps = c.steps > 0 ? c.steps : c.period;
  if (steps <= 0) throw UsageError("--steps or --period is required");

  Json report;
  report["config"] = config_json(c, params);
  report["map"] = to_json(m);
  std::vector<PointC> points;
  int code = kOk;
  try {
    points = iterate(m, p0, steps);
  } catch (const PoleError& e) {
    report["error"] = e.what();
    report["pole_step"] = e.step();
    code = kFailed;
  }
  Json pts = Json::array();
  for (const auto& p : points) pts.push_back(to_json(p));
  report["points"] = pts;
  if (c.period > 0 && code == kOk) {
    try {
      const OrbitReport r = verify_period(m, p0, c.period, c.tol);
      report["period_check"] = to_json(r, false);
      if (!r.passed(c.tol)) code = kFailed;
    } catch (const Error& e) {
      report["period_check"] = Json{{"error", e.what()}};
      code = kFailed;
    }
  }
  report["wall_time_ms"] = elapsed_ms(c, t0);

  if (c.format == "json") {
    emit(c, report.dump(2) + "\n", out);
  } else if (c.format == "csv") {
    emit(c, orbit_csv(points, m.coords()), out);
  } else {
    std::ostringstream os;
    for (std::size_t k = 0; k < points.size(); ++k) {
      os << k;
      for (const auto& z : points[k]) os << "  " << z;
      os << '\n';
    }
    if (report.contains("error")) os << "error: " << report["error"].get<std::string>() << '\n';
    emit(c, os.str(), out);
  }
  return code;
}

// parsing -------------------------------------------------------------------------

void add_params(CLI::App* sub, RunConfig& c) {
  sub->add_option("--a", c.a, "Parameter a (rational)");
  sub->add_option("--b", c.b, "Parameter b (rational)");
  sub->add_option("--alpha", c.alpha, "Euler top alpha (rational)");
  sub->add_option("--beta", c.beta, "Euler top beta (rational)");
  sub->add_option("--gamma", c.gamma, "Euler top gamma (rational)");
  sub->add_option("--qp", c.qp, "QRT q' as six comma-separated rationals");
  sub->add_option("--qpp", c.qpp, "QRT q'' as six comma-separated rationals");
  sub->add_option("--param", c.params, "Any map parameter as name=value (repeatable)");
}

void add_output(CLI::App* sub, RunConfig& c, std::vector<std::string> formats) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember(std::move(formats)));
  sub->add_option("--out", c.out, "Write the report to this file instead of stdout");
  sub->add_flag("--timing", c.timing, "Record wall_time_ms (otherwise 0, for reproducible reports)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Integrable maps, invariant varieties of periodic points and recurrence equations"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Catalog maps, parameters and variety periods");
  list->add_option("--map", c.map_name, "Only this map");
  add_params(list, c);
  add_output(list, c, {"text", "json"});

  auto* verify = app.add_subcommand("verify", "Sample and verify periodicity");
  verify->add_option("--map", c.map_name, "Catalog map, or 'biquad'")->required();
  verify->add_option("--period", c.period, "Period n")->check(CLI::PositiveNumber);
  verify->add_option("--seeds", c.seeds, "Number of samples")->check(CLI::PositiveNumber);
  verify->add_option("--seed", c.seed, "Base seed");
  verify->add_option("--tol", c.tol, "Tolerance")->check(CLI::PositiveNumber);
  verify->add_flag("--off-variety", c.off_variety, "Scan generic points for any return up to --max-period");
  verify->add_option("--max-period", c.max_period, "Largest period scanned off the variety")
      ->check(CLI::Range(2, 64));
  add_params(verify, c);
  add_output(verify, c, {"json", "csv", "text"});

  auto* sample = app.add_subcommand("sample", "Draw seeded points on a variety");
  sample->add_option("--map", c.map_name, "Catalog map, or 'biquad'")->required();
  sample->add_option("--period", c.period, "Period n")->check(CLI::PositiveNumber);
  sample->add_option("--seeds", c.seeds, "Number of samples")->check(CLI::PositiveNumber);
  sample->add_option("--seed", c.seed, "Base seed");
  sample->add_option("--tol", c.tol, "Membership tolerance")->check(CLI::PositiveNumber);
  add_params(sample, c);
  add_output(sample, c, {"json", "csv"});

  auto* elim = app.add_subcommand("eliminate", "Derive recurrence polynomials F(x, X)");
  elim->add_option("--map", c.map_name, "Catalog map")->required();
  elim->add_option("--period", c.period, "Period n")->required()->check(CLI::PositiveNumber);
  elim->add_option("--target", c.target, "Only this coordinate");
  elim->add_option("--seed", c.seed, "Seed of the filtering samples");
  add_params(elim, c);
  add_output(elim, c, {"json", "text"});

  auto* orbit = app.add_subcommand("orbit", "Iterate a map from a given point");
  orbit->add_option("--map", c.map_name, "Catalog map")->required();
  orbit->add_option("--init", c.init, "Initial point, comma-separated (complex as 1+2i)")->required();
  orbit->add_option("--steps", c.steps, "Number of steps")->check(CLI::NonNegativeNumber);
  orbit->add_option("--period", c.period, "Also check the return after this many steps")
      ->check(CLI::PositiveNumber);
  orbit->add_option("--tol", c.tol, "Return tolerance")->check(CLI::PositiveNumber);
  add_params(orbit, c);
  add_output(orbit, c, {"json", "csv", "text"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  c.command = app.get_subcommands().front()->get_name();
  try {
    if (c.command == "list") return cmd_list(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "sample") return cmd_sample(c, out);
    if (c.command == "eliminate") return cmd_eliminate(c, out);
    return cmd_orbit(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownMapError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownVarietyError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const MissingParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DegenerateParametersError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace ivpp::cli
