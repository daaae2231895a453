// Identity suites, a worker pool that runs them, and report emission.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qconf/coeff.hpp"
#include "qconf/eqlib.hpp"
#include "qconf/fieldspace.hpp"
#include "qconf/ncalg.hpp"
#include "qconf/waves.hpp"
#include "qconf/weylcls.hpp"

namespace qconf::verify {

inline constexpr const char* kEngineVersion = "qconf 1.0.0";

enum class Status { pass, fail, inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"dalembert", "maxwell", "current", "weyl", "omega", "algebra", "classical"};
  return n;
}

struct SuiteConfig {
  std::string suite = "dalembert";
  std::string basis = "both";
  int s_max = 3;
  int m_max = 2;
  int n = 0;
  std::string poly_spec;
  std::uint64_t seed = 1;
  bool on_cone = true;
  std::string format = "json";
  Reading reading = Reading::printed;
  /// Record wall time per case; off gives byte-stable output.
  bool timing = true;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;

  void validate() const {
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
      throw UsageError("unknown suite: " + suite);
    if (basis != "hat" && basis != "tilde" && basis != "both") throw UsageError("basis must be hat, tilde or both");
    if (s_max < 0 || m_max < 0 || n < 0) throw UsageError("bounds must be >= 0");
    if (format != "json" && format != "text") throw UsageError("format must be json or text");
    if (!poly_spec.empty()) {
      try {
        ExpPoly::parse(poly_spec);
      } catch (const std::exception& e) {
        throw UsageError(std::string("bad --p-poly: ") + e.what());
      }
    }
  }

  std::vector<Basis> bases() const {
    if (basis == "hat") return {Basis::hat};
    if (basis == "tilde") return {Basis::tilde};
    return {Basis::hat, Basis::tilde};
  }
};

using Params = std::vector<std::pair<std::string, std::string>>;

struct VerifyReport {
  std::string suite;
  std::string case_id;
  Params params;
  Status status = Status::pass;
  std::vector<std::string> residual;
  double time_ms = 0;
  std::string engine = kEngineVersion;
};

/// What a case returns; extra params are appended to the declared ones.
struct Outcome {
  Status status = Status::pass;
  std::vector<std::string> residual;
  Params extra;
};

struct Case {
  std::string suite;
  std::string id;
  Params params;
  std::function<Outcome()> run;
};

// ---------------------------------------------------------------------------
// Outcome helpers

inline constexpr std::size_t kMaxResidualTerms = 24;

inline Outcome from_residual(const FieldState& r) {
  Outcome o;
  if (r.is_zero()) return o;
  o.status = Status::fail;
  auto lines = r.render();
  if (lines.size() > kMaxResidualTerms) {
    const std::size_t more = lines.size() - kMaxResidualTerms;
    lines.resize(kMaxResidualTerms);
    lines.push_back("... " + std::to_string(more) + " more terms");
  }
  o.residual = std::move(lines);
  return o;
}

inline Outcome from_bool(bool ok, const std::string& why) {
  Outcome o;
  if (!ok) {
    o.status = Status::fail;
    o.residual.push_back(why);
  }
  return o;
}

inline std::string key_str(const Key& k) {
  std::string s;
  for (int i = 0; i < kNumVars; ++i) s += (i ? "," : "") + std::to_string(k[static_cast<std::size_t>(i)]);
  return "(" + s + ")";
}

inline Outcome operators_agree(const OpExpr& a, const OpExpr& b, const std::vector<Key>& keys, bool at_q1) {
  Key w{};
  const bool ok = agree_on(a, b, keys, at_q1, &w);
  return from_bool(ok, "images differ on monomial " + key_str(w));
}

inline std::string gen_name(Gen g) {
  static const char* n[] = {"v", "minus", "plus", "vbar"};
  return n[static_cast<int>(g)];
}

inline std::string slot_str(const std::array<int, 5>& s) {
  return "a=" + std::to_string(s[2]) + ",i=" + std::to_string(s[3]) + ",j=" + std::to_string(s[4]);
}

inline constexpr std::array<Gen, 4> kGens{Gen::v, Gen::minus, Gen::plus, Gen::vbar};

// ---------------------------------------------------------------------------
// Suites

inline void dalembert_cases(const SuiteConfig& cfg, std::vector<Case>& out) {
  const ExpPoly poly = cfg.poly_spec.empty() ? ExpPoly{} : ExpPoly::parse(cfg.poly_spec);
  for (Basis b : cfg.bases())
    for (int s = 0; s <= cfg.s_max; ++s)
      out.push_back({"dalembert",
                     std::string(to_string(b)) + "/s=" + std::to_string(s),
                     {{"basis", to_string(b)}, {"s", std::to_string(s)}, {"on_cone", cfg.on_cone ? "true" : "false"}},
                     [b, s, poly, on = cfg.on_cone] {
                       const FieldState r = apply(eq::qdalembert(b), plane_component(s, b, poly));
                       return from_residual(on ? r.cone_reduced() : r);
                     }});
}

/// gamma ~ q^{2s}/d_s (hat F-) or q^{-s}/d~_s (tilde F+) makes the field
/// component the same for s = 0..2.
inline void s_independence_cases(const SuiteConfig& cfg, std::vector<Case>& out) {
  for (Basis b : cfg.bases())
    for (int m = 0; m <= cfg.m_max; ++m)
      for (Gen k : kGens) {
        const std::string field = b == Basis::hat ? "F-" : "F+";
        out.push_back({"maxwell",
                       std::string("s-independence/") + to_string(b) + "/m=" + std::to_string(m) + "/gamma=" + gen_name(k),
                       {{"kind", "s-independence"}, {"basis", to_string(b)}, {"field", field}, {"m", std::to_string(m)},
                        {"gamma", gen_name(k)}, {"s_range", "0..2"}},
                       [b, m, k] { return from_bool(field_s_independent(b, m, 2, k), "field component depends on s"); }});
      }
}

inline void maxwell_cases(const SuiteConfig& cfg, std::vector<Case>& out) {
  const Reading rd = cfg.reading;
  const bool on = cfg.on_cone;
  for (Basis b : cfg.bases())
    for (Sign sg : {Sign::plus, Sign::minus})
      for (int m = 0; m <= cfg.m_max; ++m)
        for (int s = 0; s <= cfg.s_max; ++s)
          for (const auto& slot : homogeneous_slots(m, s)) {
            const std::string id = std::string("homogeneous/") + to_string(b) + "/" + to_string(sg) +
                                   "/m=" + std::to_string(m) + "/s=" + std::to_string(s) + "/" + slot_str(slot);
            out.push_back({"maxwell", id,
                           {{"kind", "homogeneous"}, {"basis", to_string(b)}, {"sign", to_string(sg)},
                            {"m", std::to_string(m)}, {"s", std::to_string(s)}, {"slot", slot_str(slot)},
                            {"reading", to_string(rd)}},
                           [=] {
                             const auto cs = SolutionConstants::one_hot(homogeneous_role(sg, b), slot);
                             const FieldState r =
                                 apply(eq::qmaxwell(sg, 0, b), maxwell_homogeneous(sg, b, m, s, cs, rd));
                             return from_residual(on ? r.cone_reduced() : r);
                           }});
          }
  for (Basis b : cfg.bases())
    for (Sign sg : {Sign::plus, Sign::minus})
      for (int m = 0; m <= cfg.m_max; ++m)
        for (int s = 1; s <= cfg.s_max; ++s)
          for (Gen k : kGens) {
            const std::string id = std::string("inhomogeneous/") + to_string(b) + "/" + to_string(sg) +
                                   "/m=" + std::to_string(m) + "/s=" + std::to_string(s) + "/gamma=" + gen_name(k);
            out.push_back({"maxwell", id,
                           {{"kind", "inhomogeneous"}, {"basis", to_string(b)}, {"sign", to_string(sg)},
                            {"m", std::to_string(m)}, {"s", std::to_string(s)}, {"gamma", gen_name(k)},
                            {"reading", to_string(rd)}},
                           [=] {
                             const auto g = SolutionConstants::one_hot(gamma_role(b), {s, static_cast<int>(k), 0, 0, 0});
                             const auto sol = maxwell_inhomogeneous(sg, b, m, s, g, rd);
                             const OpExpr op = eq::maxwell_output_twist(sg, b, rd) * eq::qmaxwell(sg, 0, b);
                             const FieldState r = apply(op, sol.field) - sol.current;
                             return from_residual(on ? r.cone_reduced() : r);
                           }});
          }
  s_independence_cases(cfg, out);
}

/// No gamma^s = q^{ts}, |t| <= 10, makes the currents equal across
/// s = 1..s_max; a hit would be reported as a failure of that claim.
inline void uniformizer_cases(const SuiteConfig& cfg, std::vector<Case>& out) {
  const int s_hi = std::max(cfg.s_max, 2);
  for (Basis b : cfg.bases())
    for (int m = 0; m <= cfg.m_max; ++m)
      for (Gen k : kGens)
        out.push_back({"current",
                       std::string("s-uniformizers/") + to_string(b) + "/m=" + std::to_string(m) + "/gamma=" + gen_name(k),
                       {{"basis", to_string(b)}, {"m", std::to_string(m)}, {"gamma", gen_name(k)},
                        {"family", "q^(t s), |t| <= 10"}, {"s_range", "1.." + std::to_string(s_hi)}},
                       [b, m, k, s_hi] {
                         const auto ts = current_s_uniformizers(b, m, s_hi, k, 10);
                         std::string found;
                         for (int t : ts) found += (found.empty() ? "" : ",") + std::to_string(t);
                         Outcome o = from_bool(ts.empty(), "currents become s-independent at t = " + found);
                         o.extra = {{"uniformizers", found.empty() ? "none" : found}};
                         return o;
                       }});
}

inline void current_cases(const SuiteConfig& cfg, std::vector<Case>& out) {
  const Reading rd = cfg.reading;
  const bool on = cfg.on_cone;
  for (Basis b : cfg.bases())
    for (int m = 0; m <= cfg.m_max; ++m)
      for (int s = 1; s <= cfg.s_max; ++s)
        for (Gen k : kGens) {
          const std::string base = std::string(to_string(b)) + "/m=" + std::to_string(m) + "/s=" + std::to_string(s) +
                                   "/gamma=" + gen_name(k);
          const Params p{{"basis", to_string(b)}, {"m", std::to_string(m)}, {"s", std::to_string(s)},
                         {"gamma", gen_name(k)}};
          auto gam = [b, s, k] { return SolutionConstants::one_hot(gamma_role(b), {s, static_cast<int>(k), 0, 0, 0}); };
          Params pi = p;
          pi.emplace_back("identity", "I13");
          pi.emplace_back("reading", to_string(rd));
          out.push_back({"current", base + "/I13", pi,
                         [=] { return from_residual(current_conservation_residual(b, m, s, gam(), rd, on)); }});
          // identity names depend only on the basis; probe them once
          const auto names = current_identity_suite(b, 0, 1, gam());
          for (std::size_t i = 0; i < names.size(); ++i) {
            Params pj = p;
            pj.emplace_back("identity", names[i].name);
            out.push_back({"current", base + "/" + names[i].name, pj, [=] {
                             return from_residual(current_identity_suite(b, m, s, gam(), on)[i].residual);
                           }});
          }
        }
  uniformizer_cases(cfg, out);
}

inline std::vector<SymTensor2> seeds_of_degree(std::uint64_t seed, int count, int degree) {
  std::mt19937_64 rng(seed);
  std::vector<SymTensor2> out;
  for (int i = 0; i < count; ++i) out.push_back(random_traceless_seed(rng, degree));
  return out;
}

inline Params calibration_params(const CalibrationReport& r) {
  Params p;
  p.emplace_back("plus_route", r.plus_route);
  p.emplace_back("minus_route", r.minus_route);
  for (std::size_t k = 0; k < 5; ++k) p.emplace_back("c+" + std::to_string(k), r.constant_str(true, k));
  for (std::size_t k = 0; k < 5; ++k) p.emplace_back("c-" + std::to_string(k), r.constant_str(false, k));
  const auto asym = r.asymmetry();
  for (std::size_t k = 0; k < 5; ++k) p.emplace_back("c-/c+" + std::to_string(k), detail::opt_str(asym[k]));
  return p;
}

/// Scale for C+_3 implied by the n = 2 calibration: the factor that brings
/// its constant in line with the other components.
inline std::optional<Rational> cplus3_scale_from(const CalibrationReport& r) {
  if (!r.consistent() || !r.plus_constants[0] || !r.plus_constants[3]) return std::nullopt;
  const GRat s = *r.plus_constants[0] / *r.plus_constants[3];
  if (s.im != 0) return std::nullopt;
  return s.re;
}

inline void weyl_cases(const SuiteConfig& cfg, std::vector<Case>& out) {
  const std::vector<Key> box = key_box(Key{4, 4, 2, 2, 2, 2});
  for (Sign sg : {Sign::plus, Sign::minus})
    out.push_back({"weyl", std::string("rel/") + to_string(sg), {{"sign", to_string(sg)}, {"n", "4"}},
                   [sg, box] { return operators_agree(eq::weyl_long_form(sg), eq::weyl(sg, 4, false), box, false); }});
  std::set<int> ns{0, 2, 4, cfg.n};
  for (int n : ns)
    for (Sign sg : {Sign::plus, Sign::minus})
      out.push_back({"weyl", std::string("limit/") + to_string(sg) + "/n=" + std::to_string(n),
                     {{"sign", to_string(sg)}, {"n", std::to_string(n)}},
                     [sg, n, box] { return operators_agree(eq::weyl(sg, n, true), eq::weyl(sg, n, false), box, true); }});
  for (Reading rd : {Reading::printed, Reading::repaired}) {
    const std::uint64_t seed = cfg.seed;
    out.push_back({"weyl", std::string("calibration/n=2/") + to_string(rd),
                   {{"reading", to_string(rd)}, {"seeds", "10"}, {"degree", "2"}}, [seed, rd] {
                     const CalibrationReport r = index_vs_indexless(seeds_of_degree(seed, 10, 2), 2, rd);
                     Outcome o = from_bool(r.consistent(), "no per-component constant vector reconciles the routes");
                     o.extra = calibration_params(r);
                     return o;
                   }});
    out.push_back({"weyl", std::string("equations/n=4/") + to_string(rd),
                   {{"reading", to_string(rd)}, {"seeds", "4"}, {"degree", "4"}}, [seed, rd] {
                     const auto r2 = index_vs_indexless(seeds_of_degree(seed, 10, 2), 2, rd);
                     const Rational scale = cplus3_scale_from(r2).value_or(Rational(1));
                     const auto r = weyl_equation_calibration(seeds_of_degree(seed + 1, 4, 4), rd, scale);
                     const auto u = r.uniform();
                     Outcome o = from_bool(u.has_value(), "no uniform constant relates I(4) C to T");
                     std::ostringstream sc;
                     sc << scale;
                     o.extra = {{"cplus3_scale", sc.str()}, {"constant", detail::opt_str(u)}};
                     return o;
                   }});
  }
}

inline NCPoly random_poly(std::mt19937_64& rng, Kind kind, Basis tag, int max_len, int terms) {
  std::uniform_int_distribution<int> len(0, max_len), gen(0, 3), coef(-3, 3), qe(-2, 2);
  NCPoly out(kind, tag);
  for (int t = 0; t < terms; ++t) {
    Word w;
    const int L = len(rng);
    for (int i = 0; i < L; ++i) w.push_back({kind, static_cast<Gen>(gen(rng))});
    out += normal_order(w, QScalar(coef(rng)) * QScalar::q_pow(qe(rng)), tag, {}, kind);
  }
  return out;
}

inline void omega_cases(const SuiteConfig& cfg, std::vector<Case>& out) {
  const std::uint64_t seed = cfg.seed;
  for (Basis b : cfg.bases()) {
    out.push_back({"omega", std::string("involution/") + to_string(b), {{"basis", to_string(b)}, {"samples", "50"}},
                   [seed, b] {
                     std::mt19937_64 rng(seed);
                     for (int i = 0; i < 50; ++i)
                       for (Kind kd : {Kind::coordinate, Kind::momentum}) {
                         const NCPoly a = random_poly(rng, kd, b, 5, 3);
                         if (!(omega_conjugate(omega_conjugate(a)) == a))
                           return from_bool(false, "omega(omega(a)) != a for a = " + a.str());
                       }
                     return Outcome{};
                   }});
    out.push_back({"omega", std::string("anti-multiplicative/") + to_string(b),
                   {{"basis", to_string(b)}, {"samples", "50"}}, [seed, b] {
                     std::mt19937_64 rng(seed + 1);
                     for (int i = 0; i < 50; ++i) {
                       const NCPoly x = random_poly(rng, Kind::coordinate, b, 3, 2);
                       const NCPoly y = random_poly(rng, Kind::coordinate, b, 3, 2);
                       if (!(omega_conjugate(ncmul(x, y)) == ncmul(omega_conjugate(y), omega_conjugate(x))))
                         return from_bool(false, "omega(ab) != omega(b) omega(a) for a = " + x.str() + ", b = " + y.str());
                     }
                     return Outcome{};
                   }});
    out.push_back({"omega", std::string("lambda/") + to_string(b), {{"basis", to_string(b)}}, [b] {
                     const NCPoly l = NCPoly::scalar(Kind::coordinate, b, QScalar::lambda());
                     return from_bool(omega_conjugate(l) == NCPoly::scalar(Kind::coordinate, opposite(b), -QScalar::lambda()),
                                      "omega(lambda) != -lambda");
                   }});
  }
  for (int s = 0; s <= cfg.s_max; ++s)
    out.push_back({"omega", "plane/s=" + std::to_string(s), {{"s", std::to_string(s)}, {"report_only", "true"}}, [s] {
                     const FieldState d = omega_state(plane_component(s, Basis::hat)) - plane_component(s, Basis::tilde);
                     Outcome o = from_residual(d);
                     if (o.status == Status::fail) o.status = Status::inconclusive;
                     return o;
                   }});
}

/// Ordered monomials of degree d are C(d+3, 3); every word of length d
/// normal-orders into that set with degree preserved.
inline Outcome pbw_check(int d, Basis tag) {
  std::set<Exps> seen;
  Word w(static_cast<std::size_t>(d));
  long total = 1;
  for (int i = 0; i < d; ++i) total *= 4;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < d; ++i, c /= 4) w[static_cast<std::size_t>(i)] = {Kind::momentum, static_cast<Gen>(c % 4)};
    const NCPoly p = normal_order(w, QScalar(1), tag);
    for (const auto& [e, x] : p.terms()) {
      if (e[0] + e[1] + e[2] + e[3] != d) return from_bool(false, "degree not preserved");
      seen.insert(e);
    }
  }
  const long expect = static_cast<long>((d + 1) * (d + 2) * (d + 3) / 6);
  Outcome o = from_bool(static_cast<long>(seen.size()) == expect,
                        "ordered monomials reached: " + std::to_string(seen.size()) + ", expected " + std::to_string(expect));
  o.extra = {{"ordered_monomials", std::to_string(seen.size())}};
  return o;
}

inline Outcome confluence_check(std::uint64_t seed, Basis tag, int words) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(0, 8), gen(0, 3), kind(0, 1);
  for (int i = 0; i < words; ++i) {
    const Kind kd = kind(rng) ? Kind::momentum : Kind::coordinate;
    Word w;
    const int L = len(rng);
    for (int j = 0; j < L; ++j) w.push_back({kd, static_cast<Gen>(gen(rng))});
    std::mt19937_64 r1(rng()), r2(rng());
    const NCPoly a = normal_order(w, QScalar(1), tag, {&r1}, kd);
    const NCPoly b = normal_order(w, QScalar(1), tag, {&r2}, kd);
    const NCPoly c = normal_order(w, QScalar(1), tag, {}, kd);
    if (!(a == b) || !(a == c)) return from_bool(false, "rewrite orders disagree on word " + std::to_string(i));
  }
  return {};
}

inline void algebra_cases(const SuiteConfig& cfg, std::vector<Case>& out) {
  const std::uint64_t seed = cfg.seed;
  for (Basis b : cfg.bases()) {
    const std::string t = to_string(b);
    for (int d = 0; d <= 6; ++d)
      out.push_back({"algebra", "pbw/" + t + "/d=" + std::to_string(d), {{"basis", t}, {"degree", std::to_string(d)}},
                     [d, b] { return pbw_check(d, b); }});
    out.push_back({"algebra", "confluence/" + t, {{"basis", t}, {"words", "500"}},
                   [seed, b] { return confluence_check(seed, b, 500); }});
    out.push_back({"algebra", "centrality/" + t, {{"basis", t}}, [b] {
                     const NCPoly L = cone_element(b);
                     for (Gen g : kGens) {
                       const NCPoly x = NCPoly::generator(Kind::momentum, b, g);
                       if (!(ncmul(x, L) == ncmul(L, x))) return from_bool(false, "cone element does not commute with k_" + gen_name(g));
                     }
                     return Outcome{};
                   }});
    out.push_back({"algebra", "cone-ideal/" + t, {{"basis", t}, {"samples", "40"}}, [seed, b] {
                     std::mt19937_64 rng(seed + 7);
                     const NCPoly L = cone_element(b);
                     for (int i = 0; i < 40; ++i) {
                       const NCPoly x = random_poly(rng, Kind::momentum, b, 3, 1);
                       const NCPoly y = random_poly(rng, Kind::momentum, b, 3, 1);
                       if (!cone_reduce(ncmul(ncmul(x, L), y)).is_zero()) return from_bool(false, "a L b does not reduce to 0");
                     }
                     return Outcome{};
                   }});
  }
}

inline void classical_cases(const SuiteConfig& cfg, std::vector<Case>& out) {
  const std::uint64_t seed = cfg.seed;
  const std::vector<Key> box3 = key_box(Key{3, 3, 3, 3, 3, 3});
  for (Sign sg : {Sign::plus, Sign::minus})
    out.push_back({"classical", std::string("maxwell-coincide/") + to_string(sg), {{"sign", to_string(sg)}},
                   [sg, box3] {
                     return operators_agree(eq::qmaxwell(sg, 0, Basis::hat), eq::qmaxwell(sg, 0, Basis::tilde), box3, true);
                   }});
  for (Basis b : cfg.bases())
    out.push_back({"classical", std::string("dalembert-limit/") + to_string(b), {{"basis", to_string(b)}}, [b, box3] {
                     return operators_agree(eq::qdalembert(b), eq::classical_dalembert(), box3, true);
                   }});
  for (int s = 0; s <= std::max(cfg.s_max, 6); ++s)
    out.push_back({"classical", "plane-wave/s=" + std::to_string(s), {{"s", std::to_string(s)}, {"points", "20"}},
                   [seed, s] {
                     std::mt19937_64 rng(seed + static_cast<std::uint64_t>(s));
                     const FieldState f = f_component(s);
                     for (int i = 0; i < 20; ++i) {
                       const ConePoint p = random_cone_point(rng);
                       Rational want = 1;
                       for (int j = 0; j < s; ++j) want *= classical_pairing(p);
                       if (evaluate_classical(f, p) != want) return from_bool(false, "f_s differs from the pairing power");
                     }
                     return Outcome{};
                   }});
  for (Basis b : cfg.bases()) {
    out.push_back({"classical", std::string("maxwell-dictionary/") + to_string(b), {{"basis", to_string(b)}, {"samples", "6"}},
                   [seed, b] {
                     std::mt19937_64 rng(seed + 11);
                     std::uniform_int_distribution<int> co(-3, 3);
                     std::optional<GRat> c;
                     for (int i = 0; i < 6; ++i) {
                       std::array<XPoly, 4> A;
                       for (auto& a : A)
                         for (int x = 0; x <= 3; ++x)
                           for (int y = 0; x + y <= 3; ++y)
                             for (int z = 0; x + y + z <= 3; ++z)
                               for (int w = 0; x + y + z + w <= 3; ++w) a.add({x, y, z, w}, GRat(co(rng)));
                       const SymTensor2 F = field_strength(A);
                       const auto r = maxwell_calibration(F, maxwell_divergence(F), b);
                       if (!r || (c && !(*c == *r))) return from_bool(false, "no uniform constant relates I(0) F to J0");
                       c = r;
                     }
                     Outcome o;
                     o.extra = {{"constant", detail::opt_str(c)}};
                     return o;
                   }});
    out.push_back({"classical", std::string("divergence/") + to_string(b), {{"basis", to_string(b)}, {"samples", "5"}},
                   [seed, b] {
                     std::mt19937_64 rng(seed + 13);
                     std::uniform_int_distribution<int> co(-3, 3);
                     std::optional<GRat> c;
                     for (int i = 0; i < 5; ++i) {
                       std::array<XPoly, 4> J;
                       for (auto& a : J)
                         for (int x = 0; x <= 2; ++x)
                           for (int y = 0; x + y <= 2; ++y)
                             for (int z = 0; x + y + z <= 2; ++z)
                               for (int w = 0; x + y + z + w <= 2; ++w) a.add({x, y, z, w}, GRat(co(rng)));
                       const LPoly img = apply_classical(eq::current_conservation(b), maxwell_dictionary(SymTensor2{}, J).J0);
                       if (!detail::fold_ratio(img, current_divergence(J), c))
                         return from_bool(false, "I13 at q = 1 is not proportional to the divergence");
                     }
                     Outcome o;
                     o.extra = {{"constant", detail::opt_str(c)}};
                     return o;
                   }});
  }
  out.push_back({"classical", "coord-map-box", {{"degree", "5"}}, [seed] {
                   std::mt19937_64 rng(seed + 17);
                   std::uniform_int_distribution<int> co(-3, 3);
                   for (int i = 0; i < 5; ++i) {
                     XPoly p;
                     for (int x = 0; x <= 5; ++x)
                       for (int y = 0; x + y <= 5; ++y)
                         for (int z = 0; x + y + z <= 5; ++z)
                           for (int w = 0; x + y + z + w <= 5; ++w) p.add({x, y, z, w}, GRat(co(rng)));
                     const LPoly lp = coord_map(p);
                     if (!(coord_unmap(lp) == p)) return from_bool(false, "coord_map is not inverted by coord_unmap");
                     // box = 4 (d- d+ - dv dvb) in these coordinates
                     if (!(coord_map(box(p)) == GRat(4) * apply_classical(eq::classical_dalembert(), lp)))
                       return from_bool(false, "box does not map to 4 (d- d+ - dv dvb)");
                   }
                   return Outcome{};
                 }});
  out.push_back({"classical", "weyl-symmetries", {{"seeds", "20"}, {"degree", "3"}}, [seed] {
                   for (const auto& h : seeds_of_degree(seed + 19, 20, 3)) {
                     const Riemann4 c = linearized_weyl(h);
                     if (!c.antisymmetric() || !c.pair_symmetric() || !c.bianchi() || !c.traceless())
                       return from_bool(false, "linearized Weyl tensor lacks a symmetry");
                     if (!weyl_equations_index(h).is_zero()) return from_bool(false, "degree-3 seed gives nonzero equations");
                   }
                   for (const auto& h : seeds_of_degree(seed + 23, 3, 4)) {
                     const SymTensor2 t = weyl_equations_index(h);
                     if (!t.is_symmetric() || !t.trace().is_zero())
                       return from_bool(false, "double divergence is not symmetric and traceless");
                   }
                   return Outcome{};
                 }});
}

inline std::vector<Case> enumerate(const SuiteConfig& cfg) {
  cfg.validate();
  std::vector<Case> out;
  if (cfg.suite == "dalembert") dalembert_cases(cfg, out);
  if (cfg.suite == "maxwell") maxwell_cases(cfg, out);
  if (cfg.suite == "current") current_cases(cfg, out);
  if (cfg.suite == "weyl") weyl_cases(cfg, out);
  if (cfg.suite == "omega") omega_cases(cfg, out);
  if (cfg.suite == "algebra") algebra_cases(cfg, out);
  if (cfg.suite == "classical") classical_cases(cfg, out);
  return out;
}

// ---------------------------------------------------------------------------
// Execution

/// Thrown out of run_cases when a case hits the rewrite step cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Runs the cases on a worker pool; the result order is the case order.
inline std::vector<VerifyReport> run_cases(const std::vector<Case>& cases, unsigned threads = 0, bool timing = true) {
  std::vector<VerifyReport> out(cases.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cases.size()) return;
      const Case& c = cases[i];
      VerifyReport& r = out[i];
      r.suite = c.suite;
      r.case_id = c.id;
      r.params = c.params;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        Outcome o = c.run();
        r.status = o.status;
        r.residual = std::move(o.residual);
        r.params.insert(r.params.end(), o.extra.begin(), o.extra.end());
      } catch (const InternalNontermination& e) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::make_exception_ptr(CapExceeded(c.id + ": " + e.what()));
        return;
      } catch (const std::exception& e) {
        r.status = Status::fail;
        r.residual = {std::string("exception: ") + e.what()};
      }
      if (timing)
        r.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, cases.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t + 1 < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

struct SuiteResult {
  std::vector<VerifyReport> reports;
  int exit_code = 0;
};

/// Exit code 0 if nothing failed, 1 on any failure, 2 on a usage error, 3
/// when the rewrite step cap was hit. Inconclusive cases are report-only.
inline SuiteResult run_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  std::vector<Case> cases;
  try {
    cases = enumerate(cfg);
  } catch (const UsageError&) {
    res.exit_code = 2;
    return res;
  }
  try {
    res.reports = run_cases(cases, cfg.threads, cfg.timing);
  } catch (const CapExceeded&) {
    res.exit_code = 3;
    return res;
  }
  for (const auto& r : res.reports)
    if (r.status == Status::fail) res.exit_code = 1;
  return res;
}

// ---------------------------------------------------------------------------
// Emission

inline std::string format_ms(double ms) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(3) << ms;
  return o.str();
}

/// One JSON object per line; keys in the order suite, case, params, status,
/// residual, time_ms.
inline std::string emit_json(const std::vector<VerifyReport>& reports) {
  using ojson = nlohmann::ordered_json;
  std::string out;
  for (const auto& r : reports) {
    ojson j;
    j["suite"] = r.suite;
    j["case"] = r.case_id;
    ojson p = ojson::object();
    for (const auto& [k, v] : r.params) p[k] = v;
    j["params"] = p;
    j["status"] = to_string(r.status);
    j["residual"] = r.residual;
    j["time_ms"] = ojson::parse(format_ms(r.time_ms));
    out += j.dump() + "\n";
  }
  return out;
}

inline std::string emit_text(const std::vector<VerifyReport>& reports) {
  if (reports.empty()) return "";
  std::size_t wsuite = 5, wcase = 4;
  for (const auto& r : reports) {
    wsuite = std::max(wsuite, r.suite.size());
    wcase = std::max(wcase, r.case_id.size());
  }
  std::ostringstream o;
  o << "# " << kEngineVersion << "\n";
  o << std::left << std::setw(static_cast<int>(wsuite)) << "suite" << "  " << std::setw(static_cast<int>(wcase))
    << "case" << "  " << std::setw(12) << "status" << "  " << std::right << std::setw(10) << "time_ms" << "\n";
  int pass = 0, fail = 0, inc = 0;
  for (const auto& r : reports) {
    o << std::left << std::setw(static_cast<int>(wsuite)) << r.suite << "  " << std::setw(static_cast<int>(wcase))
      << r.case_id << "  " << std::setw(12) << to_string(r.status) << "  " << std::right << std::setw(10)
      << format_ms(r.time_ms) << "\n";
    for (const auto& line : r.residual) o << "    " << line << "\n";
    (r.status == Status::pass ? pass : r.status == Status::fail ? fail : inc)++;
  }
  o << "# " << pass << " pass, " << fail << " fail, " << inc << " inconclusive\n";
  return o.str();
}

inline std::string emit(const std::vector<VerifyReport>& reports, const std::string& format) {
  return format == "text" ? emit_text(reports) : emit_json(reports);
}

// ---------------------------------------------------------------------------
// Mutation sensitivity

/// A transcribed operator together with the cases that must detect a change
/// in it. `detects(op)` is true when some case fails with op in place.
struct MutationTarget {
  std::string name;
  OpExpr op;
  std::function<bool(const OpExpr&)> detects;
};

inline std::vector<MutationTarget> mutation_targets() {
  std::vector<MutationTarget> t;
  for (Basis b : {Basis::hat, Basis::tilde}) {
    t.push_back({std::string("dalembert/") + to_string(b), eq::qdalembert(b), [b](const OpExpr& op) {
                   for (int s = 1; s <= 3; ++s)
                     if (!apply(op, plane_component(s, b)).cone_reduced().is_zero()) return true;
                   return false;
                 }});
    for (Sign sg : {Sign::plus, Sign::minus})
      t.push_back({std::string("maxwell/") + to_string(b) + "/" + to_string(sg), eq::qmaxwell(sg, 0, b),
                   [b, sg](const OpExpr& op) {
                     for (int m = 0; m <= 1; ++m)
                       for (int s = 0; s <= 2; ++s) {
                         for (const auto& slot : homogeneous_slots(m, s)) {
                           const auto cs = SolutionConstants::one_hot(homogeneous_role(sg, b), slot);
                           if (!apply(op, maxwell_homogeneous(sg, b, m, s, cs, Reading::repaired)).cone_reduced().is_zero())
                             return true;
                         }
                         if (s == 0) continue;
                         for (Gen k : kGens) {
                           const auto g = SolutionConstants::one_hot(gamma_role(b), {s, static_cast<int>(k), 0, 0, 0});
                           const auto sol = maxwell_inhomogeneous(sg, b, m, s, g, Reading::repaired);
                           const OpExpr full = eq::maxwell_output_twist(sg, b, Reading::repaired) * op;
                           if (!(apply(full, sol.field) - sol.current).cone_reduced().is_zero()) return true;
                         }
                       }
                     return false;
                   }});
    t.push_back({std::string("current/") + to_string(b), eq::current_conservation(b, Reading::repaired),
                 [b](const OpExpr& op) {
                   for (int m = 0; m <= 1; ++m)
                     for (int s = 1; s <= 3; ++s)
                       for (Gen k : kGens) {
                         const auto g = SolutionConstants::one_hot(gamma_role(b), {s, static_cast<int>(k), 0, 0, 0});
                         const FieldState cur = current_coefficient(b, m, s, g) * maxwell_plane(s - 1, b);
                         if (!apply(op, cur).cone_reduced().is_zero()) return true;
                       }
                   return false;
                 }});
  }
  return t;
}

struct MutationResult {
  std::string target;
  int site = 0;
  bool baseline_passes = false;
  bool detected = false;
};

/// Samples `count` (target, site) pairs from the seed and checks that each
/// mutation is caught while the unmutated operator passes.
inline std::vector<MutationResult> mutation_sensitivity(std::uint64_t seed, int count, unsigned threads = 0) {
  const auto targets = mutation_targets();
  std::vector<std::pair<std::size_t, int>> all;
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (int s = 0; s < qpower_sites(targets[i].op); ++s) all.emplace_back(i, s);
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  if (static_cast<int>(all.size()) > count) all.resize(static_cast<std::size_t>(count));
  std::sort(all.begin(), all.end());

  std::vector<Case> cases;
  std::vector<MutationResult> res(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto [ti, site] = all[i];
    res[i] = {targets[ti].name, site, false, false};
    cases.push_back({"mutation", targets[ti].name + "/site=" + std::to_string(site), {}, [&targets, ti, site, &res, i] {
                       const auto& tg = targets[ti];
                       res[i].baseline_passes = !tg.detects(tg.op);
                       res[i].detected = tg.detects(mutate_qpower(tg.op, site));
                       return Outcome{};
                     }});
  }
  run_cases(cases, threads, false);
  return res;
}

}  // namespace qconf::verify
