// Acceptance run: one PASS/FAIL line per criterion, exact checks only.
// Printed formulas are checked as printed; where they fail, the line also
// carries the count under the repaired reading for information.

#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "qconf/verify.hpp"

using namespace qconf;
using namespace qconf::verify;

namespace {

struct Tally {
  int pass = 0, fail = 0, inconclusive = 0;
  std::string first_fail;
  int total() const { return pass + fail + inconclusive; }
  bool ok() const { return fail == 0 && pass > 0; }
  std::string str() const {
    std::string s = std::to_string(pass) + "/" + std::to_string(total()) + " pass";
    if (fail) s += ", first failure " + first_fail;
    return s;
  }
};

Tally tally(const std::vector<VerifyReport>& rs) {
  Tally t;
  for (const auto& r : rs) {
    if (r.status == Status::pass) ++t.pass;
    if (r.status == Status::inconclusive) ++t.inconclusive;
    if (r.status == Status::fail) {
      if (!t.fail) t.first_fail = r.case_id;
      ++t.fail;
    }
  }
  return t;
}

std::vector<VerifyReport> run(SuiteConfig cfg, const std::function<bool(const Case&)>& keep) {
  cfg.timing = false;
  std::vector<Case> cases;
  for (auto& c : enumerate(cfg))
    if (keep(c)) cases.push_back(std::move(c));
  return run_cases(cases, cfg.threads, false);
}

bool has_param(const Case& c, const std::string& k, const std::string& v) {
  for (const auto& [a, b] : c.params)
    if (a == k && b == v) return true;
  return false;
}

std::string param(const VerifyReport& r, const std::string& k) {
  for (const auto& [a, b] : r.params)
    if (a == k) return b;
  return "";
}

int failures = 0;

void line(int n, bool ok, const std::string& title, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", n, title.c_str(), detail.c_str());
  std::fflush(stdout);
}

const auto all = [](const Case&) { return true; };

}  // namespace

int main() {
  const std::uint64_t seed = 20240601;

  {  // 1
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> co(-3, 3);
    std::vector<std::string> polys{""};
    for (int i = 0; i < 3; ++i) {
      std::string p;
      for (int j = 0; j < 6; ++j) p += (j ? "," : "") + std::to_string(co(rng));
      polys.push_back(p);
    }
    Tally t;
    for (const auto& p : polys) {
      SuiteConfig c;
      c.suite = "dalembert";
      c.s_max = 5;
      c.poly_spec = p;
      const Tally u = tally(run(c, all));
      t.pass += u.pass;
      t.fail += u.fail;
      if (u.fail && t.first_fail.empty()) t.first_fail = u.first_fail + " poly=" + p;
    }
    line(1, t.ok(), "q-d'Alembert annihilation, s<=5, both bases, 4 exponent polynomials", t.str());
  }

  {  // 2
    SuiteConfig c;
    c.suite = "classical";
    c.s_max = 6;
    const Tally t = tally(run(c, [](const Case& k) { return k.id.rfind("plane-wave/", 0) == 0; }));
    line(2, t.ok() && t.total() == 7, "classical plane-wave oracle, s<=6, 20 cone points each", t.str());
  }

  auto maxwell_kind = [](const std::string& kind, Reading rd) {
    SuiteConfig c;
    c.suite = "maxwell";
    c.s_max = 3;
    c.m_max = 3;
    c.reading = rd;
    return tally(run(c, [&](const Case& k) { return has_param(k, "kind", kind); }));
  };
  {  // 3
    const Tally p = maxwell_kind("homogeneous", Reading::printed);
    const Tally r = maxwell_kind("homogeneous", Reading::repaired);
    line(3, p.ok(), "homogeneous q-Maxwell, m,s<=3, one-hot constants, printed",
         p.str() + "; repaired reading " + r.str());
  }
  {  // 4
    const Tally p = maxwell_kind("inhomogeneous", Reading::printed);
    const Tally r = maxwell_kind("inhomogeneous", Reading::repaired);
    line(4, p.ok(), "inhomogeneous q-Maxwell, m,s<=3, s>=1, one-hot gamma, printed",
         p.str() + "; repaired reading " + r.str());
  }
  {  // 5
    auto cur = [](Reading rd) {
      SuiteConfig c;
      c.suite = "current";
      c.s_max = 3;
      c.m_max = 3;
      c.reading = rd;
      return tally(run(c, [](const Case& k) { return k.id.rfind("s-uniformizers/", 0) != 0; }));
    };
    const Tally p = cur(Reading::printed);
    const Tally r = cur(Reading::repaired);
    line(5, p.ok(), "current conservation and splitting identities, m,s<=3, printed",
         p.str() + "; repaired reading " + r.str());
  }
  {  // 6
    SuiteConfig c;
    c.suite = "classical";
    const Tally t = tally(run(c, [](const Case& k) {
      return k.id.rfind("maxwell-coincide/", 0) == 0 || k.id.rfind("dalembert-limit/", 0) == 0;
    }));
    line(6, t.ok() && t.total() == 4, "classical coincidences at q=1, exponents <= 3", t.str());
  }
  {  // 7
    SuiteConfig c;
    c.suite = "weyl";
    const Tally t = tally(run(c, [](const Case& k) {
      return k.id.rfind("rel/", 0) == 0 || k.id.rfind("limit/", 0) == 0;
    }));
    line(7, t.ok() && t.total() == 8, "Weyl rel and q->1 limits for n in {0,2,4}", t.str());
  }
  {  // 8
    SuiteConfig c;
    c.suite = "weyl";
    c.seed = seed;
    const auto rs = run(c, [](const Case& k) { return k.id.rfind("calibration/", 0) == 0; });
    std::string printed_ok, detail;
    bool ok = false;
    for (const auto& r : rs) {
      std::string v = "c+ = [";
      for (int k = 0; k < 5; ++k) v += (k ? ", " : "") + param(r, "c+" + std::to_string(k));
      v += "], c- = [";
      for (int k = 0; k < 5; ++k) v += (k ? ", " : "") + param(r, "c-" + std::to_string(k));
      v += "], c-/c+ = [";
      for (int k = 0; k < 5; ++k) v += (k ? ", " : "") + param(r, "c-/c+" + std::to_string(k));
      v += "]";
      const std::string rd = param(r, "reading");
      if (rd == "printed") ok = r.status == Status::pass;
      detail += "; " + rd + " " + to_string(r.status) + " (C+ <- " + param(r, "plus_route") + ", C- <- " +
                param(r, "minus_route") + ") " + v;
    }
    line(8, ok, "index vs indexless Weyl, 10 degree-2 traceless seeds, printed dictionaries", detail.substr(2));
  }
  {  // 9
    Tally t;
    for (const std::string s : {"algebra", "omega"}) {
      SuiteConfig c;
      c.suite = s;
      c.seed = seed;
      const Tally u = tally(run(c, [](const Case& k) { return k.id.rfind("plane/", 0) != 0; }));
      t.pass += u.pass;
      t.fail += u.fail;
      if (u.fail && t.first_fail.empty()) t.first_fail = u.first_fail;
    }
    line(9, t.ok(), "PBW counts d<=6, confluence on 500 words, centrality, omega anti-involution", t.str());
  }
  {  // 10
    SuiteConfig c;
    c.suite = "maxwell";
    c.m_max = 2;
    const Tally f = tally(run(c, [](const Case& k) { return has_param(k, "kind", "s-independence"); }));
    SuiteConfig d;
    d.suite = "current";
    d.basis = "hat";
    d.m_max = 2;
    d.s_max = 3;
    const Tally u = tally(run(d, [](const Case& k) { return k.id.rfind("s-uniformizers/", 0) == 0; }));
    line(10, f.ok() && u.ok(), "s-independence of F-hat and F+tilde; no s-independent hat current in q^(ts), |t|<=10",
         "fields " + f.str() + "; current search " + u.str() + " (none found)");
  }
  {  // 11
    const auto m = mutation_sensitivity(seed, 10);
    int caught = 0, base = 0;
    std::string missed;
    for (const auto& r : m) {
      caught += r.detected;
      base += r.baseline_passes;
      if (!r.detected && missed.empty()) missed = r.target + "/site=" + std::to_string(r.site);
    }
    const bool ok = m.size() == 10 && caught == 10 && base == 10;
    std::string d = std::to_string(caught) + "/" + std::to_string(m.size()) + " mutations caught, " + std::to_string(base) +
                    " unmutated baselines pass";
    if (!missed.empty()) d += ", missed " + missed;
    line(11, ok, "mutation sensitivity", d);
  }

  std::printf("%d of 11 criteria failed\n", failures);
  return failures ? 1 : 0;
}
