// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rpinorm/error.hpp"
#include "rpinorm/norms.hpp"
#include "rpinorm/oracle.hpp"
#include "rpinorm/pseudodist.hpp"
#include "rpinorm/random.hpp"
#include "rpinorm/reconstruct.hpp"

using namespace rpinorm;

namespace {

struct Outcome {
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;

  void fail(const std::string& what) {
    if (passed) detail = what;
    passed = false;
  }
};

std::string show(std::span<const double> v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

double rel_tol(double scale, double rel) { return std::max(rel * std::abs(scale), 1e-12); }

ProfileSpec corpus_spec(bool compact) {
  ProfileSpec s;
  s.max_len = 12;
  s.bound = 10.0;
  s.compact = compact;
  return s;
}

Outcome closed_forms() {
  Outcome o;
  Rng rng(101);
  for (int i = 0; i < 1000; ++i) {
    auto p = random_profile(rng, corpus_spec(rng.coin()));
    ++o.cases;
    double s = standard_norm(p, make_S()), l = standard_norm(p, make_Lambda());
    if (std::abs(s - sup_norm(p)) > rel_tol(s, 1e-9)) o.fail("S on " + show(p.values()));
    if (std::abs(l - range_norm(p)) > rel_tol(l, 1e-9)) o.fail("Lambda on " + show(p.values()));
  }
  return o;
}

Outcome dp_equals_brute_force() {
  Outcome o;
  static const double grid[] = {-1.5, 0.0, 2.0};
  static const double weights[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
  std::vector<std::vector<double>> wlists;
  for (std::size_t k = 1; k <= 4; ++k) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= 6;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<double> w(k);
      std::size_t c = code;
      for (std::size_t i = 0; i < k; ++i, c /= 6) w[i] = weights[c % 6];
      wlists.push_back(std::move(w));
    }
  }
  std::vector<WeightSequence> ws;
  for (auto& w : wlists) ws.emplace_back(w);
  for (std::size_t p = 1; p <= 7; ++p) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < p; ++i) total *= 3;
    std::vector<double> cand(p);
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < p; ++i, c /= 3) cand[i] = grid[c % 3];
      for (const auto& w : ws) {
        ++o.cases;
        DpExtremes dp = dp_extremes(cand, w);
        BruteForceExtremes bf = brute_force_extremes(cand, w);
        if (dp.max_sum != bf.max_sum || dp.min_sum != bf.min_sum ||
            dp.abs_max() != brute_force_norm(cand, w)) {
          o.fail("candidates " + show(cand) + " weights " + show(w.values()));
        }
      }
    }
  }
  return o;
}

Outcome exchange_property() {
  Outcome o;
  Rng rng(303);
  ProfileSpec spec = corpus_spec(true);
  spec.min_len = 2;
  for (int i = 0; i < 1000; ++i) {
    spec.compact = rng.coin();
    auto a = random_profile(rng, spec);
    spec.compact = rng.coin();
    auto b = random_profile(rng, spec);
    ++o.cases;
    if (standard_norm(a, b) != standard_norm(b, a)) o.fail(show(a.values()) + " vs " + show(b.values()));
  }
  return o;
}

Outcome bounding_inequalities() {
  Outcome o;
  Rng rng(404);
  ProfileSpec spec = corpus_spec(true);
  spec.min_len = 2;
  for (int i = 0; i < 1000; ++i) {
    spec.compact = rng.coin();
    auto phi = random_profile(rng, spec);
    spec.compact = rng.coin();
    auto psi = random_profile(rng, spec);
    ++o.cases;
    double n = standard_norm(phi, psi);
    double t = rel_tol(n, 1e-9);
    if (tail_seminorm(phi) * sup_norm(psi) > n + t || n > tv_norm(phi) * sup_norm(psi) + t) {
      o.fail("general bound at " + show(phi.values()) + ", " + show(psi.values()));
    }
  }
  for (int i = 0; i < 1000; ++i) {
    spec.compact = true;
    auto phi = random_profile(rng, spec);
    spec.compact = rng.coin();
    auto psi = random_profile(rng, spec);
    ++o.cases;
    double n = standard_norm(phi, psi);
    double t = rel_tol(n, 1e-9);
    if (sup_norm(phi) * range_norm(psi) > n + t || n > 0.5 * tv_norm(phi) * range_norm(psi) + t) {
      o.fail("compact-support bound at " + show(phi.values()) + ", " + show(psi.values()));
    }
  }
  CriticalProfile running(std::vector<double>{0, 3, 1, 2, 0});
  double lhs = standard_norm(running, make_Sn(3));
  double rhs = 0.5 * tv_norm(running) * range_norm(profile_of(make_Sn(3)));
  ++o.cases;
  if (lhs != 4.0 || rhs != 4.0) o.fail("sharpness: norm " + std::to_string(lhs) + ", bound " + std::to_string(rhs));
  return o;
}

Outcome spectrum_plateau() {
  Outcome o;
  Rng rng(505);
  ProfileSpec spec = corpus_spec(true);
  spec.min_len = 3;
  for (int i = 0; i < 500; ++i) {
    auto phi = random_profile(rng, spec);
    ++o.cases;
    const std::size_t l = l_of(phi);
    const double half = 0.5 * total_variation(phi);
    const double s_l = standard_norm(phi, make_Sn(l));
    for (std::size_t n = l; n <= l + 3; ++n) {
      if (standard_norm(phi, make_Sn(n)) != half) o.fail("plateau at " + show(phi.values()));
    }
    if (l >= 2 && standard_norm(phi, make_Sn(l - 1)) > s_l - separation_margin(phi) + 1e-9) {
      o.fail("gap below l at " + show(phi.values()));
    }
  }
  return o;
}

Outcome reconstruction_round_trip() {
  Outcome o;
  Rng rng(606);
  ProfileSpec spec = corpus_spec(true);
  spec.min_len = 3;
  spec.min_margin = 0.1;
  std::size_t worst_calls = 0;
  for (int i = 0; i < 500; ++i) {
    auto phi = random_profile(rng, spec);
    ++o.cases;
    NormOracle oracle(exact_evaluator(phi));
    try {
      ReconstructionReport r = reconstruct(oracle);
      const std::size_t l = l_of(phi);
      const std::size_t budget = (l + 2) + l * (2 + 2 * r.halvings);
      worst_calls = std::max<std::size_t>(worst_calls, r.oracle_calls);
      if (!verify_reconstruction(phi, r, 1e-6)) o.fail("profile mismatch at " + show(phi.values()));
      if (r.oracle_calls > budget) o.fail("budget exceeded at " + show(phi.values()));
    } catch (const Error& e) {
      o.fail(std::string(e.what()) + " at " + show(phi.values()));
    }
  }
  if (o.passed) o.detail = "max oracle calls " + std::to_string(worst_calls);
  return o;
}

Outcome ln_convergence() {
  Outcome o;
  Rng rng(707);
  ProfileSpec spec = corpus_spec(true);
  spec.min_len = 2;
  std::string downgrade;
  for (int i = 0; i < 500; ++i) {
    spec.compact = rng.coin();
    auto phi = random_profile(rng, spec);
    ++o.cases;
    const std::size_t l = l_of(phi);
    const double V = total_variation(phi);
    double prev = 0.0;
    std::size_t reached = 0;
    for (std::size_t n = 1; n <= l + 3; ++n) {
      double v = standard_norm(phi, make_Ln(n));
      if (v < prev) o.fail("decrease at " + show(phi.values()));
      if (v == V && reached == 0) reached = n;
      prev = v;
    }
    if (reached == 0) o.fail("V not reached by l+3 at " + show(phi.values()));
    else if (reached > l + 1 && downgrade.empty()) downgrade = show(phi.values());
  }
  if (!downgrade.empty() && o.passed) o.detail = "downgraded to n <= l+3; counterexample " + downgrade;
  else if (o.passed) o.detail = "threshold n = l+1 held";
  return o;
}

Outcome integral_cross_check() {
  Outcome o;
  Rng rng(808);
  ProfileSpec spec = corpus_spec(true);
  const double schedule[] = {1e-4};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    spec.compact = rng.coin();
    auto f = random_realization(rng, random_profile(rng, spec));
    spec.compact = rng.coin();
    auto g = random_realization(rng, random_profile(rng, spec));
    ++o.cases;
    double n = standard_norm(canonicalize(f), canonicalize(g));
    double est = integral_norm_estimate(f, g, schedule)[0];
    worst = std::max(worst, (n - est) / n);
    if (est > n + 1e-9) o.fail("estimate above the norm");
    if (est < n - 1e-3 * n) o.fail("estimate too far below the norm");
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("worst relative gap ") + std::to_string(worst);
  return o;
}

Outcome no_inner_product() {
  Outcome o;
  Rng rng(909);
  ProfileSpec spec = corpus_spec(true);
  spec.min_len = 3;
  const auto catalog = default_catalog();
  for (int i = 0; i < 100; ++i) {
    auto f = random_realization(rng, random_profile(rng, spec));
    auto [vp, vn] = variation_profiles(f);
    auto phi = canonicalize(f), total = canonicalize(add(vp, vn));
    auto plus = canonicalize(vp), minus = canonicalize(vn);
    for (const auto& entry : catalog) {
      ++o.cases;
      double a = standard_norm(total, entry.weights), b = standard_norm(phi, entry.weights);
      double p = standard_norm(plus, entry.weights), m = standard_norm(minus, entry.weights);
      double defect = std::abs(a * a + b * b - 2 * p * p - 2 * m * m);
      if (!(b > 0.0) || std::abs(defect - b * b) > 1e-9) {
        o.fail(entry.name + " at " + show(phi.values()));
      }
    }
  }
  return o;
}

Outcome orientation_asymmetry() {
  Outcome o;
  auto pairs = [](const CriticalProfile& p) {
    auto v = p.values();
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i; j < v.size(); ++j) best = std::max(best, std::abs(2 * v[i] - v[j]));
    }
    return best;
  };
  CriticalProfile fwd(std::vector<double>{0, -1, 2, 0}), rev(std::vector<double>{0, 2, -1, 0});
  o.cases = 2;
  double a = asym_norm(fwd), b = asym_norm(rev);
  if (a != 4.0 || pairs(fwd) != 4.0) o.fail("forward value " + std::to_string(a));
  if (b != 5.0 || pairs(rev) != 5.0) o.fail("reversed value " + std::to_string(b));
  if (o.passed) o.detail = "asym(0,-1,2,0) = 4, asym(0,2,-1,0) = 5";
  return o;
}

Outcome sandwich_validity() {
  Outcome o;
  Rng rng(1111);
  ProfileSpec spec = corpus_spec(true);
  const auto catalog = default_catalog();
  double worst_upper = 0.0;
  for (int i = 0; i < 200; ++i) {
    spec.compact = rng.coin();
    auto f1 = random_realization(rng, random_profile(rng, spec));
    spec.compact = rng.coin();
    auto f2 = random_realization(rng, random_profile(rng, spec));
    ++o.cases;
    try {
      auto s = sandwich(f1, f2, 64, catalog);
      if (s.lower > s.upper + 1e-9) o.fail("lower above upper");
    } catch (const Error& e) {
      o.fail(e.what());
    }
    auto h = random_reparam(rng, 6, -15.0, 15.0);
    ++o.cases;
    double u = npd_upper(f1, apply_reparam(f1, h), 512);
    worst_upper = std::max(worst_upper, u);
    if (u > 1e-6) o.fail("npd_upper(f, f o h) = " + std::to_string(u));
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("max npd_upper(f, f o h) ") + std::to_string(worst_upper);
  return o;
}

} // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"closed forms for S and Lambda", closed_forms},
      {"dp equals brute force on the exhaustive corpus", dp_equals_brute_force},
      {"exchange property", exchange_property},
      {"bounding inequalities and sharpness", bounding_inequalities},
      {"S_n spectrum plateau and gap", spectrum_plateau},
      {"oracle-only reconstruction round trip", reconstruction_round_trip},
      {"L_n convergence", ln_convergence},
      {"integral cross-check", integral_cross_check},
      {"no-inner-product witness", no_inner_product},
      {"orientation asymmetry", orientation_asymmetry},
      {"pseudo-distance sandwich", sandwich_validity},
  };
  int failures = 0;
  int index = 1;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("uncaught: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s [%zu cases, %.2fs]%s%s\n", o.passed ? "PASS" : "FAIL", index, c.name,
                o.cases, secs, o.detail.empty() ? "" : " ", o.detail.c_str());
    if (!o.passed) ++failures;
    ++index;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
