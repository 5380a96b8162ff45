#include "rpinorm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "rpinorm/error.hpp"
#include "rpinorm/norms.hpp"
#include "rpinorm/oracle.hpp"
#include "rpinorm/random.hpp"
#include "rpinorm/reconstruct.hpp"

namespace rpinorm {

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

double tol_for(double scale) { return std::max(1e-9 * std::abs(scale), 1e-12); }

class Check {
public:
  explicit Check(std::string name) { r_.name = std::move(name); }

  // Records one case; `excess` > 0 is a violation by that amount.
  void expect(double excess, const std::string& what = {}) {
    ++r_.cases;
    if (excess > 0.0) {
      if (r_.passed) r_.detail = what;
      r_.passed = false;
      r_.worst = std::max(r_.worst, excess);
    }
  }

  void skip(std::string why) { r_.detail = std::move(why); }

  CheckResult result() && { return std::move(r_); }

private:
  CheckResult r_;
};

double min_spacing(const PiecewiseLinearFunction& f) {
  double m = INFINITY;
  auto p = f.points();
  for (std::size_t i = 1; i < p.size(); ++i) m = std::min(m, p[i].t - p[i - 1].t);
  return m;
}

} // namespace

VerifyReport run_invariant_suite(const PiecewiseLinearFunction& f, std::uint64_t seed,
                                 std::size_t partners) {
  Rng rng(seed);
  const CriticalProfile phi = canonicalize(f);
  const bool nonzero = !phi.is_zero();
  const bool compact = phi.compact_support();
  const double V = total_variation(phi);

  std::vector<CriticalProfile> psis;
  std::vector<PiecewiseLinearFunction> gs;
  ProfileSpec spec;
  spec.max_len = 8;
  for (std::size_t i = 0; i < partners; ++i) {
    spec.compact = rng.coin();
    psis.push_back(random_profile(rng, spec));
    gs.push_back(random_realization(rng, psis.back()));
  }

  VerifyReport rep;

  {
    Check c("canonical_idempotent");
    c.expect(CriticalProfile::reduce(phi.values()) == phi ? 0.0 : 1.0);
    rep.checks.push_back(std::move(c).result());
  }
  {
    Check c("reparametrization_invariance");
    double lo = f.empty() ? -1.0 : f.points().front().t - 1.0;
    double hi = f.empty() ? 1.0 : f.points().back().t + 1.0;
    for (std::size_t i = 0; i < partners; ++i) {
      Reparametrization h = random_reparam(rng, 6, lo, hi);
      CriticalProfile q = canonicalize(apply_reparam(f, h));
      double gap = 0.0;
      if (q.size() != phi.size()) {
        gap = INFINITY;
      } else {
        for (std::size_t j = 0; j < q.size(); ++j) {
          gap = std::max(gap, std::abs(q.values()[j] - phi.values()[j]));
        }
      }
      c.expect(gap - tol_for(sup_norm(phi)), "canonical profile changed under reparametrization");
    }
    rep.checks.push_back(std::move(c).result());
  }

  auto each_partner = [&](const std::string& name, auto&& body) {
    Check c(name);
    if (!nonzero) {
      c.skip("function is zero");
    } else {
      for (std::size_t i = 0; i < partners; ++i) body(c, psis[i], gs[i]);
    }
    rep.checks.push_back(std::move(c).result());
  };

  each_partner("exchange_property", [&](Check& c, const CriticalProfile& psi, auto&) {
    double a = standard_norm(phi, psi), b = standard_norm(psi, phi);
    c.expect(std::abs(a - b) - tol_for(a));
  });
  each_partner("sign_invariance", [&](Check& c, const CriticalProfile& psi, auto&) {
    WeightSequence w = weights_of(psi);
    std::vector<double> neg(w.values().begin(), w.values().end());
    for (double& m : neg) m = -m;
    double a = standard_norm(phi, w), b = standard_norm(phi, WeightSequence(neg));
    c.expect(std::abs(a - b) - tol_for(a));
  });
  each_partner("homogeneity", [&](Check& c, const CriticalProfile& psi, auto&) {
    double lambda = rng.uniform(-3.0, 3.0);
    double a = standard_norm(canonicalize(scale(f, lambda)), psi);
    double b = std::abs(lambda) * standard_norm(phi, psi);
    c.expect(std::abs(a - b) - tol_for(b));
  });
  each_partner("triangle_inequality", [&](Check& c, const CriticalProfile& psi,
                                          const PiecewiseLinearFunction& g) {
    double lhs = standard_norm(canonicalize(add(f, g)), psi);
    double rhs = standard_norm(phi, psi) + standard_norm(canonicalize(g), psi);
    c.expect(lhs - rhs - tol_for(rhs));
  });
  each_partner("norm_bound", [&](Check& c, const CriticalProfile& psi, auto&) {
    double n = standard_norm(phi, psi);
    double bound = std::min(sup_norm(phi) * tv_norm(psi), sup_norm(psi) * tv_norm(phi));
    c.expect(n - bound - tol_for(bound));
  });
  each_partner("tail_and_variation_bounds", [&](Check& c, const CriticalProfile& psi, auto&) {
    double n = standard_norm(phi, psi);
    double lo = tail_seminorm(phi) * sup_norm(psi);
    double hi = tv_norm(phi) * sup_norm(psi);
    c.expect(lo - n - tol_for(n));
    c.expect(n - hi - tol_for(hi));
  });
  {
    Check c("compact_support_bounds");
    if (!nonzero || !compact) {
      c.skip("requires a nonzero compactly supported function");
    } else {
      for (const auto& psi : psis) {
        double n = standard_norm(phi, psi);
        double lo = sup_norm(phi) * range_norm(psi);
        double hi = 0.5 * tv_norm(phi) * range_norm(psi);
        c.expect(lo - n - tol_for(n));
        c.expect(n - hi - tol_for(hi));
      }
    }
    rep.checks.push_back(std::move(c).result());
  }
  {
    Check c("monotone_law");
    if (!nonzero || !phi.monotone()) {
      c.skip("requires a nonzero monotone function");
    } else {
      for (const auto& psi : psis) {
        double n = standard_norm(phi, psi);
        double expect = sup_norm(phi) * sup_norm(psi);
        c.expect(std::abs(n - expect) - tol_for(expect));
      }
    }
    rep.checks.push_back(std::move(c).result());
  }
  {
    Check c("stability");
    for (std::size_t i = 0; i + 1 < partners; ++i) {
      const PiecewiseLinearFunction& g = gs[i];
      const CriticalProfile& chi = psis[i + 1];
      double d = std::abs(standard_norm(phi, chi) - standard_norm(canonicalize(g), chi));
      double bound = total_variation(canonicalize(add(f, negate(g)))) * sup_norm(chi);
      c.expect(d - bound - tol_for(bound));
    }
    rep.checks.push_back(std::move(c).result());
  }
  {
    Check c("dp_equals_brute_force");
    static const double kWeights[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
    auto cand = star_values(phi);
    for (std::size_t i = 0; i < partners; ++i) {
      std::vector<double> w(static_cast<std::size_t>(rng.integer(1, 4)));
      for (double& m : w) m = kWeights[rng.integer(0, 5)];
      WeightSequence ws(w);
      DpExtremes dp = dp_extremes(cand, ws);
      try {
        BruteForceExtremes bf = brute_force_extremes(cand, ws);
        c.expect(std::abs(dp.max_sum - bf.max_sum) - tol_for(bf.max_sum));
        c.expect(std::abs(dp.min_sum - bf.min_sum) - tol_for(bf.min_sum));
      } catch (const CapacityError&) {
        c.skip("candidate list too long for exhaustive enumeration");
        break;
      }
    }
    rep.checks.push_back(std::move(c).result());
  }
  {
    Check c("no_inner_product");
    if (!nonzero || !compact) {
      c.skip("requires a nonzero compactly supported function");
    } else {
      auto [vp, vn] = variation_profiles(f);
      CriticalProfile p_plus = canonicalize(vp), p_minus = canonicalize(vn);
      CriticalProfile p_total = canonicalize(add(vp, vn));
      for (const auto& entry : {make_S(), make_Lambda(), make_Sn(3), make_Sn(5), make_Ln(2)}) {
        double a = standard_norm(p_total, entry), b = standard_norm(phi, entry);
        double cp = standard_norm(p_plus, entry), cm = standard_norm(p_minus, entry);
        double defect = std::abs(a * a + b * b - 2 * cp * cp - 2 * cm * cm);
        double scale2 = a * a + b * b + 2 * cp * cp + 2 * cm * cm;
        c.expect(std::abs(defect - b * b) - tol_for(scale2));
        c.expect(b > 0 ? 0.0 : 1.0, "norm of a nonzero function vanished");
      }
    }
    rep.checks.push_back(std::move(c).result());
  }
  {
    Check c("ln_convergence");
    if (!nonzero) {
      c.skip("function is zero");
    } else {
      const std::size_t l = l_of(phi);
      double prev = 0.0;
      for (std::size_t n = 1; n <= l + 3; ++n) {
        double v = standard_norm(phi, make_Ln(n));
        c.expect(prev - v - tol_for(v), "L_n sequence decreased");
        if (n >= l + 1) c.expect(std::abs(v - V) - tol_for(V), "L_n did not reach V by n = l + 1");
        prev = v;
      }
    }
    rep.checks.push_back(std::move(c).result());
  }
  {
    Check c("sn_spectrum");
    if (!nonzero || !compact) {
      c.skip("requires a nonzero compactly supported function");
    } else {
      const std::size_t l = l_of(phi);
      const double s_l = standard_norm(phi, make_Sn(l));
      for (std::size_t n = l; n <= l + 3; ++n) {
        c.expect(std::abs(standard_norm(phi, make_Sn(n)) - 0.5 * V) - tol_for(V));
      }
      if (l >= 2) {
        double below = standard_norm(phi, make_Sn(l - 1));
        c.expect(below - (s_l - separation_margin(phi)) - tol_for(s_l));
      }
    }
    rep.checks.push_back(std::move(c).result());
  }
  {
    Check c("reconstruction_round_trip");
    if (!nonzero || !compact) {
      c.skip("requires a nonzero compactly supported function");
    } else {
      NormOracle oracle(exact_evaluator(phi));
      try {
        ReconstructionReport r = reconstruct(oracle);
        c.expect(verify_reconstruction(phi, r, 1e-6 * std::max(1.0, V)) ? 0.0 : 1.0,
                 "recovered profile differs from input");
      } catch (const Error& e) {
        c.expect(1.0, e.what());
      }
    }
    rep.checks.push_back(std::move(c).result());
  }
  {
    Check c("integral_cross_check");
    if (!nonzero) {
      c.skip("function is zero");
    } else {
      for (std::size_t i = 0; i < std::min<std::size_t>(partners, 8); ++i) {
        const PiecewiseLinearFunction& g = gs[i];
        double eta = 1e-6 * std::min(min_spacing(f), min_spacing(g));
        const double schedule[] = {eta};
        double n = standard_norm(phi, canonicalize(g));
        try {
          double est = integral_norm_estimate(f, g, schedule)[0];
          c.expect(est - n - tol_for(n), "integral exceeded the norm");
          c.expect(n - est - 1e-3 * n, "integral far below the norm");
        } catch (const ValidationError& e) {
          c.expect(1.0, e.what());
        }
      }
    }
    rep.checks.push_back(std::move(c).result());
  }
  return rep;
}

} // namespace rpinorm
