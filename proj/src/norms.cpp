#include "rpinorm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rpinorm/error.hpp"

namespace rpinorm {

WeightSequence::WeightSequence(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ValidationError("weights: sequence must be nonempty");
  for (double m : weights_) {
    if (!std::isfinite(m)) throw ValidationError("weights: non-finite weight");
    if (m == 0.0) throw ValidationError("weights: every weight must be nonzero");
  }
}

double WeightSequence::total_variation() const {
  double s = 0.0;
  for (double m : weights_) s += std::abs(m);
  return s;
}

WeightSequence weights_of(const CriticalProfile& psi) {
  if (psi.is_zero()) throw ValidationError("psi must be nonzero");
  auto vs = psi.values();
  std::vector<double> w;
  w.reserve(vs.size() - 1);
  for (std::size_t i = 1; i < vs.size(); ++i) w.push_back(vs[i] - vs[i - 1]);
  return WeightSequence(std::move(w));
}

CriticalProfile profile_of(const WeightSequence& w) {
  std::vector<double> merged;
  merged.reserve(w.size());
  for (double m : w.values()) {
    if (!merged.empty() && (merged.back() > 0) == (m > 0)) {
      merged.back() += m;
    } else {
      merged.push_back(m);
    }
  }
  std::vector<double> values{0.0};
  values.reserve(merged.size() + 1);
  for (double m : merged) values.push_back(values.back() + m);
  return CriticalProfile(std::move(values));
}

namespace {

// One direction of the DP. `better(a, b)` is true when a strictly improves on b.
template <typename Better>
double run_dp(std::span<const double> c, std::span<const double> w, Better better,
              std::vector<std::size_t>& assignment) {
  const std::size_t p = c.size();
  const std::size_t k = w.size();
  // best[j] after processing i weights: optimum with j_{i-1} <= j.
  std::vector<double> best(p, 0.0);
  std::vector<double> next(p);
  // take[i*p + j]: whether weight i is placed at index j on the optimal path.
  std::vector<char> take(k * p, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      double here = best[j] + w[i] * c[j];
      if (j > 0 && !better(here, next[j - 1])) {
        next[j] = next[j - 1];
      } else {
        next[j] = here;
        take[i * p + j] = 1;
      }
    }
    std::swap(best, next);
  }
  assignment.assign(k, 0);
  std::size_t i = k;
  std::size_t j = p - 1;
  while (i > 0) {
    if (take[(i - 1) * p + j]) {
      assignment[i - 1] = j;
      --i;
    } else {
      --j;
    }
  }
  return best[p - 1];
}

} // namespace

DpExtremes dp_extremes(std::span<const double> candidates, const WeightSequence& w) {
  if (candidates.empty()) throw ValidationError("dp_extremes: candidate list must be nonempty");
  DpExtremes out;
  out.max_sum = run_dp(candidates, w.values(), std::greater<double>{}, out.argmax);
  out.min_sum = run_dp(candidates, w.values(), std::less<double>{}, out.argmin);
  return out;
}

double standard_norm(const CriticalProfile& phi, const WeightSequence& psi) {
  auto cand = star_values(phi);
  return dp_extremes(cand, psi).abs_max();
}

double standard_norm(const CriticalProfile& phi, const CriticalProfile& psi) {
  return standard_norm(phi, weights_of(psi));
}

WeightSequence make_S() { return WeightSequence({1.0}); }

WeightSequence make_Lambda() { return WeightSequence({1.0, -1.0}); }

WeightSequence make_Sn(std::size_t n) {
  if (n == 0) throw ValidationError("S_n: n must be >= 1");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = (i % 2 == 0) ? 1.0 : -1.0;
  return WeightSequence(std::move(w));
}

WeightSequence make_Sn_e(std::size_t n, std::span<const double> e) {
  if (n == 0) throw ValidationError("S_n_e: n must be >= 1");
  if (e.size() != n) throw ValidationError("S_n_e: perturbation vector must have length n");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = ((i % 2 == 0) ? 1.0 : -1.0) + e[i];
    if (w[i] == 0.0) {
      throw ValidationError("S_n_e: perturbation cancels weight " + std::to_string(i));
    }
  }
  return WeightSequence(std::move(w));
}

WeightSequence make_Ln(std::size_t n) {
  if (n == 0) throw ValidationError("L_n: n must be >= 1");
  std::vector<double> w;
  w.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = (i % 2 == 0) ? 1.0 : -1.0;
    w.push_back(s);
    w.push_back(-s);
  }
  return WeightSequence(std::move(w));
}

double sup_norm(const CriticalProfile& p) {
  double m = 0.0;
  for (double v : p.values()) m = std::max(m, std::abs(v));
  return m;
}

double range_norm(const CriticalProfile& p) {
  auto [lo, hi] = std::minmax_element(p.values().begin(), p.values().end());
  return *hi - *lo;
}

double tv_norm(const CriticalProfile& p) { return total_variation(p); }

double tail_seminorm(const CriticalProfile& p) { return std::abs(p.tail_value()); }

double asym_norm(const CriticalProfile& p) {
  static const WeightSequence w({2.0, -1.0});
  return dp_extremes(p.values(), w).abs_max();
}

NormFn standard_norm_fn(WeightSequence w) {
  return [w = std::move(w)](const CriticalProfile& phi) { return standard_norm(phi, w); };
}

NormFn linear_combo(std::vector<NormFn> norms, std::vector<double> coeffs) {
  if (norms.size() != coeffs.size()) {
    throw ValidationError("linear_combo: norms and coefficients differ in length");
  }
  if (norms.empty()) throw ValidationError("linear_combo: empty family");
  for (double a : coeffs) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ValidationError("linear_combo: coefficients must be strictly positive");
    }
  }
  return [norms = std::move(norms), coeffs = std::move(coeffs)](const CriticalProfile& phi) {
    double s = 0.0;
    for (std::size_t i = 0; i < norms.size(); ++i) s += coeffs[i] * norms[i](phi);
    return s;
  };
}

NormFn sup_family(std::vector<NormFn> norms) {
  if (norms.empty()) throw ValidationError("sup_family: empty family");
  return [norms = std::move(norms)](const CriticalProfile& phi) {
    double s = 0.0;
    for (const auto& n : norms) s = std::max(s, n(phi));
    return s;
  };
}

NormFn monotone_compose(std::vector<NormFn> norms, double p) {
  if (norms.empty()) throw ValidationError("monotone_compose: empty family");
  if (!(p >= 1.0)) throw ValidationError("monotone_compose: p must be >= 1");
  return [norms = std::move(norms), p](const CriticalProfile& phi) {
    if (std::isinf(p)) {
      double s = 0.0;
      for (const auto& n : norms) s = std::max(s, n(phi));
      return s;
    }
    double s = 0.0;
    for (const auto& n : norms) s += std::pow(n(phi), p);
    return std::pow(s, 1.0 / p);
  };
}

WeightSequence named_weights(const std::string& name, std::size_t n, std::span<const double> e) {
  if (name == "S") return make_S();
  if (name == "Lambda") return make_Lambda();
  if (name == "S_n") return make_Sn(n);
  if (name == "L_n") return make_Ln(n);
  if (name == "S_n_e") return make_Sn_e(n, e);
  throw ValidationError("unknown norm name '" + name + "'");
}

} // namespace rpinorm
