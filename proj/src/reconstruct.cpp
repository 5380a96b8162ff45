#include "rpinorm/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "rpinorm/error.hpp"

namespace rpinorm {

namespace {

constexpr std::size_t kMaxHalvings = 60;

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

} // namespace

NormOracle::Evaluator exact_evaluator(CriticalProfile hidden) {
  if (hidden.is_zero()) throw ValidationError("oracle: hidden function must be nonzero");
  return [hidden = std::move(hidden)](const WeightSequence& w) {
    return standard_norm(hidden, w);
  };
}

std::vector<double> sn_spectrum(NormOracle& oracle, std::size_t n_max) {
  if (n_max == 0) throw ValidationError("sn_spectrum: n_max must be >= 1");
  std::vector<double> out;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out.push_back(oracle(make_Sn(n)));
  return out;
}

LDetection detect_l(NormOracle& oracle, std::size_t n_cap, double tol, std::size_t paranoid) {
  if (n_cap < 1) throw ValidationError("detect_l: n_cap must be >= 1");
  if (!(tol >= 0.0)) throw ValidationError("detect_l: tolerance must be nonnegative");
  const std::size_t steps = 2 + paranoid;
  LDetection out;
  auto value = [&](std::size_t n) {
    while (out.spectrum.size() < n) out.spectrum.push_back(oracle(make_Sn(out.spectrum.size() + 1)));
    return out.spectrum[n - 1];
  };
  if (value(1) == 0.0) throw DomainError("detect_l: hidden function is zero");
  for (std::size_t n = 1; n <= n_cap; ++n) {
    bool flat = true;
    for (std::size_t j = n; j < n + steps && flat; ++j) flat = close_rel(value(j), value(j + 1), tol);
    if (flat) {
      out.l = n;
      return out;
    }
  }
  throw CapacityError("detect_l: S_n spectrum did not stabilize within n_cap = " +
                      std::to_string(n_cap));
}

ExtractedValues extract_values(NormOracle& oracle, std::size_t l, double tol, double eps0,
                               std::optional<double> base) {
  if (l == 0) throw ValidationError("extract_values: l must be >= 1");
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw ValidationError("extract_values: eps0 must lie in (0, 1)");
  const double s_l = base ? *base : oracle(make_Sn(l));
  ExtractedValues out;
  out.derivatives.resize(l);
  out.residuals.resize(l);
  out.epsilon_used = eps0;
  std::vector<double> e(l, 0.0);
  auto diff = [&](std::size_t i, double eps) {
    e[i] = eps;
    double v = oracle(make_Sn_e(l, e));
    e[i] = 0.0;
    return (v - s_l) / eps;
  };
  for (std::size_t i = 0; i < l; ++i) {
    double eps = eps0;
    double d = diff(i, eps);
    bool done = false;
    for (std::size_t h = 0; h <= kMaxHalvings; ++h) {
      double half = diff(i, eps / 2);
      double gap = std::abs(d - half);
      if (gap <= tol * std::max(1.0, std::abs(d))) {
        out.derivatives[i] = half;
        out.residuals[i] = gap;
        out.epsilon_used = std::min(out.epsilon_used, eps / 2);
        done = true;
        break;
      }
      d = half;
      eps /= 2;
      ++out.halvings;
    }
    if (!done) {
      throw NumericalError("extract_values: derivative " + std::to_string(i) +
                           " did not converge after 60 halvings; hidden function likely "
                           "violates the piecewise-monotone compact-support preconditions");
    }
  }
  return out;
}

CriticalProfile rebuild(std::span<const double> derivatives) {
  if (derivatives.empty()) throw ValidationError("rebuild: derivative list must be nonempty");
  if (std::all_of(derivatives.begin(), derivatives.end(), [](double d) { return d == 0.0; })) {
    throw ValidationError("rebuild: all derivatives vanish");
  }
  std::vector<double> values{0.0};
  values.insert(values.end(), derivatives.rbegin(), derivatives.rend());
  values.push_back(0.0);
  return CriticalProfile::reduce(values);
}

ReconstructionReport reconstruct(NormOracle& oracle, const ReconstructionOptions& opts) {
  const std::uint64_t calls_before = oracle.calls();
  ReconstructionReport rep;

  LDetection det = detect_l(oracle, opts.n_cap, opts.tol, opts.paranoid);
  rep.l = det.l;
  rep.spectrum = det.spectrum;
  const double s1 = det.spectrum[0];
  const double s_l = det.spectrum[det.l - 1];
  const double s_prev = det.l >= 2 ? det.spectrum[det.l - 2] : 0.0;
  // The observed gap bounds the separation margin from above; seeding eps
  // with it lands below the linearity threshold c / (2 l max|phi|) whenever
  // the gap equals the margin, and halving covers the rest.
  const double gap = s_l - s_prev;
  double eps0 = 0.25;
  if (gap > 0.0) eps0 = std::min(eps0, gap / (4.0 * static_cast<double>(det.l) * s1));

  ExtractedValues ex = extract_values(oracle, det.l, opts.tol, eps0, s_l);
  rep.derivatives = ex.derivatives;
  rep.epsilon_used = ex.epsilon_used;
  rep.halvings = ex.halvings;
  rep.residuals = ex.residuals;

  CriticalProfile p = rebuild(ex.derivatives);
  if (p.size() != det.l + 2) {
    rep.warnings.push_back("recovered values do not alternate; profile has " +
                           std::to_string(p.size()) + " values, expected " +
                           std::to_string(det.l + 2));
  }

  double alt = 0.0;
  for (std::size_t i = 0; i < ex.derivatives.size(); ++i) {
    alt += (i % 2 == 0 ? 1.0 : -1.0) * ex.derivatives[i];
  }
  const double check_tol = std::max(1e-9, 100.0 * opts.tol) * std::max(1.0, s_l);
  if (std::abs(alt - s_l) > check_tol) {
    throw NumericalError("reconstruct: alternating sum of derivatives disagrees with ||phi||_[S_l]");
  }
  if (std::abs(total_variation(p) - 2.0 * s_l) > check_tol) {
    throw NumericalError(
        "reconstruct: recovered total variation is not 2 * ||phi||_[S_l]; hidden function may "
        "lack compact support");
  }

  if (p.size() > 1 && p.values()[1] < 0.0) {
    std::vector<double> flipped(p.values().begin(), p.values().end());
    for (double& v : flipped) v = -v + 0.0;
    p = CriticalProfile(std::move(flipped));
  }
  rep.profile = std::move(p);
  rep.sign_ambiguous = true;
  rep.oracle_calls = oracle.calls() - calls_before;
  return rep;
}

bool verify_reconstruction(const CriticalProfile& phi, const ReconstructionReport& report,
                           double eps) {
  auto a = phi.values();
  auto b = report.profile.values();
  if (a.size() != b.size()) return false;
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus += std::abs(a[i] - b[i]);
    minus += std::abs(-a[i] - b[i]);
  }
  return std::min(plus, minus) <= eps;
}

} // namespace rpinorm
