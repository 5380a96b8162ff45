#include "rpinorm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rpinorm/error.hpp"

namespace rpinorm {

std::vector<MonotoneInterval> monotone_intervals(const PiecewiseLinearFunction& psi) {
  std::vector<MonotoneInterval> out;
  auto pts = psi.points();
  int dir = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double d = pts[i].v - pts[i - 1].v;
    int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (s == 0) {
      dir = 0;
      continue;
    }
    if (s == dir) {
      out.back().span.b = pts[i].t;
      out.back().variation += d;
    } else {
      out.push_back({{pts[i - 1].t, pts[i].t}, d});
      dir = s;
    }
  }
  return out;
}

namespace {

// C(n, k) in floating point, saturating well above any sensible cap.
double binomial(std::size_t n, std::size_t k) {
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (r > 1e18) return r;
  }
  return r;
}

void enumerate(std::span<const double> c, std::span<const double> w, std::size_t i,
               std::size_t from, double acc, BruteForceExtremes& out) {
  if (i == w.size()) {
    out.max_sum = std::max(out.max_sum, acc);
    out.min_sum = std::min(out.min_sum, acc);
    ++out.tuples;
    return;
  }
  for (std::size_t j = from; j < c.size(); ++j) enumerate(c, w, i + 1, j, acc + w[i] * c[j], out);
}

} // namespace

BruteForceExtremes brute_force_extremes(std::span<const double> candidates,
                                        const WeightSequence& w, std::size_t cap) {
  if (candidates.empty()) throw ValidationError("brute_force: candidate list must be nonempty");
  const std::size_t p = candidates.size();
  const std::size_t k = w.size();
  double count = binomial(p + k - 1, k);
  if (count > static_cast<double>(cap)) {
    throw CapacityError("brute_force: " + std::to_string(static_cast<long double>(count)) +
                        " tuples exceed cap " + std::to_string(cap));
  }
  BruteForceExtremes out;
  out.max_sum = -INFINITY;
  out.min_sum = INFINITY;
  enumerate(candidates, w.values(), 0, 0, 0.0, out);
  return out;
}

double brute_force_norm(std::span<const double> candidates, const WeightSequence& w,
                        std::size_t cap) {
  auto e = brute_force_extremes(candidates, w, cap);
  return std::max(std::abs(e.max_sum), std::abs(e.min_sum));
}

double functional_F(const PiecewiseLinearFunction& phi, const PiecewiseLinearFunction& psi) {
  auto intervals = monotone_intervals(psi);
  if (intervals.empty()) throw ValidationError("functional_F: psi must be nonzero");
  auto star = [&](double s) { return phi(-s); };
  double total = 0.0;
  for (const auto& iv : intervals) {
    const double sigma = iv.variation > 0 ? 1.0 : -1.0;
    double best = sigma * star(iv.span.a);
    best = std::max(best, sigma * star(iv.span.b));
    for (const Point& p : phi.points()) {
      double s = -p.t;
      if (s > iv.span.a && s < iv.span.b) best = std::max(best, sigma * p.v);
    }
    total += iv.variation * sigma * best;
  }
  return total;
}

double ConcentrationPlan::margin(std::size_t i) const {
  return std::ldexp(eta, -static_cast<int>(std::min<std::size_t>(i, 1000)));
}

namespace {

void check_plan(const ConcentrationPlan& plan) {
  if (plan.targets.size() != plan.intervals.size()) {
    throw ValidationError("concentration plan: one target per interval required");
  }
  if (plan.targets.empty()) throw ValidationError("concentration plan: no intervals");
  if (!(plan.eta > 0.0) || !std::isfinite(plan.eta)) {
    throw ValidationError("concentration plan: eta must be positive");
  }
  for (std::size_t i = 0; i < plan.intervals.size(); ++i) {
    const Interval& iv = plan.intervals[i];
    if (!(iv.b > iv.a)) throw ValidationError("concentration plan: empty interval");
    if (!(2.0 * plan.margin(i) < iv.b - iv.a)) {
      throw ValidationError("concentration plan: eta exceeds half an interval length");
    }
    if (i > 0) {
      if (plan.intervals[i - 1].b > iv.a) {
        throw ValidationError("concentration plan: intervals overlap or are unordered");
      }
      if (plan.targets[i] < plan.targets[i - 1]) {
        throw ValidationError("concentration plan: targets must be nondecreasing");
      }
    }
  }
}

Reparametrization checked(std::vector<Point> pts) {
  try {
    return Reparametrization(std::move(pts));
  } catch (const ValidationError&) {
    throw ValidationError(
        "concentration plan: neighborhoods overlap (targets closer than their margins)");
  }
}

} // namespace

Reparametrization make_concentrating_reparam(const ConcentrationPlan& plan) {
  check_plan(plan);
  std::vector<Point> pts;
  pts.reserve(2 * plan.targets.size());
  for (std::size_t i = 0; i < plan.targets.size(); ++i) {
    const double m = plan.margin(i);
    const Interval& iv = plan.intervals[i];
    pts.push_back({plan.targets[i] - m, iv.a + m});
    pts.push_back({plan.targets[i] + m, iv.b - m});
  }
  return checked(std::move(pts));
}

Reparametrization make_interval_preserving_reparam(const ConcentrationPlan& plan) {
  check_plan(plan);
  std::vector<Point> pts;
  pts.reserve(4 * plan.targets.size());
  for (std::size_t i = 0; i < plan.targets.size(); ++i) {
    const double m = plan.margin(i);
    const Interval& iv = plan.intervals[i];
    if (!(iv.a < plan.targets[i] - m && plan.targets[i] + m < iv.b)) {
      throw ValidationError("interval-preserving plan: target neighborhood must lie inside its interval");
    }
    if (pts.empty() || pts.back().t < iv.a) pts.push_back({iv.a, iv.a});
    pts.push_back({plan.targets[i] - m, iv.a + m});
    pts.push_back({plan.targets[i] + m, iv.b - m});
    pts.push_back({iv.b, iv.b});
  }
  return checked(std::move(pts));
}

double integral_functional(const PiecewiseLinearFunction& phi, const PiecewiseLinearFunction& psi,
                           const Reparametrization& h) {
  PiecewiseLinearFunction g = apply_reparam(psi, h);
  auto gp = g.points();
  if (gp.size() < 2) return 0.0;
  std::vector<double> grid;
  grid.reserve(gp.size() + phi.size());
  for (const Point& p : gp) grid.push_back(p.t);
  for (const Point& p : phi.points()) {
    double s = -p.t;
    if (s > gp.front().t && s < gp.back().t) grid.push_back(s);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // On each cell d(psi o h)/ds is constant and phi* is affine, so the
  // midpoint value of phi* integrates it exactly.
  double total = 0.0;
  double g_prev = g(grid.front());
  double f_prev = phi(-grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double g_cur = g(grid[i]);
    double f_cur = phi(-grid[i]);
    total += (g_cur - g_prev) * 0.5 * (f_prev + f_cur);
    g_prev = g_cur;
    f_prev = f_cur;
  }
  return total;
}

std::vector<double> integral_norm_estimate(const PiecewiseLinearFunction& phi,
                                           const PiecewiseLinearFunction& psi,
                                           std::span<const double> eta_schedule) {
  auto intervals = monotone_intervals(psi);
  if (intervals.empty()) throw ValidationError("integral_norm_estimate: psi must be nonzero");
  std::vector<double> out(eta_schedule.size(), 0.0);
  if (canonicalize(phi).is_zero()) return out;

  // phi* breakpoints in increasing order.
  auto fp = phi.points();
  std::vector<double> pos, val;
  pos.reserve(fp.size());
  val.reserve(fp.size());
  for (auto it = fp.rbegin(); it != fp.rend(); ++it) {
    pos.push_back(-it->t);
    val.push_back(it->v);
  }

  std::vector<double> w;
  std::vector<Interval> spans;
  for (const auto& iv : intervals) {
    w.push_back(iv.variation);
    spans.push_back(iv.span);
  }
  WeightSequence weights(w);
  DpExtremes dp = dp_extremes(val, weights);
  const auto& assign = dp.max_sum >= -dp.min_sum ? dp.argmax : dp.argmin;
  const std::size_t k = assign.size();
  const std::size_t last = pos.size() - 1;

  for (std::size_t e = 0; e < eta_schedule.size(); ++e) {
    ConcentrationPlan plan;
    plan.eta = eta_schedule[e];
    plan.intervals = spans;
    plan.targets.assign(k, 0.0);
    // Weights sharing a breakpoint are spread so that their neighborhoods do
    // not overlap. At the ends phi* is constant outward, so those clusters
    // spread outward at no cost; interior clusters are centered.
    std::size_t i = 0;
    while (i < k) {
      std::size_t r = i;
      while (r + 1 < k && assign[r + 1] == assign[i]) ++r;
      std::vector<double> offs(r - i + 1, 0.0);
      for (std::size_t q = i + 1; q <= r; ++q) {
        offs[q - i] = offs[q - i - 1] + 1.25 * (plan.margin(q - 1) + plan.margin(q));
      }
      const std::size_t j = assign[i];
      double shift = 0.0;
      if (j == last && j != 0) {
        shift = 0.0;
      } else if (j == 0 && j != last) {
        shift = -offs.back();
      } else {
        shift = -0.5 * offs.back();
      }
      for (std::size_t q = i; q <= r; ++q) plan.targets[q] = pos[j] + offs[q - i] + shift;
      i = r + 1;
    }
    Reparametrization h = make_concentrating_reparam(plan);
    out[e] = std::abs(integral_functional(phi, psi, h));
  }
  return out;
}

} // namespace rpinorm
