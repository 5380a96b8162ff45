#include "rpinorm/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rpinorm/error.hpp"

namespace rpinorm {

namespace {

double interpolate(std::span<const Point> pts, double t) {
  // Caller guarantees pts.front().t <= t <= pts.back().t.
  auto hi = std::lower_bound(pts.begin(), pts.end(), t,
                             [](const Point& p, double x) { return p.t < x; });
  if (hi == pts.begin()) return hi->v;
  if (hi->t == t) return hi->v;
  auto lo = hi - 1;
  double w = (t - lo->t) / (hi->t - lo->t);
  return lo->v + w * (hi->v - lo->v);
}

void check_strictly_increasing(std::span<const Point> pts, bool values_too,
                               const char* what) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(pts[i].t) || !std::isfinite(pts[i].v)) {
      throw ValidationError(std::string(what) + ": non-finite coordinate at index " +
                            std::to_string(i));
    }
    if (i == 0) continue;
    if (!(pts[i].t > pts[i - 1].t)) {
      throw ValidationError(std::string(what) +
                            ": t coordinates must be strictly increasing (index " +
                            std::to_string(i) + ")");
    }
    if (values_too && !(pts[i].v > pts[i - 1].v)) {
      throw ValidationError(std::string(what) + ": map must be strictly increasing (index " +
                            std::to_string(i) + ")");
    }
  }
}

std::vector<double> sorted_unique(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

} // namespace

// ---------------------------------------------------------------------------
// PiecewiseLinearFunction

PiecewiseLinearFunction::PiecewiseLinearFunction(std::vector<Point> points)
    : points_(std::move(points)) {
  check_strictly_increasing(points_, false, "function");
  if (!points_.empty()) {
    if (std::abs(points_.front().v) > kValueTolerance) {
      throw ValidationError("function: first value must be 0");
    }
    points_.front().v = 0.0;
  }
}

PiecewiseLinearFunction PiecewiseLinearFunction::on_unit_grid(std::span<const double> values,
                                                              double spacing) {
  std::vector<Point> pts;
  pts.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    pts.push_back({spacing * static_cast<double>(i), values[i]});
  }
  return PiecewiseLinearFunction(std::move(pts));
}

double PiecewiseLinearFunction::operator()(double t) const {
  if (points_.empty() || t <= points_.front().t) return 0.0;
  if (t >= points_.back().t) return points_.back().v;
  return interpolate(points_, t);
}

// ---------------------------------------------------------------------------
// CriticalProfile

CriticalProfile::CriticalProfile(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("profile: value list must be nonempty");
  if (values_.front() != 0.0) throw ValidationError("profile: first value must be 0");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw ValidationError("profile: non-finite value");
  }
  for (std::size_t i = 1; i < values_.size(); ++i) {
    double d = values_[i] - values_[i - 1];
    if (d == 0.0) throw ValidationError("profile: consecutive values must differ");
    if (i >= 2 && (d > 0) == (values_[i - 1] - values_[i - 2] > 0)) {
      throw ValidationError("profile: differences must alternate in sign");
    }
  }
}

CriticalProfile CriticalProfile::reduce(std::span<const double> values) {
  if (values.empty()) throw ValidationError("profile: value list must be nonempty");
  if (std::abs(values.front()) > kValueTolerance) {
    throw ValidationError("profile: first value must be 0");
  }
  std::vector<double> out{0.0};
  int dir = 0; // sign of the last kept step
  for (std::size_t i = 1; i < values.size(); ++i) {
    double v = values[i];
    if (!std::isfinite(v)) throw ValidationError("profile: non-finite value");
    double d = v - out.back();
    if (std::abs(d) <= kValueTolerance) continue; // plateau
    int s = d > 0 ? 1 : -1;
    if (s == dir) {
      out.back() = v; // monotone run continues
    } else {
      out.push_back(v);
      dir = s;
    }
  }
  // A run that ends within tolerance of 0 denotes compact support.
  if (out.size() > 1 && std::abs(out.back()) <= kValueTolerance) out.back() = 0.0;
  return CriticalProfile(std::move(out));
}

// ---------------------------------------------------------------------------
// Reparametrization

Reparametrization::Reparametrization(std::vector<Point> points) : points_(std::move(points)) {
  check_strictly_increasing(points_, true, "reparametrization");
}

double Reparametrization::operator()(double s) const {
  if (points_.empty()) return s;
  if (s <= points_.front().t) return points_.front().v + (s - points_.front().t);
  if (s >= points_.back().t) return points_.back().v + (s - points_.back().t);
  return interpolate(points_, s);
}

double Reparametrization::inverse(double t) const {
  if (points_.empty()) return t;
  if (t <= points_.front().v) return points_.front().t + (t - points_.front().v);
  if (t >= points_.back().v) return points_.back().t + (t - points_.back().v);
  auto hi = std::lower_bound(points_.begin(), points_.end(), t,
                             [](const Point& p, double x) { return p.v < x; });
  if (hi->v == t) return hi->t;
  auto lo = hi - 1;
  double w = (t - lo->v) / (hi->v - lo->v);
  return lo->t + w * (hi->t - lo->t);
}

// ---------------------------------------------------------------------------
// Operations

CriticalProfile canonicalize(const PiecewiseLinearFunction& f) {
  if (f.empty()) return CriticalProfile();
  std::vector<double> vs;
  vs.reserve(f.size());
  for (const Point& p : f.points()) vs.push_back(p.v);
  return CriticalProfile::reduce(vs);
}

std::vector<double> star_values(const CriticalProfile& p) {
  auto vs = p.values();
  return {vs.rbegin(), vs.rend()};
}

double total_variation(const CriticalProfile& p) {
  auto s = variation_split(p);
  return s.positive + s.negative;
}

VariationSplit variation_split(const CriticalProfile& p) {
  VariationSplit out;
  auto vs = p.values();
  for (std::size_t i = 1; i < vs.size(); ++i) {
    double d = vs[i] - vs[i - 1];
    if (d > 0) {
      out.positive += d;
    } else {
      out.negative -= d;
    }
  }
  return out;
}

std::pair<PiecewiseLinearFunction, PiecewiseLinearFunction>
variation_profiles(const PiecewiseLinearFunction& f) {
  std::vector<Point> pos, neg;
  pos.reserve(f.size());
  neg.reserve(f.size());
  double vp = 0.0, vn = 0.0;
  auto pts = f.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) {
      double d = pts[i].v - pts[i - 1].v;
      if (d > 0) vp += d;
      else vn -= d;
    }
    pos.push_back({pts[i].t, vp});
    neg.push_back({pts[i].t, vn});
  }
  return {PiecewiseLinearFunction(std::move(pos)), PiecewiseLinearFunction(std::move(neg))};
}

std::size_t l_of(const CriticalProfile& p) {
  return p.size() >= 2 ? p.size() - 2 : 0;
}

double separation_margin(const CriticalProfile& p) {
  auto vs = p.values();
  if (vs.size() < 2) return 0.0;
  double c = std::abs(vs[1] - vs[0]);
  for (std::size_t i = 2; i < vs.size(); ++i) c = std::min(c, std::abs(vs[i] - vs[i - 1]));
  return c;
}

PiecewiseLinearFunction add(const PiecewiseLinearFunction& f, const PiecewiseLinearFunction& g) {
  std::vector<double> grid;
  grid.reserve(f.size() + g.size());
  for (const Point& p : f.points()) grid.push_back(p.t);
  for (const Point& p : g.points()) grid.push_back(p.t);
  grid = sorted_unique(std::move(grid));
  std::vector<Point> pts;
  pts.reserve(grid.size());
  for (double t : grid) pts.push_back({t, f(t) + g(t)});
  return PiecewiseLinearFunction(std::move(pts));
}

PiecewiseLinearFunction negate(const PiecewiseLinearFunction& f) { return scale(f, -1.0); }

PiecewiseLinearFunction scale(const PiecewiseLinearFunction& f, double lambda) {
  std::vector<Point> pts(f.points().begin(), f.points().end());
  for (Point& p : pts) p.v = lambda * p.v + 0.0; // + 0.0 folds -0 into 0
  return PiecewiseLinearFunction(std::move(pts));
}

PiecewiseLinearFunction apply_reparam(const PiecewiseLinearFunction& f,
                                      const Reparametrization& h) {
  if (f.empty()) return {};
  std::vector<double> grid;
  grid.reserve(f.size() + h.points().size());
  for (const Point& p : f.points()) grid.push_back(h.inverse(p.t));
  for (const Point& p : h.points()) grid.push_back(p.t);
  grid = sorted_unique(std::move(grid));
  std::vector<Point> pts;
  pts.reserve(grid.size());
  // Preimages of f's breakpoints are evaluated exactly at the breakpoint so
  // that round-off in h^{-1} cannot create spurious extrema.
  std::vector<std::pair<double, double>> exact;
  exact.reserve(f.size());
  for (const Point& p : f.points()) exact.emplace_back(h.inverse(p.t), p.v);
  std::sort(exact.begin(), exact.end());
  for (double s : grid) {
    auto it = std::lower_bound(exact.begin(), exact.end(), std::pair<double, double>(s, -INFINITY));
    double v = (it != exact.end() && it->first == s) ? it->second : f(h(s));
    pts.push_back({s, v});
  }
  return PiecewiseLinearFunction(std::move(pts));
}

PiecewiseLinearFunction reverse_time(const PiecewiseLinearFunction& f) {
  if (std::abs(f.tail_value()) > kValueTolerance) {
    throw DomainError("reverse_time: function must have compact support");
  }
  auto src = f.points();
  std::vector<Point> pts;
  pts.reserve(src.size());
  for (auto it = src.rbegin(); it != src.rend(); ++it) pts.push_back({-it->t, it->v});
  if (!pts.empty()) pts.front().v = 0.0;
  return PiecewiseLinearFunction(std::move(pts));
}

} // namespace rpinorm
