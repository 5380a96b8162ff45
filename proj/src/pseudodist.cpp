#include "rpinorm/pseudodist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rpinorm/error.hpp"

namespace rpinorm {

std::vector<NamedWeights> default_catalog() {
  std::vector<NamedWeights> out;
  out.push_back({"S", make_S()});
  out.push_back({"Lambda", make_Lambda()});
  for (std::size_t n = 3; n <= 8; ++n) out.push_back({"S_" + std::to_string(n), make_Sn(n)});
  for (std::size_t n = 2; n <= 4; ++n) out.push_back({"L_" + std::to_string(n), make_Ln(n)});
  return out;
}

LowerBound npd_lower(const CriticalProfile& phi1, const CriticalProfile& phi2,
                     std::span<const NamedWeights> catalog) {
  if (catalog.empty()) throw ValidationError("npd_lower: catalog must be nonempty");
  LowerBound best{0.0, catalog.front().name};
  for (const auto& entry : catalog) {
    double d = std::abs(standard_norm(phi1, entry.weights) - standard_norm(phi2, entry.weights)) /
               entry.weights.total_variation();
    if (d > best.value) best = {d, entry.name};
  }
  return best;
}

std::vector<double> sample_on_levels(const PiecewiseLinearFunction& f,
                                     std::span<const double> levels) {
  auto pts = f.points();
  if (pts.empty()) return {0.0, 0.0, 0.0};
  std::vector<double> out;
  // Two padding samples in the left tail.
  out.push_back(0.0);
  out.push_back(0.0);
  out.push_back(pts[0].v);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double a = pts[i - 1].v;
    const double b = pts[i].v;
    if (a < b) {
      auto lo = std::upper_bound(levels.begin(), levels.end(), a);
      auto hi = std::lower_bound(levels.begin(), levels.end(), b);
      out.insert(out.end(), lo, hi);
    } else if (a > b) {
      auto lo = std::upper_bound(levels.begin(), levels.end(), b);
      auto hi = std::lower_bound(levels.begin(), levels.end(), a);
      for (auto it = hi; it != lo;) out.push_back(*--it);
    }
    out.push_back(b);
  }
  out.push_back(pts.back().v);
  out.push_back(pts.back().v);
  return out;
}

double coupling_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ValidationError("coupling_distance: empty sample sequence");
  const std::size_t m = b.size();
  std::vector<double> prev(m), cur(m);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double c = std::abs(a[i] - b[j]);
      double reach;
      if (i == 0 && j == 0) {
        reach = 0.0;
      } else if (i == 0) {
        reach = cur[j - 1];
      } else if (j == 0) {
        reach = prev[0];
      } else {
        reach = std::min({prev[j], cur[j - 1], prev[j - 1]});
      }
      cur[j] = std::max(c, reach);
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

double npd_upper_on_levels(const PiecewiseLinearFunction& f1, const PiecewiseLinearFunction& f2,
                           std::span<const double> levels) {
  std::vector<double> lv(levels.begin(), levels.end());
  std::sort(lv.begin(), lv.end());
  lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
  return coupling_distance(sample_on_levels(f1, lv), sample_on_levels(f2, lv));
}

double npd_upper(const PiecewiseLinearFunction& f1, const PiecewiseLinearFunction& f2,
                 std::size_t refinement) {
  if (refinement < 2) throw ValidationError("npd_upper: refinement must be >= 2");
  std::vector<double> levels{0.0};
  for (const Point& p : f1.points()) levels.push_back(p.v);
  for (const Point& p : f2.points()) levels.push_back(p.v);
  auto [lo, hi] = std::minmax_element(levels.begin(), levels.end());
  const double a = *lo, b = *hi;
  if (b > a) {
    for (std::size_t i = 0; i < refinement; ++i) {
      levels.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(refinement - 1));
    }
  }
  return npd_upper_on_levels(f1, f2, levels);
}

DistanceSandwich sandwich(const PiecewiseLinearFunction& f1, const PiecewiseLinearFunction& f2,
                          std::size_t refinement, std::span<const NamedWeights> catalog) {
  DistanceSandwich out;
  LowerBound lb = npd_lower(canonicalize(f1), canonicalize(f2), catalog);
  out.lower = lb.value;
  out.witness_psi = lb.witness;
  out.upper = npd_upper(f1, f2, refinement);
  out.refinement = refinement;
  if (out.lower > out.upper + 1e-9) {
    throw NumericalError("sandwich: lower bound exceeds upper estimate");
  }
  return out;
}

} // namespace rpinorm
