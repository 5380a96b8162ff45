#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <vector>

#include <gtest/gtest.h>

#include "rpinorm/norms.hpp"
#include "rpinorm/profiles.hpp"

namespace rpinorm::testing {

inline CriticalProfile profile(std::initializer_list<double> v) {
  return CriticalProfile(std::vector<double>(v));
}

inline PiecewiseLinearFunction unit_grid(std::initializer_list<double> v, double spacing = 1.0) {
  std::vector<double> values(v);
  return PiecewiseLinearFunction::on_unit_grid(values, spacing);
}

inline ::testing::AssertionResult near_profile(const CriticalProfile& a, const CriticalProfile& b,
                                               double tol = 1e-9) {
  if (a.size() != b.size()) {
    return ::testing::AssertionFailure() << "lengths " << a.size() << " vs " << b.size();
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.values()[i] - b.values()[i]) > tol) {
      return ::testing::AssertionFailure()
             << "entry " << i << ": " << a.values()[i] << " vs " << b.values()[i];
    }
  }
  return ::testing::AssertionSuccess();
}

inline double tol_for(double scale) { return std::max(1e-9 * std::abs(scale), 1e-12); }

// Visits every nondecreasing index tuple of length k over [0, p).
inline void for_each_tuple(std::size_t p, std::size_t k,
                           const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> idx(k, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == k) {
      visit(idx);
      return;
    }
    for (std::size_t j = from; j < p; ++j) {
      idx[pos] = j;
      rec(pos + 1, j);
    }
  };
  rec(0, 0);
}

struct Extremes {
  double max_sum = -INFINITY;
  double min_sum = INFINITY;
};

// Reference enumeration written independently of the library's oracle module.
inline Extremes enumerate(const std::vector<double>& cand, const std::vector<double>& w) {
  Extremes e;
  for_each_tuple(cand.size(), w.size(), [&](const std::vector<std::size_t>& idx) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * cand[idx[i]];
    e.max_sum = std::max(e.max_sum, s);
    e.min_sum = std::min(e.min_sum, s);
  });
  return e;
}

inline double enumerate_norm(const CriticalProfile& phi, const std::vector<double>& w) {
  auto v = phi.values();
  std::vector<double> cand(v.rbegin(), v.rend());
  Extremes e = enumerate(cand, w);
  return std::max(e.max_sum, -e.min_sum);
}

inline std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

} // namespace rpinorm::testing
