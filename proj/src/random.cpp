#include "rpinorm/random.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rpinorm/error.hpp"

namespace rpinorm {

double Rng::uniform(double lo, double hi) {
  double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

namespace {

// Draws a value in [lo, hi] on the spec's lattice; returns false if empty.
bool draw(Rng& rng, const ProfileSpec& spec, double lo, double hi, double& out) {
  if (lo > hi) return false;
  if (spec.quantum <= 0.0) {
    out = rng.uniform(lo, hi);
    return true;
  }
  auto a = static_cast<std::int64_t>(std::ceil(lo / spec.quantum));
  auto b = static_cast<std::int64_t>(std::floor(hi / spec.quantum));
  if (a > b) return false;
  out = static_cast<double>(rng.integer(a, b)) * spec.quantum;
  return true;
}

} // namespace

CriticalProfile random_profile(Rng& rng, const ProfileSpec& spec) {
  const std::size_t min_len = std::max<std::size_t>(spec.min_len, spec.compact ? 3 : 2);
  if (spec.max_len < min_len) throw ValidationError("random_profile: max_len too small");
  const double step = std::max(spec.min_margin, spec.quantum > 0 ? spec.quantum : 1e-9);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const auto len = static_cast<std::size_t>(
        rng.integer(static_cast<std::int64_t>(min_len), static_cast<std::int64_t>(spec.max_len)));
    std::vector<double> v{0.0};
    int dir = rng.coin() ? 1 : -1;
    const std::size_t free_values = spec.compact ? len - 2 : len - 1;
    bool ok = true;
    for (std::size_t i = 0; i < free_values && ok; ++i) {
      double x = 0.0;
      if (dir > 0) {
        ok = draw(rng, spec, v.back() + step, spec.bound, x);
      } else {
        ok = draw(rng, spec, -spec.bound, v.back() - step, x);
      }
      v.push_back(x);
      dir = -dir;
    }
    if (!ok) continue;
    if (spec.compact) {
      // Closing step to 0 must continue the alternation and respect the margin.
      double last = v.back();
      if (dir > 0 && !(last <= -step)) continue;
      if (dir < 0 && !(last >= step)) continue;
      v.push_back(0.0);
    }
    return CriticalProfile(std::move(v));
  }
  throw NumericalError("random_profile: could not satisfy spec");
}

PiecewiseLinearFunction random_realization(Rng& rng, const CriticalProfile& p) {
  auto vs = p.values();
  std::vector<Point> pts;
  double t = rng.uniform(-5.0, 5.0);
  pts.push_back({t, 0.0});
  for (std::size_t i = 1; i < vs.size(); ++i) {
    const double a = vs[i - 1];
    const double b = vs[i];
    // Optional intermediate points strictly inside the monotone run.
    const auto extra = rng.integer(0, 2);
    std::vector<double> fr;
    for (std::int64_t q = 0; q < extra; ++q) fr.push_back(rng.uniform(0.05, 0.95));
    std::sort(fr.begin(), fr.end());
    for (double f : fr) {
      t += rng.uniform(0.1, 2.0);
      pts.push_back({t, a + f * (b - a)});
    }
    t += rng.uniform(0.1, 2.0);
    pts.push_back({t, b});
    if (rng.integer(0, 4) == 0) {
      t += rng.uniform(0.1, 1.0);
      pts.push_back({t, b}); // plateau
    }
  }
  return PiecewiseLinearFunction(std::move(pts));
}

Reparametrization random_reparam(Rng& rng, std::size_t knots, double lo, double hi) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < knots; ++i) {
    xs.push_back(rng.uniform(lo, hi));
    ys.push_back(rng.uniform(lo, hi));
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  std::vector<Point> pts;
  for (std::size_t i = 0; i < knots; ++i) {
    if (!pts.empty() && (xs[i] <= pts.back().t || ys[i] <= pts.back().v)) continue;
    pts.push_back({xs[i], ys[i]});
  }
  return Reparametrization(std::move(pts));
}

} // namespace rpinorm
