#pragma once

// Ground truth independent of the DP: exhaustive enumeration of compatible
// assignments, the basepoint functional F on concrete PL pairs, and exact
// integration of int phi(-t) d(psi o h)/dt dt under explicitly constructed
// reparametrizations that concentrate each monotone interval of psi around a
// chosen evaluation point.

#include <cstddef>
#include <span>
#include <vector>

#include "rpinorm/norms.hpp"
#include "rpinorm/profiles.hpp"

namespace rpinorm {

inline constexpr std::size_t kDefaultEnumerationCap = 5'000'000;

struct Interval {
  double a = 0.0;
  double b = 0.0;
};

/// A maximal interval of nonzero slope of a PL function together with its
/// signed variation psi(b) - psi(a).
struct MonotoneInterval {
  Interval span;
  double variation = 0.0;
};

/// Maximal runs of same-sign nonzero slope, in increasing order.
std::vector<MonotoneInterval> monotone_intervals(const PiecewiseLinearFunction& psi);

struct BruteForceExtremes {
  double max_sum = 0.0;
  double min_sum = 0.0;
  std::size_t tuples = 0;
};

/// Enumerates every nondecreasing index tuple. Throws CapacityError when
/// C(p + k - 1, k) exceeds `cap`.
BruteForceExtremes brute_force_extremes(std::span<const double> candidates,
                                        const WeightSequence& w,
                                        std::size_t cap = kDefaultEnumerationCap);

/// max |sum_i m_i candidates[j_i]| over nondecreasing tuples.
double brute_force_norm(std::span<const double> candidates, const WeightSequence& w,
                        std::size_t cap = kDefaultEnumerationCap);

/// F(phi, psi) = sum_i m_i * phi*(t_i) with t_i maximizing (m_i > 0) or
/// minimizing (m_i < 0) phi* on the closure of the i-th interval of psi.
/// Throws ValidationError if psi is the zero function.
double functional_F(const PiecewiseLinearFunction& phi, const PiecewiseLinearFunction& psi);

/// Targets tau'_i in the phi* domain, one per interval of psi; margins
/// eta_i = eta / 2^i.
struct ConcentrationPlan {
  std::vector<double> targets;
  double eta = 0.0;
  std::vector<Interval> intervals;

  [[nodiscard]] double margin(std::size_t i) const;
};

/// PL bijection mapping (tau'_i - eta_i, tau'_i + eta_i) onto
/// (a_i + eta_i, b_i - eta_i) and interpolating linearly in between.
/// Throws ValidationError if the plan would not give a strictly increasing map.
Reparametrization make_concentrating_reparam(const ConcentrationPlan& plan);

/// Same neighborhoods, but additionally fixes every a_i and b_i, so each
/// interval of psi is mapped onto itself. Requires a_i < tau'_i - eta_i and
/// tau'_i + eta_i < b_i.
Reparametrization make_interval_preserving_reparam(const ConcentrationPlan& plan);

/// Exact value of int phi(-s) * d(psi o h)/ds ds, integrated segment by
/// segment on the union of breakpoints.
double integral_functional(const PiecewiseLinearFunction& phi, const PiecewiseLinearFunction& psi,
                           const Reparametrization& h);

/// For each eta: plant targets at the DP-optimal evaluation points of phi*,
/// concentrate psi there, and return |integral_functional|. Bounded above by
/// the standard norm and converging to it as eta -> 0.
std::vector<double> integral_norm_estimate(const PiecewiseLinearFunction& phi,
                                           const PiecewiseLinearFunction& psi,
                                           std::span<const double> eta_schedule);

} // namespace rpinorm
