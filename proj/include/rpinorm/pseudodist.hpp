#pragma once

// Two-sided estimates of the natural pseudo-distance
//   inf_h sup_t |f1(t) - f2(h(t))|
// over orientation-preserving reparametrizations h.
//
// Lower bounds: for every psi, sup|f1 - f2 o h| >= | ||f1||_[psi] - ||f2||_[psi] | / V_psi,
// because ||chi||_[psi] <= max|chi| V_psi and standard norms ignore h.
//
// Upper bound: a discrete Frechet-style coupling. Each function is sampled at
// its breakpoints and at every crossing of a shared set of value levels; the
// coupling DP then minimizes the running max of |f1(s_i) - f2(r_j)| over
// monotone couplings. The polylines through those samples are the functions
// themselves, so the optimum dominates the continuous inf; with levels shared
// by both sides, a pair f, f o h samples to the same value sequence and scores 0.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rpinorm/norms.hpp"
#include "rpinorm/profiles.hpp"

namespace rpinorm {

struct DistanceSandwich {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t refinement = 0;
  std::string witness_psi;
};

struct LowerBound {
  double value = 0.0;
  std::string witness;
};

/// S, Lambda, S_3..S_8, L_2..L_4.
std::vector<NamedWeights> default_catalog();

/// Throws ValidationError on an empty catalog.
LowerBound npd_lower(const CriticalProfile& phi1, const CriticalProfile& phi2,
                     std::span<const NamedWeights> catalog);

/// Values f takes on the merged sample grid: its breakpoints, padding points
/// in both constant tails, and every interior crossing of `levels`.
std::vector<double> sample_on_levels(const PiecewiseLinearFunction& f,
                                     std::span<const double> levels);

/// Min over monotone couplings of max |a_i - b_j|.
double coupling_distance(std::span<const double> a, std::span<const double> b);

/// Coupling estimate with levels = all breakpoint values of both functions
/// plus `refinement` evenly spaced levels over their joint range.
/// Throws ValidationError if refinement < 2.
double npd_upper(const PiecewiseLinearFunction& f1, const PiecewiseLinearFunction& f2,
                 std::size_t refinement);

/// Coupling estimate on an explicitly shared level set; a pseudometric in
/// (f1, f2) for a fixed level set.
double npd_upper_on_levels(const PiecewiseLinearFunction& f1, const PiecewiseLinearFunction& f2,
                           std::span<const double> levels);

/// Throws NumericalError if lower > upper + 1e-9.
DistanceSandwich sandwich(const PiecewiseLinearFunction& f1, const PiecewiseLinearFunction& f2,
                          std::size_t refinement, std::span<const NamedWeights> catalog);

} // namespace rpinorm
