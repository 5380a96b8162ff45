#pragma once

// Almost sigmoidal functions and their canonical form modulo reparametrization.
//
// The theory works with C^1 functions that vanish on a left half-line and are
// constant on a right half-line. Every norm computed by this library depends
// only on the ordered sequence of values at monotone-run boundaries, and those
// norms are stable under C^1-small smoothing, so piecewise-linear functions are
// used throughout as exact computable representatives of their C^1 classes.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rpinorm {

/// Absolute tolerance below which two values are considered equal during
/// canonicalization.
inline constexpr double kValueTolerance = 1e-12;

struct Point {
  double t = 0.0;
  double v = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Piecewise-linear almost sigmoidal function.
///
/// The function is 0 on (-inf, t_first], interpolates linearly between
/// consecutive points and is constant v_last on [t_last, +inf). An empty
/// point list is the zero function.
class PiecewiseLinearFunction {
public:
  PiecewiseLinearFunction() = default;

  /// Throws ValidationError unless t is strictly increasing, every value is
  /// finite and the first value is 0 (within kValueTolerance; it is then
  /// stored as exactly 0).
  explicit PiecewiseLinearFunction(std::vector<Point> points);

  /// Convenience: values placed on the integer grid t = 0, 1, 2, ...
  static PiecewiseLinearFunction on_unit_grid(std::span<const double> values,
                                              double spacing = 1.0);

  [[nodiscard]] std::span<const Point> points() const { return points_; }
  [[nodiscard]] bool empty() const { return points_.empty(); }
  [[nodiscard]] std::size_t size() const { return points_.size(); }

  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] double tail_value() const {
    return points_.empty() ? 0.0 : points_.back().v;
  }

private:
  std::vector<Point> points_;
};

/// Canonical value sequence u_0 = 0, u_1, ..., u_m of a function modulo
/// orientation-preserving reparametrization. Consecutive differences strictly
/// alternate in sign. The singleton (0) is the zero function.
class CriticalProfile {
public:
  /// The zero profile.
  CriticalProfile() : values_{0.0} {}

  /// Throws ValidationError if `values` is not already in reduced form.
  explicit CriticalProfile(std::vector<double> values);

  /// Reduces an arbitrary value list starting at 0 (merging plateaus and
  /// monotone runs). Throws ValidationError on an empty list or nonzero start.
  static CriticalProfile reduce(std::span<const double> values);

  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] bool is_zero() const { return values_.size() == 1; }
  [[nodiscard]] bool compact_support() const { return values_.back() == 0.0; }
  [[nodiscard]] bool monotone() const { return values_.size() <= 2; }
  [[nodiscard]] double tail_value() const { return values_.back(); }

  friend bool operator==(const CriticalProfile&, const CriticalProfile&) = default;

private:
  std::vector<double> values_;
};

/// Strictly increasing PL bijection of the real line with unit-slope tails.
/// An empty point list is the identity.
class Reparametrization {
public:
  Reparametrization() = default;

  /// Throws ValidationError unless both coordinates strictly increase.
  explicit Reparametrization(std::vector<Point> points);

  [[nodiscard]] std::span<const Point> points() const { return points_; }

  [[nodiscard]] double operator()(double s) const;
  [[nodiscard]] double inverse(double t) const;

private:
  std::vector<Point> points_;
};

struct VariationSplit {
  double positive = 0.0;
  double negative = 0.0;
};

CriticalProfile canonicalize(const PiecewiseLinearFunction& f);

/// Critical values of t -> f(-t), i.e. the reversed value list.
std::vector<double> star_values(const CriticalProfile& p);

double total_variation(const CriticalProfile& p);
VariationSplit variation_split(const CriticalProfile& p);

/// Cumulative positive and negative variation of f, sampled on f's grid.
std::pair<PiecewiseLinearFunction, PiecewiseLinearFunction>
variation_profiles(const PiecewiseLinearFunction& f);

/// Number of interior alternation points, i.e. the minimal cardinality of a
/// set off which the function is monotone.
std::size_t l_of(const CriticalProfile& p);

/// Smallest jump between consecutive profile values; 0 for the zero profile.
double separation_margin(const CriticalProfile& p);

PiecewiseLinearFunction add(const PiecewiseLinearFunction& f,
                            const PiecewiseLinearFunction& g);
PiecewiseLinearFunction negate(const PiecewiseLinearFunction& f);
PiecewiseLinearFunction scale(const PiecewiseLinearFunction& f, double lambda);

/// f o h, exact on the union of h^{-1}(breakpoints of f) and h's breakpoints.
PiecewiseLinearFunction apply_reparam(const PiecewiseLinearFunction& f,
                                      const Reparametrization& h);

/// t -> f(-t). Throws DomainError unless f has compact support.
PiecewiseLinearFunction reverse_time(const PiecewiseLinearFunction& f);

} // namespace rpinorm
