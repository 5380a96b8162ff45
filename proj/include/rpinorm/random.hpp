#pragma once

// Seeded generators for profiles, PL realizations and reparametrizations.
// Used by the self-verification suite and the tests; the value mapping from
// the raw engine output is fixed here so a seed reproduces the same corpus on
// every platform.

#include <cstddef>
#include <cstdint>
#include <random>

#include "rpinorm/profiles.hpp"

namespace rpinorm {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  bool coin() { return (engine_() >> 63) != 0; }

private:
  std::mt19937_64 engine_;
};

struct ProfileSpec {
  std::size_t min_len = 2;
  std::size_t max_len = 12;
  double bound = 10.0;
  /// Values are multiples of `quantum` (exact binary fractions keep DP sums
  /// exact); 0 draws continuous values.
  double quantum = 1.0 / 16.0;
  bool compact = true;
  /// Lower bound on every |u_{i+1} - u_i|.
  double min_margin = 0.0;
};

/// A nonzero random canonical profile satisfying `spec`.
CriticalProfile random_profile(Rng& rng, const ProfileSpec& spec);

/// A PL function whose canonical profile is `p`: random spacings, random
/// collinear or monotone intermediate points and occasional plateaus.
PiecewiseLinearFunction random_realization(Rng& rng, const CriticalProfile& p);

/// Random strictly increasing PL map with `knots` breakpoints in [lo, hi].
Reparametrization random_reparam(Rng& rng, std::size_t knots, double lo, double hi);

} // namespace rpinorm
