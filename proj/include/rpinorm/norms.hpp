#pragma once

// Standard reparametrization-invariant norms.
//
// A standard norm ||phi||_[psi] is the sup over reparametrizations of
// |int phi(-t) d(psi o h)/dt dt|. It equals the maximum of
// |sum_i m_i * phi*(tau_i)| over nondecreasing evaluation points tau_i, where
// m_i are the signed variations of psi over its maximal monotone intervals
// (in order) and the tau_i may be restricted to critical points of phi*. The
// geometry of psi therefore reduces to its WeightSequence, and the sup to a
// dynamic program over nondecreasing index assignments.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rpinorm/profiles.hpp"

namespace rpinorm {

/// Ordered, nonempty, finite list of nonzero signed variations.
class WeightSequence {
public:
  /// Throws ValidationError on an empty list or a zero / non-finite entry.
  explicit WeightSequence(std::vector<double> weights);

  [[nodiscard]] std::span<const double> values() const { return weights_; }
  [[nodiscard]] std::size_t size() const { return weights_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return weights_[i]; }
  [[nodiscard]] double total_variation() const;

  friend bool operator==(const WeightSequence&, const WeightSequence&) = default;

private:
  std::vector<double> weights_;
};

/// Extremes of sum_i m_i * candidates[j_i] over nondecreasing j_0 <= ... <= j_{k-1}.
struct DpExtremes {
  double max_sum = 0.0;
  double min_sum = 0.0;
  std::vector<std::size_t> argmax;
  std::vector<std::size_t> argmin;

  [[nodiscard]] double abs_max() const { return max_sum >= -min_sum ? max_sum : -min_sum; }
};

/// Consecutive differences of psi's profile. Throws ValidationError for the
/// zero profile ("psi must be nonzero").
WeightSequence weights_of(const CriticalProfile& psi);

/// Cumulative sums prefixed by 0, after merging adjacent same-sign weights.
CriticalProfile profile_of(const WeightSequence& w);

/// O(k*p) time. Ties in the backtrace resolve to the smallest candidate index.
/// Throws ValidationError on an empty candidate list.
DpExtremes dp_extremes(std::span<const double> candidates, const WeightSequence& w);

double standard_norm(const CriticalProfile& phi, const WeightSequence& psi);
double standard_norm(const CriticalProfile& phi, const CriticalProfile& psi);

// Named families.
WeightSequence make_S();
WeightSequence make_Lambda();
/// ((-1)^i)_{i<n}.
WeightSequence make_Sn(std::size_t n);
/// ((-1)^i + e_i)_{i<n}; throws ValidationError if |e| != n or a weight vanishes.
WeightSequence make_Sn_e(std::size_t n, std::span<const double> e);
/// sum_{i<n} (-1)^i Lambda(t - 4i), i.e. (1,-1,-1,1,1,-1,...) of length 2n.
WeightSequence make_Ln(std::size_t n);

// Classic RPI-norms evaluated on a canonical profile.
double sup_norm(const CriticalProfile& p);
double range_norm(const CriticalProfile& p);
double tv_norm(const CriticalProfile& p);
/// |lim_{t->+inf} phi(t)|; only a seminorm.
double tail_seminorm(const CriticalProfile& p);
/// max_{t1 <= t2} |2 phi(t1) - phi(t2)|. Not invariant under time reversal.
double asym_norm(const CriticalProfile& p);

using NormFn = std::function<double(const CriticalProfile&)>;

/// Evaluator for ||.||_[w].
NormFn standard_norm_fn(WeightSequence w);

/// sum_i coeffs[i] * norms[i]; throws ValidationError on a nonpositive coefficient
/// or a size mismatch.
NormFn linear_combo(std::vector<NormFn> norms, std::vector<double> coeffs);
/// max_i norms[i]; throws ValidationError on an empty family.
NormFn sup_family(std::vector<NormFn> norms);
/// l_p norm of the vector (norms[i](phi))_i, p >= 1.
NormFn monotone_compose(std::vector<NormFn> norms, double p);

struct NamedWeights {
  std::string name;
  WeightSequence weights;
};

/// Resolves "S", "Lambda", "S_n", "L_n", "S_n_e". Throws ValidationError on an
/// unknown name or bad arguments.
WeightSequence named_weights(const std::string& name, std::size_t n = 0,
                             std::span<const double> e = {});

} // namespace rpinorm
