#pragma once

// Recovery of a compactly supported piecewise-monotone function, up to
// reparametrization and global sign, from standard-norm values alone.
//
// Pipeline: the S_n spectrum locates l (the number of interior extrema);
// one-sided derivatives of eps -> ||phi||_[S_l^{eps e_i}] at 0 give the
// critical values of phi* up to a global sign; the profile is the reversed
// list framed by zeros.

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rpinorm/norms.hpp"
#include "rpinorm/profiles.hpp"

namespace rpinorm {

/// The only channel through which reconstruction sees the hidden function.
/// Every evaluation increments the call counter by exactly one; the counter is
/// atomic so evaluations may be issued concurrently if the evaluator allows it.
class NormOracle {
public:
  using Evaluator = std::function<double(const WeightSequence&)>;

  explicit NormOracle(Evaluator eval) : eval_(std::move(eval)) {}

  NormOracle(const NormOracle&) = delete;
  NormOracle& operator=(const NormOracle&) = delete;

  double operator()(const WeightSequence& w) {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return eval_(w);
  }

  [[nodiscard]] std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

private:
  Evaluator eval_;
  std::atomic<std::uint64_t> calls_{0};
};

/// An exact oracle over a known profile (test and CLI use only).
NormOracle::Evaluator exact_evaluator(CriticalProfile hidden);

struct ReconstructionOptions {
  /// Relative tolerance for spectrum plateaus and derivative agreement.
  double tol = 1e-7;
  /// Largest l that detection may report.
  std::size_t n_cap = 64;
  /// Extra plateau steps required beyond the default two.
  std::size_t paranoid = 0;
};

struct LDetection {
  std::size_t l = 0;
  /// oracle(S_n) for n = 1..evaluated.
  std::vector<double> spectrum;
};

struct ExtractedValues {
  std::vector<double> derivatives;
  double epsilon_used = 0.0;
  std::size_t halvings = 0;
  /// |D_i(eps) - D_i(eps/2)| at acceptance, per index.
  std::vector<double> residuals;
};

struct ReconstructionReport {
  CriticalProfile profile;
  std::size_t l = 0;
  std::vector<double> derivatives;
  std::uint64_t oracle_calls = 0;
  double epsilon_used = 0.0;
  std::size_t halvings = 0;
  bool sign_ambiguous = true;
  std::vector<double> spectrum;
  std::vector<double> residuals;
  std::vector<std::string> warnings;
};

/// (oracle(S_n))_{n=1..n_max}.
std::vector<double> sn_spectrum(NormOracle& oracle, std::size_t n_max);

/// Smallest N <= n_cap with S_N = S_{N+1} = S_{N+2} (plus `paranoid` more
/// equal steps), equality taken relative to `tol`. Below l the spectrum can
/// repeat a value once, but S_{n+2} > S_n strictly for n + 2 <= l and
/// S_{l-1} < S_l, so a two-step plateau starts exactly at l.
/// Throws CapacityError if no plateau starts at or below n_cap.
LDetection detect_l(NormOracle& oracle, std::size_t n_cap, double tol, std::size_t paranoid = 0);

/// Forward differences of eps -> oracle(S_l^{eps e_i}) from eps0, halving until
/// two consecutive scales agree within tol * max(1, |D|). `base` is
/// oracle(S_l) if already known. Throws NumericalError after 60 halvings.
ExtractedValues extract_values(NormOracle& oracle, std::size_t l, double tol,
                               double eps0 = 0.25, std::optional<double> base = std::nullopt);

/// Profile (0, reverse(derivatives), 0), canonicalized. Throws
/// ValidationError if every derivative is zero.
CriticalProfile rebuild(std::span<const double> derivatives);

/// Full pipeline. The returned profile is sign-normalized so that its first
/// nonzero value is positive.
ReconstructionReport reconstruct(NormOracle& oracle, const ReconstructionOptions& opts = {});

/// True iff phi matches the report's profile up to global sign with
/// sum |u_i - u'_i| <= eps (profiles of different length never match).
bool verify_reconstruction(const CriticalProfile& phi, const ReconstructionReport& report,
                           double eps);

} // namespace rpinorm
