#pragma once

#include <cstdint>
#include <vector>

#include "wiretap/problem.hpp"

namespace wiretap {

/// One fading realization. Channels follow h ~ CN(0, H): E[h h*] = H and the
/// link gain towards beamformer w is |h* w|^2.
struct ChannelSample {
  std::vector<ComplexVector> users;
  std::vector<ComplexVector> eavesdroppers;
};

/// Draws realizations with counter-based per-trial seeding: trial i of seed s
/// is the same regardless of thread count or consumption order.
class ChannelSampler {
 public:
  ChannelSampler(const WiretapProblem& p, std::uint64_t seed);

  ChannelSample operator()(std::uint64_t trial) const;

  /// |h_k* w|^2 and |z_j* w|^2 for one trial without materializing the sample.
  void gains(std::uint64_t trial, const ComplexVector& w, std::vector<double>& user_gain,
             std::vector<double>& eve_gain) const;

  std::size_t users() const { return user_factor_.size(); }
  std::size_t eavesdroppers() const { return eve_factor_.size(); }
  std::uint64_t seed() const { return seed_; }

 private:
  std::vector<ComplexMatrix> user_factor_;
  std::vector<ComplexMatrix> eve_factor_;
  Eigen::Index n_;
  std::uint64_t seed_;
};

std::vector<ChannelSample> sample_channels(const WiretapProblem& p, std::uint64_t seed, std::size_t count);

/// Binomial proportion with a 95% normal-approximation half-width.
struct OutageEstimate {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double p_hat = 0.0;
  double ci_halfwidth = 0.0;

  static OutageEstimate from_counts(std::size_t successes, std::size_t trials);
};

struct MonteCarloOptions {
  std::size_t trials = 100000;
  unsigned threads = 0;
};

/// Joint non-outage: every user rate >= R_D and every eavesdropper rate <= R_D - R_s.
/// Rates come from the rate model (log2(1 + g/N0) for Gaussian input).
OutageEstimate estimate_non_outage(const WiretapProblem& p, const RatePair& r, const ComplexVector& w,
                                   const ChannelSampler& sampler, const MonteCarloOptions& opts = {},
                                   const RateModel& model = RateModel::gaussian());

/// Per-link success probabilities of the individual constraints.
struct IndividualProbabilities {
  std::vector<OutageEstimate> users;          // Pr{ |h_k* w|^2 >= snr(R_D) N0 }
  std::vector<OutageEstimate> eavesdroppers;  // Pr{ |z_j* w|^2 <= snr(R_D - R_s) N0 }
};

IndividualProbabilities estimate_individual_probs(const WiretapProblem& p, const RatePair& r,
                                                  const ComplexVector& w, const ChannelSampler& sampler,
                                                  const MonteCarloOptions& opts = {},
                                                  const RateModel& model = RateModel::gaussian());

/// Goodness of fit of |h_k* w|^2 to Exp(mean = w* H_k w).
struct ExponentialityReport {
  std::size_t trials = 0;
  double expected_mean = 0.0;
  double sample_mean = 0.0;
  double sample_variance = 0.0;
  double mean_rel_error = 0.0;
  double variance_rel_error = 0.0;
  double moment_tol = 0.0;      // 5 / sqrt(trials)
  double ks_statistic = 0.0;
  double ks_critical = 0.0;     // 1% level, large-n asymptotic
  bool mean_ok = false;
  bool variance_ok = false;
  bool ks_ok = false;

  bool passes() const { return mean_ok && variance_ok && ks_ok; }
};

/// Throws std::invalid_argument if w* H_k w is zero.
ExponentialityReport exponentiality_check(const WiretapProblem& p, const ComplexVector& w,
                                          const ChannelSampler& sampler, std::size_t user_index,
                                          const MonteCarloOptions& opts = {});

/// Kolmogorov-Smirnov critical value at the 1% level for large n.
double ks_critical_1pct(std::size_t n);

}  // namespace wiretap
