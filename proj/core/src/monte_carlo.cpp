#include "wiretap/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wiretap/parallel.hpp"
#include "wiretap/rng.hpp"

namespace wiretap {

namespace {

ComplexVector draw(rng::TrialStream& stream, const ComplexMatrix& factor) {
  ComplexVector g(factor.cols());
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = stream.complex_normal();
  return factor * g;
}

void check_beamformer(const WiretapProblem& p, const ComplexVector& w) {
  if (static_cast<std::size_t>(w.size()) != p.antennas) {
    throw std::invalid_argument("beamformer dimension does not match the antenna count");
  }
  const double power = w.squaredNorm();
  if (power > p.power_budget * (1.0 + 1e-6)) {
    throw std::invalid_argument("beamformer power " + std::to_string(power) + " exceeds P_T");
  }
}

struct LinkLevels {
  double user_gain_min;  // snr(R_D) N0
  double eve_gain_max;   // snr(R_D - R_s) N0
};

LinkLevels link_levels(const WiretapProblem& p, const RatePair& r, const RateModel& model) {
  require_valid(r);
  if (!(r.code_rate < model.capacity)) {
    throw UnachievableRate("R_D at or above the capacity of " + model.name);
  }
  return {model.snr_for_rate(r.code_rate) * p.noise_power,
          model.snr_for_rate(r.code_rate - r.secrecy_rate) * p.noise_power};
}

}  // namespace

ChannelSampler::ChannelSampler(const WiretapProblem& p, std::uint64_t seed)
    : n_(static_cast<Eigen::Index>(p.antennas)), seed_(seed) {
  require_valid(p);
  for (const auto& h : p.user_cov) user_factor_.push_back(linalg::psd_project_factor(h));
  for (const auto& z : p.eve_cov) eve_factor_.push_back(linalg::psd_project_factor(z));
}

ChannelSample ChannelSampler::operator()(std::uint64_t trial) const {
  rng::TrialStream stream(seed_, trial);
  ChannelSample s;
  for (const auto& b : user_factor_) s.users.push_back(draw(stream, b));
  for (const auto& b : eve_factor_) s.eavesdroppers.push_back(draw(stream, b));
  return s;
}

void ChannelSampler::gains(std::uint64_t trial, const ComplexVector& w, std::vector<double>& user_gain,
                           std::vector<double>& eve_gain) const {
  rng::TrialStream stream(seed_, trial);
  user_gain.resize(user_factor_.size());
  eve_gain.resize(eve_factor_.size());
  for (std::size_t k = 0; k < user_factor_.size(); ++k) user_gain[k] = std::norm(draw(stream, user_factor_[k]).dot(w));
  for (std::size_t j = 0; j < eve_factor_.size(); ++j) eve_gain[j] = std::norm(draw(stream, eve_factor_[j]).dot(w));
}

std::vector<ChannelSample> sample_channels(const WiretapProblem& p, std::uint64_t seed, std::size_t count) {
  const ChannelSampler sampler(p, seed);
  std::vector<ChannelSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler(i));
  return out;
}

OutageEstimate OutageEstimate::from_counts(std::size_t successes, std::size_t trials) {
  if (trials == 0) throw std::invalid_argument("estimate needs at least one trial");
  OutageEstimate e;
  e.trials = trials;
  e.successes = successes;
  e.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  e.ci_halfwidth = 1.96 * std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  return e;
}

OutageEstimate estimate_non_outage(const WiretapProblem& p, const RatePair& r, const ComplexVector& w,
                                   const ChannelSampler& sampler, const MonteCarloOptions& opts,
                                   const RateModel& model) {
  check_beamformer(p, w);
  if (opts.trials == 0) throw std::invalid_argument("estimate_non_outage: empty sample stream");
  const LinkLevels levels = link_levels(p, r, model);
  const unsigned threads = resolve_threads(opts.threads);
  std::vector<std::size_t> counts(std::max(1u, threads), 0);

  parallel_chunks(opts.trials, threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    std::vector<double> ug, eg;
    std::size_t hits = 0;
    for (std::size_t t = begin; t < end; ++t) {
      sampler.gains(t, w, ug, eg);
      const bool users_ok = std::all_of(ug.begin(), ug.end(), [&](double g) { return g >= levels.user_gain_min; });
      const bool eves_ok = std::all_of(eg.begin(), eg.end(), [&](double g) { return g <= levels.eve_gain_max; });
      if (users_ok && eves_ok) ++hits;
    }
    counts[chunk] = hits;
  });

  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  return OutageEstimate::from_counts(total, opts.trials);
}

IndividualProbabilities estimate_individual_probs(const WiretapProblem& p, const RatePair& r,
                                                  const ComplexVector& w, const ChannelSampler& sampler,
                                                  const MonteCarloOptions& opts, const RateModel& model) {
  check_beamformer(p, w);
  if (opts.trials == 0) throw std::invalid_argument("estimate_individual_probs: empty sample stream");
  const LinkLevels levels = link_levels(p, r, model);
  const unsigned threads = resolve_threads(opts.threads);
  const std::size_t k = sampler.users();
  const std::size_t j = sampler.eavesdroppers();
  std::vector<std::vector<std::size_t>> counts(std::max(1u, threads), std::vector<std::size_t>(k + j, 0));

  parallel_chunks(opts.trials, threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    std::vector<double> ug, eg;
    auto& mine = counts[chunk];
    for (std::size_t t = begin; t < end; ++t) {
      sampler.gains(t, w, ug, eg);
      for (std::size_t i = 0; i < k; ++i) mine[i] += ug[i] >= levels.user_gain_min ? 1 : 0;
      for (std::size_t i = 0; i < j; ++i) mine[k + i] += eg[i] <= levels.eve_gain_max ? 1 : 0;
    }
  });

  IndividualProbabilities out;
  for (std::size_t i = 0; i < k + j; ++i) {
    std::size_t total = 0;
    for (const auto& c : counts) total += c[i];
    auto est = OutageEstimate::from_counts(total, opts.trials);
    (i < k ? out.users : out.eavesdroppers).push_back(est);
  }
  return out;
}

double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

ExponentialityReport exponentiality_check(const WiretapProblem& p, const ComplexVector& w,
                                          const ChannelSampler& sampler, std::size_t user_index,
                                          const MonteCarloOptions& opts) {
  if (user_index >= p.users()) throw std::invalid_argument("exponentiality_check: user index out of range");
  if (opts.trials < 2) throw std::invalid_argument("exponentiality_check: need at least two trials");
  const double mean = linalg::quad_form(w, p.user_cov[user_index]);
  if (!(mean > 0.0)) throw std::invalid_argument("exponentiality_check: degenerate direction (w* H w = 0)");

  const std::size_t n = opts.trials;
  std::vector<double> samples(n);
  parallel_chunks(n, resolve_threads(opts.threads), [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<double> ug, eg;
    for (std::size_t t = begin; t < end; ++t) {
      sampler.gains(t, w, ug, eg);
      samples[t] = ug[user_index];
    }
  });

  ExponentialityReport rep;
  rep.trials = n;
  rep.expected_mean = mean;
  double sum = 0.0;
  for (double x : samples) sum += x;
  rep.sample_mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (double x : samples) sq += (x - rep.sample_mean) * (x - rep.sample_mean);
  rep.sample_variance = sq / static_cast<double>(n - 1);

  rep.moment_tol = 5.0 / std::sqrt(static_cast<double>(n));
  rep.mean_rel_error = std::abs(rep.sample_mean - mean) / mean;
  rep.variance_rel_error = std::abs(rep.sample_variance - mean * mean) / (mean * mean);
  rep.mean_ok = rep.mean_rel_error <= rep.moment_tol;
  rep.variance_ok = rep.variance_rel_error <= rep.moment_tol;

  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = -std::expm1(-samples[i] / mean);
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    d = std::max({d, cdf - lo, hi - cdf});
  }
  rep.ks_statistic = d;
  rep.ks_critical = ks_critical_1pct(n);
  rep.ks_ok = d <= rep.ks_critical;
  return rep;
}

}  // namespace wiretap
