#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wiretap/linalg.hpp"

namespace wiretap {

using linalg::ComplexMatrix;
using linalg::ComplexVector;

/// Slow-fading MISO wiretap instance: N transmit antennas, K users with
/// h_k ~ CN(0, H_k), J eavesdroppers with z_j ~ CN(0, Z_j). Powers are linear.
struct WiretapProblem {
  std::size_t antennas = 0;
  double noise_power = 1.0;
  double epsilon = 0.1;
  double power_budget = 1.0;
  std::vector<ComplexMatrix> user_cov;
  std::vector<ComplexMatrix> eve_cov;

  std::size_t users() const { return user_cov.size(); }
  std::size_t eavesdroppers() const { return eve_cov.size(); }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every structural and numerical invariant of the instance. Never throws.
ValidationReport validate_problem(const WiretapProblem& p, double psd_tol = linalg::kDefaultPsdTol);

/// Throws std::invalid_argument listing the violations when the problem is invalid.
void require_valid(const WiretapProblem& p);

/// Target wiretap-code rates in bits per channel use.
struct RatePair {
  double code_rate = 0.0;     // R_D
  double secrecy_rate = 0.0;  // R_s
};

/// Throws std::invalid_argument unless R_D >= R_s >= 0 and both are finite.
void require_valid(const RatePair& r);

/// Deterministic quadratic-form thresholds: users need w* H_k w >= floor,
/// eavesdroppers need w* Z_j w <= ceiling.
struct ConstraintThresholds {
  double floor = 0.0;          // a
  double ceiling = 0.0;        // b
  double per_link_prob = 1.0;  // probability each individual link constraint must meet
};

/// Which user-channel knowledge the transmitter has.
struct StatisticalCsi {};
struct PerfectUserCsi {
  std::vector<ComplexVector> channels;  // one realization per user, dimension N
};
using CsiMode = std::variant<StatisticalCsi, PerfectUserCsi>;

bool is_perfect(const CsiMode& mode);
std::string csi_mode_name(const CsiMode& mode);

/// Maps a target link rate (bits) to the SNR achieving it. For Gaussian input
/// this is 2^R - 1; finite alphabets use the inverse mutual information.
/// `capacity` is the supremum of achievable rates (infinite for Gaussian).
struct RateModel {
  std::string name = "gaussian";
  std::function<double(double)> snr_for_rate;
  double capacity = std::numeric_limits<double>::infinity();

  static RateModel gaussian();
};

class UnachievableRate : public std::invalid_argument {
 public:
  explicit UnachievableRate(const std::string& what) : std::invalid_argument(what) {}
};

/// (1 - eps)^(1 / links).
double per_link_probability(double epsilon, std::size_t links);

ConstraintThresholds thresholds_gaussian(const WiretapProblem& p, const RatePair& r);

/// Same construction with 2^x - 1 replaced by the model's SNR map.
/// Throws UnachievableRate when R_D >= model.capacity.
ConstraintThresholds thresholds_finite_alphabet(const WiretapProblem& p, const RatePair& r,
                                                const RateModel& model);

/// Thresholds for the requested CSI mode. With perfect user CSI the users
/// need Tr(W h h*) >= snr(R_D) N0 and the eavesdropper ceiling uses the
/// per-link probability (1 - eps)^(1/J). For J = 0 the ceiling is +inf.
ConstraintThresholds thresholds_for_mode(const WiretapProblem& p, const RatePair& r,
                                         const RateModel& model, const CsiMode& mode);

/// Two-user, three-eavesdropper reference covariances for N = 3: H_1, H_2, Z_1, Z_2, Z_3.
struct ReferenceCovariances {
  std::vector<ComplexMatrix> users;
  std::vector<ComplexMatrix> eavesdroppers;
};
ReferenceCovariances reference_covariances();

/// N = 3, K = 2, the first `eavesdroppers` Z matrices, N0 = 1, eps = 0.1,
/// P_T = 12 dB. `diagonal` keeps only the diagonal of every covariance.
WiretapProblem reference_problem(std::size_t eavesdroppers, bool diagonal = false);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace wiretap
