#include "wiretap/problem.hpp"

#include <cmath>
#include <sstream>

namespace wiretap {

namespace {

constexpr double kHermitianTol = 1e-9;

void check_covariances(const std::vector<ComplexMatrix>& mats, const char* label, std::size_t n,
                       double psd_tol, std::vector<std::string>& out) {
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const ComplexMatrix& m = mats[i];
    const std::string tag = std::string(label) + "[" + std::to_string(i) + "]";
    if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n) {
      out.push_back(tag + ": expected " + std::to_string(n) + "x" + std::to_string(n) + ", got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
      continue;
    }
    if (!linalg::all_finite(m)) {
      out.push_back(tag + ": non-finite entry");
      continue;
    }
    if (linalg::hermitian_defect(m) > kHermitianTol) {
      out.push_back(tag + ": covariance not Hermitian");
      continue;
    }
    if (!linalg::is_psd(m, psd_tol)) {
      std::ostringstream msg;
      msg << tag << ": covariance not PSD (min eigenvalue " << linalg::min_eigenvalue(m) << ")";
      out.push_back(msg.str());
    }
  }
}

double gaussian_snr(double rate) { return std::expm1(rate * std::log(2.0)); }

// -ln((1 - eps)^(1/links)), the exponential-tail divisor for user floors.
double user_divisor(double epsilon, std::size_t links) {
  return -std::log1p(-epsilon) / static_cast<double>(links);
}

// -ln(1 - (1 - eps)^(1/links)), the divisor for eavesdropper ceilings.
double eve_divisor(double epsilon, std::size_t links) {
  const double one_minus_p = -std::expm1(std::log1p(-epsilon) / static_cast<double>(links));
  return -std::log(one_minus_p);
}

void check_rate_against(const RatePair& r, const RateModel& model) {
  require_valid(r);
  if (!(r.code_rate < model.capacity)) {
    std::ostringstream msg;
    msg << "rate unachievable by alphabet: R_D = " << r.code_rate << " >= capacity " << model.capacity
        << " bits (" << model.name << ")";
    throw UnachievableRate(msg.str());
  }
}

}  // namespace

ValidationReport validate_problem(const WiretapProblem& p, double psd_tol) {
  ValidationReport report;
  auto& v = report.violations;
  if (p.antennas < 1) v.push_back("antenna count N must be >= 1");
  if (p.users() < 1) v.push_back("user count K must be >= 1");
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) v.push_back("epsilon out of range (0, 1)");
  if (!(p.power_budget > 0.0) || !std::isfinite(p.power_budget)) v.push_back("power budget P_T must be > 0");
  if (!(p.noise_power > 0.0) || !std::isfinite(p.noise_power)) v.push_back("noise power N0 must be > 0");
  if (p.antennas >= 1) {
    check_covariances(p.user_cov, "H", p.antennas, psd_tol, v);
    check_covariances(p.eve_cov, "Z", p.antennas, psd_tol, v);
  }
  return report;
}

void require_valid(const WiretapProblem& p) {
  const ValidationReport report = validate_problem(p);
  if (report.ok()) return;
  std::string msg = "invalid problem:";
  for (const auto& s : report.violations) msg += " " + s + ";";
  throw std::invalid_argument(msg);
}

void require_valid(const RatePair& r) {
  if (!std::isfinite(r.code_rate) || !std::isfinite(r.secrecy_rate)) {
    throw std::invalid_argument("rates must be finite");
  }
  if (r.secrecy_rate < 0.0) throw std::invalid_argument("secrecy rate R_s must be >= 0");
  if (r.code_rate < r.secrecy_rate) throw std::invalid_argument("code rate R_D must be >= R_s");
}

bool is_perfect(const CsiMode& mode) { return std::holds_alternative<PerfectUserCsi>(mode); }

std::string csi_mode_name(const CsiMode& mode) { return is_perfect(mode) ? "perfect_users" : "statistical"; }

RateModel RateModel::gaussian() { return RateModel{"gaussian", gaussian_snr, std::numeric_limits<double>::infinity()}; }

double per_link_probability(double epsilon, std::size_t links) {
  return std::exp(std::log1p(-epsilon) / static_cast<double>(links));
}

ConstraintThresholds thresholds_gaussian(const WiretapProblem& p, const RatePair& r) {
  return thresholds_finite_alphabet(p, r, RateModel::gaussian());
}

ConstraintThresholds thresholds_finite_alphabet(const WiretapProblem& p, const RatePair& r,
                                                const RateModel& model) {
  check_rate_against(r, model);
  const std::size_t links = p.users() + p.eavesdroppers();
  if (links == 0) throw std::invalid_argument("thresholds need K + J >= 1");
  ConstraintThresholds t;
  t.per_link_prob = per_link_probability(p.epsilon, links);
  t.floor = model.snr_for_rate(r.code_rate) * p.noise_power / user_divisor(p.epsilon, links);
  t.ceiling = model.snr_for_rate(r.code_rate - r.secrecy_rate) * p.noise_power / eve_divisor(p.epsilon, links);
  return t;
}

ConstraintThresholds thresholds_for_mode(const WiretapProblem& p, const RatePair& r, const RateModel& model,
                                         const CsiMode& mode) {
  if (!is_perfect(mode)) return thresholds_finite_alphabet(p, r, model);
  check_rate_against(r, model);
  ConstraintThresholds t;
  t.floor = model.snr_for_rate(r.code_rate) * p.noise_power;
  const std::size_t j = p.eavesdroppers();
  if (j == 0) {
    t.per_link_prob = 1.0;
    t.ceiling = std::numeric_limits<double>::infinity();
  } else {
    t.per_link_prob = per_link_probability(p.epsilon, j);
    t.ceiling = model.snr_for_rate(r.code_rate - r.secrecy_rate) * p.noise_power / eve_divisor(p.epsilon, j);
  }
  return t;
}

ReferenceCovariances reference_covariances() {
  using C = linalg::Complex;
  auto mat = [](std::initializer_list<C> e) {
    ComplexMatrix m(3, 3);
    auto it = e.begin();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = *it++;
    return m;
  };
  ReferenceCovariances ref;
  ref.users.push_back(mat({{2.1670, 0}, {0.1806, 0.0183}, {-0.1453, -0.3101},
                           {0.1806, -0.0183}, {1.9165, 0}, {0.0696, 0.3374},
                           {-0.1453, 0.3101}, {0.0696, -0.3374}, {1.4180, 0}}));
  ref.users.push_back(mat({{1.9834, 0}, {-0.2001, 0.0250}, {0.0470, -0.3424},
                           {-0.2001, -0.0250}, {1.3867, 0}, {0.0149, -0.2083},
                           {0.0470, 0.3424}, {0.0149, 0.2083}, {1.4323, 0}}));
  ref.eavesdroppers.push_back(mat({{0.0043, 0}, {0.0010, -0.0003}, {0.0013, 0.0009},
                                   {0.0010, 0.0003}, {0.0074, 0}, {-0.0011, -0.0029},
                                   {0.0013, -0.0009}, {-0.0011, 0.0029}, {0.0079, 0}}));
  ref.eavesdroppers.push_back(mat({{0.0069, 0}, {0.0004, -0.0029}, {-0.0014, 0.0014},
                                   {0.0004, 0.0029}, {0.0070, 0}, {-0.0019, -0.0002},
                                   {-0.0014, -0.0014}, {-0.0019, 0.0002}, {0.0086, 0}}));
  ref.eavesdroppers.push_back(mat({{0.0090, 0}, {-0.0026, 0.0006}, {0.0011, -0.0009},
                                   {-0.0026, -0.0006}, {0.0064, 0}, {-0.0013, 0.0018},
                                   {0.0011, 0.0009}, {-0.0013, -0.0018}, {0.0054, 0}}));
  return ref;
}

WiretapProblem reference_problem(std::size_t eavesdroppers, bool diagonal) {
  const ReferenceCovariances ref = reference_covariances();
  if (eavesdroppers > ref.eavesdroppers.size()) {
    throw std::invalid_argument("reference problem has at most 3 eavesdroppers");
  }
  auto maybe_diag = [diagonal](const ComplexMatrix& m) -> ComplexMatrix {
    if (!diagonal) return m;
    return ComplexMatrix(m.diagonal().asDiagonal());
  };
  WiretapProblem p;
  p.antennas = 3;
  p.noise_power = 1.0;
  p.epsilon = 0.1;
  p.power_budget = db_to_linear(12.0);
  for (const auto& h : ref.users) p.user_cov.push_back(maybe_diag(h));
  for (std::size_t j = 0; j < eavesdroppers; ++j) p.eve_cov.push_back(maybe_diag(ref.eavesdroppers[j]));
  return p;
}

}  // namespace wiretap
