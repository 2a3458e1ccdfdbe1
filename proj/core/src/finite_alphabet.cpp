#include "wiretap/finite_alphabet.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace wiretap {

using linalg::Complex;

namespace {

constexpr double kMomentTol = 1e-12;

Complex mean_of(const std::vector<Complex>& s) {
  Complex m{0.0, 0.0};
  for (const auto& x : s) m += x;
  return m / static_cast<double>(s.size());
}

double energy_of(const std::vector<Complex>& s) {
  double e = 0.0;
  for (const auto& x : s) e += std::norm(x);
  return e / static_cast<double>(s.size());
}

}  // namespace

Alphabet::Alphabet(std::vector<Complex> symbols, std::string name) : symbols_(std::move(symbols)), name_(std::move(name)) {
  if (symbols_.size() < 2) throw std::invalid_argument("alphabet needs at least two symbols");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!std::isfinite(symbols_[i].real()) || !std::isfinite(symbols_[i].imag())) {
      throw std::invalid_argument("alphabet symbol is not finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(symbols_[i] - symbols_[j]) <= 1e-12) throw std::invalid_argument("alphabet symbols must be distinct");
    }
  }
  if (std::abs(mean_of(symbols_)) > kMomentTol) throw std::invalid_argument("alphabet mean must be zero");
  if (std::abs(energy_of(symbols_) - 1.0) > kMomentTol) throw std::invalid_argument("alphabet energy must be one");
}

Alphabet Alphabet::normalized(std::vector<Complex> symbols, std::string name, double* adjustment) {
  if (symbols.size() < 2) throw std::invalid_argument("alphabet needs at least two symbols");
  const Complex mean = mean_of(symbols);
  std::vector<Complex> centered;
  for (const auto& x : symbols) centered.push_back(x - mean);
  const double energy = energy_of(centered);
  if (!(energy > 0.0)) throw std::invalid_argument("alphabet has zero energy");
  const double scale = 1.0 / std::sqrt(energy);
  double moved = 0.0;
  for (std::size_t i = 0; i < centered.size(); ++i) {
    centered[i] *= scale;
    moved = std::max(moved, std::abs(centered[i] - symbols[i]));
  }
  if (adjustment) *adjustment = moved;
  return Alphabet(std::move(centered), std::move(name));
}

Alphabet Alphabet::bpsk() { return Alphabet({{1.0, 0.0}, {-1.0, 0.0}}, "bpsk"); }

Alphabet Alphabet::qpsk() {
  const double r = 1.0 / std::sqrt(2.0);
  return Alphabet({{r, r}, {-r, r}, {-r, -r}, {r, -r}}, "qpsk");
}

Alphabet Alphabet::psk8() {
  std::vector<Complex> s;
  for (int k = 0; k < 8; ++k) s.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 8.0));
  // Remove round-off in the mean so the strict moment check holds.
  return normalized(std::move(s), "8psk");
}

Alphabet Alphabet::qam16() {
  std::vector<Complex> s;
  const double scale = 1.0 / std::sqrt(10.0);
  for (int i : {-3, -1, 1, 3})
    for (int q : {-3, -1, 1, 3}) s.emplace_back(i * scale, q * scale);
  return Alphabet(std::move(s), "16qam");
}

Alphabet Alphabet::builtin(const std::string& name) {
  if (name == "bpsk") return bpsk();
  if (name == "qpsk") return qpsk();
  if (name == "8psk") return psk8();
  if (name == "16qam") return qam16();
  throw std::invalid_argument("unknown alphabet '" + name + "' (expected bpsk, qpsk, 8psk, 16qam)");
}

double Alphabet::capacity_bits() const { return std::log2(static_cast<double>(symbols_.size())); }

GaussHermite GaussHermite::make(std::size_t order) {
  if (order < 1) throw std::invalid_argument("Gauss-Hermite order must be >= 1");
  // Golub-Welsch: Jacobi matrix of the physicists' Hermite recurrence.
  const auto n = static_cast<Eigen::Index>(order);
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) {
    jacobi(i, i - 1) = jacobi(i - 1, i) = std::sqrt(static_cast<double>(i) / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  if (eig.info() != Eigen::Success) throw std::runtime_error("Gauss-Hermite eigen solve failed");
  GaussHermite rule;
  const double mass = std::sqrt(std::numbers::pi);
  for (Eigen::Index i = 0; i < n; ++i) {
    rule.nodes.push_back(eig.eigenvalues()(i));
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights.push_back(mass * v0 * v0);
  }
  return rule;
}

MiEvaluator::MiEvaluator(Alphabet alphabet, std::size_t order)
    : alphabet_(std::move(alphabet)), rule_(GaussHermite::make(order)) {}

double MiEvaluator::density_mass() const {
  double s = 0.0;
  for (double w : rule_.weights) s += w;
  return s * s / std::numbers::pi;
}

double MiEvaluator::mutual_info(double rho) const {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw std::invalid_argument("mutual_info: rho must be finite and >= 0");
  const auto& a = alphabet_.symbols();
  const std::size_t m = a.size();
  if (rho == 0.0) return 0.0;
  const double amp = std::sqrt(rho);

  // I = log2 M - (1/M) sum_l E_n[ log2 sum_m exp(|n|^2 - |n + d_lm|^2) ],
  // d_lm = sqrt(rho) (a_l - a_m).
  std::vector<double> exponents(m);
  double penalty = 0.0;
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      for (std::size_t j = 0; j < rule_.nodes.size(); ++j) {
        const Complex noise{rule_.nodes[i], rule_.nodes[j]};
        double top = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          const Complex d = amp * (a[l] - a[k]);
          exponents[k] = -std::norm(d) - 2.0 * (noise * std::conj(d)).real();
          top = std::max(top, exponents[k]);
        }
        double sum = 0.0;
        for (double e : exponents) sum += std::exp(e - top);
        penalty += rule_.weights[i] * rule_.weights[j] * (top + std::log(sum));
      }
    }
  }
  penalty /= std::numbers::pi * static_cast<double>(m) * std::numbers::ln2;
  const double value = alphabet_.capacity_bits() - penalty;
  return std::clamp(value, 0.0, alphabet_.capacity_bits());
}

double MiEvaluator::inverse(double rate) const {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::invalid_argument("inverse: rate must be finite and >= 0");
  if (rate >= alphabet_.capacity_bits()) {
    throw UnachievableRate("unachievable rate " + std::to_string(rate) + " bits for " + alphabet_.name() +
                           " (capacity " + std::to_string(alphabet_.capacity_bits()) + ")");
  }
  if (rate == 0.0) return 0.0;

  double lo = 0.0;
  double hi = 1.0;
  while (mutual_info(hi) <= rate) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9) throw UnachievableRate("unachievable within numeric range: rate " + std::to_string(rate));
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double value = mutual_info(mid);
    if (value < rate) lo = mid;
    else hi = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

RateModel MiEvaluator::rate_model() const {
  auto self = std::make_shared<MiEvaluator>(*this);
  return RateModel{alphabet_.name(), [self](double rate) { return self->inverse(rate); }, alphabet_.capacity_bits()};
}

}  // namespace wiretap
