#pragma once

#include <string>
#include <vector>

#include "wiretap/problem.hpp"

namespace wiretap {

/// Equiprobable complex constellation with zero mean and unit average energy.
class Alphabet {
 public:
  /// Throws std::invalid_argument unless M >= 2, symbols are distinct, and the
  /// set already has zero mean and unit energy within 1e-12.
  explicit Alphabet(std::vector<linalg::Complex> symbols, std::string name = "custom");

  /// Shifts to zero mean and scales to unit energy first. `adjustment` receives
  /// the largest symbol displacement introduced.
  static Alphabet normalized(std::vector<linalg::Complex> symbols, std::string name, double* adjustment = nullptr);

  static Alphabet bpsk();
  static Alphabet qpsk();
  static Alphabet psk8();
  static Alphabet qam16();
  /// "bpsk", "qpsk", "8psk", "16qam".
  static Alphabet builtin(const std::string& name);

  const std::vector<linalg::Complex>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  double capacity_bits() const;
  const std::string& name() const { return name_; }

 private:
  std::vector<linalg::Complex> symbols_;
  std::string name_;
};

/// Nodes and weights for int exp(-x^2) f(x) dx.
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;

  static GaussHermite make(std::size_t order);
};

/// I(rho) for the alphabet under unit-variance circular Gaussian noise
/// p_n(t) = exp(-|t|^2) / pi, by product Gauss-Hermite quadrature.
/// Immutable after construction; safe to share across threads.
class MiEvaluator {
 public:
  explicit MiEvaluator(Alphabet alphabet, std::size_t order = 32);

  /// Bits; throws std::invalid_argument for negative or non-finite rho.
  double mutual_info(double rho) const;

  /// Smallest rho with mutual_info(rho) == rate, by bisection. Throws
  /// UnachievableRate when rate >= log2 M or no bracket exists below 1e9.
  double inverse(double rate) const;

  /// Quadrature approximation of int p_n = 1.
  double density_mass() const;

  const Alphabet& alphabet() const { return alphabet_; }

  /// Rate model mapping a target rate to the SNR achieving it with this alphabet.
  RateModel rate_model() const;

 private:
  Alphabet alphabet_;
  GaussHermite rule_;
};

}  // namespace wiretap
