#pragma once

#include <array>
#include <cstdint>

#include "wiretap/linalg.hpp"

namespace wiretap::rng {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A pure
/// function of (counter, key): no state, so any trial can be regenerated
/// independently of how trials are distributed across workers.
using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

Counter philox4x32(Counter ctr, Key key);

/// Uniform doubles in (0, 1) with 53 random bits.
double to_open_unit(std::uint32_t hi, std::uint32_t lo);

/// Deterministic stream of standard normals for one (seed, trial) pair.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial);

  /// Circular complex Gaussian CN(0, 1): real and imaginary parts N(0, 1/2).
  linalg::Complex complex_normal();
  double uniform();

 private:
  Key key_;
  std::uint64_t trial_;
  std::uint32_t block_ = 0;
};

}  // namespace wiretap::rng
