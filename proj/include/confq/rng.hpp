#pragma once

#include <cmath>
#include <cstdint>

namespace confq {

// Counter-derived random stream (splitmix64).  One stream per Monte-Carlo
// trial, derived from (master seed, trial index), so estimates do not depend
// on how trials are partitioned across workers.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : state_(mix(seed + kGolden)) {}

  static TrialRng for_trial(std::uint64_t master_seed, std::uint64_t trial) {
    return TrialRng(mix(master_seed) + kGolden * (trial + 1));
  }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double next_open01() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Inverse-CDF exponential draw; strictly positive and finite.
  double next_exponential(double mean) {
    return -mean * std::log(next_open01());
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace confq
