#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace pnc {

/// Seeded random stream owned by one worker.
///
/// Streams are derived from a master seed plus a path of indices (SNR point,
/// batch, ...), so the draws of a work unit do not depend on which thread runs
/// it or how many threads exist.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path = {});
  RngStream(std::uint64_t master_seed, std::span<const std::uint64_t> path);

  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_(engine_); }
  double normal() { return normal_(engine_); }
  std::uint64_t bits64() { return engine_(); }
  int bit() { return int(engine_() >> 63); }
  /// Equiprobable -1 or +1.
  double sign() { return bit() ? 1.0 : -1.0; }
  int index(int n) { return int(uniform_(engine_) * n); }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace pnc
