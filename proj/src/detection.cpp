#include "pnc/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pnc {

BitPair detect_threshold(const Observation& obs, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("threshold scale must be positive");
  return {std::uint8_t(std::abs(obs.i_sample) > scale ? 0 : 1),
          std::uint8_t(std::abs(obs.q_sample) > scale ? 0 : 1)};
}

XorHypothesisSet build_hypotheses(double theta) {
  XorHypothesisSet hyp;
  hyp.theta = theta;
  std::array<int, 4> fill{};
  for (int c1 = 0; c1 < 4; ++c1) {
    for (int c3 = 0; c3 < 4; ++c3) {
      const BitPair b1 = class_bits(c1);
      const BitPair b3 = class_bits(c3);
      const int cls = class_index(xor_bits(b1, b3));
      hyp.points[cls][fill[cls]++] = superpose_phase_offset(
          qpsk_modulate(b1).to_complex(), qpsk_modulate(b3).to_complex(), theta);
    }
  }
  return hyp;
}

BitPair detect_nearest_xor(Complex r, const XorHypothesisSet& hyp) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int c = 0; c < 4; ++c) {
    for (const auto& p : hyp.points[c]) {
      const double d = std::norm(r - p);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
  }
  return class_bits(best);
}

BitPair detect_ml_xor(const Observation& obs, const XorHypothesisSet& hyp) {
  if (!(obs.noise_var >= 0.0)) throw std::invalid_argument("noise variance must be non-negative");
  const Complex r = obs.value();
  if (obs.noise_var == 0.0) return detect_nearest_xor(r, hyp);

  // log sum_p exp(-|r-p|^2 / (2 sigma^2)) per class, shifted by the global maximum.
  std::array<std::array<double, 4>, 4> exponents{};
  double peak = -std::numeric_limits<double>::infinity();
  const double inv = 1.0 / (2.0 * obs.noise_var);
  for (int c = 0; c < 4; ++c) {
    for (int m = 0; m < 4; ++m) {
      exponents[c][m] = -std::norm(r - hyp.points[c][m]) * inv;
      peak = std::max(peak, exponents[c][m]);
    }
  }
  int best = 0;
  double best_score = -1.0;
  for (int c = 0; c < 4; ++c) {
    double score = 0.0;
    for (double e : exponents[c]) score += std::exp(e - peak);
    if (score > best_score) {
      best_score = score;
      best = c;
    }
  }
  return class_bits(best);
}

double min_interclass_distance_sq(const XorHypothesisSet& hyp) {
  double best = std::numeric_limits<double>::infinity();
  for (int c = 0; c < 4; ++c) {
    for (int e = c + 1; e < 4; ++e) {
      for (const auto& p : hyp.points[c]) {
        for (const auto& q : hyp.points[e]) best = std::min(best, std::norm(p - q));
      }
    }
  }
  return best;
}

}  // namespace pnc
