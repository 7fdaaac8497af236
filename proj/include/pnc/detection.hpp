#pragma once

#include <array>

#include "pnc/impairments.hpp"
#include "pnc/mapping.hpp"

namespace pnc {

/// The 16 noiseless superpositions s1 + s3 exp(j theta), grouped by XOR class
/// (class_index of s1 xor s3). Immutable once built.
struct XorHypothesisSet {
  double theta = 0.0;
  std::array<std::array<Complex, 4>, 4> points{};
};

/// Per-dimension midpoint rule between levels 0 and +-2*scale: bit 0 when
/// |sample| > scale, bit 1 otherwise.
BitPair detect_threshold(const Observation& obs, double scale);

XorHypothesisSet build_hypotheses(double theta);

/// Maximum-likelihood XOR class under equal priors, using the full Gaussian
/// mixture of each class. Ties resolve to the lowest class index. With zero
/// noise variance the nearest constellation point decides.
BitPair detect_ml_xor(const Observation& obs, const XorHypothesisSet& hyp);

/// Decision of the nearest hypothesis point (max-log limit of detect_ml_xor).
BitPair detect_nearest_xor(Complex r, const XorHypothesisSet& hyp);

/// Smallest squared distance between points of different XOR classes.
double min_interclass_distance_sq(const XorHypothesisSet& hyp);

}  // namespace pnc
