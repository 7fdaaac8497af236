#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pnc/mapping.hpp"
#include "pnc/rng.hpp"

namespace pnc {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Carrier and symbol-timing misalignment of node 3 relative to node 1.
struct SyncOffsets {
  double delta_theta = 0.0;       // carrier phase offset, rad
  double delta_omega = 0.0;       // frequency offset accumulated per symbol, rad
  double time_offset_frac = 0.0;  // symbol-time offset as a fraction of T, in [-0.5, 0.5]
  double symbol_duration = 1.0;   // T, seconds

  void validate() const;
  /// Phase and timing impairments are simulated in separate scenarios.
  void require_single_impairment() const;
};

/// Raised-cosine pulse with a finite ISI window of +-truncation_symbols.
struct PulseShape {
  double rolloff = 0.5;
  int truncation_symbols = 16;

  void validate() const;
  double operator()(double t, double symbol_duration = 1.0) const;
};

/// One complex baseband sample at the relay; noise_var is per real dimension.
struct Observation {
  double i_sample = 0.0;
  double q_sample = 0.0;
  double noise_var = 0.0;

  Complex value() const { return {i_sample, q_sample}; }
};

struct FoldedPhase {
  double theta = 0.0;  // in [-pi/4, pi/4)
  int quadrant = 0;    // 0..3
};

/// Reduces a phase offset to [-pi/4, pi/4) using the quarter-turn symmetry of QPSK.
/// theta == folded.theta + folded.quadrant * pi/2 (mod 2 pi).
FoldedPhase fold_phase(double theta);

/// Multiplies a QPSK point by j^quadrant, exactly.
Complex rotate_symbol(Complex symbol, int quadrant);

/// Noiseless relay superposition s1 + s3 * exp(j theta).
Complex superpose_phase_offset(Complex s1, Complex s3, double theta);

/// Raised-cosine pulse p(t); the removable singularities at t = 0 and
/// |t| = T / (2 beta) evaluate to their limits.
double raised_cosine(double t, double symbol_duration, double rolloff);

/// Relay sample at the middle of the timing offset, including the 1/2 amplitude
/// factor of the baseband model:
///   (a1[k] + a3[k]) p(dt/2) / 2
///     + 1/2 sum_{0 < |k-l| <= L} a1[l] p((k-l)T + dt/2) + a3[l] p((k-l)T - dt/2).
/// Throws std::out_of_range when [k-L, k+L] is not covered by both sequences.
double sample_with_time_offset(std::span<const double> a1, std::span<const double> a3,
                               std::size_t k, const SyncOffsets& offsets,
                               const PulseShape& pulse);

/// The same relay sample with the pulse taps evaluated once per offset.
class TimeOffsetSampler {
 public:
  TimeOffsetSampler(double time_offset_frac, const PulseShape& pulse);

  /// p(dt/2), the amplitude of each node's current symbol at the sampling instant.
  double main_tap() const { return taps1_[window_]; }
  int window() const { return window_; }

  /// Same value as sample_with_time_offset; symbols outside the sequences are zero.
  double sample_padded(std::span<const double> a1, std::span<const double> a3,
                       std::size_t k) const;

  /// ISI term of one sample with fresh equiprobable +-1 neighbors, 1/2 factor included.
  double random_isi(RngStream& rng) const;

  /// Sum of squared ISI taps of both nodes (ISI variance for unit amplitudes, no 1/2 factor).
  double isi_tap_energy() const;

 private:
  int window_;
  std::vector<double> taps1_;  // p(dT + dt/2) for d = -L..L
  std::vector<double> taps3_;  // p(dT - dt/2)
};

/// Adds zero-mean Gaussian noise of variance noise_var to each real dimension.
Observation add_awgn(Complex clean, double noise_var, RngStream& rng);

/// Per-symbol folded phases for theta_k = delta_theta + k * delta_omega.
std::vector<FoldedPhase> phase_ramp(const SyncOffsets& offsets, std::size_t num_symbols);

/// Frame superposition with an explicit per-symbol phase sequence (ramps or dither).
std::vector<Complex> superpose_frame(std::span<const QpskSymbol> s1,
                                     std::span<const QpskSymbol> s3,
                                     std::span<const double> thetas);

}  // namespace pnc
