#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pnc {

/// Tabulated penalty versus one impairment parameter.
struct PenaltyCurve {
  std::string parameter_name;
  std::vector<std::pair<double, double>> points;  // (parameter, penalty dB)

  /// Throws std::logic_error unless parameters strictly increase and all values are finite.
  void validate() const;
};

/// Reference operating point for the timing-offset penalty.
struct SinrContext {
  double snr0_db = 10.0;
  double rolloff = 0.5;
  int truncation_symbols = 16;

  void validate() const;
  double noise_var() const;
};

/// Minimum squared distance between XOR classes, 4(1 - cos)^2 + 4(1 - sin)^2.
/// Defined on the folded range; |theta| > pi/4 is rejected.
double min_distance_sq(double theta);

/// Upper bound on the phase-offset power penalty, 10 log10(d^2 / 4).
double phase_penalty_db(double theta);

/// Linear value of the phase penalty bound averaged over a uniform offset in [-pi/4, pi/4].
double avg_phase_penalty_linear();
double avg_phase_penalty_db();

/// SIR of the conventional one-dimensional chain schedule with path-loss exponent alpha.
/// The interference series stops once a term drops below 1e-12 or after max_terms terms.
double sir_1d_traditional_db(double alpha, int max_terms = 100000);

/// Variance of the ISI term for i.i.d. equiprobable +-1 symbols (unit amplitudes).
double isi_variance(double dt_frac, const SinrContext& ctx);

/// Linear SINR relative to unit transmit power: p(dt/2)^2 / (isi + sigma_n^2).
double sinr_linear(double dt_frac, const SinrContext& ctx);

/// 20 log10 p(dt/2) - 10 log10((isi + sigma_n^2) / sigma_n^2).
double sinr_penalty_db(double dt_frac, const SinrContext& ctx);

/// 10 log10 of the SINR averaged on the linear scale over dt/T in [-1/2, 1/2],
/// minus the reference SNR. Composite Simpson on num_points nodes (made odd).
double avg_sinr_penalty_db(const SinrContext& ctx, int num_points = 1001);

struct PenaltyGrid {
  int phase_points = 91;
  int time_points = 101;
};

/// Tabulates the phase bound over [-pi/4, pi/4] and the SINR penalty over dt/T in [-1/2, 1/2].
std::vector<PenaltyCurve> emit_penalty_curves(const PenaltyGrid& grid, const SinrContext& ctx);

}  // namespace pnc
