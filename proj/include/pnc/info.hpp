#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pnc/impairments.hpp"
#include "pnc/rng.hpp"

namespace pnc {

enum class Scenario { perfect, phase_unsync, time_unsync };

Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario scenario);
/// CSV label; time offsets carry their range, e.g. "time_unsync(0.5)".
std::string scenario_label(Scenario scenario, double offset_range);

/// Mutual information between the relay sample and the XOR class, in bits per real dimension.
struct MiEstimate {
  double snr_db = 0.0;
  std::string scenario;
  double mi_bits_per_dim = 0.0;
  std::uint64_t num_samples = 0;
  int num_workers = 1;
  std::uint64_t seed = 0;
};

/// Noise variance per real dimension for SNR = 1 / sigma^2.
double noise_var_from_snr_db(double snr_db);

/// Monte-Carlo estimate of I(s1 xor s3; r | theta) / 2 with r = s1 + s3 exp(j theta) + noise.
double mi_given_theta(double snr_db, double theta, std::uint64_t num_samples, RngStream& rng);

/// Phase offset uniform over [-pi/4, pi/4]: the average of mi_given_theta over the midpoints
/// (k + 1/2) / num_grid * pi/4, relying on the theta <-> -theta symmetry.
double mi_phase_unsync(double snr_db, int num_grid, std::uint64_t num_samples, RngStream& rng);

struct TimeMiOptions {
  PulseShape pulse{};
  int frame_length = 1000;  // samples sharing one timing-offset draw
  int isi_bank_size = 256;  // neighbor realizations marginalized per frame
};

/// Timing offset uniform over [-max_offset, max_offset] T, drawn per frame. The relay knows
/// the offset; neighbor symbols are unknown and their ISI is marginalized by Monte Carlo.
/// num_samples counts QPSK symbols, i.e. 2 * num_samples real-dimension samples.
double mi_time_unsync(double snr_db, double max_offset, std::uint64_t num_samples, RngStream& rng,
                      const TimeMiOptions& options = {});

struct MiCurveConfig {
  Scenario scenario = Scenario::perfect;
  double offset_range = 0.5;  // dt/T bound for time_unsync; unused otherwise
  std::vector<double> snr_grid_db;
  std::uint64_t samples_per_point = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
  int phase_grid = 20;
  std::uint64_t batch_size = 10000;
  TimeMiOptions time{};
};

/// One estimate per SNR point. Work units own derived streams and reduce in a fixed
/// order, so the output is a function of the config alone.
std::vector<MiEstimate> mi_curve(const MiCurveConfig& config);

}  // namespace pnc
