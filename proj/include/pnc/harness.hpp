#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnc/analysis.hpp"
#include "pnc/chain.hpp"
#include "pnc/info.hpp"

namespace pnc {

enum class Command { ber, mi, penalty, chain };

Command parse_command(const std::string& name);
std::string command_name(Command command);

/// Everything one CLI invocation needs. Statistical commands count
/// samples_per_point in XOR bits (ber) or QPSK symbols (mi).
struct ExperimentConfig {
  Command command = Command::ber;
  Scenario scenario = Scenario::perfect;
  std::vector<double> snr_grid_db = default_snr_grid();
  /// phase_unsync: |theta| bound in rad (default pi/4); time_unsync: |dt/T| bound.
  std::optional<double> offset_range;
  std::uint64_t samples_per_point = 1000000;
  double rolloff = 0.5;
  int truncation = 16;
  std::uint64_t master_seed = 1;
  int workers = 1;
  std::string output_path;

  int frame_length = 1000;
  std::uint64_t frames_per_unit = 50;
  int mi_phase_grid = 20;
  int mi_isi_bank = 256;

  double snr0_db = 10.0;
  double alpha = 4.0;
  double pnc_sir_1d_db = 15.3;  // input constant, not recomputed
  int phase_points = 91;
  int time_points = 101;

  int num_nodes = 5;
  double bg_sync_time = 1.0;
  double period = 100.0;
  ErrorTriple local_errors{0.1, 0.02, 0.001};
  bool fast_sync = false;

  static std::vector<double> default_snr_grid();
  double resolved_offset_range() const;
  void validate() const;
};

struct BerResult {
  double snr_db = 0.0;
  std::string scenario;
  double ber = 0.0;
  std::uint64_t num_bits = 0;
  std::uint64_t num_errors = 0;
  std::uint64_t seed = 0;
};

/// Monte-Carlo XOR bit error rate at the relay. Offsets are drawn once per frame:
/// perfect uses the threshold rule; phase_unsync draws theta uniformly and applies the
/// ML rule with theta known; time_unsync draws dt uniformly, samples at the middle of the
/// offset and thresholds at p(dt/2).
std::vector<BerResult> run_ber(const ExperimentConfig& config);

std::vector<MiEstimate> run_mi(const ExperimentConfig& config);

struct ThroughputRow {
  std::string scheme;
  int slots = 0;
  double relative_throughput = 0.0;
};

/// Slots per exchanged frame pair and throughput relative to the traditional schedule.
std::vector<ThroughputRow> throughput_summary();

/// Analytic XOR BER with perfect sync: 1.5 Q(1/sigma) - 0.5 Q(3/sigma).
double perfect_sync_ber(double snr_db);

/// SNR at which a curve crosses `level`, by linear interpolation between bracketing points
/// (in log10 of the ordinate when log_ordinate is set). Empty when not bracketed.
std::optional<double> snr_at_level(std::span<const double> snr_db, std::span<const double> values,
                                   double level, bool log_ordinate);

/// Horizontal gap (dB) of `curve` behind `reference` at a fixed ordinate.
std::optional<double> horizontal_loss_db(std::span<const double> ref_snr,
                                         std::span<const double> ref_values,
                                         std::span<const double> snr,
                                         std::span<const double> values, double level,
                                         bool log_ordinate);

void write_ber_csv(std::ostream& os, const ExperimentConfig& config,
                   const std::vector<BerResult>& results);
void write_mi_csv(std::ostream& os, const ExperimentConfig& config,
                  const std::vector<MiEstimate>& results);
void write_penalty_csv(std::ostream& os, const ExperimentConfig& config);
void write_chain(std::ostream& os, const ExperimentConfig& config);
void write_throughput(std::ostream& os);

/// Runs config.command and writes its output to config.output_path (stdout when empty).
void run_experiment(const ExperimentConfig& config);

/// Command-line entry point: pnc ber|mi|penalty|chain [--config FILE] [--seed U64]
/// [--workers N] [--out PATH] ... Returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace pnc
