#include "pnc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "pnc/detection.hpp"
#include "pnc/impairments.hpp"
#include "pnc/mapping.hpp"
#include "pnc/parallel.hpp"

namespace pnc {

namespace {

std::string format_number(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

BitPair random_bits(RngStream& rng) { return {std::uint8_t(rng.bit()), std::uint8_t(rng.bit())}; }

int bit_errors(BitPair decided, BitPair truth) {
  return int(decided.i_bit != truth.i_bit) + int(decided.q_bit != truth.q_bit);
}

struct FrameCount {
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
};

FrameCount perfect_frame(std::uint64_t symbols, double sigma2, RngStream& rng) {
  FrameCount count;
  for (std::uint64_t n = 0; n < symbols; ++n) {
    const BitPair b1 = random_bits(rng);
    const BitPair b3 = random_bits(rng);
    const Complex clean = qpsk_modulate(b1).to_complex() + qpsk_modulate(b3).to_complex();
    const Observation obs = add_awgn(clean, sigma2, rng);
    count.errors += bit_errors(detect_threshold(obs, 1.0), xor_bits(b1, b3));
  }
  count.bits = 2 * symbols;
  return count;
}

FrameCount phase_frame(std::uint64_t symbols, double sigma2, double range, RngStream& rng) {
  const double theta = rng.uniform(-range, range);
  const XorHypothesisSet hyp = build_hypotheses(theta);
  FrameCount count;
  for (std::uint64_t n = 0; n < symbols; ++n) {
    const BitPair b1 = random_bits(rng);
    const BitPair b3 = random_bits(rng);
    const Complex clean = superpose_phase_offset(qpsk_modulate(b1).to_complex(),
                                                 qpsk_modulate(b3).to_complex(), theta);
    const Observation obs = add_awgn(clean, sigma2, rng);
    count.errors += bit_errors(detect_ml_xor(obs, hyp), xor_bits(b1, b3));
  }
  count.bits = 2 * symbols;
  return count;
}

FrameCount time_frame(std::uint64_t symbols, double sigma2, double range, const PulseShape& pulse,
                      RngStream& rng) {
  const double tau = range > 0.0 ? rng.uniform(-range, range) : 0.0;
  const TimeOffsetSampler sampler(tau, pulse);
  std::vector<BitPair> b1(symbols), b3(symbols);
  std::vector<double> i1(symbols), i3(symbols), q1(symbols), q3(symbols);
  for (std::uint64_t n = 0; n < symbols; ++n) {
    b1[n] = random_bits(rng);
    b3[n] = random_bits(rng);
    const QpskSymbol s1 = qpsk_modulate(b1[n]);
    const QpskSymbol s3 = qpsk_modulate(b3[n]);
    i1[n] = s1.a;
    q1[n] = s1.b;
    i3[n] = s3.a;
    q3[n] = s3.b;
  }
  FrameCount count;
  for (std::uint64_t k = 0; k < symbols; ++k) {
    // Factor 2 undoes the 1/2 of the baseband model so each node has unit amplitude.
    const Complex clean(2.0 * sampler.sample_padded(i1, i3, k),
                        2.0 * sampler.sample_padded(q1, q3, k));
    const Observation obs = add_awgn(clean, sigma2, rng);
    count.errors += bit_errors(detect_threshold(obs, sampler.main_tap()), xor_bits(b1[k], b3[k]));
  }
  count.bits = 2 * symbols;
  return count;
}

void write_header(std::ostream& os, const std::string& title, const ExperimentConfig& config) {
  os << "# pnc " << command_name(config.command) << ": " << title << '\n';
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "ber") return Command::ber;
  if (name == "mi") return Command::mi;
  if (name == "penalty") return Command::penalty;
  if (name == "chain") return Command::chain;
  throw std::invalid_argument("unknown command '" + name + "'");
}

std::string command_name(Command command) {
  switch (command) {
    case Command::ber:
      return "ber";
    case Command::mi:
      return "mi";
    case Command::penalty:
      return "penalty";
    case Command::chain:
      return "chain";
  }
  return "unknown";
}

std::vector<double> ExperimentConfig::default_snr_grid() {
  std::vector<double> grid;
  for (int s = 0; s <= 12; ++s) grid.push_back(s);
  return grid;
}

double ExperimentConfig::resolved_offset_range() const {
  if (offset_range) return *offset_range;
  switch (scenario) {
    case Scenario::phase_unsync:
      return kPi / 4.0;
    case Scenario::time_unsync:
      return 0.5;
    case Scenario::perfect:
      return 0.0;
  }
  return 0.0;
}

void ExperimentConfig::validate() const {
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (command == Command::ber || command == Command::mi) {
    if (snr_grid_db.empty()) throw std::invalid_argument("snr_grid_db must not be empty");
    for (std::size_t n = 0; n < snr_grid_db.size(); ++n) {
      if (!std::isfinite(snr_grid_db[n])) throw std::invalid_argument("snr_grid_db values must be finite");
      if (n > 0 && !(snr_grid_db[n] > snr_grid_db[n - 1])) {
        throw std::invalid_argument("snr_grid_db must be strictly increasing");
      }
    }
    if (samples_per_point < 1000) {
      throw std::invalid_argument("samples_per_point must be at least 1000");
    }
    if (frame_length < 1 || frames_per_unit < 1) {
      throw std::invalid_argument("frame_length and frames_per_unit must be positive");
    }
    const double range = resolved_offset_range();
    if (scenario == Scenario::phase_unsync && !(range >= 0.0 && range <= kPi / 4.0)) {
      throw std::invalid_argument("phase offset range must lie in [0, pi/4]");
    }
    if (scenario == Scenario::time_unsync && !(range >= 0.0 && range <= 0.5)) {
      throw std::invalid_argument("time offset range must lie in [0, 0.5]");
    }
  }
  PulseShape{rolloff, truncation}.validate();
}

std::vector<BerResult> run_ber(const ExperimentConfig& config) {
  config.validate();
  const double range = config.resolved_offset_range();
  const PulseShape pulse{config.rolloff, config.truncation};
  const std::uint64_t symbols = (config.samples_per_point + 1) / 2;
  const auto frame_length = std::uint64_t(config.frame_length);
  const std::uint64_t frames = (symbols + frame_length - 1) / frame_length;
  const std::uint64_t units_per_point = (frames + config.frames_per_unit - 1) / config.frames_per_unit;
  const std::size_t points = config.snr_grid_db.size();

  std::vector<FrameCount> counts(points * units_per_point);
  parallel_for(counts.size(), config.workers, [&](std::size_t u) {
    const std::size_t point = u / units_per_point;
    const std::uint64_t unit = u % units_per_point;
    RngStream rng(config.master_seed, {std::uint64_t(point), unit});
    const double sigma2 = noise_var_from_snr_db(config.snr_grid_db[point]);
    FrameCount total;
    for (std::uint64_t f = unit * config.frames_per_unit;
         f < std::min(frames, (unit + 1) * config.frames_per_unit); ++f) {
      const std::uint64_t n = std::min(frame_length, symbols - f * frame_length);
      FrameCount c;
      switch (config.scenario) {
        case Scenario::perfect:
          c = perfect_frame(n, sigma2, rng);
          break;
        case Scenario::phase_unsync:
          c = phase_frame(n, sigma2, range, rng);
          break;
        case Scenario::time_unsync:
          c = time_frame(n, sigma2, range, pulse, rng);
          break;
      }
      total.bits += c.bits;
      total.errors += c.errors;
    }
    counts[u] = total;
  });

  const std::string label = scenario_label(config.scenario, range);
  std::vector<BerResult> out;
  for (std::size_t p = 0; p < points; ++p) {
    FrameCount sum;
    for (std::uint64_t u = 0; u < units_per_point; ++u) {
      sum.bits += counts[p * units_per_point + u].bits;
      sum.errors += counts[p * units_per_point + u].errors;
    }
    out.push_back({config.snr_grid_db[p], label, double(sum.errors) / double(sum.bits), sum.bits,
                   sum.errors, config.master_seed});
  }
  return out;
}

std::vector<MiEstimate> run_mi(const ExperimentConfig& config) {
  config.validate();
  MiCurveConfig mi;
  mi.scenario = config.scenario;
  mi.offset_range = config.resolved_offset_range();
  mi.snr_grid_db = config.snr_grid_db;
  mi.samples_per_point = config.samples_per_point;
  mi.seed = config.master_seed;
  mi.workers = config.workers;
  mi.phase_grid = config.mi_phase_grid;
  mi.time.pulse = PulseShape{config.rolloff, config.truncation};
  mi.time.frame_length = config.frame_length;
  mi.time.isi_bank_size = config.mi_isi_bank;
  if (config.scenario == Scenario::phase_unsync && mi.offset_range != kPi / 4.0) {
    throw std::invalid_argument("mutual information with phase offsets covers [-pi/4, pi/4] only");
  }
  return mi_curve(mi);
}

std::vector<ThroughputRow> throughput_summary() {
  constexpr int traditional = 4;
  const std::vector<std::pair<std::string, int>> schemes{
      {"traditional", traditional}, {"straightforward_nc", 3}, {"pnc", 2}};
  std::vector<ThroughputRow> rows;
  for (const auto& [name, slots] : schemes) {
    rows.push_back({name, slots, double(traditional) / slots});
  }
  return rows;
}

double perfect_sync_ber(double snr_db) {
  const double inv_sigma = 1.0 / std::sqrt(noise_var_from_snr_db(snr_db));
  return 1.5 * q_function(inv_sigma) - 0.5 * q_function(3.0 * inv_sigma);
}

std::optional<double> snr_at_level(std::span<const double> snr_db, std::span<const double> values,
                                   double level, bool log_ordinate) {
  if (snr_db.size() != values.size()) throw std::invalid_argument("curve lengths differ");
  auto ordinate = [log_ordinate](double v) {
    return log_ordinate ? std::log10(std::max(v, 1e-300)) : v;
  };
  const double target = ordinate(level);
  for (std::size_t n = 1; n < values.size(); ++n) {
    const double y0 = ordinate(values[n - 1]);
    const double y1 = ordinate(values[n]);
    if ((y0 - target) * (y1 - target) <= 0.0 && y0 != y1) {
      return snr_db[n - 1] + (target - y0) / (y1 - y0) * (snr_db[n] - snr_db[n - 1]);
    }
    if (y0 == target) return snr_db[n - 1];
  }
  if (!values.empty() && ordinate(values.back()) == target) return snr_db.back();
  return std::nullopt;
}

std::optional<double> horizontal_loss_db(std::span<const double> ref_snr,
                                         std::span<const double> ref_values,
                                         std::span<const double> snr,
                                         std::span<const double> values, double level,
                                         bool log_ordinate) {
  const auto ref = snr_at_level(ref_snr, ref_values, level, log_ordinate);
  const auto cur = snr_at_level(snr, values, level, log_ordinate);
  if (!ref || !cur) return std::nullopt;
  return *cur - *ref;
}

void write_ber_csv(std::ostream& os, const ExperimentConfig& config,
                   const std::vector<BerResult>& results) {
  write_header(os, "uncoded XOR bit error rate at the relay", config);
  os << "# scenario=" << scenario_name(config.scenario)
     << " offset_range=" << format_number(config.resolved_offset_range())
     << " rolloff=" << format_number(config.rolloff) << " truncation=" << config.truncation
     << " frame_length=" << config.frame_length << '\n';
  os << "snr_db,scenario,ber,num_bits,num_errors,num_workers,seed\n";
  for (const auto& r : results) {
    os << format_number(r.snr_db) << ',' << r.scenario << ',' << format_number(r.ber, 17) << ','
       << r.num_bits << ',' << r.num_errors << ',' << config.workers << ',' << r.seed << '\n';
  }
}

void write_mi_csv(std::ostream& os, const ExperimentConfig& config,
                  const std::vector<MiEstimate>& results) {
  write_header(os, "mutual information of the XOR class at the relay", config);
  os << "# scenario=" << scenario_name(config.scenario)
     << " offset_range=" << format_number(config.resolved_offset_range())
     << " rolloff=" << format_number(config.rolloff) << " truncation=" << config.truncation
     << " phase_grid=" << config.mi_phase_grid << " isi_bank=" << config.mi_isi_bank << '\n';
  os << "snr_db,scenario,mi_bits_per_dim,num_samples,num_workers,seed\n";
  for (const auto& r : results) {
    os << format_number(r.snr_db) << ',' << r.scenario << ',' << format_number(r.mi_bits_per_dim)
       << ',' << r.num_samples << ',' << r.num_workers << ',' << r.seed << '\n';
  }
}

void write_penalty_csv(std::ostream& os, const ExperimentConfig& config) {
  const SinrContext ctx{config.snr0_db, config.rolloff, config.truncation};
  const auto curves = emit_penalty_curves({config.phase_points, config.time_points}, ctx);
  write_header(os, "phase offset power penalty bound and timing offset SINR penalty", config);
  os << "# rolloff=" << format_number(config.rolloff) << " snr0_db=" << format_number(config.snr0_db)
     << " truncation=" << config.truncation << '\n';
  os << "curve,parameter,value,penalty_db\n";
  const char* names[] = {"phase", "time"};
  for (std::size_t c = 0; c < curves.size(); ++c) {
    for (const auto& [x, y] : curves[c].points) {
      os << names[c] << ',' << curves[c].parameter_name << ',' << format_number(x) << ','
         << format_number(y) << '\n';
    }
  }
  double worst = 0.0;
  for (const auto& pt : curves[1].points) worst = std::min(worst, pt.second);
  const double avg_phase = avg_phase_penalty_db();
  const double sir_traditional = sir_1d_traditional_db(config.alpha);
  os << "# avg_phase_penalty_db=" << format_number(avg_phase) << '\n';
  os << "# worst_sinr_penalty_db=" << format_number(worst) << '\n';
  os << "# avg_sinr_penalty_db=" << format_number(avg_sinr_penalty_db(ctx)) << '\n';
  os << "# sir_1d_traditional_db=" << format_number(sir_traditional)
     << " alpha=" << format_number(config.alpha) << '\n';
  os << "# sir_1d_pnc_db=" << format_number(config.pnc_sir_1d_db) << " (input constant)\n";
  os << "# sir_1d_pnc_after_avg_phase_penalty_db="
     << format_number(config.pnc_sir_1d_db + avg_phase) << '\n';
  for (const auto& row : throughput_summary()) {
    os << "# throughput " << row.scheme << " slots=" << row.slots
       << " relative=" << format_number(row.relative_throughput) << '\n';
  }
}

void write_chain(std::ostream& os, const ExperimentConfig& config) {
  ChainConfig chain{config.num_nodes, config.bg_sync_time, config.period, config.local_errors,
                    config.fast_sync};
  const ChainPlan plan = make_plan(chain);
  write_header(os, "N-node chain synchronization schedule", config);
  write_plan(os, plan);
}

void write_throughput(std::ostream& os) {
  os << "scheme,slots,relative_throughput\n";
  for (const auto& row : throughput_summary()) {
    os << row.scheme << ',' << row.slots << ',' << format_number(row.relative_throughput) << '\n';
  }
}

void run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!config.output_path.empty()) {
    file.open(config.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output file '" + config.output_path + "'");
    os = &file;
  }
  switch (config.command) {
    case Command::ber:
      write_ber_csv(*os, config, run_ber(config));
      break;
    case Command::mi:
      write_mi_csv(*os, config, run_mi(config));
      break;
    case Command::penalty:
      write_penalty_csv(*os, config);
      break;
    case Command::chain:
      write_chain(*os, config);
      break;
  }
  os->flush();
  if (!*os) throw std::runtime_error("failed writing output");
}

}  // namespace pnc
