#include "pnc/info.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pnc/detection.hpp"
#include "pnc/parallel.hpp"

namespace pnc {

namespace {

constexpr double kLog2e = 1.4426950408889634;

struct LabeledPoint {
  Complex point;
  int cls;
};

std::array<LabeledPoint, 16> labeled_points(double theta) {
  const XorHypothesisSet hyp = build_hypotheses(theta);
  std::array<LabeledPoint, 16> out{};
  for (int c = 0; c < 4; ++c) {
    for (int m = 0; m < 4; ++m) out[4 * c + m] = {hyp.points[c][m], c};
  }
  return out;
}

void require_samples(std::uint64_t num_samples) {
  if (num_samples < 1) throw std::invalid_argument("at least one sample is required");
}

// Sum of log2 p(r|x)/p(r) over `count` scalar samples of one frame with timing offset tau.
double time_frame_information(double sigma2, double tau, std::uint64_t count, RngStream& rng,
                              const TimeMiOptions& options, std::vector<double>& bank,
                              std::vector<double>& exponents) {
  const TimeOffsetSampler sampler(tau, options.pulse);
  const double level = 2.0 * sampler.main_tap();
  const auto bank_size = std::size_t(options.isi_bank_size);
  bank.resize(bank_size);
  exponents.resize(3 * bank_size);
  // Observations are normalized by 2 so each node contributes unit amplitude at dt = 0.
  for (auto& b : bank) b = 2.0 * sampler.random_isi(rng);

  const double sigma = std::sqrt(sigma2);
  const double inv = 1.0 / (2.0 * sigma2);
  double total = 0.0;
  for (std::uint64_t n = 0; n < count; ++n) {
    const double a1 = rng.sign();
    const double a3 = rng.sign();
    const double r = (a1 + a3) * sampler.main_tap() + 2.0 * sampler.random_isi(rng) +
                     sigma * rng.normal();
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < bank_size; ++m) {
      const double u = r - bank[m];
      const double em = -(u + level) * (u + level) * inv;
      const double e0 = -u * u * inv;
      const double ep = -(u - level) * (u - level) * inv;
      exponents[3 * m] = em;
      exponents[3 * m + 1] = e0;
      exponents[3 * m + 2] = ep;
      peak = std::max({peak, em, e0, ep});
    }
    double equal_bits = 0.0;  // XOR 0: levels +-level, each with probability 1/2
    double differ = 0.0;      // XOR 1: level 0
    for (std::size_t m = 0; m < bank_size; ++m) {
      equal_bits += std::exp(exponents[3 * m] - peak) + std::exp(exponents[3 * m + 2] - peak);
      differ += std::exp(exponents[3 * m + 1] - peak);
    }
    const double p0 = 0.5 * equal_bits;
    const double p1 = differ;
    const double pr = 0.5 * (p0 + p1);
    total += std::log((a1 != a3 ? p1 : p0) / pr) * kLog2e;
  }
  return total;
}

}  // namespace

Scenario parse_scenario(const std::string& name) {
  if (name == "perfect") return Scenario::perfect;
  if (name == "phase_unsync") return Scenario::phase_unsync;
  if (name == "time_unsync") return Scenario::time_unsync;
  throw std::invalid_argument("unknown scenario '" + name +
                              "' (expected perfect, phase_unsync or time_unsync)");
}

std::string scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::perfect:
      return "perfect";
    case Scenario::phase_unsync:
      return "phase_unsync";
    case Scenario::time_unsync:
      return "time_unsync";
  }
  return "unknown";
}

std::string scenario_label(Scenario scenario, double offset_range) {
  if (scenario != Scenario::time_unsync) return scenario_name(scenario);
  std::ostringstream os;
  os << "time_unsync(" << offset_range << ")";
  return os.str();
}

double noise_var_from_snr_db(double snr_db) {
  if (!std::isfinite(snr_db)) throw std::invalid_argument("SNR must be finite");
  return std::pow(10.0, -snr_db / 10.0);
}

double mi_given_theta(double snr_db, double theta, std::uint64_t num_samples, RngStream& rng) {
  require_samples(num_samples);
  const double sigma2 = noise_var_from_snr_db(snr_db);
  const double sigma = std::sqrt(sigma2);
  const double inv = 1.0 / (2.0 * sigma2);
  const auto points = labeled_points(theta);

  double total = 0.0;
  std::array<double, 16> exponents{};
  for (std::uint64_t n = 0; n < num_samples; ++n) {
    const auto& truth = points[std::size_t(rng.index(16))];
    const Complex r = truth.point + Complex(sigma * rng.normal(), sigma * rng.normal());
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < 16; ++m) {
      exponents[m] = -std::norm(r - points[m].point) * inv;
      peak = std::max(peak, exponents[m]);
    }
    double in_class = 0.0;
    double all = 0.0;
    for (std::size_t m = 0; m < 16; ++m) {
      const double w = std::exp(exponents[m] - peak);
      all += w;
      if (points[m].cls == truth.cls) in_class += w;
    }
    // p(r|x) / p(r) = (sum over class / 4) / (sum over all / 16)
    total += std::log(4.0 * in_class / all) * kLog2e;
  }
  return 0.5 * total / double(num_samples);
}

double mi_phase_unsync(double snr_db, int num_grid, std::uint64_t num_samples, RngStream& rng) {
  if (num_grid < 2) throw std::invalid_argument("phase grid needs at least two points");
  require_samples(num_samples);
  const std::uint64_t per_point = std::max<std::uint64_t>(1, num_samples / std::uint64_t(num_grid));
  double sum = 0.0;
  for (int k = 0; k < num_grid; ++k) {
    const double theta = (k + 0.5) / num_grid * (kPi / 4.0);
    sum += mi_given_theta(snr_db, theta, per_point, rng);
  }
  return sum / num_grid;
}

double mi_time_unsync(double snr_db, double max_offset, std::uint64_t num_samples, RngStream& rng,
                      const TimeMiOptions& options) {
  require_samples(num_samples);
  if (!(max_offset >= 0.0 && max_offset <= 0.5)) {
    throw std::invalid_argument("timing offset range must lie in [0, 0.5] symbol periods");
  }
  if (options.frame_length < 1 || options.isi_bank_size < 1) {
    throw std::invalid_argument("frame length and ISI bank size must be positive");
  }
  options.pulse.validate();
  const double sigma2 = noise_var_from_snr_db(snr_db);
  std::vector<double> bank;
  std::vector<double> exponents;
  double total = 0.0;
  std::uint64_t remaining = num_samples;
  while (remaining > 0) {
    const std::uint64_t symbols = std::min<std::uint64_t>(remaining, std::uint64_t(options.frame_length));
    const double tau = max_offset > 0.0 ? rng.uniform(-max_offset, max_offset) : 0.0;
    total += time_frame_information(sigma2, tau, 2 * symbols, rng, options, bank, exponents);
    remaining -= symbols;
  }
  // Each real dimension is one scalar sample; the average is already per dimension.
  return total / double(2 * num_samples);
}

std::vector<MiEstimate> mi_curve(const MiCurveConfig& config) {
  if (config.snr_grid_db.empty()) throw std::invalid_argument("SNR grid must not be empty");
  require_samples(config.samples_per_point);
  if (config.workers < 1) throw std::invalid_argument("worker count must be positive");
  if (config.batch_size < 1) throw std::invalid_argument("batch size must be positive");

  struct Unit {
    std::size_t point;
    std::uint64_t index;
    std::uint64_t samples;
    double theta;
  };
  std::vector<Unit> units;
  std::vector<std::uint64_t> used(config.snr_grid_db.size(), 0);
  for (std::size_t p = 0; p < config.snr_grid_db.size(); ++p) {
    if (config.scenario == Scenario::phase_unsync) {
      if (config.phase_grid < 2) throw std::invalid_argument("phase grid needs at least two points");
      const std::uint64_t per = std::max<std::uint64_t>(
          1, config.samples_per_point / std::uint64_t(config.phase_grid));
      for (int k = 0; k < config.phase_grid; ++k) {
        units.push_back({p, std::uint64_t(k), per, (k + 0.5) / config.phase_grid * (kPi / 4.0)});
        used[p] += per;
      }
    } else {
      std::uint64_t batch = config.batch_size;
      if (config.scenario == Scenario::time_unsync) {
        // Keep frames whole inside a unit so offset draws do not depend on batching.
        const auto frame = std::uint64_t(std::max(1, config.time.frame_length));
        batch = std::max<std::uint64_t>(frame, batch / frame * frame);
      }
      std::uint64_t index = 0;
      for (std::uint64_t done = 0; done < config.samples_per_point; done += batch) {
        const std::uint64_t n = std::min(batch, config.samples_per_point - done);
        units.push_back({p, index++, n, 0.0});
        used[p] += n;
      }
    }
  }

  std::vector<double> unit_means(units.size(), 0.0);
  parallel_for(units.size(), config.workers, [&](std::size_t u) {
    const Unit& unit = units[u];
    RngStream rng(config.seed, {std::uint64_t(unit.point), unit.index});
    const double snr = config.snr_grid_db[unit.point];
    switch (config.scenario) {
      case Scenario::perfect:
        unit_means[u] = mi_given_theta(snr, 0.0, unit.samples, rng);
        break;
      case Scenario::phase_unsync:
        unit_means[u] = mi_given_theta(snr, unit.theta, unit.samples, rng);
        break;
      case Scenario::time_unsync:
        unit_means[u] = mi_time_unsync(snr, config.offset_range, unit.samples, rng, config.time);
        break;
    }
  });

  std::vector<double> weighted(config.snr_grid_db.size(), 0.0);
  for (std::size_t u = 0; u < units.size(); ++u) {
    weighted[units[u].point] += unit_means[u] * double(units[u].samples);
  }
  std::vector<MiEstimate> out;
  out.reserve(config.snr_grid_db.size());
  const std::string label = scenario_label(config.scenario, config.offset_range);
  for (std::size_t p = 0; p < config.snr_grid_db.size(); ++p) {
    out.push_back({config.snr_grid_db[p], label, weighted[p] / double(used[p]), used[p],
                   config.workers, config.seed});
  }
  return out;
}

}  // namespace pnc
