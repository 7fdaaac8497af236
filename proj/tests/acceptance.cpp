// Acceptance run: one PASS/FAIL line per criterion, non-zero exit when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pnc/analysis.hpp"
#include "pnc/chain.hpp"
#include "pnc/detection.hpp"
#include "pnc/harness.hpp"
#include "pnc/info.hpp"
#include "pnc/mapping.hpp"

using namespace pnc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double snr_for_inv_sigma(double inv_sigma) { return 20.0 * std::log10(inv_sigma); }

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (int n = 0; lo + n * step <= hi + 1e-9; ++n) g.push_back(lo + n * step);
  return g;
}

Outcome ac1_truth_table() {
  Outcome o;
  int exact = 0;
  for (int c1 = 0; c1 < 4; ++c1) {
    for (int c3 = 0; c3 < 4; ++c3) {
      const Complex r = superpose_phase_offset(qpsk_modulate(class_bits(c1)).to_complex(),
                                               qpsk_modulate(class_bits(c3)).to_complex(), 0.0);
      const BitPair by_levels = pnc_xor_of_levels({int(r.real()), int(r.imag())});
      const BitPair by_threshold = detect_threshold({r.real(), r.imag(), 0.0}, 1.0);
      const bool ok = double(int(r.real())) == r.real() && double(int(r.imag())) == r.imag() &&
                      class_index(by_levels) == (c1 ^ c3) && by_threshold == by_levels;
      exact += ok;
    }
  }
  o.pass = exact == 16;
  o.detail = std::to_string(exact) + "/16 pairs demap to s1 xor s3";
  return o;
}

Outcome ac2_avg_phase() {
  const double v = avg_phase_penalty_db();
  const double closed = 10.0 * std::log10(oracle::avg_phase_penalty_linear());
  Outcome o;
  o.pass = std::abs(v - (-3.4)) <= 0.05 && std::abs(v - closed) < 1e-9;
  o.detail = "avg bound " + fmt("%.4f", v) + " dB (target -3.4 +- 0.05), closed form " + fmt("%.4f", closed);
  return o;
}

Outcome ac3_phase_endpoint() {
  const double v = phase_penalty_db(kPi / 4);
  const double r = 1.0 - std::cos(oracle::pi / 4);
  const double derived = 10.0 * std::log10(2.0 * r * r);
  Outcome o;
  o.pass = v <= -7.0 && std::abs(v - (-7.66)) <= 0.01 && std::abs(v - derived) < 1e-12;
  o.detail = "penalty(pi/4) " + fmt("%.4f", v) + " dB (<= -7.0, -7.66 +- 0.01), derived " + fmt("%.4f", derived);
  return o;
}

Outcome ac4_sir() {
  const double v = sir_1d_traditional_db(4.0);
  Outcome o;
  o.pass = std::abs(v - 8.5) <= 0.05;
  o.detail = "SIR(alpha=4) " + fmt("%.4f", v) + " dB (target 8.5 +- 0.05)";
  return o;
}

Outcome ac5_sinr() {
  const SinrContext ctx{10.0, 0.5, 16};
  double worst = 0.0;
  for (int n = 0; n <= 2000; ++n) worst = std::min(worst, sinr_penalty_db(-0.5 + n / 2000.0, ctx));
  const double avg = avg_sinr_penalty_db(ctx);
  const bool worst_ok = std::abs(worst - (-2.2)) <= 0.3;
  const bool avg_ok = std::abs(avg - (-1.57)) <= 0.1;
  Outcome o;
  o.pass = worst_ok && avg_ok;
  o.detail = "worst " + fmt("%.3f", worst) + " dB (target -2.2 +- 0.3) " + (worst_ok ? "ok" : "off") +
             "; linear average " + fmt("%.3f", avg) + " dB (target -1.57 +- 0.1) " + (avg_ok ? "ok" : "off");
  return o;
}

Outcome ac6_ber_oracle() {
  ExperimentConfig cfg;
  cfg.command = Command::ber;
  cfg.scenario = Scenario::perfect;
  cfg.snr_grid_db = {snr_for_inv_sigma(2.0), snr_for_inv_sigma(3.0)};
  cfg.samples_per_point = 1000000;
  cfg.master_seed = 6;
  const auto res = run_ber(cfg);
  Outcome o;
  const double inv[] = {2.0, 3.0};
  for (std::size_t n = 0; n < res.size(); ++n) {
    const double p = oracle::perfect_sync_ber(1.0 / inv[n]);
    const double half = 3.0 * std::sqrt(p * (1 - p) / double(res[n].num_bits));
    const bool ok = std::abs(res[n].ber - p) <= half;
    o.pass = o.pass && ok;
    o.detail += "1/sigma=" + fmt("%.0f", inv[n]) + ": MC " + fmt("%.4e", res[n].ber) + " vs " + fmt("%.4e", p) +
                " +- " + fmt("%.1e", half) + (ok ? " ok" : " off") + (n + 1 < res.size() ? "; " : "");
  }
  return o;
}

std::vector<double> ber_curve(Scenario s, std::optional<double> range, const std::vector<double>& snr) {
  ExperimentConfig cfg;
  cfg.command = Command::ber;
  cfg.scenario = s;
  cfg.offset_range = range;
  cfg.snr_grid_db = snr;
  cfg.samples_per_point = 1000000;
  cfg.master_seed = 7;
  std::vector<double> out;
  for (const auto& r : run_ber(cfg)) out.push_back(r.ber);
  return out;
}

std::string opt_db(const std::optional<double>& v) { return v ? fmt("%.2f", *v) + " dB" : "n/a"; }

Outcome ac7_ber_curves() {
  const auto snr = grid(0.0, 16.0, 0.5);
  const auto perfect = ber_curve(Scenario::perfect, std::nullopt, snr);
  const auto narrow = ber_curve(Scenario::time_unsync, 0.2, snr);
  const auto wide = ber_curve(Scenario::time_unsync, 0.5, snr);
  const auto phase = ber_curve(Scenario::phase_unsync, std::nullopt, snr);
  const auto loss_narrow = horizontal_loss_db(snr, perfect, snr, narrow, 1e-2, true);
  const auto loss_wide = horizontal_loss_db(snr, perfect, snr, wide, 1e-2, true);
  const auto loss_phase = horizontal_loss_db(snr, perfect, snr, phase, 3e-3, true);
  const bool a = loss_narrow && std::abs(*loss_narrow) < 0.3;
  const bool b = loss_wide && std::abs(*loss_wide - 1.0) <= 0.5;
  const bool c = loss_phase && *loss_phase >= 3.0;
  Outcome o;
  o.pass = a && b && c;
  o.detail = "time [-0.2T,0.2T] loss@1e-2 " + opt_db(loss_narrow) + (a ? " ok" : " off") +
             "; time [-0.5T,0.5T] loss@1e-2 " + opt_db(loss_wide) + " (target 1 +- 0.5)" + (b ? " ok" : " off") +
             "; phase loss@3e-3 " + opt_db(loss_phase) + " (>= 3)" + (c ? " ok" : " off");
  return o;
}

std::vector<double> mi_values(Scenario s, const std::vector<double>& snr, std::uint64_t samples) {
  MiCurveConfig cfg;
  cfg.scenario = s;
  cfg.offset_range = 0.5;
  cfg.snr_grid_db = snr;
  cfg.samples_per_point = samples;
  cfg.seed = 8;
  std::vector<double> out;
  for (const auto& e : mi_curve(cfg)) out.push_back(e.mi_bits_per_dim);
  return out;
}

// Largest horizontal gap over the impaired curve's points in [0, 7] dB.
std::optional<double> max_mi_loss(const std::vector<double>& ref_snr, const std::vector<double>& ref,
                                  const std::vector<double>& snr, const std::vector<double>& values) {
  std::optional<double> worst;
  for (std::size_t n = 0; n < snr.size(); ++n) {
    const auto at = snr_at_level(ref_snr, ref, values[n], false);
    if (!at) return std::nullopt;
    const double loss = snr[n] - *at;
    worst = worst ? std::max(*worst, loss) : loss;
  }
  return worst;
}

Outcome ac8_mi_curves() {
  const std::uint64_t samples = 100000;
  const auto ref_snr = grid(-6.0, 7.0, 0.5);
  const auto perfect = mi_values(Scenario::perfect, ref_snr, samples);
  const auto snr = grid(0.0, 7.0, 1.0);
  const auto time = mi_values(Scenario::time_unsync, snr, samples);
  const auto phase = mi_values(Scenario::phase_unsync, snr, samples);
  const auto high = mi_values(Scenario::perfect, {12.0, 13.0, 14.0}, samples);
  const auto loss_time = max_mi_loss(ref_snr, perfect, snr, time);
  const auto loss_phase = max_mi_loss(ref_snr, perfect, snr, phase);
  double high_gap = 0.0;
  for (double v : high) high_gap = std::max(high_gap, std::abs(1.0 - v));
  const bool a = loss_time && *loss_time <= 0.5 + 0.2;
  const bool b = loss_phase && *loss_phase <= 2.0 + 0.2;
  const bool c = high_gap <= 0.01;
  Outcome o;
  o.pass = a && b && c;
  o.detail = "time(0.5) max loss " + opt_db(loss_time) + " (<= 0.7)" + (a ? " ok" : " off") +
             "; phase max loss " + opt_db(loss_phase) + " (<= 2.2)" + (b ? " ok" : " off") +
             "; perfect >= 12 dB within " + fmt("%.4f", high_gap) + " of 1" + (c ? " ok" : " off");
  return o;
}

Outcome ac9_min_distance() {
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double theta = n * (kPi / 4) / 99.0;
    worst = std::max(worst, std::abs(min_interclass_distance_sq(build_hypotheses(theta)) - min_distance_sq(theta)));
  }
  Outcome o;
  o.pass = worst < 1e-9;
  o.detail = "max |brute force - closed form| " + fmt("%.2e", worst) + " over 100 angles";
  return o;
}

Outcome ac10_chain() {
  const ErrorTriple local{0.1, 0.02, 0.001};
  int bad = 0;
  for (int n = 3; n <= 200; ++n) {
    const auto plan = make_plan({n, 0.25, 1e6, local, false});
    const int m = (n - 1) / 2;
    bad += plan.num_groups != m || int(partition_groups(n).size()) != m;
    bad += plan.ts != (n - 2) * 0.25;
    bad += !(plan.accumulated_errors == ErrorTriple{m * local.theta, m * local.freq, m * local.time});
    if (n <= 50) {
      for (int relay = 2; relay < n; relay += 2) bad += !(effective_detection_errors(plan, relay) == local);
    }
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = std::to_string(bad) + " mismatches for N in [3, 200]";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pnc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(int(argv.size()), argv.data());
}

Outcome ac11_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "pnc_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"ber", "--scenario", "perfect", "--samples_per_point", "20000"},
      {"ber", "--scenario", "phase_unsync", "--samples_per_point", "20000"},
      {"ber", "--scenario", "time_unsync", "--samples_per_point", "20000"},
      {"mi", "--scenario", "perfect", "--samples_per_point", "5000"},
      {"mi", "--scenario", "phase_unsync", "--samples_per_point", "5000"},
      {"mi", "--scenario", "time_unsync", "--samples_per_point", "5000", "--snr_grid_db", "0", "4", "8"},
      {"penalty"},
      {"chain", "--num_nodes", "12"}};
  int identical = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::string first;
    bool same = true;
    for (int run = 0; run < 2; ++run) {
      const auto path = dir / ("run" + std::to_string(c) + "_" + std::to_string(run) + ".csv");
      auto args = commands[c];
      args.insert(args.end(), {"--seed", "2718", "--workers", "3", "--out", path.string()});
      if (cli(args) != 0) same = false;
      const std::string text = slurp(path);
      if (run == 0) first = text;
      else same = same && !text.empty() && text == first;
    }
    identical += same;
  }
  Outcome o;
  o.pass = identical == int(commands.size());
  o.detail = std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double budget_s;  // runtime limit, infinite when none is set
  };
  const double none = INFINITY;
  const std::vector<Criterion> criteria{
      {"AC1 truth table", ac1_truth_table, 1.0},
      {"AC2 average phase penalty", ac2_avg_phase, 1.0},
      {"AC3 phase penalty endpoint", ac3_phase_endpoint, none},
      {"AC4 1-D traditional SIR", ac4_sir, 1.0},
      {"AC5 timing SINR penalty", ac5_sinr, 10.0},
      {"AC6 perfect-sync BER oracle", ac6_ber_oracle, 30.0},
      {"AC7 BER curves", ac7_ber_curves, 300.0},
      {"AC8 mutual information curves", ac8_mi_curves, 600.0},
      {"AC9 minimum distance cross-check", ac9_min_distance, none},
      {"AC10 chain arithmetic", ac10_chain, none},
      {"AC11 determinism", ac11_determinism, none},
  };
  int failed = 0;
  for (const auto& [name, run, budget] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", budget) + " s budget";
    }
    std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
