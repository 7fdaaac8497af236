#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "pnc/analysis.hpp"
#include "pnc/chain.hpp"
#include "pnc/detection.hpp"
#include "pnc/harness.hpp"
#include "pnc/impairments.hpp"
#include "pnc/info.hpp"
#include "pnc/mapping.hpp"

namespace py = pybind11;

namespace {

using Bits = std::pair<int, int>;

pnc::BitPair to_bits(Bits b) { return pnc::make_bits(b.first, b.second); }
Bits from_bits(pnc::BitPair b) { return {b.i_bit, b.q_bit}; }

pnc::ErrorTriple to_triple(const std::vector<double>& v) {
  if (v.size() != 3) throw std::invalid_argument("expected (theta, freq, time)");
  return {v[0], v[1], v[2]};
}

std::vector<double> from_triple(const pnc::ErrorTriple& e) { return {e.theta, e.freq, e.time}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Synchronization-error analysis and simulation for physical-layer network coding";

  // mapping
  m.def("qpsk_modulate", [](Bits bits) {
    const auto s = pnc::qpsk_modulate(to_bits(bits));
    return std::pair<int, int>{s.a, s.b};
  }, py::arg("bits"));
  m.def("pnc_xor_of_levels", [](Bits level) {
    return from_bits(pnc::pnc_xor_of_levels({level.first, level.second}));
  }, py::arg("level"));
  m.def("relay_remap", [](Bits bits) {
    const auto s = pnc::relay_remap(to_bits(bits));
    return std::pair<int, int>{s.a, s.b};
  }, py::arg("xor_bits"));
  m.def("end_node_extract", [](Bits relay, Bits own) {
    return from_bits(pnc::end_node_extract(to_bits(relay), to_bits(own)));
  }, py::arg("relay_bits"), py::arg("own_bits"));

  // impairments
  m.def("fold_phase", [](double theta) {
    const auto f = pnc::fold_phase(theta);
    return std::pair<double, int>{f.theta, f.quadrant};
  }, py::arg("theta"));
  m.def("rotate_symbol", &pnc::rotate_symbol, py::arg("symbol"), py::arg("quadrant"));
  m.def("superpose_phase_offset", &pnc::superpose_phase_offset, py::arg("s1"), py::arg("s3"),
        py::arg("theta"));
  m.def("raised_cosine", &pnc::raised_cosine, py::arg("t"), py::arg("symbol_duration") = 1.0,
        py::arg("rolloff") = 0.5);
  m.def("sample_with_time_offset",
        [](const std::vector<double>& a1, const std::vector<double>& a3, std::size_t k,
           double time_offset_frac, double rolloff, int truncation) {
          return pnc::sample_with_time_offset(a1, a3, k, {.time_offset_frac = time_offset_frac},
                                              {rolloff, truncation});
        },
        py::arg("a1"), py::arg("a3"), py::arg("k"), py::arg("time_offset_frac"),
        py::arg("rolloff") = 0.5, py::arg("truncation") = 16);
  m.def("add_awgn", [](std::complex<double> clean, double noise_var, std::uint64_t seed) {
    pnc::RngStream rng(seed);
    const auto obs = pnc::add_awgn(clean, noise_var, rng);
    return std::complex<double>(obs.i_sample, obs.q_sample);
  }, py::arg("clean"), py::arg("noise_var"), py::arg("seed"));

  // detection
  m.def("detect_threshold", [](std::complex<double> r, double scale) {
    return from_bits(pnc::detect_threshold({r.real(), r.imag(), 0.0}, scale));
  }, py::arg("r"), py::arg("scale") = 1.0);
  m.def("build_hypotheses", [](double theta) {
    const auto hyp = pnc::build_hypotheses(theta);
    std::vector<std::vector<std::complex<double>>> out;
    for (const auto& cls : hyp.points) out.emplace_back(cls.begin(), cls.end());
    return out;
  }, py::arg("theta"), "16 superposed points grouped by XOR class index (2 * xI + xQ)");
  m.def("detect_ml_xor", [](std::complex<double> r, double noise_var, double theta) {
    return from_bits(pnc::detect_ml_xor({r.real(), r.imag(), noise_var}, pnc::build_hypotheses(theta)));
  }, py::arg("r"), py::arg("noise_var"), py::arg("theta"));

  // analysis
  m.def("min_distance_sq", &pnc::min_distance_sq, py::arg("theta"));
  m.def("phase_penalty_db", &pnc::phase_penalty_db, py::arg("theta"));
  m.def("avg_phase_penalty_db", &pnc::avg_phase_penalty_db);
  m.def("sir_1d_traditional_db", &pnc::sir_1d_traditional_db, py::arg("alpha") = 4.0,
        py::arg("max_terms") = 100000);
  m.def("isi_variance", [](double dt, double snr0_db, double rolloff, int truncation) {
    return pnc::isi_variance(dt, {snr0_db, rolloff, truncation});
  }, py::arg("dt_frac"), py::arg("snr0_db") = 10.0, py::arg("rolloff") = 0.5, py::arg("truncation") = 16);
  m.def("sinr_penalty_db", [](double dt, double snr0_db, double rolloff, int truncation) {
    return pnc::sinr_penalty_db(dt, {snr0_db, rolloff, truncation});
  }, py::arg("dt_frac"), py::arg("snr0_db") = 10.0, py::arg("rolloff") = 0.5, py::arg("truncation") = 16);
  m.def("avg_sinr_penalty_db", [](double snr0_db, double rolloff, int truncation, int num_points) {
    return pnc::avg_sinr_penalty_db({snr0_db, rolloff, truncation}, num_points);
  }, py::arg("snr0_db") = 10.0, py::arg("rolloff") = 0.5, py::arg("truncation") = 16,
     py::arg("num_points") = 1001);
  m.def("emit_penalty_curves", [](int phase_points, int time_points, double snr0_db, double rolloff) {
    py::dict out;
    for (const auto& c : pnc::emit_penalty_curves({phase_points, time_points}, {snr0_db, rolloff, 16})) {
      out[py::str(c.parameter_name)] = c.points;
    }
    return out;
  }, py::arg("phase_points") = 91, py::arg("time_points") = 101, py::arg("snr0_db") = 10.0,
     py::arg("rolloff") = 0.5);

  // info
  m.def("mi_given_theta", [](double snr_db, double theta, std::uint64_t n, std::uint64_t seed) {
    py::gil_scoped_release release;
    pnc::RngStream rng(seed);
    return pnc::mi_given_theta(snr_db, theta, n, rng);
  }, py::arg("snr_db"), py::arg("theta"), py::arg("num_samples"), py::arg("seed") = 1);
  m.def("mi_curve",
        [](const std::string& scenario, std::vector<double> snr_grid_db, std::uint64_t samples,
           std::uint64_t seed, int workers, double offset_range) {
          pnc::MiCurveConfig cfg;
          cfg.scenario = pnc::parse_scenario(scenario);
          cfg.snr_grid_db = std::move(snr_grid_db);
          cfg.samples_per_point = samples;
          cfg.seed = seed;
          cfg.workers = workers;
          cfg.offset_range = offset_range;
          std::vector<pnc::MiEstimate> est;
          {
            py::gil_scoped_release release;
            est = pnc::mi_curve(cfg);
          }
          std::vector<std::pair<double, double>> out;
          for (const auto& e : est) out.emplace_back(e.snr_db, e.mi_bits_per_dim);
          return out;
        },
        py::arg("scenario"), py::arg("snr_grid_db"), py::arg("samples_per_point") = 100000,
        py::arg("seed") = 1, py::arg("workers") = 1, py::arg("offset_range") = 0.5,
        "list of (snr_db, bits per dimension)");

  // chain
  m.def("partition_groups", [](int n) {
    std::vector<std::vector<int>> out;
    for (const auto& g : pnc::partition_groups(n)) out.push_back({g.left, g.relay, g.right});
    return out;
  }, py::arg("num_nodes"));
  m.def("make_plan",
        [](int n, double bg_sync_time, double period, const std::vector<double>& local_errors,
           bool fast_sync) {
          const auto plan = pnc::make_plan({n, bg_sync_time, period, to_triple(local_errors), fast_sync});
          py::dict d;
          d["num_groups"] = plan.num_groups;
          d["ts"] = plan.ts;
          d["td"] = plan.td;
          d["overhead"] = plan.overhead;
          d["ts_approximate"] = plan.ts_approximate;
          d["accumulated_errors"] = from_triple(plan.accumulated_errors);
          d["local_errors"] = from_triple(plan.local_errors);
          d["num_steps"] = plan.steps.size();
          return d;
        },
        py::arg("num_nodes"), py::arg("bg_sync_time"), py::arg("period"),
        py::arg("local_errors"), py::arg("fast_sync") = false);
  m.def("effective_detection_errors",
        [](int n, const std::vector<double>& local_errors, int relay) {
          const auto plan = pnc::make_plan({n, 1.0, 1e300, to_triple(local_errors), false});
          return from_triple(pnc::effective_detection_errors(plan, relay));
        },
        py::arg("num_nodes"), py::arg("local_errors"), py::arg("relay_node"));
  m.def("resync_period_bound", [](const std::vector<double>& drift, const std::vector<double>& tol) {
    return pnc::resync_period_bound(to_triple(drift), to_triple(tol));
  }, py::arg("drift_per_s"), py::arg("tolerance"));

  // harness
  m.def("run_ber",
        [](const std::string& scenario, std::vector<double> snr_grid_db, std::uint64_t bits,
           std::uint64_t seed, int workers, std::optional<double> offset_range) {
          pnc::ExperimentConfig cfg;
          cfg.command = pnc::Command::ber;
          cfg.scenario = pnc::parse_scenario(scenario);
          cfg.snr_grid_db = std::move(snr_grid_db);
          cfg.samples_per_point = bits;
          cfg.master_seed = seed;
          cfg.workers = workers;
          cfg.offset_range = offset_range;
          std::vector<pnc::BerResult> res;
          {
            py::gil_scoped_release release;
            res = pnc::run_ber(cfg);
          }
          std::vector<std::tuple<double, double, std::uint64_t, std::uint64_t>> out;
          for (const auto& r : res) out.emplace_back(r.snr_db, r.ber, r.num_bits, r.num_errors);
          return out;
        },
        py::arg("scenario"), py::arg("snr_grid_db"), py::arg("bits_per_point") = 1000000,
        py::arg("seed") = 1, py::arg("workers") = 1, py::arg("offset_range") = py::none(),
        "list of (snr_db, ber, num_bits, num_errors)");
  m.def("perfect_sync_ber", &pnc::perfect_sync_ber, py::arg("snr_db"));
  m.def("throughput_summary", [] {
    std::vector<std::tuple<std::string, int, double>> out;
    for (const auto& r : pnc::throughput_summary()) out.emplace_back(r.scheme, r.slots, r.relative_throughput);
    return out;
  });
  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "pnc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    py::gil_scoped_release release;
    return pnc::run_cli(int(argv.size()), argv.data());
  }, py::arg("args"), "run the pnc command line with the given arguments; returns the exit code");
}
