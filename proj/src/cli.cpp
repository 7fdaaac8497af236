#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "pnc/harness.hpp"

namespace pnc {

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Synchronization-error analysis and simulation for physical-layer network coding",
               "pnc"};
  app.set_config("--config", "", "flat key = value file with any of the long options below");
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string scenario = "perfect";
  double offset_range = 0.0;
  std::vector<double> local_errors{cfg.local_errors.theta, cfg.local_errors.freq,
                                   cfg.local_errors.time};

  app.add_option("--seed,--master_seed", cfg.master_seed, "master RNG seed");
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out,--output_path", cfg.output_path, "output file (stdout when omitted)");
  app.add_option("--scenario", scenario, "perfect | phase_unsync | time_unsync")
      ->check(CLI::IsMember({"perfect", "phase_unsync", "time_unsync"}));
  app.add_option("--snr_grid_db", cfg.snr_grid_db, "SNR points in dB, strictly increasing");
  auto* offset_opt = app.add_option("--offset_range", offset_range,
                 "offset bound: rad for phase_unsync, dt/T for time_unsync");
  app.add_option("--samples_per_point", cfg.samples_per_point,
                 "XOR bits (ber) or QPSK symbols (mi) per SNR point");
  app.add_option("--rolloff", cfg.rolloff, "raised-cosine roll-off");
  app.add_option("--truncation", cfg.truncation, "ISI window, symbols on each side");
  app.add_option("--frame_length", cfg.frame_length, "symbols per offset draw");
  app.add_option("--frames_per_unit", cfg.frames_per_unit, "frames per parallel work unit");
  app.add_option("--mi_phase_grid", cfg.mi_phase_grid, "phase grid size for mi phase_unsync");
  app.add_option("--mi_isi_bank", cfg.mi_isi_bank, "ISI realizations per frame for mi time_unsync");
  app.add_option("--snr0_db", cfg.snr0_db, "reference SNR of the timing penalty");
  app.add_option("--alpha", cfg.alpha, "path-loss exponent of the 1-D SIR");
  app.add_option("--pnc_sir_1d_db", cfg.pnc_sir_1d_db, "1-D SIR of PNC (input constant)");
  app.add_option("--phase_points", cfg.phase_points, "phase penalty grid size");
  app.add_option("--time_points", cfg.time_points, "timing penalty grid size");
  app.add_option("--num_nodes", cfg.num_nodes, "chain length N");
  app.add_option("--bg_sync_time", cfg.bg_sync_time, "seconds per basic-group synchronization");
  app.add_option("--period", cfg.period, "period T_p in seconds");
  app.add_option("--local_errors", local_errors, "local error bounds: theta 2*domega dt")
      ->expected(3);
  app.add_flag("--fast_sync", cfg.fast_sync, "drop the even-node sub-phase (approximate T_s)");

  for (const char* name : {"ber", "mi", "penalty", "chain"}) {
    app.add_subcommand(name, std::string("run the ") + name + " command")->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    cfg.command = parse_command(app.get_subcommands().front()->get_name());
    cfg.scenario = parse_scenario(scenario);
    if (offset_opt->count() > 0) cfg.offset_range = offset_range;
    cfg.local_errors = {local_errors[0], local_errors[1], local_errors[2]};
    run_experiment(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace pnc
