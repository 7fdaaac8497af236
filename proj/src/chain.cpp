#include "pnc/chain.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace pnc {

namespace {

void require_chain(int num_nodes) {
  if (num_nodes < 3) throw std::invalid_argument("N >= 3 required, got N = " + std::to_string(num_nodes));
}

bool finite_non_negative(const ErrorTriple& e) {
  return std::isfinite(e.theta) && std::isfinite(e.freq) && std::isfinite(e.time) &&
         e.theta >= 0.0 && e.freq >= 0.0 && e.time >= 0.0;
}

}  // namespace

std::vector<BasicGroup> partition_groups(int num_nodes) {
  require_chain(num_nodes);
  const int m = (num_nodes - 1) / 2;
  std::vector<BasicGroup> groups;
  groups.reserve(m);
  for (int j = 1; j <= m; ++j) groups.push_back({j, 2 * j - 1, 2 * j, 2 * j + 1});
  return groups;
}

std::vector<BasicGroup> even_node_groups(int num_nodes) {
  require_chain(num_nodes);
  std::vector<BasicGroup> groups;
  for (int j = 1; 2 * j + 2 <= num_nodes; ++j) groups.push_back({j, 2 * j, 2 * j + 1, 2 * j + 2});
  return groups;
}

ChainPlan make_plan(const ChainConfig& config) {
  require_chain(config.num_nodes);
  if (!(config.bg_sync_time > 0.0) || !std::isfinite(config.bg_sync_time)) {
    throw std::invalid_argument("basic-group sync time must be positive");
  }
  if (!(config.period > 0.0) || !std::isfinite(config.period)) {
    throw std::invalid_argument("period T_p must be positive");
  }
  if (!finite_non_negative(config.local_errors)) {
    throw std::invalid_argument("local error bounds must be finite and non-negative");
  }

  ChainPlan plan;
  plan.num_nodes = config.num_nodes;
  plan.groups = partition_groups(config.num_nodes);
  plan.even_groups = even_node_groups(config.num_nodes);
  plan.num_groups = int(plan.groups.size());
  plan.ts = (config.num_nodes - 2) * config.bg_sync_time;
  if (config.fast_sync) {
    plan.ts /= 2.0;
    plan.ts_approximate = true;
  }
  if (plan.ts >= config.period) {
    std::ostringstream msg;
    msg << "infeasible plan: T_s = " << plan.ts << " s >= T_p = " << config.period
        << " s (requires (N - 2) * dt_BG < T_p)";
    throw InfeasiblePlan(msg.str());
  }
  plan.td = config.period - plan.ts;
  plan.overhead = plan.ts / config.period;
  plan.local_errors = config.local_errors;
  const double m = plan.num_groups;
  plan.accumulated_errors = {m * config.local_errors.theta, m * config.local_errors.freq,
                             m * config.local_errors.time};

  int step = 0;
  double clock = 0.0;
  for (const auto& g : plan.groups) {
    plan.steps.push_back({1, ++step, g, clock, clock + config.bg_sync_time});
    clock += config.bg_sync_time;
  }
  if (!config.fast_sync) {
    for (const auto& g : plan.even_groups) {
      plan.steps.push_back({2, ++step, g, clock, clock + config.bg_sync_time});
      clock += config.bg_sync_time;
    }
  }
  return plan;
}

ErrorTriple effective_detection_errors(const ChainPlan& plan, int relay_node) {
  if (relay_node % 2 != 0) {
    throw std::invalid_argument("relay node must be even; odd nodes transmit during PNC phases");
  }
  if (relay_node < 2 || relay_node > plan.num_nodes - 1) {
    throw std::invalid_argument("relay node " + std::to_string(relay_node) +
                                " has no neighbors on both sides");
  }
  return plan.local_errors;
}

double resync_period_bound(const ErrorTriple& drift_per_s, const ErrorTriple& tolerance) {
  if (!finite_non_negative(drift_per_s)) {
    throw std::invalid_argument("drift rates must be finite and non-negative");
  }
  if (!(tolerance.theta > 0.0 && tolerance.freq > 0.0 && tolerance.time > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  double bound = std::numeric_limits<double>::infinity();
  auto limit = [&bound](double tol, double drift) {
    if (drift > 0.0) bound = std::min(bound, tol / drift);
  };
  limit(tolerance.theta, drift_per_s.theta);
  limit(tolerance.freq, drift_per_s.freq);
  limit(tolerance.time, drift_per_s.time);
  return bound;
}

void write_plan(std::ostream& os, const ChainPlan& plan) {
  os << "phase,step,group,left_node,right_node,start_s,end_s\n";
  for (const auto& s : plan.steps) {
    os << s.phase << ',' << s.step << ',' << s.group.index << ',' << s.group.left << ','
       << s.group.right << ',' << s.start_s << ',' << s.end_s << '\n';
  }
  os << "# summary\n";
  os << "num_nodes," << plan.num_nodes << '\n';
  os << "num_groups," << plan.num_groups << '\n';
  os << "ts_s," << plan.ts << '\n';
  os << "ts_approximate," << (plan.ts_approximate ? "true" : "false") << '\n';
  os << "td_s," << plan.td << '\n';
  os << "overhead," << plan.overhead << '\n';
  os << "local_errors," << plan.local_errors.theta << ',' << plan.local_errors.freq << ','
     << plan.local_errors.time << '\n';
  os << "accumulated_errors," << plan.accumulated_errors.theta << ','
     << plan.accumulated_errors.freq << ',' << plan.accumulated_errors.time << '\n';
  if (plan.num_nodes % 2 == 0) {
    os << "# even N: node " << plan.num_nodes << " joins the chain in sub-phase 2 through relay "
       << plan.num_nodes - 1 << '\n';
  }
}

}  // namespace pnc
