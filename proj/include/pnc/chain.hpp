#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pnc {

/// Bounds on the phase, frequency (2 delta-omega) and symbol-time errors between two nodes.
struct ErrorTriple {
  double theta = 0.0;
  double freq = 0.0;
  double time = 0.0;

  friend bool operator==(const ErrorTriple&, const ErrorTriple&) = default;
};

/// Three consecutive nodes: the right node synchronizes to the left one through the relay.
struct BasicGroup {
  int index = 0;
  int left = 0;
  int relay = 0;
  int right = 0;

  friend bool operator==(const BasicGroup&, const BasicGroup&) = default;
};

struct SyncStep {
  int phase = 1;  // 1: odd nodes, 2: even nodes
  int step = 0;   // 1-based position in the whole schedule
  BasicGroup group;
  double start_s = 0.0;
  double end_s = 0.0;
};

struct ChainConfig {
  int num_nodes = 3;
  double bg_sync_time = 1.0;  // seconds per basic-group synchronization
  double period = 100.0;      // T_p, seconds
  ErrorTriple local_errors{};
  /// Eliminates the even-node sub-phase; the resulting T_s = T_s / 2 is approximate.
  bool fast_sync = false;
};

struct ChainPlan {
  int num_nodes = 0;
  int num_groups = 0;                   // M = floor((N - 1) / 2)
  std::vector<BasicGroup> groups;       // odd-node chain, sub-phase 1
  std::vector<BasicGroup> even_groups;  // even-node chain, sub-phase 2
  std::vector<SyncStep> steps;
  double ts = 0.0;
  double td = 0.0;
  double overhead = 0.0;
  bool ts_approximate = false;
  ErrorTriple accumulated_errors{};
  ErrorTriple local_errors{};
};

class InfeasiblePlan : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Basic groups {2j-1, 2j, 2j+1}, j = 1..M. Throws std::invalid_argument for N < 3.
std::vector<BasicGroup> partition_groups(int num_nodes);

/// Groups {2j, 2j+1, 2j+2} that synchronize the even nodes after the odd chain is aligned.
std::vector<BasicGroup> even_node_groups(int num_nodes);

/// Throws std::invalid_argument on bad inputs and InfeasiblePlan when T_s >= T_p.
ChainPlan make_plan(const ChainConfig& config);

/// Errors that matter for PNC detection at an even relay node: only the local ones.
ErrorTriple effective_detection_errors(const ChainPlan& plan, int relay_node);

/// Longest resynchronization period keeping every drift within tolerance; +infinity
/// when nothing drifts. Independent of the chain length.
double resync_period_bound(const ErrorTriple& drift_per_s, const ErrorTriple& tolerance);

/// Step table followed by a summary block.
void write_plan(std::ostream& os, const ChainPlan& plan);

}  // namespace pnc
