#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "pesmc/core.hpp"
#include "pesmc/sim_config.hpp"

namespace pesmc {

struct Snapshot {
  double t;
  Field u;
  Field v;
};

/// Per-sample record of a run. Row k holds the state at times[k] together with
/// the control and disturbance applied over the following step.
struct SimTrace {
  std::vector<double> times;
  std::vector<double> s;
  std::vector<double> omega;
  std::vector<double> d;
  std::vector<double> norm_u_l2;
  std::vector<double> norm_v_l2;
  std::vector<double> norm_u_h1;
  /// R(t) per row; empty for open-loop runs.
  std::vector<double> remainder;
  std::vector<Snapshot> snapshots;
  SimConfig config;

  std::size_t size() const noexcept { return times.size(); }

  /// Series by name: s, omega, d, norm_u_l2, norm_v_l2, norm_u_h1, remainder.
  /// Throws InvalidArgument for unknown names.
  const std::vector<double>& series(std::string_view name) const;
};

}  // namespace pesmc
