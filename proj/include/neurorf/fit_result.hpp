#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "neurorf/dataset.hpp"

namespace neurorf {

// End-of-window snapshot. theta is the model the recorded psi scored.
// saturations/shift_drift are only populated by the fixed-point backend.
struct WindowTrace {
  long window = 0;
  long psi = 0;
  Eigen::VectorXd theta;
  bool diverged = false;
  long saturations = 0;
  long shift_drift = 0;
};

// Schedule-determined totals accumulated over all executed timesteps.
struct OpCounts {
  std::int64_t synaptic_ops = 0;
  std::int64_t neuron_updates = 0;
  std::int64_t spikes = 0;
};

struct FitResult {
  Model theta_best;
  long psi_best = 0;
  std::vector<std::uint8_t> inlier_mask;
  std::vector<WindowTrace> trace;  // one entry per iteration window
  OpCounts op_counts;

  // Schedule instrumentation, one entry per window.
  std::vector<long> updates_per_window;
  std::vector<long> resets_per_window;

  long saturation_count = 0;   // fixed-point backend only
  long degenerate_retries = 0; // baseline only: resampled degenerate subsets

  // Filled by ls_refine; psi_best then holds the refined consensus.
  bool refined = false;
  long psi_before_refine = 0;

  double wall_time_seconds = 0.0;  // measured by the driver when requested
};

}  // namespace neurorf
