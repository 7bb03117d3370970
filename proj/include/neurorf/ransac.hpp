#pragma once

#include <cstdint>
#include <vector>

#include "neurorf/dataset.hpp"
#include "neurorf/fit_result.hpp"

namespace neurorf {

struct RansacConfig {
  long K = 300;
  double eps_inlier = 0.5;
  std::uint64_t seed = 0;
  long min_subset_size = 0;  // 0 selects the minimal size d
  double cond_cap = 1e12;

  void validate() const {
    if (K < 1) throw ConfigError("ransac config: K must be >= 1");
    if (eps_inlier < 0.0)
      throw ConfigError("ransac config: eps_inlier must be >= 0");
  }
};

// K iterations of {uniform subset sample, analytic LS, consensus scoring}.
// Degenerate subsets are resampled, up to 100*K attempts overall.
FitResult ransac(const Dataset& dataset, const RansacConfig& config);

// Replays a fixed per-iteration selection sequence; selections too small to
// determine a model, or degenerate ones, score nothing that iteration.
FitResult ransac_injected(const Dataset& dataset, const RansacConfig& config,
                          const std::vector<SelectionVector>& selections);

}  // namespace neurorf
