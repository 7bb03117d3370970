#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "neurorf/dataset.hpp"
#include "neurorf/fit_result.hpp"
#include "neurorf/snn_engine.hpp"

namespace neurorf {

// Integer backend parameters. Weights use the natural two's-complement
// range; neuron states saturate to the symmetric range.
struct FixedPointConfig {
  int beta = 10;
  int weight_bits = 8;
  int state_bits = 24;
  int lfsr_bits = 16;
  long long alpha_bar = 0;

  long long weight_min() const { return -(1LL << (weight_bits - 1)); }
  long long weight_max() const { return (1LL << (weight_bits - 1)) - 1; }
  long long state_max() const { return (1LL << (state_bits - 1)) - 1; }
  long long state_min() const { return -state_max(); }

  void validate() const {
    if (beta < 0) throw ConfigError("fixed-point config: beta must be >= 0");
    if (alpha_bar < 1)
      throw ConfigError("fixed-point config: alpha_bar must be >= 1");
    if (lfsr_bits != 16 && lfsr_bits != 24)
      throw ConfigError("fixed-point config: lfsr width must be 16 or 24");
    if (weight_bits < 2 || weight_bits > 62 || state_bits < 2 || state_bits > 62)
      throw ConfigError("fixed-point config: bit widths out of range");
  }
};

// ceil(alpha * 2^beta); rejects values outside the state range.
long long quantize_alpha(double alpha, int beta, int state_bits = 24);

FixedPointConfig make_fixed_point_config(double alpha, int beta,
                                         int weight_bits = 8,
                                         int state_bits = 24,
                                         int lfsr_bits = 16);

// Galois LFSR, maximal-length taps; the all-zero register is a fixed point
// and therefore rejected.
struct LfsrState {
  std::uint32_t reg = 0;
  std::uint32_t taps = 0;
  int bits = 16;
};

LfsrState make_lfsr(std::uint64_t seed, int bits);

// Returns the current register value, then advances one step.
std::uint32_t lfsr_next(LfsrState& state);

// Switching decision d > (N * v) >> lfsr_bits, evaluated in 64-bit integers.
bool sample_switch(long d, long n, std::uint32_t lfsr_value, int lfsr_bits = 16);

struct ShiftUpdate {
  std::vector<long long> theta;
  long saturations = 0;  // elements clamped to the state range
  long drift = 0;        // elements whose shift discarded a nonzero remainder
};

// Per element: theta_j - ((grad_j * alpha_bar) >> beta), arithmetic shift
// (floor toward -inf), result saturated to the state range.
ShiftUpdate shift_gd_update(const std::vector<long long>& theta,
                            const std::vector<long long>& grad,
                            long long alpha_bar, int beta, int state_bits = 24);

struct IntDataset {
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> X;
  Eigen::Matrix<long long, Eigen::Dynamic, 1> y;
  long long scale = 1;  // multiplier applied to the source data

  Eigen::Index N() const { return X.rows(); }
  Eigen::Index d() const { return X.cols(); }
  Dataset to_real() const;
};

// Scales and rounds the data, then validates that every derived synaptic
// weight (x_i x_i^T entries, -y_i x_i entries) fits the weight range.
IntDataset quantize_dataset(const Dataset& dataset, const FixedPointConfig& cfg,
                            long long scale = 1);

// One independently seeded LFSR stream per sampling neuron.
class LfsrSource final : public SelectionSource {
 public:
  LfsrSource(Eigen::Index n, Eigen::Index d, std::uint64_t seed, int lfsr_bits);
  void sample(std::vector<std::uint8_t>& z, long window) override;

 private:
  std::vector<LfsrState> streams_;
  long d_;
  long n_;
  int bits_;
};

// Integer-state run on the same schedule as the full-precision engine.
// eps_inlier must be an integer in dataset units.
FitResult run_fixed(const IntDataset& dataset, const SnnConfig& config,
                    const FixedPointConfig& fp);

FitResult run_fixed_with_source(const IntDataset& dataset,
                                const SnnConfig& config,
                                const FixedPointConfig& fp,
                                SelectionSource& source);

// Backend dispatch; FixedPoint quantizes at scale 1 and requires fp.
FitResult run(const Dataset& dataset, const SnnConfig& config, Backend backend,
              const FixedPointConfig* fp = nullptr);

}  // namespace neurorf
