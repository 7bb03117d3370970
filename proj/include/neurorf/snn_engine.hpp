#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "neurorf/dataset.hpp"
#include "neurorf/fit_result.hpp"
#include "neurorf/model_core.hpp"
#include "neurorf/random.hpp"

namespace neurorf {

enum class Backend { FullPrecision, FixedPoint };

struct SnnConfig {
  long K = 300;          // hypothesis windows
  long M = 200;          // gradient updates per window
  double alpha = 0.02;   // learning rate
  double eps_inlier = 0.5;
  std::uint64_t seed = 0;
  double divergence_cap = 1e9;

  long tau() const { return 2 * M + 4; }
  long total_timesteps() const { return K * tau(); }

  void validate() const {
    if (K < 1 || M < 1) throw ConfigError("snn config: K and M must be >= 1");
    if (!(alpha > 0.0)) throw ConfigError("snn config: alpha must be > 0");
    if (eps_inlier < 0.0) throw ConfigError("snn config: eps_inlier must be >= 0");
  }
};

// Window layout over tau = 2M+4 timesteps, phases numbered 1..tau:
//   phase 1          reset (fresh z, theta' = 0, theta = 0)
//   phase 2          priming (theta' picks up the fresh z against theta = 0)
//   phases 3,5,..,2M+1  the M gradient updates (odd phases)
//   phases 2M+2..2M+4   scoring drain: theta held while c and psi catch up
inline long window_phase(long t, long tau) { return (t - 1) % tau + 1; }
inline long window_index(long t, long tau) { return (t - 1) / tau; }
inline bool is_reset_phase(long phase) { return phase == 1; }
inline bool is_update_phase(long phase, long M) {
  return phase >= 3 && phase <= 2 * M + 1 && phase % 2 == 1;
}

// Produces the fresh selection at each window start.
class SelectionSource {
 public:
  virtual ~SelectionSource() = default;
  virtual void sample(std::vector<std::uint8_t>& z, long window) = 0;
};

// z_i = 1(prob >= gamma_i), fresh gamma_i in [0,1) per neuron per window.
class BernoulliSource final : public SelectionSource {
 public:
  BernoulliSource(double prob, std::uint64_t seed) : prob_(prob), rng_(seed) {}
  void sample(std::vector<std::uint8_t>& z, long window) override;

 private:
  double prob_;
  Rng rng_;
};

// Replays a fixed per-window selection sequence (oracle harness).
class InjectedSource final : public SelectionSource {
 public:
  explicit InjectedSource(std::vector<SelectionVector> selections)
      : selections_(std::move(selections)) {}
  void sample(std::vector<std::uint8_t>& z, long window) override;

 private:
  std::vector<SelectionVector> selections_;
};

// Layer states after timestep t. theta_history[0] is theta at t-1,
// theta_history[1] at t-2; depth 2 covers the theta -> c -> psi pipeline.
struct NetworkState {
  std::vector<std::uint8_t> z;
  Eigen::VectorXd theta_prime;
  Eigen::VectorXd theta;
  std::vector<std::uint8_t> c;
  long psi = 0;
  long t = 0;
  std::array<Eigen::VectorXd, 2> theta_history;
};

NetworkState initial_state(Eigen::Index n, Eigen::Index d);

// Layer steps. Each reads only the previous-timestep state, so a full
// timestep is five calls against the same prev snapshot.
std::vector<std::uint8_t> step_random_sampling(const NetworkState& prev,
                                               SelectionSource& source, long t,
                                               long tau);
Eigen::VectorXd step_auxiliary(const NetworkState& prev,
                               const LiftedOperators& ops, long t, long tau);

struct HypothesisStep {
  Eigen::VectorXd theta;
  bool updated = false;
};
HypothesisStep step_model_hypothesis(const NetworkState& prev,
                                     const LiftedOperators& ops,
                                     const SnnConfig& config, long t);

std::vector<std::uint8_t> step_compute_residual(const NetworkState& prev,
                                                const Dataset& dataset,
                                                double eps_inlier, long t);
long step_inlier_counter(const NetworkState& prev, long t);

// Full-precision run with the standard Bernoulli sampling (prob = d/N).
FitResult run_snn(const Dataset& dataset, const SnnConfig& config);

// Same engine with a caller-supplied selection source.
FitResult run_snn_with_source(const Dataset& dataset, const SnnConfig& config,
                              SelectionSource& source);

// Refit over the recorded inlier rows; psi/mask recomputed, the pre-refine
// consensus is kept in psi_before_refine.
FitResult ls_refine(const FitResult& result, const Dataset& dataset,
                    double eps_inlier);

}  // namespace neurorf
