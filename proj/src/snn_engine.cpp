#include "neurorf/snn_engine.hpp"

#include <utility>

namespace neurorf {

void BernoulliSource::sample(std::vector<std::uint8_t>& z, long) {
  for (auto& zi : z) zi = (prob_ >= rng_.uniform()) ? 1 : 0;
}

void InjectedSource::sample(std::vector<std::uint8_t>& z, long window) {
  if (window < 0 || static_cast<std::size_t>(window) >= selections_.size())
    throw ConfigError("injected selections: window index out of range");
  const auto& sel = selections_[static_cast<std::size_t>(window)].z;
  if (sel.size() != z.size())
    throw ConfigError("injected selections: selection length mismatch");
  z = sel;
}

NetworkState initial_state(Eigen::Index n, Eigen::Index d) {
  NetworkState s;
  s.z.assign(static_cast<std::size_t>(n), 0);
  s.theta_prime = Eigen::VectorXd::Zero(n * d);
  s.theta = Eigen::VectorXd::Zero(d);
  s.c.assign(static_cast<std::size_t>(n), 0);
  s.psi = 0;
  s.t = 0;
  s.theta_history[0] = Eigen::VectorXd::Zero(d);
  s.theta_history[1] = Eigen::VectorXd::Zero(d);
  return s;
}

std::vector<std::uint8_t> step_random_sampling(const NetworkState& prev,
                                               SelectionSource& source, long t,
                                               long tau) {
  std::vector<std::uint8_t> z = prev.z;
  if (is_reset_phase(window_phase(t, tau))) source.sample(z, window_index(t, tau));
  return z;
}

Eigen::VectorXd step_auxiliary(const NetworkState& prev,
                               const LiftedOperators& ops, long t, long tau) {
  if (is_reset_phase(window_phase(t, tau)))
    return Eigen::VectorXd::Zero(prev.theta_prime.size());
  Eigen::VectorXd zr(static_cast<Eigen::Index>(prev.z.size()));
  for (std::size_t i = 0; i < prev.z.size(); ++i)
    zr[static_cast<Eigen::Index>(i)] = prev.z[i] ? 1.0 : 0.0;
  return ops.Fd.apply(zr).cwiseProduct(ops.FN.apply(prev.theta));
}

HypothesisStep step_model_hypothesis(const NetworkState& prev,
                                     const LiftedOperators& ops,
                                     const SnnConfig& config, long t) {
  const long phase = window_phase(t, config.tau());
  if (is_reset_phase(phase))
    return {Eigen::VectorXd::Zero(prev.theta.size()), false};
  if (!is_update_phase(phase, config.M)) return {prev.theta, false};
  Eigen::VectorXd zr(static_cast<Eigen::Index>(prev.z.size()));
  for (std::size_t i = 0; i < prev.z.size(); ++i)
    zr[static_cast<Eigen::Index>(i)] = prev.z[i] ? 1.0 : 0.0;
  const Eigen::VectorXd grad = ops.Qp * prev.theta_prime + ops.Pp * zr;
  return {prev.theta - config.alpha * grad, true};
}

std::vector<std::uint8_t> step_compute_residual(const NetworkState& prev,
                                                const Dataset& dataset,
                                                double eps_inlier, long) {
  const Eigen::VectorXd r = (dataset.y - dataset.X * prev.theta).cwiseAbs();
  std::vector<std::uint8_t> c(static_cast<std::size_t>(r.size()));
  for (Eigen::Index i = 0; i < r.size(); ++i)
    c[static_cast<std::size_t>(i)] = (r[i] <= eps_inlier) ? 1 : 0;
  return c;
}

long step_inlier_counter(const NetworkState& prev, long) {
  long s = 0;
  for (auto ci : prev.c) s += ci ? 1 : 0;
  return s;
}

namespace {

// Per-timestep cost of one synchronous sweep over all five layers.
void accumulate_ops(OpCounts& ops, long n, long d) {
  ops.synaptic_ops += n * (d * d + 4 * d + 1);
  ops.neuron_updates += n * d + 2 * n + d + 1;
  ops.spikes += n * d + 2 * n + d;
}

}  // namespace

FitResult run_snn_with_source(const Dataset& dataset, const SnnConfig& config,
                              SelectionSource& source) {
  dataset.validate();
  config.validate();
  const Eigen::Index n = dataset.N();
  const Eigen::Index d = dataset.d();
  const long tau = config.tau();
  const long L = config.total_timesteps();
  const LiftedOperators lifted = build_lifted(dataset);

  FitResult result;
  result.theta_best = Model{Eigen::VectorXd::Zero(d)};
  result.psi_best = -1;
  result.trace.resize(static_cast<std::size_t>(config.K));
  result.updates_per_window.assign(static_cast<std::size_t>(config.K), 0);
  result.resets_per_window.assign(static_cast<std::size_t>(config.K), 0);

  NetworkState prev = initial_state(n, d);
  NetworkState cur = initial_state(n, d);
  bool window_diverged = false;

  for (long t = 1; t <= L; ++t) {
    const long phase = window_phase(t, tau);
    const long k = window_index(t, tau);
    auto& wt = result.trace[static_cast<std::size_t>(k)];
    if (is_reset_phase(phase)) {
      window_diverged = false;
      wt.window = k;
      ++result.resets_per_window[static_cast<std::size_t>(k)];
    }

    cur.z = step_random_sampling(prev, source, t, tau);
    cur.theta_prime = step_auxiliary(prev, lifted, t, tau);
    if (window_diverged) {
      cur.theta = prev.theta;  // frozen until the next window reset
    } else {
      HypothesisStep hs = step_model_hypothesis(prev, lifted, config, t);
      if (hs.updated &&
          (!hs.theta.allFinite() || hs.theta.norm() > config.divergence_cap)) {
        window_diverged = true;
        wt.diverged = true;
        cur.theta = prev.theta;
      } else {
        cur.theta = std::move(hs.theta);
        if (hs.updated)
          ++result.updates_per_window[static_cast<std::size_t>(k)];
      }
    }
    cur.c = step_compute_residual(prev, dataset, config.eps_inlier, t);
    cur.psi = step_inlier_counter(prev, t);
    cur.theta_history[0] = prev.theta;
    cur.theta_history[1] = prev.theta_history[0];
    cur.t = t;
    accumulate_ops(result.op_counts, n, d);

    // psi at t scores theta at t-2; skip attributions into reset transients.
    if (t >= 3 && window_phase(t - 2, tau) >= 3) {
      if (cur.psi > result.psi_best) {
        result.psi_best = cur.psi;
        result.theta_best.theta = cur.theta_history[1];
      }
    }
    if (phase == tau) {
      wt.psi = cur.psi;
      wt.theta = cur.theta_history[1];
    }

    std::swap(prev, cur);
  }

  if (result.psi_best < 0) result.psi_best = 0;
  result.inlier_mask.assign(static_cast<std::size_t>(n), 0);
  const Eigen::VectorXd r = residuals(dataset, result.theta_best);
  for (Eigen::Index i = 0; i < n; ++i)
    result.inlier_mask[static_cast<std::size_t>(i)] =
        (r[i] <= config.eps_inlier) ? 1 : 0;
  return result;
}

FitResult run_snn(const Dataset& dataset, const SnnConfig& config) {
  dataset.validate();
  const double prob =
      static_cast<double>(dataset.d()) / static_cast<double>(dataset.N());
  BernoulliSource source(prob, derive_seed(config.seed, 1));
  return run_snn_with_source(dataset, config, source);
}

FitResult ls_refine(const FitResult& result, const Dataset& dataset,
                    double eps_inlier) {
  dataset.validate();
  const Eigen::Index d = dataset.d();
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < result.inlier_mask.size(); ++i)
    if (result.inlier_mask[i]) rows.push_back(static_cast<Eigen::Index>(i));
  if (static_cast<Eigen::Index>(rows.size()) < d)
    throw InsufficientPoints("ls_refine: fewer inliers than parameters");

  Dataset sub;
  sub.X.resize(static_cast<Eigen::Index>(rows.size()), d);
  sub.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    sub.X.row(static_cast<Eigen::Index>(i)) = dataset.X.row(rows[i]);
    sub.y[static_cast<Eigen::Index>(i)] = dataset.y[rows[i]];
  }

  FitResult refined = result;
  refined.refined = true;
  refined.psi_before_refine = result.psi_best;
  refined.theta_best = solve_ls(sub);
  refined.psi_best = consensus(dataset, refined.theta_best, eps_inlier);
  const Eigen::VectorXd r = residuals(dataset, refined.theta_best);
  refined.inlier_mask.assign(static_cast<std::size_t>(dataset.N()), 0);
  for (Eigen::Index i = 0; i < dataset.N(); ++i)
    refined.inlier_mask[static_cast<std::size_t>(i)] =
        (r[i] <= eps_inlier) ? 1 : 0;
  return refined;
}

}  // namespace neurorf
