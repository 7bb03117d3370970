#include "neurorf/ransac.hpp"

#include "neurorf/model_core.hpp"
#include "neurorf/random.hpp"

namespace neurorf {

namespace {

Dataset take_rows(const Dataset& dataset, const std::vector<std::size_t>& rows) {
  Dataset sub;
  sub.X.resize(static_cast<Eigen::Index>(rows.size()), dataset.d());
  sub.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    sub.X.row(static_cast<Eigen::Index>(i)) =
        dataset.X.row(static_cast<Eigen::Index>(rows[i]));
    sub.y[static_cast<Eigen::Index>(i)] =
        dataset.y[static_cast<Eigen::Index>(rows[i])];
  }
  return sub;
}

void finalize(FitResult& result, const Dataset& dataset, double eps_inlier) {
  if (result.psi_best < 0) {
    // Nothing was ever fit; report the zero model's consensus so the
    // best-psi always matches a re-score of theta_best.
    result.theta_best = Model{Eigen::VectorXd::Zero(dataset.d())};
    result.psi_best = consensus(dataset, result.theta_best, eps_inlier);
  }
  const Eigen::VectorXd r = residuals(dataset, result.theta_best);
  result.inlier_mask.assign(static_cast<std::size_t>(dataset.N()), 0);
  for (Eigen::Index i = 0; i < dataset.N(); ++i)
    result.inlier_mask[static_cast<std::size_t>(i)] =
        (r[i] <= eps_inlier) ? 1 : 0;
}

}  // namespace

FitResult ransac(const Dataset& dataset, const RansacConfig& config) {
  dataset.validate();
  config.validate();
  const Eigen::Index n = dataset.N();
  const Eigen::Index d = dataset.d();
  const long subset_size =
      config.min_subset_size > 0 ? config.min_subset_size : d;
  if (subset_size < d)
    throw ConfigError("ransac: subset size below model dimension");
  if (n < subset_size)
    throw InsufficientPoints("ransac: fewer rows than the subset size");

  Rng rng(derive_seed(config.seed, 1));
  FitResult result;
  result.theta_best = Model{Eigen::VectorXd::Zero(d)};
  result.psi_best = -1;
  result.trace.resize(static_cast<std::size_t>(config.K));

  const long retry_cap = 100 * config.K;
  for (long k = 0; k < config.K; ++k) {
    auto& wt = result.trace[static_cast<std::size_t>(k)];
    wt.window = k;
    Model model;
    for (;;) {
      const auto rows = rng.sample_without_replacement(
          static_cast<std::size_t>(n), static_cast<std::size_t>(subset_size));
      try {
        model = solve_ls(take_rows(dataset, rows), config.cond_cap);
        break;
      } catch (const DegenerateSubset&) {
        if (++result.degenerate_retries > retry_cap)
          throw DegenerateData(
              "ransac: degenerate-subset retry cap exhausted");
      }
    }
    const long psi = consensus(dataset, model, config.eps_inlier);
    wt.psi = psi;
    wt.theta = model.theta;
    if (psi > result.psi_best) {
      result.psi_best = psi;
      result.theta_best = model;
    }
  }
  finalize(result, dataset, config.eps_inlier);
  return result;
}

FitResult ransac_injected(const Dataset& dataset, const RansacConfig& config,
                          const std::vector<SelectionVector>& selections) {
  dataset.validate();
  config.validate();
  if (static_cast<long>(selections.size()) != config.K)
    throw ConfigError("ransac_injected: selection count does not match K");
  const Eigen::Index d = dataset.d();

  FitResult result;
  result.theta_best = Model{Eigen::VectorXd::Zero(d)};
  result.psi_best = -1;
  result.trace.resize(static_cast<std::size_t>(config.K));

  for (long k = 0; k < config.K; ++k) {
    auto& wt = result.trace[static_cast<std::size_t>(k)];
    wt.window = k;
    wt.theta = Eigen::VectorXd::Zero(d);
    const auto& z = selections[static_cast<std::size_t>(k)].z;
    if (static_cast<Eigen::Index>(z.size()) != dataset.N())
      throw ConfigError("ransac_injected: selection length mismatch");
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i]) rows.push_back(i);
    if (static_cast<Eigen::Index>(rows.size()) < d) continue;  // no fit
    Model model;
    try {
      model = solve_ls(take_rows(dataset, rows), config.cond_cap);
    } catch (const DegenerateSubset&) {
      ++result.degenerate_retries;
      continue;
    }
    const long psi = consensus(dataset, model, config.eps_inlier);
    wt.psi = psi;
    wt.theta = model.theta;
    if (psi > result.psi_best) {
      result.psi_best = psi;
      result.theta_best = model;
    }
  }
  finalize(result, dataset, config.eps_inlier);
  return result;
}

}  // namespace neurorf
