#include "neurorf/fixedpoint.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "neurorf/model_core.hpp"
#include "neurorf/random.hpp"

namespace neurorf {

long long quantize_alpha(double alpha, int beta, int state_bits) {
  if (!(alpha > 0.0)) throw ConfigError("quantize_alpha: alpha must be > 0");
  if (beta < 0) throw ConfigError("quantize_alpha: beta must be >= 0");
  const double scaled = std::ceil(std::ldexp(alpha, beta));
  const double state_max = std::ldexp(1.0, state_bits - 1) - 1.0;
  if (scaled > state_max)
    throw ConfigOverflow("quantize_alpha: alpha_bar exceeds the state range");
  return static_cast<long long>(scaled);
}

FixedPointConfig make_fixed_point_config(double alpha, int beta,
                                         int weight_bits, int state_bits,
                                         int lfsr_bits) {
  FixedPointConfig cfg;
  cfg.beta = beta;
  cfg.weight_bits = weight_bits;
  cfg.state_bits = state_bits;
  cfg.lfsr_bits = lfsr_bits;
  cfg.alpha_bar = quantize_alpha(alpha, beta, state_bits);
  cfg.validate();
  return cfg;
}

LfsrState make_lfsr(std::uint64_t seed, int bits) {
  if (bits != 16 && bits != 24)
    throw ConfigError("lfsr: width must be 16 or 24");
  const std::uint32_t mask = (1u << bits) - 1;
  std::uint64_t s = seed;
  std::uint32_t reg = 0;
  while (reg == 0) reg = static_cast<std::uint32_t>(splitmix64(s)) & mask;
  LfsrState state;
  state.reg = reg;
  state.taps = (bits == 16) ? 0xB400u : 0xE10000u;
  state.bits = bits;
  return state;
}

std::uint32_t lfsr_next(LfsrState& state) {
  if (state.reg == 0)
    throw InvalidSeed("lfsr: register is zero (degenerate fixed point)");
  const std::uint32_t value = state.reg;
  state.reg = (state.reg >> 1) ^ ((state.reg & 1u) ? state.taps : 0u);
  return value;
}

bool sample_switch(long d, long n, std::uint32_t lfsr_value, int lfsr_bits) {
  const long long scaled =
      (static_cast<long long>(n) * static_cast<long long>(lfsr_value)) >>
      lfsr_bits;
  return static_cast<long long>(d) > scaled;
}

ShiftUpdate shift_gd_update(const std::vector<long long>& theta,
                            const std::vector<long long>& grad,
                            long long alpha_bar, int beta, int state_bits) {
  if (theta.size() != grad.size())
    throw DimensionError("shift_gd_update: theta/grad length mismatch");
  const long long state_max = (1LL << (state_bits - 1)) - 1;
  const long long state_min = -state_max;
  const long long rem_mask = (1LL << beta) - 1;
  ShiftUpdate out;
  out.theta.resize(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const long long scaled = grad[j] * alpha_bar;
    // C++20 defines >> on negatives as arithmetic shift (floor toward -inf).
    long long next = theta[j] - (scaled >> beta);
    if ((scaled & rem_mask) != 0) ++out.drift;
    if (next > state_max) {
      next = state_max;
      ++out.saturations;
    } else if (next < state_min) {
      next = state_min;
      ++out.saturations;
    }
    out.theta[j] = next;
  }
  return out;
}

Dataset IntDataset::to_real() const {
  Dataset ds;
  ds.X = X.cast<double>();
  ds.y = y.cast<double>();
  return ds;
}

IntDataset quantize_dataset(const Dataset& dataset, const FixedPointConfig& cfg,
                            long long scale) {
  dataset.validate();
  cfg.validate();
  if (scale < 1) throw ConfigError("quantize_dataset: scale must be >= 1");

  const Eigen::Index n = dataset.N();
  const Eigen::Index d = dataset.d();
  IntDataset out;
  out.X.resize(n, d);
  out.y.resize(n);
  out.scale = scale;

  const auto to_int = [&](double v, const char* what, Eigen::Index i,
                          Eigen::Index j) {
    const double scaled = v * static_cast<double>(scale);
    const double rounded = std::nearbyint(scaled);
    if (std::abs(scaled - rounded) > 1e-9) {
      std::ostringstream msg;
      msg << "quantize_dataset: " << what << "[" << i;
      if (j >= 0) msg << "," << j;
      msg << "] = " << v << " is not integral at scale " << scale;
      throw NonIntegerData(msg.str());
    }
    return static_cast<long long>(rounded);
  };

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j)
      out.X(i, j) = to_int(dataset.X(i, j), "X", i, j);
    out.y[i] = to_int(dataset.y[i], "y", i, -1);
  }

  const long long wmin = cfg.weight_min();
  const long long wmax = cfg.weight_max();
  const auto check_weight = [&](long long w, const char* what, Eigen::Index i,
                                Eigen::Index a, Eigen::Index b) {
    if (w < wmin || w > wmax) {
      std::ostringstream msg;
      msg << "quantize_dataset: " << what << " entry for point " << i << " ("
          << a << "," << b << ") = " << w << " outside [" << wmin << ", "
          << wmax << "]";
      throw WeightOverflow(msg.str());
    }
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b)
        check_weight(out.X(i, a) * out.X(i, b), "x_i x_i^T", i, a, b);
      check_weight(-out.y[i] * out.X(i, a), "-y_i x_i", i, a, 0);
    }
  }
  return out;
}

LfsrSource::LfsrSource(Eigen::Index n, Eigen::Index d, std::uint64_t seed,
                       int lfsr_bits)
    : d_(static_cast<long>(d)), n_(static_cast<long>(n)), bits_(lfsr_bits) {
  streams_.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    streams_.push_back(
        make_lfsr(derive_seed(seed, static_cast<std::uint64_t>(i)), lfsr_bits));
}

void LfsrSource::sample(std::vector<std::uint8_t>& z, long) {
  if (z.size() != streams_.size())
    throw ConfigError("lfsr source: selection length mismatch");
  for (std::size_t i = 0; i < z.size(); ++i) {
    const std::uint32_t v = lfsr_next(streams_[i]);
    z[i] = sample_switch(d_, n_, v, bits_) ? 1 : 0;
  }
}

namespace {

using VecI = Eigen::Matrix<long long, Eigen::Dynamic, 1>;
using MatI = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

void accumulate_ops(OpCounts& ops, long n, long d) {
  ops.synaptic_ops += n * (d * d + 4 * d + 1);
  ops.neuron_updates += n * d + 2 * n + d + 1;
  ops.spikes += n * d + 2 * n + d;
}

}  // namespace

FitResult run_fixed_with_source(const IntDataset& dataset,
                                const SnnConfig& config,
                                const FixedPointConfig& fp,
                                SelectionSource& source) {
  config.validate();
  fp.validate();
  if (dataset.N() < 1 || dataset.d() < 1)
    throw DimensionError("run_fixed: empty dataset");

  const double eps_rounded = std::nearbyint(config.eps_inlier);
  if (std::abs(config.eps_inlier - eps_rounded) > 1e-9)
    throw ConfigError("run_fixed: eps_inlier must be an integer in dataset units");
  const long long eps = static_cast<long long>(eps_rounded);

  const Eigen::Index n = dataset.N();
  const Eigen::Index d = dataset.d();
  const long tau = config.tau();
  const long L = config.total_timesteps();

  // Integer synaptic operators; entries already validated against the
  // weight range by quantize_dataset.
  MatI QpI(d, n * d);
  MatI PpI(d, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const VecI xi = dataset.X.row(i).transpose();
    QpI.block(0, i * d, d, d) = xi * xi.transpose();
    PpI.col(i) = -dataset.y[i] * xi;
  }

  FitResult result;
  result.theta_best = Model{Eigen::VectorXd::Zero(d)};
  result.psi_best = -1;
  result.trace.resize(static_cast<std::size_t>(config.K));
  result.updates_per_window.assign(static_cast<std::size_t>(config.K), 0);
  result.resets_per_window.assign(static_cast<std::size_t>(config.K), 0);

  std::vector<std::uint8_t> z(static_cast<std::size_t>(n), 0);
  std::vector<std::uint8_t> z_next(static_cast<std::size_t>(n), 0);
  VecI theta_prime = VecI::Zero(n * d);
  VecI theta_prime_next = VecI::Zero(n * d);
  std::vector<long long> theta(static_cast<std::size_t>(d), 0);
  std::vector<long long> theta_next(static_cast<std::size_t>(d), 0);
  std::vector<std::uint8_t> c(static_cast<std::size_t>(n), 0);
  std::vector<std::uint8_t> c_next(static_cast<std::size_t>(n), 0);
  long psi = 0;
  std::vector<long long> hist1(static_cast<std::size_t>(d), 0);  // theta at t-1
  std::vector<long long> hist2(static_cast<std::size_t>(d), 0);  // theta at t-2

  VecI grad(d);
  std::vector<long long> grad_v(static_cast<std::size_t>(d), 0);

  const auto to_model = [d](const std::vector<long long>& v) {
    Eigen::VectorXd m(d);
    for (Eigen::Index j = 0; j < d; ++j)
      m[j] = static_cast<double>(v[static_cast<std::size_t>(j)]);
    return m;
  };

  for (long t = 1; t <= L; ++t) {
    const long phase = window_phase(t, tau);
    const long k = window_index(t, tau);
    auto& wt = result.trace[static_cast<std::size_t>(k)];
    if (is_reset_phase(phase)) {
      wt.window = k;
      ++result.resets_per_window[static_cast<std::size_t>(k)];
    }

    // RandomSampling: fresh selection at window start, otherwise hold.
    z_next = z;
    if (is_reset_phase(phase)) source.sample(z_next, k);

    // Auxiliary: reset at window start, otherwise z_i * theta_j from t-1.
    if (is_reset_phase(phase)) {
      theta_prime_next.setZero();
    } else {
      for (Eigen::Index i = 0; i < n; ++i) {
        const bool zi = z[static_cast<std::size_t>(i)] != 0;
        for (Eigen::Index j = 0; j < d; ++j)
          theta_prime_next[i * d + j] =
              zi ? theta[static_cast<std::size_t>(j)] : 0;
      }
    }

    // ModelHypothesis: reset / shift-based update / hold.
    if (is_reset_phase(phase)) {
      std::fill(theta_next.begin(), theta_next.end(), 0);
    } else if (is_update_phase(phase, config.M)) {
      grad = QpI * theta_prime;
      for (Eigen::Index i = 0; i < n; ++i)
        if (z[static_cast<std::size_t>(i)]) grad += PpI.col(i);
      for (Eigen::Index j = 0; j < d; ++j)
        grad_v[static_cast<std::size_t>(j)] = grad[j];
      ShiftUpdate up =
          shift_gd_update(theta, grad_v, fp.alpha_bar, fp.beta, fp.state_bits);
      theta_next = std::move(up.theta);
      result.saturation_count += up.saturations;
      wt.saturations += up.saturations;
      wt.shift_drift += up.drift;
      ++result.updates_per_window[static_cast<std::size_t>(k)];
    } else {
      theta_next = theta;
    }

    // ComputeResidual against theta from t-1.
    for (Eigen::Index i = 0; i < n; ++i) {
      long long acc = -dataset.y[i];
      for (Eigen::Index j = 0; j < d; ++j)
        acc += dataset.X(i, j) * theta[static_cast<std::size_t>(j)];
      const long long r = acc < 0 ? -acc : acc;
      c_next[static_cast<std::size_t>(i)] = (r <= eps) ? 1 : 0;
    }

    // InlierCounter against c from t-1.
    psi = 0;
    for (auto ci : c) psi += ci ? 1 : 0;

    hist2 = hist1;
    hist1 = theta;

    std::swap(z, z_next);
    std::swap(theta_prime, theta_prime_next);
    std::swap(theta, theta_next);
    std::swap(c, c_next);
    accumulate_ops(result.op_counts, n, d);

    if (t >= 3 && window_phase(t - 2, tau) >= 3) {
      if (psi > result.psi_best) {
        result.psi_best = psi;
        result.theta_best.theta = to_model(hist2);
      }
    }
    if (phase == tau) {
      wt.psi = psi;
      wt.theta = to_model(hist2);
    }
  }

  if (result.psi_best < 0) result.psi_best = 0;
  result.inlier_mask.assign(static_cast<std::size_t>(n), 0);
  {
    std::vector<long long> best(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j)
      best[static_cast<std::size_t>(j)] =
          static_cast<long long>(result.theta_best.theta[j]);
    for (Eigen::Index i = 0; i < n; ++i) {
      long long acc = -dataset.y[i];
      for (Eigen::Index j = 0; j < d; ++j)
        acc += dataset.X(i, j) * best[static_cast<std::size_t>(j)];
      const long long r = acc < 0 ? -acc : acc;
      result.inlier_mask[static_cast<std::size_t>(i)] = (r <= eps) ? 1 : 0;
    }
  }
  return result;
}

FitResult run_fixed(const IntDataset& dataset, const SnnConfig& config,
                    const FixedPointConfig& fp) {
  LfsrSource source(dataset.N(), dataset.d(), derive_seed(config.seed, 1),
                    fp.lfsr_bits);
  return run_fixed_with_source(dataset, config, fp, source);
}

FitResult run(const Dataset& dataset, const SnnConfig& config, Backend backend,
              const FixedPointConfig* fp) {
  if (backend == Backend::FullPrecision) return run_snn(dataset, config);
  if (fp == nullptr)
    throw ConfigError("run: fixed-point backend requires a FixedPointConfig");
  const IntDataset qd = quantize_dataset(dataset, *fp);
  return run_fixed(qd, config, *fp);
}

}  // namespace neurorf
