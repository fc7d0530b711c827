#include "seglab/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "seglab/parallel.hpp"
#include "seglab/rng.hpp"
#include "seglab/run.hpp"

namespace seglab {

namespace {

MomentEstimate estimate_from(const std::vector<double>& values) {
  MomentEstimate est;
  est.trials = static_cast<std::int64_t>(values.size());
  if (values.empty()) return est;
  double sum = 0.0;
  for (const double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (const double v : values) sq += (v - est.mean) * (v - est.mean);
    const double var = sq / static_cast<double>(values.size() - 1);
    est.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return est;
}

}  // namespace

EpochErrorSample epoch_error(const MethodSpec& spec,
                             const FiniteSumProblem& problem, const Vector& z0,
                             double eta, std::uint64_t seed) {
  if (!(eta > 0.0)) {
    throw std::invalid_argument("epoch_error: eta must be positive");
  }
  double beta = eta;
  switch (spec.family) {
    case Family::SegRr:
    case Family::SegFfa:
    case Family::SegUs:
      break;
    case Family::SegFf:
      beta = eta / 2.0;  // two passes, so the first-order total stays eta*n
      break;
    default:
      throw std::invalid_argument(
          "epoch_error: supported methods are SEG-US/RR/FF/FFA");
  }
  const StepsizeSchedule schedule = ConstantStep{beta};
  Rng rng(seed);
  const EpochResult result =
      run_epoch(spec, problem, z0, 0, schedule, rng);

  const double n = static_cast<double>(problem.size());
  const Vector lookahead = z0 - eta * n * full_gradient(problem, z0);
  const Vector reference = z0 - eta * n * full_gradient(problem, lookahead);

  EpochErrorSample sample;
  sample.eta = eta;
  sample.error_norm = (result.z - reference).norm();
  sample.stepsize_in_regime = eta < 1.0 / (n * problem.smoothness());
  return sample;
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("ols_slope: needs >= 2 paired samples");
  }
  const double count = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_slope: degenerate x");
  return sxy / sxx;
}

double fit_error_order(const std::vector<EpochErrorSample>& samples) {
  std::vector<double> log_eta, log_err;
  for (const auto& s : samples) {
    if (s.error_norm > 0.0 && std::isfinite(s.error_norm)) {
      log_eta.push_back(std::log(s.eta));
      log_err.push_back(std::log(s.error_norm));
    }
  }
  std::vector<double> distinct = log_eta;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  if (distinct.size() < 4) {
    throw std::invalid_argument(
        "fit_error_order: needs >= 4 usable samples with distinct eta");
  }
  return ols_slope(log_eta, log_err);
}

namespace {

// Column-by-column extraction of the linear map z -> seg_inner_step(z).second
// for one component; valid because the offsets are zero.
Matrix inner_step_matrix(const FiniteSumProblem& problem, int index,
                         double alpha, double beta) {
  const Eigen::Index d = problem.dim();
  Matrix step(d, d);
  const auto grad = [&](const Vector& p) {
    return component_gradient(problem, index, p);
  };
  for (Eigen::Index col = 0; col < d; ++col) {
    const Vector basis = Vector::Unit(d, col);
    step.col(col) = seg_inner_step(basis, grad, alpha, beta).second;
  }
  return step;
}

double factor_from_average(Matrix average) {
  average = 0.5 * (average + average.transpose().eval());
  const double scale = average.diagonal().mean();
  Matrix deviation = average;
  deviation.diagonal().array() -= scale;
  if (deviation.cwiseAbs().maxCoeff() <=
      1e-12 * std::max(1.0, std::abs(scale))) {
    return scale;  // multiple of the identity
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(average,
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("exact_expected_growth: eigensolver failed");
  }
  return solver.eigenvalues().maxCoeff();
}

}  // namespace

double exact_expected_growth(Family family, const FiniteSumProblem& problem,
                             double alpha, double beta) {
  if (family != Family::SegUs && family != Family::SegRr &&
      family != Family::SegFf) {
    throw std::invalid_argument(
        "exact_expected_growth: family must be SEG-US, SEG-RR, or SEG-FF");
  }
  const int n = problem.size();
  if (n > 8) {
    throw std::invalid_argument(
        "exact_expected_growth: n > 8 is combinatorial; use Monte Carlo");
  }
  for (const auto& comp : problem.components()) {
    if (comp.saddle_offset().cwiseAbs().maxCoeff() != 0.0) {
      throw std::invalid_argument(
          "exact_expected_growth: problem must have zero offsets");
    }
  }
  const Eigen::Index d = problem.dim();
  std::vector<Matrix> steps;
  steps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    steps.push_back(inner_step_matrix(problem, i, alpha, beta));
  }

  Matrix average = Matrix::Zero(d, d);
  if (family == Family::SegUs) {
    for (const auto& s : steps) average += s.transpose() * s;
    average /= static_cast<double>(n);
    return factor_from_average(std::move(average));
  }

  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::int64_t draws = 0;
  do {
    Matrix forward = Matrix::Identity(d, d);
    for (int i = 0; i < n; ++i) {
      forward = steps[static_cast<std::size_t>(
                    perm[static_cast<std::size_t>(i)])] *
                forward;
    }
    Matrix epoch = forward;
    if (family == Family::SegFf) {
      Matrix reverse = Matrix::Identity(d, d);
      for (int i = n - 1; i >= 0; --i) {
        reverse = steps[static_cast<std::size_t>(
                      perm[static_cast<std::size_t>(i)])] *
                  reverse;
      }
      epoch = reverse * forward;
    }
    average += epoch.transpose() * epoch;
    ++draws;
  } while (std::next_permutation(perm.begin(), perm.end()));
  average /= static_cast<double>(draws);
  return factor_from_average(std::move(average));
}

std::vector<MomentEstimate> mc_expected_sq_norm(
    const MethodSpec& spec, const FiniteSumProblem& problem, const Vector& z0,
    const StepsizeSchedule& schedule, int epochs, int trials,
    std::uint64_t master_seed) {
  if (trials < 2) {
    throw std::invalid_argument("mc_expected_sq_norm: needs trials >= 2");
  }
  if (epochs < 0) {
    throw std::invalid_argument("mc_expected_sq_norm: epochs must be >= 0");
  }
  const Vector z_star = equilibrium(problem);

  std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](std::int64_t trial) {
    Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(trial)));
    Vector z = z0;
    auto& series = per_trial[static_cast<std::size_t>(trial)];
    series.reserve(static_cast<std::size_t>(epochs) + 1);
    series.push_back((z - z_star).squaredNorm());
    for (int k = 0; k < epochs; ++k) {
      EpochResult result =
          run_epoch(spec, problem, std::move(z), k, schedule, rng);
      z = std::move(result.z);
      if (result.diverged) break;  // contribute values until truncation
      series.push_back((z - z_star).squaredNorm());
    }
  });

  std::vector<MomentEstimate> estimates;
  estimates.reserve(static_cast<std::size_t>(epochs) + 1);
  for (int k = 0; k <= epochs; ++k) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(trials));
    for (const auto& series : per_trial) {
      if (static_cast<int>(series.size()) > k) {
        values.push_back(series[static_cast<std::size_t>(k)]);
      }
    }
    estimates.push_back(estimate_from(values));
  }
  return estimates;
}

FloorRecursion segus_floor_recursion(double alpha, double beta, double L,
                                     double sigma, double z0_sq, int steps) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument(
        "segus_floor_recursion: alpha, beta must be positive");
  }
  if (!(L > 0.0) || sigma < 0.0 || z0_sq < 0.0 || steps < 0) {
    throw std::invalid_argument("segus_floor_recursion: bad parameters");
  }
  const double al = alpha * L;
  const double coefficient =
      1.0 - 2.0 * alpha * beta * L * L + beta * beta * L * L * (1.0 + al * al);
  const double additive = beta * beta * sigma * sigma * (1.0 + al * al);
  FloorRecursion out;
  out.values.reserve(static_cast<std::size_t>(steps) + 1);
  double value = z0_sq;
  out.values.push_back(value);
  for (int t = 0; t < steps; ++t) {
    value = coefficient * value + additive;
    out.values.push_back(value);
  }
  if (coefficient > 0.0 && coefficient < 1.0) {
    out.fixed_point = additive / (1.0 - coefficient);
  }
  return out;
}

std::vector<MomentEstimate> mc_segus_sq_norm(const FiniteSumProblem& problem,
                                             const Vector& z0, double alpha,
                                             double beta, int steps,
                                             int trials,
                                             std::uint64_t master_seed) {
  if (trials < 2 || steps < 0) {
    throw std::invalid_argument("mc_segus_sq_norm: needs trials >= 2, steps >= 0");
  }
  const int n = problem.size();
  std::vector<std::vector<double>> per_trial(
      static_cast<std::size_t>(trials),
      std::vector<double>(static_cast<std::size_t>(steps) + 1, 0.0));
  parallel_for(trials, [&](std::int64_t trial) {
    Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(trial)));
    Vector z = z0;
    auto& series = per_trial[static_cast<std::size_t>(trial)];
    series[0] = z.squaredNorm();
    for (int t = 0; t < steps; ++t) {
      const int index =
          static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const auto grad = [&](const Vector& p) {
        return component_gradient(problem, index, p);
      };
      z = seg_inner_step(z, grad, alpha, beta).second;
      series[static_cast<std::size_t>(t) + 1] = z.squaredNorm();
    }
  });

  std::vector<MomentEstimate> estimates;
  estimates.reserve(static_cast<std::size_t>(steps) + 1);
  std::vector<double> values(static_cast<std::size_t>(trials));
  for (int t = 0; t <= steps; ++t) {
    for (int trial = 0; trial < trials; ++trial) {
      values[static_cast<std::size_t>(trial)] =
          per_trial[static_cast<std::size_t>(trial)]
                   [static_cast<std::size_t>(t)];
    }
    estimates.push_back(estimate_from(values));
  }
  return estimates;
}

namespace {

void check_phi_arguments(int n, double nu) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("phi_moments: n must be even >= 2");
  }
  if (!(nu > 0.0) || !(nu < 1.0)) {
    throw std::invalid_argument("phi_moments: nu must lie in (0, 1)");
  }
}

std::vector<double> phi_weights(int n, double nu) {
  std::vector<double> weights(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    weights[static_cast<std::size_t>(j)] =
        std::pow(1.0 - nu, static_cast<double>(n - 1 - j));
  }
  return weights;
}

}  // namespace

PhiMoments phi_moments_enumerate(int n, double nu) {
  check_phi_arguments(n, nu);
  if (n > 10) {
    throw std::invalid_argument("phi_moments_enumerate: requires n <= 10");
  }
  const auto weights = phi_weights(n, nu);
  const int half = n / 2;
  double mean_sum = 0.0;
  double second_sum = 0.0;
  double third_sum = 0.0;
  std::int64_t sequences = 0;
  // Enumerate balanced sign sequences whose first sign is +1; the complement
  // of each is also balanced, contributing -Phi, so odd moments cancel
  // exactly.
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if ((mask & 1u) == 0u) continue;
    if (__builtin_popcount(mask) != half) continue;
    double phi = 0.0;
    for (int j = 0; j < n; ++j) {
      const double sign = (mask >> j) & 1u ? 1.0 : -1.0;
      phi += sign * weights[static_cast<std::size_t>(j)];
    }
    mean_sum += phi + (-phi);
    third_sum += phi * phi * phi + (-phi) * (-phi) * (-phi);
    second_sum += 2.0 * phi * phi;
    sequences += 2;
  }
  PhiMoments result;
  result.mean = {mean_sum / static_cast<double>(sequences), 0.0, sequences};
  result.second = {second_sum / static_cast<double>(sequences), 0.0,
                   sequences};
  result.third = {third_sum / static_cast<double>(sequences), 0.0, sequences};
  return result;
}

PhiMoments phi_moments_montecarlo(int n, double nu, std::int64_t trials,
                                  std::uint64_t seed) {
  check_phi_arguments(n, nu);
  if (trials < 2) {
    throw std::invalid_argument("phi_moments_montecarlo: needs trials >= 2");
  }
  const auto weights = phi_weights(n, nu);
  Rng rng(seed);
  // Streaming moments of Phi, Phi^2, Phi^3.
  double m1 = 0.0, m2 = 0.0, m3 = 0.0;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  const int half = n / 2;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const std::vector<int> perm = sample_permutation(rng, n);
    double phi = 0.0;
    for (int j = 0; j < n; ++j) {
      const double sign = perm[static_cast<std::size_t>(j)] < half ? 1.0 : -1.0;
      phi += sign * weights[static_cast<std::size_t>(j)];
    }
    const double phi2 = phi * phi;
    const double phi3 = phi2 * phi;
    const double count = static_cast<double>(trial + 1);
    const double d1 = phi - m1;
    m1 += d1 / count;
    s1 += d1 * (phi - m1);
    const double d2 = phi2 - m2;
    m2 += d2 / count;
    s2 += d2 * (phi2 - m2);
    const double d3 = phi3 - m3;
    m3 += d3 / count;
    s3 += d3 * (phi3 - m3);
  }
  const double count = static_cast<double>(trials);
  const auto std_error = [count](double s) {
    return std::sqrt(s / (count - 1.0) / count);
  };
  PhiMoments result;
  result.mean = {m1, std_error(s1), trials};
  result.second = {m2, std_error(s2), trials};
  result.third = {m3, std_error(s3), trials};
  return result;
}

std::vector<double> rr_lower_bound_predicted_sq_norm(double L, double mu,
                                                     double sigma, int n,
                                                     double alpha, double beta,
                                                     const Vector& z0,
                                                     int epochs) {
  if (z0.size() != 3) {
    throw std::invalid_argument(
        "rr_lower_bound_predicted_sq_norm: z0 must be (x1, x2, y)");
  }
  if (epochs < 0 || !(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument(
        "rr_lower_bound_predicted_sq_norm: bad parameters");
  }
  const double nu = beta * L / 2.0 - alpha * beta * L * L / 4.0;
  const double phi_second = phi_moments_enumerate(n, nu).second.mean;
  const double rx1 = 1.0 - beta * L + alpha * beta * L * L;
  const double rx2 = 1.0 - beta * L / 2.0 + alpha * beta * L * L / 4.0;
  const double ry = 1.0 - beta * mu + alpha * beta * mu * mu;
  const double noise = beta * beta * sigma * sigma *
                       (1.0 - alpha * L / 2.0) * (1.0 - alpha * L / 2.0) *
                       phi_second;
  const double epoch_rx1 = std::pow(rx1, 2 * n);
  const double epoch_rx2 = std::pow(rx2, 2 * n);
  const double epoch_ry = std::pow(ry, 2 * n);

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(epochs) + 1);
  double x1_sq = z0[0] * z0[0];
  double x2_sq = z0[1] * z0[1];
  double y_sq = z0[2] * z0[2];
  out.push_back(x1_sq + x2_sq + y_sq);
  for (int k = 0; k < epochs; ++k) {
    x1_sq *= epoch_rx1;
    x2_sq = epoch_rx2 * x2_sq + noise;
    y_sq *= epoch_ry;
    out.push_back(x1_sq + x2_sq + y_sq);
  }
  return out;
}

MomentEstimate noise_floor(const MethodSpec& spec,
                           const FiniteSumProblem& problem, double eta,
                           int burn_in_epochs, int window_epochs, int trials,
                           std::uint64_t seed) {
  if (!(eta > 0.0) || burn_in_epochs < 0 || window_epochs < 1 || trials < 1) {
    throw std::invalid_argument("noise_floor: bad parameters");
  }
  const Vector z_star = equilibrium(problem);
  const StepsizeSchedule schedule = ConstantStep{eta};

  std::vector<double> values(static_cast<std::size_t>(trials), 0.0);
  std::atomic<bool> diverged{false};
  parallel_for(trials, [&](std::int64_t trial) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    Vector z = z_star;
    std::int64_t epoch = 0;
    for (int k = 0; k < burn_in_epochs; ++k) {
      EpochResult result =
          run_epoch(spec, problem, std::move(z), epoch++, schedule, rng);
      if (result.diverged) {
        diverged.store(true);
        return;
      }
      z = std::move(result.z);
    }
    double sum = 0.0;
    for (int k = 0; k < window_epochs; ++k) {
      EpochResult result =
          run_epoch(spec, problem, std::move(z), epoch++, schedule, rng);
      if (result.diverged) {
        diverged.store(true);
        return;
      }
      z = std::move(result.z);
      sum += (z - z_star).squaredNorm();
    }
    values[static_cast<std::size_t>(trial)] =
        sum / static_cast<double>(window_epochs);
  });
  if (diverged.load()) {
    throw std::runtime_error(
        "noise_floor: a trial diverged; eta is outside the convergent regime");
  }
  return estimate_from(values);
}

}  // namespace seglab
