#include "seglab/run.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace seglab {

Vector eg_plus_step(const FiniteSumProblem& problem, const Vector& z,
                    double eta1, double eta2) {
  if (!(eta1 > 0.0) || !(eta2 > 0.0)) {
    throw std::invalid_argument("eg_plus_step: stepsizes must be positive");
  }
  const Vector lookahead = z - eta1 * full_gradient(problem, z);
  return z - eta2 * full_gradient(problem, lookahead);
}

Vector anchor(const Vector& z_start, const Vector& z_end, double theta) {
  if (theta < 0.0) {
    throw std::invalid_argument("anchor: theta must be nonnegative");
  }
  if (z_start.size() != z_end.size()) {
    throw std::invalid_argument("anchor: dimension mismatch");
  }
  return (z_end + theta * z_start) / (1.0 + theta);
}

namespace {

bool finite(const Vector& z) { return z.allFinite(); }

EpochResult run_uniform_epoch(const MethodSpec& spec,
                              const FiniteSumProblem& problem, Vector z,
                              std::int64_t epoch_index,
                              const StepsizeSchedule& schedule, Rng& rng) {
  const int n = problem.size();
  const Vector z_start = z;
  const auto un = static_cast<std::uint64_t>(n);
  for (int i = 0; i < n; ++i) {
    const std::int64_t t = epoch_index * n + i;
    if (spec.family == Family::Dseg) {
      const auto [eta1, eta2] = dual_steps(schedule, t);
      const int extrapolation_index = static_cast<int>(rng.below(un));
      const int update_index = static_cast<int>(rng.below(un));
      const Vector w =
          z - eta1 * component_gradient(problem, extrapolation_index, z);
      z -= eta2 * component_gradient(problem, update_index, w);
    } else {
      const double eta = primary_step(schedule, t);
      const int index = static_cast<int>(rng.below(un));
      const auto grad = [&](const Vector& p) {
        return component_gradient(problem, index, p);
      };
      if (spec.family == Family::SgdaUs) {
        z -= eta * grad(z);
      } else {
        z = seg_inner_step(z, grad, alpha_for(spec, eta), eta).second;
      }
    }
    if (!finite(z)) return {std::move(z), true};
  }
  if (spec.family == Family::SegUsa) z = anchor(z_start, z, 1.0);
  return {std::move(z), false};
}

EpochResult run_shuffle_epoch(const MethodSpec& spec,
                              const FiniteSumProblem& problem, Vector z,
                              std::int64_t epoch_index,
                              const StepsizeSchedule& schedule, Rng& rng) {
  const int n = problem.size();
  const Vector z_start = z;
  const double beta = primary_step(schedule, epoch_index);
  const double alpha = alpha_for(spec, beta);
  const std::vector<int> perm = sample_permutation(rng, n);
  const bool flip_flop =
      spec.family == Family::SegFf || spec.family == Family::SegFfa;
  const int steps = flip_flop ? 2 * n : n;
  for (int i = 0; i < steps; ++i) {
    const int index = (i < n) ? perm[static_cast<std::size_t>(i)]
                              : perm[static_cast<std::size_t>(2 * n - 1 - i)];
    const auto grad = [&](const Vector& p) {
      return component_gradient(problem, index, p);
    };
    if (spec.family == Family::SgdaRr) {
      z -= beta * grad(z);
    } else {
      z = seg_inner_step(z, grad, alpha, beta).second;
    }
    if (!finite(z)) return {std::move(z), true};
  }
  if (spec.family == Family::SegFfa || spec.family == Family::SegRra) {
    z = anchor(z_start, z, 1.0);
  }
  return {std::move(z), false};
}

}  // namespace

EpochResult run_epoch(const MethodSpec& spec, const FiniteSumProblem& problem,
                      Vector z, std::int64_t epoch_index,
                      const StepsizeSchedule& schedule, Rng& rng) {
  if (z.size() != problem.dim()) {
    throw std::invalid_argument("run_epoch: dimension mismatch");
  }
  if (is_dual(schedule) != (spec.family == Family::Dseg)) {
    throw std::invalid_argument(
        "run_epoch: dual schedules pair with DSEG only");
  }
  switch (spec.family) {
    case Family::Eg:
    case Family::EgPlus: {
      const double eta = primary_step(schedule, epoch_index);
      const double eta2 =
          spec.family == Family::EgPlus ? spec.eg_ratio * eta : eta;
      Vector next = eg_plus_step(problem, z, eta, eta2);
      const bool diverged = !finite(next);
      return {std::move(next), diverged};
    }
    case Family::SgdaUs:
    case Family::SegUs:
    case Family::SegUsa:
    case Family::Dseg:
      return run_uniform_epoch(spec, problem, std::move(z), epoch_index,
                               schedule, rng);
    default:
      return run_shuffle_epoch(spec, problem, std::move(z), epoch_index,
                               schedule, rng);
  }
}

RunRecord run(const MethodSpec& spec, const FiniteSumProblem& problem,
              const Vector& z0, const StepsizeSchedule& schedule,
              std::int64_t budget_passes, std::int64_t checkpoint_stride,
              std::uint64_t seed, bool record_snapshots) {
  if (budget_passes < 0 || checkpoint_stride < 1) {
    throw std::invalid_argument(
        "run: needs budget_passes >= 0 and checkpoint_stride >= 1");
  }
  if (z0.size() != problem.dim()) {
    throw std::invalid_argument("run: dimension mismatch");
  }
  validate(schedule);

  std::optional<Vector> z_star;
  try {
    z_star = equilibrium(problem);
  } catch (const NoEquilibriumError&) {
  }

  RunRecord record;
  record.method = spec;
  record.seed = seed;
  record.schedule = schedule;

  Rng rng(seed);
  Vector z = z0;
  std::int64_t passes = 0;
  std::int64_t epoch = 0;
  const int ppe = passes_per_epoch(spec.family);

  const auto checkpoint = [&]() {
    Checkpoint cp;
    cp.pass = passes;
    cp.epoch = epoch;
    cp.grad_norm_sq = full_gradient(problem, z).squaredNorm();
    if (z_star) cp.dist_sq_to_equilibrium = (z - *z_star).squaredNorm();
    if (record_snapshots) cp.z_snapshot = z;
    record.checkpoints.push_back(std::move(cp));
  };

  checkpoint();
  std::int64_t next_checkpoint = checkpoint_stride;
  while (passes + ppe <= budget_passes) {
    EpochResult result =
        run_epoch(spec, problem, std::move(z), epoch, schedule, rng);
    z = std::move(result.z);
    passes += ppe;
    ++epoch;
    if (result.diverged) {
      record.diverged = true;
      record.diverged_pass = passes;
      checkpoint();  // first non-finite value, then halt
      return record;
    }
    if (passes >= next_checkpoint) {
      checkpoint();
      next_checkpoint = checkpoint_stride * (passes / checkpoint_stride + 1);
    }
  }
  if (record.checkpoints.back().pass != passes) checkpoint();
  return record;
}

std::string format_double(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void write_run_csv(const RunRecord& record, std::ostream& out) {
  out << "pass,epoch,grad_norm_sq,grad_norm_sq_ratio,dist_sq\n";
  const double base = record.checkpoints.empty()
                          ? 1.0
                          : record.checkpoints.front().grad_norm_sq;
  for (const auto& cp : record.checkpoints) {
    out << cp.pass << ',' << cp.epoch << ',' << format_double(cp.grad_norm_sq)
        << ',' << format_double(cp.grad_norm_sq / base) << ',';
    if (cp.dist_sq_to_equilibrium) {
      out << format_double(*cp.dist_sq_to_equilibrium);
    }
    out << '\n';
  }
}

std::string run_csv(const RunRecord& record) {
  std::ostringstream out;
  write_run_csv(record, out);
  return out.str();
}

}  // namespace seglab
