#ifndef SEGLAB_RUN_HPP
#define SEGLAB_RUN_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "seglab/method.hpp"
#include "seglab/problem.hpp"
#include "seglab/rng.hpp"
#include "seglab/schedule.hpp"

namespace seglab {

/// One same-sample extragradient iteration:
///   w = z - alpha * grad_at(z),  z_next = z - beta * grad_at(w),
/// with the identical evaluator used for both half-steps.
template <class GradFn>
std::pair<Vector, Vector> seg_inner_step(const Vector& z, GradFn&& grad_at,
                                         double alpha, double beta) {
  Vector w = z - alpha * grad_at(z);
  Vector z_next = z - beta * grad_at(w);
  return {std::move(w), std::move(z_next)};
}

/// Deterministic EG+ step z - eta2 F(z - eta1 F z) on the full gradient.
/// eta1 = eta2 recovers plain EG.
Vector eg_plus_step(const FiniteSumProblem& problem, const Vector& z,
                    double eta1, double eta2);

/// (z_end + theta * z_start) / (1 + theta); theta = 1 is the flip-flop
/// anchoring rule, theta = 0 disables anchoring.
Vector anchor(const Vector& z_start, const Vector& z_end, double theta);

struct EpochResult {
  Vector z;
  bool diverged = false;
};

/// Executes exactly one epoch of the given method from z:
///   - US families: n iterations with iid uniform indices; stepsizes are
///     evaluated per iteration t = n * epoch_index + i.
///   - RR families: one permutation, n iterations in that order.
///   - FF: the permutation forward then reversed (2n iterations).
///   - FFA: FF's iterations with beta = eta_k, alpha = eta_k / 2, then the
///     midpoint anchor against the epoch start.
///   - RRA / USA: RR's / US's iterations followed by the midpoint anchor.
///   - DSEG: n iterations, two independent indices per iteration, stepsizes
///     from the dual schedule.
///   - EG / EG+: one full-gradient step with the epoch's stepsize.
/// A non-finite iterate halts the epoch and sets the diverged flag.
EpochResult run_epoch(const MethodSpec& spec, const FiniteSumProblem& problem,
                      Vector z, std::int64_t epoch_index,
                      const StepsizeSchedule& schedule, Rng& rng);

struct Checkpoint {
  std::int64_t pass = 0;
  std::int64_t epoch = 0;
  double grad_norm_sq = 0.0;
  std::optional<double> dist_sq_to_equilibrium;
  std::optional<Vector> z_snapshot;
};

struct RunRecord {
  MethodSpec method;
  std::uint64_t seed = 0;
  StepsizeSchedule schedule;
  std::vector<Checkpoint> checkpoints;
  bool diverged = false;
  std::int64_t diverged_pass = -1;
};

/// Repeats run_epoch until budget_passes data passes are consumed (2 per
/// epoch for FF/FFA, 1 otherwise), checkpointing ||F z||^2 and, when an
/// equilibrium exists, ||z - z*||^2 every checkpoint_stride passes. The
/// record is a pure function of the arguments.
RunRecord run(const MethodSpec& spec, const FiniteSumProblem& problem,
              const Vector& z0, const StepsizeSchedule& schedule,
              std::int64_t budget_passes, std::int64_t checkpoint_stride,
              std::uint64_t seed, bool record_snapshots = false);

/// CSV with header pass,epoch,grad_norm_sq,grad_norm_sq_ratio,dist_sq; the
/// dist_sq column is empty when the problem has no equilibrium. Ratios are
/// relative to the pass-0 value.
void write_run_csv(const RunRecord& record, std::ostream& out);
std::string run_csv(const RunRecord& record);

/// Shortest round-trip decimal formatting (via std::to_chars).
std::string format_double(double value);

}  // namespace seglab

#endif  // SEGLAB_RUN_HPP
