#ifndef SEGLAB_EXPERIMENT_HPP
#define SEGLAB_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "seglab/method.hpp"
#include "seglab/problem.hpp"
#include "seglab/run.hpp"
#include "seglab/schedule.hpp"

namespace seglab {

/// One aggregate row: geometric mean across instances of the grad-norm ratio
/// at a checkpoint pass.
struct AggregatePoint {
  std::int64_t pass = 0;
  double geo_mean_ratio = 0.0;
};

struct MethodSeries {
  std::string method_label;
  std::vector<AggregatePoint> points;
  std::vector<int> diverged_instances;
};

struct ExperimentOutput {
  std::vector<MethodSeries> series;               // one per method
  std::vector<std::vector<RunRecord>> records;    // [method][instance]
};

/// Runs every (method, instance) pair, aggregating per method the geometric
/// mean exp(mean(log ratio_i)) of grad-norm ratios across instances at each
/// shared checkpoint pass. Aggregation stops at the first pass some instance
/// no longer reaches (divergence truncation). Run (m, i) draws its seed as
/// derive_seed(seed, m * instances + i); results are deterministic and
/// independent of the worker count.
ExperimentOutput run_experiment(
    const std::vector<FiniteSumProblem>& instances,
    const std::vector<Vector>& starts, const std::vector<MethodSpec>& methods,
    const std::function<StepsizeSchedule(const MethodSpec&,
                                         const FiniteSumProblem&)>&
        schedule_for,
    std::int64_t budget_passes, std::int64_t checkpoint_stride,
    std::uint64_t seed);

/// Unit-norm standard-normal start vector, the experiment convention.
Vector random_start(const FiniteSumProblem& problem, std::uint64_t seed);

/// Per-instance schedule of the monotone protocol:
/// eta_k = min{0.01, 1/L} / (1 + k/10)^0.34.
StepsizeSchedule monotone_protocol_schedule(const FiniteSumProblem& problem);

/// CSV with header pass,method,geo_mean_ratio.
std::string aggregate_csv(const std::vector<MethodSeries>& series);

/// CSV with header pass,method,eta,geo_mean_ratio for stepsize sweeps.
struct SweepSeries {
  std::string method_label;
  double eta = 0.0;
  std::vector<AggregatePoint> points;
  std::vector<int> diverged_instances;
};
std::string sweep_csv(const std::vector<SweepSeries>& series);

}  // namespace seglab

#endif  // SEGLAB_EXPERIMENT_HPP
