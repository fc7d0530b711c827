#include "seglab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "seglab/parallel.hpp"
#include "seglab/rng.hpp"

namespace seglab {

Vector random_start(const FiniteSumProblem& problem, std::uint64_t seed) {
  Rng rng(seed);
  Vector z(problem.dim());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  const double norm = z.norm();
  if (norm > 0.0) z /= norm;
  return z;
}

StepsizeSchedule monotone_protocol_schedule(const FiniteSumProblem& problem) {
  const double eta0 = std::min(0.01, 1.0 / problem.smoothness());
  return PolyDecayStep{eta0, 10.0, 0.34};
}

namespace {

MethodSeries aggregate(const std::string& label,
                       const std::vector<RunRecord>& records) {
  MethodSeries series;
  series.method_label = label;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].diverged) {
      series.diverged_instances.push_back(static_cast<int>(i));
    }
  }
  std::size_t shared = records.front().checkpoints.size();
  for (const auto& record : records) {
    std::size_t usable = record.checkpoints.size();
    if (record.diverged && usable > 0) --usable;  // drop the non-finite tail
    shared = std::min(shared, usable);
  }
  for (std::size_t k = 0; k < shared; ++k) {
    const std::int64_t pass = records.front().checkpoints[k].pass;
    double log_sum = 0.0;
    for (const auto& record : records) {
      const auto& cp = record.checkpoints[k];
      const double base = record.checkpoints.front().grad_norm_sq;
      log_sum += std::log(cp.grad_norm_sq / base);
    }
    const double geo = std::exp(log_sum / static_cast<double>(records.size()));
    series.points.push_back({pass, geo});
  }
  return series;
}

}  // namespace

ExperimentOutput run_experiment(
    const std::vector<FiniteSumProblem>& instances,
    const std::vector<Vector>& starts, const std::vector<MethodSpec>& methods,
    const std::function<StepsizeSchedule(const MethodSpec&,
                                         const FiniteSumProblem&)>&
        schedule_for,
    std::int64_t budget_passes, std::int64_t checkpoint_stride,
    std::uint64_t seed) {
  if (instances.empty() || methods.empty()) {
    throw std::invalid_argument(
        "run_experiment: needs at least one instance and one method");
  }
  if (instances.size() != starts.size()) {
    throw std::invalid_argument(
        "run_experiment: one start point per instance required");
  }
  const std::int64_t method_count = static_cast<std::int64_t>(methods.size());
  const std::int64_t instance_count =
      static_cast<std::int64_t>(instances.size());

  ExperimentOutput output;
  output.records.assign(
      static_cast<std::size_t>(method_count),
      std::vector<RunRecord>(static_cast<std::size_t>(instance_count)));
  parallel_for(method_count * instance_count, [&](std::int64_t flat) {
    const auto m = static_cast<std::size_t>(flat / instance_count);
    const auto i = static_cast<std::size_t>(flat % instance_count);
    const auto& problem = instances[i];
    const StepsizeSchedule schedule = schedule_for(methods[m], problem);
    output.records[m][i] = run(
        methods[m], problem, starts[i], schedule, budget_passes,
        checkpoint_stride, derive_seed(seed, static_cast<std::uint64_t>(flat)));
  });
  for (std::size_t m = 0; m < output.records.size(); ++m) {
    output.series.push_back(
        aggregate(method_label(methods[m]), output.records[m]));
  }
  return output;
}

std::string aggregate_csv(const std::vector<MethodSeries>& series) {
  std::ostringstream out;
  out << "pass,method,geo_mean_ratio\n";
  for (const auto& s : series) {
    for (const auto& point : s.points) {
      out << point.pass << ',' << s.method_label << ','
          << format_double(point.geo_mean_ratio) << '\n';
    }
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepSeries>& series) {
  std::ostringstream out;
  out << "pass,method,eta,geo_mean_ratio\n";
  for (const auto& s : series) {
    for (const auto& point : s.points) {
      out << point.pass << ',' << s.method_label << ',' << format_double(s.eta)
          << ',' << format_double(point.geo_mean_ratio) << '\n';
    }
  }
  return out.str();
}

}  // namespace seglab
