#ifndef SEGLAB_SCHEDULE_HPP
#define SEGLAB_SCHEDULE_HPP

#include <cstdint>
#include <utility>
#include <variant>

namespace seglab {

struct ConstantStep {
  double eta = 0.0;
};

/// eta0 / (1 + index / shift)^exponent.
struct PolyDecayStep {
  double eta0 = 0.0;
  double shift = 1.0;
  double exponent = 0.0;
};

/// Independent-sample double-stepsize schedule:
///   eta1(t) = gamma0 / (t + offset)^r1,  eta2(t) = eta0 / (t + offset)^r2,
/// with r1 <= r2 and offset >= 1.
struct DsegDualStep {
  double gamma0 = 0.0;
  double eta0 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double offset = 1.0;
};

using StepsizeSchedule = std::variant<ConstantStep, PolyDecayStep, DsegDualStep>;

/// Throws std::invalid_argument if the schedule parameters are out of range.
void validate(const StepsizeSchedule& schedule);

/// Single stepsize at the given epoch or iteration index. Throws for dual
/// schedules, which only single-index through dual_steps.
double primary_step(const StepsizeSchedule& schedule, std::int64_t index);

/// (eta1, eta2) at the given iteration index; requires a dual schedule.
std::pair<double, double> dual_steps(const StepsizeSchedule& schedule,
                                     std::int64_t index);

bool is_dual(const StepsizeSchedule& schedule);

/// (gamma0, eta0) = (1, 0.1), (r1, r2) = (0, 1), offset 19.
DsegDualStep dseg_bilinear_preset();
/// (gamma0, eta0) = (0.1, 0.05), (r1, r2) = (1/3, 2/3), offset 19.
DsegDualStep dseg_general_preset();

}  // namespace seglab

#endif  // SEGLAB_SCHEDULE_HPP
