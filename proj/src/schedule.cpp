#include "seglab/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace seglab {

void validate(const StepsizeSchedule& schedule) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantStep>) {
          if (!(s.eta > 0.0)) {
            throw std::invalid_argument("ConstantStep: eta must be positive");
          }
        } else if constexpr (std::is_same_v<T, PolyDecayStep>) {
          if (!(s.eta0 > 0.0) || !(s.shift > 0.0) || s.exponent < 0.0) {
            throw std::invalid_argument(
                "PolyDecayStep: needs eta0, shift > 0 and exponent >= 0");
          }
        } else {
          if (!(s.gamma0 > 0.0) || !(s.eta0 > 0.0) || s.r1 > s.r2 ||
              s.offset < 1.0) {
            throw std::invalid_argument(
                "DsegDualStep: needs gamma0, eta0 > 0, r1 <= r2, offset >= 1");
          }
        }
      },
      schedule);
}

double primary_step(const StepsizeSchedule& schedule, std::int64_t index) {
  if (const auto* c = std::get_if<ConstantStep>(&schedule)) return c->eta;
  if (const auto* p = std::get_if<PolyDecayStep>(&schedule)) {
    return p->eta0 /
           std::pow(1.0 + static_cast<double>(index) / p->shift, p->exponent);
  }
  throw std::invalid_argument(
      "primary_step: dual schedule has no single stepsize");
}

std::pair<double, double> dual_steps(const StepsizeSchedule& schedule,
                                     std::int64_t index) {
  const auto* d = std::get_if<DsegDualStep>(&schedule);
  if (d == nullptr) {
    throw std::invalid_argument("dual_steps: schedule is not dual");
  }
  const double base = static_cast<double>(index) + d->offset;
  return {d->gamma0 / std::pow(base, d->r1), d->eta0 / std::pow(base, d->r2)};
}

bool is_dual(const StepsizeSchedule& schedule) {
  return std::holds_alternative<DsegDualStep>(schedule);
}

DsegDualStep dseg_bilinear_preset() { return {1.0, 0.1, 0.0, 1.0, 19.0}; }

DsegDualStep dseg_general_preset() {
  return {0.1, 0.05, 1.0 / 3.0, 2.0 / 3.0, 19.0};
}

}  // namespace seglab
