#ifndef SEGLAB_VERIFY_HPP
#define SEGLAB_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace seglab {

struct CheckRecord {
  std::string check_name;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool hard = true;  // soft checks are reported but never fail a suite
  std::string details;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  bool passed = true;  // conjunction of the hard checks
};

/// Closed-form expected-growth factors on the divergence example (20 random
/// stepsize pairs with beta * L < 1/2) plus the EG+ exact-growth and
/// nonexpansiveness laws on f(x, y) = xy.
VerifyReport verify_counterexamples();

/// Within-epoch error order: log-log slopes over eta in {2^-14..2^-8},
/// 32-seed averages, on the monotone generator protocol (20, 20, 40).
VerifyReport verify_error_order();

/// SEG-US variance floor (recursion vs Monte Carlo, floor monotonicity) and
/// the stationary-floor exponents of SEG-FFA vs SEG-RR on a fixed strongly
/// monotone instance.
VerifyReport verify_floor();

/// Phi moments: exact enumeration identities, Monte-Carlo agreement, the
/// soft Safran-Shamir minimum, symmetry, and the SEG-RR lower-bound epoch
/// recursion against simulation.
VerifyReport verify_phi();

/// suite in {counterexamples, error-order, floor, phi, all}. Throws
/// std::invalid_argument for anything else.
std::vector<VerifyReport> run_verify_suite(const std::string& suite);

nlohmann::json report_to_json(const VerifyReport& report);
nlohmann::json reports_to_json(const std::vector<VerifyReport>& reports);
bool all_passed(const std::vector<VerifyReport>& reports);

// Shared protocol pieces, also used by the acceptance tests.

struct ErrorOrderProtocol {
  std::uint64_t problem_seed = 1;
  int dx = 20, dy = 20, n = 40;
  int seeds = 32;
  int min_exponent = 8, max_exponent = 14;  // eta = 2^-e
};
struct ErrorOrderSlopes {
  double ffa = 0.0;
  double rr = 0.0;
  double ff = 0.0;
};
ErrorOrderSlopes error_order_slopes(const ErrorOrderProtocol& protocol);

struct NoiseFloorProtocol {
  std::uint64_t problem_seed = 11;
  int dx = 6, dy = 6, n = 4;
  std::vector<double> etas{1e-4, 2e-4, 5e-4, 1e-3};
  int trials = 8;
  double burn_in_rate_multiples = 14.0;  // burn-in = this / (eta * mu * n)
};
struct NoiseFloorMeasurement {
  std::vector<double> etas;
  std::vector<double> ffa_floor;
  std::vector<double> rr_floor;
  double ffa_slope = 0.0;
  double rr_slope = 0.0;
};
NoiseFloorMeasurement noise_floor_measurement(
    const NoiseFloorProtocol& protocol);

}  // namespace seglab

#endif  // SEGLAB_VERIFY_HPP
