#ifndef SEGLAB_ANALYSIS_HPP
#define SEGLAB_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "seglab/method.hpp"
#include "seglab/problem.hpp"
#include "seglab/schedule.hpp"

namespace seglab {

struct EpochErrorSample {
  double eta = 0.0;
  double error_norm = 0.0;
  /// False when eta >= 1/(nL); the residual is still computed, but the
  /// theoretical bounds do not apply there.
  bool stepsize_in_regime = true;
};

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(trials); 0 when deterministic
  std::int64_t trials = 0;
};

/// Runs one epoch of the method from z0 and returns the norm of the residual
/// against the deterministic EG step with stepsize eta * n,
///   || z_epoch_end - (z0 - eta n F(z0 - eta n F z0)) ||.
/// The inner update stepsize is chosen so the epoch's first-order term
/// matches that EG step: beta = eta for SEG-RR and SEG-FFA (which also forces
/// alpha = eta/2 and anchors), beta = eta/2 for SEG-FF (two passes), and
/// beta = eta for SEG-US. alpha follows the spec's alpha_rule.
EpochErrorSample epoch_error(const MethodSpec& spec,
                             const FiniteSumProblem& problem, const Vector& z0,
                             double eta, std::uint64_t seed);

/// Ordinary-least-squares slope of log(error) against log(eta). Zero-error
/// samples are excluded; fewer than 4 usable samples with distinct eta is an
/// error.
double fit_error_order(const std::vector<EpochErrorSample>& samples);

/// Exact expected squared-norm growth factor of one draw block on an affine
/// problem with zero offsets: per-draw epoch matrices are assembled by
/// applying seg_inner_step to basis vectors, M'M is averaged over all
/// equally likely draws (single iterations for SEG-US, permutations for
/// SEG-RR/FF), and the largest eigenvalue of the average is returned (the
/// scalar itself when the average is a multiple of the identity).
/// Requires n <= 8; use Monte Carlo beyond that.
double exact_expected_growth(Family family, const FiniteSumProblem& problem,
                             double alpha, double beta);

/// Independent seeded runs of the method; per-epoch mean and standard error
/// of ||z_0^k - z*||^2 for k = 0..epochs. Trials that diverge contribute
/// until truncation, which shows up as a reduced trial count. Trial k uses
/// the generator seeded with derive_seed(master_seed, k).
std::vector<MomentEstimate> mc_expected_sq_norm(
    const MethodSpec& spec, const FiniteSumProblem& problem, const Vector& z0,
    const StepsizeSchedule& schedule, int epochs, int trials,
    std::uint64_t master_seed);

struct FloorRecursion {
  std::vector<double> values;  // E||z_t||^2 for t = 0..steps
  std::optional<double> fixed_point;
};

/// The SEG-US second-moment recursion on the variance-floor instance:
///   E||z_{t+1}||^2 = (1 - 2 a b L^2 + b^2 L^2 (1 + a^2 L^2)) E||z_t||^2
///                    + b^2 sigma^2 (1 + a^2 L^2).
/// Also reports the fixed point when the coefficient lies in (0, 1).
FloorRecursion segus_floor_recursion(double alpha, double beta, double L,
                                     double sigma, double z0_sq, int steps);

/// Per-iteration Monte-Carlo second moments of same-sample SEG-US, for
/// cross-checking the recursion above. Returns steps + 1 estimates.
std::vector<MomentEstimate> mc_segus_sq_norm(const FiniteSumProblem& problem,
                                             const Vector& z0, double alpha,
                                             double beta, int steps,
                                             int trials,
                                             std::uint64_t master_seed);

struct PhiMoments {
  MomentEstimate mean;
  MomentEstimate second;
  MomentEstimate third;  // symmetry diagnostic; exact 0 under enumeration
};

/// Moments of Phi = sum_{i=1..n} (2 s_{tau(i)} - 1) (1 - nu)^{n-i} over
/// uniform permutations of the balanced half/half sign pattern. Enumeration
/// (n <= 10) pairs each sign sequence with its complement, so E[Phi] and
/// E[Phi^3] are exactly zero.
PhiMoments phi_moments_enumerate(int n, double nu);
PhiMoments phi_moments_montecarlo(int n, double nu, std::int64_t trials,
                                  std::uint64_t seed);

/// Deterministic per-epoch E||z_0^k||^2 of SEG-RR on the seg-kind
/// lower-bound instance (equilibrium at the origin): the x1 and y
/// coordinates contract deterministically and the x2 coordinate follows
///   E[(x2)^2]_{k+1} = (1 - bL/2 + abL^2/4)^{2n} E[(x2)^2]_k
///                     + b^2 sigma^2 (1 - aL/2)^2 E[Phi^2]
/// with nu = bL/2 - abL^2/4 in Phi. z0 is (x1, x2, y).
std::vector<double> rr_lower_bound_predicted_sq_norm(double L, double mu,
                                                     double sigma, int n,
                                                     double alpha, double beta,
                                                     const Vector& z0,
                                                     int epochs);

/// Stationary E||z - z*||^2 under a constant stepsize: each trial starts at
/// the equilibrium, runs burn_in_epochs epochs, then averages the squared
/// distance over window_epochs epoch starts. Throws std::runtime_error if
/// any trial diverges (eta outside the convergent regime).
MomentEstimate noise_floor(const MethodSpec& spec,
                           const FiniteSumProblem& problem, double eta,
                           int burn_in_epochs, int window_epochs, int trials,
                           std::uint64_t seed);

/// OLS slope of y against x.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace seglab

#endif  // SEGLAB_ANALYSIS_HPP
