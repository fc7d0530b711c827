#ifndef SEGLAB_GENERATORS_HPP
#define SEGLAB_GENERATORS_HPP

#include <cstdint>

#include "seglab/problem.hpp"

namespace seglab {

/// Lower-bound instance flavor: the SGDA construction (d1 = 3) or the SEG
/// construction (d1 = 2).
enum class RrKind { Sgda, Seg };

/// Random monotone instance: B_i entries iid U[0,1], t_i entries iid standard
/// normal, A_i and C_i diagonal with entry (j,j) equal to +2 for a uniformly
/// random half of the components (drawn independently per coordinate) and -2
/// otherwise, so the diagonals cancel exactly in the average. The full
/// problem is monotone (mu = 0) while individual components are generally
/// nonmonotone. Requires even n.
///
/// Draw order per seed: for each component i, B_i row-major then t_i; then
/// one permutation per x-coordinate for the A diagonals, then one per
/// y-coordinate for the C diagonals.
FiniteSumProblem gen_monotone(std::uint64_t seed, int dx, int dy, int n);

/// Random strongly monotone instance: B_i, t_i as in gen_monotone;
/// A_i = Q_i D_i Q_i' with D_i diagonal iid U[1/2, 1] and Q_i orthogonal from
/// the QR factorization of a standard-normal matrix, sign-fixed so R has a
/// nonnegative diagonal; C_i likewise with independent draws. The averaged
/// map has strong monotonicity constant >= 1.
///
/// Draw order per component: B_i row-major, t_i, then D then the normal
/// matrix (row-major) for A, then the same pair for C.
FiniteSumProblem gen_strongly_monotone(std::uint64_t seed, int dx, int dy,
                                       int n);

/// The n = 2 bilinear counterexample on which SEG-US/RR/FF all grow in
/// expectation for any positive stepsizes:
///   f1 = -(L/4)x^2 + (L/2)xy - (L/4)y^2,  f2 = (L/4)x^2 + (L/2)xy + (L/4)y^2.
/// Component saddle matrices are nilpotent and the average is (L/2) times the
/// 2x2 rotation generator.
FiniteSumProblem divergence_example(double L);

/// The n = 2 bilinear instance with constant component variance sigma^2:
///   f1 = Lxy + nu x - nu y,  f2 = Lxy - nu x + nu y,  nu^2 = sigma^2 / 2.
/// SEG-US with a fixed stepsize ratio cannot converge below a fixed floor on
/// this problem.
FiniteSumProblem variance_floor_example(double L, double sigma);

/// Strongly monotone lower-bound instances for random reshuffling. kind=Seg:
/// d1 = 2, d2 = 1, f_i = (L/2)x1^2 + (L/4)x2^2 + sigma(2s_i - 1)x2 -
/// (mu/2)y^2 with s_i = 1 on the first half of the components. kind=Sgda:
/// d1 = 3, d2 = 1 with the additional (L/2)s_i x3^2 block and sigma/2 linear
/// terms. Requires even n and L/mu >= 2.
FiniteSumProblem rr_lower_bound_example(double L, double mu, double sigma,
                                        int n, RrKind kind);

}  // namespace seglab

#endif  // SEGLAB_GENERATORS_HPP
