#ifndef SEGLAB_TESTS_HELPERS_HPP
#define SEGLAB_TESTS_HELPERS_HPP

#include "seglab/problem.hpp"
#include "seglab/rng.hpp"

namespace seglab::testing {

/// Central-difference saddle gradient oracle: differentiates the component
/// objective (f for the x-block, -f for the y-block) coordinate by
/// coordinate. Independent of the cached affine map the library evaluates.
inline Vector finite_difference_saddle_gradient(const QuadraticComponent& comp,
                                                const Vector& z,
                                                double h = 1e-5) {
  Vector grad(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    Vector forward = z;
    Vector backward = z;
    forward[j] += h;
    backward[j] -= h;
    const double diff =
        (comp.objective(forward) - comp.objective(backward)) / (2.0 * h);
    grad[j] = j < comp.dx() ? diff : -diff;
  }
  return grad;
}

inline Vector random_vector(Rng& rng, Eigen::Index size) {
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = rng.normal();
  return v;
}

}  // namespace seglab::testing

#endif
