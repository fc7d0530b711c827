#ifndef SEGLAB_PROBLEM_HPP
#define SEGLAB_PROBLEM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace seglab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when a problem has no point with zero full saddle gradient.
class NoEquilibriumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One summand of the finite sum,
///   f(x, y) = x'Ax + 2 x'By - y'Cy - t'[x; y],
/// together with its affine saddle map F z = (grad_x f, -grad_y f) = G z + c,
/// where G = [[2A, 2B], [-2B', 2C]] and c = (-t_x, +t_y). G is also the
/// constant Jacobian of F. A and C must be symmetric to 1e-12 (entrywise)
/// and all entries finite; the map is cached at construction.
class QuadraticComponent {
 public:
  QuadraticComponent(Matrix a, Matrix b, Matrix c, Vector t);

  Eigen::Index dx() const { return a_.rows(); }
  Eigen::Index dy() const { return c_.rows(); }
  Eigen::Index dim() const { return dx() + dy(); }

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  const Matrix& c() const { return c_; }
  const Vector& t() const { return t_; }

  /// Constant Jacobian G of the saddle map.
  const Matrix& saddle_matrix() const { return map_; }
  /// Constant offset c of the saddle map.
  const Vector& saddle_offset() const { return offset_; }

  /// Objective value f(x, y); evaluated from the stored blocks, not from the
  /// cached map, so gradient checks exercise two independent routes.
  double objective(const Vector& z) const;

 private:
  Matrix a_, b_, c_;
  Vector t_;
  Matrix map_;
  Vector offset_;
};

/// A finite-sum saddle problem (1/n) sum_i f_i with n >= 1 components of
/// matching dimensions. Caches the averaged map (G, c) and the smoothness
/// constant max_i ||G_i||_2. Immutable after construction; safe to share
/// read-only across threads.
class FiniteSumProblem {
 public:
  explicit FiniteSumProblem(std::vector<QuadraticComponent> components);

  int size() const { return static_cast<int>(components_.size()); }
  Eigen::Index dx() const { return components_.front().dx(); }
  Eigen::Index dy() const { return components_.front().dy(); }
  Eigen::Index dim() const { return dx() + dy(); }

  const QuadraticComponent& component(int i) const;
  const std::vector<QuadraticComponent>& components() const {
    return components_;
  }

  /// Averaged saddle matrix G = (1/n) sum G_i.
  const Matrix& full_matrix() const { return map_; }
  /// Averaged offset c = (1/n) sum c_i.
  const Vector& full_offset() const { return offset_; }

  /// max_i ||G_i||_2, cached at construction.
  double smoothness() const { return smoothness_; }

 private:
  std::vector<QuadraticComponent> components_;
  Matrix map_;
  Vector offset_;
  double smoothness_ = 0.0;
};

struct VarianceParams {
  double rho = 0.0;
  double sigma = 0.0;
};

struct SpectralReport {
  double smoothness_L = 0.0;
  double strong_monotonicity_mu = 0.0;
  double hessian_lipschitz_M = 0.0;
};

/// Saddle gradient of one component: G z + c. Throws std::invalid_argument on
/// a dimension mismatch.
Vector component_gradient(const QuadraticComponent& comp, const Vector& z);
Vector component_gradient(const FiniteSumProblem& problem, int i,
                          const Vector& z);

/// Full saddle gradient F z = G z + c of the averaged map.
Vector full_gradient(const FiniteSumProblem& problem, const Vector& z);

/// L = max_i ||G_i||_2, mu = smallest eigenvalue of (G + G')/2, M = 0
/// (quadratics have constant Jacobians).
SpectralReport spectral_report(const FiniteSumProblem& problem);

/// Draws sample_count points uniformly in the ball of the given radius about
/// the origin and returns the maximum over samples of
///   (1/n) sum_i ||F_i z - F z||^2 - (rho ||F z|| + sigma)^2.
/// A nonpositive result certifies the variance bound on the sample.
double verify_variance_bound(const FiniteSumProblem& problem,
                             const VarianceParams& params, int sample_count,
                             double radius, std::uint64_t seed);

/// Solves G z* = -c. Singular G with c = 0 returns the origin; singular G
/// with c outside the range throws NoEquilibriumError.
Vector equilibrium(const FiniteSumProblem& problem);

/// Largest singular value. Throws std::runtime_error if the eigensolver
/// fails to converge.
double spectral_norm(const Matrix& m);

/// Smallest eigenvalue of a symmetric matrix.
double min_symmetric_eigenvalue(const Matrix& sym);

}  // namespace seglab

#endif  // SEGLAB_PROBLEM_HPP
