#include "seglab/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "seglab/rng.hpp"

namespace seglab {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string("QuadraticComponent: ") + what +
                                " has non-finite entries");
  }
}

void require_symmetric(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string("QuadraticComponent: ") + what +
                                " must be square");
  }
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance) {
    std::ostringstream msg;
    msg << "QuadraticComponent: " << what << " asymmetric by " << asym;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

QuadraticComponent::QuadraticComponent(Matrix a, Matrix b, Matrix c, Vector t)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), t_(std::move(t)) {
  require_symmetric(a_, "A");
  require_symmetric(c_, "C");
  require_finite(a_, "A");
  require_finite(b_, "B");
  require_finite(c_, "C");
  if (b_.rows() != a_.rows() || b_.cols() != c_.rows()) {
    throw std::invalid_argument("QuadraticComponent: B must be d1 x d2");
  }
  if (t_.size() != dim() || !t_.allFinite()) {
    throw std::invalid_argument(
        "QuadraticComponent: t must be finite with length d1 + d2");
  }
  const Eigen::Index d1 = dx();
  const Eigen::Index d2 = dy();
  map_.setZero(d1 + d2, d1 + d2);
  map_.topLeftCorner(d1, d1) = 2.0 * a_;
  map_.topRightCorner(d1, d2) = 2.0 * b_;
  map_.bottomLeftCorner(d2, d1) = -2.0 * b_.transpose();
  map_.bottomRightCorner(d2, d2) = 2.0 * c_;
  offset_.resize(d1 + d2);
  offset_.head(d1) = -t_.head(d1);
  offset_.tail(d2) = t_.tail(d2);
}

double QuadraticComponent::objective(const Vector& z) const {
  if (z.size() != dim()) {
    throw std::invalid_argument("objective: dimension mismatch");
  }
  const auto x = z.head(dx());
  const auto y = z.tail(dy());
  return x.dot(a_ * x) + 2.0 * x.dot(b_ * y) - y.dot(c_ * y) - t_.dot(z);
}

FiniteSumProblem::FiniteSumProblem(std::vector<QuadraticComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("FiniteSumProblem: needs at least one component");
  }
  const Eigen::Index d1 = components_.front().dx();
  const Eigen::Index d2 = components_.front().dy();
  for (const auto& comp : components_) {
    if (comp.dx() != d1 || comp.dy() != d2) {
      throw std::invalid_argument(
          "FiniteSumProblem: components disagree on (d1, d2)");
    }
  }
  map_.setZero(d1 + d2, d1 + d2);
  offset_.setZero(d1 + d2);
  for (const auto& comp : components_) {
    map_ += comp.saddle_matrix();
    offset_ += comp.saddle_offset();
    smoothness_ = std::max(smoothness_, spectral_norm(comp.saddle_matrix()));
  }
  map_ /= static_cast<double>(components_.size());
  offset_ /= static_cast<double>(components_.size());
}

const QuadraticComponent& FiniteSumProblem::component(int i) const {
  if (i < 0 || i >= size()) {
    throw std::invalid_argument("FiniteSumProblem: component index out of range");
  }
  return components_[static_cast<std::size_t>(i)];
}

Vector component_gradient(const QuadraticComponent& comp, const Vector& z) {
  if (z.size() != comp.dim()) {
    throw std::invalid_argument("component_gradient: dimension mismatch");
  }
  return comp.saddle_matrix() * z + comp.saddle_offset();
}

Vector component_gradient(const FiniteSumProblem& problem, int i,
                          const Vector& z) {
  return component_gradient(problem.component(i), z);
}

Vector full_gradient(const FiniteSumProblem& problem, const Vector& z) {
  if (z.size() != problem.dim()) {
    throw std::invalid_argument("full_gradient: dimension mismatch");
  }
  return problem.full_matrix() * z + problem.full_offset();
}

double spectral_norm(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.transpose() * m,
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectral_norm: eigensolver did not converge");
  }
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double min_symmetric_eigenvalue(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error(
        "min_symmetric_eigenvalue: eigensolver did not converge");
  }
  return solver.eigenvalues().minCoeff();
}

SpectralReport spectral_report(const FiniteSumProblem& problem) {
  SpectralReport report;
  report.smoothness_L = problem.smoothness();
  const Matrix sym =
      0.5 * (problem.full_matrix() + problem.full_matrix().transpose());
  report.strong_monotonicity_mu = min_symmetric_eigenvalue(sym);
  report.hessian_lipschitz_M = 0.0;
  return report;
}

double verify_variance_bound(const FiniteSumProblem& problem,
                             const VarianceParams& params, int sample_count,
                             double radius, std::uint64_t seed) {
  if (params.rho < 0.0 || params.sigma < 0.0) {
    throw std::invalid_argument("verify_variance_bound: rho, sigma must be >= 0");
  }
  if (sample_count < 1 || radius <= 0.0) {
    throw std::invalid_argument(
        "verify_variance_bound: need sample_count >= 1 and radius > 0");
  }
  Rng rng(seed);
  const Eigen::Index d = problem.dim();
  const double n = static_cast<double>(problem.size());
  double max_violation = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < sample_count; ++s) {
    Vector z(d);
    for (Eigen::Index j = 0; j < d; ++j) z[j] = rng.normal();
    const double norm = z.norm();
    const double r =
        radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
    z = (norm > 0.0) ? Vector((r / norm) * z) : Vector(Vector::Zero(d));

    const Vector fz = full_gradient(problem, z);
    double mean_sq_dev = 0.0;
    for (const auto& comp : problem.components()) {
      mean_sq_dev += (comp.saddle_matrix() * z + comp.saddle_offset() - fz)
                         .squaredNorm();
    }
    mean_sq_dev /= n;
    const double bound = params.rho * fz.norm() + params.sigma;
    max_violation = std::max(max_violation, mean_sq_dev - bound * bound);
  }
  return max_violation;
}

Vector equilibrium(const FiniteSumProblem& problem) {
  const Matrix& g = problem.full_matrix();
  const Vector& c = problem.full_offset();
  Eigen::FullPivLU<Matrix> lu(g);
  const Vector candidate = lu.solve(-c);
  const double residual = (g * candidate + c).norm();
  if (residual <= 1e-9 * (1.0 + c.norm())) return candidate;
  if (c.norm() == 0.0) return Vector::Zero(problem.dim());
  std::ostringstream msg;
  msg << "equilibrium: singular map with offset outside its range (residual "
      << residual << ")";
  throw NoEquilibriumError(msg.str());
}

}  // namespace seglab
