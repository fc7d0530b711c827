#include "seglab/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "seglab/rng.hpp"

namespace seglab {

namespace {

Matrix uniform_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.uniform();
  }
  return m;
}

Matrix normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.normal();
  }
  return m;
}

Vector normal_vector(Rng& rng, Eigen::Index size) {
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = rng.normal();
  return v;
}

// Random symmetric matrix Q D Q' with D iid U[1/2, 1] and Q from the QR
// factorization of a standard-normal matrix, sign-fixed so R's diagonal is
// nonnegative (this makes the orthogonal factor unique, hence reproducible).
Matrix random_spd_half_one(Rng& rng, Eigen::Index d) {
  Vector diag(d);
  for (Eigen::Index i = 0; i < d; ++i) diag[i] = rng.uniform(0.5, 1.0);
  const Matrix raw = normal_matrix(rng, d, d);
  Eigen::HouseholderQR<Matrix> qr(raw);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    if (r(k, k) < 0.0) q.col(k) = -q.col(k);
  }
  const Matrix m = q * diag.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

// Per-coordinate +/-2 diagonal assignments with an exact half/half split:
// one permutation per coordinate, components landing in the first half get
// +2. Returns the per-component diagonals.
std::vector<Vector> balanced_sign_diagonals(Rng& rng, Eigen::Index d, int n) {
  std::vector<Vector> diags(static_cast<std::size_t>(n), Vector::Zero(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    const std::vector<int> perm = sample_permutation(rng, n);
    for (int pos = 0; pos < n; ++pos) {
      diags[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos)])][j] =
          (pos < n / 2) ? 2.0 : -2.0;
    }
  }
  return diags;
}

}  // namespace

FiniteSumProblem gen_monotone(std::uint64_t seed, int dx, int dy, int n) {
  if (dx < 1 || dy < 1 || n < 2 || n % 2 != 0) {
    throw std::invalid_argument(
        "gen_monotone: needs dx, dy >= 1 and even n >= 2");
  }
  Rng rng(seed);
  std::vector<Matrix> bs;
  std::vector<Vector> ts;
  bs.reserve(static_cast<std::size_t>(n));
  ts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bs.push_back(uniform_matrix(rng, dx, dy));
    ts.push_back(normal_vector(rng, dx + dy));
  }
  const auto a_diags = balanced_sign_diagonals(rng, dx, n);
  const auto c_diags = balanced_sign_diagonals(rng, dy, n);

  std::vector<QuadraticComponent> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    comps.emplace_back(Matrix(a_diags[idx].asDiagonal()), bs[idx],
                       Matrix(c_diags[idx].asDiagonal()), ts[idx]);
  }
  return FiniteSumProblem(std::move(comps));
}

FiniteSumProblem gen_strongly_monotone(std::uint64_t seed, int dx, int dy,
                                       int n) {
  if (dx < 1 || dy < 1 || n < 1) {
    throw std::invalid_argument(
        "gen_strongly_monotone: needs dx, dy, n >= 1");
  }
  Rng rng(seed);
  std::vector<QuadraticComponent> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Matrix b = uniform_matrix(rng, dx, dy);
    const Vector t = normal_vector(rng, dx + dy);
    const Matrix a = random_spd_half_one(rng, dx);
    const Matrix c = random_spd_half_one(rng, dy);
    comps.emplace_back(a, b, c, t);
  }
  return FiniteSumProblem(std::move(comps));
}

FiniteSumProblem divergence_example(double L) {
  if (!(L > 0.0)) {
    throw std::invalid_argument("divergence_example: L must be positive");
  }
  const double q = L / 4.0;
  Matrix b(1, 1);
  b(0, 0) = q;
  Matrix a1(1, 1), c1(1, 1), a2(1, 1), c2(1, 1);
  a1(0, 0) = -q;
  c1(0, 0) = q;
  a2(0, 0) = q;
  c2(0, 0) = -q;
  const Vector t = Vector::Zero(2);
  std::vector<QuadraticComponent> comps;
  comps.emplace_back(a1, b, c1, t);
  comps.emplace_back(a2, b, c2, t);
  return FiniteSumProblem(std::move(comps));
}

FiniteSumProblem variance_floor_example(double L, double sigma) {
  if (!(L > 0.0) || sigma < 0.0) {
    throw std::invalid_argument(
        "variance_floor_example: needs L > 0 and sigma >= 0");
  }
  const double nu = sigma / std::sqrt(2.0);
  const Matrix zero = Matrix::Zero(1, 1);
  Matrix b(1, 1);
  b(0, 0) = L / 2.0;
  Vector t1(2), t2(2);
  t1 << -nu, nu;
  t2 << nu, -nu;
  std::vector<QuadraticComponent> comps;
  comps.emplace_back(zero, b, zero, t1);
  comps.emplace_back(zero, b, zero, t2);
  return FiniteSumProblem(std::move(comps));
}

FiniteSumProblem rr_lower_bound_example(double L, double mu, double sigma,
                                        int n, RrKind kind) {
  if (!(L > 0.0) || !(mu > 0.0) || sigma < 0.0) {
    throw std::invalid_argument(
        "rr_lower_bound_example: needs L, mu > 0 and sigma >= 0");
  }
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("rr_lower_bound_example: n must be even >= 2");
  }
  if (L / mu < 2.0) {
    throw std::invalid_argument("rr_lower_bound_example: requires L/mu >= 2");
  }
  std::vector<QuadraticComponent> comps;
  comps.reserve(static_cast<std::size_t>(n));
  Matrix c(1, 1);
  c(0, 0) = mu / 2.0;
  for (int i = 0; i < n; ++i) {
    const double sign = (i < n / 2) ? 1.0 : -1.0;  // 2 s_i - 1
    if (kind == RrKind::Seg) {
      Matrix a = Matrix::Zero(2, 2);
      a(0, 0) = L / 2.0;
      a(1, 1) = L / 4.0;
      Vector t = Vector::Zero(3);
      t[1] = -sigma * sign;
      comps.emplace_back(a, Matrix::Zero(2, 1), c, t);
    } else {
      Matrix a = Matrix::Zero(3, 3);
      a(0, 0) = mu / 2.0;
      a(1, 1) = L / 2.0;
      a(2, 2) = (i < n / 2) ? L / 2.0 : 0.0;
      Vector t = Vector::Zero(4);
      t[1] = -(sigma / 2.0) * sign;
      t[2] = -(sigma / 2.0) * sign;
      comps.emplace_back(a, Matrix::Zero(3, 1), c, t);
    }
  }
  return FiniteSumProblem(std::move(comps));
}

}  // namespace seglab
