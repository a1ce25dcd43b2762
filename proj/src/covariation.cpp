#include "matlevy/covariation.hpp"

#include <stdexcept>

namespace matlevy {

namespace {

bool conjugated(DriverForm f) { return f == DriverForm::conjugate || f == DriverForm::adjoint; }
bool transposed(DriverForm f) { return f == DriverForm::transpose || f == DriverForm::adjoint; }

// d[entry of form1(W)] d[entry of form2(W)] is dt exactly when the two
// entries are complex conjugates of the same entry of W, and zero otherwise
// (real and imaginary parts have equal variance).
ComplexMatrix term_covariation(const GaussianTerm& a, const GaussianTerm& b) {
  if (a.driver != b.driver || conjugated(a.form) == conjugated(b.form)) {
    return ComplexMatrix::Zero(a.rows(), b.cols());
  }
  const Index s1 = a.multiplicity;
  const Index s2 = b.multiplicity;
  const Index p1 = transposed(a.form) ? a.driver->cols() : a.driver->rows();
  const Index r1 = transposed(a.form) ? a.driver->rows() : a.driver->cols();
  const Index r2 = transposed(b.form) ? b.driver->rows() : b.driver->cols();
  const ComplexMatrix m = a.right * b.left;
  ComplexMatrix k = ComplexMatrix::Zero(p1 * s1, r2 * s2);
  if (transposed(a.form) == transposed(b.form)) {
    for (Index alpha = 0; alpha < p1; ++alpha)
      for (Index beta = 0; beta < r1; ++beta)
        for (Index sigma = 0; sigma < s1; ++sigma)
          for (Index rho = 0; rho < s2; ++rho)
            k(alpha * s1 + sigma, beta * s2 + rho) = m(beta * s1 + sigma, alpha * s2 + rho);
  } else {
    for (Index alpha = 0; alpha < p1; ++alpha)
      for (Index sigma = 0; sigma < s1; ++sigma)
        for (Index rho = 0; rho < s2; ++rho) {
          Complex sum{0.0, 0.0};
          for (Index beta = 0; beta < r1; ++beta) sum += m(beta * s1 + sigma, beta * s2 + rho);
          k(alpha * s1 + sigma, alpha * s2 + rho) = sum;
        }
  }
  return a.left * k * b.right;
}

void check_time(double t, double horizon) {
  if (t < 0.0 || t > horizon * (1.0 + 1e-12)) {
    throw std::invalid_argument("covariation: time outside [0, T]");
  }
}

}  // namespace

CovariationResult structural_covariation(const Semimartingale& x, const Semimartingale& y, double t) {
  if (x.cols() != y.rows()) throw std::invalid_argument("structural_covariation: shape mismatch");
  check_time(t, std::min(x.horizon(), y.horizon()));
  CovariationResult out;
  out.method = CovariationMethod::structural;
  out.continuous = ComplexMatrix::Zero(x.rows(), y.cols());
  out.jump = ComplexMatrix::Zero(x.rows(), y.cols());
  for (const GaussianTerm& a : x.terms()) {
    for (const GaussianTerm& b : y.terms()) out.continuous += term_covariation(a, b);
  }
  out.continuous *= t;

  // Jumps at common times only; both lists are sorted with distinct times.
  const auto& jx = x.jumps();
  const auto& jy = y.jumps();
  std::size_t i = 0, j = 0;
  while (i < jx.size() && j < jy.size()) {
    const double ti = jx[i].time;
    const double tj = jy[j].time;
    if (ti > t && tj > t) break;
    if (ti < tj) {
      ++i;
    } else if (tj < ti) {
      ++j;
    } else {
      if (ti <= t) {
        const Complex inner = jx[i].right.transpose() * jy[j].left;
        out.jump.noalias() += inner * jx[i].left * jy[j].right.transpose();
      }
      ++i;
      ++j;
    }
  }
  out.value = out.continuous + out.jump;
  return out;
}

CovariationResult structural_quadratic_variation(const Semimartingale& x, double t) {
  return structural_covariation(x, adjoint(x), t);
}

CovariationResult structural_covariation(const VectorLevyPath& x, const VectorLevyPath& y, double t) {
  if (x.dim() != y.dim()) throw std::invalid_argument("structural_covariation: dimension mismatch");
  return structural_covariation(x.semimartingale(), adjoint(y.semimartingale()), t);
}

CovariationResult quadratic_variation(const VectorLevyPath& x, double t) {
  return structural_covariation(x, x, t);
}

CovariationResult quadratic_variation(const MatrixLevyPath& path, double t) {
  check_time(t, path.horizon());
  const Index d = path.dim();
  CovariationResult out;
  out.method = CovariationMethod::structural;
  out.jump = ComplexMatrix::Zero(d, d);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  out.continuous = std::visit(
      [&](const auto& spec) -> ComplexMatrix {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, NoGaussian>) {
          return ComplexMatrix::Zero(d, d);
        } else if constexpr (std::is_same_v<T, BgcdGaussian>) {
          return spec.a2 * t * id;
        } else if constexpr (std::is_same_v<T, KroneckerGaussian>) {
          return t * spec.sigma2.trace() * spec.sigma1;
        } else if constexpr (std::is_same_v<T, ScalarIdentityGaussian>) {
          return t * id;
        } else {
          return t * static_cast<double>(d) * spec.loading * spec.loading.adjoint();
        }
      },
      path.gaussian());
  for (const TimedRankOne& j : path.jumps()) {
    if (j.time > t) break;
    const double w = j.jump.eigenvalue * j.jump.eigenvalue;
    out.jump.noalias() += w * j.jump.direction * j.jump.direction.adjoint();
  }
  out.value = out.continuous + out.jump;
  return out;
}

ComplexMatrix realized_covariation(const std::vector<ComplexMatrix>& x_samples,
                                   const std::vector<ComplexMatrix>& y_samples) {
  if (x_samples.size() != y_samples.size() || x_samples.empty()) {
    throw std::invalid_argument("realized_covariation: grid mismatch");
  }
  const Index rows = x_samples.front().rows();
  const Index cols = y_samples.front().cols();
  if (x_samples.front().cols() != y_samples.front().rows()) {
    throw std::invalid_argument("realized_covariation: shape mismatch");
  }
  ComplexMatrix sum = ComplexMatrix::Zero(rows, cols);
  for (std::size_t k = 1; k < x_samples.size(); ++k) {
    sum.noalias() += (x_samples[k] - x_samples[k - 1]) * (y_samples[k] - y_samples[k - 1]);
  }
  return sum;
}

std::vector<ComplexMatrix> sample_on_grid(const Semimartingale& x, const std::vector<double>& grid) {
  std::vector<ComplexMatrix> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(evaluate(x, t));
  return out;
}

BilinearityCheck bilinearity_check(const ComplexMatrix& a, const Semimartingale& x, const Semimartingale& y,
                                   const ComplexMatrix& c, double t) {
  BilinearityCheck out;
  out.lhs = structural_covariation(left_multiply(a, x), right_multiply(y, c), t).value;
  out.rhs = a * structural_covariation(x, y, t).value * c;
  out.discrepancy = (out.lhs - out.rhs).norm();
  return out;
}

std::string to_string(CovariationMethod method) {
  return method == CovariationMethod::structural ? "structural" : "realized";
}

}  // namespace matlevy
