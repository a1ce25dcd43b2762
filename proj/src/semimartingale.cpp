#include "matlevy/semimartingale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "matlevy/random.hpp"

namespace matlevy {

BrownianDriver::BrownianDriver(Index rows, Index cols, std::vector<double> grid,
                               std::vector<ComplexMatrix> increments)
    : rows_(rows), cols_(cols), grid_(std::move(grid)), increments_(std::move(increments)) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("BrownianDriver: empty shape");
  if (grid_.size() < 2 || grid_.front() != 0.0) {
    throw std::invalid_argument("BrownianDriver: grid must start at 0 and have at least two points");
  }
  for (std::size_t k = 1; k < grid_.size(); ++k) {
    if (!(grid_[k] > grid_[k - 1])) throw std::invalid_argument("BrownianDriver: grid not increasing");
  }
  if (increments_.size() + 1 != grid_.size()) {
    throw std::invalid_argument("BrownianDriver: increment count does not match grid");
  }
  values_.reserve(grid_.size());
  values_.push_back(ComplexMatrix::Zero(rows, cols));
  for (const ComplexMatrix& inc : increments_) {
    if (inc.rows() != rows || inc.cols() != cols) {
      throw std::invalid_argument("BrownianDriver: increment shape mismatch");
    }
    values_.push_back(values_.back() + inc);
  }
}

std::shared_ptr<const BrownianDriver> BrownianDriver::sample(Index rows, Index cols,
                                                             std::vector<double> grid, Rng& rng) {
  std::vector<ComplexMatrix> inc;
  inc.reserve(grid.size() > 0 ? grid.size() - 1 : 0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    inc.push_back(complex_normal_matrix(rows, cols, rng, grid[k] - grid[k - 1]));
  }
  return std::make_shared<const BrownianDriver>(rows, cols, std::move(grid), std::move(inc));
}

const ComplexMatrix& BrownianDriver::value_at(double t) const {
  if (t < 0.0) throw std::invalid_argument("BrownianDriver: negative time");
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  const auto k = static_cast<std::size_t>(std::distance(grid_.begin(), it)) - 1;
  return values_[k];
}

std::vector<double> uniform_grid(double horizon, double step) {
  if (!(horizon > 0.0) || !(step > 0.0)) {
    throw std::invalid_argument("uniform_grid: horizon and step must be > 0");
  }
  const auto cells = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
  std::vector<double> grid;
  grid.reserve(cells + 1);
  for (std::size_t k = 0; k < cells; ++k) grid.push_back(static_cast<double>(k) * step);
  grid.push_back(horizon);
  return grid;
}

DriverForm adjoint_of(DriverForm f) {
  switch (f) {
    case DriverForm::plain: return DriverForm::adjoint;
    case DriverForm::conjugate: return DriverForm::transpose;
    case DriverForm::transpose: return DriverForm::conjugate;
    case DriverForm::adjoint: return DriverForm::plain;
  }
  return f;
}

DriverForm transpose_of(DriverForm f) {
  switch (f) {
    case DriverForm::plain: return DriverForm::transpose;
    case DriverForm::conjugate: return DriverForm::adjoint;
    case DriverForm::transpose: return DriverForm::plain;
    case DriverForm::adjoint: return DriverForm::conjugate;
  }
  return f;
}

namespace {

ComplexMatrix apply_form(const ComplexMatrix& w, DriverForm form) {
  switch (form) {
    case DriverForm::plain: return w;
    case DriverForm::conjugate: return w.conjugate();
    case DriverForm::transpose: return w.transpose();
    case DriverForm::adjoint: return w.adjoint();
  }
  return w;
}

ComplexMatrix kron_identity(const ComplexMatrix& omega, Index s) {
  if (s == 1) return omega;
  ComplexMatrix k = ComplexMatrix::Zero(omega.rows() * s, omega.cols() * s);
  for (Index a = 0; a < omega.rows(); ++a) {
    for (Index b = 0; b < omega.cols(); ++b) {
      for (Index sigma = 0; sigma < s; ++sigma) k(a * s + sigma, b * s + sigma) = omega(a, b);
    }
  }
  return k;
}

void check_term(const GaussianTerm& term, Index rows, Index cols) {
  if (!term.driver) throw std::invalid_argument("GaussianTerm: missing driver");
  if (term.multiplicity < 1) throw std::invalid_argument("GaussianTerm: multiplicity must be >= 1");
  const bool transposed = term.form == DriverForm::transpose || term.form == DriverForm::adjoint;
  const Index p = transposed ? term.driver->cols() : term.driver->rows();
  const Index r = transposed ? term.driver->rows() : term.driver->cols();
  if (term.left.cols() != p * term.multiplicity || term.right.rows() != r * term.multiplicity) {
    throw std::invalid_argument("GaussianTerm: loading shapes do not match the driver");
  }
  if (term.left.rows() != rows || term.right.cols() != cols) {
    throw std::invalid_argument("GaussianTerm: term shape does not match the path");
  }
}

}  // namespace

ComplexMatrix GaussianTerm::value_at(double t) const {
  return left * kron_identity(apply_form(driver->value_at(t), form), multiplicity) * right;
}

Semimartingale::Semimartingale(Index rows, Index cols, double horizon)
    : rows_(rows), cols_(cols), horizon_(horizon), drift_(ComplexMatrix::Zero(rows, cols)) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("Semimartingale: empty shape");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("Semimartingale: horizon must be a positive finite real");
  }
}

void Semimartingale::set_drift(ComplexMatrix drift) {
  if (drift.rows() != rows_ || drift.cols() != cols_) {
    throw std::invalid_argument("Semimartingale: drift shape mismatch");
  }
  drift_ = std::move(drift);
}

void Semimartingale::add_term(GaussianTerm term) {
  check_term(term, rows_, cols_);
  terms_.push_back(std::move(term));
}

void Semimartingale::add_jump(RankOneJump jump) {
  if (jump.left.size() != rows_ || jump.right.size() != cols_) {
    throw std::invalid_argument("Semimartingale: jump shape mismatch");
  }
  if (!(jump.time > 0.0) || jump.time > horizon_) {
    throw std::invalid_argument("Semimartingale: jump time outside (0, T]");
  }
  if (!jumps_.empty() && !(jump.time > jumps_.back().time)) {
    throw std::invalid_argument("Semimartingale: jump times must be strictly increasing");
  }
  jumps_.push_back(std::move(jump));
}

Semimartingale adjoint(const Semimartingale& x) {
  Semimartingale out(x.cols(), x.rows(), x.horizon());
  out.set_drift(x.drift().adjoint());
  for (const GaussianTerm& term : x.terms()) {
    out.add_term({term.driver, adjoint_of(term.form), term.right.adjoint(), term.left.adjoint(),
                  term.multiplicity});
  }
  for (const RankOneJump& j : x.jumps()) {
    out.add_jump({j.time, j.right.conjugate(), j.left.conjugate()});
  }
  return out;
}

Semimartingale transpose(const Semimartingale& x) {
  Semimartingale out(x.cols(), x.rows(), x.horizon());
  out.set_drift(x.drift().transpose());
  for (const GaussianTerm& term : x.terms()) {
    out.add_term({term.driver, transpose_of(term.form), term.right.transpose(), term.left.transpose(),
                  term.multiplicity});
  }
  for (const RankOneJump& j : x.jumps()) out.add_jump({j.time, j.right, j.left});
  return out;
}

Semimartingale left_multiply(const ComplexMatrix& a, const Semimartingale& x) {
  if (a.cols() != x.rows()) throw std::invalid_argument("left_multiply: shape mismatch");
  Semimartingale out(a.rows(), x.cols(), x.horizon());
  out.set_drift(a * x.drift());
  for (const GaussianTerm& term : x.terms()) {
    out.add_term({term.driver, term.form, a * term.left, term.right, term.multiplicity});
  }
  for (const RankOneJump& j : x.jumps()) out.add_jump({j.time, a * j.left, j.right});
  return out;
}

Semimartingale right_multiply(const Semimartingale& x, const ComplexMatrix& c) {
  if (x.cols() != c.rows()) throw std::invalid_argument("right_multiply: shape mismatch");
  Semimartingale out(x.rows(), c.cols(), x.horizon());
  out.set_drift(x.drift() * c);
  for (const GaussianTerm& term : x.terms()) {
    out.add_term({term.driver, term.form, term.left, term.right * c, term.multiplicity});
  }
  // (l r^T) C = l (C^T r)^T
  for (const RankOneJump& j : x.jumps()) out.add_jump({j.time, j.left, c.transpose() * j.right});
  return out;
}

Semimartingale with_extra_drift(const Semimartingale& x, const ComplexMatrix& shift) {
  Semimartingale out = x;
  out.set_drift(x.drift() + shift);
  return out;
}

ComplexMatrix evaluate(const Semimartingale& x, double t) {
  if (t < 0.0 || t > x.horizon() * (1.0 + 1e-12)) {
    throw std::invalid_argument("evaluate: time outside [0, T]");
  }
  ComplexMatrix value = x.drift() * t;
  for (const GaussianTerm& term : x.terms()) value += term.value_at(t);
  for (const RankOneJump& j : x.jumps()) {
    if (j.time > t) break;
    value.noalias() += j.left * j.right.transpose();
  }
  return value;
}

}  // namespace matlevy
