#pragma once

#include <memory>
#include <vector>

#include "matlevy/types.hpp"

namespace matlevy {

/// Realization of a standard complex rows x cols matrix Brownian motion on a
/// time grid. Entries are independent; each has independent real and
/// imaginary parts with variance dt / 2, so E|dW_ij|^2 = dt.
///
/// Drivers are shared by reference: two paths holding the same driver object
/// are driven by the same Brownian motion, distinct objects are independent.
class BrownianDriver {
 public:
  BrownianDriver(Index rows, Index cols, std::vector<double> grid,
                 std::vector<ComplexMatrix> increments);

  static std::shared_ptr<const BrownianDriver> sample(Index rows, Index cols,
                                                      std::vector<double> grid, Rng& rng);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const std::vector<double>& grid() const { return grid_; }
  double horizon() const { return grid_.back(); }
  /// Increment over [grid[k], grid[k+1]).
  const ComplexMatrix& increment(std::size_t k) const { return increments_[k]; }
  std::size_t steps() const { return increments_.size(); }

  /// Value at the last grid point <= t.
  const ComplexMatrix& value_at(double t) const;

 private:
  Index rows_;
  Index cols_;
  std::vector<double> grid_;
  std::vector<ComplexMatrix> increments_;
  std::vector<ComplexMatrix> values_;
};

/// Grid 0, step, 2 step, ..., horizon (last cell shortened if needed).
std::vector<double> uniform_grid(double horizon, double step);

/// How a term reads its driver W: W, conj(W), W^T or W^*.
enum class DriverForm { plain, conjugate, transpose, adjoint };

DriverForm adjoint_of(DriverForm f);
DriverForm transpose_of(DriverForm f);

/// Continuous martingale term left * (form(W) kron I_multiplicity) * right.
struct GaussianTerm {
  std::shared_ptr<const BrownianDriver> driver;
  DriverForm form = DriverForm::plain;
  ComplexMatrix left;
  ComplexMatrix right;
  Index multiplicity = 1;

  Index rows() const { return left.rows(); }
  Index cols() const { return right.cols(); }
  ComplexMatrix value_at(double t) const;
};

/// Jump left * right^T (an outer product), occurring at `time`.
struct RankOneJump {
  double time = 0.0;
  ComplexVector left;
  ComplexVector right;

  ComplexMatrix matrix() const { return left * right.transpose(); }
};

/// Structural sample path of a matrix semimartingale of finite activity:
/// X(t) = drift * t + sum of Gaussian terms + sum of jumps up to t.
/// This is the common currency of the covariation calculus.
class Semimartingale {
 public:
  Semimartingale(Index rows, Index cols, double horizon);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  double horizon() const { return horizon_; }

  const ComplexMatrix& drift() const { return drift_; }
  const std::vector<GaussianTerm>& terms() const { return terms_; }
  /// Sorted by time; times are distinct.
  const std::vector<RankOneJump>& jumps() const { return jumps_; }

  void set_drift(ComplexMatrix drift);
  void add_term(GaussianTerm term);
  /// Jumps must be added in strictly increasing time order within (0, horizon].
  void add_jump(RankOneJump jump);

 private:
  Index rows_;
  Index cols_;
  double horizon_;
  ComplexMatrix drift_;
  std::vector<GaussianTerm> terms_;
  std::vector<RankOneJump> jumps_;
};

Semimartingale adjoint(const Semimartingale& x);
Semimartingale transpose(const Semimartingale& x);
/// A X for a constant matrix A.
Semimartingale left_multiply(const ComplexMatrix& a, const Semimartingale& x);
/// X C for a constant matrix C.
Semimartingale right_multiply(const Semimartingale& x, const ComplexMatrix& c);
/// Same path with `shift * t` added to its drift.
Semimartingale with_extra_drift(const Semimartingale& x, const ComplexMatrix& shift);

ComplexMatrix evaluate(const Semimartingale& x, double t);

}  // namespace matlevy
