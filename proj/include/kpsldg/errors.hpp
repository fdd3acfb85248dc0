#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace kpsldg {

/// Thrown when the forward image of a cell degenerates (b_i <= a_i), i.e. the
/// characteristics cross inside one step and the time step is too large for
/// the semi-Lagrangian update.
class StepRejected : public std::runtime_error {
 public:
  StepRejected(int cell, double width)
      : std::runtime_error(format(cell, width, std::nullopt, std::nullopt)),
        cell_(cell), width_(width) {}

  int cell() const noexcept { return cell_; }
  double width() const noexcept { return width_; }
  std::optional<int> row() const noexcept { return row_; }
  std::optional<double> time() const noexcept { return time_; }

  StepRejected with_row(int row) const {
    StepRejected e(cell_, width_, row, time_);
    return e;
  }
  StepRejected with_time(double t) const {
    StepRejected e(cell_, width_, row_, t);
    return e;
  }

 private:
  StepRejected(int cell, double width, std::optional<int> row, std::optional<double> t)
      : std::runtime_error(format(cell, width, row, t)),
        cell_(cell), width_(width), row_(row), time_(t) {}

  static std::string format(int cell, double width, std::optional<int> row,
                            std::optional<double> t) {
    std::string msg = "sLdG step rejected: image of cell " + std::to_string(cell) +
                      " has non-positive width " + std::to_string(width);
    if (row) msg += " (row " + std::to_string(*row) + ")";
    if (t) msg += " at t=" + std::to_string(*t);
    return msg;
  }

  int cell_;
  double width_;
  std::optional<int> row_;
  std::optional<double> time_;
};

/// Newton's method hit |1 + tau u'(alpha)| < 1e-12.
class SingularJacobian : public std::runtime_error {
 public:
  explicit SingularJacobian(double alpha)
      : std::runtime_error("Newton trace-back: singular Jacobian at alpha=" +
                           std::to_string(alpha)),
        alpha_(alpha) {}
  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// A time stepper produced a non-finite value.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(long step, const std::string& what)
      : std::runtime_error("divergence in step " + std::to_string(step) + ": " + what),
        step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

}  // namespace kpsldg
