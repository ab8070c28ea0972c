#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace rsfade {

/// Axis-aligned rectangle [x_lo, x_hi] x [y_lo, y_hi].
struct Rectangle {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;

  double width() const noexcept { return x_hi - x_lo; }
  double height() const noexcept { return y_hi - y_lo; }

  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

/// Uniform tensor grid with m1 x m2 cells. Unknowns live on the
/// (m1-1) x (m2-1) interior nodes; boundary nodes carry the homogeneous
/// Dirichlet value.
class GridSpec {
 public:
  GridSpec(Rectangle domain, std::size_t m1, std::size_t m2);

  /// Grid with cell width h in both directions. The side lengths must be
  /// integer multiples of h (to 1e-9 relative), else ErrorKind::Argument.
  static GridSpec with_spacing(Rectangle domain, double h);

  const Rectangle& domain() const noexcept { return domain_; }
  std::size_t m1() const noexcept { return m1_; }
  std::size_t m2() const noexcept { return m2_; }
  std::size_t nx() const noexcept { return m1_ - 1; }
  std::size_t ny() const noexcept { return m2_ - 1; }
  double dx() const noexcept { return domain_.width() / static_cast<double>(m1_); }
  double dy() const noexcept { return domain_.height() / static_cast<double>(m2_); }

  /// Node coordinates, i in [0, m1], j in [0, m2].
  double x(std::size_t i) const noexcept { return domain_.x_lo + static_cast<double>(i) * dx(); }
  double y(std::size_t j) const noexcept { return domain_.y_lo + static_cast<double>(j) * dy(); }

  /// Sample f(x, y) on interior nodes into an nx x ny matrix; entry (i, j)
  /// holds f(x_{i+1}, y_{j+1}).
  template <typename F>
  Eigen::MatrixXd sample(F&& f) const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(nx()), static_cast<Eigen::Index>(ny()));
    for (std::size_t j = 0; j < ny(); ++j) {
      const double yj = y(j + 1);
      for (std::size_t i = 0; i < nx(); ++i) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f(x(i + 1), yj);
      }
    }
    return out;
  }

 private:
  Rectangle domain_;
  std::size_t m1_;
  std::size_t m2_;
};

/// Number of whole cells of width h in length, or ErrorKind::Argument when
/// length/h is not an integer to within 1e-9 relative.
std::size_t cells_for_spacing(double length, double h);

}  // namespace rsfade
