#include "rsfade/grid.hpp"

#include <cmath>
#include <string>

#include "rsfade/error.hpp"

namespace rsfade {

GridSpec::GridSpec(Rectangle domain, std::size_t m1, std::size_t m2)
    : domain_(domain), m1_(m1), m2_(m2) {
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) {
    throw Error(ErrorKind::Argument, "grid domain must have positive width and height");
  }
  if (m1 < 2 || m2 < 2) {
    throw Error(ErrorKind::Argument, "grid needs at least 2 cells per direction");
  }
}

std::size_t cells_for_spacing(double length, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorKind::Argument, "grid spacing must be positive");
  }
  const double ratio = length / h;
  const double cells = std::round(ratio);
  if (cells < 1.0 || std::abs(ratio - cells) > 1e-9 * cells) {
    throw Error(ErrorKind::Argument, "grid spacing " + std::to_string(h) +
                                         " does not divide length " + std::to_string(length));
  }
  return static_cast<std::size_t>(cells);
}

GridSpec GridSpec::with_spacing(Rectangle domain, double h) {
  return GridSpec(domain, cells_for_spacing(domain.width(), h),
                  cells_for_spacing(domain.height(), h));
}

}  // namespace rsfade
