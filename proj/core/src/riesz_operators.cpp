#include "rsfade/riesz_operators.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "rsfade/error.hpp"
#include "rsfade/number_format.hpp"

namespace rsfade {
namespace {

using Index = Eigen::Index;

void require_size(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorKind::Argument, "operator dimension must be positive");
  }
}

void require_spacing(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorKind::Argument, "mesh width must be positive and finite");
  }
}

}  // namespace

RieszMatrix::RieszMatrix(FractionalOrder gamma, double h, Eigen::MatrixXd matrix)
    : gamma_(gamma), h_(h), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw Error(ErrorKind::Shape, "Riesz matrix must be square and non-empty");
  }
}

Eigen::MatrixXd assemble_A(FractionalOrder gamma, std::size_t n) {
  require_size(n);
  const auto rho = rho_coefficients(gamma);
  const auto size = static_cast<Index>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  for (Index i = 0; i < size; ++i) {
    a(i, i) = rho[1];
    if (i > 0) a(i, i - 1) = rho[2];
    if (i + 1 < size) a(i, i + 1) = rho[0];
  }
  return a;
}

Eigen::MatrixXd assemble_B(FractionalOrder gamma, std::size_t n, double h) {
  require_size(n);
  require_spacing(h);
  const auto coefficients = omega_coefficients(gamma, n);
  const double scale = std::pow(h, -gamma.value());
  const auto size = static_cast<Index>(n);
  Eigen::MatrixXd b(size, size);
  for (Index j = 0; j < size; ++j) {
    for (Index i = 0; i < size; ++i) {
      b(i, j) = scale * coefficients.omega_at(static_cast<long>(i - j));
    }
  }
  return b;
}

RieszMatrix assemble_riesz_matrix(FractionalOrder gamma, std::size_t n, double h) {
  require_size(n);
  require_spacing(h);
  const auto rho = rho_coefficients(gamma);
  const auto coefficients = omega_coefficients(gamma, n + 1);
  const double scale = std::pow(h, -gamma.value());
  const auto size = static_cast<Index>(n);

  // Rows 0 and n+1 of the extended block are the boundary nodes.
  Eigen::MatrixXd a_ext = Eigen::MatrixXd::Zero(size, size + 2);
  for (Index i = 0; i < size; ++i) {
    a_ext(i, i) = rho[2];      // rho_{+1} picks node i-1
    a_ext(i, i + 1) = rho[1];
    a_ext(i, i + 2) = rho[0];  // rho_{-1} picks node i+1
  }
  Eigen::MatrixXd b_ext(size + 2, size);
  for (Index l = 0; l < size; ++l) {
    for (Index row = 0; row < size + 2; ++row) {
      b_ext(row, l) = scale * coefficients.omega_at(static_cast<long>(row - 1 - l));
    }
  }
  Eigen::MatrixXd m = a_ext * b_ext;
  // Drop rounding-level asymmetry.
  m = 0.5 * (m + m.transpose()).eval();
  return RieszMatrix(gamma, h, std::move(m));
}

Eigen::MatrixXd apply_along_x(const Eigen::MatrixXd& op, const Eigen::MatrixXd& field) {
  if (op.cols() != field.rows() || op.rows() != op.cols()) {
    throw Error(ErrorKind::Shape, "x-operator of size " + std::to_string(op.rows()) +
                                      " does not match field with " +
                                      std::to_string(field.rows()) + " x-nodes");
  }
  return op * field;
}

Eigen::MatrixXd apply_along_x(const RieszMatrix& op, const Eigen::MatrixXd& field) {
  return apply_along_x(op.matrix(), field);
}

Eigen::MatrixXd apply_along_y(const Eigen::MatrixXd& op, const Eigen::MatrixXd& field) {
  if (op.cols() != field.cols() || op.rows() != op.cols()) {
    throw Error(ErrorKind::Shape, "y-operator of size " + std::to_string(op.rows()) +
                                      " does not match field with " +
                                      std::to_string(field.cols()) + " y-nodes");
  }
  return field * op.transpose();
}

Eigen::MatrixXd apply_along_y(const RieszMatrix& op, const Eigen::MatrixXd& field) {
  return apply_along_y(op.matrix(), field);
}

std::vector<EigenPair> tridiag_toeplitz_eigenpairs(double a, double b, double c, std::size_t n) {
  require_size(n);
  if (a == 0.0) {
    throw Error(ErrorKind::DegenerateMatrix, "superdiagonal a must be non-zero");
  }
  const double ratio = c / a;
  if (ratio < 0.0) {
    throw Error(ErrorKind::ComplexSpectrum, "c/a < 0 gives a complex spectrum");
  }
  const double root = std::sqrt(ratio);
  const double theta = std::numbers::pi / static_cast<double>(n + 1);
  std::vector<EigenPair> pairs;
  pairs.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const auto jd = static_cast<double>(j);
    Eigen::VectorXd v(static_cast<Index>(n));
    for (std::size_t k = 1; k <= n; ++k) {
      const auto kd = static_cast<double>(k);
      v(static_cast<Index>(k - 1)) = std::pow(root, kd) * std::sin(kd * jd * theta);
    }
    v.normalize();
    pairs.push_back({b + 2.0 * a * root * std::cos(jd * theta), std::move(v)});
  }
  return pairs;
}

double relative_asymmetry(const Eigen::MatrixXd& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

SpdCertificate certify_spd(const Eigen::MatrixXd& m, SpdProbe probe) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::Shape, "SPD certification needs a non-empty square matrix");
  }
  const bool symmetric = relative_asymmetry(m) <= 1e-10;
  if (probe == SpdProbe::Cholesky) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    return {symmetric && llt.info() == Eigen::Success,
            std::numeric_limits<double>::quiet_NaN()};
  }
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Singularity, "symmetric eigensolver did not converge");
  }
  const double min_eigenvalue = solver.eigenvalues().minCoeff();
  return {symmetric && min_eigenvalue > 0.0, min_eigenvalue};
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::Io, "cannot open " + path.string());
  }
  write_matrix_csv(out, m);
}

}  // namespace rsfade
