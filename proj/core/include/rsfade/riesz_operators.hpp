#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "rsfade/coefficients.hpp"

namespace rsfade {

/// Discrete Riesz operator on n interior nodes of width h:
///
///   M[i][l] = h^{-gamma} * sum_{r=-1..1} rho_r * omega_{|i - l - r|}
///
/// so that d^gamma u / d|x|^gamma ~= -M u under homogeneous Dirichlet data.
/// M is symmetric Toeplitz and positive definite. The first column of M is
/// kept as `toeplitz_column()` for structure-aware consumers.
class RieszMatrix {
 public:
  RieszMatrix(FractionalOrder gamma, double h, Eigen::MatrixXd matrix);

  FractionalOrder gamma() const noexcept { return gamma_; }
  double h() const noexcept { return h_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  Eigen::VectorXd toeplitz_column() const { return matrix_.col(0); }

 private:
  FractionalOrder gamma_;
  double h_;
  Eigen::MatrixXd matrix_;
};

/// n x n tridiag(-gamma/24, 1 + gamma/12, -gamma/24).
Eigen::MatrixXd assemble_A(FractionalOrder gamma, std::size_t n);

/// n x n symmetric Toeplitz with entries h^{-gamma} * omega_{|i-j|}.
Eigen::MatrixXd assemble_B(FractionalOrder gamma, std::size_t n, double h);

/// Full operator M = A_e * B_e, where A_e is the n x (n+2) tridiagonal rho
/// stencil and B_e the (n+2) x n omega block that also covers the two
/// boundary nodes. Away from the first and last rows this coincides with
/// assemble_A(n) * assemble_B(n); the boundary rows keep the rho_{+-1} terms
/// that the square product would drop.
RieszMatrix assemble_riesz_matrix(FractionalOrder gamma, std::size_t n, double h);

/// Apply `op` to every x-line (fixed y) of an nx x ny field: returns op * field.
Eigen::MatrixXd apply_along_x(const Eigen::MatrixXd& op, const Eigen::MatrixXd& field);
Eigen::MatrixXd apply_along_x(const RieszMatrix& op, const Eigen::MatrixXd& field);

/// Apply `op` to every y-line (fixed x): returns field * op^T.
Eigen::MatrixXd apply_along_y(const Eigen::MatrixXd& op, const Eigen::MatrixXd& field);
Eigen::MatrixXd apply_along_y(const RieszMatrix& op, const Eigen::MatrixXd& field);

struct EigenPair {
  double value;
  Eigen::VectorXd vector;  // unit 2-norm
};

/// Analytic eigenpairs of the n x n tridiagonal Toeplitz matrix with
/// diagonal b, superdiagonal a and subdiagonal c:
///   lambda_j = b + 2 a sqrt(c/a) cos(j pi / (n+1)),
///   x_j[k]   ~ (c/a)^{k/2} sin(k j pi / (n+1)),   j, k = 1..n.
/// Throws DegenerateMatrix for a == 0 and ComplexSpectrum for c/a < 0.
std::vector<EigenPair> tridiag_toeplitz_eigenpairs(double a, double b, double c, std::size_t n);

enum class SpdProbe {
  Eigensolver,  // dense symmetric eigensolve; reports the minimum eigenvalue
  Cholesky,     // LLT success probe; min_eigenvalue is NaN
};

struct SpdCertificate {
  bool is_spd = false;
  double min_eigenvalue = 0.0;
};

/// Symmetry to 1e-10 relative plus positive definiteness. For a
/// non-symmetric input the reported eigenvalue is that of its symmetric part.
SpdCertificate certify_spd(const Eigen::MatrixXd& m, SpdProbe probe = SpdProbe::Eigensolver);

/// Relative asymmetry max|M - M^T| / max|M| (0 for the zero matrix).
double relative_asymmetry(const Eigen::MatrixXd& m);

/// Row-major CSV with shortest round-trip numbers.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

}  // namespace rsfade
