#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qgem {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. Sized for the 4x4 and 8x8
/// density matrices used here; nothing is optimized beyond that.
class CMatrix {
public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static CMatrix identity(std::size_t n);

  std::size_t dim() const noexcept { return n_; }

  cplx &operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx &operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }

  cplx trace() const;
  CMatrix adjoint() const;
  double frobenius_norm() const;
  /// Largest |A(i,j) - conj(A(j,i))|.
  double hermiticity_defect() const;

  friend CMatrix operator*(const CMatrix &a, const CMatrix &b);
  friend CMatrix operator-(const CMatrix &a, const CMatrix &b);
  bool operator==(const CMatrix &) const = default;

private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

CMatrix outer(const std::vector<cplx> &u, const std::vector<cplx> &v);
CMatrix kron(const CMatrix &a, const CMatrix &b);
cplx dot(const std::vector<cplx> &u, const std::vector<cplx> &v); // <u|v>

enum class LinalgErrorKind { NotHermitian, ConvergenceFailure };

class LinalgError : public std::runtime_error {
public:
  LinalgError(LinalgErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  LinalgErrorKind kind() const noexcept { return kind_; }

private:
  LinalgErrorKind kind_;
};

struct EigenSystem {
  std::vector<double> values;            ///< ascending
  std::vector<std::vector<cplx>> vectors; ///< vectors[k] pairs with values[k]
  int sweeps = 0;
};

struct JacobiOptions {
  double hermitian_tol = 1e-10;
  double relative_offdiag_tol = 1e-14;
  int max_sweeps = 100;
};

/// Eigen-decomposition of a complex Hermitian matrix.
///
/// H = A + iB is embedded as the real symmetric [[A, -B], [B, A]] and
/// diagonalized with cyclic Jacobi rotations. Every eigenvalue of H shows up
/// twice in the embedding; the real vectors (u, v) map back to complex
/// vectors u + iv and are deduplicated by Gram-Schmidt. Eigenvalues are the
/// Rayleigh quotients of the recovered vectors. Each returned vector has its
/// first non-negligible component rotated to be real and positive.
EigenSystem hermitian_eigensystem(const CMatrix &m,
                                  const JacobiOptions &opts = {});

} // namespace qgem
