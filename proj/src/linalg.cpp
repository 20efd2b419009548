#include "qgem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qgem {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1.0;
  return m;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    t += (*this)(i, i);
  return t;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      r(j, i) = std::conj((*this)(i, j));
  return r;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto &z : a_)
    s += std::norm(z);
  return std::sqrt(s);
}

double CMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

CMatrix operator*(const CMatrix &a, const CMatrix &b) {
  if (a.n_ != b.n_)
    throw std::invalid_argument("matrix dimension mismatch");
  CMatrix r(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t k = 0; k < a.n_; ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < a.n_; ++j)
        r(i, j) += aik * b(k, j);
    }
  return r;
}

CMatrix operator-(const CMatrix &a, const CMatrix &b) {
  if (a.n_ != b.n_)
    throw std::invalid_argument("matrix dimension mismatch");
  CMatrix r(a.n_);
  for (std::size_t k = 0; k < a.a_.size(); ++k)
    r.a_[k] = a.a_[k] - b.a_[k];
  return r;
}

CMatrix outer(const std::vector<cplx> &u, const std::vector<cplx> &v) {
  if (u.size() != v.size())
    throw std::invalid_argument("outer: length mismatch");
  CMatrix r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
  const std::size_t na = a.dim(), nb = b.dim();
  CMatrix r(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return r;
}

cplx dot(const std::vector<cplx> &u, const std::vector<cplx> &v) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    s += std::conj(u[i]) * v[i];
  return s;
}

namespace {

// Real symmetric matrix, row-major, working storage for the Jacobi sweeps.
struct RealSym {
  std::size_t n;
  std::vector<double> a;
  double &operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

double off_diagonal_norm(const RealSym &m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j)
      if (i != j)
        s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

// Classical cyclic-by-row Jacobi. On return `m` is (numerically) diagonal and
// the columns of `v` are the eigenvectors.
int jacobi_sweeps(RealSym &m, RealSym &v, const JacobiOptions &opts) {
  const std::size_t n = m.n;
  double total = 0.0;
  for (double x : m.a)
    total += x * x;
  const double threshold = opts.relative_offdiag_tol * std::sqrt(total);

  for (int sweep = 0; sweep <= opts.max_sweeps; ++sweep) {
    if (off_diagonal_norm(m) <= threshold)
      return sweep;
    if (sweep == opts.max_sweeps)
      break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0)
          continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  throw LinalgError(LinalgErrorKind::ConvergenceFailure,
                    "Jacobi iteration did not converge in " +
                        std::to_string(opts.max_sweeps) + " sweeps");
}

double vnorm(const std::vector<cplx> &x) { return std::sqrt(std::real(dot(x, x))); }

void fix_phase(std::vector<cplx> &x) {
  for (const auto &z : x)
    if (std::abs(z) > 1e-12) {
      const cplx phase = std::conj(z) / std::abs(z);
      for (auto &w : x)
        w *= phase;
      return;
    }
}

} // namespace

EigenSystem hermitian_eigensystem(const CMatrix &h, const JacobiOptions &opts) {
  const std::size_t n = h.dim();
  const double scale = std::max(1.0, h.frobenius_norm());
  if (h.hermiticity_defect() > opts.hermitian_tol * scale)
    throw LinalgError(LinalgErrorKind::NotHermitian,
                      "matrix is not Hermitian (defect " +
                          std::to_string(h.hermiticity_defect()) + ")");

  const std::size_t n2 = 2 * n;
  RealSym m{n2, std::vector<double>(n2 * n2)};
  RealSym v{n2, std::vector<double>(n2 * n2)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrize while embedding so the rotations see an exactly symmetric
      // matrix.
      const cplx z = 0.5 * (h(i, j) + std::conj(h(j, i)));
      m(i, j) = z.real();
      m(i + n, j + n) = z.real();
      m(i, j + n) = -z.imag();
      m(i + n, j) = z.imag();
    }
  for (std::size_t i = 0; i < n2; ++i)
    v(i, i) = 1.0;

  EigenSystem out;
  out.sweeps = jacobi_sweeps(m, v, opts);

  // Each complex eigenvector z of H appears in the embedding as both (u, v)
  // and (-v, u), i.e. z and iz. Greedily keep the candidate with the largest
  // component outside the span of those already kept; n picks give an
  // orthonormal eigenbasis even inside degenerate clusters.
  std::vector<std::vector<cplx>> candidates(n2, std::vector<cplx>(n));
  for (std::size_t col = 0; col < n2; ++col)
    for (std::size_t i = 0; i < n; ++i)
      candidates[col][i] = cplx(v(i, col), v(i + n, col));

  std::vector<bool> used(n2, false);
  std::vector<std::vector<cplx>> basis;
  while (basis.size() < n) {
    std::size_t best = n2;
    double best_len = -1.0;
    for (std::size_t col = 0; col < n2; ++col) {
      if (used[col])
        continue;
      auto &z = candidates[col];
      if (!basis.empty()) {
        const auto &b = basis.back();
        const cplx proj = dot(b, z);
        for (std::size_t i = 0; i < n; ++i)
          z[i] -= proj * b[i];
      }
      const double len = vnorm(z);
      if (len > best_len) {
        best_len = len;
        best = col;
      }
    }
    if (best == n2 || best_len < 1e-3)
      throw LinalgError(LinalgErrorKind::ConvergenceFailure,
                        "eigenvector recovery lost rank");
    used[best] = true;
    auto z = candidates[best];
    for (auto &w : z)
      w /= best_len;
    basis.push_back(std::move(z));
  }

  std::vector<double> rayleigh(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto &z = basis[k];
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx hz = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        hz += h(i, j) * z[j];
      acc += std::conj(z[i]) * hz;
    }
    rayleigh[k] = acc.real();
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rayleigh[a] < rayleigh[b];
  });
  for (std::size_t k : order) {
    auto z = basis[k];
    fix_phase(z);
    out.values.push_back(rayleigh[k]);
    out.vectors.push_back(std::move(z));
  }

  return out;
}

} // namespace qgem
