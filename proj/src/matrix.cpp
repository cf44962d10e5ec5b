#include "qchan/matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace qchan {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::WrongRank: return "WrongRank";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NotAChannel: return "NotAChannel";
  }
  return "Unknown";
}

namespace {

void require_finite(std::span<const Complex> entries) {
  for (const auto& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::InvalidParameter, "matrix entry is not finite");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::InvalidDimension,
                std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

void require_bipartite(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  const std::size_t n = dim_a * dim_b;
  if (dim_a == 0 || dim_b == 0 || m.rows() != n || m.cols() != n) {
    throw Error(ErrorKind::InvalidDimension,
                "expected " + std::to_string(n) + "x" + std::to_string(n) + " operator, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw Error(ErrorKind::InvalidDimension, "empty matrix");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw Error(ErrorKind::InvalidDimension, "empty matrix");
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::InvalidDimension, "entry count does not match shape");
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw Error(ErrorKind::InvalidDimension, "empty matrix");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::InvalidDimension, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw Error(ErrorKind::InvalidDimension, "trace of non-square matrix");
  Complex s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorKind::InvalidDimension, "product of " + std::to_string(a.rows_) + "x" +
                                                 std::to_string(a.cols_) + " and " +
                                                 std::to_string(b.rows_) + "x" +
                                                 std::to_string(b.cols_));
  }
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(s);
}

Complex inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "inner");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += std::conj(a.data()[i]) * b.data()[i];
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) out(i * rb + k, j * cb + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix vec(const ComplexMatrix& a) {
  ComplexMatrix out(a.rows() * a.cols(), 1);
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r) out(c * a.rows() + r, 0) = a(r, c);
  return out;
}

ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols) {
  if (v.cols() != 1 || v.rows() != rows * cols) {
    throw Error(ErrorKind::InvalidDimension, "unvec: length does not match shape");
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = v(c * rows + r, 0);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Factor traced) {
  require_bipartite(m, dim_a, dim_b);
  if (traced == Factor::First) {
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t a = 0; a < dim_a; ++a)
      for (std::size_t i = 0; i < dim_b; ++i)
        for (std::size_t j = 0; j < dim_b; ++j) out(i, j) += m(a * dim_b + i, a * dim_b + j);
    return out;
  }
  ComplexMatrix out(dim_a, dim_a);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j)
      for (std::size_t b = 0; b < dim_b; ++b) out(i, j) += m(i * dim_b + b, j * dim_b + b);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Factor transposed) {
  require_bipartite(m, dim_a, dim_b);
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t b = 0; b < dim_b; ++b)
      for (std::size_t a2 = 0; a2 < dim_a; ++a2)
        for (std::size_t b2 = 0; b2 < dim_b; ++b2) {
          const Complex v = m(a * dim_b + b, a2 * dim_b + b2);
          if (transposed == Factor::First) {
            out(a2 * dim_b + b, a * dim_b + b2) = v;
          } else {
            out(a * dim_b + b2, a2 * dim_b + b) = v;
          }
        }
  return out;
}

double hermiticity_residual(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::InvalidDimension, "non-square matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j) - std::conj(m(j, i)));
  return std::sqrt(s);
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One two-sided rotation zeroing a(p,q). G = diag(1, e^{-i phi}) * R(c, s).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = std::conj(apq) / mag;  // e^{-i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex gpp = c, gpq = s, gqp = -s * phase, gqq = c * phase;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m, const EigenOptions& opts) {
  if (!m.is_square()) throw Error(ErrorKind::InvalidDimension, "eigen of non-square matrix");
  const std::size_t n = m.rows();
  const double scale = m.frobenius_norm();
  if (hermiticity_residual(m) > opts.hermitian_tol * scale) {
    throw Error(ErrorKind::NotHermitian,
                "||m - m*||_F = " + std::to_string(hermiticity_residual(m)));
  }

  ComplexMatrix a = (m + m.adjoint()) * Complex{0.5};
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = opts.offdiag_tol * scale;

  bool converged = offdiag_norm(a) <= target;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    converged = offdiag_norm(a) <= target;
  }
  if (!converged) {
    throw Error(ErrorKind::NumericalFailure,
                "Jacobi did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> eigenvalues(const ComplexMatrix& m) { return hermitian_eigen(m).eigenvalues; }

double det_psd(const ComplexMatrix& m, double tol) {
  const auto ev = eigenvalues(m);
  double det = 1.0;
  for (double x : ev) {
    if (x < -tol) {
      throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(x) + " below -tol");
    }
    det *= (std::abs(x) <= tol) ? 0.0 : x;
  }
  return det;
}

bool psd_check(const ComplexMatrix& m, double tol) {
  const auto ev = eigenvalues(m);
  return ev.front() >= -tol * std::max(1.0, m.frobenius_norm());
}

ComplexMatrix reconstruct(const ComplexMatrix& eigenvectors, std::span<const double> values) {
  const std::size_t n = eigenvectors.rows();
  if (values.size() != eigenvectors.cols()) {
    throw Error(ErrorKind::InvalidDimension, "eigenvalue count does not match eigenvectors");
  }
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += values[k] * eigenvectors(i, k) * std::conj(eigenvectors(j, k));
  }
  return out;
}

const ComplexMatrix& pauli(int i) {
  using namespace std::complex_literals;
  static const std::array<ComplexMatrix, 4> sigma = {
      ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}},
      ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
      ComplexMatrix{{0.0, -1i}, {1i, 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
  };
  if (i < 0 || i > 3) throw Error(ErrorKind::InvalidParameter, "Pauli index out of range");
  return sigma[static_cast<std::size_t>(i)];
}

}  // namespace qchan
