#pragma once

// Small dense complex linear algebra. Everything here is sized for the
// 2x2 / 4x4 / 8x8 operators that show up in qubit channel work; nothing is
// blocked or vectorised.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qchan/errors.hpp"

namespace qchan {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() : ComplexMatrix(1, 1) {}
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix column(std::span<const Complex> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;

  Complex trace() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

// Frobenius distance; dimensions must agree.
double distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Hilbert-Schmidt inner product tr(a* b).
Complex inner(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Column stacking: vec(U K V) = (V^T kron U) vec(K).
ComplexMatrix vec(const ComplexMatrix& a);
ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols);

// Selects one factor of a bipartite space A (x) B, A being the outer index.
enum class Factor { First, Second };

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Factor traced);
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Factor transposed);

double hermiticity_residual(const ComplexMatrix& m);

struct HermitianEigen {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column i pairs with eigenvalues[i]
};

struct EigenOptions {
  double hermitian_tol = 1e-10;  // relative to ||m||_F
  double offdiag_tol = 1e-14;    // relative to ||m||_F
  int max_sweeps = 100;
};

// Cyclic complex Jacobi. Throws NotHermitian / NumericalFailure.
HermitianEigen hermitian_eigen(const ComplexMatrix& m, const EigenOptions& opts = {});
std::vector<double> eigenvalues(const ComplexMatrix& m);

inline constexpr double kDefaultPsdTol = 1e-9;

// Product of eigenvalues with |lambda| <= tol set to exactly zero.
// Throws NotPSD when some eigenvalue is below -tol.
double det_psd(const ComplexMatrix& m, double tol = kDefaultPsdTol);

// min eigenvalue >= -tol * max(1, ||m||_F)
bool psd_check(const ComplexMatrix& m, double tol = kDefaultPsdTol);

// Rebuild E diag(values) E*.
ComplexMatrix reconstruct(const ComplexMatrix& eigenvectors, std::span<const double> values);

// Pauli matrices; index 0 is the identity.
const ComplexMatrix& pauli(int i);

}  // namespace qchan
