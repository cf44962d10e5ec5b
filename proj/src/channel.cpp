#include "qchan/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qchan {

using namespace std::complex_literals;

namespace {

ComplexMatrix gram_sum(const std::vector<ComplexMatrix>& ops) {
  ComplexMatrix s(ops.front().cols(), ops.front().cols());
  for (const auto& k : ops) s += k.adjoint() * k;
  return s;
}

}  // namespace

KrausSet::KrausSet(std::vector<ComplexMatrix> operators, double tp_tol) : ops_(std::move(operators)) {
  if (ops_.empty()) throw Error(ErrorKind::InvalidDimension, "Kraus set is empty");
  const std::size_t out = ops_.front().rows();
  for (const auto& k : ops_) {
    if (k.cols() != 2 || k.rows() != out) {
      throw Error(ErrorKind::InvalidDimension, "Kraus operators must all be " +
                                                   std::to_string(out) + "x2");
    }
  }
  if (const double r = tp_residual(); !(r <= tp_tol)) {
    throw Error(ErrorKind::NotTracePreserving, "||sum K*K - I||_F = " + std::to_string(r));
  }
}

double KrausSet::tp_residual() const { return distance(gram_sum(ops_), ComplexMatrix::identity(2)); }

ChoiMatrix::ChoiMatrix(ComplexMatrix m, std::size_t output_dim, double tol)
    : m_(std::move(m)), out_(output_dim) {
  if (out_ == 0 || m_.rows() != 2 * out_ || m_.cols() != 2 * out_) {
    throw Error(ErrorKind::InvalidDimension, "Choi matrix must be " + std::to_string(2 * out_) +
                                                 "x" + std::to_string(2 * out_));
  }
  if (hermiticity_residual(m_) > tol * std::max(1.0, m_.frobenius_norm())) {
    throw Error(ErrorKind::NotHermitian, "Choi matrix is not Hermitian");
  }
  if (const double r = tp_residual(); !(r <= tol)) {
    throw Error(ErrorKind::NotTracePreserving,
                "||tr_output(C) - I||_F = " + std::to_string(r));
  }
}

double ChoiMatrix::tp_residual() const {
  return distance(partial_trace(m_, 2, out_, Factor::Second), ComplexMatrix::identity(2));
}

bool PauliTransfer::is_diagonal(double tol) const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(T[i][j]) > tol) return false;
  return true;
}

std::optional<BlochParams> PauliTransfer::as_bloch(double tol) const {
  if (!is_diagonal(tol)) return std::nullopt;
  return BlochParams{t, {T[0][0], T[1][1], T[2][2]}};
}

ChoiMatrix choi_from_kraus(const KrausSet& k) {
  const std::size_t n = 2 * k.output_dim();
  ComplexMatrix c(n, n);
  for (const auto& op : k.operators()) {
    const ComplexMatrix v = vec(op);
    c += v * v.adjoint();
  }
  return ChoiMatrix(std::move(c), k.output_dim(), std::max(kStructureTol, 2.0 * k.tp_residual()));
}

KrausSet kraus_from_choi(const ChoiMatrix& c, double cutoff) {
  const std::size_t out = c.output_dim();
  const auto eig = hermitian_eigen(c.matrix());
  const double scale = c.matrix().trace().real();
  const double floor = -kDefaultPsdTol * std::max(1.0, c.matrix().frobenius_norm());
  if (eig.eigenvalues.front() < floor) {
    throw Error(ErrorKind::NotCompletelyPositive,
                "min Choi eigenvalue " + std::to_string(eig.eigenvalues.front()));
  }
  std::vector<ComplexMatrix> ops;
  // Largest eigenvalue first so the dominant Kraus operator leads.
  for (std::size_t idx = eig.eigenvalues.size(); idx-- > 0;) {
    const double lam = eig.eigenvalues[idx];
    if (lam <= cutoff * scale) continue;
    ComplexMatrix v(2 * out, 1);
    for (std::size_t r = 0; r < 2 * out; ++r) v(r, 0) = std::sqrt(lam) * eig.eigenvectors(r, idx);
    ops.push_back(unvec(v, out, 2));
  }
  if (ops.empty()) throw Error(ErrorKind::NotCompletelyPositive, "Choi matrix has no support");
  // Dropped directions carry at most cutoff * tr(c) each.
  return KrausSet(std::move(ops), std::max(kStructureTol, 8.0 * cutoff * scale));
}

ChoiMatrix choi_from_bloch(const BlochParams& b) {
  const auto& [t1, t2, t3] = b.t;
  const auto& [l1, l2, l3] = b.lambda;
  const Complex tm{t1, -t2}, tp{t1, t2};
  ComplexMatrix c{
      {1 + t3 + l3, tm, 0.0, l1 + l2},
      {tp, 1 - t3 - l3, l1 - l2, 0.0},
      {0.0, l1 - l2, 1 + t3 - l3, tm},
      {l1 + l2, 0.0, tp, 1 - t3 + l3},
  };
  return ChoiMatrix(c * Complex{0.5});
}

ChoiMatrix choi_from_pauli_transfer(const PauliTransfer& p) {
  // Phi(sigma_j) for j = 0..3, then C = sum_jk E_jk (x) Phi(E_jk).
  std::array<ComplexMatrix, 4> image;
  image[0] = pauli(0);
  for (int i = 0; i < 3; ++i) image[0] += p.t[i] * pauli(i + 1);
  for (int j = 0; j < 3; ++j) {
    ComplexMatrix m(2, 2);
    for (int i = 0; i < 3; ++i) m += p.T[i][j] * pauli(i + 1);
    image[j + 1] = m;
  }
  const ComplexMatrix e00 = (image[0] + image[3]) * Complex{0.5};
  const ComplexMatrix e11 = (image[0] - image[3]) * Complex{0.5};
  const ComplexMatrix e01 = (image[1] + 1i * image[2]) * Complex{0.5};
  const ComplexMatrix e10 = (image[1] - 1i * image[2]) * Complex{0.5};
  const std::array<std::array<const ComplexMatrix*, 2>, 2> blocks{{{&e00, &e01}, {&e10, &e11}}};

  ComplexMatrix c(4, 4);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t s = 0; s < 2; ++s) c(2 * j + r, 2 * k + s) = (*blocks[j][k])(r, s);
  return ChoiMatrix(std::move(c));
}

PauliTransfer bloch_from_choi(const ChoiMatrix& c) {
  if (c.output_dim() != 2) throw Error(ErrorKind::InvalidDimension, "qubit output required");
  PauliTransfer out;
  const ComplexMatrix img = phi_of_identity(c);
  for (int i = 0; i < 3; ++i) out.t[i] = 0.5 * (pauli(i + 1) * img).trace().real();
  for (int j = 0; j < 3; ++j) {
    const ComplexMatrix phij = apply(c, pauli(j + 1));
    for (int i = 0; i < 3; ++i) out.T[i][j] = 0.5 * (pauli(i + 1) * phij).trace().real();
  }
  return out;
}

const ComplexMatrix& bell_transform() {
  static const ComplexMatrix f = ComplexMatrix{
                                     {1.0, 0.0, 0.0, 1.0},
                                     {0.0, 1.0, 1.0, 0.0},
                                     {0.0, 1.0, -1.0, 0.0},
                                     {1.0, 0.0, 0.0, -1.0},
                                 } *
                                 Complex{1.0 / std::sqrt(2.0)};
  return f;
}

ComplexMatrix to_bell_basis(const ChoiMatrix& c) {
  if (c.output_dim() != 2) throw Error(ErrorKind::InvalidDimension, "qubit output required");
  const ComplexMatrix& f = bell_transform();
  return f * c.matrix() * f.adjoint();
}

KrausSet complement(const KrausSet& k) {
  const std::size_t d = k.size();
  std::vector<ComplexMatrix> ops;
  ops.reserve(k.output_dim());
  for (std::size_t row = 0; row < k.output_dim(); ++row) {
    ComplexMatrix op(d, 2);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t x = 0; x < 2; ++x) op(i, x) = k.operators()[i](row, x);
    ops.push_back(std::move(op));
  }
  // sum_j Kt_j* Kt_j == sum_i K_i* K_i, so completeness carries over.
  return KrausSet(std::move(ops), std::max(kStructureTol, 2.0 * k.tp_residual()));
}

StinespringIsometry stinespring_from_kraus(const KrausSet& k) {
  const std::size_t d = k.size(), out = k.output_dim();
  ComplexMatrix v(out * d, 2);
  for (std::size_t z = 0; z < d; ++z)
    for (std::size_t y = 0; y < out; ++y)
      for (std::size_t x = 0; x < 2; ++x) v(y * d + z, x) = k.operators()[z](y, x);
  return {std::move(v), d};
}

KrausSet kraus_from_stinespring(const StinespringIsometry& s) {
  const std::size_t d = s.env_dim;
  if (d == 0 || s.v.cols() != 2 || s.v.rows() % d != 0) {
    throw Error(ErrorKind::InvalidDimension, "isometry shape does not match environment");
  }
  const std::size_t out = s.v.rows() / d;
  std::vector<ComplexMatrix> ops;
  for (std::size_t z = 0; z < d; ++z) {
    ComplexMatrix k(out, 2);
    for (std::size_t y = 0; y < out; ++y)
      for (std::size_t x = 0; x < 2; ++x) k(y, x) = s.v(y * d + z, x);
    ops.push_back(std::move(k));
  }
  return KrausSet(std::move(ops));
}

ComplexMatrix apply(const KrausSet& k, const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw Error(ErrorKind::InvalidDimension, "channel input must be 2x2");
  }
  ComplexMatrix out(k.output_dim(), k.output_dim());
  for (const auto& op : k.operators()) out += op * rho * op.adjoint();
  return out;
}

ComplexMatrix apply(const ChoiMatrix& c, const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw Error(ErrorKind::InvalidDimension, "channel input must be 2x2");
  }
  const std::size_t out = c.output_dim();
  ComplexMatrix res(out, out);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t r = 0; r < out; ++r)
        for (std::size_t s = 0; s < out; ++s)
          res(r, s) += rho(j, k) * c.matrix()(j * out + r, k * out + s);
  return res;
}

ComplexMatrix phi_of_identity(const ChoiMatrix& c) {
  return partial_trace(c.matrix(), 2, c.output_dim(), Factor::First);
}

std::size_t choi_rank(const ChoiMatrix& c, double tol) {
  const auto ev = eigenvalues(c.matrix());
  if (ev.front() < -tol * std::max(1.0, c.matrix().frobenius_norm())) {
    throw Error(ErrorKind::NotCompletelyPositive,
                "min Choi eigenvalue " + std::to_string(ev.front()));
  }
  const double cut = tol * c.matrix().trace().real();
  std::size_t rank = 0;
  for (double x : ev)
    if (x > cut) ++rank;
  return rank;
}

namespace channels {

KrausSet identity() { return KrausSet({ComplexMatrix::identity(2)}); }

KrausSet depolarizing(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "depolarizing p must lie in [0, 1]");
  }
  std::vector<ComplexMatrix> ops{pauli(0) * Complex{std::sqrt(1.0 - 0.75 * p)}};
  if (p > 0.0) {
    for (int i = 1; i <= 3; ++i) ops.push_back(pauli(i) * Complex{std::sqrt(0.25 * p)});
  }
  return KrausSet(std::move(ops));
}

KrausSet completely_depolarizing() { return depolarizing(1.0); }

KrausSet completely_dephasing() { return completely_dephasing(ComplexMatrix::identity(2)); }

KrausSet completely_dephasing(const ComplexMatrix& basis) {
  if (basis.rows() != 2 || basis.cols() != 2) {
    throw Error(ErrorKind::InvalidDimension, "basis must be 2x2");
  }
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < 2; ++i) {
    const ComplexMatrix u = ComplexMatrix::column(std::vector<Complex>{basis(0, i), basis(1, i)});
    ops.push_back(u * u.adjoint());
  }
  return KrausSet(std::move(ops));
}

KrausSet dephasing(double alpha) { return rank2(alpha, alpha); }

KrausSet amplitude_damping(double alpha) { return rank2(alpha, 0.0); }

KrausSet rank2(const Rank2Params& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
    throw Error(ErrorKind::InvalidParameter, "rank-2 angles must be finite");
  }
  const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
  const double cb = std::cos(p.beta), sb = std::sin(p.beta);
  return KrausSet({ComplexMatrix{{ca, 0.0}, {0.0, cb}}, ComplexMatrix{{0.0, sb}, {sa, 0.0}}});
}

BlochParams unital(const Vec3& lambda) {
  const auto& [l1, l2, l3] = lambda;
  const std::array<double, 4> mu{1 + l1 + l2 + l3, 1 + l1 - l2 - l3, 1 - l1 + l2 - l3,
                                 1 - l1 - l2 + l3};
  for (double m : mu) {
    if (!std::isfinite(m) || m < -kStructureTol) {
      throw Error(ErrorKind::NotCompletelyPositive, "lambda lies outside the CP tetrahedron");
    }
  }
  return BlochParams{{0.0, 0.0, 0.0}, lambda};
}

const ComplexMatrix& dephasing_basis() {
  static const ComplexMatrix h =
      ComplexMatrix{{1.0, 1.0}, {1.0, -1.0}} * Complex{1.0 / std::sqrt(2.0)};
  return h;
}

}  // namespace channels

}  // namespace qchan
