#include "qchan/symext.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace qchan::symext {

std::string_view to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::Feasible: return "feasible";
    case OracleStatus::Infeasible: return "infeasible";
    case OracleStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kStallWindow = 50;
constexpr double kStallRelChange = 1e-3;
constexpr double kStallResidualFactor = 10.0;
constexpr double kFaceTol = 1e-9;

void require_tripartite(const ComplexMatrix& m) {
  if (m.rows() != 8 || m.cols() != 8) {
    throw Error(ErrorKind::InvalidDimension, "expected an 8x8 operator on X(x)Y(x)Y'");
  }
}

void require_target(const ComplexMatrix& t) {
  if (t.rows() != 4 || t.cols() != 4) throw Error(ErrorKind::InvalidDimension, "target must be 4x4");
}

// Eigendecomposition seeded with a previous eigenbasis: diagonalise G* m G,
// which is nearly diagonal when m moved little, and rotate back.
HermitianEigen warm_eigen(const ComplexMatrix& m, const ComplexMatrix* basis) {
  if (basis == nullptr) return hermitian_eigen(m);
  const ComplexMatrix rotated = basis->adjoint() * m * *basis;
  HermitianEigen e = hermitian_eigen(rotated);
  e.eigenvectors = *basis * e.eigenvectors;
  return e;
}

ComplexMatrix clamp_reconstruct(const HermitianEigen& e) {
  std::vector<double> clamped(e.eigenvalues);
  for (double& x : clamped) x = std::max(x, 0.0);
  return reconstruct(e.eigenvectors, clamped);
}

// If target k = 0 then every extension w has w (k (x) e) = 0 and, being
// swap-invariant, w S(k (x) e) = 0 as well. Returns an orthonormal basis
// (as columns) of the complement of those vectors; PSD projections can be
// restricted to it without changing the feasible set. nullopt: the face is {0}.
std::optional<ComplexMatrix> feasible_face(const ComplexMatrix& target) {
  const HermitianEigen te = hermitian_eigen(target);
  const ComplexMatrix& s = swap_yy();
  std::vector<std::vector<Complex>> kernel;
  for (std::size_t i = 0; i < 4; ++i) {
    if (te.eigenvalues[i] > kFaceTol) continue;
    for (std::size_t e = 0; e < 2; ++e) {
      std::vector<Complex> v(8);
      for (std::size_t j = 0; j < 4; ++j) v[j * 2 + e] = te.eigenvectors(j, i);
      std::vector<Complex> sv(8);
      for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) sv[r] += s(r, c) * v[c];
      kernel.push_back(std::move(v));
      kernel.push_back(std::move(sv));
    }
  }
  ComplexMatrix proj = ComplexMatrix::identity(8);
  std::vector<std::vector<Complex>> basis;
  for (auto v : kernel) {
    for (const auto& b : basis) {
      Complex ip{};
      for (std::size_t r = 0; r < 8; ++r) ip += std::conj(b[r]) * v[r];
      for (std::size_t r = 0; r < 8; ++r) v[r] -= ip * b[r];
    }
    double n = 0.0;
    for (const auto& z : v) n += std::norm(z);
    n = std::sqrt(n);
    if (n < 1e-8) continue;
    for (auto& z : v) z /= n;
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c) proj(r, c) -= v[r] * std::conj(v[c]);
    basis.push_back(std::move(v));
  }
  const std::size_t dim = 8 - basis.size();
  if (dim == 0) return std::nullopt;
  const HermitianEigen pe = hermitian_eigen(proj);
  ComplexMatrix q(8, dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < 8; ++r) q(r, c) = pe.eigenvectors(r, 8 - dim + c);
  return q;
}

}  // namespace

const ComplexMatrix& swap_yy() {
  static const ComplexMatrix s = [] {
    ComplexMatrix m(8, 8);
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t yp = 0; yp < 2; ++yp) m(x * 4 + yp * 2 + y, x * 4 + y * 2 + yp) = 1.0;
    return m;
  }();
  return s;
}

ComplexMatrix project_psd(const ComplexMatrix& m) { return clamp_reconstruct(hermitian_eigen(m)); }

ComplexMatrix marginal_xy(const ComplexMatrix& m) {
  require_tripartite(m);
  return partial_trace(m, 4, 2, Factor::Second);
}

ComplexMatrix marginal_xyp(const ComplexMatrix& m) {
  require_tripartite(m);
  ComplexMatrix out(4, 4);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t yp = 0; yp < 2; ++yp)
      for (std::size_t x2 = 0; x2 < 2; ++x2)
        for (std::size_t yp2 = 0; yp2 < 2; ++yp2)
          for (std::size_t y = 0; y < 2; ++y)
            out(x * 2 + yp, x2 * 2 + yp2) += m(x * 4 + y * 2 + yp, x2 * 4 + y * 2 + yp2);
  return out;
}

ComplexMatrix project_marginal(const ComplexMatrix& m, const ComplexMatrix& target) {
  require_tripartite(m);
  require_target(target);
  return m + kron(target - marginal_xy(m), ComplexMatrix::identity(2) * Complex{0.5});
}

ComplexMatrix symmetrize_swap(const ComplexMatrix& m) {
  require_tripartite(m);
  const ComplexMatrix& s = swap_yy();
  return (m + s * m * s) * Complex{0.5};
}

ComplexMatrix project_symmetric_marginal(const ComplexMatrix& m, const ComplexMatrix& target) {
  require_target(target);
  const ComplexMatrix sym = symmetrize_swap(m);
  // Solve L L*(D) = R for L = tr_Y' on the swap-invariant subspace, where
  // L L*(D) = D + tr_Y(D) (x) I / 2. Its solution is D = R - tr_Y(R) (x) I / 4.
  const ComplexMatrix r = target - marginal_xy(sym);
  const ComplexMatrix rx = partial_trace(r, 2, 2, Factor::Second);
  const ComplexMatrix d = r - kron(rx, ComplexMatrix::identity(2)) * Complex{0.25};
  return sym + symmetrize_swap(kron(d, ComplexMatrix::identity(2)));
}

WitnessCheck check_witness(const ComplexMatrix& w, const ComplexMatrix& target) {
  require_tripartite(w);
  require_target(target);
  const ComplexMatrix& s = swap_yy();
  return WitnessCheck{
      eigenvalues(w).front(),
      distance(marginal_xy(w), target),
      distance(marginal_xyp(w), target),
      distance(s * w * s, w),
  };
}

namespace {

void validate(const ExtensionProblem& p) {
  require_target(p.target);
  if (std::abs(p.target.trace() - Complex{1.0}) > 1e-10) {
    throw Error(ErrorKind::InvalidParameter, "target must have unit trace");
  }
  if (!psd_check(p.target, p.tol)) {
    throw Error(ErrorKind::NotPSD, "target is not positive semidefinite");
  }
}

// PSD projection restricted to the face, reusing the previous eigenbasis.
class FaceProjector {
 public:
  explicit FaceProjector(const ComplexMatrix& target) : face_(feasible_face(target)) {
    if (face_) face_adj_ = face_->adjoint();
  }

  ComplexMatrix operator()(const ComplexMatrix& z) {
    if (!face_) return ComplexMatrix(8, 8);
    const HermitianEigen e = warm_eigen(*face_adj_ * z * *face_, basis_ ? &*basis_ : nullptr);
    basis_ = e.eigenvectors;
    return *face_ * clamp_reconstruct(e) * *face_adj_;
  }

 private:
  std::optional<ComplexMatrix> face_, face_adj_, basis_;
};

double constraint_residual(const ComplexMatrix& y, const ComplexMatrix& target) {
  const ComplexMatrix& s = swap_yy();
  return std::max({distance(marginal_xy(y), target), distance(marginal_xyp(y), target),
                   distance(s * y * s, y)});
}

}  // namespace

OracleResult dykstra_feasibility(const ExtensionProblem& p, TraceSink sink, void* user) {
  validate(p);
  const ComplexMatrix& target = p.target;
  ComplexMatrix x = kron(target, ComplexMatrix::identity(2) * Complex{0.5});
  ComplexMatrix psd_corr(8, 8), affine_corr(8, 8);
  std::deque<double> history;
  FaceProjector project(target);

  OracleResult result;
  for (std::size_t it = 1; it <= p.max_iter; ++it) {
    const ComplexMatrix shifted = x + psd_corr;
    const ComplexMatrix y = project(shifted);
    psd_corr = shifted - y;

    const ComplexMatrix shifted_y = y + affine_corr;
    ComplexMatrix next = project_symmetric_marginal(shifted_y, target);
    affine_corr = shifted_y - next;

    const double residual = constraint_residual(y, target);
    const double displacement = distance(next, x);
    x = std::move(next);
    result.iterations = it;
    result.residual = residual;
    if (sink != nullptr) sink(IterationTrace{it, residual, displacement}, user);

    if (residual <= p.tol) {
      result.status = OracleStatus::Feasible;
      result.witness = y;
      return result;
    }
    history.push_back(residual);
    if (history.size() > kStallWindow + 1) history.pop_front();
    if (history.size() == kStallWindow + 1 && residual >= kStallResidualFactor * p.tol &&
        std::abs(history.front() - residual) < kStallRelChange * residual) {
      result.status = OracleStatus::Infeasible;
      return result;
    }
  }
  result.status = OracleStatus::Inconclusive;
  return result;
}

OracleResult douglas_rachford_feasibility(const ExtensionProblem& p) {
  validate(p);
  const ComplexMatrix& target = p.target;
  ComplexMatrix z = kron(target, ComplexMatrix::identity(2) * Complex{0.5});
  FaceProjector project(target);

  OracleResult result;
  for (std::size_t it = 1; it <= p.max_iter; ++it) {
    const ComplexMatrix y = project(z);
    z += project_symmetric_marginal(y * Complex{2.0} - z, target) - y;
    result.iterations = it;
    result.residual = constraint_residual(y, target);
    if (result.residual <= p.tol) {
      result.status = OracleStatus::Feasible;
      result.witness = y;
      return result;
    }
  }
  result.status = OracleStatus::Inconclusive;
  return result;
}

OracleResult oracle_extendible(const ChoiMatrix& c, double tol, std::size_t max_iter) {
  if (c.output_dim() != 2) throw Error(ErrorKind::InvalidDimension, "qubit output required");
  const double tr = c.matrix().trace().real();
  const ExtensionProblem problem{c.matrix() * Complex{1.0 / tr}, tol, max_iter};
  OracleResult r = dykstra_feasibility(problem);
  if (r.status != OracleStatus::Inconclusive) return r;
  OracleResult second = douglas_rachford_feasibility(problem);
  second.iterations += r.iterations;
  second.fallback = true;
  if (second.status == OracleStatus::Inconclusive) second.residual = std::min(second.residual, r.residual);
  return second;
}

}  // namespace qchan::symext
