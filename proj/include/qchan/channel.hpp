#pragma once

// Qubit-input channel representations and the conversions between them.
//
// Tensor ordering: every Choi matrix here lives on input (x) output, with the
// input as the outer (first) factor. This is what the column-stacking vec
// produces from C = sum_i vec(K_i) vec(K_i)*, and it makes
//   tr_input(C)  = Phi(I)
//   tr_output(C) = I        (trace preservation)
// Both orderings are common in the literature; mixing them silently transposes
// the channel, so all constructors in this library go through this one.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qchan/matrix.hpp"

namespace qchan {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

inline constexpr double kStructureTol = 1e-10;

// Operator-sum representation with 2-dimensional input. Operators are
// out_dim x 2; qubit channels have out_dim == 2, complements may not.
class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> operators, double tp_tol = kStructureTol);

  const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }
  std::size_t output_dim() const noexcept { return ops_.front().rows(); }

  // ||sum_i K_i* K_i - I||_F
  double tp_residual() const;

 private:
  std::vector<ComplexMatrix> ops_;
};

class ChoiMatrix {
 public:
  // Validates shape, Hermiticity and the trace-preservation marginal.
  // Positivity is NOT checked here; use psd_check / choi_rank.
  explicit ChoiMatrix(ComplexMatrix m, std::size_t output_dim = 2, double tol = kStructureTol);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t output_dim() const noexcept { return out_; }

  // ||tr_output(C) - I||_F
  double tp_residual() const;

 private:
  ComplexMatrix m_;
  std::size_t out_;
};

// Diagonal (canonical) Pauli form: Phi(I/2 + w.sigma/2) = I/2 + (t + diag(lambda) w).sigma/2.
struct BlochParams {
  Vec3 t{};
  Vec3 lambda{};
};

// Full real block (1 0; t T) of the Pauli transfer matrix.
struct PauliTransfer {
  Vec3 t{};
  Mat3 T{};

  bool is_diagonal(double tol = kStructureTol) const;
  std::optional<BlochParams> as_bloch(double tol = kStructureTol) const;
};

// Isometry V: C^2 -> output (x) environment.
struct StinespringIsometry {
  ComplexMatrix v;
  std::size_t env_dim;
};

// Canonical Choi-rank-2 family: A1 = diag(cos a, cos b), A2 = [[0, sin b], [sin a, 0]].
struct Rank2Params {
  double alpha = 0.0;
  double beta = 0.0;
};

ChoiMatrix choi_from_kraus(const KrausSet& k);

// Eigenvalues at or below cutoff * tr(c) are treated as absent directions.
inline constexpr double kKrausCutoff = 1e-10;
KrausSet kraus_from_choi(const ChoiMatrix& c, double cutoff = kKrausCutoff);

// Closed-form Choi matrix of the diagonal Pauli form. CP is not required.
ChoiMatrix choi_from_bloch(const BlochParams& b);
ChoiMatrix choi_from_pauli_transfer(const PauliTransfer& p);

// T_ij = tr(sigma_i Phi(sigma_j)) / 2, t_i = tr(sigma_i Phi(I)) / 2.
PauliTransfer bloch_from_choi(const ChoiMatrix& c);

// The fixed Bell-basis change F, and F C F*.
const ComplexMatrix& bell_transform();
ComplexMatrix to_bell_basis(const ChoiMatrix& c);

// Phi~(rho) = sum_ij tr(rho K_j* K_i) E_ij with the environment indexed by
// Kraus order. Returned operators are d x 2, one per output row of the input.
KrausSet complement(const KrausSet& k);

StinespringIsometry stinespring_from_kraus(const KrausSet& k);
KrausSet kraus_from_stinespring(const StinespringIsometry& s);

ComplexMatrix apply(const KrausSet& k, const ComplexMatrix& rho);
// Same action evaluated from the Choi matrix: Phi(X) = sum_jk X_jk C[j, k block].
ComplexMatrix apply(const ChoiMatrix& c, const ComplexMatrix& rho);

// tr_input(C)
ComplexMatrix phi_of_identity(const ChoiMatrix& c);

// Number of eigenvalues above tol * tr(c). Throws NotCompletelyPositive when
// the minimum eigenvalue is below -tol * max(1, ||c||_F).
std::size_t choi_rank(const ChoiMatrix& c, double tol = kDefaultPsdTol);

namespace channels {

KrausSet identity();
KrausSet depolarizing(double p);
KrausSet completely_depolarizing();
KrausSet completely_dephasing();
// Completely dephasing in the orthonormal basis given by the columns of `basis`.
KrausSet completely_dephasing(const ComplexMatrix& basis);
KrausSet dephasing(double alpha);
KrausSet amplitude_damping(double alpha);
KrausSet rank2(const Rank2Params& p);
inline KrausSet rank2(double alpha, double beta) { return rank2(Rank2Params{alpha, beta}); }
// Throws NotCompletelyPositive when lambda is outside the CP tetrahedron.
BlochParams unital(const Vec3& lambda);

// Basis preserved by dephasing(alpha): the eigenbasis of sigma_x (Hadamard columns).
const ComplexMatrix& dephasing_basis();

}  // namespace channels

}  // namespace qchan
