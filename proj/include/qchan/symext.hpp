#pragma once

// Numerical check for two-qubit symmetric extendibility, independent of the
// closed-form inequality in degradability.hpp.
//
// A state rho_XY is symmetrically extendible when some rho_XYY' on
// X (x) Y (x) Y' (each C^2, X outermost) is PSD with
//     tr_Y'(rho_XYY') = rho_XY = tr_Y(rho_XYY').
// If rho is such an extension then so is (rho + S rho S) / 2, S swapping Y
// and Y', so the search is restricted to swap-invariant candidates. There the
// two marginal conditions coincide and the feasible set is the intersection
// of the PSD cone with one affine subspace, which Dykstra's alternating
// projections handle directly.
//
// Kernel vectors k of the target force w (k (x) e) = 0 = w S(k (x) e) for any
// extension w, so PSD projections run on the complement of those vectors.
//
// Infeasibility is inferred from a stalled residual, so an Infeasible result
// is a heuristic, not a certificate.

#include <cstddef>
#include <optional>

#include "qchan/channel.hpp"

namespace qchan::symext {

enum class OracleStatus { Feasible, Infeasible, Inconclusive };

std::string_view to_string(OracleStatus s);

struct ExtensionProblem {
  ComplexMatrix target;  // 4x4 density matrix on X (x) Y
  double tol = 1e-7;
  std::size_t max_iter = 20000;
};

struct OracleResult {
  OracleStatus status = OracleStatus::Inconclusive;
  std::optional<ComplexMatrix> witness;  // 8x8, present when Feasible
  double residual = 0.0;
  std::size_t iterations = 0;
  bool fallback = false;  // Douglas-Rachford was needed after Dykstra ran out
};

// Residuals of a candidate extension, all in Frobenius norm.
struct WitnessCheck {
  double min_eigenvalue;
  double marginal_yprime;  // ||tr_Y'(w) - target||
  double marginal_y;       // ||tr_Y(w) - target||
  double swap;             // ||S w S - w||

  bool passes(double tol) const {
    return min_eigenvalue >= -tol && marginal_yprime <= tol && marginal_y <= tol && swap <= tol;
  }
};

// Permutation swapping the last two qubits of X (x) Y (x) Y'.
const ComplexMatrix& swap_yy();

// Nearest PSD matrix in Frobenius norm (negative eigenvalues clamped).
ComplexMatrix project_psd(const ComplexMatrix& m);

// m + (target - tr_Y'(m)) (x) I/2: projection onto {tr_Y'(rho) = target}.
ComplexMatrix project_marginal(const ComplexMatrix& m, const ComplexMatrix& target);

// (m + S m S) / 2
ComplexMatrix symmetrize_swap(const ComplexMatrix& m);

// Projection onto {swap-invariant, tr_Y'(rho) = target}. Composing the two
// projections above does not land in this set (the marginal correction breaks
// the swap symmetry), so this solves the joint normal equations directly.
ComplexMatrix project_symmetric_marginal(const ComplexMatrix& m, const ComplexMatrix& target);

ComplexMatrix marginal_xy(const ComplexMatrix& m);   // tr_Y'
ComplexMatrix marginal_xyp(const ComplexMatrix& m);  // tr_Y, as an operator on X (x) Y'

WitnessCheck check_witness(const ComplexMatrix& w, const ComplexMatrix& target);

// Per-iteration hook, for convergence diagnostics in tests.
struct IterationTrace {
  std::size_t iteration;
  double residual;
  double displacement;  // ||x_{k+1} - x_k||_F
};
using TraceSink = void (*)(const IterationTrace&, void* user);

OracleResult dykstra_feasibility(const ExtensionProblem& p, TraceSink sink = nullptr,
                                 void* user = nullptr);

// Douglas-Rachford splitting on the same two sets. It only reports Feasible
// or Inconclusive; on infeasible problems its iterates drift without settling.
OracleResult douglas_rachford_feasibility(const ExtensionProblem& p);

// Normalises the Choi matrix to a state (c / tr c) and runs Dykstra. Dykstra
// heads for the point of the feasible set nearest the start, which can be
// approached sublinearly when the target is close to singular; if it ends
// Inconclusive, Douglas-Rachford gets a fresh budget of max_iter.
OracleResult oracle_extendible(const ChoiMatrix& c, double tol = 1e-7,
                               std::size_t max_iter = 20000);

}  // namespace qchan::symext
