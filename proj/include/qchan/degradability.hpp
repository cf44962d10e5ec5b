#pragma once

// Antidegradability / degradability / entanglement-breaking decisions for
// qubit channels.
//
// The governing criterion is the two-qubit symmetric-extendibility inequality
// applied to the (unnormalised) Choi matrix:
//
//     tr(Phi(I)^2) >= tr(C^2) - 4 sqrt(det C)
//
// Both sides scale quadratically with the trace, so no normalisation to a
// density matrix is needed. Every test returns a Verdict carrying the raw
// margin so callers can apply their own threshold.

#include <optional>
#include <utility>
#include <variant>

#include "qchan/channel.hpp"

namespace qchan {

enum class VerdictState { Yes, No, Boundary };

std::string_view to_string(VerdictState s);

struct Verdict {
  VerdictState state;
  double margin;

  static Verdict from_margin(double margin, double tol);
};

inline constexpr double kDefaultMarginTol = 1e-9;

struct ClassificationReport {
  Verdict antidegradable;
  Verdict degradable;
  Verdict entanglement_breaking;
  bool unital = false;
  std::optional<bool> self_complementary;  // nullopt: environment is not 2-dimensional
  std::size_t choi_rank = 0;
  bool cp = false;
  double min_choi_eigenvalue = 0.0;
  double tp_residual = 0.0;
};

// margin = tr(Phi(I)^2) - [tr(C^2) - 4 sqrt(det C)]
Verdict antidegradable_test(const ChoiMatrix& c, double tol = kDefaultMarginTol);

// Rank 1: Yes. Rank 2: antidegradability of the complement (output embedded
// in a qubit). Rank >= 3: No, margin = -(third largest Choi eigenvalue).
Verdict degradable_test(const KrausSet& k, double tol = kDefaultMarginTol);

// margin = -cos(2a) cos(2b)
Verdict rank2_antidegradable(const Rank2Params& p, double tol = kDefaultMarginTol);
// margin = cos(2a) cos(2b)
Verdict rank2_degradable(const Rank2Params& p, double tol = kDefaultMarginTol);

// margin = 1 + |t|^2 - |lambda|^2; throws WrongRank for full-rank input.
Verdict rank3_antidegradable(const BlochParams& b, double tol = kDefaultMarginTol);

// 16 det C(t, lambda) as a polynomial in the Bloch parameters.
double bloch_choi_det16(const BlochParams& b);

// Squared form of the full-rank condition sqrt(D) >= s with
// D = 16 det C and s = |lambda|^2 - |t|^2 - 1. The squaring keeps the sign of
// s, so margin = D - s|s| has the same sign as sqrt(D) - s everywhere.
struct Rank4Sides {
  double lhs;  // D
  double rhs;  // s |s|
};
Rank4Sides rank4_sides(const BlochParams& b);
Verdict rank4_antidegradable(const BlochParams& b, double tol = kDefaultMarginTol);

// With nu_i = mu_i / 2 the Bell-basis Choi eigenvalues:
// margin = 2 - [sum nu^2 - 4 sqrt(prod nu)].
Verdict unital_antidegradable(const Vec3& lambda, double tol = kDefaultMarginTol);

// PPT criterion: margin = min eigenvalue of the partial transpose of C.
Verdict entanglement_breaking_test(const ChoiMatrix& c, double tol = kDefaultMarginTol);

// Matrix-exact comparison of Choi(k) and Choi(complement(k)) in the fixed
// environment basis. Throws NotApplicable unless k has exactly 2 operators.
bool self_complementary_test(const KrausSet& k, double tol = kStructureTol);

bool deg_and_antideg_rank2(const Rank2Params& p, double tol = kDefaultMarginTol);

struct DepolarizingThresholds {
  double antidegradable;
  double entanglement_breaking;
};
// Bisection of the general margins over p in [0, 1].
DepolarizingThresholds depolarizing_thresholds(double p_tol = 1e-12);

using ChannelInput = std::variant<KrausSet, ChoiMatrix, BlochParams, PauliTransfer>;

// Throws Error(NotAChannel) with the minimum Choi eigenvalue and TP residual
// in the message when the input is not CPTP.
ClassificationReport classify(const ChannelInput& channel, double tol = kDefaultMarginTol);

ChoiMatrix to_choi(const ChannelInput& channel);

}  // namespace qchan
