#include "qchan/degradability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qchan {

std::string_view to_string(VerdictState s) {
  switch (s) {
    case VerdictState::Yes: return "yes";
    case VerdictState::No: return "no";
    case VerdictState::Boundary: return "boundary";
  }
  return "unknown";
}

Verdict Verdict::from_margin(double margin, double tol) {
  if (margin > tol) return {VerdictState::Yes, margin};
  if (margin < -tol) return {VerdictState::No, margin};
  return {VerdictState::Boundary, margin};
}

namespace {

void require_qubit_output(const ChoiMatrix& c) {
  if (c.output_dim() != 2) throw Error(ErrorKind::InvalidDimension, "qubit output required");
}

double psd_scale(const ComplexMatrix& m) { return std::max(1.0, m.frobenius_norm()); }

void require_cp(const std::vector<double>& ev, double floor) {
  if (ev.front() < -floor) {
    throw Error(ErrorKind::NotCompletelyPositive,
                "min Choi eigenvalue " + std::to_string(ev.front()));
  }
}

double norm2(const Vec3& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }

std::size_t rank_from_spectrum(const std::vector<double>& ev, double cut) {
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double x) { return x > cut; }));
}

// Reduce to as many Kraus operators as the Choi rank.
KrausSet minimal_kraus(const KrausSet& k, const ChoiMatrix& c, std::size_t rank, double tol) {
  if (k.size() == rank) return k;
  return kraus_from_choi(c, tol);
}

// Complement of a qubit channel with at most two Kraus operators, with the
// environment embedded in C^2 (zero-padded) so the two-qubit criterion applies.
ChoiMatrix embedded_complement_choi(const KrausSet& k) {
  const KrausSet comp = complement(k);
  if (comp.output_dim() == 2) return choi_from_kraus(comp);
  std::vector<ComplexMatrix> padded;
  for (const auto& op : comp.operators()) {
    ComplexMatrix p(2, 2);
    for (std::size_t r = 0; r < op.rows(); ++r)
      for (std::size_t x = 0; x < 2; ++x) p(r, x) = op(r, x);
    padded.push_back(std::move(p));
  }
  return choi_from_kraus(KrausSet(std::move(padded), std::max(kStructureTol, 2.0 * comp.tp_residual())));
}

}  // namespace

Verdict antidegradable_test(const ChoiMatrix& c, double tol) {
  require_qubit_output(c);
  const ComplexMatrix& m = c.matrix();
  const double scale = psd_scale(m);
  const auto ev = eigenvalues(m);
  require_cp(ev, tol * scale);

  double det = 1.0;
  for (double x : ev) det *= (std::abs(x) <= tol * scale) ? 0.0 : x;

  const double marginal_purity = std::pow(phi_of_identity(c).frobenius_norm(), 2);
  const double purity = std::pow(m.frobenius_norm(), 2);
  const double margin = marginal_purity - (purity - 4.0 * std::sqrt(std::max(det, 0.0)));
  return Verdict::from_margin(margin, tol);
}

Verdict degradable_test(const KrausSet& k, double tol) {
  const ChoiMatrix c = choi_from_kraus(k);
  require_qubit_output(c);
  const auto ev = eigenvalues(c.matrix());
  require_cp(ev, tol * psd_scale(c.matrix()));
  const std::size_t rank = rank_from_spectrum(ev, tol * c.matrix().trace().real());

  if (rank >= 3) {
    // Degradable qubit channels have an environment of dimension <= 2.
    return Verdict::from_margin(-ev[ev.size() - 3], tol);
  }
  const KrausSet minimal = minimal_kraus(k, c, rank, tol);
  return antidegradable_test(embedded_complement_choi(minimal), tol);
}

Verdict rank2_antidegradable(const Rank2Params& p, double tol) {
  return Verdict::from_margin(-std::cos(2 * p.alpha) * std::cos(2 * p.beta), tol);
}

Verdict rank2_degradable(const Rank2Params& p, double tol) {
  return Verdict::from_margin(std::cos(2 * p.alpha) * std::cos(2 * p.beta), tol);
}

Verdict rank3_antidegradable(const BlochParams& b, double tol) {
  const ChoiMatrix c = choi_from_bloch(b);
  // The det term vanishes for every rank below 4, not only at rank 3.
  if (const std::size_t r = choi_rank(c, tol); r > 3) {
    throw Error(ErrorKind::WrongRank, "expected Choi rank at most 3, got " + std::to_string(r));
  }
  return Verdict::from_margin(1.0 + norm2(b.t) - norm2(b.lambda), tol);
}

double bloch_choi_det16(const BlochParams& b) {
  const auto& l = b.lambda;
  const auto& t = b.t;
  const double t2 = norm2(t);
  double d = (1.0 - t2) * (1.0 - t2) + 8.0 * l[0] * l[1] * l[2];
  for (int i = 0; i < 3; ++i) {
    const double li = l[i] * l[i];
    d += li * li - 2.0 * li;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      const double lj = l[j] * l[j];
      // lambda_i^2 t_j^2 enters with +2 off the diagonal, -2 on it.
      d += 2.0 * li * t[j] * t[j];
      if (j > i) d -= 2.0 * li * lj;
    }
    d -= 2.0 * li * t[i] * t[i];
  }
  return d;
}

Rank4Sides rank4_sides(const BlochParams& b) {
  const double s = norm2(b.lambda) - norm2(b.t) - 1.0;
  return {bloch_choi_det16(b), s * std::abs(s)};
}

Verdict rank4_antidegradable(const BlochParams& b, double tol) {
  const ChoiMatrix c = choi_from_bloch(b);
  require_cp(eigenvalues(c.matrix()), tol * psd_scale(c.matrix()));
  const auto [lhs, rhs] = rank4_sides(b);
  return Verdict::from_margin(lhs - rhs, tol);
}

Verdict unital_antidegradable(const Vec3& lambda, double tol) {
  const auto& [l1, l2, l3] = lambda;
  std::array<double, 4> nu{0.5 * (1 + l1 + l2 + l3), 0.5 * (1 + l1 - l2 - l3),
                           0.5 * (1 - l1 + l2 - l3), 0.5 * (1 - l1 - l2 + l3)};
  double sum_sq = 0.0, prod = 1.0;
  for (double& x : nu) {
    if (x < -tol) {
      throw Error(ErrorKind::NotCompletelyPositive, "lambda lies outside the CP tetrahedron");
    }
    if (std::abs(x) <= tol) x = 0.0;
    sum_sq += x * x;
    prod *= x;
  }
  return Verdict::from_margin(2.0 - (sum_sq - 4.0 * std::sqrt(prod)), tol);
}

Verdict entanglement_breaking_test(const ChoiMatrix& c, double tol) {
  require_qubit_output(c);
  const ComplexMatrix pt = partial_transpose(c.matrix(), 2, 2, Factor::Second);
  return Verdict::from_margin(eigenvalues(pt).front(), tol);
}

bool self_complementary_test(const KrausSet& k, double tol) {
  if (k.size() != 2 || k.output_dim() != 2) {
    throw Error(ErrorKind::NotApplicable,
                "self-complementarity needs a 2-dimensional environment, have " +
                    std::to_string(k.size()));
  }
  const ChoiMatrix own = choi_from_kraus(k);
  const ChoiMatrix comp = choi_from_kraus(complement(k));
  return distance(own.matrix(), comp.matrix()) <= tol;
}

bool deg_and_antideg_rank2(const Rank2Params& p, double tol) {
  return std::abs(std::cos(2 * p.alpha) * std::cos(2 * p.beta)) <= tol;
}

namespace {

template <class Margin>
double bisect_root(Margin&& margin, double p_tol) {
  double lo = 0.0, hi = 1.0;
  double mlo = margin(lo), mhi = margin(hi);
  if (!(mlo < 0.0 && mhi > 0.0)) {
    throw Error(ErrorKind::NumericalFailure, "margin does not change sign on [0, 1]");
  }
  for (int it = 0; it < 200; ++it) {
    if (hi - lo <= p_tol) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    (margin(mid) < 0.0 ? lo : hi) = mid;
  }
  throw Error(ErrorKind::NumericalFailure, "bisection did not converge");
}

}  // namespace

DepolarizingThresholds depolarizing_thresholds(double p_tol) {
  auto choi = [](double p) { return choi_from_kraus(channels::depolarizing(p)); };
  const double anti = bisect_root([&](double p) { return antidegradable_test(choi(p)).margin; }, p_tol);
  const double eb =
      bisect_root([&](double p) { return entanglement_breaking_test(choi(p)).margin; }, p_tol);
  return {anti, eb};
}

ChoiMatrix to_choi(const ChannelInput& channel) {
  return std::visit(
      [](const auto& ch) -> ChoiMatrix {
        using T = std::decay_t<decltype(ch)>;
        if constexpr (std::is_same_v<T, KrausSet>) {
          return choi_from_kraus(ch);
        } else if constexpr (std::is_same_v<T, ChoiMatrix>) {
          return ch;
        } else if constexpr (std::is_same_v<T, BlochParams>) {
          return choi_from_bloch(ch);
        } else {
          return choi_from_pauli_transfer(ch);
        }
      },
      channel);
}

ClassificationReport classify(const ChannelInput& channel, double tol) {
  const ChoiMatrix c = to_choi(channel);
  require_qubit_output(c);

  ClassificationReport rep;
  const auto ev = eigenvalues(c.matrix());
  rep.min_choi_eigenvalue = ev.front();
  rep.tp_residual = c.tp_residual();
  rep.cp = ev.front() >= -tol * psd_scale(c.matrix());
  if (!rep.cp) {
    std::ostringstream msg;
    msg << "not completely positive: min Choi eigenvalue " << rep.min_choi_eigenvalue
        << ", TP residual " << rep.tp_residual;
    throw Error(ErrorKind::NotAChannel, msg.str());
  }
  rep.choi_rank = rank_from_spectrum(ev, tol * c.matrix().trace().real());

  const KrausSet given = std::holds_alternative<KrausSet>(channel) ? std::get<KrausSet>(channel)
                                                                  : kraus_from_choi(c, tol);
  const KrausSet minimal = minimal_kraus(given, c, rep.choi_rank, tol);

  rep.antidegradable = antidegradable_test(c, tol);
  rep.degradable = degradable_test(minimal, tol);
  rep.entanglement_breaking = entanglement_breaking_test(c, tol);
  rep.unital = distance(phi_of_identity(c), ComplexMatrix::identity(2)) <= tol;
  if (minimal.size() == 2) rep.self_complementary = self_complementary_test(minimal, tol);
  return rep;
}

}  // namespace qchan
