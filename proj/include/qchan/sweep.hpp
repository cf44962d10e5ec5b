#pragma once

// Parameter sweeps over one-parameter and two-parameter channel families.
//
// sweep_serial is the reference; sweep_parallel spreads grid points over
// OpenMP threads and must return exactly the same rows (each point is
// evaluated independently, results land in a preallocated slot).

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qchan/degradability.hpp"

namespace qchan::sweep {

enum class Family { Rank2, Depolarizing, UnitalRay };

std::string_view to_string(Family f);
std::optional<Family> family_from_string(std::string_view s);

// steps >= 2 points from min to max inclusive.
struct Axis {
  double min = 0.0;
  double max = 1.0;
  std::size_t steps = 2;

  double at(std::size_t i) const;
};

enum class Column { AntiMargin, DegMargin, EbMargin, AntiState, DegState, EbState };

std::string_view to_string(Column c);
std::optional<Column> column_from_string(std::string_view s);
const std::vector<Column>& all_columns();

struct SweepSpec {
  Family family = Family::Depolarizing;
  std::vector<Axis> axes;       // rank2: (alpha, beta); others: one axis
  Vec3 direction{1.0, 1.0, 1.0};  // UnitalRay: lambda = s * direction
  std::vector<Column> outputs = all_columns();
  double tol = kDefaultMarginTol;
};

// Throws InvalidParameter on a malformed spec.
void validate(const SweepSpec& spec);

// Parameter column names, e.g. {"alpha", "beta"}.
std::vector<std::string> parameter_names(Family f);

struct SweepRow {
  std::vector<double> params;
  bool cp = true;  // false: the point is not a channel; verdicts are absent
  Verdict anti{VerdictState::Boundary, 0.0};
  Verdict deg{VerdictState::Boundary, 0.0};
  Verdict eb{VerdictState::Boundary, 0.0};

  bool operator==(const SweepRow& o) const;
};

// Number of grid points, product of the axis step counts.
std::size_t grid_size(const SweepSpec& spec);

// Point i of the row-major grid (last axis fastest).
SweepRow evaluate_point(const SweepSpec& spec, std::size_t i);

std::vector<SweepRow> sweep_serial(const SweepSpec& spec);
std::vector<SweepRow> sweep_parallel(const SweepSpec& spec);

// Header plus one line per row; "nan" margins and "not_cp" states for
// points that are not channels. LF line endings.
void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

// Shortest decimal representation that round-trips.
std::string format_double(double x);

}  // namespace qchan::sweep
