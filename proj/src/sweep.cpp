#include "qchan/sweep.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <ostream>

namespace qchan::sweep {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Rank2: return "rank2";
    case Family::Depolarizing: return "depolarizing";
    case Family::UnitalRay: return "unital";
  }
  return "unknown";
}

std::optional<Family> family_from_string(std::string_view s) {
  for (Family f : {Family::Rank2, Family::Depolarizing, Family::UnitalRay}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

double Axis::at(std::size_t i) const {
  if (i + 1 == steps) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::string_view to_string(Column c) {
  switch (c) {
    case Column::AntiMargin: return "anti_margin";
    case Column::DegMargin: return "deg_margin";
    case Column::EbMargin: return "eb_margin";
    case Column::AntiState: return "anti_state";
    case Column::DegState: return "deg_state";
    case Column::EbState: return "eb_state";
  }
  return "unknown";
}

const std::vector<Column>& all_columns() {
  static const std::vector<Column> cols{Column::AntiMargin, Column::DegMargin, Column::EbMargin,
                                        Column::AntiState,  Column::DegState,  Column::EbState};
  return cols;
}

std::optional<Column> column_from_string(std::string_view s) {
  for (Column c : all_columns()) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::vector<std::string> parameter_names(Family f) {
  switch (f) {
    case Family::Rank2: return {"alpha", "beta"};
    case Family::Depolarizing: return {"p"};
    case Family::UnitalRay: return {"s"};
  }
  return {};
}

void validate(const SweepSpec& spec) {
  const std::size_t want = spec.family == Family::Rank2 ? 2 : 1;
  if (spec.axes.size() != want) {
    throw Error(ErrorKind::InvalidParameter, std::string(to_string(spec.family)) + " sweep needs " +
                                                 std::to_string(want) + " axes");
  }
  for (const Axis& a : spec.axes) {
    if (a.steps < 2) throw Error(ErrorKind::InvalidParameter, "axis needs at least 2 steps");
    if (!(a.min < a.max)) throw Error(ErrorKind::InvalidParameter, "axis needs min < max");
  }
  if (spec.outputs.empty()) throw Error(ErrorKind::InvalidParameter, "no output columns selected");
  if (!(spec.tol >= 0.0)) throw Error(ErrorKind::InvalidParameter, "tolerance must be >= 0");
}

bool SweepRow::operator==(const SweepRow& o) const {
  auto same = [](const Verdict& a, const Verdict& b) {
    return a.state == b.state && (a.margin == b.margin || (std::isnan(a.margin) && std::isnan(b.margin)));
  };
  return params == o.params && cp == o.cp && same(anti, o.anti) && same(deg, o.deg) && same(eb, o.eb);
}

std::size_t grid_size(const SweepSpec& spec) {
  std::size_t n = 1;
  for (const Axis& a : spec.axes) n *= a.steps;
  return n;
}

namespace {

bool is_channel_failure(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAChannel:
    case ErrorKind::NotCompletelyPositive:
    case ErrorKind::NotTracePreserving:
    case ErrorKind::NotPSD:
      return true;
    default:
      return false;
  }
}

ChannelInput make_channel(const SweepSpec& spec, const std::vector<double>& x) {
  switch (spec.family) {
    case Family::Rank2: return channels::rank2(x[0], x[1]);
    case Family::Depolarizing: return channels::depolarizing(x[0]);
    case Family::UnitalRay: {
      const Vec3& d = spec.direction;
      return channels::unital({x[0] * d[0], x[0] * d[1], x[0] * d[2]});
    }
  }
  throw Error(ErrorKind::InvalidParameter, "unknown family");
}

}  // namespace

SweepRow evaluate_point(const SweepSpec& spec, std::size_t i) {
  SweepRow row;
  row.params.resize(spec.axes.size());
  for (std::size_t a = spec.axes.size(); a-- > 0;) {
    const Axis& axis = spec.axes[a];
    row.params[a] = axis.at(i % axis.steps);
    i /= axis.steps;
  }
  try {
    const ClassificationReport rep = classify(make_channel(spec, row.params), spec.tol);
    row.anti = rep.antidegradable;
    row.deg = rep.degradable;
    row.eb = rep.entanglement_breaking;
  } catch (const Error& e) {
    if (!is_channel_failure(e.kind())) throw;
    const double nan = std::nan("");
    row.cp = false;
    row.anti = row.deg = row.eb = Verdict{VerdictState::Boundary, nan};
  }
  return row;
}

std::vector<SweepRow> sweep_serial(const SweepSpec& spec) {
  validate(spec);
  const std::size_t n = grid_size(spec);
  std::vector<SweepRow> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rows.push_back(evaluate_point(spec, i));
  return rows;
}

std::vector<SweepRow> sweep_parallel(const SweepSpec& spec) {
  validate(spec);
  const auto n = static_cast<std::ptrdiff_t>(grid_size(spec));
  std::vector<SweepRow> rows(static_cast<std::size_t>(n));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = evaluate_point(spec, static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const auto names = parameter_names(spec.family);
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  for (Column c : spec.outputs) out << ',' << to_string(c);
  out << '\n';

  auto state = [](const SweepRow& r, const Verdict& v) -> std::string_view {
    return r.cp ? to_string(v.state) : "not_cp";
  };
  for (const SweepRow& r : rows) {
    for (std::size_t i = 0; i < r.params.size(); ++i) out << (i ? "," : "") << format_double(r.params[i]);
    for (Column c : spec.outputs) {
      out << ',';
      switch (c) {
        case Column::AntiMargin: out << format_double(r.anti.margin); break;
        case Column::DegMargin: out << format_double(r.deg.margin); break;
        case Column::EbMargin: out << format_double(r.eb.margin); break;
        case Column::AntiState: out << state(r, r.anti); break;
        case Column::DegState: out << state(r, r.deg); break;
        case Column::EbState: out << state(r, r.eb); break;
      }
    }
    out << '\n';
  }
}

}  // namespace qchan::sweep
