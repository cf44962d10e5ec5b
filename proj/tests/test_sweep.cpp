#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "qchan/sweep.hpp"

using namespace qchan;
using namespace qchan::sweep;

namespace {

SweepSpec depolarizing_spec(std::size_t steps) {
  SweepSpec s;
  s.family = Family::Depolarizing;
  s.axes = {{0.0, 1.0, steps}};
  return s;
}

SweepSpec rank2_spec(std::size_t steps) {
  SweepSpec s;
  s.family = Family::Rank2;
  s.axes = {{0.0, M_PI, steps}, {0.0, M_PI, steps}};
  return s;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("axis points include both ends") {
  const Axis a{0.0, 1.0, 3};
  CHECK(a.at(0) == 0.0);
  CHECK(a.at(1) == 0.5);
  CHECK(a.at(2) == 1.0);
  const Axis b{0.0, 0.3, 7};
  CHECK(b.at(6) == 0.3);
}

TEST_CASE("spec validation") {
  auto s = depolarizing_spec(1);
  CHECK_THROWS_AS(validate(s), Error);
  s = depolarizing_spec(5);
  s.axes[0].min = 1.0;
  CHECK_THROWS_AS(validate(s), Error);
  s = rank2_spec(3);
  s.axes.pop_back();
  CHECK_THROWS_AS(validate(s), Error);
  s = depolarizing_spec(3);
  s.outputs.clear();
  CHECK_THROWS_AS(validate(s), Error);
  CHECK_NOTHROW(validate(depolarizing_spec(2)));
}

TEST_CASE("row-major order, last axis fastest") {
  const auto s = rank2_spec(3);
  const auto rows = sweep_serial(s);
  REQUIRE(rows.size() == 9);
  CHECK(rows[1].params == std::vector<double>{0.0, M_PI / 2});
  CHECK(rows[3].params == std::vector<double>{M_PI / 2, 0.0});
  CHECK(rows[8].params == std::vector<double>{M_PI, M_PI});
}

TEST_CASE("serial and parallel sweeps are identical") {
  for (const auto& spec : {rank2_spec(40), depolarizing_spec(301)}) {
    CHECK(sweep_serial(spec) == sweep_parallel(spec));
  }
  SweepSpec unital;
  unital.family = Family::UnitalRay;
  unital.axes = {{-1.0, 1.0, 101}};
  unital.direction = {1.0, 0.5, -0.25};
  CHECK(sweep_serial(unital) == sweep_parallel(unital));
}

TEST_CASE("rank-2 checkerboard") {
  const auto rows = sweep_parallel(rank2_spec(100));
  for (const auto& r : rows) {
    const double product = std::cos(2 * r.params[0]) * std::cos(2 * r.params[1]);
    if (std::abs(product) <= 1e-6) continue;
    CHECK((r.anti.margin > 0) == (product < 0));
    CHECK((r.deg.margin > 0) == (product > 0));
  }
}

TEST_CASE("depolarizing thresholds in the sweep") {
  const std::size_t n = 1001;
  const auto rows = sweep_parallel(depolarizing_spec(n));
  std::size_t anti_flip = n, eb_flip = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (anti_flip == n && rows[i].anti.state == VerdictState::Yes) anti_flip = i;
    if (eb_flip == n && rows[i].eb.state == VerdictState::Yes) eb_flip = i;
  }
  const double step = 1.0 / (n - 1);
  CHECK(std::abs(rows[anti_flip].params[0] - 1.0 / 3) <= step);
  CHECK(std::abs(rows[eb_flip].params[0] - 2.0 / 3) <= step);
  for (std::size_t i = 0; i < anti_flip; ++i) CHECK(rows[i].anti.state != VerdictState::Yes);
}

TEST_CASE("unital ray crosses out of the CP tetrahedron") {
  SweepSpec s;
  s.family = Family::UnitalRay;
  s.axes = {{0.0, 1.5, 4}};  // s = 0, 0.5, 1, 1.5 along (1, 1, 1)
  const auto rows = sweep_serial(s);
  CHECK(rows[0].cp);
  CHECK(rows[2].cp);
  CHECK_FALSE(rows[3].cp);
  CHECK(std::isnan(rows[3].anti.margin));

  std::ostringstream out;
  write_csv(out, s, rows);
  const std::string text = out.str();
  CHECK(text.find("1.5,nan,nan,nan,not_cp,not_cp,not_cp\n") != std::string::npos);
}

TEST_CASE("CSV layout") {
  const auto s = depolarizing_spec(2);
  std::ostringstream out;
  write_csv(out, s, sweep_serial(s));
  const std::string text = out.str();
  CHECK(count_lines(text) == 3);
  CHECK(text.rfind("p,anti_margin,deg_margin,eb_margin,anti_state,deg_state,eb_state\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);

  auto narrow = rank2_spec(2);
  narrow.outputs = {Column::AntiState};
  std::ostringstream out2;
  write_csv(out2, narrow, sweep_serial(narrow));
  CHECK(out2.str() == "alpha,beta,anti_state\n0,0,no\n0,3.141592653589793,no\n3.141592653589793,0,no\n"
                      "3.141592653589793,3.141592653589793,no\n");
}

TEST_CASE("shortest float formatting round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3) == "0.3333333333333333");
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(std::nan("")) == "nan");
  for (double x : {1e-300, 123456.789, -7.25e-12, M_PI}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("CSV states reproduce classify") {
  const auto s = rank2_spec(15);
  for (const auto& r : sweep_serial(s)) {
    const auto rep = classify(channels::rank2(r.params[0], r.params[1]), s.tol);
    CHECK(rep.antidegradable.state == r.anti.state);
    CHECK(rep.degradable.state == r.deg.state);
    CHECK(rep.entanglement_breaking.state == r.eb.state);
  }
}
