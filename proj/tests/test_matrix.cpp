#include <catch_amalgamated.hpp>

#include <cmath>

#include "qchan/matrix.hpp"
#include "random_channels.hpp"

using namespace qchan;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const Complex I{0.0, 1.0};

ComplexMatrix depolarizing_choi(double p) {
  // Closed form written out entry by entry.
  return {{1 - p / 2, 0, 0, 1 - p}, {0, p / 2, 0, 0}, {0, 0, p / 2, 0}, {1 - p, 0, 0, 1 - p / 2}};
}

// Direct index-level partial trace, independent of the library routine.
ComplexMatrix naive_trace_first(const ComplexMatrix& m, std::size_t da, std::size_t db) {
  ComplexMatrix out(db, db);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t a = 0; a < da; ++a) out(i, j) += m(a * db + i, a * db + j);
  return out;
}

}  // namespace

TEST_CASE("construction rejects empty and non-finite input") {
  CHECK_THROWS_AS(ComplexMatrix(0, 3), Error);
  CHECK_THROWS_AS(ComplexMatrix(2, 0), Error);
  CHECK_THROWS_AS(ComplexMatrix(1, 2, {Complex{1.0}}), Error);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex{std::nan(""), 0.0}}), Error);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex{0.0, INFINITY}}), Error);
  try {
    ComplexMatrix(0, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDimension);
  }
}

TEST_CASE("products and adjoints") {
  const ComplexMatrix a{{1, I}, {2, 3}};
  const ComplexMatrix b{{0, 1}, {1, 0}};
  CHECK(a * b == ComplexMatrix{{I, 1}, {3, 2}});
  CHECK(a.adjoint() == ComplexMatrix{{1, 2}, {-I, 3}});
  CHECK(a.transpose() == ComplexMatrix{{1, 2}, {I, 3}});
  CHECK(a.trace() == Complex{4.0});
  CHECK_THAT(a.frobenius_norm(), WithinAbs(std::sqrt(15.0), 1e-15));
  CHECK_THROWS_AS(a * ComplexMatrix(3, 1), Error);
  CHECK_THROWS_AS(a + ComplexMatrix(3, 3), Error);
}

TEST_CASE("kron") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));

  const double d12[] = {1, 2}, d34[] = {3, 4}, expect[] = {3, 4, 6, 8};
  CHECK(kron(ComplexMatrix::diagonal(d12), ComplexMatrix::diagonal(d34)) ==
        ComplexMatrix::diagonal(expect));

  // sigma_x (x) sigma_x maps e0 (x) e0 to e1 (x) e1
  const ComplexMatrix xx = kron(pauli(1), pauli(1));
  const Complex e00[] = {1, 0, 0, 0}, e11[] = {0, 0, 0, 1};
  CHECK(xx * ComplexMatrix::column(e00) == ComplexMatrix::column(e11));

  testing::Rng rng(11);
  const auto a = testing::random_matrix(rng, 2, 3), b = testing::random_matrix(rng, 3, 2);
  const auto k = kron(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 2; ++q) CHECK(k(i * 3 + p, j * 2 + q) == a(i, j) * b(p, q));
}

TEST_CASE("vec stacks columns") {
  const Complex v1[] = {1, 3, 2, 4};
  CHECK(vec(ComplexMatrix{{1, 2}, {3, 4}}) == ComplexMatrix::column(v1));
  const Complex v2[] = {1, 0, 0, 1};
  CHECK(vec(ComplexMatrix::identity(2)) == ComplexMatrix::column(v2));

  const ComplexMatrix m{{1, 2, 3}, {4, 5, 6}};
  CHECK(unvec(vec(m), 2, 3) == m);
  CHECK_THROWS_AS(unvec(vec(m), 4, 2), Error);
}

TEST_CASE("vec(UKV) = (V^T kron U) vec(K) on random triples") {
  testing::Rng rng(12);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const auto u = testing::random_matrix(rng, 2, 2), k = testing::random_matrix(rng, 2, 2),
               v = testing::random_matrix(rng, 2, 2);
    worst = std::max(worst, distance(vec(u * k * v), kron(v.transpose(), u) * vec(k)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("partial trace") {
  testing::Rng rng(13);
  const auto a = testing::random_matrix(rng, 2, 2), b = testing::random_matrix(rng, 2, 2);
  CHECK(distance(partial_trace(kron(a, b), 2, 2, Factor::Second), a * b.trace()) <= 1e-13);
  CHECK(distance(partial_trace(kron(a, b), 2, 2, Factor::First), b * a.trace()) <= 1e-13);

  const auto v = vec(ComplexMatrix::identity(2));
  CHECK(partial_trace(v * v.adjoint(), 2, 2, Factor::First) == ComplexMatrix::identity(2));

  // Unequal factors against an index-level reference.
  const auto m = testing::random_matrix(rng, 6, 6);
  CHECK(distance(partial_trace(m, 3, 2, Factor::First), naive_trace_first(m, 3, 2)) <= 1e-13);
  CHECK(std::abs(partial_trace(m, 3, 2, Factor::Second).trace() - m.trace()) <= 1e-13);

  CHECK_THROWS_AS(partial_trace(m, 2, 2, Factor::First), Error);
}

TEST_CASE("partial trace is unitarily covariant on the kept factor") {
  testing::Rng rng(14);
  double worst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const auto m = testing::random_hermitian(rng, 4);
    const auto u = testing::random_unitary(rng, 2), v = testing::random_unitary(rng, 2);
    const auto w = kron(v.transpose(), u);
    const auto lhs = partial_trace(w * m * w.adjoint(), 2, 2, Factor::First);
    const auto rhs = u * partial_trace(m, 2, 2, Factor::First) * u.adjoint();
    worst = std::max(worst, distance(lhs, rhs));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("partial transpose") {
  testing::Rng rng(15);
  const auto a = testing::random_matrix(rng, 2, 2), b = testing::random_matrix(rng, 2, 2);
  CHECK(partial_transpose(kron(a, b), 2, 2, Factor::Second) == kron(a, b.transpose()));
  CHECK(partial_transpose(kron(a, b), 2, 2, Factor::First) == kron(a.transpose(), b));

  const auto v = vec(ComplexMatrix::identity(2));
  const auto ev = eigenvalues(partial_transpose(v * v.adjoint(), 2, 2, Factor::Second));
  CHECK_THAT(ev[0], WithinAbs(-1.0, 1e-13));
  for (int i = 1; i < 4; ++i) CHECK_THAT(ev[i], WithinAbs(1.0, 1e-13));

  for (int n = 0; n < 50; ++n) {
    const auto m = testing::random_matrix(rng, 6, 6);
    for (Factor f : {Factor::First, Factor::Second}) {
      CHECK(partial_transpose(partial_transpose(m, 2, 3, f), 2, 3, f) == m);
    }
    const auto h = testing::random_hermitian(rng, 4);
    CHECK(hermiticity_residual(partial_transpose(h, 2, 2, Factor::Second)) <= 1e-15);
  }
  CHECK_THROWS_AS(partial_transpose(ComplexMatrix(5, 5), 2, 2, Factor::First), Error);
}

TEST_CASE("hermitian_eigen small cases") {
  const double d[] = {3, 1, 2};
  const auto e = hermitian_eigen(ComplexMatrix::diagonal(d));
  CHECK(e.eigenvalues == std::vector<double>{1, 2, 3});

  const auto x = eigenvalues(pauli(1));
  CHECK_THAT(x[0], WithinAbs(-1.0, 1e-15));
  CHECK_THAT(x[1], WithinAbs(1.0, 1e-15));

  const auto dep = eigenvalues(depolarizing_choi(1.0 / 3.0));
  CHECK_THAT(dep[0], WithinAbs(1.0 / 6, 1e-14));
  CHECK_THAT(dep[1], WithinAbs(1.0 / 6, 1e-14));
  CHECK_THAT(dep[2], WithinAbs(1.0 / 6, 1e-14));
  CHECK_THAT(dep[3], WithinAbs(1.5, 1e-14));

  CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix{{1, 2}, {0, 1}}), Error);
  CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix(2, 3)), Error);
  try {
    hermitian_eigen(ComplexMatrix{{0, I}, {I, 0}});
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
}

TEST_CASE("hermitian_eigen agrees with an independent solver") {
  testing::Rng rng(16);
  for (std::size_t n : {1u, 2u, 3u, 4u, 8u}) {
    for (int rep = 0; rep < 100; ++rep) {
      const auto m = testing::random_hermitian(rng, n);
      const auto e = hermitian_eigen(m);
      const auto ref = testing::oracle_eigenvalues(m);
      const double scale = m.frobenius_norm();
      for (std::size_t i = 0; i < n; ++i) CHECK_THAT(e.eigenvalues[i], WithinAbs(ref[i], 1e-12 * scale));

      // residual, unitarity, reconstruction
      for (std::size_t i = 0; i < n; ++i) {
        ComplexMatrix v(n, 1);
        for (std::size_t r = 0; r < n; ++r) v(r, 0) = e.eigenvectors(r, i);
        CHECK(distance(m * v, v * Complex{e.eigenvalues[i]}) <= 1e-10 * scale);
      }
      CHECK(distance(e.eigenvectors.adjoint() * e.eigenvectors, ComplexMatrix::identity(n)) <= 1e-10);
      CHECK(distance(reconstruct(e.eigenvectors, e.eigenvalues), m) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("hermitian_eigen on degenerate spectra") {
  testing::Rng rng(17);
  const auto u = testing::random_unitary(rng, 4);
  const double vals[] = {0.5, 0.5, 0.5, 2.0};
  const auto m = u * ComplexMatrix::diagonal(vals) * u.adjoint();
  const auto e = hermitian_eigen(m);
  for (int i = 0; i < 4; ++i) CHECK_THAT(e.eigenvalues[i], WithinAbs(vals[i], 1e-13));
  CHECK(distance(reconstruct(e.eigenvectors, e.eigenvalues), m) <= 1e-12);
}

TEST_CASE("det_psd") {
  CHECK(det_psd(ComplexMatrix::identity(4)) == 1.0);
  const auto v = vec(ComplexMatrix::identity(2));
  CHECK(det_psd(v * v.adjoint()) == 0.0);
  CHECK_THAT(det_psd(depolarizing_choi(1.0 / 3.0)), WithinRel(1.0 / 144, 1e-12));

  const double neg[] = {1.0, -0.5};
  CHECK_THROWS_AS(det_psd(ComplexMatrix::diagonal(neg)), Error);
  const double tiny[] = {2.0, -1e-12};
  CHECK(det_psd(ComplexMatrix::diagonal(tiny)) == 0.0);

  testing::Rng rng(18);
  for (int n = 0; n < 100; ++n) {
    const auto g = testing::random_matrix(rng, 4, 4);
    const auto m = g * g.adjoint() + ComplexMatrix::identity(4) * Complex{0.1};
    double prod = 1.0;
    for (double x : testing::oracle_eigenvalues(m)) prod *= x;
    CHECK_THAT(det_psd(m), WithinRel(prod, 1e-10));
  }
}

TEST_CASE("psd_check") {
  CHECK(psd_check(ComplexMatrix::identity(2)));
  const double neg[] = {1.0, -0.5};
  CHECK_FALSE(psd_check(ComplexMatrix::diagonal(neg)));

  // Bloch Choi for lambda = (1, 1, -1), t = 0, built from its Bell-basis
  // diagonal mu / 2 = (1, 1, 1, -1).
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix f{{r, 0, 0, r}, {0, r, r, 0}, {0, r, -r, 0}, {r, 0, 0, -r}};
  const double mu_half[] = {1, 1, 1, -1};
  const ComplexMatrix bad = f.adjoint() * ComplexMatrix::diagonal(mu_half) * f;
  CHECK_FALSE(psd_check(bad));
  CHECK_THAT(eigenvalues(bad).front(), WithinAbs(-1.0, 1e-14));
  CHECK_THROWS_AS(psd_check(ComplexMatrix{{1, 1}, {0, 1}}), Error);
}

TEST_CASE("pauli matrices") {
  for (int i = 1; i <= 3; ++i) {
    CHECK(pauli(i) * pauli(i) == ComplexMatrix::identity(2));
    CHECK(pauli(i).trace() == Complex{0.0});
  }
  CHECK(pauli(1) * pauli(2) == pauli(3) * I);
  CHECK(pauli(0) == ComplexMatrix::identity(2));
}
