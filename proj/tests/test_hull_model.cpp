#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lah/hull_model.hpp"

using lah::FaceQuery;
using lah::Ratio;

TEST_CASE("expected face numbers: closed values") {
  // Three points in the plane are all vertices.
  CHECK(lah::expected_faces({2, 2, 1}) == 3);
  // E f_0 of the hull of 11 planar points is 2 H_10.
  CHECK(lah::expected_faces({10, 2, 1}) == Ratio(7381, 1260));
  // Row-6 Stirling numbers: 2(225 + 120)/120.
  CHECK(lah::expected_faces({5, 3, 1}) == Ratio(23, 4));
  // The hull of d+1 points is a simplex: every k-subset spans a face.
  for (int k = 1; k <= 4; ++k)
    CHECK(lah::expected_faces({4, 4, k}) == lah::binomial(5, k));
  CHECK_THROWS_AS(FaceQuery(3, 4, 5), std::domain_error);
}

TEST_CASE("face-number identities at d = 2 and d = 3, exact for n <= 40") {
  for (long n = 3; n <= 40; ++n) {
    CHECK(lah::expected_faces({n, 2, 1}) == lah::expected_faces({n, 2, 2}));
  }
  for (long n = 3; n <= 40; ++n) {
    const Ratio f0 = lah::expected_faces({n, 3, 1});
    const Ratio f1 = lah::expected_faces({n, 3, 2});
    const Ratio f2 = lah::expected_faces({n, 3, 3});
    CHECK(f0 - f1 + f2 == 2);       // Euler in expectation
    CHECK(2 * f1 == 3 * f2);        // simplicial relation
    CHECK(f0 >= 0);
    CHECK(f0 <= lah::binomial(n + 1, 1));
  }
}

TEST_CASE("neighborliness defect") {
  // Four general-position points in R^3 form a simplex: defect 0.
  CHECK(lah::neighborliness_defect({4, 3, 1}) == 0);
  // binom(4,1) - 2 H_3 = 1/3 for the hull of four planar points.
  CHECK(lah::neighborliness_defect({4, 2, 1}) == Ratio(1, 3));
  // Complement identity: defect(n,d,k) + E f_{k-1}(C_{n-1,d}) = binom(n,k).
  for (long n = 4; n <= 16; ++n) {
    for (int d = 2; d <= 5 && d < n; ++d) {
      for (int k = 1; k <= d; ++k) {
        CHECK(lah::neighborliness_defect({n, d, k}) +
                  lah::expected_faces({n - 1, d, k}) ==
              lah::binomial(n, k));
      }
    }
  }
}

TEST_CASE("weak threshold") {
  CHECK(lah::weak_threshold_rho(0.5) == Catch::Approx(0.5693).margin(5e-4));
  // Continuity toward 1: h^{-1}(1) = 1.
  CHECK(lah::weak_threshold_rho(0.999999) == Catch::Approx(1.0).margin(1e-4));
  // Small delta: rho_weak ~ 1/|log delta|.
  const double small = lah::weak_threshold_rho(0.01);
  const double reference = 1.0 / std::abs(std::log(0.01));
  CHECK(small / reference > 1.0 / 1.5);
  CHECK(small / reference < 1.5);
  CHECK_THROWS_AS(lah::weak_threshold_rho(0.0), std::domain_error);
  CHECK_THROWS_AS(lah::weak_threshold_rho(1.0), std::domain_error);
}

TEST_CASE("strong threshold") {
  const double rho = lah::strong_threshold_rho(0.5);
  CHECK(rho == Catch::Approx(0.1498).margin(5e-4));
  // The returned rho satisfies the implicit equation to 1e-10.
  const double residual =
      lah::detail::strong_threshold_lhs(rho) - lah::detail::strong_threshold_rhs(0.5);
  CHECK(std::abs(residual) < 1e-10);
  // Ordering 0 < rho_strong < rho_weak < 1 across the delta grid.
  for (double delta = 0.1; delta < 0.95; delta += 0.1) {
    const auto point = lah::threshold_point(delta);
    CHECK(point.rho_strong > 0.0);
    CHECK(point.rho_strong < point.rho_weak);
    CHECK(point.rho_weak < 1.0);
  }
}

TEST_CASE("constant-k regime report") {
  // Well below the critical ratio: n = e^{0.5 d/k} at d = 60, k = 2.
  const long n_low = static_cast<long>(std::llround(std::exp(0.5 * 60 / 2.0)));
  const auto low = lah::constant_k_regime_report(60, 2, n_low);
  CHECK(low.gamma_hat < low.inv_k);
  CHECK(low.face_ratio > 0.99);
  // Well above: n = e^{2 d/k} at d = 40, k = 2.
  const long n_high = static_cast<long>(std::llround(std::exp(2.0 * 40 / 2.0)));
  const auto high = lah::constant_k_regime_report(40, 2, n_high);
  CHECK(high.gamma_hat > high.inv_k);
  CHECK(high.face_ratio < 0.05);
  // Centered window: log n = d/k puts c at 0 and the Gaussian limit at 1/2.
  const long n_mid = static_cast<long>(std::llround(std::exp(40 / 2.0)));
  const auto centered = lah::constant_k_regime_report(40, 2, n_mid);
  CHECK(std::abs(centered.window_c) < 1e-6);
  CHECK(centered.gaussian_limit == Catch::Approx(0.5).margin(1e-6));
  CHECK(centered.classification == "critical-window");
  CHECK_THROWS_AS(lah::constant_k_regime_report(5, 2, 4), std::domain_error);
}

TEST_CASE("monotonicity conjecture sweep") {
  const auto report = lah::check_monotonicity_conjecture(10, 30);
  CHECK(report.ok);
  CHECK(!report.counterexample.has_value());
  // Directions were recorded for every (d,k) pair.
  CHECK(report.directions.size() == 10 * 11 / 2);
}
