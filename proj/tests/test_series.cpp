#include <catch2/catch_amalgamated.hpp>

#include "lah/combinatorics.hpp"
#include "lah/series.hpp"

using lah::Ratio;

TEST_CASE("series coefficient basics") {
  // (1-x)^{-1} - 1 has all coefficients 1.
  for (int n = 1; n <= 6; ++n) CHECK(lah::series_coefficient(1, Ratio(1), n) == 1);
  // k=2 coefficient identity: (2!/4!) * 36 -> 3.
  CHECK(lah::series_coefficient(2, Ratio(1), 4) == 3);
  // ((1-x)^1 - 1)^2 = x^2, so the x^4 coefficient vanishes.
  CHECK(lah::series_coefficient(2, Ratio(-1), 4) == 0);
  CHECK(lah::series_coefficient(2, Ratio(-1), 2) == 1);
  // Coefficient vanishes (not an error) below the diagonal.
  CHECK(lah::series_coefficient(3, Ratio(2), 2) == 0);
  CHECK_THROWS_AS(lah::series_coefficient(0, Ratio(1), 3), std::domain_error);
}

TEST_CASE("generating-function identity against the Stirling product") {
  // n!/k! [x^n]((1-x)^{-t}-1)^k = sum_j s(n,j) S(j,k) t^j, exact in the
  // rationals, checked for n <= 15 and several rational t.
  const Ratio ts[] = {Ratio(1), Ratio(2), Ratio(1, 2), Ratio(-1)};
  for (int n = 1; n <= 15; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (const Ratio& t : ts) {
        Ratio rhs = 0;
        Ratio tj = 1;
        for (int i = 0; i < k; ++i) tj *= t;
        for (int j = k; j <= n; ++j) {
          rhs += Ratio(lah::stirling_first(n, j) * lah::stirling_second(j, k)) * tj;
          tj *= t;
        }
        const Ratio lhs = lah::series_coefficient(k, t, n) *
                          Ratio(lah::factorial(n), lah::factorial(k));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("series arithmetic building blocks") {
  using lah::SeriesPoly;
  // exp(log(1/(1-x))) = 1/(1-x): all coefficients 1.
  const auto log_series = SeriesPoly::log_one_over_one_minus_x(12);
  const auto geo = log_series.exp();
  for (int i = 0; i <= 12; ++i) CHECK(geo[i] == 1);
  // (1-x)^{-2}: coefficients i+1.
  const auto sq = SeriesPoly::one_minus_x_to_minus(Ratio(2), 10);
  for (int i = 0; i <= 10; ++i) CHECK(sq[i] == i + 1);
  // Argument negation flips odd coefficients.
  const auto alt = geo.negate_argument();
  for (int i = 0; i <= 12; ++i) CHECK(alt[i] == (i % 2 ? -1 : 1));
  // Truncated product of inverses is the identity series.
  const auto direct = SeriesPoly::one_minus_x_to_minus(Ratio(-2), 10);
  const auto prod = sq * direct;
  CHECK(prod[0] == 1);
  for (int i = 1; i <= 10; ++i) CHECK(prod[i] == 0);
  SeriesPoly with_const(4);
  with_const[0] = 1;
  CHECK_THROWS_AS(with_const.exp(), std::domain_error);
}
