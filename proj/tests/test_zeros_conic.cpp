#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <complex>

#include "lah/conic.hpp"
#include "lah/distribution.hpp"
#include "lah/zeros.hpp"

using lah::Ratio;

namespace {

bool contains_root(const std::vector<std::complex<double>>& roots, double re,
                   double tol = 1e-9) {
  return std::any_of(roots.begin(), roots.end(), [&](const auto& z) {
    return std::abs(z.real() - re) < tol && std::abs(z.imag()) < tol;
  });
}

}  // namespace

TEST_CASE("poly_zeros finds the forced integer roots") {
  const auto r42 = lah::poly_zeros({4, 2});
  REQUIRE(r42.converged);
  CHECK(r42.roots.size() == 2);
  CHECK(contains_root(r42.roots, -1.0));

  const auto r52 = lah::poly_zeros({5, 2});
  REQUIRE(r52.converged);
  CHECK(contains_root(r52.roots, -1.0));
  CHECK(contains_root(r52.roots, -2.0));

  // P_{n,1}(t) is the rising factorial over n!, so the roots are exactly
  // -1, ..., -(n-1).
  const auto r61 = lah::poly_zeros({6, 1});
  REQUIRE(r61.converged);
  REQUIRE(r61.roots.size() == 5);
  for (int z = 1; z <= 5; ++z) CHECK(contains_root(r61.roots, -static_cast<double>(z)));
}

TEST_CASE("poly_zeros at a Figure-2 style size") {
  const auto r = lah::poly_zeros({60, 4}, 60);
  REQUIRE(r.converged);
  CHECK(r.roots.size() == 56);
  CHECK(r.max_residual < 1e-12);
  for (int z = 1; z <= 59 / 4; ++z)
    CHECK(contains_root(r.roots, -static_cast<double>(z), 1e-7));
  // Every root must lie strictly in the left half plane (conjectured in
  // general; asserted here for the computed instance).
  for (const auto& z : r.roots) CHECK(z.real() < 0.0);
}

TEST_CASE("poly_zeros guards") {
  CHECK_THROWS_AS(lah::poly_zeros({301, 2}), lah::resource_error);
  CHECK_THROWS_AS(lah::poly_zeros({10, 2}, 4000), std::domain_error);
}

TEST_CASE("conic face-volume sums match the Lah identity") {
  CHECK(lah::conic_face_volume_sum(3, 2, 2) == 1);
  CHECK(lah::conic_face_volume_sum(8, 8, 8) == 1);
  CHECK(lah::conic_face_volume_sum(4, 2, 3) == Ratio(3, 2));
  for (int n = 1; n <= 9; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (int j = k; j <= n; ++j) {
        const Ratio expected =
            Ratio(lah::factorial(k) * lah::stirling_first(n, j) *
                      lah::stirling_second(j, k),
                  lah::factorial(n));
        CHECK(lah::conic_face_volume_sum(n, k, j) == expected);
      }
    }
  }
  CHECK_THROWS_AS(lah::conic_face_volume_sum(15, 3, 5), lah::resource_error);
  CHECK_THROWS_AS(lah::conic_face_volume_sum(6, 2, 1), std::domain_error);
}
