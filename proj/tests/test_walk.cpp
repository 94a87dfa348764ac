#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lah/walk.hpp"

using lah::IncrementLaw;
using lah::PointXd;
using lah::WalkConfig;

TEST_CASE("walk simulation basics") {
  WalkConfig cfg;
  cfg.d = 3;
  cfg.n = 20;
  cfg.seed = 99;
  const auto points = lah::simulate_walk(cfg, 0);
  REQUIRE(points.size() == 21);
  for (int c = 0; c < 3; ++c) CHECK(points[0][c] == 0.0);
  // Same (seed, trial) reproduces the walk; different trial does not.
  const auto again = lah::simulate_walk(cfg, 0);
  CHECK(points == again);
  CHECK(points != lah::simulate_walk(cfg, 1));
}

TEST_CASE("increment law: mean zero, identity covariance") {
  WalkConfig cfg;
  cfg.d = 2;
  cfg.n = 1;
  cfg.seed = 7;
  const long trials = 100000;
  double sx = 0, sxx = 0, sxy = 0;
  for (long t = 0; t < trials; ++t) {
    const auto pts = lah::simulate_walk(cfg, t);
    sx += pts[1][0];
    sxx += pts[1][0] * pts[1][0];
    sxy += pts[1][0] * pts[1][1];
  }
  const double inv_sqrt_t = 1.0 / std::sqrt(static_cast<double>(trials));
  CHECK(std::abs(sx / trials) < 3 * inv_sqrt_t);
  CHECK(std::abs(sxx / trials - 1.0) < 3 * std::sqrt(2.0) * inv_sqrt_t);
  CHECK(std::abs(sxy / trials) < 3 * inv_sqrt_t);
}

TEST_CASE("2d hull counting") {
  const std::vector<PointXd> triangle = {{0, 0}, {1, 0}, {0, 1}};
  const auto tri = lah::hull_faces_2d(triangle);
  CHECK(tri.f0 == 3);
  CHECK(tri.f1 == 3);
  const std::vector<PointXd> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  const auto sq = lah::hull_faces_2d(square);
  CHECK(sq.f0 == 4);
  CHECK(sq.f1 == 4);
  CHECK_THROWS_AS(lah::hull_faces_2d({{0, 0}, {1, 1}}), std::domain_error);
  const std::vector<PointXd> collinear = {{0, 0}, {1, 1}, {2, 2}};
  CHECK_THROWS_AS(lah::hull_faces_2d(collinear), lah::degenerate_error);
}

TEST_CASE("3d hull counting") {
  const std::vector<PointXd> simplex = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const auto s = lah::hull_faces_3d(simplex);
  CHECK(s.f0 == 4);
  CHECK(s.f1 == 6);
  CHECK(s.f2 == 4);
  // Interior point is ignored by every facet.
  std::vector<PointXd> with_inner = simplex;
  with_inner.push_back({0.2, 0.2, 0.2});
  const auto si = lah::hull_faces_3d(with_inner);
  CHECK(si.f0 == 4);
  // Euler and simpliciality hold on random walks (asserted inside).
  WalkConfig cfg;
  cfg.d = 3;
  cfg.n = 8;
  cfg.seed = 1;
  for (long t = 0; t < 200; ++t) {
    const auto faces = lah::hull_faces_3d(lah::simulate_walk(cfg, t));
    CHECK(faces.f0 - faces.f1 + faces.f2 == 2);
    CHECK(2 * faces.f1 == 3 * faces.f2);
  }
}

TEST_CASE("lp vertex certification") {
  const std::vector<PointXd> simplex4 = {
      {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  CHECK(lah::vertex_count_lp(simplex4, 4) == 5);
  std::vector<PointXd> with_inner = simplex4;
  with_inner.push_back({0.1, 0.15, 0.2, 0.12});
  CHECK(lah::vertex_count_lp(with_inner, 4) == 5);
  // Against the exact 2d hull on random instances.
  WalkConfig cfg;
  cfg.d = 2;
  cfg.n = 12;
  cfg.seed = 31;
  for (long t = 0; t < 100; ++t) {
    const auto pts = lah::simulate_walk(cfg, t);
    CHECK(lah::vertex_count_lp(pts, 2) == lah::hull_faces_2d(pts).f0);
  }
}

TEST_CASE("monte carlo report matches the exact formula (reduced trials)") {
  // Reduced-trial versions; the acceptance suite runs the 2000-trial set.
  struct Case {
    int d;
    long n;
  };
  for (const Case c : {Case{2, 10}, Case{3, 5}}) {
    WalkConfig cfg;
    cfg.d = c.d;
    cfg.n = c.n;
    cfg.trials = 600;
    cfg.seed = 1234;
    const auto report = lah::monte_carlo_report(cfg);
    CHECK(std::abs(report.faces[0].z) < 3.5);
  }
}

TEST_CASE("heavy-tail increments leave the expected f-vector unchanged") {
  // The face formula is distribution-free under exchangeability and general
  // position; isotropic Cauchy increments must produce the same mean f0.
  WalkConfig cfg;
  cfg.d = 2;
  cfg.n = 10;
  cfg.trials = 1500;
  cfg.seed = 77;
  cfg.law = IncrementLaw::cauchy_isotropic;
  const auto report = lah::monte_carlo_report(cfg);
  CHECK(std::abs(report.faces[0].z) < 3.5);
}

TEST_CASE("permuting increments leaves the f0 statistics invariant") {
  // Build walks from reversed increments of the same underlying noise and
  // compare mean f0; both must agree with the formula at the 3-sigma level.
  WalkConfig cfg;
  cfg.d = 2;
  cfg.n = 8;
  cfg.seed = 55;
  const long trials = 1500;
  double mean_plain = 0, mean_perm = 0;
  for (long t = 0; t < trials; ++t) {
    const auto pts = lah::simulate_walk(cfg, t);
    std::vector<PointXd> increments(cfg.n, PointXd(2));
    for (long i = 0; i < cfg.n; ++i)
      for (int c = 0; c < 2; ++c) increments[i][c] = pts[i + 1][c] - pts[i][c];
    std::vector<PointXd> permuted(cfg.n + 1, PointXd(2, 0.0));
    for (long i = 0; i < cfg.n; ++i)
      for (int c = 0; c < 2; ++c)
        permuted[i + 1][c] = permuted[i][c] + increments[cfg.n - 1 - i][c];
    mean_plain += lah::hull_faces_2d(pts).f0;
    mean_perm += lah::hull_faces_2d(permuted).f0;
  }
  mean_plain /= trials;
  mean_perm /= trials;
  const double exact = lah::to_double(lah::expected_faces({8, 2, 1}));
  CHECK(std::abs(mean_plain - exact) < 0.25);
  CHECK(std::abs(mean_perm - exact) < 0.25);
}

TEST_CASE("hull certificates") {
  const std::vector<PointXd> simplex = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const auto s3 = lah::hull_faces_3d(simplex);
  CHECK(s3.facets.size() == 4);  // every triple is a facet of the simplex
  const std::vector<PointXd> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  const auto s2 = lah::hull_faces_2d(square);
  REQUIRE(s2.hull_vertices.size() == 4);
  for (size_t v : s2.hull_vertices) CHECK(v != 4);  // center point excluded
  std::vector<PointXd> with_inner = simplex;
  with_inner.push_back({0.2, 0.2, 0.2});
  const auto flags = lah::vertex_flags_lp(with_inner, 3);
  CHECK(flags == std::vector<bool>{true, true, true, true, false});
}

TEST_CASE("quadrupling trials roughly halves the standard error") {
  WalkConfig cfg;
  cfg.d = 2;
  cfg.n = 10;
  cfg.seed = 2718;
  cfg.trials = 1000;
  const double se_small = lah::monte_carlo_report(cfg).faces[0].se;
  cfg.trials = 4000;
  const double se_large = lah::monte_carlo_report(cfg).faces[0].se;
  CHECK(se_small / se_large > 2.0 * 0.8);
  CHECK(se_small / se_large < 2.0 * 1.2);
}

TEST_CASE("report determinism across thread counts") {
  WalkConfig cfg;
  cfg.d = 3;
  cfg.n = 6;
  cfg.trials = 300;
  cfg.seed = 4242;
  cfg.threads = 1;
  const auto serial = lah::monte_carlo_report(cfg);
  cfg.threads = 4;
  const auto parallel = lah::monte_carlo_report(cfg);
  CHECK(serial.faces[0].mean == parallel.faces[0].mean);
  CHECK(serial.faces[1].se == parallel.faces[1].se);
  CHECK(serial.faces[2].z == parallel.faces[2].z);
  CHECK(serial.resampled == parallel.resampled);
}
