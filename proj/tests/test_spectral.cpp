#include "doctest.h"

#include <cmath>
#include <numbers>

#include "epithresh/spectral.hpp"
#include "support.hpp"

using namespace epithresh;
using namespace testsupport;

TEST_CASE("Jacobi oracle reproduces known spectra") {
  const auto k = jacobi_eigenvalues(dense_adjacency(complete(5)));
  CHECK(k.back() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(k.front() == doctest::Approx(-1.0).epsilon(1e-12));
  const auto p = jacobi_eigenvalues(dense_adjacency(path(6)));
  for (int j = 1; j <= 6; ++j) {
    const double ev = 2.0 * std::cos(std::numbers::pi * j / 7.0);
    CHECK(p[6 - j] == doctest::Approx(ev).epsilon(1e-12));
  }
}

TEST_CASE("spectral_radius analytic values") {
  CHECK(spectral_radius(complete(4)).value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(spectral_radius(star(5)).value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(spectral_radius(path(3)).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(spectral_radius(cycle(9)).value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("spectral_radius matches the dense oracle") {
  for (std::uint32_t s = 0; s < 10; ++s) {
    const Graph g = gnp(40, 0.15, 100 + s);
    if (g.edge_count() == 0) continue;
    const auto r = spectral_radius(g);
    CHECK(r.converged);
    CHECK(std::abs(r.value - jacobi_eigenvalues(dense_adjacency(g)).back()) < 1e-6);
  }
}

TEST_CASE("spectral_radius in single precision") {
  const auto r = spectral_radius<float>(complete(6), {1e-6, 10000, 0});
  CHECK(r.value == doctest::Approx(5.0f).epsilon(1e-4));
}

TEST_CASE("spectral_radius reports non-convergence") {
  const Graph g = gnp(200, 0.05, 7);
  const auto r = spectral_radius(g, {1e-15, 3, 0});
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
  CHECK_THROWS_AS(spectral_radius(build_graph({}, 3).graph), SpectralError);
}

TEST_CASE("spectral_gap analytic values") {
  const auto k4 = spectral_gap(complete(4));
  CHECK(k4.lambda2 == doctest::Approx(-1.0 / 3.0).epsilon(1e-6));
  CHECK(k4.gap == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
  CHECK(std::abs(spectral_gap(cycle(4)).gap - 1.0) < 1e-6);
  CHECK(std::abs(spectral_gap(star(5)).gap - 1.0) < 1e-6);
  CHECK(std::abs(spectral_gap(star(5)).lambda2) < 1e-6);
}

TEST_CASE("spectral_gap matches the second normalized eigenvalue") {
  for (std::uint32_t s = 0; s < 8; ++s) {
    const Graph g = connected_gnp(30, 0.12, 300 + s);
    const auto ev = normalized_spectrum(g);
    const auto r = spectral_gap(g, {1e-13, 1000000, s});
    CHECK(std::abs(r.lambda2 - ev[ev.size() - 2]) < 1e-5);
  }
}

TEST_CASE("spectral_gap rejects disconnected graphs") {
  const std::vector<Edge> e{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(spectral_gap(build_graph(e, 4).graph), SpectralError);
}

TEST_CASE("stationary distribution") {
  const auto k = stationary_distribution(complete(4));
  for (int i = 0; i < 4; ++i) CHECK(k[i] == doctest::Approx(0.25));
  const auto s = stationary_distribution(star(5));
  CHECK(s[0] == doctest::Approx(0.5));
  for (int i = 1; i < 5; ++i) CHECK(s[i] == doctest::Approx(0.125));
  const auto r = stationary_distribution(gnp(60, 0.1, 2));
  CHECK(r.sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(stationary_distribution(build_graph({}, 2).graph), SpectralError);
}

TEST_CASE("walk_step preserves pi") {
  const Graph g = connected_gnp(50, 0.1, 9);
  const auto pi = stationary_distribution(g);
  CHECK((walk_step(g, pi) - pi).lpNorm<1>() < 1e-14);
}

TEST_CASE("tv_mixing_time") {
  SUBCASE("K4 mixes quickly, checked by direct iteration") {
    const Graph g = complete(4);
    const auto t = tv_mixing_time(g, 0, {1e-6});
    CHECK(t > 0);
    CHECK(t <= 30);
    // Oracle: explicit distribution iteration on the dense walk matrix.
    Eigen::MatrixXd Q = dense_adjacency(g) / 3.0;
    Eigen::RowVectorXd q = Eigen::RowVectorXd::Zero(4);
    q[0] = 1.0;
    std::uint64_t steps = 0;
    while ((q.array() - 0.25).abs().sum() > 1e-6) {
      q = q * Q;
      ++steps;
    }
    CHECK(t == steps);
  }
  SUBCASE("bipartite graph errors with the coloring") {
    try {
      tv_mixing_time(cycle(4), 0);
      FAIL("expected an error");
    } catch (const SpectralError& e) {
      const std::string what = e.what();
      CHECK(what.find("bipartite") != std::string::npos);
      CHECK(what.find("{0,2}") != std::string::npos);
    }
  }
  SUBCASE("threshold 2 is met at t = 0") { CHECK(tv_mixing_time(complete(5), 1, {2.0}) == 0); }
  SUBCASE("unreachable threshold within the cap") {
    CHECK_THROWS_AS(tv_mixing_time(cycle(5), 0, {1e-300, 50}), SpectralError);
  }
}

TEST_CASE("spectral_radius lies between mean and max degree") {
  for (std::uint32_t s = 0; s < 30; ++s) {
    const Graph g = gnp(20 + s * 5, 0.08, 900 + s);
    if (g.edge_count() == 0) continue;
    const auto stats = degree_stats(g);
    const auto r = spectral_radius(g);
    CHECK(r.converged);
    CHECK(r.residual <= 1e-10);
    CHECK(r.value >= double(stats.m1) / double(g.node_count()) - 1e-9);
    CHECK(r.value <= double(stats.d_max) + 1e-9);
  }
}

TEST_CASE("slowly converging paths still meet the tolerance") {
  for (std::size_t n : {30u, 60u, 120u}) {
    const double exact = 2.0 * std::cos(std::numbers::pi / double(n + 1));
    CHECK(std::abs(spectral_radius(path(n)).value - exact) < 1e-8);
  }
}
