#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "lowdim/error.hpp"
#include "lowdim/jl.hpp"
#include "lowdim/measures.hpp"

using namespace lowdim;

TEST_CASE("projection is deterministic in the seed") {
  testing::Gen g(31);
  const auto ps = g.cloud(20, 10);
  const jl::ProjectionSpec spec{10, 4, 99, std::nullopt};
  CHECK(jl::gaussian_projection(ps, spec) == jl::gaussian_projection(ps, spec));
  CHECK_FALSE(jl::gaussian_projection(ps, spec) == jl::gaussian_projection(ps, {10, 4, 100, std::nullopt}));
  CHECK(jl::gaussian_projection(ps, spec).dim() == 4);
}

TEST_CASE("matrix entries follow the documented counter layout") {
  const jl::ProjectionSpec spec{3, 2, 7, std::nullopt};
  const jl::GaussianProjection proj(spec);
  const CounterRng rng(7);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(proj.entry(r, c) == doctest::Approx(rng.normal(r * 3 + c) / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("norms are preserved in expectation") {
  const std::vector<double> x{1, 0, 0, 0, 0, 0, 0, 0};
  double sum = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const jl::GaussianProjection proj({8, 256, s, std::nullopt});
    const auto y = proj.apply(x);
    double sq = 0.0;
    for (double v : y) sq += v * v;
    sum += sq;
  }
  const double mean = sum / 1000.0;
  CHECK(mean >= 0.98);
  CHECK(mean <= 1.02);
}

TEST_CASE("property: projection is linear") {
  testing::Gen g(32);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = g.between(1, 12);
    const std::size_t k = g.between(1, 12);
    const jl::GaussianProjection proj({d, k, g.index(1000), std::nullopt});
    const auto ps = g.cloud(2, d);
    std::vector<double> sum(d);
    for (std::size_t c = 0; c < d; ++c) sum[c] = ps[0][c] + ps[1][c];
    const auto a = proj.apply(ps[0]);
    const auto b = proj.apply(ps[1]);
    const auto ab = proj.apply(sum);
    for (std::size_t r = 0; r < k; ++r) CHECK(std::abs(ab[r] - a[r] - b[r]) <= 1e-10);
  }
}

TEST_CASE("quality improves with target dimension") {
  const auto cloud = jl::gaussian_cloud(256, 64, 5);
  const auto orig = pairwise_distances(cloud);
  const auto at = [&](std::size_t k) {
    return measures::lq_distortion(orig, pairwise_distances(jl::gaussian_projection(cloud, {64, k, 6, std::nullopt})), 1);
  };
  CHECK(at(64) - 1 < at(16) - 1);
}

TEST_CASE("scaling an embedding") {
  testing::Gen g(33);
  const auto ps = g.cloud(6, 3);
  CHECK(jl::scale_embedding(ps, 1.0) == ps);
  const auto d1 = pairwise_distances(ps);
  const auto d2 = pairwise_distances(jl::scale_embedding(ps, 2.0));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(d2(i, j) == doctest::Approx(2 * d1(i, j)).epsilon(1e-15));
  const auto back = jl::scale_embedding(jl::scale_embedding(ps, 2.0), 0.5);
  for (std::size_t i = 0; i < ps.coords().size(); ++i) CHECK(std::abs(back.coords()[i] - ps.coords()[i]) <= 1e-15);
  CHECK_THROWS_AS(jl::scale_embedding(ps, 0.0), Error);
}

TEST_CASE("dimension mismatch and bad specs") {
  testing::Gen g(34);
  const auto ps = g.cloud(3, 5);
  try {
    jl::gaussian_projection(ps, {4, 2, 0, std::nullopt});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
  CHECK_THROWS_AS(jl::ProjectionSpec({5, 0, 0, std::nullopt}).validate(), Error);
  CHECK(jl::ProjectionSpec{5, 4, 0, std::nullopt}.effective_scale() == 0.5);
}

TEST_CASE("uniform ball samples stay inside the ball") {
  const auto ps = jl::uniform_ball(500, 7, 2.5, 9);
  double max_norm = 0.0;
  double mean_norm = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    max_norm = std::max(max_norm, norm(ps[i]));
    mean_norm += norm(ps[i]) / 500.0;
  }
  CHECK(max_norm <= 2.5);
  // E|x| = r k / (k + 1) for the uniform ball.
  CHECK(mean_norm == doctest::Approx(2.5 * 7 / 8).epsilon(0.02));
}
