#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "generators.hpp"
#include "lowdim/bitstream.hpp"
#include "lowdim/csv.hpp"
#include "lowdim/error.hpp"
#include "lowdim/geometry.hpp"
#include "lowdim/rng.hpp"
#include "lowdim/summation.hpp"

using namespace lowdim;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected lowdim::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("pairwise distances of two points on a line") {
  const auto dm = pairwise_distances(PointSet::from_rows({{0.0}, {3.0}}));
  CHECK(dm.size() == 2);
  CHECK(dm(0, 1) == 3.0);
  CHECK(dm(1, 0) == 3.0);
  CHECK(dm(0, 0) == 0.0);
}

TEST_CASE("single point gives the 1x1 zero matrix") {
  const auto dm = pairwise_distances(PointSet::from_rows({{1.0, 2.0}}));
  CHECK(dm.size() == 1);
  CHECK(dm(0, 0) == 0.0);
  CHECK(dm.pair_count() == 0);
}

TEST_CASE("empty point set is rejected") {
  CHECK(kind_of([] { pairwise_distances(PointSet(3)); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("pairwise distances match a naive double loop") {
  testing::Gen g(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ps = g.cloud(5, 4);
    const auto dm = pairwise_distances(ps);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        long double s = 0;
        for (std::size_t c = 0; c < 4; ++c) s += (ps[i][c] - ps[j][c]) * static_cast<long double>(ps[i][c] - ps[j][c]);
        CHECK(std::abs(dm(i, j) - static_cast<double>(std::sqrt(s))) <= 1e-12);
      }
    }
  }
}

TEST_CASE("property: distance matrices are symmetric metrics") {
  testing::Gen g(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = g.between(2, 12);
    const auto dm = pairwise_distances(g.cloud(n, g.between(1, 5)));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(dm(i, i) == 0.0);
      for (std::size_t j = 0; j < n; ++j) CHECK(dm(i, j) == dm(j, i));
    }
    CHECK(dm.is_metric());
  }
}

TEST_CASE("triangle violation is located") {
  DistanceMatrix m(3, {0, 1, 5, 1, 0, 1, 5, 1, 0});
  const auto v = m.triangle_violation();
  REQUIRE(v.has_value());
  CHECK(v->excess == doctest::Approx(3.0));
  CHECK_FALSE(m.is_metric());
}

TEST_CASE("distance matrix validation") {
  CHECK(kind_of([] { DistanceMatrix(2, {0, 1, 2, 0}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { DistanceMatrix(2, {1, 1, 1, 0}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { DistanceMatrix(2, {0, 1, 1}); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { DistanceMatrix(2).scaled(0.0); }) == ErrorKind::NonpositiveScale);
}

TEST_CASE("point sets reject non-finite coordinates and ragged rows") {
  CHECK(kind_of([] { PointSet::from_rows({{0.0, std::numeric_limits<double>::quiet_NaN()}}); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { PointSet::from_rows({{0.0, 1.0}, {2.0}}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("pair stats") {
  const DistanceMatrix one(2, {0, 1, 1, 0});
  const DistanceMatrix two(2, {0, 2, 2, 0});
  const DistanceMatrix zero(2);

  auto s = pair_stats(one, two, 0, 1);
  CHECK(s.expans == 2.0);
  CHECK(s.contract == 0.5);
  CHECK(s.dist == 2.0);
  CHECK_FALSE(s.degenerate);

  CHECK(pair_stats(two, two, 0, 1).dist == 1.0);

  s = pair_stats(one, zero, 0, 1);
  CHECK(s.degenerate);
  CHECK(std::isinf(s.contract));
  CHECK(std::isinf(s.dist));

  CHECK(kind_of([&] { pair_stats(zero, one, 0, 1); }) == ErrorKind::ZeroOriginalDistance);
}

TEST_CASE("property: dist = max(expans, contract) >= 1") {
  testing::Gen g(13);
  for (int trial = 0; trial < 30; ++trial) {
    const auto orig = g.cloud(6, 3);
    const auto dm = pairwise_distances(orig);
    const auto de = pairwise_distances(g.embedding_of(orig, 2));
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = i + 1; j < 6; ++j) {
        const auto s = pair_stats(dm, de, i, j);
        CHECK(s.dist >= 1.0);
        CHECK(s.dist == std::max(s.expans, s.contract));
        CHECK(s.expans * s.contract == doctest::Approx(1.0).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("inner products") {
  const std::vector<double> e1{1, 0, 0, 0}, e2{0, 1, 0, 0}, y{0.5, 0.5, 0.5, 0.5};
  CHECK(inner_product(e1, e2) == 0.0);
  CHECK(inner_product(e1, y) == 0.5);
  CHECK(kind_of([&] { inner_product(e1, std::vector<double>{1.0}); }) == ErrorKind::DimensionMismatch);

  testing::Gen g(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ps = g.cloud(2, 9);
    long double s = 0;
    for (std::size_t c = 0; c < 9; ++c) s += static_cast<long double>(ps[0][c]) * ps[1][c];
    CHECK(std::abs(inner_product(ps[0], ps[1]) - static_cast<double>(s)) <= 1e-12);
  }
}

TEST_CASE("submatrix keeps the chosen rows in order") {
  const auto dm = pairwise_distances(PointSet::from_rows({{0.0}, {1.0}, {3.0}, {7.0}}));
  const std::vector<std::size_t> pick{3, 1};
  const auto sub = dm.submatrix(pick);
  CHECK(sub.size() == 2);
  CHECK(sub(0, 1) == 6.0);
}

TEST_CASE("csv round trip is exact and headers are skipped") {
  testing::Gen g(15);
  const auto ps = g.cloud(7, 3);
  std::stringstream ss;
  ss << "x,y,z\n";
  write_point_set_csv(ss, ps);
  CHECK(read_point_set_csv(ss) == ps);

  std::stringstream bad("1,2\n3,oops\n");
  CHECK(kind_of([&] { read_point_set_csv(bad); }) == ErrorKind::ParseError);

  CHECK(format_real(0.1) == "0.10000000000000001");
}

TEST_CASE("distance matrix csv round trip") {
  const auto dm = pairwise_distances(PointSet::from_rows({{0.0, 0.0}, {3.0, 4.0}, {1.0, 1.0}}));
  std::stringstream ss;
  write_distance_matrix_csv(ss, dm);
  CHECK(read_distance_matrix_csv(ss) == dm);
}

TEST_CASE("counter rng is a pure function of seed and counter") {
  const CounterRng a(42), b(42), c(43);
  CHECK(a.bits(7) == b.bits(7));
  CHECK(a.bits(7) != c.bits(7));
  CHECK(a.normal(1000) == b.normal(1000));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = a.uniform(i);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
}

TEST_CASE("normal draws have unit variance") {
  const CounterRng rng(5);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal(i);
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("compensated sum recovers cancelled terms") {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 2.0);

  CompensatedSum a, b;
  for (int i = 0; i < 10; ++i) a.add(0.1);
  for (int i = 0; i < 10; ++i) b.add(0.1);
  a.merge(b);
  CHECK(a.value() == doctest::Approx(2.0).epsilon(1e-16));
}

TEST_CASE("bitstring writes MSB first and pads the last byte") {
  Bitstring bits;
  bits.append(0b101, 3);
  bits.push_back(true);
  bits.append(0xABCD, 16);
  CHECK(bits.size() == 20);
  CHECK(bits.to_string() == "10111010101111001101");
  CHECK(bits.bytes().size() == 3);
  CHECK(bits.bytes()[0] == 0xBA);
  CHECK(bits.bytes()[2] == 0xD0);

  BitReader in(bits);
  CHECK(in.read(3) == 0b101);
  CHECK(in.read_bit());
  CHECK(in.read(16) == 0xABCD);
  CHECK(kind_of([&] { in.read_bit(); }) == ErrorKind::MalformedBits);
}

TEST_CASE("property: bitstring field round trips") {
  testing::Gen g(16);
  for (int trial = 0; trial < 100; ++trial) {
    Bitstring bits;
    std::vector<std::pair<std::uint64_t, unsigned>> fields;
    for (std::size_t f = 0, nf = g.between(1, 20); f < nf; ++f) {
      const unsigned w = static_cast<unsigned>(g.between(0, 64));
      const std::uint64_t mask = w == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << w) - 1);
      const std::uint64_t v = CounterRng(trial).bits(f) & mask;
      fields.emplace_back(v, w);
      bits.append(v, w);
    }
    BitReader in(bits);
    for (const auto& [v, w] : fields) CHECK(in.read(w) == v);
    CHECK(in.remaining() == 0);
    CHECK(Bitstring::from_bytes(bits.bytes(), bits.size()) == bits);
  }
}

TEST_CASE("error kinds are named in messages") {
  const Error e(ErrorKind::BudgetExceeded, "too many");
  CHECK(e.kind() == ErrorKind::BudgetExceeded);
  CHECK(std::string(e.what()).find("BudgetExceeded") != std::string::npos);
}
