#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "lowdim/csv.hpp"
#include "lowdim/error.hpp"
#include "lowdim/harness.hpp"
#include "lowdim/instances.hpp"

using namespace lowdim;
using namespace lowdim::harness;

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

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("lowdim_harness_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse("# a sweep\nkind = jl_sweep\nseed = 9\nk_list = 8, 16\nseeds=2 # trailing\n");
  CHECK(cfg.kind == Kind::jl_sweep);
  CHECK(cfg.seed == 9);
  CHECK(cfg.count_list("k_list", {}) == std::vector<std::size_t>{8, 16});
  CHECK(cfg.count("seeds", 0) == 2);
  CHECK(cfg.real("q", 1.5) == 1.5);
}

TEST_CASE("config errors name the problem") {
  CHECK(kind_of([] { parse("kind = counting\nl_maxx = 3\n"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse("l_max = 3\n"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse("kind = nope\n"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse("kind = counting\nl_max = 3\nl_max = 4\n"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse("kind = counting\njust words\n"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse("kind = compose\nouter = a.csv\n"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse("kind = counting\nseed = -1\n"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse("kind = rounding\ndelta = x\n").real("delta", 0); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { parse_config_file("/nonexistent/cfg"); }) == ErrorKind::IoError);

  try {
    parse("kind = counting\nl_maxx = 3\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("l_maxx") != std::string::npos);
  }
}

TEST_CASE("kind names round trip") {
  for (Kind k : {Kind::measure, Kind::jl_sweep, Kind::rounding, Kind::codec_roundtrip, Kind::compose, Kind::counting,
                 Kind::instance_gen, Kind::oracle_check})
    CHECK(parse_kind(kind_name(k)) == k);
}

TEST_CASE("oracle agrees with the measures module") {
  const auto rep = oracle_check(25, 12, 2.0, 1.5, 4);
  CHECK(rep.instances == 25);
  CHECK(rep.max_relative_error <= 1e-12);

  testing::Gen g(71);
  const auto orig = g.cloud(9, 3);
  const auto emb = g.embedding_of(orig, 2);
  const auto ov = oracle_measures(orig, emb, 1.0, 1.0);
  const auto dm = pairwise_distances(orig);
  const auto de = pairwise_distances(emb);
  for (measures::Measure m : measures::kAllMeasures) {
    const double want = ov.get(m);
    CHECK(std::abs(measures::evaluate(m, dm, de, 1.0, 1.0).value - want) <= 1e-12 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("counting rows") {
  const auto rows = counting_report(8);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].family == 4);
  CHECK(rows[0].bound == 4);
  CHECK(rows[1].family == 1296);
  CHECK(rows[1].bound == 256);
  for (const auto& r : rows) CHECK(r.ok);
  CHECK(kind_of([] { counting_report(9); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("jl sweep rows are ordered by k then seed and reproducible") {
  JlSweepParams p;
  p.n = 30;
  p.d = 10;
  p.k_list = {2, 4, 8};
  p.seeds = 3;
  const auto a = jl_sweep(p, 5, 1);
  const auto b = jl_sweep(p, 5, 3);
  REQUIRE(a.rows.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(a.rows[i].k == p.k_list[i / 3]);
    CHECK(a.rows[i].seed_index == i % 3);
    CHECK(a.rows[i].value == b.rows[i].value);
  }
  CHECK(a.slope == b.slope);
  CHECK(a.slope < 0.0);
}

TEST_CASE("runs write byte-identical artifacts") {
  const auto one = scratch("a");
  const auto two = scratch("b");
  for (const auto& dir : {one, two}) {
    auto cfg = parse("kind = jl_sweep\nseed = 3\nn = 20\nd = 8\nk_list = 2,4\nseeds = 2\nmeasure = lq_dist\n");
    cfg.output_path = dir;
    const auto res = run(cfg);
    CHECK(res.files.size() == 2);
  }
  CHECK(slurp(one / "jl_sweep.csv") == slurp(two / "jl_sweep.csv"));
  CHECK(slurp(one / "jl_sweep.csv").rfind("k,seed,value\n", 0) == 0);
  std::filesystem::remove_all(one);
  std::filesystem::remove_all(two);
}

TEST_CASE("codec run reports a recovered instance") {
  const auto dir = scratch("codec");
  auto cfg = parse("kind = codec_roundtrip\nseed = 2\nl = 2\neps = 0.5\n");
  cfg.output_path = dir;
  const auto res = run(cfg);
  CHECK(res.summary["recovered_ok"].get<bool>());
  CHECK(res.summary["total_bits"].get<std::size_t>() == 844);
  CHECK(std::filesystem::exists(dir / "codec.lbe"));
  CHECK(std::filesystem::exists(dir / "codec_roundtrip.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("measure run reads point clouds") {
  const auto dir = scratch("measure");
  std::filesystem::create_directories(dir);
  {
    std::ofstream o(dir / "orig.csv");
    o << "0\n1\n3\n";
    std::ofstream e(dir / "emb.csv");
    e << "0\n1\n2\n";
  }
  auto cfg = parse("kind = measure\norig = " + (dir / "orig.csv").string() + "\nemb = " + (dir / "emb.csv").string() +
                   "\nmeasure = energy\n");
  cfg.output_path = dir;
  const auto res = run(cfg);
  CHECK(res.summary["value"].get<double>() == doctest::Approx(5.0 / 18).epsilon(1e-15));
  std::filesystem::remove_all(dir);
}

TEST_CASE("embedding specs") {
  const auto inst = instances::build_instance(instances::InstanceParams::from_l(2, 0.5), 1);
  CHECK(make_embedding(inst, "identity") == inst.points());
  CHECK(make_embedding(inst, "gaussian:6:2").dim() == 6);
  CHECK(kind_of([&] { make_embedding(inst, "gaussian:x"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { make_embedding(inst, "/nonexistent/emb.csv"); }) == ErrorKind::IoError);
}

TEST_CASE("rounding experiment stays within its bounds") {
  RoundingParams p;
  p.n = 40;
  p.trials = 5;
  const auto r = rounding_test(p, 1);
  CHECK(r.mean_abs_ip_error <= 1.2 * r.bound_3dr);
  CHECK(r.tail_fraction <= 2 * r.tail_bound);
}
