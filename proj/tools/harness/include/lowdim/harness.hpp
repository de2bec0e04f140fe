#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lowdim/codec.hpp"
#include "lowdim/geometry.hpp"
#include "lowdim/instances.hpp"
#include "lowdim/measures.hpp"

namespace lowdim::harness {

enum class Kind { measure, jl_sweep, rounding, codec_roundtrip, compose, counting, instance_gen, oracle_check };

std::string_view kind_name(Kind k) noexcept;
std::optional<Kind> parse_kind(std::string_view name) noexcept;

/// Flat `key = value` text, one pair per line, `#` starts a comment.
/// `kind`, `seed` and `output` are reserved; every other key must be one the
/// kind understands, otherwise ConfigError names the offending key.
struct ExperimentConfig {
  Kind kind = Kind::measure;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::filesystem::path output_path = ".";

  bool has(const std::string& key) const { return parameters.count(key) != 0; }
  std::string text(const std::string& key, const std::string& fallback) const;
  std::string require(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  std::vector<std::size_t> count_list(const std::string& key, std::vector<std::size_t> fallback) const;

  /// Unknown or missing keys raise ConfigError.
  void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

/// LOWDIM_THREADS when set to a positive integer, else hardware concurrency
/// (at least 1).
std::size_t thread_cap();

struct RunResult {
  nlohmann::json summary;
  std::vector<std::filesystem::path> files;
};

/// Executes one experiment, writing its artifacts under output_path. Output
/// files are a pure function of the config.
RunResult run(const ExperimentConfig& config);

/// Brute-force values of every measure computed from the raw points with
/// plain loops over ordered pairs in extended precision.
struct OracleValues {
  double lq_dist = 0.0;
  double energy = 0.0;
  double stress = 0.0;
  double stress_star = 0.0;
  double rem = 0.0;
  double sigma = 0.0;
  double stress_bar = 0.0;

  double get(measures::Measure m) const;
};

OracleValues oracle_measures(const PointSet& orig, const PointSet& emb, double q, double r);

struct OracleCheck {
  std::size_t instances = 0;
  double max_relative_error = 0.0;
  std::string worst_measure;
};

/// Random (orig, emb) pairs of n Gaussian points, emb a perturbed copy in a
/// different dimension; compares the measures module against the oracle.
OracleCheck oracle_check(std::size_t instances, std::size_t n, double q, double r, std::uint64_t seed);

struct JlSweepParams {
  std::size_t n = 256;
  std::size_t d = 64;
  std::vector<std::size_t> k_list{8, 16, 32, 64, 128, 256};
  std::size_t seeds = 20;
  measures::Measure measure = measures::Measure::energy;
  double q = 1.0;
};

struct JlSweepRow {
  std::size_t k = 0;
  std::size_t seed_index = 0;
  double value = 0.0;
};

struct JlSweepPoint {
  std::size_t k = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

/// Trial s draws its cloud from derive_seed(derive_seed(seed, s), 0) and its
/// projection from derive_seed(derive_seed(seed, s), 1); every k reuses both.
/// The slope is the least-squares fit of log(mean excess) on log(k), where
/// the excess is value - 1 for lq_dist and value otherwise.
struct JlSweepResult {
  std::vector<JlSweepRow> rows;
  std::vector<JlSweepPoint> per_k;
  double slope = 0.0;
};

JlSweepResult jl_sweep(const JlSweepParams& p, std::uint64_t seed, std::size_t threads = 1);

struct RoundingParams {
  std::size_t n = 100;
  std::size_t k = 16;
  double delta = 0.01;
  double r = 1.0;
  double eta = 2.0;
  std::size_t trials = 50;
};

struct RoundingResult {
  double mean_abs_ip_error = 0.0;
  double bound_3dr = 0.0;
  double tail_fraction = 0.0;
  double tail_bound = 0.0;
};

/// Points uniform in B(r); per trial a fresh cloud and rounding seed.
RoundingResult rounding_test(const RoundingParams& p, std::uint64_t seed);

struct CountingRow {
  std::size_t l = 0;
  instances::BigInt family;  // C(2l, l)^(2l)
  instances::BigInt bound;   // 2^(2 l^2)
  bool ok = false;
};

std::vector<CountingRow> counting_report(std::size_t l_max);

/// "identity", "gaussian:k:seed" or a CSV path.
PointSet make_embedding(const instances::HardInstance& inst, const std::string& spec);

struct RoundtripResult {
  codec::CodecArtifact artifact;
  bool recovered_ok = false;
  bool gap_condition = false;  // max decoder-pair error < 1/(2 sqrt(l))
};

RoundtripResult codec_roundtrip(const instances::HardInstance& inst, const PointSet& emb, const codec::CodecParams& cp);

nlohmann::json ledger_json(const codec::CodecArtifact& art);

}  // namespace lowdim::harness
