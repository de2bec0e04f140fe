#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "lowdim/bitstream.hpp"
#include "lowdim/grid.hpp"
#include "lowdim/instances.hpp"

namespace lowdim::codec {

struct CodecParams {
  double t = 8.0;
  std::optional<double> theta;      // decision threshold, default 1/(2 sqrt(l))
  std::optional<double> theta_err;  // good-pair error cutoff, default theta
  double alpha = 1.0 / 96.0;
  double beta = 1.0 / (8.0 * 1.4142135623730951);
  /// Rounding grid. grid.dim must equal the embedding dimension. With
  /// fit_radius the radius is replaced by the largest norm among the E and Y
  /// images (1 when they are all zero).
  grid::GridParams grid;
  bool fit_radius = true;

  /// t = tau^2 / 6 with alpha and beta rescaled to the new t.
  static CodecParams moment_case(double tau);

  void validate() const;
  double theta_for(const instances::InstanceParams& p) const;
  double theta_err_for(const instances::InstanceParams& p) const;
  /// floor(d / t): most bad E points a good y may carry.
  std::size_t bad_budget(std::size_t d) const;
  /// Any pair with error < theta_err is decided correctly by the threshold
  /// rule, i.e. theta_err <= min(theta, 1/sqrt(l) - theta).
  bool exact_recovery_guaranteed(const instances::InstanceParams& p) const;
};

/// Grid-rounded images of the E and Y blocks.
struct RoundedEmbedding {
  grid::GridParams grid;
  std::vector<grid::GridCode> e_codes;
  std::vector<grid::GridCode> y_codes;
};

/// Misalignment unless emb has 3d rows in O, E, Y order.
RoundedEmbedding round_embedding(const instances::HardInstance& inst, const PointSet& emb, const CodecParams& cp);

struct GoodSets {
  std::size_t d = 0;
  std::vector<bool> good_y;
  std::vector<std::vector<std::size_t>> good_e;  // per y, sorted
  std::vector<double> err;                       // d x d, row = y index

  double error(std::size_t m, std::size_t j) const { return err[m * d + j]; }
  std::vector<std::size_t> bad_e(std::size_t m) const;
  std::size_t good_y_count() const;
};

/// e is good for y iff err < theta_err; y is good iff it has at most
/// floor(d / t) bad e's.
GoodSets classify_errors(std::vector<double> err, std::size_t d, double theta_err, double t);

GoodSets extract_good_sets(const instances::HardInstance& inst, const RoundedEmbedding& re, const CodecParams& cp);
GoodSets extract_good_sets(const instances::HardInstance& inst, const PointSet& emb, const CodecParams& cp);

/// Header holds the seven fixed fields plus the framing the bound leaves out
/// of band: the bad-Y bitmap and each good y's 16-bit bad count.
struct BitLedger {
  std::size_t header = 0;
  std::size_t bad_Y_naive = 0;
  std::size_t E_list = 0;
  std::size_t good_Y_codes = 0;
  std::size_t bad_E_indices = 0;
  std::size_t explicit_membership = 0;

  std::size_t sum() const {
    return header + bad_Y_naive + E_list + good_Y_codes + bad_E_indices + explicit_membership;
  }
};

struct CodecArtifact {
  Bitstring bits;
  BitLedger ledger;
  std::size_t total = 0;
  double grid_bits = 0.0;     // L_G of the grid used
  double paper_bound = 0.0;   // length_bound at that L_G
  double bad_e_combinatorial = 0.0;  // sum over good y of log2 C(d, #bad)
  std::size_t good_y = 0;
  double max_decoder_error = 0.0;  // max err over the pairs the decoder thresholds
};

inline constexpr std::size_t kHeaderFieldBits = 7 * 64;

CodecArtifact encode_rounded(const instances::HardInstance& inst, const RoundedEmbedding& re, const GoodSets& good,
                             const CodecParams& cp);
CodecArtifact encode_instance(const instances::HardInstance& inst, const PointSet& emb, const CodecParams& cp);

/// Reads l, d, t, theta, delta and r from the header (l and d must match
/// params) and the embedding dimension from cp.grid.dim. Up to seven zero
/// padding bits may trail the payload.
std::vector<instances::IndexSet> decode_instance(const Bitstring& bits, const CodecParams& cp,
                                                 const instances::InstanceParams& params);
std::vector<instances::IndexSet> decode_instance(const CodecArtifact& art, const CodecParams& cp,
                                                 const instances::InstanceParams& params);

/// (1/t) d^2 (2 + log2(e t)) + 2 d Lg.
double length_bound(const instances::InstanceParams& params, const CodecParams& cp, double lg);

/// Smallest real k with k log2(16 (10/eps)^2 / k) >= l / 5, or nullopt when
/// the left side never reaches l / 5.
std::optional<double> min_dimension_for_length(double eps, std::size_t l);

/// Closed forms k >= 1/(20 gamma^2 (7 + log2 gamma) eps^2) and
/// k >= q / (8 gamma^2 log2(10 gamma) eps).
double average_case_dimension_bound(double eps, double gamma);
double moment_case_dimension_bound(double eps, double q, double gamma);

struct InjectivityReport {
  std::size_t encodings = 0;
  std::size_t distinct_instances = 0;
  std::size_t distinct_bitstrings = 0;
  std::size_t collisions = 0;
  std::size_t decode_failures = 0;
  bool exhaustive = false;
};

/// Encodes instances under the identity embedding and the grid in cp (seed
/// cp.grid.seed): every instance when family_size <= 10^6, otherwise
/// `sample` draws seeded from `seed`.
InjectivityReport injectivity_audit(const instances::InstanceParams& params, const CodecParams& cp,
                                    std::size_t sample, std::uint64_t seed);

void write_lbe(const std::filesystem::path& path, const Bitstring& bits);
Bitstring read_lbe(const std::filesystem::path& path);

}  // namespace lowdim::codec
