#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lowdim/geometry.hpp"

namespace lowdim {

/// Average-case distortion measures of an embedding, computed from the
/// aligned original/embedded distance matrices. Every measure averages over
/// the C(n,2) unordered pairs enumerated as i < j in lexicographic order,
/// accumulating with compensated summation.
///
/// Measures that divide by an original distance raise ZeroOriginalDistance
/// on coincident input points. Measures that divide by an image distance
/// raise DegeneratePair instead of producing infinities.
namespace measures {

enum class Measure { lq_dist, energy, stress, stress_star, rem, sigma, stress_bar };

inline constexpr Measure kAllMeasures[] = {Measure::lq_dist, Measure::energy,     Measure::stress,
                                           Measure::stress_star, Measure::rem, Measure::sigma,
                                           Measure::stress_bar};

std::string_view name(Measure m) noexcept;
std::optional<Measure> parse(std::string_view name) noexcept;

struct MeasureReport {
  Measure measure = Measure::lq_dist;
  double q = 1.0;
  double r = 1.0;
  double value = 0.0;
  std::size_t pair_count = 0;
};

/// Pair sums may be split into `chunks` contiguous ranges evaluated
/// concurrently. A single chunk reproduces the sequential result bit for bit.
struct Options {
  std::size_t chunks = 1;
};

/// (mean of dist^q)^(1/q), dist = max(expansion, contraction).
double lq_distortion(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts = {});

/// (mean of |expansion - 1|^q)^(1/q).
double energy(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts = {});

/// (sum |d' - d|^q / sum d^q)^(1/q).
double stress(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts = {});

/// (sum |d' - d|^q / sum d'^q)^(1/q). ZeroDenominator when every image
/// distance is zero.
double stress_star(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts = {});

/// Relative error measure: (mean of (|d' - d| / min(d', d))^q)^(1/q).
double rem(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts = {});

/// r-power mean of expansions.
double lexpans(const DistanceMatrix& orig, const DistanceMatrix& emb, double r, const Options& opts = {});

/// (mean of |expansion / lexpans_r - 1|^q)^(1/q). Invariant under scaling
/// of the embedding. ZeroLexpans when the embedding collapses every pair.
double sigma_distortion(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, double r,
                        const Options& opts = {});

/// Distance-weighted energy: (mean of (d * |expansion - 1|)^q)^(1/q).
double stress_bar(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts = {});

MeasureReport evaluate(Measure m, const DistanceMatrix& orig, const DistanceMatrix& emb, double q, double r = 1.0,
                       const Options& opts = {});

struct ScaleSearch {
  double scale = 1.0;
  double value = 0.0;
};

/// Minimizes Stress_1(orig, c * emb) over the candidate scales; ties resolve
/// to the earliest candidate.
ScaleSearch optimal_scale_stress(const DistanceMatrix& orig, const DistanceMatrix& emb, std::span<const double> grid);

/// `count` points from lo to hi, evenly spaced in log scale (both ends
/// included).
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

}  // namespace measures
}  // namespace lowdim
