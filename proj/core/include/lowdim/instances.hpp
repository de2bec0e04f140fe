#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lowdim/geometry.hpp"

namespace lowdim::instances {

using BigInt = boost::multiprecision::cpp_int;

/// Default gammas: the constants that make the fixed decision thresholds of
/// the average and moment cases work. Desk-scale experiments pick small
/// values instead.
inline constexpr double kAverageCaseGamma = 48001.0;
inline constexpr double kMomentCaseGamma = 169.0;

/// Parameter block of the hard family.
///
/// l = ceil(1 / (gamma^2 eps^2)). Without q the ambient dimension is d = 2l;
/// with q it is d = round(l * tau) for tau = e^(eps q). The near-zero O
/// vectors have norm at most o_scale = eps / 200.
struct InstanceParams {
  double eps = 0.1;
  double gamma = kAverageCaseGamma;
  std::optional<double> q;
  std::size_t l = 1;
  double tau = 1.0;
  std::size_t d = 2;
  double o_scale = 0.0005;

  static InstanceParams average_case(double eps, double gamma = kAverageCaseGamma);
  static InstanceParams moment_case(double eps, double q, double gamma = kMomentCaseGamma);
  /// Fixes l directly; gamma is reported as 1/(eps sqrt(l)).
  static InstanceParams from_l(std::size_t l, double eps, std::optional<double> q = std::nullopt);

  void validate() const;

  /// Inner product <e_j, y_S> for j in S.
  double membership_value() const;
};

/// Sorted, 0-based member indices of one S_j.
using IndexSet = std::vector<std::size_t>;

/// I[S_1..S_d] = O u E u Y, stored as one point set in that order:
/// rows [0, d) are O, [d, 2d) are E (standard basis), [2d, 3d) are the
/// y_{S_m} = (1/sqrt(l)) sum_{j in S_m} e_j.
class HardInstance {
 public:
  HardInstance(InstanceParams params, std::vector<IndexSet> sets, PointSet points);

  const InstanceParams& params() const noexcept { return params_; }
  const std::vector<IndexSet>& index_sets() const noexcept { return sets_; }
  const PointSet& points() const noexcept { return points_; }

  std::size_t d() const noexcept { return params_.d; }
  std::size_t o_row(std::size_t j) const noexcept { return j; }
  std::size_t e_row(std::size_t j) const noexcept { return params_.d + j; }
  std::size_t y_row(std::size_t m) const noexcept { return 2 * params_.d + m; }

  std::span<const double> o(std::size_t j) const noexcept { return points_[o_row(j)]; }
  std::span<const double> e(std::size_t j) const noexcept { return points_[e_row(j)]; }
  std::span<const double> y(std::size_t m) const noexcept { return points_[y_row(m)]; }

  bool contains(std::size_t m, std::size_t j) const;

 private:
  InstanceParams params_;
  std::vector<IndexSet> sets_;
  PointSet points_;
};

/// Builds the instance for explicit index sets (BadIndexSet on wrong count,
/// wrong size, out-of-range or duplicate entries). Sets are stored sorted.
HardInstance build_instance(const InstanceParams& params, std::vector<IndexSet> sets);

/// Draws each S_m uniformly among the l-subsets of [0, d).
HardInstance build_instance(const InstanceParams& params, std::uint64_t seed);

/// All l-subsets of [0, d) in lexicographic order.
std::vector<IndexSet> all_index_sets(std::size_t d, std::size_t l);

BigInt binomial(std::size_t n, std::size_t k);

/// |P| = C(d, l)^d.
BigInt family_size(std::size_t l, std::size_t d);

/// d(z_i, z_j) = d_S(u, v) across copies u != v, and
/// d_T(z_i, z_j) / (gamma_comp * beta) within one copy, where
/// gamma_comp = max d_T / min d_S. Point z = (u, t) sits at row u * |T| + t.
struct CompositionSpec {
  double beta = 1.0;
  DistanceMatrix outer;
  DistanceMatrix inner;

  double gamma_comp() const;
  void validate() const;
};

DistanceMatrix compose(const CompositionSpec& spec);

DistanceMatrix equilateral(std::size_t m, double r);

/// Enumerates every cross-copy selection X (one point from each copy of the
/// inner space) of a composed space against an image distance matrix.
struct AveragingCheck {
  double selection_mean = 0.0;   // mean over X of Energy_q(F|X)^q
  double selection_min = 0.0;    // min over X of Energy_q(F|X)
  double cross_pair_mean = 0.0;  // (1 / (C(n,2) m^2)) sum over cross-copy pairs of |expans - 1|^q
  double total = 0.0;            // Energy_q(F)^q over the whole composed space
  std::size_t selections = 0;
};

AveragingCheck composition_averaging(const CompositionSpec& spec, const DistanceMatrix& image, double q);

}  // namespace lowdim::instances
