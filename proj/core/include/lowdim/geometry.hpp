#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lowdim {

inline constexpr double kDefaultTolerance = 1e-12;

/// Ordered list of points in R^dim, stored row-major. All coordinates are
/// finite and every point has the same dimension.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim);
  PointSet(std::size_t dim, std::vector<double> coords);

  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }

  void push_back(std::span<const double> point);

  const std::vector<double>& coords() const noexcept { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Symmetric n x n matrix of nonnegative reals with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n);
  /// Validates and mirrors the upper triangle; asymmetry beyond `tol`
  /// (relative) is rejected.
  DistanceMatrix(std::size_t n, std::vector<double> entries, double tol = kDefaultTolerance);

  std::size_t size() const noexcept { return n_; }
  std::size_t pair_count() const noexcept { return n_ < 2 ? 0 : n_ * (n_ - 1) / 2; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value);

  const std::vector<double>& entries() const noexcept { return entries_; }

  DistanceMatrix scaled(double c) const;

  /// Principal submatrix on the given (ordered) indices.
  DistanceMatrix submatrix(std::span<const std::size_t> indices) const;

  struct Violation {
    std::size_t i, j, k;
    double excess;
  };
  /// First (i, j, k) with d(i,k) > d(i,j) + d(j,k) + tol * max(1, d(i,k)).
  std::optional<Violation> triangle_violation(double tol = kDefaultTolerance) const;
  bool is_metric(double tol = kDefaultTolerance) const { return !triangle_violation(tol); }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// Expansion, contraction and distortion of one pair. A pair whose image
/// distance is zero is flagged degenerate; its contraction and distortion
/// are +infinity.
struct PairStats {
  double expans = 1.0;
  double contract = 1.0;
  double dist = 1.0;
  bool degenerate = false;
};

DistanceMatrix pairwise_distances(const PointSet& ps);

PairStats pair_stats(const DistanceMatrix& orig, const DistanceMatrix& emb, std::size_t i,
                     std::size_t j);

double inner_product(std::span<const double> u, std::span<const double> v);

double norm(std::span<const double> v);

}  // namespace lowdim
