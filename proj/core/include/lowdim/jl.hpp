#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lowdim/geometry.hpp"

namespace lowdim::jl {

struct ProjectionSpec {
  std::size_t input_dim = 1;
  std::size_t target_dim = 1;
  std::uint64_t seed = 0;
  std::optional<double> scale;  // defaults to 1/sqrt(target_dim)

  double effective_scale() const;
  void validate() const;
};

/// Dense Gaussian map x -> scale * G x. Entry G(row, col) is the standard
/// normal CounterRng(seed).normal(row * input_dim + col), so the matrix is a
/// pure function of the spec.
class GaussianProjection {
 public:
  explicit GaussianProjection(const ProjectionSpec& spec);

  const ProjectionSpec& spec() const noexcept { return spec_; }
  double entry(std::size_t row, std::size_t col) const noexcept { return matrix_[row * spec_.input_dim + col]; }

  std::vector<double> apply(std::span<const double> x) const;
  PointSet apply(const PointSet& ps) const;

 private:
  ProjectionSpec spec_;
  std::vector<double> matrix_;  // target_dim x input_dim, already scaled
};

PointSet gaussian_projection(const PointSet& ps, const ProjectionSpec& spec);

/// Multiplies every coordinate by c > 0 (NonpositiveScale otherwise).
PointSet scale_embedding(const PointSet& ps, double c);

/// n points with i.i.d. standard normal coordinates.
PointSet gaussian_cloud(std::size_t n, std::size_t dim, std::uint64_t seed);

/// n points drawn uniformly from the Euclidean ball of the given radius.
PointSet uniform_ball(std::size_t n, std::size_t dim, double radius, std::uint64_t seed);

}  // namespace lowdim::jl
