#include "lowdim/jl.hpp"

#include <cmath>
#include <string>

#include "lowdim/error.hpp"
#include "lowdim/rng.hpp"

namespace lowdim::jl {

double ProjectionSpec::effective_scale() const {
  return scale.value_or(1.0 / std::sqrt(static_cast<double>(target_dim)));
}

void ProjectionSpec::validate() const {
  if (input_dim == 0 || target_dim == 0) {
    throw Error(ErrorKind::InvalidArgument, "projection dimensions must be positive");
  }
  if (scale && !(std::isfinite(*scale) && *scale > 0.0)) {
    throw Error(ErrorKind::NonpositiveScale, "projection scale must be positive");
  }
}

GaussianProjection::GaussianProjection(const ProjectionSpec& spec) : spec_(spec) {
  spec_.validate();
  const CounterRng rng(spec_.seed);
  const double s = spec_.effective_scale();
  matrix_.resize(spec_.target_dim * spec_.input_dim);
  for (std::size_t i = 0; i < matrix_.size(); ++i) matrix_[i] = s * rng.normal(i);
}

std::vector<double> GaussianProjection::apply(std::span<const double> x) const {
  if (x.size() != spec_.input_dim) {
    throw Error(ErrorKind::DimensionMismatch, "projection expects dimension " + std::to_string(spec_.input_dim) +
                                                  ", got " + std::to_string(x.size()));
  }
  std::vector<double> y(spec_.target_dim, 0.0);
  for (std::size_t r = 0; r < spec_.target_dim; ++r) {
    const double* row = matrix_.data() + r * spec_.input_dim;
    double acc = 0.0;
    for (std::size_t c = 0; c < spec_.input_dim; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
  return y;
}

PointSet GaussianProjection::apply(const PointSet& ps) const {
  if (ps.dim() != spec_.input_dim) {
    throw Error(ErrorKind::DimensionMismatch, "projection expects dimension " + std::to_string(spec_.input_dim) +
                                                  ", got " + std::to_string(ps.dim()));
  }
  std::vector<double> out;
  out.reserve(ps.size() * spec_.target_dim);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto y = apply(ps[i]);
    out.insert(out.end(), y.begin(), y.end());
  }
  return PointSet(spec_.target_dim, std::move(out));
}

PointSet gaussian_projection(const PointSet& ps, const ProjectionSpec& spec) {
  return GaussianProjection(spec).apply(ps);
}

PointSet scale_embedding(const PointSet& ps, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::NonpositiveScale, "scale must be positive");
  std::vector<double> coords = ps.coords();
  for (double& x : coords) x *= c;
  return PointSet(ps.dim(), std::move(coords));
}

PointSet gaussian_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  const CounterRng rng(seed);
  std::vector<double> coords(n * dim);
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = rng.normal(i);
  return PointSet(dim, std::move(coords));
}

PointSet uniform_ball(std::size_t n, std::size_t dim, double radius, std::uint64_t seed) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  const CounterRng directions(derive_seed(seed, 0));
  const CounterRng radii(derive_seed(seed, 1));
  std::vector<double> coords(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    double sq = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double g = directions.normal(i * dim + c);
      coords[i * dim + c] = g;
      sq += g * g;
    }
    const double rho = radius * std::pow(radii.uniform(i), 1.0 / static_cast<double>(dim)) / std::sqrt(sq);
    for (std::size_t c = 0; c < dim; ++c) coords[i * dim + c] *= rho;
  }
  return PointSet(dim, std::move(coords));
}

}  // namespace lowdim::jl
