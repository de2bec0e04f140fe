#include "lowdim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lowdim/error.hpp"

namespace lowdim {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " has a non-finite coordinate");
  }
}

}  // namespace

PointSet::PointSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "point dimension must be positive");
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "point dimension must be positive");
  if (coords_.size() % dim != 0) {
    throw Error(ErrorKind::DimensionMismatch, "coordinate count is not a multiple of the dimension");
  }
  require_finite(coords_, "point set");
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorKind::InvalidArgument, "no rows");
  PointSet ps(rows.front().size());
  ps.coords_.reserve(rows.size() * ps.dim_);
  for (const auto& row : rows) ps.push_back(row);
  return ps;
}

void PointSet::push_back(std::span<const double> point) {
  if (dim_ == 0) throw Error(ErrorKind::InvalidArgument, "point set has no dimension");
  if (point.size() != dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                "point of dimension " + std::to_string(point.size()) + " added to set of dimension " +
                    std::to_string(dim_));
  }
  require_finite(point, "point");
  coords_.insert(coords_.end(), point.begin(), point.end());
}

DistanceMatrix::DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries, double tol)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n * n) throw Error(ErrorKind::DimensionMismatch, "distance matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i * n + i] != 0.0) throw Error(ErrorKind::InvalidArgument, "nonzero diagonal entry");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = entries_[i * n + j];
      const double b = entries_[j * n + i];
      if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "distances must be finite and nonnegative");
      }
      if (std::abs(a - b) > tol * std::max(1.0, std::max(a, b))) {
        throw Error(ErrorKind::InvalidArgument,
                    "asymmetric entries at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      entries_[j * n + i] = a;
    }
  }
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) throw Error(ErrorKind::InvalidArgument, "index out of range");
  if (i == j) {
    if (value != 0.0) throw Error(ErrorKind::InvalidArgument, "diagonal must be zero");
    return;
  }
  if (!std::isfinite(value) || value < 0.0) throw Error(ErrorKind::InvalidArgument, "distance must be finite and nonnegative");
  entries_[i * n_ + j] = value;
  entries_[j * n_ + i] = value;
}

DistanceMatrix DistanceMatrix::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::NonpositiveScale, "scale must be positive");
  DistanceMatrix out = *this;
  for (double& v : out.entries_) v *= c;
  return out;
}

DistanceMatrix DistanceMatrix::submatrix(std::span<const std::size_t> indices) const {
  DistanceMatrix out(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = 0; b < indices.size(); ++b) {
      out.entries_[a * indices.size() + b] = (*this)(indices[a], indices[b]);
    }
  }
  return out;
}

std::optional<DistanceMatrix::Violation> DistanceMatrix::triangle_violation(double tol) const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const double direct = (*this)(i, k);
      for (std::size_t j = 0; j < n_; ++j) {
        const double excess = direct - ((*this)(i, j) + (*this)(j, k));
        if (excess > tol * std::max(1.0, direct)) return Violation{i, j, k, excess};
      }
    }
  }
  return std::nullopt;
}

DistanceMatrix pairwise_distances(const PointSet& ps) {
  if (ps.empty()) throw Error(ErrorKind::InvalidArgument, "pairwise_distances of an empty point set");
  const std::size_t n = ps.size();
  DistanceMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = ps[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = ps[j];
      double sq = 0.0;
      for (std::size_t c = 0; c < a.size(); ++c) {
        const double diff = a[c] - b[c];
        sq += diff * diff;
      }
      out.set(i, j, std::sqrt(sq));
    }
  }
  return out;
}

PairStats pair_stats(const DistanceMatrix& orig, const DistanceMatrix& emb, std::size_t i, std::size_t j) {
  if (orig.size() != emb.size()) throw Error(ErrorKind::DimensionMismatch, "distance matrices differ in size");
  if (i == j || i >= orig.size() || j >= orig.size()) {
    throw Error(ErrorKind::InvalidArgument, "pair_stats needs two distinct in-range indices");
  }
  const double d = orig(i, j);
  const double dhat = emb(i, j);
  if (d == 0.0) {
    throw Error(ErrorKind::ZeroOriginalDistance,
                "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide in the original space");
  }
  PairStats s;
  s.expans = dhat / d;
  if (dhat == 0.0) {
    s.degenerate = true;
    s.contract = std::numeric_limits<double>::infinity();
    s.dist = std::numeric_limits<double>::infinity();
  } else {
    s.contract = d / dhat;
    s.dist = std::max(s.expans, s.contract);
  }
  return s;
}

double inner_product(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "inner product of vectors of length " + std::to_string(u.size()) + " and " + std::to_string(v.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

double norm(std::span<const double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

}  // namespace lowdim
