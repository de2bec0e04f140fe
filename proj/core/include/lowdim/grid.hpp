#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lowdim/bitstream.hpp"
#include "lowdim/geometry.hpp"

namespace lowdim::grid {

struct GridParams {
  double delta = 0.01;
  double radius = 1.0;
  std::size_t dim = 1;
  double eta = 1.0;
  std::uint64_t seed = 0;

  /// delta > 0, radius > 0, dim >= 1, eta >= 1 and delta < radius / sqrt(dim).
  void validate() const;

  /// Rounding moves each coordinate by at most delta, so rounded points of
  /// B(radius) satisfy sum n_i^2 <= ((radius + delta sqrt(dim)) / delta)^2.
  double magnitude_bound() const;

  /// Rice parameter b = floor(log2(radius / (delta sqrt(dim)))).
  unsigned rice_parameter() const;
};

/// Grid point (+-n_i * delta)_i as sign bits and integer magnitudes. A zero
/// magnitude always carries a cleared sign bit.
struct GridCode {
  std::vector<bool> negative;
  std::vector<std::uint64_t> magnitude;
  double delta = 0.0;
  std::size_t bit_length = 0;

  std::size_t dim() const noexcept { return magnitude.size(); }
  std::int64_t value(std::size_t i) const noexcept {
    const auto n = static_cast<std::int64_t>(magnitude[i]);
    return negative[i] ? -n : n;
  }
  std::vector<double> point() const;

  friend bool operator==(const GridCode& a, const GridCode& b) {
    return a.negative == b.negative && a.magnitude == b.magnitude && a.delta == b.delta;
  }
};

/// Unbiased randomized rounding of one point: coordinate i goes to
/// ceil(v_i/delta)*delta with probability p = v_i/delta - floor(v_i/delta)
/// and to floor(v_i/delta)*delta otherwise. The coin for coordinate i of
/// point `point_index` is CounterRng(seed).uniform(point_index * dim + i).
GridCode round_point(std::span<const double> v, const GridParams& gp, std::uint64_t point_index);

/// Rounds every point (point index = row). PointOutsideBall when a point lies
/// outside B(radius).
std::vector<GridCode> round_to_grid(const PointSet& ps, const GridParams& gp);

/// Nominal representation size k * log2(4 r / (delta sqrt(k))).
double grid_bit_length(const GridParams& gp);

/// Wire format, per coordinate: Rice code of n_i with parameter
/// gp.rice_parameter() (n >> b in unary as ones closed by a zero, then the b
/// low bits), followed by one sign bit when n_i > 0.
std::size_t encoded_length(const GridCode& gc, const GridParams& gp);
void encode_grid_point(const GridCode& gc, const GridParams& gp, Bitstring& out);
Bitstring encode_grid_point(const GridCode& gc, const GridParams& gp);

/// MalformedBits on truncation, overlong unary runs or magnitudes outside
/// the inflated ball.
GridCode decode_grid_point(BitReader& in, const GridParams& gp);
GridCode decode_grid_point(const Bitstring& bits, const GridParams& gp);

/// Exact integer dot product scaled by delta^2.
double grid_inner_product(const GridCode& a, const GridCode& b);

struct TailReport {
  double fraction = 0.0;        // pairs with |<u~,v~> - <u,v>| > threshold
  double threshold = 0.0;       // 3 sqrt(2) eta delta r
  double bound = 0.0;           // 4 exp(-eta^2)
  double mean_abs_error = 0.0;  // mean over pairs of |<u~,v~> - <u,v>|
  std::size_t pairs = 0;
};

TailReport tail_check(const PointSet& ps, const GridParams& gp);

}  // namespace lowdim::grid
