#include "lowdim/grid.hpp"

#include <cmath>
#include <string>

#include "lowdim/error.hpp"
#include "lowdim/rng.hpp"

namespace lowdim::grid {

namespace {
__extension__ using Int128 = __int128;
}  // namespace

void GridParams::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorKind::InvalidArgument, "grid delta must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorKind::InvalidArgument, "grid radius must be positive");
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "grid dimension must be at least 1");
  if (!(eta >= 1.0)) throw Error(ErrorKind::InvalidArgument, "eta must be at least 1");
  if (!(delta < radius / std::sqrt(static_cast<double>(dim)))) {
    throw Error(ErrorKind::InvalidArgument, "grid delta must be below radius / sqrt(dim)");
  }
}

double GridParams::magnitude_bound() const {
  return (radius + delta * std::sqrt(static_cast<double>(dim))) / delta;
}

unsigned GridParams::rice_parameter() const {
  const double ratio = radius / (delta * std::sqrt(static_cast<double>(dim)));
  const double b = std::floor(std::log2(ratio));
  if (!(b > 0.0)) return 0;
  return b > 62.0 ? 62U : static_cast<unsigned>(b);
}

std::vector<double> GridCode::point() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < dim(); ++i) p[i] = static_cast<double>(value(i)) * delta;
  return p;
}

GridCode round_point(std::span<const double> v, const GridParams& gp, std::uint64_t point_index) {
  gp.validate();
  if (v.size() != gp.dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "point has dimension " + std::to_string(v.size()) + ", grid expects " + std::to_string(gp.dim));
  }
  if (norm(v) > gp.radius * (1.0 + kDefaultTolerance)) {
    throw Error(ErrorKind::PointOutsideBall, "point lies outside the grid ball");
  }
  const CounterRng rng(gp.seed);
  GridCode gc;
  gc.delta = gp.delta;
  gc.negative.resize(gp.dim);
  gc.magnitude.resize(gp.dim);
  for (std::size_t i = 0; i < gp.dim; ++i) {
    const double x = v[i] / gp.delta;
    const double lo = std::floor(x);
    const double p = x - lo;
    double n = lo;
    if (p > 0.0 && rng.uniform(point_index * gp.dim + i) < p) n = lo + 1.0;
    const auto value = static_cast<std::int64_t>(n);
    gc.negative[i] = value < 0;
    gc.magnitude[i] = static_cast<std::uint64_t>(value < 0 ? -value : value);
  }
  gc.bit_length = encoded_length(gc, gp);
  return gc;
}

std::vector<GridCode> round_to_grid(const PointSet& ps, const GridParams& gp) {
  std::vector<GridCode> out;
  out.reserve(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) out.push_back(round_point(ps[i], gp, i));
  return out;
}

double grid_bit_length(const GridParams& gp) {
  const double k = static_cast<double>(gp.dim);
  return k * std::log2(4.0 * gp.radius / (gp.delta * std::sqrt(k)));
}

std::size_t encoded_length(const GridCode& gc, const GridParams& gp) {
  const unsigned b = gp.rice_parameter();
  std::size_t bits = 0;
  for (std::size_t i = 0; i < gc.dim(); ++i) {
    const std::uint64_t n = gc.magnitude[i];
    bits += (n >> b) + 1 + b + (n > 0 ? 1 : 0);
  }
  return bits;
}

void encode_grid_point(const GridCode& gc, const GridParams& gp, Bitstring& out) {
  if (gc.dim() != gp.dim || gc.negative.size() != gp.dim) {
    throw Error(ErrorKind::DimensionMismatch, "grid code dimension does not match grid");
  }
  long double sq = 0.0L;
  for (std::uint64_t n : gc.magnitude) sq += static_cast<long double>(n) * static_cast<long double>(n);
  const long double bound = gp.magnitude_bound();
  if (sq > bound * bound * (1.0L + 1e-9L)) {
    throw Error(ErrorKind::PointOutsideBall, "grid point lies outside the inflated ball");
  }
  const unsigned b = gp.rice_parameter();
  for (std::size_t i = 0; i < gc.dim(); ++i) {
    const std::uint64_t n = gc.magnitude[i];
    for (std::uint64_t q = n >> b; q > 0; --q) out.push_back(true);
    out.push_back(false);
    out.append(n, b);
    if (n > 0) out.push_back(gc.negative[i]);
  }
}

Bitstring encode_grid_point(const GridCode& gc, const GridParams& gp) {
  Bitstring out;
  encode_grid_point(gc, gp, out);
  return out;
}

GridCode decode_grid_point(BitReader& in, const GridParams& gp) {
  const unsigned b = gp.rice_parameter();
  const long double bound = gp.magnitude_bound();
  const long double limit = bound * bound * (1.0L + 1e-9L);
  const auto max_mag = static_cast<std::uint64_t>(std::floor(bound * (1.0L + 1e-9L)));
  const std::uint64_t max_quotient = max_mag >> b;

  GridCode gc;
  gc.delta = gp.delta;
  gc.negative.resize(gp.dim);
  gc.magnitude.resize(gp.dim);
  long double sq = 0.0L;
  for (std::size_t i = 0; i < gp.dim; ++i) {
    std::uint64_t q = 0;
    while (in.read_bit()) {
      if (++q > max_quotient) throw Error(ErrorKind::MalformedBits, "unary run exceeds the grid range");
    }
    const std::uint64_t n = (q << b) | in.read(b);
    gc.magnitude[i] = n;
    gc.negative[i] = n > 0 && in.read_bit();
    sq += static_cast<long double>(n) * static_cast<long double>(n);
    if (sq > limit) throw Error(ErrorKind::MalformedBits, "decoded point lies outside the inflated ball");
  }
  gc.bit_length = encoded_length(gc, gp);
  return gc;
}

GridCode decode_grid_point(const Bitstring& bits, const GridParams& gp) {
  BitReader in(bits);
  GridCode gc = decode_grid_point(in, gp);
  if (in.remaining() != 0) throw Error(ErrorKind::MalformedBits, "trailing bits after grid code");
  return gc;
}

double grid_inner_product(const GridCode& a, const GridCode& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "grid codes differ in dimension");
  if (a.delta != b.delta) throw Error(ErrorKind::InvalidArgument, "grid codes use different deltas");
  Int128 acc = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += static_cast<Int128>(a.value(i)) * b.value(i);
  return static_cast<double>(static_cast<long double>(acc) * a.delta * a.delta);
}

TailReport tail_check(const PointSet& ps, const GridParams& gp) {
  const auto codes = round_to_grid(ps, gp);
  TailReport rep;
  rep.threshold = 3.0 * std::sqrt(2.0) * gp.eta * gp.delta * gp.radius;
  rep.bound = 4.0 * std::exp(-gp.eta * gp.eta);
  std::size_t over = 0;
  long double err_sum = 0.0L;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const double err = std::abs(grid_inner_product(codes[i], codes[j]) - inner_product(ps[i], ps[j]));
      err_sum += err;
      if (err > rep.threshold) ++over;
      ++rep.pairs;
    }
  }
  if (rep.pairs > 0) {
    rep.fraction = static_cast<double>(over) / static_cast<double>(rep.pairs);
    rep.mean_abs_error = static_cast<double>(err_sum / static_cast<long double>(rep.pairs));
  }
  return rep;
}

}  // namespace lowdim::grid
