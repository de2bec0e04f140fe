#include "lowdim/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lowdim/error.hpp"
#include "lowdim/measures.hpp"
#include "lowdim/rng.hpp"

namespace lowdim::instances {

namespace {

constexpr double kMaxSubsetSize = 1e7;

std::size_t subset_size_for(double eps, double gamma) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0, 1)");
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw Error(ErrorKind::InvalidArgument, "gamma must exceed 1");
  const double x = 1.0 / (gamma * gamma * eps * eps);
  if (x > kMaxSubsetSize) throw Error(ErrorKind::InvalidArgument, "instance too large: l would exceed 1e7");
  // Absorb the rounding error of 1/(gamma^2 eps^2) at exact integers.
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(x * (1.0 - 1e-12))));
}

std::size_t moment_dimension(std::size_t l, double tau) {
  return std::max<std::size_t>(l, static_cast<std::size_t>(std::llround(static_cast<double>(l) * tau)));
}

}  // namespace

InstanceParams InstanceParams::average_case(double eps, double gamma) {
  InstanceParams p;
  p.eps = eps;
  p.gamma = gamma;
  p.l = subset_size_for(eps, gamma);
  p.tau = 1.0;
  p.d = 2 * p.l;
  p.o_scale = eps / 200.0;
  p.validate();
  return p;
}

InstanceParams InstanceParams::moment_case(double eps, double q, double gamma) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw Error(ErrorKind::InvalidArgument, "q must be a finite real >= 1");
  InstanceParams p;
  p.eps = eps;
  p.gamma = gamma;
  p.q = q;
  p.l = subset_size_for(eps, gamma);
  p.tau = std::exp(eps * q);
  p.d = moment_dimension(p.l, p.tau);
  p.o_scale = eps / 200.0;
  p.validate();
  return p;
}

InstanceParams InstanceParams::from_l(std::size_t l, double eps, std::optional<double> q) {
  if (l == 0) throw Error(ErrorKind::InvalidArgument, "l must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0, 1)");
  InstanceParams p;
  p.eps = eps;
  p.gamma = 1.0 / (eps * std::sqrt(static_cast<double>(l)));
  p.l = l;
  if (q) {
    if (!(*q >= 1.0) || !std::isfinite(*q)) throw Error(ErrorKind::InvalidArgument, "q must be a finite real >= 1");
    p.q = q;
    p.tau = std::exp(eps * *q);
    p.d = moment_dimension(l, p.tau);
  } else {
    p.d = 2 * l;
  }
  p.o_scale = eps / 200.0;
  p.validate();
  return p;
}

void InstanceParams::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0, 1)");
  if (!(gamma > 1.0)) throw Error(ErrorKind::InvalidArgument, "gamma must exceed 1 (choose a smaller l or eps)");
  if (l == 0 || d < l) throw Error(ErrorKind::InvalidArgument, "need d >= l >= 1");
  if (!(o_scale > 0.0) || o_scale > eps / 100.0) throw Error(ErrorKind::InvalidArgument, "o_scale must be in (0, eps/100]");
  if (q && !(*q >= 1.0)) throw Error(ErrorKind::InvalidArgument, "q must be >= 1");
  if (!(tau >= 1.0) || !std::isfinite(tau)) throw Error(ErrorKind::InvalidArgument, "tau must be >= 1");
}

double InstanceParams::membership_value() const { return 1.0 / std::sqrt(static_cast<double>(l)); }

HardInstance::HardInstance(InstanceParams params, std::vector<IndexSet> sets, PointSet points)
    : params_(std::move(params)), sets_(std::move(sets)), points_(std::move(points)) {}

bool HardInstance::contains(std::size_t m, std::size_t j) const {
  return std::binary_search(sets_.at(m).begin(), sets_.at(m).end(), j);
}

HardInstance build_instance(const InstanceParams& params, std::vector<IndexSet> sets) {
  params.validate();
  const std::size_t d = params.d;
  const std::size_t l = params.l;
  if (sets.size() != d) {
    throw Error(ErrorKind::BadIndexSet, "expected " + std::to_string(d) + " index sets, got " + std::to_string(sets.size()));
  }
  for (std::size_t m = 0; m < d; ++m) {
    auto& s = sets[m];
    if (s.size() != l) {
      throw Error(ErrorKind::BadIndexSet, "index set " + std::to_string(m + 1) + " has " + std::to_string(s.size()) +
                                              " entries, expected " + std::to_string(l));
    }
    std::sort(s.begin(), s.end());
    if (s.back() >= d) throw Error(ErrorKind::BadIndexSet, "index set " + std::to_string(m + 1) + " is out of range");
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw Error(ErrorKind::BadIndexSet, "index set " + std::to_string(m + 1) + " repeats an index");
    }
  }

  std::vector<double> coords(3 * d * d, 0.0);
  auto row = [&](std::size_t r) { return coords.data() + r * d; };
  for (std::size_t j = 0; j < d; ++j) {
    row(j)[j] = params.o_scale * static_cast<double>(j + 1) / static_cast<double>(d);
    row(d + j)[j] = 1.0;
  }
  const double v = params.membership_value();
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t j : sets[m]) row(2 * d + m)[j] = v;
  }
  return HardInstance(params, std::move(sets), PointSet(d, std::move(coords)));
}

HardInstance build_instance(const InstanceParams& params, std::uint64_t seed) {
  params.validate();
  std::vector<IndexSet> sets(params.d);
  std::vector<std::size_t> perm(params.d);
  for (std::size_t m = 0; m < params.d; ++m) {
    const CounterRng rng(derive_seed(seed, m));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = 0; i < params.l; ++i) {
      const std::size_t span = params.d - i;
      const std::size_t pick = i + static_cast<std::size_t>(rng.bits(i) % span);
      std::swap(perm[i], perm[pick]);
    }
    sets[m].assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(params.l));
  }
  return build_instance(params, std::move(sets));
}

std::vector<IndexSet> all_index_sets(std::size_t d, std::size_t l) {
  if (l > d) return {};
  std::vector<IndexSet> out;
  IndexSet cur(l);
  std::iota(cur.begin(), cur.end(), std::size_t{0});
  while (true) {
    out.push_back(cur);
    std::size_t i = l;
    while (i > 0 && cur[i - 1] == d - l + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < l; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;  // exact: acc is C(n-k+i, i) after this step
  }
  return acc;
}

BigInt family_size(std::size_t l, std::size_t d) {
  if (l == 0 || l > d) throw Error(ErrorKind::InvalidArgument, "family_size needs 1 <= l <= d");
  return boost::multiprecision::pow(binomial(d, l), static_cast<unsigned>(d));
}

double CompositionSpec::gamma_comp() const {
  double max_inner = 0.0;
  for (std::size_t i = 0; i < inner.size(); ++i)
    for (std::size_t j = i + 1; j < inner.size(); ++j) max_inner = std::max(max_inner, inner(i, j));
  double min_outer = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < outer.size(); ++i)
    for (std::size_t j = i + 1; j < outer.size(); ++j) min_outer = std::min(min_outer, outer(i, j));
  return max_inner / min_outer;
}

void CompositionSpec::validate() const {
  if (!(beta >= 0.5) || !std::isfinite(beta)) throw Error(ErrorKind::InvalidArgument, "beta must be >= 1/2");
  if (outer.size() < 2) throw Error(ErrorKind::InvalidArgument, "outer space needs at least two points");
  if (inner.size() < 1) throw Error(ErrorKind::InvalidArgument, "inner space is empty");
  for (std::size_t i = 0; i < outer.size(); ++i)
    for (std::size_t j = i + 1; j < outer.size(); ++j)
      if (outer(i, j) == 0.0) throw Error(ErrorKind::DegenerateInner, "outer space has coincident points");
  if (!outer.is_metric()) throw Error(ErrorKind::InvalidArgument, "outer space violates the triangle inequality");
  if (!inner.is_metric()) throw Error(ErrorKind::InvalidArgument, "inner space violates the triangle inequality");
}

DistanceMatrix compose(const CompositionSpec& spec) {
  spec.validate();
  const std::size_t s = spec.outer.size();
  const std::size_t t = spec.inner.size();
  const double g = spec.gamma_comp();
  // With a one-point (or all-zero) inner space there are no within-copy distances to shrink.
  const double within = g > 0.0 ? 1.0 / (g * spec.beta) : 0.0;
  DistanceMatrix z(s * t);
  for (std::size_t u = 0; u < s; ++u) {
    for (std::size_t a = 0; a < t; ++a) {
      const std::size_t zi = u * t + a;
      for (std::size_t v = u; v < s; ++v) {
        for (std::size_t b = (v == u ? a + 1 : 0); b < t; ++b) {
          const std::size_t zj = v * t + b;
          z.set(zi, zj, u == v ? within * spec.inner(a, b) : spec.outer(u, v));
        }
      }
    }
  }
  return z;
}

DistanceMatrix equilateral(std::size_t m, double r) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "equilateral space needs at least one point");
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "equilateral distance must be positive");
  DistanceMatrix out(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) out.set(i, j, r);
  return out;
}

AveragingCheck composition_averaging(const CompositionSpec& spec, const DistanceMatrix& image, double q) {
  const DistanceMatrix z = compose(spec);
  if (image.size() != z.size()) {
    throw Error(ErrorKind::Misalignment, "image has " + std::to_string(image.size()) + " points, composed space has " +
                                             std::to_string(z.size()));
  }
  const std::size_t n = spec.outer.size();
  const std::size_t m = spec.inner.size();

  AveragingCheck out;
  const double total = measures::energy(z, image, q);
  out.total = std::pow(total, q);

  // Odometer over (choice_0, ..., choice_{n-1}) in [0, m)^n.
  std::vector<std::size_t> choice(n, 0);
  std::vector<std::size_t> rows(n);
  double sum = 0.0;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t u = 0; u < n; ++u) rows[u] = u * m + choice[u];
    const double e = measures::energy(z.submatrix(rows), image.submatrix(rows), q);
    sum += std::pow(e, q);
    best = std::min(best, e);
    ++out.selections;
    std::size_t pos = 0;
    while (pos < n && ++choice[pos] == m) choice[pos++] = 0;
    if (pos == n) break;
  }
  out.selection_mean = sum / static_cast<double>(out.selections);
  out.selection_min = best;

  double cross = 0.0;
  for (std::size_t zi = 0; zi < z.size(); ++zi) {
    for (std::size_t zj = zi + 1; zj < z.size(); ++zj) {
      if (zi / m == zj / m) continue;
      cross += std::pow(std::abs(image(zi, zj) / z(zi, zj) - 1.0), q);
    }
  }
  const double pairs = static_cast<double>(n * (n - 1) / 2) * static_cast<double>(m * m);
  out.cross_pair_mean = cross / pairs;
  return out;
}

}  // namespace lowdim::instances
