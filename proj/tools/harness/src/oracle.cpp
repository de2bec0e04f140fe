// Reference implementation kept deliberately naive: ordered pairs, long
// double accumulators, its own distance computation. Nothing here touches
// the measures module so the two can cross-check each other.

#include <algorithm>
#include <cmath>
#include <string>

#include "lowdim/error.hpp"
#include "lowdim/harness.hpp"
#include "lowdim/jl.hpp"
#include "lowdim/rng.hpp"

namespace lowdim::harness {

namespace {

using Real = long double;

std::vector<Real> distance_table(const PointSet& ps) {
  const std::size_t n = ps.size();
  std::vector<Real> dist(n * n, 0.0L);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      Real s = 0.0L;
      for (std::size_t c = 0; c < ps.dim(); ++c) {
        const Real diff = static_cast<Real>(ps[u][c]) - static_cast<Real>(ps[v][c]);
        s += diff * diff;
      }
      dist[u * n + v] = std::sqrt(s);
    }
  }
  return dist;
}

Real powl_q(Real x, double q) { return std::pow(x, static_cast<Real>(q)); }

double root_q(Real x, double q) { return static_cast<double>(std::pow(x, 1.0L / static_cast<Real>(q))); }

}  // namespace

double OracleValues::get(measures::Measure m) const {
  switch (m) {
    case measures::Measure::lq_dist: return lq_dist;
    case measures::Measure::energy: return energy;
    case measures::Measure::stress: return stress;
    case measures::Measure::stress_star: return stress_star;
    case measures::Measure::rem: return rem;
    case measures::Measure::sigma: return sigma;
    case measures::Measure::stress_bar: return stress_bar;
  }
  return 0.0;
}

OracleValues oracle_measures(const PointSet& orig, const PointSet& emb, double q, double r) {
  const std::size_t n = orig.size();
  if (n != emb.size()) throw Error(ErrorKind::DimensionMismatch, "oracle inputs differ in size");
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "oracle needs at least two points");
  if (!(q >= 1.0) || !(r >= 1.0)) throw Error(ErrorKind::InvalidArgument, "oracle needs q, r >= 1");

  const auto d = distance_table(orig);
  const auto dh = distance_table(emb);

  Real sum_dist = 0, sum_energy = 0, sum_diff = 0, sum_orig = 0, sum_emb = 0, sum_rem = 0, sum_lexp = 0;
  Real ordered = 0;
  bool degenerate = false;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const Real duv = d[u * n + v];
      const Real ehat = dh[u * n + v];
      if (duv == 0) throw Error(ErrorKind::ZeroOriginalDistance, "oracle: coincident original points");
      if (ehat == 0) degenerate = true;
      const Real expans = ehat / duv;
      ordered += 1;
      sum_energy += powl_q(std::abs(expans - 1), q);
      sum_diff += powl_q(std::abs(ehat - duv), q);
      sum_orig += powl_q(duv, q);
      sum_emb += powl_q(ehat, q);
      sum_lexp += powl_q(expans, r);
      if (ehat > 0) {
        const Real contract = duv / ehat;
        sum_dist += powl_q(expans > contract ? expans : contract, q);
        sum_rem += powl_q(std::abs(ehat - duv) / (ehat < duv ? ehat : duv), q);
      }
    }
  }

  OracleValues out;
  out.energy = root_q(sum_energy / ordered, q);
  out.stress = root_q(sum_diff / sum_orig, q);
  out.stress_bar = root_q(sum_diff / ordered, q);
  if (sum_emb == 0) throw Error(ErrorKind::ZeroDenominator, "oracle: embedding collapses every pair");
  out.stress_star = root_q(sum_diff / sum_emb, q);
  if (degenerate) throw Error(ErrorKind::DegeneratePair, "oracle: embedding identifies two points");
  out.lq_dist = root_q(sum_dist / ordered, q);
  out.rem = root_q(sum_rem / ordered, q);

  const Real phi = std::pow(sum_lexp / ordered, 1.0L / static_cast<Real>(r));
  Real sum_sigma = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      sum_sigma += powl_q(std::abs(dh[u * n + v] / d[u * n + v] / phi - 1), q);
    }
  }
  out.sigma = root_q(sum_sigma / ordered, q);
  return out;
}

OracleCheck oracle_check(std::size_t instances, std::size_t n, double q, double r, std::uint64_t seed) {
  OracleCheck rep;
  for (std::size_t s = 0; s < instances; ++s) {
    const std::uint64_t sub = derive_seed(seed, s);
    const CounterRng rng(derive_seed(sub, 2));
    const std::size_t dim = 2 + rng.bits(0) % 6;
    const std::size_t kdim = 1 + rng.bits(1) % 6;
    const PointSet orig = jl::gaussian_cloud(n, dim, derive_seed(sub, 0));
    const PointSet emb = jl::gaussian_projection(orig, {dim, kdim, derive_seed(sub, 1), std::nullopt});

    const auto dm = pairwise_distances(orig);
    const auto de = pairwise_distances(emb);
    const auto oracle = oracle_measures(orig, emb, q, r);
    for (measures::Measure m : measures::kAllMeasures) {
      const double got = measures::evaluate(m, dm, de, q, r).value;
      const double want = oracle.get(m);
      const double rel = std::abs(got - want) / (want != 0.0 ? std::abs(want) : 1.0);
      if (rel > rep.max_relative_error) {
        rep.max_relative_error = rel;
        rep.worst_measure = std::string(measures::name(m));
      }
    }
    ++rep.instances;
  }
  return rep;
}

}  // namespace lowdim::harness
