#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "lowdim/csv.hpp"
#include "lowdim/error.hpp"
#include "lowdim/grid.hpp"
#include "lowdim/harness.hpp"
#include "lowdim/jl.hpp"
#include "lowdim/rng.hpp"

namespace lowdim::harness {

namespace {

std::vector<JlSweepRow> sweep_trial(const JlSweepParams& p, std::uint64_t seed, std::size_t s) {
  const std::uint64_t sub = derive_seed(seed, s);
  const PointSet cloud = jl::gaussian_cloud(p.n, p.d, derive_seed(sub, 0));
  const DistanceMatrix orig = pairwise_distances(cloud);
  std::vector<JlSweepRow> rows;
  for (std::size_t k : p.k_list) {
    const PointSet emb = jl::gaussian_projection(cloud, {p.d, k, derive_seed(sub, 1), std::nullopt});
    rows.push_back({k, s, measures::evaluate(p.measure, orig, pairwise_distances(emb), p.q).value});
  }
  return rows;
}

}  // namespace

JlSweepResult jl_sweep(const JlSweepParams& p, std::uint64_t seed, std::size_t threads) {
  if (p.k_list.empty() || p.seeds == 0) throw Error(ErrorKind::InvalidArgument, "jl_sweep needs k values and seeds");
  if (p.n < 2 || p.d == 0) throw Error(ErrorKind::InvalidArgument, "jl_sweep needs n >= 2 and d >= 1");
  threads = std::max<std::size_t>(1, threads);

  std::vector<std::vector<JlSweepRow>> per_trial(p.seeds);
  for (std::size_t first = 0; first < p.seeds; first += threads) {
    const std::size_t last = std::min(p.seeds, first + threads);
    if (last - first == 1) {
      per_trial[first] = sweep_trial(p, seed, first);
      continue;
    }
    std::vector<std::future<std::vector<JlSweepRow>>> jobs;
    for (std::size_t s = first; s < last; ++s) {
      jobs.push_back(std::async(std::launch::async, [&p, seed, s] { return sweep_trial(p, seed, s); }));
    }
    for (std::size_t s = first; s < last; ++s) per_trial[s] = jobs[s - first].get();
  }

  JlSweepResult out;
  for (std::size_t ki = 0; ki < p.k_list.size(); ++ki) {
    double sum = 0.0;
    for (std::size_t s = 0; s < p.seeds; ++s) {
      out.rows.push_back(per_trial[s][ki]);
      sum += per_trial[s][ki].value;
    }
    const double mean = sum / static_cast<double>(p.seeds);
    double var = 0.0;
    for (std::size_t s = 0; s < p.seeds; ++s) var += (per_trial[s][ki].value - mean) * (per_trial[s][ki].value - mean);
    const double stddev = p.seeds > 1 ? std::sqrt(var / static_cast<double>(p.seeds - 1)) : 0.0;
    out.per_k.push_back({p.k_list[ki], mean, stddev});
  }

  // Least-squares slope of log(excess) against log(k).
  const double offset = p.measure == measures::Measure::lq_dist ? 1.0 : 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (const auto& pt : out.per_k) {
    const double excess = pt.mean - offset;
    if (!(excess > 0.0)) continue;
    const double x = std::log(static_cast<double>(pt.k));
    const double y = std::log(excess);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  const double denom = static_cast<double>(used) * sxx - sx * sx;
  out.slope = used >= 2 && denom != 0.0 ? (static_cast<double>(used) * sxy - sx * sy) / denom : 0.0;
  return out;
}

RoundingResult rounding_test(const RoundingParams& p, std::uint64_t seed) {
  if (p.trials == 0 || p.n < 2) throw Error(ErrorKind::InvalidArgument, "rounding test needs n >= 2 and trials >= 1");
  RoundingResult out;
  double err_sum = 0.0;
  double frac_sum = 0.0;
  for (std::size_t s = 0; s < p.trials; ++s) {
    const std::uint64_t sub = derive_seed(seed, s);
    const PointSet pts = jl::uniform_ball(p.n, p.k, p.r, derive_seed(sub, 0));
    const grid::GridParams gp{p.delta, p.r, p.k, p.eta, derive_seed(sub, 1)};
    const auto rep = grid::tail_check(pts, gp);
    err_sum += rep.mean_abs_error;
    frac_sum += rep.fraction;
    out.tail_bound = rep.bound;
  }
  out.mean_abs_ip_error = err_sum / static_cast<double>(p.trials);
  out.tail_fraction = frac_sum / static_cast<double>(p.trials);
  out.bound_3dr = 3.0 * p.delta * p.r;
  return out;
}

std::vector<CountingRow> counting_report(std::size_t l_max) {
  if (l_max == 0 || l_max > 8) throw Error(ErrorKind::InvalidArgument, "counting_report supports 1 <= l_max <= 8");
  std::vector<CountingRow> rows;
  for (std::size_t l = 1; l <= l_max; ++l) {
    CountingRow row;
    row.l = l;
    row.family = instances::family_size(l, 2 * l);
    row.bound = instances::BigInt(1) << static_cast<unsigned>(2 * l * l);
    row.ok = row.family >= row.bound;
    rows.push_back(std::move(row));
  }
  return rows;
}

PointSet make_embedding(const instances::HardInstance& inst, const std::string& spec) {
  if (spec == "identity") return inst.points();
  if (spec.rfind("gaussian:", 0) == 0) {
    const auto rest = spec.substr(9);
    const auto colon = rest.find(':');
    try {
      const std::size_t k = std::stoull(rest.substr(0, colon));
      const std::uint64_t s = colon == std::string::npos ? 0 : std::stoull(rest.substr(colon + 1));
      return jl::gaussian_projection(inst.points(), {inst.points().dim(), k, s, std::nullopt});
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "embedding spec must look like gaussian:<k>:<seed>, got '" + spec + "'");
    }
  }
  return read_point_set_csv(std::filesystem::path(spec));
}

RoundtripResult codec_roundtrip(const instances::HardInstance& inst, const PointSet& emb, const codec::CodecParams& cp_in) {
  codec::CodecParams cp = cp_in;
  cp.grid.dim = emb.dim();
  RoundtripResult out;
  out.artifact = codec::encode_instance(inst, emb, cp);
  out.recovered_ok = codec::decode_instance(out.artifact, cp, inst.params()) == inst.index_sets();
  out.gap_condition = out.artifact.max_decoder_error < 0.5 * inst.params().membership_value();
  return out;
}

nlohmann::json ledger_json(const codec::CodecArtifact& art) {
  const auto& l = art.ledger;
  return {{"header", l.header},
          {"bad_Y_naive", l.bad_Y_naive},
          {"E_list", l.E_list},
          {"good_Y_codes", l.good_Y_codes},
          {"bad_E_indices", l.bad_E_indices},
          {"explicit_membership", l.explicit_membership}};
}

}  // namespace lowdim::harness
