// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <tuple>

#include "generators.hpp"
#include "lowdim/codec.hpp"
#include "lowdim/grid.hpp"
#include "lowdim/harness.hpp"
#include "lowdim/instances.hpp"
#include "lowdim/jl.hpp"
#include "lowdim/measures.hpp"

using namespace lowdim;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct RandomPair {
  DistanceMatrix orig;
  DistanceMatrix emb;
};

RandomPair random_pair(testing::Gen& g) {
  const auto orig = g.cloud(g.between(3, 20), g.between(2, 8));
  return {pairwise_distances(orig), pairwise_distances(g.embedding_of(orig, g.between(1, 5)))};
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (auto [q, r, seed] : {std::tuple{1.0, 1.0, 101u}, std::tuple{2.0, 2.0, 102u}}) {
    const auto rep = harness::oracle_check(100, 20, q, r, seed);
    worst = std::max(worst, rep.max_relative_error);
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-12 && secs < 5.0, "max rel err " + fmt("%.3g", worst) + ", " + fmt("%.2f s", secs)};
}

Outcome chain() {
  testing::Gen g(201);
  const double qs[] = {1.0, 2.0, 4.0};
  double worst_upper[3] = {0.0, 0.0, 0.0};  // max of rem - (lq - 1)
  double worst_lower = 0.0;                  // max of energy - rem
  bool monotone = true;
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_pair(g);
    double prev = 0.0;
    for (int qi = 0; qi < 3; ++qi) {
      const double lq = measures::lq_distortion(p.orig, p.emb, qs[qi]);
      const double re = measures::rem(p.orig, p.emb, qs[qi]);
      const double en = measures::energy(p.orig, p.emb, qs[qi]);
      worst_upper[qi] = std::max(worst_upper[qi], re - (lq - 1.0));
      worst_lower = std::max(worst_lower, en - re);
      if (lq < prev) monotone = false;
      prev = lq;
    }
  }
  bool ok = monotone && worst_lower <= 1e-12;
  std::string detail = "rem - (lq-1) worst at q=1,2,4:";
  for (int qi = 0; qi < 3; ++qi) {
    ok = ok && worst_upper[qi] <= 1e-12;
    detail += " " + fmt("%.3g", worst_upper[qi]);
  }
  detail += "; energy - rem worst " + fmt("%.3g", worst_lower);
  detail += monotone ? "; lq monotone in q" : "; lq NOT monotone in q";
  return {ok, detail};
}

Outcome sigma_and_rescaling() {
  testing::Gen g(301);
  const auto grid = measures::log_spaced(1e-3, 1e3, 1000);
  double worst_sigma = 0.0;
  double worst_ratio = 0.0;
  bool ok = true;
  for (int i = 0; i < 100; ++i) {
    const auto p = random_pair(g);
    for (double q : {1.0, 2.0}) {
      const double base = measures::sigma_distortion(p.orig, p.emb, q, 2.0);
      for (double c : {0.1, 1.0, 7.0})
        worst_sigma = std::max(worst_sigma, std::abs(measures::sigma_distortion(p.orig, p.emb.scaled(c), q, 2.0) - base));
    }
    const double best = measures::optimal_scale_stress(p.orig, p.emb, grid).value;
    const double star = measures::stress_star(p.orig, p.emb, 1);
    if (best > 4.0 * star + 1e-9) ok = false;
    if (star > 0) worst_ratio = std::max(worst_ratio, best / star);
  }
  return {ok && worst_sigma <= 1e-10,
          "sigma drift " + fmt("%.3g", worst_sigma) + ", max stress/stress* " + fmt("%.3f", worst_ratio)};
}

Outcome jl_shape() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  for (auto m : {measures::Measure::energy, measures::Measure::lq_dist}) {
    harness::JlSweepParams p;
    p.measure = m;
    const auto res = harness::jl_sweep(p, 401, harness::thread_cap());
    for (std::size_t i = 1; i < res.per_k.size(); ++i)
      if (!(res.per_k[i].mean < res.per_k[i - 1].mean)) ok = false;
    if (res.slope < -0.65 || res.slope > -0.35) ok = false;
    detail += std::string(measures::name(m)) + " slope " + fmt("%.3f", res.slope) + "; ";
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 60.0, detail + fmt("%.1f s", secs)};
}

Outcome rounding() {
  const auto res = harness::rounding_test({100, 16, 0.01, 1.0, 2.0, 50}, 501);
  bool ok = res.mean_abs_ip_error <= 1.2 * res.bound_3dr && res.tail_fraction <= 2.0 * res.tail_bound;

  // Per-coordinate unbiasedness: count round-ups against the binomial mean.
  const grid::GridParams base{0.01, 1.0, 4, 1.0, 0};
  const std::vector<double> v{0.123456, -0.5, 0.0049, -0.31337};
  const int trials = 100000;
  double worst_z = 0.0;
  for (std::size_t c = 0; c < v.size(); ++c) {
    const double scaled = v[c] / base.delta;
    const double p = scaled - std::floor(scaled);
    long ups = 0;
    for (int s = 0; s < trials; ++s) {
      auto gp = base;
      gp.seed = static_cast<std::uint64_t>(s);
      const auto gc = grid::round_point(v, gp, 0);
      if (static_cast<double>(gc.value(c)) > std::floor(scaled)) ++ups;
    }
    const double sd = std::sqrt(trials * p * (1 - p));
    const double dev = std::abs(static_cast<double>(ups) - trials * p);
    if (sd == 0.0) {
      if (dev != 0.0) ok = false;
    } else {
      worst_z = std::max(worst_z, dev / sd);
    }
  }
  ok = ok && worst_z <= 4.0;
  return {ok, "mean err " + fmt("%.4g", res.mean_abs_ip_error) + " vs " + fmt("%.4g", 1.2 * res.bound_3dr) +
                  ", tail " + fmt("%.4g", res.tail_fraction) + " vs " + fmt("%.4g", 2 * res.tail_bound) +
                  ", worst z " + fmt("%.2f", worst_z)};
}

struct CodecRuns {
  std::size_t runs = 0;
  std::size_t failures = 0;       // recovery failures among gap-condition runs
  std::size_t collisions = 0;
  std::size_t ledger_breaks = 0;  // sum != total or length over the bound
  double worst_margin = -1e300;   // max of (|bits| - header) - (bound + 2kd)
  std::size_t gaussian_runs = 0;
  std::size_t gap_runs = 0;
  double secs = 0.0;
};

void audit_ledger(CodecRuns& cr, const codec::CodecArtifact& art, std::size_t k, std::size_t d) {
  const double excess = static_cast<double>(art.total - art.ledger.header) -
                        (art.paper_bound + 2.0 * static_cast<double>(k * d));
  cr.worst_margin = std::max(cr.worst_margin, excess);
  if (art.ledger.sum() != art.total || art.bits.size() != art.total || excess > 0.0) ++cr.ledger_breaks;
}

const CodecRuns& codec_runs() {
  static const CodecRuns cr = [] {
    CodecRuns out;
    const auto t0 = std::chrono::steady_clock::now();

    const auto p2 = instances::InstanceParams::from_l(2, 0.5);
    codec::CodecParams cp;
    cp.grid.delta = 0.001;
    cp.grid.seed = 601;
    const auto subsets = instances::all_index_sets(p2.d, p2.l);
    std::set<std::string> seen;
    std::vector<std::size_t> digit(p2.d, 0);
    while (true) {
      std::vector<instances::IndexSet> sets(p2.d);
      for (std::size_t m = 0; m < p2.d; ++m) sets[m] = subsets[digit[m]];
      const auto inst = instances::build_instance(p2, std::move(sets));
      const auto rt = harness::codec_roundtrip(inst, inst.points(), cp);
      ++out.runs;
      if (!rt.recovered_ok) ++out.failures;
      std::string key(rt.artifact.bits.bytes().begin(), rt.artifact.bits.bytes().end());
      if (!seen.insert(key + ':' + std::to_string(rt.artifact.total)).second) ++out.collisions;
      audit_ledger(out, rt.artifact, p2.d, p2.d);
      std::size_t pos = 0;
      while (pos < p2.d && ++digit[pos] == subsets.size()) digit[pos++] = 0;
      if (pos == p2.d) break;
    }

    const auto audit = codec::injectivity_audit(p2, cp, 0, 0);
    out.collisions += audit.collisions;
    out.failures += audit.decode_failures;

    testing::Gen g(602);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t l = g.between(2, 4);
      const auto p = instances::InstanceParams::from_l(l, 0.4);
      const auto inst = instances::build_instance(p, g.index(1u << 30));
      const std::size_t k = g.between(16, 64);
      const auto emb = jl::gaussian_projection(inst.points(), {p.d, k, g.index(1u << 30), std::nullopt});
      codec::CodecParams gcp;
      gcp.grid.delta = 0.001;
      gcp.grid.seed = static_cast<std::uint64_t>(trial);
      const auto rt = harness::codec_roundtrip(inst, emb, gcp);
      ++out.runs;
      ++out.gaussian_runs;
      if (rt.gap_condition) {
        ++out.gap_runs;
        if (!rt.recovered_ok) ++out.failures;
      }
      audit_ledger(out, rt.artifact, k, p.d);
    }
    out.secs = seconds_since(t0);
    return out;
  }();
  return cr;
}

Outcome codec_roundtrip() {
  const auto& cr = codec_runs();
  return {cr.failures == 0 && cr.collisions == 0 && cr.secs < 30.0,
          std::to_string(cr.runs - cr.gaussian_runs) + " exhaustive + " + std::to_string(cr.gaussian_runs) +
              " Gaussian runs (" + std::to_string(cr.gap_runs) + " under the gap), " + std::to_string(cr.failures) +
              " failures, " + std::to_string(cr.collisions) + " collisions, " + fmt("%.1f s", cr.secs)};
}

Outcome bit_ledger() {
  const auto& cr = codec_runs();
  return {cr.ledger_breaks == 0, std::to_string(cr.runs) + " runs, " + std::to_string(cr.ledger_breaks) +
                                     " breaks, tightest margin " + fmt("%.1f bits", -cr.worst_margin)};
}

Outcome counting() {
  const auto rows = harness::counting_report(8);
  bool ok = rows.size() == 8;
  for (const auto& r : rows) ok = ok && r.ok;
  return {ok, "l = 1..8, C(16,8)^16 = " + rows.back().family.str()};
}

Outcome composition() {
  testing::Gen g(901);
  std::size_t metric_checks = 0;
  bool ok = true;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = g.between(2, 6);
    const std::size_t m = g.between(1, 30 / n);
    const auto outer = g.metric(n);
    const auto inner = g.metric(m);
    for (double beta : {0.5, 1.0, 2.0}) {
      if (!instances::compose({beta, outer, inner}).is_metric()) ok = false;
      ++metric_checks;
    }
  }

  double worst_identity = 0.0;
  double worst_transfer = -1e300;
  for (std::size_t m : {2u, 3u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const instances::CompositionSpec spec{g.uniform(0.5, 2.0), g.metric(3), g.metric(m)};
      const auto z = instances::compose(spec);
      const auto image = pairwise_distances(g.embedding_of(g.cloud(z.size(), 3), 2, 0.5));
      for (double q : {1.0, 2.0, 3.0}) {
        const auto avg = instances::composition_averaging(spec, image, q);
        worst_identity = std::max(worst_identity, std::abs(avg.selection_mean - avg.cross_pair_mean) /
                                                      std::max(1.0, avg.cross_pair_mean));
        worst_transfer = std::max(worst_transfer, 0.5 * avg.selection_mean - avg.total);
      }
    }
  }
  ok = ok && worst_identity <= 1e-12 && worst_transfer <= 1e-12;
  return {ok, std::to_string(metric_checks) + " metric checks, identity gap " + fmt("%.3g", worst_identity) +
                  ", transfer slack " + fmt("%.3g", -worst_transfer)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"measure oracle equivalence", oracle_equivalence},
      {"chain lq-1 >= rem >= energy", chain},
      {"sigma scale invariance and stress rescaling", sigma_and_rescaling},
      {"JL decay shape", jl_shape},
      {"rounding bounds", rounding},
      {"codec round trip", codec_roundtrip},
      {"bit ledger", bit_ledger},
      {"counting", counting},
      {"composition", composition},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome out;
    try {
      out = check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.pass) ++failures;
    std::printf("%s criterion %d (%s): %s\n", out.pass ? "PASS" : "FAIL", index, name, out.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
