#include "lowdim/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <numbers>
#include <string>
#include <unordered_map>

#include "lowdim/error.hpp"
#include "lowdim/rng.hpp"

namespace lowdim::codec {

using instances::HardInstance;
using instances::IndexSet;
using instances::InstanceParams;

namespace {

unsigned index_width(std::size_t d) { return d <= 1 ? 0U : static_cast<unsigned>(std::bit_width(d - 1)); }

double log2_binomial(std::size_t n, std::size_t k) {
  const auto lg = [](double x) { return std::lgamma(x); };
  return (lg(n + 1.0) - lg(k + 1.0) - lg(static_cast<double>(n - k) + 1.0)) / std::numbers::ln2;
}

grid::GridCode zero_code(const grid::GridParams& gp) {
  grid::GridCode gc;
  gc.delta = gp.delta;
  gc.negative.assign(gp.dim, false);
  gc.magnitude.assign(gp.dim, 0);
  gc.bit_length = grid::encoded_length(gc, gp);
  return gc;
}

}  // namespace

CodecParams CodecParams::moment_case(double tau) {
  CodecParams cp;
  cp.t = tau * tau / 6.0;
  cp.alpha = 1.0 / (12.0 * cp.t);
  cp.beta = 1.0 / (std::numbers::sqrt2 * cp.t);
  cp.validate();
  return cp;
}

void CodecParams::validate() const {
  if (!(t > 1.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "t must exceed 1");
  if (theta && !(*theta > 0.0)) throw Error(ErrorKind::InvalidArgument, "theta must be positive");
  if (theta_err && !(*theta_err > 0.0)) throw Error(ErrorKind::InvalidArgument, "theta_err must be positive");
  if (!(alpha > 0.0) || alpha > 1.0 / 16.0) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1/16]");
  if (!(beta > 0.0)) throw Error(ErrorKind::InvalidArgument, "beta must be positive");
  if (grid.dim == 0) throw Error(ErrorKind::InvalidArgument, "grid dimension must be at least 1");
}

double CodecParams::theta_for(const InstanceParams& p) const {
  return theta ? *theta : 0.5 / std::sqrt(static_cast<double>(p.l));
}

double CodecParams::theta_err_for(const InstanceParams& p) const {
  return theta_err ? *theta_err : theta_for(p);
}

std::size_t CodecParams::bad_budget(std::size_t d) const {
  return static_cast<std::size_t>(std::floor(static_cast<double>(d) / t));
}

bool CodecParams::exact_recovery_guaranteed(const InstanceParams& p) const {
  const double gap = p.membership_value();
  const double th = theta_for(p);
  return theta_err_for(p) <= std::min(th, gap - th);
}

RoundedEmbedding round_embedding(const HardInstance& inst, const PointSet& emb, const CodecParams& cp) {
  cp.validate();
  const std::size_t d = inst.d();
  if (emb.size() != 3 * d) {
    throw Error(ErrorKind::Misalignment,
                "embedding has " + std::to_string(emb.size()) + " rows, instance has " + std::to_string(3 * d));
  }
  if (emb.dim() != cp.grid.dim) {
    throw Error(ErrorKind::DimensionMismatch, "embedding dimension " + std::to_string(emb.dim()) +
                                                  " differs from grid dimension " + std::to_string(cp.grid.dim));
  }
  RoundedEmbedding re;
  re.grid = cp.grid;
  if (cp.fit_radius) {
    double r = 0.0;
    for (std::size_t i = d; i < 3 * d; ++i) r = std::max(r, norm(emb[i]));
    re.grid.radius = r > 0.0 ? r : 1.0;
  }
  re.grid.validate();
  re.e_codes.reserve(d);
  re.y_codes.reserve(d);
  for (std::size_t j = 0; j < d; ++j) re.e_codes.push_back(grid::round_point(emb[inst.e_row(j)], re.grid, inst.e_row(j)));
  for (std::size_t m = 0; m < d; ++m) re.y_codes.push_back(grid::round_point(emb[inst.y_row(m)], re.grid, inst.y_row(m)));
  return re;
}

std::vector<std::size_t> GoodSets::bad_e(std::size_t m) const {
  std::vector<std::size_t> bad;
  const auto& good = good_e[m];
  std::size_t g = 0;
  for (std::size_t j = 0; j < d; ++j) {
    if (g < good.size() && good[g] == j) {
      ++g;
    } else {
      bad.push_back(j);
    }
  }
  return bad;
}

std::size_t GoodSets::good_y_count() const {
  return static_cast<std::size_t>(std::count(good_y.begin(), good_y.end(), true));
}

GoodSets classify_errors(std::vector<double> err, std::size_t d, double theta_err, double t) {
  if (err.size() != d * d) throw Error(ErrorKind::Misalignment, "error matrix must be d x d");
  if (!(t > 1.0)) throw Error(ErrorKind::InvalidArgument, "t must exceed 1");
  const auto budget = static_cast<std::size_t>(std::floor(static_cast<double>(d) / t));
  GoodSets gs;
  gs.d = d;
  gs.err = std::move(err);
  gs.good_y.resize(d);
  gs.good_e.resize(d);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t j = 0; j < d; ++j) {
      if (gs.error(m, j) < theta_err) gs.good_e[m].push_back(j);
    }
    gs.good_y[m] = d - gs.good_e[m].size() <= budget;
  }
  return gs;
}

GoodSets extract_good_sets(const HardInstance& inst, const RoundedEmbedding& re, const CodecParams& cp) {
  const std::size_t d = inst.d();
  if (re.e_codes.size() != d || re.y_codes.size() != d) {
    throw Error(ErrorKind::Misalignment, "rounded embedding does not match the instance size");
  }
  std::vector<double> err(d * d);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t j = 0; j < d; ++j) {
      const double approx = grid::grid_inner_product(re.y_codes[m], re.e_codes[j]);
      err[m * d + j] = std::abs(approx - inner_product(inst.y(m), inst.e(j)));
    }
  }
  return classify_errors(std::move(err), d, cp.theta_err_for(inst.params()), cp.t);
}

GoodSets extract_good_sets(const HardInstance& inst, const PointSet& emb, const CodecParams& cp) {
  return extract_good_sets(inst, round_embedding(inst, emb, cp), cp);
}

CodecArtifact encode_rounded(const HardInstance& inst, const RoundedEmbedding& re, const GoodSets& good,
                             const CodecParams& cp) {
  cp.validate();
  const auto& params = inst.params();
  const std::size_t d = inst.d();
  if (good.d != d || good.good_y.size() != d || good.good_e.size() != d) {
    throw Error(ErrorKind::Misalignment, "good sets do not match the instance size");
  }
  if (re.e_codes.size() != d || re.y_codes.size() != d) {
    throw Error(ErrorKind::Misalignment, "rounded embedding does not match the instance size");
  }
  const auto& gp = re.grid;
  const std::size_t budget = cp.bad_budget(d);
  const unsigned width = index_width(d);

  CodecArtifact art;
  BitLedger& led = art.ledger;
  Bitstring& out = art.bits;

  out.append(params.l, 64);
  out.append(d, 64);
  out.append(gp.seed, 64);
  out.append(std::bit_cast<std::uint64_t>(cp.t), 64);
  out.append(std::bit_cast<std::uint64_t>(cp.theta_for(params)), 64);
  out.append(std::bit_cast<std::uint64_t>(gp.delta), 64);
  out.append(std::bit_cast<std::uint64_t>(gp.radius), 64);
  for (std::size_t m = 0; m < d; ++m) out.push_back(!good.good_y[m]);
  led.header = out.size();

  std::size_t mark = out.size();
  for (std::size_t m = 0; m < d; ++m) {
    if (good.good_y[m]) continue;
    for (std::size_t j = 0; j < d; ++j) out.push_back(inst.contains(m, j));
  }
  led.bad_Y_naive = out.size() - mark;

  std::vector<bool> present(d, false);
  for (std::size_t m = 0; m < d; ++m) {
    if (!good.good_y[m]) continue;
    for (std::size_t j : good.good_e[m]) {
      if (j >= d) throw Error(ErrorKind::Misalignment, "good E index out of range");
      present[j] = true;
    }
  }
  const grid::GridCode zero = zero_code(gp);
  mark = out.size();
  for (std::size_t j = 0; j < d; ++j) grid::encode_grid_point(present[j] ? re.e_codes[j] : zero, gp, out);
  led.E_list = out.size() - mark;

  for (std::size_t m = 0; m < d; ++m) {
    if (!good.good_y[m]) continue;
    const auto bad = good.bad_e(m);
    if (bad.size() > budget || bad.size() > 0xFFFF) {
      throw Error(ErrorKind::BudgetExceeded, "y " + std::to_string(m) + " has " + std::to_string(bad.size()) +
                                                 " bad E points, budget " + std::to_string(budget));
    }
    mark = out.size();
    grid::encode_grid_point(re.y_codes[m], gp, out);
    led.good_Y_codes += out.size() - mark;

    out.append(bad.size(), 16);
    led.header += 16;

    mark = out.size();
    for (std::size_t j : bad) out.append(j, width);
    led.bad_E_indices += out.size() - mark;

    mark = out.size();
    for (std::size_t j : bad) out.push_back(inst.contains(m, j));
    led.explicit_membership += out.size() - mark;

    art.bad_e_combinatorial += log2_binomial(d, bad.size());
    for (std::size_t j : good.good_e[m]) art.max_decoder_error = std::max(art.max_decoder_error, good.error(m, j));
    ++art.good_y;
  }

  art.total = out.size();
  art.grid_bits = grid::grid_bit_length(gp);
  art.paper_bound = length_bound(params, cp, art.grid_bits);
  return art;
}

CodecArtifact encode_instance(const HardInstance& inst, const PointSet& emb, const CodecParams& cp) {
  const auto re = round_embedding(inst, emb, cp);
  return encode_rounded(inst, re, extract_good_sets(inst, re, cp), cp);
}

std::vector<IndexSet> decode_instance(const Bitstring& bits, const CodecParams& cp, const InstanceParams& params) {
  try {
    BitReader in(bits);
    const std::uint64_t l = in.read(64);
    const std::uint64_t d64 = in.read(64);
    const std::uint64_t seed = in.read(64);
    const double t = std::bit_cast<double>(in.read(64));
    const double theta = std::bit_cast<double>(in.read(64));
    const double delta = std::bit_cast<double>(in.read(64));
    const double radius = std::bit_cast<double>(in.read(64));
    if (l != params.l || d64 != params.d) {
      throw Error(ErrorKind::MalformedArtifact, "header l/d disagree with the instance parameters");
    }
    if (!(t > 1.0) || !std::isfinite(t) || !(theta > 0.0) || !std::isfinite(theta)) {
      throw Error(ErrorKind::MalformedArtifact, "header carries an invalid t or theta");
    }
    const std::size_t d = params.d;
    grid::GridParams gp{delta, radius, cp.grid.dim, cp.grid.eta, seed};
    try {
      gp.validate();
    } catch (const Error& e) {
      throw Error(ErrorKind::MalformedArtifact, std::string("header grid: ") + e.what());
    }
    const auto budget = static_cast<std::size_t>(std::floor(static_cast<double>(d) / t));
    const unsigned width = index_width(d);

    std::vector<bool> bad_y(d);
    for (std::size_t m = 0; m < d; ++m) bad_y[m] = in.read_bit();

    std::vector<IndexSet> sets(d);
    for (std::size_t m = 0; m < d; ++m) {
      if (!bad_y[m]) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (in.read_bit()) sets[m].push_back(j);
      }
    }

    std::vector<grid::GridCode> e_codes;
    e_codes.reserve(d);
    for (std::size_t j = 0; j < d; ++j) e_codes.push_back(grid::decode_grid_point(in, gp));

    for (std::size_t m = 0; m < d; ++m) {
      if (bad_y[m]) continue;
      const grid::GridCode y = grid::decode_grid_point(in, gp);
      const auto count = static_cast<std::size_t>(in.read(16));
      if (count > budget) throw Error(ErrorKind::MalformedArtifact, "bad-E count exceeds the budget");
      std::vector<std::size_t> bad(count);
      for (std::size_t c = 0; c < count; ++c) {
        bad[c] = static_cast<std::size_t>(in.read(width));
        if (bad[c] >= d || (c > 0 && bad[c] <= bad[c - 1])) {
          throw Error(ErrorKind::MalformedArtifact, "bad-E indices out of range or not increasing");
        }
      }
      std::vector<bool> member(d, false);
      std::size_t b = 0;
      for (std::size_t j = 0; j < d; ++j) {
        if (b < count && bad[b] == j) {
          ++b;
        } else {
          member[j] = grid::grid_inner_product(e_codes[j], y) > theta;
        }
      }
      for (std::size_t j : bad) member[j] = in.read_bit();
      for (std::size_t j = 0; j < d; ++j) {
        if (member[j]) sets[m].push_back(j);
      }
    }

    if (in.remaining() >= 8) throw Error(ErrorKind::MalformedArtifact, "trailing data after the last record");
    while (in.remaining() > 0) {
      if (in.read_bit()) throw Error(ErrorKind::MalformedArtifact, "nonzero padding bits");
    }
    return sets;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedArtifact) throw;
    throw Error(ErrorKind::MalformedArtifact, e.what());
  }
}

std::vector<IndexSet> decode_instance(const CodecArtifact& art, const CodecParams& cp, const InstanceParams& params) {
  if (art.bits.size() != art.total || art.ledger.sum() != art.total) {
    throw Error(ErrorKind::MalformedArtifact, "artifact ledger does not add up to its bit count");
  }
  return decode_instance(art.bits, cp, params);
}

double length_bound(const InstanceParams& params, const CodecParams& cp, double lg) {
  const double d = static_cast<double>(params.d);
  return d * d * (2.0 + std::log2(std::numbers::e * cp.t)) / cp.t + 2.0 * d * lg;
}

std::optional<double> min_dimension_for_length(double eps, std::size_t l) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  const double c = 16.0 * (10.0 / eps) * (10.0 / eps);
  const double target = static_cast<double>(l) / 5.0;
  const auto f = [c](double k) { return k * std::log2(c / k); };
  double lo = 0.0;
  double hi = c / std::numbers::e;
  if (f(hi) < target) return std::nullopt;
  if (target <= 0.0) return 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double average_case_dimension_bound(double eps, double gamma) {
  return 1.0 / (20.0 * gamma * gamma * (7.0 + std::log2(gamma)) * eps * eps);
}

double moment_case_dimension_bound(double eps, double q, double gamma) {
  return q / (8.0 * gamma * gamma * std::log2(10.0 * gamma) * eps);
}

InjectivityReport injectivity_audit(const InstanceParams& params, const CodecParams& cp_in, std::size_t sample,
                                    std::uint64_t seed) {
  params.validate();
  CodecParams cp = cp_in;
  cp.grid.dim = params.d;

  const auto family = instances::family_size(params.l, params.d);
  InjectivityReport rep;
  rep.exhaustive = family <= 1000000;

  std::unordered_map<std::string, std::vector<IndexSet>> seen_bits;
  std::map<std::vector<IndexSet>, bool> seen_instances;

  const auto visit = [&](const HardInstance& inst) {
    const auto art = encode_instance(inst, inst.points(), cp);
    ++rep.encodings;
    seen_instances.emplace(inst.index_sets(), true);
    if (decode_instance(art, cp, params) != inst.index_sets()) ++rep.decode_failures;
    std::string key(art.bits.bytes().begin(), art.bits.bytes().end());
    key += ':' + std::to_string(art.bits.size());
    const auto [it, inserted] = seen_bits.emplace(std::move(key), inst.index_sets());
    if (!inserted && it->second != inst.index_sets()) ++rep.collisions;
  };

  if (rep.exhaustive) {
    const auto subsets = instances::all_index_sets(params.d, params.l);
    const std::size_t c = subsets.size();
    std::vector<std::size_t> digit(params.d, 0);
    while (true) {
      std::vector<IndexSet> sets(params.d);
      for (std::size_t m = 0; m < params.d; ++m) sets[m] = subsets[digit[m]];
      visit(instances::build_instance(params, std::move(sets)));
      std::size_t pos = 0;
      while (pos < params.d && ++digit[pos] == c) digit[pos++] = 0;
      if (pos == params.d) break;
    }
  } else {
    for (std::size_t s = 0; s < sample; ++s) visit(instances::build_instance(params, derive_seed(seed, s)));
  }
  rep.distinct_instances = seen_instances.size();
  rep.distinct_bitstrings = seen_bits.size();
  return rep;
}

void write_lbe(const std::filesystem::path& path, const Bitstring& bits) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bits.bytes().data()), static_cast<std::streamsize>(bits.bytes().size()));
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

Bitstring read_lbe(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::size_t n = bytes.size() * 8;
  return Bitstring::from_bytes(std::move(bytes), n);
}

}  // namespace lowdim::codec
