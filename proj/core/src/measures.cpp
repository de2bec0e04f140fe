#include "lowdim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "lowdim/error.hpp"
#include "lowdim/summation.hpp"

namespace lowdim::measures {

namespace {

void validate(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const char* exponent = "q") {
  if (orig.size() != emb.size()) {
    throw Error(ErrorKind::DimensionMismatch, "original has " + std::to_string(orig.size()) +
                                                  " points, embedding has " + std::to_string(emb.size()));
  }
  if (orig.size() < 2) throw Error(ErrorKind::InvalidArgument, "measures need at least two points");
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw Error(ErrorKind::InvalidArgument, std::string(exponent) + " must be a finite real >= 1");
  }
}

double power(double x, double q) {
  if (q == 1.0) return x;
  if (q == 2.0) return x * x;
  return std::pow(x, q);
}

double root(double x, double q) { return q == 1.0 ? x : std::pow(x, 1.0 / q); }

double positive_original(double d, std::size_t i, std::size_t j) {
  if (d == 0.0) {
    throw Error(ErrorKind::ZeroOriginalDistance,
                "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide in the original space");
  }
  return d;
}

void require_nondegenerate(double dhat, std::size_t i, std::size_t j) {
  if (dhat == 0.0) {
    throw Error(ErrorKind::DegeneratePair,
                "embedding maps points " + std::to_string(i) + " and " + std::to_string(j) + " to the same image");
  }
}

CompensatedSum sum_range(const DistanceMatrix& orig, const DistanceMatrix& emb, std::size_t begin, std::size_t end,
                         const auto& term) {
  const std::size_t n = orig.size();
  CompensatedSum acc;
  // Locate the (i, j) of linear pair index `begin`.
  std::size_t i = 0;
  std::size_t skipped = 0;
  while (skipped + (n - 1 - i) <= begin) {
    skipped += n - 1 - i;
    ++i;
  }
  std::size_t j = i + 1 + (begin - skipped);
  for (std::size_t p = begin; p < end; ++p) {
    acc.add(term(i, j, orig(i, j), emb(i, j)));
    if (++j == n) {
      ++i;
      j = i + 1;
    }
  }
  return acc;
}

/// Sum of term(i, j, d, d') over pairs i < j.
double pair_sum(const DistanceMatrix& orig, const DistanceMatrix& emb, const Options& opts, const auto& term) {
  const std::size_t pairs = orig.pair_count();
  const std::size_t chunks = std::clamp<std::size_t>(opts.chunks, 1, std::max<std::size_t>(pairs, 1));
  if (chunks == 1) return sum_range(orig, emb, 0, pairs, term).value();

  std::vector<std::future<CompensatedSum>> parts;
  parts.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = pairs * c / chunks;
    const std::size_t end = pairs * (c + 1) / chunks;
    parts.push_back(std::async(std::launch::async, [&, begin, end] { return sum_range(orig, emb, begin, end, term); }));
  }
  CompensatedSum total;
  for (auto& part : parts) total.merge(part.get());
  return total.value();
}

double pair_mean(const DistanceMatrix& orig, const DistanceMatrix& emb, const Options& opts, const auto& term) {
  return pair_sum(orig, emb, opts, term) / static_cast<double>(orig.pair_count());
}

}  // namespace

std::string_view name(Measure m) noexcept {
  switch (m) {
    case Measure::lq_dist: return "lq_dist";
    case Measure::energy: return "energy";
    case Measure::stress: return "stress";
    case Measure::stress_star: return "stress_star";
    case Measure::rem: return "rem";
    case Measure::sigma: return "sigma";
    case Measure::stress_bar: return "stress_bar";
  }
  return "unknown";
}

std::optional<Measure> parse(std::string_view text) noexcept {
  for (Measure m : kAllMeasures) {
    if (name(m) == text) return m;
  }
  return std::nullopt;
}

double lq_distortion(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts) {
  validate(orig, emb, q);
  const double mean = pair_mean(orig, emb, opts, [q](std::size_t i, std::size_t j, double d, double dhat) {
    positive_original(d, i, j);
    require_nondegenerate(dhat, i, j);
    const double expans = dhat / d;
    return power(std::max(expans, d / dhat), q);
  });
  return root(mean, q);
}

double energy(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts) {
  validate(orig, emb, q);
  const double mean = pair_mean(orig, emb, opts, [q](std::size_t i, std::size_t j, double d, double dhat) {
    return power(std::abs(dhat / positive_original(d, i, j) - 1.0), q);
  });
  return root(mean, q);
}

double stress(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts) {
  validate(orig, emb, q);
  const double num = pair_sum(orig, emb, opts, [q](std::size_t, std::size_t, double d, double dhat) {
    return power(std::abs(dhat - d), q);
  });
  const double den =
      pair_sum(orig, emb, opts, [q](std::size_t, std::size_t, double d, double) { return power(d, q); });
  if (den == 0.0) throw Error(ErrorKind::ZeroDenominator, "all original distances are zero");
  return root(num / den, q);
}

double stress_star(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts) {
  validate(orig, emb, q);
  const double num = pair_sum(orig, emb, opts, [q](std::size_t, std::size_t, double d, double dhat) {
    return power(std::abs(dhat - d), q);
  });
  const double den =
      pair_sum(orig, emb, opts, [q](std::size_t, std::size_t, double, double dhat) { return power(dhat, q); });
  if (den == 0.0) throw Error(ErrorKind::ZeroDenominator, "all embedded distances are zero");
  return root(num / den, q);
}

double rem(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts) {
  validate(orig, emb, q);
  const double mean = pair_mean(orig, emb, opts, [q](std::size_t i, std::size_t j, double d, double dhat) {
    positive_original(d, i, j);
    require_nondegenerate(dhat, i, j);
    return power(std::abs(dhat - d) / std::min(dhat, d), q);
  });
  return root(mean, q);
}

double lexpans(const DistanceMatrix& orig, const DistanceMatrix& emb, double r, const Options& opts) {
  validate(orig, emb, r, "r");
  const double mean = pair_mean(orig, emb, opts, [r](std::size_t i, std::size_t j, double d, double dhat) {
    return power(dhat / positive_original(d, i, j), r);
  });
  return root(mean, r);
}

double sigma_distortion(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, double r,
                        const Options& opts) {
  validate(orig, emb, q);
  const double phi = lexpans(orig, emb, r, opts);
  if (phi == 0.0) throw Error(ErrorKind::ZeroLexpans, "embedding collapses every pair");
  const double mean = pair_mean(orig, emb, opts, [q, phi](std::size_t, std::size_t, double d, double dhat) {
    return power(std::abs((dhat / d) / phi - 1.0), q);
  });
  return root(mean, q);
}

double stress_bar(const DistanceMatrix& orig, const DistanceMatrix& emb, double q, const Options& opts) {
  validate(orig, emb, q);
  // d * |d'/d - 1| = |d' - d|, which stays defined for coincident inputs.
  const double mean = pair_mean(orig, emb, opts, [q](std::size_t, std::size_t, double d, double dhat) {
    return power(std::abs(dhat - d), q);
  });
  return root(mean, q);
}

MeasureReport evaluate(Measure m, const DistanceMatrix& orig, const DistanceMatrix& emb, double q, double r,
                       const Options& opts) {
  MeasureReport report{m, q, r, 0.0, orig.pair_count()};
  switch (m) {
    case Measure::lq_dist: report.value = lq_distortion(orig, emb, q, opts); break;
    case Measure::energy: report.value = energy(orig, emb, q, opts); break;
    case Measure::stress: report.value = stress(orig, emb, q, opts); break;
    case Measure::stress_star: report.value = stress_star(orig, emb, q, opts); break;
    case Measure::rem: report.value = rem(orig, emb, q, opts); break;
    case Measure::sigma: report.value = sigma_distortion(orig, emb, q, r, opts); break;
    case Measure::stress_bar: report.value = stress_bar(orig, emb, q, opts); break;
  }
  return report;
}

ScaleSearch optimal_scale_stress(const DistanceMatrix& orig, const DistanceMatrix& emb, std::span<const double> grid) {
  validate(orig, emb, 1.0);
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "scale grid is empty");
  for (double c : grid) {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::NonpositiveScale, "scale candidates must be positive");
  }
  const Options opts;
  const double den = pair_sum(orig, emb, opts, [](std::size_t, std::size_t, double d, double) { return d; });
  if (den == 0.0) throw Error(ErrorKind::ZeroDenominator, "all original distances are zero");

  ScaleSearch best{grid.front(), 0.0};
  bool first = true;
  for (double c : grid) {
    const double num =
        pair_sum(orig, emb, opts, [c](std::size_t, std::size_t, double d, double dhat) { return std::abs(c * dhat - d); });
    const double value = num / den;
    if (first || value < best.value) {
      best = {c, value};
      first = false;
    }
  }
  return best;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
    throw Error(ErrorKind::InvalidArgument, "log_spaced needs 0 < lo <= hi and count >= 1");
  }
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace lowdim::measures
