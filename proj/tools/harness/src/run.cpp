#include <fstream>

#include "lowdim/csv.hpp"
#include "lowdim/error.hpp"
#include "lowdim/harness.hpp"
#include "lowdim/instance_io.hpp"

namespace lowdim::harness {

namespace {

DistanceMatrix read_distance_source(const std::string& path) {
  return pairwise_distances(read_point_set_csv(std::filesystem::path(path)));
}

std::filesystem::path prepare(const ExperimentConfig& cfg, const std::string& file) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_path, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + cfg.output_path.string() + ": " + ec.message());
  return cfg.output_path / file;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  return out;
}

void write_json(RunResult& res, const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  res.files.push_back(path);
}

measures::Measure measure_key(const ExperimentConfig& cfg, const char* fallback) {
  const std::string name = cfg.text("measure", fallback);
  const auto m = measures::parse(name);
  if (!m) throw Error(ErrorKind::ConfigError, "measure: unknown measure '" + name + "'");
  return *m;
}

std::optional<double> optional_real(const ExperimentConfig& cfg, const std::string& key) {
  if (!cfg.has(key)) return std::nullopt;
  return cfg.real(key, 0.0);
}

instances::InstanceParams instance_params(const ExperimentConfig& cfg) {
  const double eps = cfg.real("eps", 0.1);
  const auto q = optional_real(cfg, "q");
  if (cfg.has("l")) return instances::InstanceParams::from_l(cfg.count("l", 2), eps, q);
  if (q) return instances::InstanceParams::moment_case(eps, *q, cfg.real("gamma", instances::kMomentCaseGamma));
  return instances::InstanceParams::average_case(eps, cfg.real("gamma", instances::kAverageCaseGamma));
}

RunResult run_measure(const ExperimentConfig& cfg) {
  RunResult res;
  const auto orig = read_distance_source(cfg.require("orig"));
  const auto emb = read_distance_source(cfg.require("emb"));
  const double q = cfg.real("q", 1.0);
  const double r = cfg.real("r", 1.0);
  const measures::Options opts{thread_cap()};
  const std::string name = cfg.text("measure", "all");

  const auto report_json = [&](measures::Measure m) {
    const auto rep = measures::evaluate(m, orig, emb, q, r, opts);
    return nlohmann::json{{"measure", measures::name(m)}, {"q", rep.q}, {"r", rep.r}, {"value", rep.value},
                          {"pair_count", rep.pair_count}};
  };
  if (name == "all") {
    res.summary = nlohmann::json::array();
    for (measures::Measure m : measures::kAllMeasures) res.summary.push_back(report_json(m));
  } else {
    res.summary = report_json(measure_key(cfg, "energy"));
  }
  write_json(res, prepare(cfg, "measure.json"), res.summary);
  return res;
}

RunResult run_jl_sweep(const ExperimentConfig& cfg) {
  RunResult res;
  JlSweepParams p;
  p.n = cfg.count("n", p.n);
  p.d = cfg.count("d", p.d);
  p.k_list = cfg.count_list("k_list", p.k_list);
  p.seeds = cfg.count("seeds", p.seeds);
  p.measure = measure_key(cfg, "energy");
  p.q = cfg.real("q", p.q);
  const auto sweep = jl_sweep(p, cfg.seed, thread_cap());

  const auto csv_path = prepare(cfg, "jl_sweep.csv");
  {
    auto out = open_out(csv_path);
    out << "k,seed,value\n";
    for (const auto& row : sweep.rows) out << row.k << ',' << row.seed_index << ',' << format_real(row.value) << '\n';
  }
  res.files.push_back(csv_path);

  auto per_k = nlohmann::json::array();
  for (const auto& pt : sweep.per_k) per_k.push_back({{"k", pt.k}, {"mean", pt.mean}, {"stddev", pt.stddev}});
  res.summary = {{"measure", measures::name(p.measure)}, {"q", p.q},     {"n", p.n},
                 {"d", p.d},                             {"seeds", p.seeds}, {"per_k", per_k},
                 {"loglog_slope", sweep.slope}};
  write_json(res, prepare(cfg, "jl_sweep_summary.json"), res.summary);
  return res;
}

RunResult run_rounding(const ExperimentConfig& cfg) {
  RunResult res;
  RoundingParams p;
  p.n = cfg.count("n", p.n);
  p.k = cfg.count("k", p.k);
  p.delta = cfg.real("delta", p.delta);
  p.r = cfg.real("r", p.r);
  p.eta = cfg.real("eta", p.eta);
  p.trials = cfg.count("trials", p.trials);
  const auto out = rounding_test(p, cfg.seed);
  res.summary = {{"mean_abs_ip_error", out.mean_abs_ip_error},
                 {"bound_3dr", out.bound_3dr},
                 {"tail_fraction", out.tail_fraction},
                 {"tail_bound", out.tail_bound}};
  write_json(res, prepare(cfg, "rounding.json"), res.summary);
  return res;
}

RunResult run_codec(const ExperimentConfig& cfg) {
  RunResult res;
  const auto inst = cfg.has("instance") ? instances::read_instance_json(cfg.require("instance"))
                                        : instances::build_instance(instance_params(cfg), cfg.seed);
  const PointSet emb = make_embedding(inst, cfg.text("embedding", "identity"));
  codec::CodecParams cp;
  cp.t = cfg.real("t", cp.t);
  cp.alpha = 1.0 / (12.0 * cp.t);
  cp.beta = 1.0 / (1.4142135623730951 * cp.t);
  cp.theta = optional_real(cfg, "theta");
  cp.theta_err = optional_real(cfg, "theta_err");
  cp.grid.delta = cfg.real("delta", 0.001);
  cp.grid.seed = cfg.seed;
  const auto rt = codec_roundtrip(inst, emb, cp);
  const auto& art = rt.artifact;
  res.summary = {{"total_bits", art.total},
                 {"ledger", ledger_json(art)},
                 {"paper_bound", art.paper_bound},
                 {"grid_bits", art.grid_bits},
                 {"bad_E_combinatorial_bits", art.bad_e_combinatorial},
                 {"good_y", art.good_y},
                 {"max_decoder_error", art.max_decoder_error},
                 {"recovered_ok", rt.recovered_ok}};
  if (cfg.text("write_lbe", "true") != "false") {
    const auto lbe = prepare(cfg, "codec.lbe");
    codec::write_lbe(lbe, art.bits);
    res.files.push_back(lbe);
  }
  write_json(res, prepare(cfg, "codec_roundtrip.json"), res.summary);
  return res;
}

RunResult run_compose(const ExperimentConfig& cfg) {
  RunResult res;
  instances::CompositionSpec spec{cfg.real("beta", 1.0), read_distance_matrix_csv(std::filesystem::path(cfg.require("outer"))),
                                  read_distance_matrix_csv(std::filesystem::path(cfg.require("inner")))};
  const auto z = instances::compose(spec);
  const auto path = prepare(cfg, "compose.csv");
  {
    auto out = open_out(path);
    write_distance_matrix_csv(out, z);
  }
  res.files.push_back(path);
  res.summary = {{"points", z.size()}, {"beta", spec.beta}, {"gamma_comp", spec.gamma_comp()}, {"metric", z.is_metric()}};
  return res;
}

RunResult run_counting(const ExperimentConfig& cfg) {
  RunResult res;
  const auto rows = counting_report(cfg.count("l_max", 8));
  const auto path = prepare(cfg, "counting.csv");
  res.summary = nlohmann::json::array();
  {
    auto out = open_out(path);
    out << "l,family_size,bound,ok\n";
    for (const auto& row : rows) {
      out << row.l << ',' << row.family.str() << ',' << row.bound.str() << ',' << (row.ok ? "true" : "false") << '\n';
      res.summary.push_back({{"l", row.l}, {"family_size", row.family.str()}, {"bound", row.bound.str()}, {"ok", row.ok}});
    }
  }
  res.files.push_back(path);
  return res;
}

RunResult run_instance_gen(const ExperimentConfig& cfg) {
  RunResult res;
  const auto inst = instances::build_instance(instance_params(cfg), cfg.seed);
  const auto path = prepare(cfg, "instance.json");
  instances::write_instance_json(path, inst);
  res.files.push_back(path);
  const auto& p = inst.params();
  res.summary = {{"l", p.l}, {"d", p.d}, {"eps", p.eps}, {"gamma", p.gamma}, {"points", inst.points().size()},
                 {"path", path.string()}};
  return res;
}

RunResult run_oracle_check(const ExperimentConfig& cfg) {
  RunResult res;
  const auto rep = oracle_check(cfg.count("instances", 100), cfg.count("n", 20), cfg.real("q", 1.0),
                                cfg.real("r", 1.0), cfg.seed);
  res.summary = {{"instances", rep.instances},
                 {"max_relative_error", rep.max_relative_error},
                 {"worst_measure", rep.worst_measure},
                 {"pass", rep.max_relative_error <= 1e-12}};
  write_json(res, prepare(cfg, "oracle_check.json"), res.summary);
  return res;
}

}  // namespace

RunResult run(const ExperimentConfig& config) {
  config.validate();
  switch (config.kind) {
    case Kind::measure: return run_measure(config);
    case Kind::jl_sweep: return run_jl_sweep(config);
    case Kind::rounding: return run_rounding(config);
    case Kind::codec_roundtrip: return run_codec(config);
    case Kind::compose: return run_compose(config);
    case Kind::counting: return run_counting(config);
    case Kind::instance_gen: return run_instance_gen(config);
    case Kind::oracle_check: return run_oracle_check(config);
  }
  throw Error(ErrorKind::ConfigError, "unhandled experiment kind");
}

}  // namespace lowdim::harness
