#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "lowdim/error.hpp"
#include "lowdim/harness.hpp"

namespace {

using lowdim::harness::Kind;

struct Command {
  Kind kind;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;  // config key -> flag value
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::string copy_to;  // --out target for the primary artifact
};

void add_flag(Command& cmd, const std::string& flag, const std::string& key, const std::string& help) {
  cmd.options.emplace_back(key, cmd.app->add_option(flag, cmd.values[key], help));
}

int exit_code(lowdim::ErrorKind kind) {
  switch (kind) {
    case lowdim::ErrorKind::ConfigError:
    case lowdim::ErrorKind::ParseError:
    case lowdim::ErrorKind::InvalidArgument: return 2;
    case lowdim::ErrorKind::IoError: return 3;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lowdim: average-distortion measures, JL sweeps, hard instances and the counting codec"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string config_path;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed")->capture_default_str();
  auto* out_opt = app.add_option("--out-dir", out_dir, "Directory for generated files")->capture_default_str();
  app.add_option("--config", config_path, "Run an experiment config file")->check(CLI::ExistingFile);
  for (auto* opt : {seed_opt, out_opt}) opt->configurable(false);

  std::vector<Command> commands;
  commands.reserve(8);
  const auto sub = [&](const char* name, Kind kind, const char* help) -> Command& {
    commands.push_back({kind, app.add_subcommand(name, help), {}, {}, {}});
    return commands.back();
  };

  {
    auto& c = sub("measure", Kind::measure, "Evaluate distortion measures of an embedding");
    add_flag(c, "--orig", "orig", "Original points (CSV)");
    add_flag(c, "--emb", "emb", "Embedded points (CSV), same row order");
    add_flag(c, "--measure", "measure", "Measure name or 'all'");
    add_flag(c, "--q", "q", "Moment q >= 1");
    add_flag(c, "--r", "r", "lexpans exponent r >= 1 (sigma only)");
  }
  {
    auto& c = sub("jl-sweep", Kind::jl_sweep, "Measure Gaussian JL embeddings across target dimensions");
    add_flag(c, "--n", "n", "Points per cloud");
    add_flag(c, "--d", "d", "Input dimension");
    add_flag(c, "--k-list", "k_list", "Comma separated target dimensions");
    add_flag(c, "--seeds", "seeds", "Trials per k");
    add_flag(c, "--measure", "measure", "Measure name");
    add_flag(c, "--q", "q", "Moment q >= 1");
  }
  {
    auto& c = sub("instance-gen", Kind::instance_gen, "Draw a hard instance and write it as JSON");
    add_flag(c, "--l", "l", "Subset size (overrides gamma)");
    add_flag(c, "--gamma", "gamma", "Gamma constant");
    add_flag(c, "--eps", "eps", "Distortion parameter in (0, 1)");
    add_flag(c, "--q", "q", "Moment q (selects the q-dependent family)");
    c.app->add_option("--out", c.copy_to, "Also copy the instance JSON here");
  }
  {
    auto& c = sub("compose", Kind::compose, "Build the beta-composition of two metrics");
    add_flag(c, "--outer", "outer", "Outer distance matrix (CSV)");
    add_flag(c, "--inner", "inner", "Inner distance matrix (CSV)");
    add_flag(c, "--beta", "beta", "Composition parameter >= 1/2");
  }
  {
    auto& c = sub("rounding-test", Kind::rounding, "Monte Carlo check of randomized grid rounding");
    add_flag(c, "--n", "n", "Points per trial");
    add_flag(c, "--k", "k", "Dimension");
    add_flag(c, "--delta", "delta", "Grid step");
    add_flag(c, "--r", "r", "Ball radius");
    add_flag(c, "--eta", "eta", "Tail parameter");
    add_flag(c, "--trials", "trials", "Number of trials");
  }
  {
    auto& c = sub("codec-roundtrip", Kind::codec_roundtrip, "Encode an instance through an embedding and decode it");
    add_flag(c, "--instance", "instance", "Instance JSON (default: draw one with --l/--eps)");
    add_flag(c, "--l", "l", "Subset size when drawing an instance");
    add_flag(c, "--eps", "eps", "Distortion parameter when drawing an instance");
    add_flag(c, "--embedding", "embedding", "identity | gaussian:<k>:<seed> | CSV path");
    add_flag(c, "--delta", "delta", "Grid step");
    add_flag(c, "--t", "t", "Bad-budget divisor t > 1");
    add_flag(c, "--theta", "theta", "Decision threshold");
    c.app->add_option("--out", c.copy_to, "Also copy the .lbe bitstring here");
  }
  {
    auto& c = sub("counting", Kind::counting, "Exact family-size counting table");
    add_flag(c, "--l-max", "l_max", "Largest l (at most 8)");
  }
  {
    auto& c = sub("oracle-check", Kind::oracle_check, "Compare the measures against the brute-force oracle");
    add_flag(c, "--instances", "instances", "Random instances");
    add_flag(c, "--n", "n", "Points per instance");
    add_flag(c, "--q", "q", "Moment q");
    add_flag(c, "--r", "r", "lexpans exponent r");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    lowdim::harness::ExperimentConfig cfg;
    const Command* chosen = nullptr;
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) {
        throw lowdim::Error(lowdim::ErrorKind::ConfigError, "--config cannot be combined with a subcommand");
      }
      cfg = lowdim::harness::parse_config_file(config_path);
      if (seed_opt->count() > 0) cfg.seed = seed;
      if (out_opt->count() > 0) cfg.output_path = out_dir;
    } else {
      for (const auto& c : commands) {
        if (c.app->parsed()) chosen = &c;
      }
      if (chosen == nullptr) {
        std::cout << app.help();
        return 0;
      }
      cfg.kind = chosen->kind;
      cfg.seed = seed;
      cfg.output_path = out_dir;
      for (const auto& [key, opt] : chosen->options) {
        if (opt->count() > 0) cfg.parameters[key] = chosen->values.at(key);
      }
    }

    const auto result = lowdim::harness::run(cfg);
    if (chosen != nullptr && !chosen->copy_to.empty()) {
      for (const auto& f : result.files) {
        const auto ext = f.extension();
        if (ext == ".lbe" || (chosen->kind == Kind::instance_gen && ext == ".json")) {
          std::filesystem::copy_file(f, chosen->copy_to, std::filesystem::copy_options::overwrite_existing);
        }
      }
    }
    std::cout << result.summary.dump(2) << '\n';
    return 0;
  } catch (const lowdim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
