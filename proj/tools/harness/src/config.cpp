#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <thread>

#include "lowdim/error.hpp"
#include "lowdim/harness.hpp"

namespace lowdim::harness {

namespace {

constexpr std::pair<Kind, std::string_view> kKindNames[] = {
    {Kind::measure, "measure"},       {Kind::jl_sweep, "jl_sweep"},
    {Kind::rounding, "rounding"},     {Kind::codec_roundtrip, "codec_roundtrip"},
    {Kind::compose, "compose"},       {Kind::counting, "counting"},
    {Kind::instance_gen, "instance_gen"}, {Kind::oracle_check, "oracle_check"},
};

struct KeySpec {
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

KeySpec keys_for(Kind kind) {
  switch (kind) {
    case Kind::measure:
      return {{"orig", "emb"}, {"measure", "q", "r"}};
    case Kind::jl_sweep:
      return {{}, {"n", "d", "k_list", "seeds", "measure", "q"}};
    case Kind::rounding:
      return {{}, {"n", "k", "delta", "r", "eta", "trials"}};
    case Kind::codec_roundtrip:
      return {{}, {"instance", "l", "eps", "q", "embedding", "delta", "t", "theta", "theta_err", "write_lbe"}};
    case Kind::compose:
      return {{"outer", "inner"}, {"beta"}};
    case Kind::counting:
      return {{}, {"l_max"}};
    case Kind::instance_gen:
      return {{}, {"l", "gamma", "eps", "q"}};
    case Kind::oracle_check:
      return {{}, {"instances", "n", "q", "r"}};
  }
  return {};
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw Error(ErrorKind::ConfigError, key + ": expected an unsigned integer, got '" + value + "'");
  return out;
}

}  // namespace

std::string_view kind_name(Kind k) noexcept {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) noexcept {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

std::string ExperimentConfig::text(const std::string& key, const std::string& fallback) const {
  const auto it = parameters.find(key);
  return it == parameters.end() ? fallback : it->second;
}

std::string ExperimentConfig::require(const std::string& key) const {
  const auto it = parameters.find(key);
  if (it == parameters.end()) throw Error(ErrorKind::ConfigError, "missing required key '" + key + "'");
  return it->second;
}

double ExperimentConfig::real(const std::string& key, double fallback) const {
  const auto it = parameters.find(key);
  if (it == parameters.end()) return fallback;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size() || it->second.empty()) {
    throw Error(ErrorKind::ConfigError, key + ": expected a real number, got '" + it->second + "'");
  }
  return v;
}

std::size_t ExperimentConfig::count(const std::string& key, std::size_t fallback) const {
  const auto it = parameters.find(key);
  return it == parameters.end() ? fallback : static_cast<std::size_t>(parse_u64(key, it->second));
}

std::vector<std::size_t> ExperimentConfig::count_list(const std::string& key, std::vector<std::size_t> fallback) const {
  const auto it = parameters.find(key);
  if (it == parameters.end()) return fallback;
  std::vector<std::size_t> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<std::size_t>(parse_u64(key, trim(item))));
  if (out.empty()) throw Error(ErrorKind::ConfigError, key + ": empty list");
  return out;
}

void ExperimentConfig::validate() const {
  const KeySpec spec = keys_for(kind);
  for (const auto& [key, value] : parameters) {
    const bool known = std::find(spec.required.begin(), spec.required.end(), key) != spec.required.end() ||
                       std::find(spec.optional.begin(), spec.optional.end(), key) != spec.optional.end();
    if (!known) {
      throw Error(ErrorKind::ConfigError,
                  "unknown key '" + key + "' for kind " + std::string(kind_name(kind)));
    }
  }
  for (const auto& key : spec.required) require(key);
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  bool have_kind = false;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw Error(ErrorKind::ConfigError, "line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second) throw Error(ErrorKind::ConfigError, "duplicate key '" + key + "'");

    if (key == "kind") {
      const auto k = parse_kind(value);
      if (!k) throw Error(ErrorKind::ConfigError, "kind: unknown experiment kind '" + value + "'");
      cfg.kind = *k;
      have_kind = true;
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, value);
    } else if (key == "output") {
      cfg.output_path = value;
    } else {
      cfg.parameters[key] = value;
    }
  }
  if (!have_kind) throw Error(ErrorKind::ConfigError, "missing required key 'kind'");
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return parse_config(in);
}

std::size_t thread_cap() {
  if (const char* env = std::getenv("LOWDIM_THREADS")) {
    std::size_t v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace lowdim::harness
