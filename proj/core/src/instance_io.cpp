#include "lowdim/instance_io.hpp"

#include <cmath>
#include <fstream>

#include "lowdim/error.hpp"

namespace lowdim::instances {

namespace {

nlohmann::json rows_json(const HardInstance& inst, std::size_t first) {
  auto rows = nlohmann::json::array();
  for (std::size_t r = first; r < first + inst.d(); ++r) {
    const auto p = inst.points()[r];
    rows.push_back(std::vector<double>(p.begin(), p.end()));
  }
  return rows;
}

void check_rows(const nlohmann::json& rows, const HardInstance& inst, std::size_t first, const char* block) {
  if (!rows.is_array() || rows.size() != inst.d()) {
    throw Error(ErrorKind::ParseError, std::string("points.") + block + " has the wrong number of rows");
  }
  for (std::size_t i = 0; i < inst.d(); ++i) {
    const auto expected = inst.points()[first + i];
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != expected.size()) {
      throw Error(ErrorKind::ParseError, std::string("points.") + block + " row has the wrong dimension");
    }
    for (std::size_t c = 0; c < expected.size(); ++c) {
      if (std::abs(row[c].get<double>() - expected[c]) > 1e-12) {
        throw Error(ErrorKind::ParseError, std::string("points.") + block + " disagree with params and S_sets");
      }
    }
  }
}

}  // namespace

nlohmann::json to_json(const HardInstance& inst) {
  const auto& p = inst.params();
  nlohmann::json params = {{"eps", p.eps}, {"gamma", p.gamma}, {"l", p.l},
                           {"tau", p.tau}, {"d", p.d},         {"o_scale", p.o_scale}};
  params["q"] = p.q ? nlohmann::json(*p.q) : nlohmann::json(nullptr);

  auto sets = nlohmann::json::array();
  for (const auto& s : inst.index_sets()) {
    auto one_based = nlohmann::json::array();
    for (std::size_t j : s) one_based.push_back(j + 1);
    sets.push_back(one_based);
  }
  return {{"params", params},
          {"S_sets", sets},
          {"points", {{"O", rows_json(inst, 0)}, {"E", rows_json(inst, inst.d())}, {"Y", rows_json(inst, 2 * inst.d())}}}};
}

HardInstance instance_from_json(const nlohmann::json& j) {
  try {
    const auto& pj = j.at("params");
    InstanceParams p;
    p.eps = pj.at("eps").get<double>();
    p.gamma = pj.at("gamma").get<double>();
    if (pj.contains("q") && !pj.at("q").is_null()) p.q = pj.at("q").get<double>();
    p.l = pj.at("l").get<std::size_t>();
    p.tau = pj.at("tau").get<double>();
    p.d = pj.at("d").get<std::size_t>();
    p.o_scale = pj.at("o_scale").get<double>();

    std::vector<IndexSet> sets;
    for (const auto& s : j.at("S_sets")) {
      IndexSet set;
      for (const auto& idx : s) {
        const auto one_based = idx.get<std::size_t>();
        if (one_based == 0) throw Error(ErrorKind::BadIndexSet, "S_sets are 1-based; found index 0");
        set.push_back(one_based - 1);
      }
      sets.push_back(std::move(set));
    }
    HardInstance inst = build_instance(p, std::move(sets));
    if (j.contains("points")) {
      const auto& pts = j.at("points");
      check_rows(pts.at("O"), inst, 0, "O");
      check_rows(pts.at("E"), inst, inst.d(), "E");
      check_rows(pts.at("Y"), inst, 2 * inst.d(), "Y");
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("instance JSON: ") + e.what());
  }
}

void write_instance_json(const std::filesystem::path& path, const HardInstance& inst) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << to_json(inst).dump(1) << '\n';
}

HardInstance read_instance_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

}  // namespace lowdim::instances
