#include "bel/measure_io.hpp"

#include <fstream>
#include <sstream>

#include "bel/errors.hpp"
#include "json.hpp"

namespace bel {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw domain_error("invalid measure JSON");
  if (!j.is_object()) throw domain_error("measure JSON must be an object");
  return j;
}

std::vector<Atom> read_atoms(const json& j) {
  if (!j.contains("atoms") || !j["atoms"].is_array())
    throw domain_error("atomic measure JSON needs an \"atoms\" array");
  std::vector<Atom> atoms;
  for (const auto& e : j["atoms"]) {
    if (!e.is_array() || e.size() != 2) throw domain_error("each atom must be [x, w]");
    atoms.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  return atoms;
}

}  // namespace

Measure measure_from_json(const std::string& text) {
  const json j = parse(text);
  const std::string type = j.value("type", "");
  if (type == "atomic") return Measure::atomic(read_atoms(j));
  if (type == "grid") {
    if (!j.contains("x0") || !j.contains("dx") || !j.contains("values"))
      throw domain_error("grid measure JSON needs x0, dx, values");
    return Measure::grid_density(j["x0"].get<double>(), j["dx"].get<double>(),
                                 j["values"].get<std::vector<double>>());
  }
  if (type == "empirical") {
    if (!j.contains("points")) throw domain_error("empirical measure JSON needs points");
    return Measure::empirical(j["points"].get<std::vector<double>>());
  }
  throw domain_error("unknown measure type \"" + type + "\"");
}

std::string measure_to_json(const Measure& m) {
  json j;
  switch (m.kind()) {
    case Measure::Kind::Atomic: {
      j["type"] = "atomic";
      json atoms = json::array();
      for (const Atom& a : m.atoms()) atoms.push_back({a.x, a.w});
      j["atoms"] = std::move(atoms);
      break;
    }
    case Measure::Kind::GridDensity:
      j["type"] = "grid";
      j["x0"] = m.x0();
      j["dx"] = m.dx();
      j["values"] = m.values();
      break;
    case Measure::Kind::Empirical:
      j["type"] = "empirical";
      j["points"] = m.points();
      break;
  }
  return j.dump();
}

Measure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open measure file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return measure_from_json(ss.str());
}

SubMeasure submeasure_from_json(const std::string& text) {
  const json j = parse(text);
  if (j.value("type", "") != "atomic")
    throw domain_error("submeasure JSON must be atomic");
  auto atoms = read_atoms(j);
  return SubMeasure::atomic(std::move(atoms));
}

}  // namespace bel
