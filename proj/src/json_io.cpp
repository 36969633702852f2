#include "seatplan/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace seatplan {

namespace {

std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("rational component does not fit in 64 bits");
  return v.convert_to<std::int64_t>();
}

}  // namespace

nlohmann::json rational_to_json(const Rational& q) {
  return nlohmann::json::array({to_int64(numerator(q)), to_int64(denominator(q))});
}

Rational rational_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw std::invalid_argument("rational must be a [numerator, denominator] integer pair");
  std::int64_t num = j[0].get<std::int64_t>();
  std::int64_t den = j[1].get<std::int64_t>();
  if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
  return Rational(num, den);
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["version"] = 1;
  j["utility"] = utility_type_name(inst.utility);
  j["agents"] = inst.agent_names;
  int n = inst.agent_count();
  nlohmann::json vals = nlohmann::json::array();
  for (AgentId p = 0; p < n; ++p)
    for (AgentId q = 0; q < n; ++q)
      vals.push_back(p == q ? nlohmann::json(nullptr)
                            : rational_to_json(inst.valuations.value(p, q)));
  j["valuations"] = std::move(vals);
  if (inst.positions) {
    nlohmann::json pos = nlohmann::json::array();
    for (const Rational& l : inst.positions->location) pos.push_back(rational_to_json(l));
    j["positions"] = std::move(pos);
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : inst.seats.edges()) edges.push_back({u, v});
  j["graph"] = {{"n", inst.seats.vertex_count()}, {"edges", std::move(edges)}};
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("version", 0) != 1)
    throw std::invalid_argument("unsupported instance format version");
  std::vector<std::string> names = j.at("agents").get<std::vector<std::string>>();
  int n = static_cast<int>(names.size());
  const auto& vals = j.at("valuations");
  if (!vals.is_array() || static_cast<int>(vals.size()) != n * n)
    throw std::invalid_argument("valuations must hold n*n entries row-major");
  ValuationMatrix m(n);
  for (AgentId p = 0; p < n; ++p)
    for (AgentId q = 0; q < n; ++q) {
      const auto& cell = vals[static_cast<size_t>(p) * n + q];
      if (p == q) {
        if (!cell.is_null()) throw std::invalid_argument("diagonal entries must be null");
      } else {
        m.set_value(p, q, rational_from_json(cell));
      }
    }
  const auto& jg = j.at("graph");
  SeatGraph g(jg.at("n").get<int>());
  for (const auto& e : jg.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  Instance inst{std::move(names), std::move(m), std::move(g),
                utility_type_from_name(j.at("utility").get<std::string>()), std::nullopt};
  if (j.contains("positions")) {
    Positions pos;
    for (const auto& l : j.at("positions")) pos.location.push_back(rational_from_json(l));
    if (static_cast<int>(pos.location.size()) != n)
      throw std::invalid_argument("positions/agent count mismatch");
    inst.positions = std::move(pos);
  }
  return inst;
}

nlohmann::json arrangement_to_json(const Arrangement& arr) {
  return nlohmann::json{{"seat_of", arr.seats()}};
}

Arrangement arrangement_from_json(const nlohmann::json& j) {
  return Arrangement(j.at("seat_of").get<std::vector<VertexId>>());
}

std::string canonical_dump(const nlohmann::json& j) { return j.dump() + "\n"; }

std::string instance_digest(const Instance& inst) {
  std::string text = canonical_dump(instance_to_json(inst));
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

Instance load_instance(const std::string& path) { return instance_from_json(load_json(path)); }

Arrangement load_arrangement(const std::string& path) {
  return arrangement_from_json(load_json(path));
}

void save_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << canonical_dump(j);
}

}  // namespace seatplan
