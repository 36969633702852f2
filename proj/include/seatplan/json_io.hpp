#pragma once

#include <string>

#include <json.hpp>

#include "seatplan/model.hpp"

namespace seatplan {

// Canonical instance format, version 1:
// { "version": 1, "utility": "B"|"S"|"W", "agents": [...],
//   "valuations": [[num,den],...] row-major with null diagonal,
//   "positions": [[num,den],...] optional,
//   "graph": {"n": int, "edges": [[u,v],...]} }
// Rationals are [numerator, denominator] pairs; den <= 0 is rejected.

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json arrangement_to_json(const Arrangement& arr);
Arrangement arrangement_from_json(const nlohmann::json& j);

// Canonical serialization: sorted keys, compact separators, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

// FNV-1a over the canonical dump; used as the instance digest in reports.
std::string instance_digest(const Instance& inst);

Instance load_instance(const std::string& path);
Arrangement load_arrangement(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

}  // namespace seatplan
