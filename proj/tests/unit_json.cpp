#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seatplan/gen.hpp"
#include "seatplan/json_io.hpp"

using namespace seatplan;
using nlohmann::json;

TEST_CASE("rational serialization") {
  CHECK(rational_to_json(Rational(-3, 4)) == json::array({-3, 4}));
  CHECK(rational_from_json(json::array({6, 4})) == Rational(3, 2));
  CHECK_THROWS(rational_from_json(json::array({1, 0})));
  CHECK_THROWS(rational_from_json(json::array({1, -2})));
  CHECK_THROWS(rational_from_json(json::array({1})));
}

TEST_CASE("instance round trip is canonical") {
  for (int trial = 0; trial < 40; ++trial) {
    RandomParams params;
    params.n = 2 + trial % 7;
    params.graph_class = static_cast<RandomGraphClass>(trial % 6);
    params.preference_class = static_cast<RandomPreferenceClass>(trial % 6);
    params.utility = static_cast<UtilityType>(trial % 3);
    params.seed = trial;
    if (params.graph_class == RandomGraphClass::Matching && params.n % 2 != 0) params.n += 1;
    if (params.graph_class == RandomGraphClass::Cycle && params.n < 3) params.n += 3;
    Instance inst = gen_random(params);
    json j = instance_to_json(inst);
    Instance back = instance_from_json(j);
    CHECK(canonical_dump(instance_to_json(back)) == canonical_dump(j));
    CHECK(instance_digest(back) == instance_digest(inst));
    CHECK(back.agent_count() == inst.agent_count());
    CHECK(back.seats.edges() == inst.seats.edges());
    CHECK(back.utility == inst.utility);
    for (AgentId p = 0; p < inst.agent_count(); ++p)
      for (AgentId q = 0; q < inst.agent_count(); ++q)
        if (p != q) CHECK(back.valuations.value(p, q) == inst.valuations.value(p, q));
    CHECK(back.positions.has_value() == inst.positions.has_value());
  }
}

TEST_CASE("arrangement round trip") {
  Arrangement arr({2, 0, 1});
  json j = arrangement_to_json(arr);
  CHECK(j == json{{"seat_of", {2, 0, 1}}});
  CHECK(arrangement_from_json(j) == arr);
  CHECK_THROWS(arrangement_from_json(json{{"seat_of", {0, 0, 1}}}));
}

TEST_CASE("malformed instances are rejected") {
  RandomParams params;
  params.n = 3;
  params.seed = 0;
  json good = instance_to_json(gen_random(params));

  json bad = good;
  bad["version"] = 2;
  CHECK_THROWS(instance_from_json(bad));

  bad = good;
  bad["valuations"][0][0] = json::array({1, 1});  // diagonal must be null
  CHECK_THROWS(instance_from_json(bad));

  bad = good;
  bad["valuations"][0][1] = json::array({1, -1});
  CHECK_THROWS(instance_from_json(bad));

  bad = good;
  bad["graph"]["edges"].push_back(json::array({0, 99}));
  CHECK_THROWS(instance_from_json(bad));

  bad = good;
  bad["utility"] = "X";
  CHECK_THROWS(instance_from_json(bad));

  bad = good;
  bad["agents"].erase(0);
  CHECK_THROWS(instance_from_json(bad));
}

TEST_CASE("digest distinguishes instances") {
  RandomParams params;
  params.n = 5;
  params.seed = 1;
  Instance a = gen_random(params);
  params.seed = 2;
  Instance b = gen_random(params);
  CHECK(instance_digest(a) != instance_digest(b));
}
