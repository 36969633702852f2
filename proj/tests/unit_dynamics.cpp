#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seatplan/dynamics.hpp"
#include "seatplan/eval.hpp"
#include "seatplan/gen.hpp"

using namespace seatplan;

namespace {

Instance random_symmetric(int n, UtilityType u, std::uint64_t seed) {
  RandomParams params;
  params.n = n;
  params.graph_class = RandomGraphClass::Arbitrary;
  params.preference_class = RandomPreferenceClass::Symmetric;
  params.utility = u;
  params.seed = seed;
  return gen_random(params);
}

}  // namespace

TEST_CASE("W-utility dynamics terminates and improves the score vector") {
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_symmetric(4 + trial % 5, UtilityType::W, 10 + trial);
    int n = inst.agent_count();
    Trace tr = run_swap_dynamics(inst, Arrangement::identity(n),
                                 PairSelectionPolicy::first_by_index(), default_max_steps(n));
    CHECK(tr.terminated);
    CHECK(find_blocking_pairs(inst, tr.final).empty());
    ScoreVector prev = score_vector(inst, tr.initial);
    for (const auto& step : tr.steps) {
      REQUIRE(step.potential_after.has_value());
      const auto& sv = std::get<ScoreVector>(*step.potential_after);
      CHECK(w_better(sv, prev));
      prev = sv;
    }
    CHECK(prev == score_vector(inst, tr.final));
  }
}

TEST_CASE("S-utility dynamics strictly increases welfare") {
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_symmetric(4 + trial % 5, UtilityType::S, 300 + trial);
    int n = inst.agent_count();
    Trace tr = run_swap_dynamics(inst, Arrangement::identity(n),
                                 PairSelectionPolicy::best_improvement(), default_max_steps(n));
    CHECK(tr.terminated);
    Rational prev = welfare(inst, tr.initial);
    for (const auto& step : tr.steps) {
      REQUIRE(step.potential_after.has_value());
      Rational w = std::get<Rational>(*step.potential_after);
      CHECK(w > prev);
      prev = w;
    }
  }
}

TEST_CASE("policies are deterministic under a fixed seed") {
  Instance inst = random_symmetric(7, UtilityType::W, 77);
  auto run = [&](PairSelectionPolicy policy) {
    return run_swap_dynamics(inst, Arrangement::identity(7), policy, default_max_steps(7));
  };
  for (auto policy : {PairSelectionPolicy::first_by_index(),
                      PairSelectionPolicy::best_improvement(), PairSelectionPolicy::random(42)}) {
    Trace a = run(policy);
    Trace b = run(policy);
    CHECK(a.final == b.final);
    CHECK(a.step_count == b.step_count);
  }
}

TEST_CASE("first-by-index picks the lexicographically smallest blocking pair") {
  Instance inst = random_symmetric(8, UtilityType::S, 9);
  Arrangement arr = Arrangement::identity(8);
  auto pairs = find_blocking_pairs(inst, arr);
  if (!pairs.empty()) {
    Trace tr = run_swap_dynamics(inst, arr, PairSelectionPolicy::first_by_index(), 1);
    REQUIRE(!tr.steps.empty());
    CHECK(tr.steps[0].swapped.p == pairs[0].p);
    CHECK(tr.steps[0].swapped.q == pairs[0].q);
  }
}

TEST_CASE("step budget cuts the run off unterminated") {
  // Find an instance that needs at least 2 swaps, then allow only 1.
  for (int seed = 0; seed < 50; ++seed) {
    Instance inst = random_symmetric(8, UtilityType::S, 500 + seed);
    Trace full = run_swap_dynamics(inst, Arrangement::identity(8),
                                   PairSelectionPolicy::first_by_index(), default_max_steps(8));
    if (full.step_count < 2) continue;
    Trace cut = run_swap_dynamics(inst, Arrangement::identity(8),
                                  PairSelectionPolicy::first_by_index(), 1);
    CHECK(!cut.terminated);
    CHECK(cut.step_count == 1);
    return;
  }
  FAIL("no instance requiring 2 swaps found");
}

TEST_CASE("non-symmetric traces carry no potential") {
  RandomParams params;
  params.n = 6;
  params.preference_class = RandomPreferenceClass::Arbitrary;
  params.utility = UtilityType::S;
  params.seed = 3;
  Instance inst = gen_random(params);
  Trace tr = run_swap_dynamics(inst, Arrangement::identity(6),
                               PairSelectionPolicy::first_by_index(), 100);
  for (const auto& step : tr.steps) CHECK(!step.potential_after.has_value());
}
