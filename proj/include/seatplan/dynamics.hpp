#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "seatplan/eval.hpp"
#include "seatplan/model.hpp"

namespace seatplan {

// Welfare for S, score vector for W. For B the welfare of the arrangement is
// recorded as a diagnostic only; no monotonicity is guaranteed for it.
using PotentialSnapshot = std::variant<Rational, ScoreVector>;

PotentialSnapshot potential(const Instance& inst, const Arrangement& arr);

enum class PolicyKind { FirstByIndex, BestImprovement, Random };

struct PairSelectionPolicy {
  PolicyKind kind = PolicyKind::FirstByIndex;
  std::uint64_t seed = 0;  // used by Random only

  static PairSelectionPolicy first_by_index() { return {PolicyKind::FirstByIndex, 0}; }
  static PairSelectionPolicy best_improvement() { return {PolicyKind::BestImprovement, 0}; }
  static PairSelectionPolicy random(std::uint64_t seed) { return {PolicyKind::Random, seed}; }
};

struct TraceStep {
  BlockingPair swapped;
  std::optional<PotentialSnapshot> potential_after;  // absent for non-symmetric instances
};

struct Trace {
  Arrangement initial;
  Arrangement final;
  std::vector<TraceStep> steps;
  bool terminated = false;  // true iff the final arrangement has no blocking pair
  long step_count = 0;
};

inline long default_max_steps(int n) {
  long m = static_cast<long>(n);
  return m * m * m * m;
}

Trace run_swap_dynamics(const Instance& inst, const Arrangement& start,
                        const PairSelectionPolicy& policy, long max_steps);

}  // namespace seatplan
