#include "seatplan/dynamics.hpp"

#include <random>
#include <stdexcept>

namespace seatplan {

PotentialSnapshot potential(const Instance& inst, const Arrangement& arr) {
  if (!classify_preferences(inst).symmetric)
    throw std::invalid_argument("potential requires symmetric preferences");
  if (inst.utility == UtilityType::W) return score_vector(inst, arr);
  return welfare(inst, arr);
}

namespace {

BlockingPair select_pair(const Instance& inst, const Arrangement& arr,
                         const std::vector<BlockingPair>& pairs,
                         const PairSelectionPolicy& policy, std::mt19937_64& rng) {
  switch (policy.kind) {
    case PolicyKind::FirstByIndex:
      return pairs.front();  // find_blocking_pairs scans in lexicographic order
    case PolicyKind::Random: {
      std::uniform_int_distribution<size_t> pick(0, pairs.size() - 1);
      return pairs[pick(rng)];
    }
    case PolicyKind::BestImprovement: {
      // Largest joint utility gain of the two swapped agents; ties lexicographic.
      size_t best = 0;
      Rational best_gain;
      bool have = false;
      for (size_t i = 0; i < pairs.size(); ++i) {
        const auto& [p, q] = pairs[i];
        Arrangement swapped = swap(arr, p, q);
        Rational gain = utility(inst, swapped, p) - utility(inst, arr, p) +
                        utility(inst, swapped, q) - utility(inst, arr, q);
        if (!have || gain > best_gain) {
          best = i;
          best_gain = gain;
          have = true;
        }
      }
      return pairs[best];
    }
  }
  throw std::logic_error("bad policy");
}

}  // namespace

Trace run_swap_dynamics(const Instance& inst, const Arrangement& start,
                        const PairSelectionPolicy& policy, long max_steps) {
  if (max_steps < 0) throw std::invalid_argument("max_steps must be nonnegative");
  bool symmetric = classify_preferences(inst).symmetric;
  std::mt19937_64 rng(policy.seed);
  Trace trace{start, start, {}, false, 0};
  Arrangement current = start;
  for (long step = 0; step <= max_steps; ++step) {
    auto pairs = find_blocking_pairs(inst, current, PairSearchMode::All);
    if (pairs.empty()) {
      trace.terminated = true;
      break;
    }
    if (step == max_steps) break;
    BlockingPair chosen = select_pair(inst, current, pairs, policy, rng);
    current = swap(current, chosen.p, chosen.q);
    TraceStep ts{chosen, std::nullopt};
    if (symmetric) ts.potential_after = potential(inst, current);
    trace.steps.push_back(std::move(ts));
    ++trace.step_count;
  }
  trace.final = current;
  return trace;
}

}  // namespace seatplan
