#pragma once

#include <vector>

#include "seatplan/model.hpp"

namespace seatplan {

// Descending score levels of the instance with, per level, the number of
// seat-graph edges whose endpoint agents form a pair of that score.
// Levels cover all distinct pair scores, so vectors from different
// arrangements of the same instance are directly comparable.
struct ScoreVector {
  std::vector<Rational> levels;  // descending
  std::vector<long> counts;      // same length; sums to |E|

  bool operator==(const ScoreVector& other) const {
    return levels == other.levels && counts == other.counts;
  }
};

struct BlockingPair {
  AgentId p, q;  // p < q
};

enum class PairSearchMode { First, All };

Rational utility(const Instance& inst, const Arrangement& arr, AgentId p);
Rational welfare(const Instance& inst, const Arrangement& arr);
Rational min_utility(const Instance& inst, const Arrangement& arr);

bool envies(const Instance& inst, const Arrangement& arr, AgentId p, AgentId q);

std::vector<BlockingPair> find_blocking_pairs(const Instance& inst, const Arrangement& arr,
                                              PairSearchMode mode = PairSearchMode::All);

bool is_envy_free(const Instance& inst, const Arrangement& arr);
bool is_exchange_stable(const Instance& inst, const Arrangement& arr);

// All distinct pair scores, descending. Requires symmetric preferences.
std::vector<Rational> score_levels(const Instance& inst);
ScoreVector score_vector(const Instance& inst, const Arrangement& arr);

// Strict order: a is w-better than b if at the lowest differing score level
// a has strictly fewer edges.
bool w_better(const ScoreVector& a, const ScoreVector& b);

}  // namespace seatplan
