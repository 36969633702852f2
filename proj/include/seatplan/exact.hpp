#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "seatplan/eval.hpp"
#include "seatplan/model.hpp"

namespace seatplan {

struct SearchBudget {
  long max_nodes = 50'000'000;
  double time_limit_seconds = 0;  // 0 = no limit

  static SearchBudget unlimited() { return {std::numeric_limits<long>::max(), 0}; }
};

enum class ExactStatus { Found, NoneExists, Inconclusive };

std::string exact_status_name(ExactStatus s);

struct ExactResult {
  ExactStatus status = ExactStatus::Inconclusive;
  std::optional<Arrangement> witness;
  std::optional<Rational> objective;
  long nodes_explored = 0;
};

inline constexpr int kEnumerationCap = 10;

// Yields every arrangement (callback returns false to stop early). With
// dedup, yields one representative per orbit of the safe symmetry generators:
// permutations of isomorphic K2/path/cycle/star/clique components, dihedral
// symmetries of cycles, and reflections of paths.
void enumerate_arrangements(const Instance& inst, bool dedup,
                            const std::function<bool(const Arrangement&)>& visit,
                            bool override_cap = false);

// Serial reference implementations. override_cap lifts the agent-count guard
// on full enumeration; the node budget still applies.
ExactResult solve_mwa_exact(const Instance& inst, const SearchBudget& budget, bool dedup = false,
                            bool override_cap = false);
ExactResult solve_mua_exact(const Instance& inst, const SearchBudget& budget, bool dedup = false,
                            bool override_cap = false);
ExactResult find_envy_free_exact(const Instance& inst, const SearchBudget& budget,
                                 bool dedup = false, bool override_cap = false);
ExactResult find_exchange_stable_exact(const Instance& inst, const SearchBudget& budget,
                                       bool dedup = false, bool override_cap = false);

// Pruned backtracking for the decision form "is there an arrangement with
// min utility >= threshold". Serial reference and OpenMP variant; the
// parallel run fans out over the first-level branches and merges
// deterministically, so both return identical results.
ExactResult find_min_utility_at_least(const Instance& inst, const Rational& threshold,
                                      const SearchBudget& budget);
ExactResult find_min_utility_at_least_parallel(const Instance& inst, const Rational& threshold,
                                               const SearchBudget& budget);

}  // namespace seatplan
