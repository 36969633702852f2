#include "seatplan/eval.hpp"

#include <algorithm>
#include <stdexcept>

namespace seatplan {

namespace {

// Utility of p when seated at vertex `seat`, with `moved_from` occupied by
// `other` (the agent p swapped with). Covers both the plain case
// (moved_from = -1) and the lazily-swapped case without materializing the
// swapped arrangement.
Rational utility_at(const Instance& inst, const Arrangement& arr, AgentId p, VertexId seat,
                    VertexId moved_from, AgentId other) {
  const auto& nbrs = inst.seats.neighbours(seat);
  if (nbrs.empty()) return Rational(0);
  bool first = true;
  Rational acc(0);
  for (VertexId v : nbrs) {
    AgentId occupant = (v == moved_from) ? other : arr.agent_at(v);
    const Rational& val = inst.valuations.value(p, occupant);
    switch (inst.utility) {
      case UtilityType::S:
        acc += val;
        break;
      case UtilityType::B:
        if (first || val > acc) acc = val;
        break;
      case UtilityType::W:
        if (first || val < acc) acc = val;
        break;
    }
    first = false;
  }
  return acc;
}

}  // namespace

Rational utility(const Instance& inst, const Arrangement& arr, AgentId p) {
  return utility_at(inst, arr, p, arr.seat_of(p), -1, -1);
}

Rational welfare(const Instance& inst, const Arrangement& arr) {
  Rational sum(0);
  for (AgentId p = 0; p < inst.agent_count(); ++p) sum += utility(inst, arr, p);
  return sum;
}

Rational min_utility(const Instance& inst, const Arrangement& arr) {
  Rational best = utility(inst, arr, 0);
  for (AgentId p = 1; p < inst.agent_count(); ++p) {
    Rational u = utility(inst, arr, p);
    if (u < best) best = u;
  }
  return best;
}

bool envies(const Instance& inst, const Arrangement& arr, AgentId p, AgentId q) {
  if (p == q) throw std::invalid_argument("an agent cannot envy itself");
  Rational now = utility(inst, arr, p);
  Rational after = utility_at(inst, arr, p, arr.seat_of(q), arr.seat_of(p), q);
  return after > now;  // ties are not envy
}

std::vector<BlockingPair> find_blocking_pairs(const Instance& inst, const Arrangement& arr,
                                              PairSearchMode mode) {
  std::vector<BlockingPair> out;
  int n = inst.agent_count();
  for (AgentId p = 0; p < n; ++p) {
    for (AgentId q = p + 1; q < n; ++q) {
      if (envies(inst, arr, p, q) && envies(inst, arr, q, p)) {
        out.push_back({p, q});
        if (mode == PairSearchMode::First) return out;
      }
    }
  }
  return out;
}

bool is_envy_free(const Instance& inst, const Arrangement& arr) {
  int n = inst.agent_count();
  for (AgentId p = 0; p < n; ++p)
    for (AgentId q = 0; q < n; ++q)
      if (p != q && envies(inst, arr, p, q)) return false;
  return true;
}

bool is_exchange_stable(const Instance& inst, const Arrangement& arr) {
  return find_blocking_pairs(inst, arr, PairSearchMode::First).empty();
}

std::vector<Rational> score_levels(const Instance& inst) {
  if (!classify_preferences(inst).symmetric)
    throw std::invalid_argument("score levels require symmetric preferences");
  std::vector<Rational> levels;
  int n = inst.agent_count();
  for (AgentId p = 0; p < n; ++p)
    for (AgentId q = p + 1; q < n; ++q) levels.push_back(inst.valuations.value(p, q));
  std::sort(levels.begin(), levels.end(), std::greater<Rational>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

ScoreVector score_vector(const Instance& inst, const Arrangement& arr) {
  ScoreVector sv;
  sv.levels = score_levels(inst);
  sv.counts.assign(sv.levels.size(), 0);
  for (const auto& [u, v] : inst.seats.edges()) {
    const Rational& s = inst.valuations.value(arr.agent_at(u), arr.agent_at(v));
    auto it = std::lower_bound(sv.levels.begin(), sv.levels.end(), s, std::greater<Rational>());
    ++sv.counts[static_cast<size_t>(it - sv.levels.begin())];
  }
  return sv;
}

bool w_better(const ScoreVector& a, const ScoreVector& b) {
  if (a.levels != b.levels) throw std::invalid_argument("score vectors over different levels");
  for (size_t i = a.counts.size(); i-- > 0;) {
    if (a.counts[i] != b.counts[i]) return a.counts[i] < b.counts[i];
  }
  return false;
}

}  // namespace seatplan
