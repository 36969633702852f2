#include "seatplan/construct.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "seatplan/eval.hpp"

namespace seatplan {

namespace {

struct ScoredPair {
  AgentId p, q;  // p < q
};

}  // namespace

Arrangement algorithm1(const Instance& inst) {
  if (inst.utility != UtilityType::B)
    throw std::invalid_argument("algorithm1 requires B-utility");
  if (!classify_preferences(inst).symmetric)
    throw std::invalid_argument("algorithm1 requires symmetric preferences");

  const int n = inst.agent_count();
  const SeatGraph& g = inst.seats;

  // All unordered pairs, descending score, ties lexicographic.
  std::vector<ScoredPair> pairs;
  pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (AgentId p = 0; p < n; ++p)
    for (AgentId q = p + 1; q < n; ++q) pairs.push_back({p, q});
  std::stable_sort(pairs.begin(), pairs.end(), [&](const ScoredPair& a, const ScoredPair& b) {
    return inst.valuations.value(a.p, a.q) > inst.valuations.value(b.p, b.q);
  });

  std::vector<VertexId> seat_of(n, -1);
  std::vector<AgentId> agent_at(n, -1);
  std::vector<int> free_deg(n);  // free neighbours per vertex
  for (VertexId v = 0; v < n; ++v) free_deg[v] = g.degree(v);

  auto place = [&](AgentId a, VertexId v) {
    seat_of[a] = v;
    agent_at[v] = a;
    for (VertexId w : g.neighbours(v)) --free_deg[w];
  };
  auto frontier = [&](AgentId a) { return seat_of[a] != -1 && free_deg[seat_of[a]] > 0; };
  auto first_free_neighbour = [&](VertexId v) {
    for (VertexId w : g.neighbours(v))
      if (agent_at[w] == -1) return w;
    return -1;
  };

  size_t pair_cursor = 0;

  // Seats one unassigned agent whose (joint-)favourite among the unassigned
  // agents and the frontier is a frontier agent with a free neighbour.
  // Returns false at fixpoint.
  auto propagate_one = [&]() {
    for (AgentId r = 0; r < n; ++r) {
      if (seat_of[r] != -1) continue;
      bool have_best = false;
      Rational best;
      AgentId target = -1;  // smallest frontier agent among joint favourites
      for (AgentId x = 0; x < n; ++x) {
        if (x == r) continue;
        bool eligible_unassigned = seat_of[x] == -1;
        bool eligible_frontier = frontier(x);
        if (!eligible_unassigned && !eligible_frontier) continue;
        const Rational& s = inst.valuations.value(r, x);
        if (!have_best || s > best) {
          have_best = true;
          best = s;
          target = eligible_frontier ? x : -1;
        } else if (s == best && target == -1 && eligible_frontier) {
          target = x;
        }
      }
      if (target != -1) {
        place(r, first_free_neighbour(seat_of[target]));
        return true;
      }
    }
    return false;
  };

  while (true) {
    // First edge (sorted order) with both endpoints free.
    VertexId u = -1, v = -1;
    for (const auto& [a, b] : g.edges())
      if (agent_at[a] == -1 && agent_at[b] == -1) {
        u = a;
        v = b;
        break;
      }
    if (u == -1) break;
    while (pair_cursor < pairs.size() &&
           (seat_of[pairs[pair_cursor].p] != -1 || seat_of[pairs[pair_cursor].q] != -1))
      ++pair_cursor;
    const auto& [p, q] = pairs[pair_cursor++];
    place(p, u);
    place(q, v);
    while (propagate_one()) {
    }
  }

  // Leftover agents: every free vertex now has a fully seated neighbourhood.
  for (AgentId r = 0; r < n; ++r) {
    if (seat_of[r] != -1) continue;
    VertexId best_v = -1;
    Rational best_u(0);
    for (VertexId v = 0; v < n; ++v) {
      if (agent_at[v] != -1) continue;
      Rational u_here(0);
      bool first = true;
      for (VertexId w : g.neighbours(v)) {
        if (agent_at[w] == -1 || agent_at[w] == r) continue;
        const Rational& s = inst.valuations.value(r, agent_at[w]);
        if (first || s > u_here) u_here = s;
        first = false;
      }
      if (best_v == -1 || u_here > best_u) {
        best_v = v;
        best_u = u_here;
      }
    }
    place(r, best_v);
  }

  return Arrangement(std::move(seat_of));
}

Arrangement oned_consecutive(const Instance& inst) {
  if (!inst.positions) throw std::invalid_argument("oned_consecutive requires positions");
  GraphClass gc = classify_seat_graph(inst.seats);
  for (const auto& c : gc.components)
    if (c.type != ComponentType::Path && c.type != ComponentType::K2 &&
        c.type != ComponentType::Cycle)
      throw std::invalid_argument("oned_consecutive requires a path or cycle seat graph");

  const int n = inst.agent_count();
  std::vector<AgentId> by_position(n);
  std::iota(by_position.begin(), by_position.end(), 0);
  std::stable_sort(by_position.begin(), by_position.end(), [&](AgentId a, AgentId b) {
    return inst.positions->location[a] < inst.positions->location[b];
  });

  std::vector<VertexId> seat_of(n, -1);
  size_t next = 0;
  for (const auto& c : gc.components)
    for (VertexId v : path_or_cycle_traversal(inst.seats, c.vertices))
      seat_of[by_position[next++]] = v;
  return Arrangement(std::move(seat_of));
}

}  // namespace seatplan
