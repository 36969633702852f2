#include "seatplan/exact.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace seatplan {

std::string exact_status_name(ExactStatus s) {
  switch (s) {
    case ExactStatus::Found: return "found";
    case ExactStatus::NoneExists: return "none_exists";
    case ExactStatus::Inconclusive: return "inconclusive";
  }
  throw std::logic_error("bad status");
}

namespace {

struct DedupContext {
  // Per component: traversal order and whether it carries a within-component
  // symmetry (path reflection, cycle dihedral).
  struct Comp {
    ComponentType type;
    std::vector<VertexId> traversal;
  };
  std::vector<Comp> comps;
  // Groups of indices into comps holding isomorphic components, in order.
  std::vector<std::vector<int>> iso_groups;
};

DedupContext make_dedup_context(const SeatGraph& g) {
  DedupContext ctx;
  GraphClass gc = classify_seat_graph(g);
  std::map<std::pair<ComponentType, int>, std::vector<int>> groups;
  for (const auto& c : gc.components) {
    DedupContext::Comp comp;
    comp.type = c.type;
    if (c.type == ComponentType::Path || c.type == ComponentType::K2 ||
        c.type == ComponentType::Cycle)
      comp.traversal = path_or_cycle_traversal(g, c.vertices);
    else
      comp.traversal = c.vertices;
    int idx = static_cast<int>(ctx.comps.size());
    ctx.comps.push_back(std::move(comp));
    if (c.type != ComponentType::Other)
      groups[{c.type, c.size}].push_back(idx);
  }
  for (auto& [key, idxs] : groups)
    if (idxs.size() > 1) ctx.iso_groups.push_back(idxs);
  return ctx;
}

// True iff the arrangement is the unique representative of its orbit under
// the safe generators.
bool is_canonical(const DedupContext& ctx, const std::vector<AgentId>& agent_at) {
  for (const auto& comp : ctx.comps) {
    size_t k = comp.traversal.size();
    if (k < 2) continue;
    std::vector<AgentId> reading(k);
    for (size_t i = 0; i < k; ++i) reading[i] = agent_at[comp.traversal[i]];
    if (comp.type == ComponentType::Path || comp.type == ComponentType::K2) {
      std::vector<AgentId> rev(reading.rbegin(), reading.rend());
      if (rev < reading) return false;
    } else if (comp.type == ComponentType::Cycle) {
      std::vector<AgentId> cand(k);
      for (int dir : {1, -1})
        for (size_t r = 0; r < k; ++r) {
          if (dir == 1 && r == 0) continue;  // the identity reading
          for (size_t i = 0; i < k; ++i)
            cand[i] = reading[(r + (dir == 1 ? i : k - i)) % k];
          if (cand < reading) return false;
        }
    }
  }
  for (const auto& group : ctx.iso_groups) {
    AgentId prev_min = -1;
    for (int ci : group) {
      AgentId mn = std::numeric_limits<AgentId>::max();
      for (VertexId v : ctx.comps[ci].traversal) mn = std::min(mn, agent_at[v]);
      if (mn < prev_min) return false;
      prev_min = mn;
    }
  }
  return true;
}

}  // namespace

void enumerate_arrangements(const Instance& inst, bool dedup,
                            const std::function<bool(const Arrangement&)>& visit,
                            bool override_cap) {
  int n = inst.agent_count();
  if (n > kEnumerationCap && !override_cap)
    throw std::invalid_argument("enumeration cap exceeded (pass override to force)");
  DedupContext ctx;
  if (dedup) ctx = make_dedup_context(inst.seats);
  std::vector<AgentId> agent_at(n);
  std::iota(agent_at.begin(), agent_at.end(), 0);
  do {
    if (dedup && !is_canonical(ctx, agent_at)) continue;
    std::vector<VertexId> seat_of(n);
    for (VertexId v = 0; v < n; ++v) seat_of[agent_at[v]] = v;
    if (!visit(Arrangement(std::move(seat_of)))) return;
  } while (std::next_permutation(agent_at.begin(), agent_at.end()));
}

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetTracker {
  const SearchBudget& budget;
  Clock::time_point start = Clock::now();
  long nodes = 0;
  bool exhausted_budget = false;

  bool tick() {
    ++nodes;
    if (nodes > budget.max_nodes) {
      exhausted_budget = true;
      return false;
    }
    if (budget.time_limit_seconds > 0 && (nodes & 0x3ff) == 0 &&
        std::chrono::duration<double>(Clock::now() - start).count() > budget.time_limit_seconds) {
      exhausted_budget = true;
      return false;
    }
    return true;
  }
};

ExactResult optimize_exact(const Instance& inst, const SearchBudget& budget, bool dedup,
                           bool maximize_min, bool override_cap) {
  BudgetTracker tracker{budget};
  ExactResult result;
  enumerate_arrangements(inst, dedup, [&](const Arrangement& arr) {
    if (!tracker.tick()) return false;
    Rational obj = maximize_min ? min_utility(inst, arr) : welfare(inst, arr);
    if (!result.objective || obj > *result.objective) {
      result.objective = obj;
      result.witness = arr;
    }
    return true;
  }, override_cap);
  result.nodes_explored = tracker.nodes;
  if (tracker.exhausted_budget) {
    result.status = ExactStatus::Inconclusive;
    return result;
  }
  result.status = ExactStatus::Found;
  // Witness re-verifies through eval before being returned.
  Rational check =
      maximize_min ? min_utility(inst, *result.witness) : welfare(inst, *result.witness);
  if (check != *result.objective) throw std::logic_error("witness failed re-verification");
  return result;
}

ExactResult search_property(const Instance& inst, const SearchBudget& budget, bool dedup,
                            bool override_cap,
                            const std::function<bool(const Arrangement&)>& property) {
  BudgetTracker tracker{budget};
  ExactResult result;
  enumerate_arrangements(inst, dedup, [&](const Arrangement& arr) {
    if (!tracker.tick()) return false;
    if (property(arr)) {
      result.witness = arr;
      return false;
    }
    return true;
  }, override_cap);
  result.nodes_explored = tracker.nodes;
  if (result.witness) {
    if (!property(*result.witness)) throw std::logic_error("witness failed re-verification");
    result.status = ExactStatus::Found;
  } else {
    result.status = tracker.exhausted_budget ? ExactStatus::Inconclusive : ExactStatus::NoneExists;
  }
  return result;
}

}  // namespace

ExactResult solve_mwa_exact(const Instance& inst, const SearchBudget& budget, bool dedup,
                            bool override_cap) {
  return optimize_exact(inst, budget, dedup, false, override_cap);
}

ExactResult solve_mua_exact(const Instance& inst, const SearchBudget& budget, bool dedup,
                            bool override_cap) {
  return optimize_exact(inst, budget, dedup, true, override_cap);
}

ExactResult find_envy_free_exact(const Instance& inst, const SearchBudget& budget, bool dedup,
                                 bool override_cap) {
  return search_property(inst, budget, dedup, override_cap,
                         [&](const Arrangement& a) { return is_envy_free(inst, a); });
}

ExactResult find_exchange_stable_exact(const Instance& inst, const SearchBudget& budget,
                                       bool dedup, bool override_cap) {
  return search_property(inst, budget, dedup, override_cap,
                         [&](const Arrangement& a) { return is_exchange_stable(inst, a); });
}

namespace {

// Vertex-by-vertex backtracking for the threshold decision problem.
struct ThresholdSearch {
  const Instance& inst;
  const Rational& threshold;
  BudgetTracker tracker;
  std::vector<VertexId> vertex_order;   // connectivity-greedy
  std::vector<AgentId> agent_order;     // decreasing best-pair score
  std::vector<AgentId> agent_at;
  std::vector<VertexId> seat_of;
  std::vector<int> unseated_nbrs;       // per vertex
  std::vector<int> twin_class;          // -1 when the vertex has no twin
  std::vector<std::vector<VertexId>> twin_members;
  std::vector<char> pair_ok;            // value(a, b) >= threshold, row-major
  std::optional<Arrangement> witness;

  ThresholdSearch(const Instance& inst, const Rational& threshold, const SearchBudget& budget)
      : inst(inst), threshold(threshold), tracker{budget} {
    int n = inst.agent_count();

    // Seat the most constrained vertex next: most already-ordered neighbours,
    // ties by degree, then index.
    std::vector<int> ordered_nbrs(n, 0);
    std::vector<bool> placed(n, false);
    for (int step = 0; step < n; ++step) {
      VertexId best = -1;
      for (VertexId v = 0; v < n; ++v) {
        if (placed[v]) continue;
        if (best == -1 || ordered_nbrs[v] > ordered_nbrs[best] ||
            (ordered_nbrs[v] == ordered_nbrs[best] &&
             inst.seats.degree(v) > inst.seats.degree(best)))
          best = v;
      }
      placed[best] = true;
      vertex_order.push_back(best);
      for (VertexId w : inst.seats.neighbours(best)) ++ordered_nbrs[w];
    }

    // Twin vertices (equal neighbourhoods apart from each other) are
    // interchangeable seats; fixing increasing agent ids across each class
    // removes the corresponding permutation symmetry.
    twin_class.assign(n, -1);
    std::map<std::vector<VertexId>, std::vector<VertexId>> open_groups, closed_groups;
    for (VertexId v = 0; v < n; ++v) {
      std::vector<VertexId> open = inst.seats.neighbours(v);
      open_groups[open].push_back(v);
      open.push_back(v);
      std::sort(open.begin(), open.end());
      closed_groups[open].push_back(v);
    }
    for (const auto* groups : {&open_groups, &closed_groups})
      for (const auto& [key, members] : *groups)
        if (members.size() > 1 && twin_class[members.front()] == -1) {
          int cls = static_cast<int>(twin_members.size());
          for (VertexId v : members) twin_class[v] = cls;
          twin_members.push_back(members);
        }

    pair_ok.assign(static_cast<size_t>(n) * n, 0);
    for (AgentId p = 0; p < n; ++p)
      for (AgentId q = 0; q < n; ++q)
        if (p != q && inst.valuations.value(p, q) >= threshold)
          pair_ok[static_cast<size_t>(p) * n + q] = 1;

    agent_order.resize(n);
    std::iota(agent_order.begin(), agent_order.end(), 0);
    std::vector<Rational> best_score(n);
    for (AgentId p = 0; p < n; ++p) {
      bool first = true;
      for (AgentId q = 0; q < n; ++q) {
        if (q == p) continue;
        const Rational& s = inst.valuations.value(p, q);
        if (first || s > best_score[p]) best_score[p] = s;
        first = false;
      }
    }
    if (n > 1)
      std::stable_sort(agent_order.begin(), agent_order.end(),
                       [&](AgentId a, AgentId b) { return best_score[a] > best_score[b]; });
    agent_at.assign(n, -1);
    seat_of.assign(n, -1);
    unseated_nbrs.resize(n);
    for (VertexId v = 0; v < n; ++v) unseated_nbrs[v] = inst.seats.degree(v);
  }

  Rational seated_utility(AgentId p) const {
    const auto& nbrs = inst.seats.neighbours(seat_of[p]);
    if (nbrs.empty()) return Rational(0);
    Rational acc(0);
    bool first = true;
    for (VertexId w : nbrs) {
      const Rational& val = inst.valuations.value(p, agent_at[w]);
      switch (inst.utility) {
        case UtilityType::S: acc += val; break;
        case UtilityType::B: if (first || val > acc) acc = val; break;
        case UtilityType::W: if (first || val < acc) acc = val; break;
      }
      first = false;
    }
    return acc;
  }

  bool ok(AgentId a, AgentId b) const {
    return pair_ok[static_cast<size_t>(a) * inst.agent_count() + b] != 0;
  }

  // Utilities can only be finalized once all of an agent's neighbours are
  // seated; under W-utility a single bad adjacent pair prunes earlier.
  // Twin seats additionally require increasing agent ids.
  bool placement_ok(AgentId a, VertexId v) {
    for (VertexId w : inst.seats.neighbours(v)) {
      AgentId b = agent_at[w];
      if (b == -1) continue;
      if (inst.utility == UtilityType::W && (!ok(a, b) || !ok(b, a))) return false;
    }
    if (twin_class[v] != -1)
      for (VertexId w : twin_members[twin_class[v]]) {
        if (w == v || agent_at[w] == -1) continue;
        if ((w < v) != (agent_at[w] < a)) return false;
      }
    return true;
  }

  bool finalized_below_threshold(VertexId v) {
    return unseated_nbrs[v] == 0 && seated_utility(agent_at[v]) < threshold;
  }

  // An unseated agent with no remaining compatible partner reachable through
  // a free seat can never meet a positive threshold (B and W only; for S the
  // utility is a sum and no single partner decides it).
  bool dead_agent_exists() const {
    if (threshold <= 0 || inst.utility == UtilityType::S) return false;
    int n = inst.agent_count();
    for (AgentId a = 0; a < n; ++a) {
      if (seat_of[a] != -1) continue;
      bool alive = false;
      for (AgentId b = 0; b < n && !alive; ++b) {
        if (b == a || !ok(a, b)) continue;
        if (inst.utility == UtilityType::W && !ok(b, a)) continue;
        alive = seat_of[b] == -1 || unseated_nbrs[seat_of[b]] > 0;
      }
      if (!alive) return true;
    }
    return false;
  }

  // Returns true when a witness has been found.
  bool search(int depth) {
    int n = inst.agent_count();
    if (depth == n) {
      witness = Arrangement(seat_of);
      return true;
    }
    VertexId v = vertex_order[depth];
    for (AgentId a : agent_order) {
      if (seat_of[a] != -1) continue;
      if (!tracker.tick()) return false;
      if (!placement_ok(a, v)) continue;
      agent_at[v] = a;
      seat_of[a] = v;
      for (VertexId w : inst.seats.neighbours(v)) --unseated_nbrs[w];
      bool pruned = finalized_below_threshold(v);
      if (!pruned)
        for (VertexId w : inst.seats.neighbours(v))
          if (agent_at[w] != -1 && finalized_below_threshold(w)) {
            pruned = true;
            break;
          }
      if (!pruned) pruned = dead_agent_exists();
      if (!pruned && search(depth + 1)) return true;
      for (VertexId w : inst.seats.neighbours(v)) ++unseated_nbrs[w];
      agent_at[v] = -1;
      seat_of[a] = -1;
      if (tracker.exhausted_budget) return false;
    }
    return false;
  }
};

ExactResult finish_threshold_result(const Instance& inst, const Rational& threshold,
                                    ThresholdSearch& s, bool found) {
  ExactResult result;
  result.nodes_explored = s.tracker.nodes;
  if (found) {
    if (min_utility(inst, *s.witness) < threshold)
      throw std::logic_error("witness failed re-verification");
    result.status = ExactStatus::Found;
    result.witness = s.witness;
    result.objective = threshold;
  } else {
    result.status =
        s.tracker.exhausted_budget ? ExactStatus::Inconclusive : ExactStatus::NoneExists;
  }
  return result;
}

}  // namespace

ExactResult find_min_utility_at_least(const Instance& inst, const Rational& threshold,
                                      const SearchBudget& budget) {
  ThresholdSearch s(inst, threshold, budget);
  bool found = s.search(0);
  return finish_threshold_result(inst, threshold, s, found);
}

ExactResult find_min_utility_at_least_parallel(const Instance& inst, const Rational& threshold,
                                               const SearchBudget& budget) {
  int n = inst.agent_count();
  if (n == 0) return find_min_utility_at_least(inst, threshold, budget);

  // Fan out over the agent choice for the first vertex. Every branch runs to
  // completion and the merge is by branch index, so the outcome matches the
  // sequential search regardless of interleaving.
  ThresholdSearch proto(inst, threshold, budget);
  VertexId first_vertex = proto.vertex_order[0];
  std::vector<ExactResult> branch_results(n);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int bi = 0; bi < n; ++bi) {
    AgentId a = proto.agent_order[bi];
    ThresholdSearch s(inst, threshold, budget);
    bool found = false;
    if (s.tracker.tick() && s.placement_ok(a, first_vertex)) {
      s.agent_at[first_vertex] = a;
      s.seat_of[a] = first_vertex;
      for (VertexId w : inst.seats.neighbours(first_vertex)) --s.unseated_nbrs[w];
      bool pruned = s.finalized_below_threshold(first_vertex);
      if (!pruned)
        for (VertexId w : inst.seats.neighbours(first_vertex))
          if (s.agent_at[w] != -1 && s.finalized_below_threshold(w)) pruned = true;
      if (!pruned) pruned = s.dead_agent_exists();
      if (!pruned) found = s.search(1);
    }
    branch_results[bi] = finish_threshold_result(inst, threshold, s, found);
  }

  // First decisive branch in order wins, mirroring the sequential scan.
  ExactResult merged;
  merged.status = ExactStatus::NoneExists;
  bool decided = false;
  for (const ExactResult& r : branch_results) {
    merged.nodes_explored += r.nodes_explored;
    if (decided || r.status == ExactStatus::NoneExists) continue;
    merged.status = r.status;
    merged.witness = r.witness;
    merged.objective = r.objective;
    decided = true;
  }
  return merged;
}

}  // namespace seatplan
