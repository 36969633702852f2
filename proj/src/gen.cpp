#include "seatplan/gen.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "seatplan/eval.hpp"

namespace seatplan {

std::vector<std::vector<int>> PitInstance::adjacency() const {
  std::vector<std::vector<int>> adj(vertices);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= vertices || v < 0 || v >= vertices || u == v)
      throw std::invalid_argument("bad PIT edge");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw std::invalid_argument("parallel PIT edges");
  }
  return adj;
}

int PitInstance::min_degree() const {
  auto adj = adjacency();
  int d = vertices == 0 ? 0 : static_cast<int>(adj[0].size());
  for (const auto& a : adj) d = std::min<int>(d, static_cast<int>(a.size()));
  return d;
}

int PitInstance::max_degree() const {
  auto adj = adjacency();
  int d = 0;
  for (const auto& a : adj) d = std::max<int>(d, static_cast<int>(a.size()));
  return d;
}

namespace {

bool pit_has_edge(const std::vector<std::vector<int>>& adj, int u, int v) {
  return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

std::string pair_tag(int j, int k) {
  return "^{" + std::to_string(j) + "," + std::to_string(k) + "}";
}

// ---------------------------------------------------------------------------
// B-utility EFA family: n 3-cycles plus one star per PIT vertex.

struct BFamilyLayout {
  std::vector<AgentId> p_agent;                               // per vertex
  std::vector<std::map<std::pair<int, int>, AgentId>> q_agent;  // per vertex
  std::vector<std::vector<AgentId>> r_agents;                 // per vertex
  std::vector<VertexId> star_centre;
  std::vector<std::vector<VertexId>> star_leaves;
};

std::pair<GeneratedInstance, BFamilyLayout> build_b_family(const PitInstance& pit) {
  if (pit.vertices <= 0 || pit.vertices % 3 != 0)
    throw std::invalid_argument("PIT vertex count must be a positive multiple of 3");
  if (pit.min_degree() < 2 || pit.max_degree() > 4)
    throw std::invalid_argument("PIT degrees must lie in [2, 4]");
  auto adj = pit.adjacency();
  int nv = pit.vertices;
  int tri = nv / 3;

  BFamilyLayout layout;
  layout.p_agent.resize(nv);
  layout.q_agent.resize(nv);
  layout.r_agents.resize(nv);

  std::vector<std::string> roles;
  for (int i = 0; i < nv; ++i) {
    layout.p_agent[i] = static_cast<AgentId>(roles.size());
    roles.push_back("p_" + std::to_string(i));
  }
  for (int i = 0; i < nv; ++i) {
    for (size_t a = 0; a < adj[i].size(); ++a)
      for (size_t b = a + 1; b < adj[i].size(); ++b) {
        int j = adj[i][a], k = adj[i][b];
        layout.q_agent[i][{j, k}] = static_cast<AgentId>(roles.size());
        roles.push_back("q_" + std::to_string(i) + pair_tag(j, k));
      }
    int r_count = 2 * static_cast<int>(layout.q_agent[i].size()) + 2;
    for (int l = 1; l <= r_count; ++l) {
      layout.r_agents[i].push_back(static_cast<AgentId>(roles.size()));
      roles.push_back("r_" + std::to_string(i) + "^" + std::to_string(l));
    }
  }
  int n = static_cast<int>(roles.size());

  ValuationMatrix vals(n);
  for (AgentId p = 0; p < n; ++p)
    for (AgentId q = 0; q < n; ++q)
      if (p != q) vals.set_value(p, q, Rational(0));
  for (int i = 0; i < nv; ++i) {
    for (const auto& [jk, qa] : layout.q_agent[i]) {
      vals.set_symmetric(layout.p_agent[i], qa, Rational(1));
      auto [j, k] = jk;
      if (pit_has_edge(adj, j, k)) {
        // v_i, v_j, v_k mutually adjacent: link the three q agents.
        vals.set_symmetric(qa, layout.q_agent[j].at({std::min(i, k), std::max(i, k)}),
                           Rational(1));
        vals.set_symmetric(qa, layout.q_agent[k].at({std::min(i, j), std::max(i, j)}),
                           Rational(1));
      }
    }
    for (AgentId ra : layout.r_agents[i]) vals.set_symmetric(layout.p_agent[i], ra, Rational(1));
  }

  SeatGraph g(n);
  for (int t = 0; t < tri; ++t) {
    g.add_edge(3 * t, 3 * t + 1);
    g.add_edge(3 * t + 1, 3 * t + 2);
    g.add_edge(3 * t, 3 * t + 2);
  }
  VertexId next = 3 * tri;
  layout.star_centre.resize(nv);
  layout.star_leaves.resize(nv);
  for (int i = 0; i < nv; ++i) {
    int leaves = static_cast<int>(layout.q_agent[i].size() + layout.r_agents[i].size()) - 1;
    layout.star_centre[i] = next++;
    for (int l = 0; l < leaves; ++l) {
      layout.star_leaves[i].push_back(next);
      g.add_edge(layout.star_centre[i], next++);
    }
  }

  std::vector<std::string> names(roles);
  Instance inst{std::move(names), std::move(vals), std::move(g), UtilityType::B, std::nullopt};
  return {GeneratedInstance{std::move(inst), pit, std::move(roles)}, std::move(layout)};
}

// ---------------------------------------------------------------------------
// W-utility binary EFA family: n 3-cycles plus 3n 2-cycles (K2 components).

struct WBinaryLayout {
  std::vector<AgentId> p_agent, p1_agent, p2_agent;  // per vertex
  std::vector<std::pair<VertexId, VertexId>> two_cycles;
};

std::pair<GeneratedInstance, WBinaryLayout> build_w_binary_family(const PitInstance& pit) {
  if (pit.vertices <= 0 || pit.vertices % 3 != 0)
    throw std::invalid_argument("PIT vertex count must be a positive multiple of 3");
  if (pit.min_degree() < 2) throw std::invalid_argument("PIT minimum degree must be >= 2");
  auto adj = pit.adjacency();
  int nv = pit.vertices;
  int tri = nv / 3;

  WBinaryLayout layout;
  std::vector<std::string> roles;
  for (int i = 0; i < nv; ++i) {
    layout.p_agent.push_back(static_cast<AgentId>(roles.size()));
    roles.push_back("p_" + std::to_string(i));
  }
  for (int i = 0; i < nv; ++i) {
    layout.p1_agent.push_back(static_cast<AgentId>(roles.size()));
    roles.push_back("p_" + std::to_string(i) + "^1");
    layout.p2_agent.push_back(static_cast<AgentId>(roles.size()));
    roles.push_back("p_" + std::to_string(i) + "^2");
  }
  int n = static_cast<int>(roles.size());

  ValuationMatrix vals(n);
  for (AgentId p = 0; p < n; ++p)
    for (AgentId q = 0; q < n; ++q)
      if (p != q) vals.set_value(p, q, Rational(0));
  for (const auto& [u, v] : pit.edges)
    vals.set_symmetric(layout.p_agent[u], layout.p_agent[v], Rational(1));
  for (int i = 0; i < nv; ++i) {
    vals.set_symmetric(layout.p_agent[i], layout.p1_agent[i], Rational(1));
    vals.set_symmetric(layout.p1_agent[i], layout.p2_agent[i], Rational(1));
    vals.set_symmetric(layout.p2_agent[i], layout.p1_agent[(i + 1) % nv], Rational(1));
  }

  SeatGraph g(n);
  for (int t = 0; t < tri; ++t) {
    g.add_edge(3 * t, 3 * t + 1);
    g.add_edge(3 * t + 1, 3 * t + 2);
    g.add_edge(3 * t, 3 * t + 2);
  }
  VertexId next = 3 * tri;
  for (int i = 0; i < nv; ++i) {
    layout.two_cycles.push_back({next, next + 1});
    g.add_edge(next, next + 1);
    next += 2;
  }

  std::vector<std::string> names(roles);
  Instance inst{std::move(names), std::move(vals), std::move(g), UtilityType::W, std::nullopt};
  return {GeneratedInstance{std::move(inst), pit, std::move(roles)}, std::move(layout)};
}

// ---------------------------------------------------------------------------
// W-utility strict EFA family: (n+2) 3-cycles plus 3n 17-cycles.

struct WStrictLayout {
  // P_i blocks in the order relation; exactly 18 agents each.
  std::vector<std::vector<AgentId>> block;               // per vertex, in order
  std::vector<std::map<std::pair<int, int>, AgentId>> p1;  // per vertex: (j,k) -> p_{i,1}^{j,k}
  std::vector<AgentId> s_agents, t_agents;
  std::vector<std::vector<VertexId>> seventeen_cycles;   // traversal per vertex
  int tri = 0;
};

std::pair<GeneratedInstance, WStrictLayout> build_w_strict_family(const PitInstance& pit) {
  if (pit.vertices <= 0 || pit.vertices % 3 != 0)
    throw std::invalid_argument("PIT vertex count must be a positive multiple of 3");
  if (pit.min_degree() < 2 || pit.max_degree() > 4)
    throw std::invalid_argument("PIT degrees must lie in [2, 4]");
  auto adj = pit.adjacency();
  int nv = pit.vertices;
  int tri = nv / 3;

  WStrictLayout layout;
  layout.tri = tri;
  layout.block.resize(nv);
  layout.p1.resize(nv);
  std::vector<std::string> roles;
  std::vector<bool> is_p1, is_p2;  // by agent id, within-block markers

  for (int i = 0; i < nv; ++i) {
    for (size_t a = 0; a < adj[i].size(); ++a)
      for (size_t b = a + 1; b < adj[i].size(); ++b) {
        int j = adj[i][a], k = adj[i][b];
        if (!pit_has_edge(adj, j, k)) continue;  // triple exists only for mutual triangles
        for (int r = 1; r <= 3; ++r) {
          AgentId id = static_cast<AgentId>(roles.size());
          layout.block[i].push_back(id);
          roles.push_back("p_{" + std::to_string(i) + "," + std::to_string(r) + "}" +
                          pair_tag(j, k));
          is_p1.push_back(r == 1);
          is_p2.push_back(r == 2);
          if (r == 1) layout.p1[i][{j, k}] = id;
        }
      }
    int pad = 18 - static_cast<int>(layout.block[i].size());
    if (pad < 0) throw std::logic_error("P_i block exceeds 18 agents");
    for (int l = 1; l <= pad; ++l) {
      layout.block[i].push_back(static_cast<AgentId>(roles.size()));
      roles.push_back("q_" + std::to_string(i) + "^" + std::to_string(l));
      is_p1.push_back(false);
      is_p2.push_back(false);
    }
  }
  for (int i = 1; i <= 3; ++i) {
    layout.s_agents.push_back(static_cast<AgentId>(roles.size()));
    roles.push_back("s_" + std::to_string(i));
  }
  for (int i = 1; i <= 3; ++i) {
    layout.t_agents.push_back(static_cast<AgentId>(roles.size()));
    roles.push_back("t_" + std::to_string(i));
  }
  int n = static_cast<int>(roles.size());

  ValuationMatrix vals(n);
  for (AgentId p = 0; p < n; ++p)
    for (AgentId q = 0; q < n; ++q)
      if (p != q) vals.set_value(p, q, Rational(0));

  // Across-triangle score 3 between the r=1 representatives.
  for (int i = 0; i < nv; ++i)
    for (const auto& [jk, a] : layout.p1[i]) {
      auto [j, k] = jk;
      if (i < j) vals.set_symmetric(a, layout.p1[j].at({std::min(i, k), std::max(i, k)}),
                                    Rational(3));
      if (i < k) vals.set_symmetric(a, layout.p1[k].at({std::min(i, j), std::max(i, j)}),
                                    Rational(3));
    }

  // Within each block: cyclic immediate predecessors score 2; the immediate
  // predecessor within Q_i (the block minus its r=1 agents) of each r=2
  // agent scores 3/2.
  for (int i = 0; i < nv; ++i) {
    const auto& blk = layout.block[i];
    size_t m = blk.size();
    for (size_t a = 0; a < m; ++a) vals.set_symmetric(blk[a], blk[(a + 1) % m], Rational(2));
    std::vector<AgentId> qi;
    for (AgentId a : blk)
      if (!is_p1[a]) qi.push_back(a);
    for (size_t a = 0; a < qi.size(); ++a)
      if (is_p2[qi[a]])
        vals.set_symmetric(qi[a], qi[(a + qi.size() - 1) % qi.size()], Rational(3, 2));
  }

  // S and T enforcement agents.
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      vals.set_symmetric(layout.s_agents[a], layout.s_agents[b], Rational(3));
      vals.set_symmetric(layout.t_agents[a], layout.t_agents[b], Rational(3));
    }
  for (AgentId s : layout.s_agents)
    for (AgentId t : layout.t_agents) vals.set_symmetric(s, t, Rational(2));
  for (AgentId a = 0; a < n; ++a) {
    bool in_st = std::find(layout.s_agents.begin(), layout.s_agents.end(), a) !=
                     layout.s_agents.end() ||
                 std::find(layout.t_agents.begin(), layout.t_agents.end(), a) !=
                     layout.t_agents.end();
    if (in_st) continue;
    for (AgentId s : layout.s_agents) vals.set_symmetric(s, a, Rational(1));
    for (AgentId t : layout.t_agents) vals.set_symmetric(t, a, Rational(-1));
  }

  SeatGraph g(n);
  for (int t = 0; t < tri + 2; ++t) {
    g.add_edge(3 * t, 3 * t + 1);
    g.add_edge(3 * t + 1, 3 * t + 2);
    g.add_edge(3 * t, 3 * t + 2);
  }
  VertexId next = 3 * (tri + 2);
  layout.seventeen_cycles.resize(nv);
  for (int i = 0; i < nv; ++i) {
    for (int l = 0; l < 17; ++l) layout.seventeen_cycles[i].push_back(next + l);
    for (int l = 0; l < 17; ++l) g.add_edge(next + l, next + (l + 1) % 17);
    next += 17;
  }

  std::vector<std::string> names(roles);
  Instance base{std::move(names), std::move(vals), std::move(g), UtilityType::W, std::nullopt};
  Instance strict = perturb_strict(base, make_perturbation_spec(base));
  return {GeneratedInstance{std::move(strict), pit, std::move(roles)}, std::move(layout)};
}

// ---------------------------------------------------------------------------
// Bin Packing preprocessing and 1-D family.

BinPackingInstance preprocess_binpacking(const BinPackingInstance& bp) {
  if (bp.capacity <= 0 || bp.bins <= 0) throw std::invalid_argument("bad Bin Packing instance");
  long total = 0;
  for (long s : bp.sizes) {
    if (s <= 0) throw std::invalid_argument("item sizes must be positive");
    total += s;
  }
  if (total > bp.capacity * bp.bins)
    throw std::invalid_argument("total item size exceeds total bin capacity");
  BinPackingInstance out = bp;
  for (long pad = bp.capacity * bp.bins - total; pad > 0; --pad) out.sizes.push_back(1);
  for (long& s : out.sizes) s *= 2;
  out.capacity *= 2;
  return out;
}

struct BinPackingLayout {
  std::vector<std::vector<AgentId>> item_agents;  // per preprocessed item, in line order
};

std::pair<GeneratedInstance, BinPackingLayout> build_binpacking_family(
    const BinPackingInstance& bp, const Rational& epsilon) {
  BinPackingInstance pre = preprocess_binpacking(bp);
  long n = pre.capacity * pre.bins;
  long s_max = *std::max_element(pre.sizes.begin(), pre.sizes.end());
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (s_max > 2 && epsilon * (s_max - 2) >= 1)
    throw std::invalid_argument("epsilon too large: intra-item gaps reach the inter-item gap");
  if (epsilon * n >= 1)
    throw std::invalid_argument("epsilon too large for the threshold separation");

  BinPackingLayout layout;
  Positions pos;
  std::vector<std::string> roles;
  Rational x(0);
  for (size_t i = 0; i < pre.sizes.size(); ++i) {
    if (i > 0) x += 2;  // inter-item gap
    layout.item_agents.emplace_back();
    for (long l = 1; l <= pre.sizes[i]; ++l) {
      if (l == 2) x += 1;
      if (l > 2) x += 1 + (l - 2) * epsilon;
      layout.item_agents.back().push_back(static_cast<AgentId>(roles.size()));
      roles.push_back("p_" + std::to_string(i) + "^" + std::to_string(l));
      pos.location.push_back(x);
    }
  }
  if (static_cast<long>(roles.size()) != n) throw std::logic_error("agent count mismatch");

  ValuationMatrix vals = valuations_from_positions(pos);
  SeatGraph g(static_cast<int>(n));
  for (long b = 0; b < pre.bins; ++b)
    for (long v = 0; v + 1 < pre.capacity; ++v)
      g.add_edge(static_cast<VertexId>(b * pre.capacity + v),
                 static_cast<VertexId>(b * pre.capacity + v + 1));

  std::vector<std::string> names(roles);
  Instance inst{std::move(names), std::move(vals), std::move(g), UtilityType::B, std::move(pos)};
  return {GeneratedInstance{std::move(inst), pre, std::move(roles)}, std::move(layout)};
}

}  // namespace

GeneratedInstance gen_pit_to_efa_b(const PitInstance& pit) { return build_b_family(pit).first; }

GeneratedInstance gen_pit_to_efa_w_binary(const PitInstance& pit) {
  return build_w_binary_family(pit).first;
}

GeneratedInstance gen_pit_to_efa_w_strict(const PitInstance& pit) {
  return build_w_strict_family(pit).first;
}

Rational default_binpacking_epsilon(const BinPackingInstance& bp) {
  BinPackingInstance pre = preprocess_binpacking(bp);
  long n = pre.capacity * pre.bins;
  return Rational(1, 4 * n * n);
}

GeneratedInstance gen_binpacking_to_1d_b(const BinPackingInstance& bp, const Rational& epsilon) {
  return build_binpacking_family(bp, epsilon).first;
}

PerturbationSpec make_perturbation_spec(const Instance& inst) {
  int n = inst.agent_count();
  if (n < 2) throw std::invalid_argument("perturbation needs at least 2 agents");
  std::set<Rational> values;
  for (AgentId p = 0; p < n; ++p)
    for (AgentId q = 0; q < n; ++q)
      if (p != q) values.insert(inst.valuations.value(p, q));
  Rational gap(1);
  bool have_gap = false;
  for (auto it = values.begin(); std::next(it) != values.end() && it != values.end(); ++it) {
    Rational g = *std::next(it) - *it;
    if (!have_gap || g < gap) gap = g;
    have_gap = true;
  }
  long pairs = static_cast<long>(n) * (n - 1) / 2;
  return PerturbationSpec{gap / (4 * pairs)};
}

Instance perturb_strict(const Instance& inst, const PerturbationSpec& spec) {
  if (!classify_preferences(inst).symmetric)
    throw std::invalid_argument("perturb_strict requires symmetric preferences");
  int n = inst.agent_count();
  long pairs = static_cast<long>(n) * (n - 1) / 2;
  if (spec.delta <= 0) throw std::invalid_argument("delta must be positive");
  // The total perturbation must stay below half the smallest gap between
  // distinct base valuations so no strict base comparison can flip.
  std::set<Rational> values;
  for (AgentId p = 0; p < n; ++p)
    for (AgentId q = p + 1; q < n; ++q) values.insert(inst.valuations.value(p, q));
  for (auto it = values.begin(); it != values.end() && std::next(it) != values.end(); ++it)
    if (spec.delta * pairs >= (*std::next(it) - *it) / 2)
      throw std::invalid_argument("delta too large for the base valuation gaps");

  Instance out = inst;
  long i = 0;
  for (AgentId p = 0; p < n; ++p)
    for (AgentId q = p + 1; q < n; ++q) {
      ++i;
      out.valuations.set_symmetric(p, q, inst.valuations.value(p, q) + i * spec.delta);
    }
  out.positions.reset();  // no longer consistent with any 1-D embedding
  return out;
}

std::optional<TrianglePartition> solve_pit_bruteforce(const PitInstance& pit) {
  if (pit.vertices > 12) throw std::invalid_argument("PIT brute force capped at 12 vertices");
  if (pit.vertices % 3 != 0) return std::nullopt;
  auto adj = pit.adjacency();
  std::vector<bool> used(pit.vertices, false);
  TrianglePartition part;
  std::function<bool()> rec = [&]() {
    int v = -1;
    for (int i = 0; i < pit.vertices; ++i)
      if (!used[i]) {
        v = i;
        break;
      }
    if (v == -1) return true;
    used[v] = true;
    for (size_t a = 0; a < adj[v].size(); ++a)
      for (size_t b = a + 1; b < adj[v].size(); ++b) {
        int j = adj[v][a], k = adj[v][b];
        if (used[j] || used[k] || !pit_has_edge(adj, j, k)) continue;
        used[j] = used[k] = true;
        part.push_back({v, j, k});
        if (rec()) return true;
        part.pop_back();
        used[j] = used[k] = false;
      }
    used[v] = false;
    return false;
  };
  if (rec()) return part;
  return std::nullopt;
}

std::optional<Packing> solve_binpacking_bruteforce(const BinPackingInstance& bp) {
  if (bp.sizes.size() > 10) throw std::invalid_argument("Bin Packing brute force capped at 10 items");
  size_t m = bp.sizes.size();
  std::vector<long> load(bp.bins, 0);
  Packing pack(m, -1);
  std::function<bool(size_t)> rec = [&](size_t item) {
    if (item == m) return true;
    long used_bins = 0;
    for (long b = 0; b < bp.bins; ++b)
      if (load[b] > 0) used_bins = b + 1;
    long limit = std::min<long>(bp.bins, used_bins + 1);  // open bins in order
    for (long b = 0; b < limit; ++b) {
      if (load[b] + bp.sizes[item] > bp.capacity) continue;
      load[b] += bp.sizes[item];
      pack[item] = static_cast<int>(b);
      if (rec(item + 1)) return true;
      load[b] -= bp.sizes[item];
      pack[item] = -1;
    }
    return false;
  };
  if (rec(0)) return pack;
  return std::nullopt;
}

namespace {

TrianglePartition normalize_partition(const PitInstance& pit, const TrianglePartition& part) {
  auto adj = pit.adjacency();
  TrianglePartition sorted;
  std::vector<bool> seen(pit.vertices, false);
  for (auto t : part) {
    std::sort(t.begin(), t.end());
    if (!pit_has_edge(adj, t[0], t[1]) || !pit_has_edge(adj, t[0], t[2]) ||
        !pit_has_edge(adj, t[1], t[2]))
      throw std::invalid_argument("witness triangle is not a triangle of the source");
    for (int v : t) {
      if (v < 0 || v >= pit.vertices || seen[v])
        throw std::invalid_argument("witness is not a partition");
      seen[v] = true;
    }
    sorted.push_back(t);
  }
  if (static_cast<int>(sorted.size() * 3) != pit.vertices)
    throw std::invalid_argument("witness does not cover all vertices");
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

}  // namespace

Arrangement arrangement_from_triangle_partition(const GeneratedInstance& gi,
                                                const TrianglePartition& part) {
  const PitInstance* pit = std::get_if<PitInstance>(&gi.source);
  if (!pit) throw std::invalid_argument("generated instance has no PIT source");
  TrianglePartition sorted = normalize_partition(*pit, part);
  int n = gi.instance.agent_count();
  std::vector<VertexId> seat_of(n, -1);

  bool binary = classify_preferences(gi.instance).binary;
  if (gi.instance.utility == UtilityType::B) {
    auto [gi2, layout] = build_b_family(*pit);
    if (gi2.instance.agent_count() != n) throw std::invalid_argument("instance/source mismatch");
    std::vector<std::pair<int, int>> used(pit->vertices);  // (j,k) per vertex
    for (size_t t = 0; t < sorted.size(); ++t) {
      auto [i, j, k] = std::tuple{sorted[t][0], sorted[t][1], sorted[t][2]};
      seat_of[layout.q_agent[i].at({j, k})] = static_cast<VertexId>(3 * t);
      seat_of[layout.q_agent[j].at({i, k})] = static_cast<VertexId>(3 * t + 1);
      seat_of[layout.q_agent[k].at({i, j})] = static_cast<VertexId>(3 * t + 2);
    }
    for (int i = 0; i < pit->vertices; ++i) {
      seat_of[layout.p_agent[i]] = layout.star_centre[i];
      size_t leaf = 0;
      for (AgentId r : layout.r_agents[i]) seat_of[r] = layout.star_leaves[i][leaf++];
      for (const auto& [jk, qa] : layout.q_agent[i])
        if (seat_of[qa] == -1) seat_of[qa] = layout.star_leaves[i][leaf++];
    }
  } else if (binary) {
    auto [gi2, layout] = build_w_binary_family(*pit);
    if (gi2.instance.agent_count() != n) throw std::invalid_argument("instance/source mismatch");
    for (size_t t = 0; t < sorted.size(); ++t)
      for (int c = 0; c < 3; ++c)
        seat_of[layout.p_agent[sorted[t][c]]] = static_cast<VertexId>(3 * t + c);
    for (int i = 0; i < pit->vertices; ++i) {
      seat_of[layout.p1_agent[i]] = layout.two_cycles[i].first;
      seat_of[layout.p2_agent[i]] = layout.two_cycles[i].second;
    }
  } else {
    auto [gi2, layout] = build_w_strict_family(*pit);
    if (gi2.instance.agent_count() != n) throw std::invalid_argument("instance/source mismatch");
    std::vector<AgentId> removed(pit->vertices, -1);
    for (size_t t = 0; t < sorted.size(); ++t) {
      auto [i, j, k] = std::tuple{sorted[t][0], sorted[t][1], sorted[t][2]};
      AgentId ai = layout.p1[i].at({j, k});
      AgentId aj = layout.p1[j].at({i, k});
      AgentId ak = layout.p1[k].at({i, j});
      seat_of[ai] = static_cast<VertexId>(3 * t);
      seat_of[aj] = static_cast<VertexId>(3 * t + 1);
      seat_of[ak] = static_cast<VertexId>(3 * t + 2);
      removed[i] = ai;
      removed[j] = aj;
      removed[k] = ak;
    }
    for (int c = 0; c < 3; ++c) {
      seat_of[layout.s_agents[c]] = static_cast<VertexId>(3 * layout.tri + c);
      seat_of[layout.t_agents[c]] = static_cast<VertexId>(3 * (layout.tri + 1) + c);
    }
    for (int i = 0; i < pit->vertices; ++i) {
      size_t pos = 0;
      for (AgentId a : layout.block[i]) {
        if (a == removed[i]) continue;
        seat_of[a] = layout.seventeen_cycles[i][pos++];
      }
    }
  }
  return Arrangement(std::move(seat_of));
}

Arrangement arrangement_from_packing(const GeneratedInstance& gi, const Packing& pack) {
  const BinPackingInstance* pre = std::get_if<BinPackingInstance>(&gi.source);
  if (!pre) throw std::invalid_argument("generated instance has no Bin Packing source");
  if (pack.size() != pre->sizes.size())
    throw std::invalid_argument("packing/item count mismatch");
  std::vector<long> load(pre->bins, 0);
  for (size_t i = 0; i < pack.size(); ++i) {
    if (pack[i] < 0 || pack[i] >= pre->bins) throw std::invalid_argument("bad bin index");
    load[pack[i]] += pre->sizes[i];
  }
  for (long l : load)
    if (l > pre->capacity) throw std::invalid_argument("packing exceeds bin capacity");

  // Agents are laid out item by item, so the grouping can be recovered
  // from the stored (preprocessed) sizes alone.
  std::vector<std::vector<AgentId>> item_agents;
  AgentId id = 0;
  for (long s : pre->sizes) {
    item_agents.emplace_back();
    for (long l = 0; l < s; ++l) item_agents.back().push_back(id++);
  }
  if (id != gi.instance.agent_count()) throw std::invalid_argument("instance/source mismatch");

  int n = gi.instance.agent_count();
  std::vector<VertexId> seat_of(n, -1);
  for (long b = 0; b < pre->bins; ++b) {
    VertexId next = static_cast<VertexId>(b * pre->capacity);
    for (size_t i = 0; i < pack.size(); ++i) {
      if (pack[i] != b) continue;
      for (AgentId a : item_agents[i]) seat_of[a] = next++;
    }
  }
  return Arrangement(std::move(seat_of));
}

namespace {

std::vector<int> random_partition(std::mt19937_64& rng, int n, int min_size) {
  std::vector<int> parts;
  int rem = n;
  while (rem > 0) {
    int hi = std::min(rem, min_size + 4);
    std::uniform_int_distribution<int> pick(min_size, hi);
    int size = pick(rng);
    if (rem - size < min_size && rem - size != 0) size = rem;  // avoid an undersized tail
    if (size > rem) size = rem;
    parts.push_back(size);
    rem -= size;
  }
  return parts;
}

}  // namespace

Instance gen_random(const RandomParams& params) {
  int n = params.n;
  if (n <= 0) throw std::invalid_argument("n must be positive");
  std::mt19937_64 rng(params.seed);

  SeatGraph g(n);
  switch (params.graph_class) {
    case RandomGraphClass::Matching: {
      if (n % 2 != 0) throw std::invalid_argument("matching graph needs an even agent count");
      std::vector<VertexId> verts(n);
      std::iota(verts.begin(), verts.end(), 0);
      std::shuffle(verts.begin(), verts.end(), rng);
      for (int i = 0; i < n; i += 2) g.add_edge(verts[i], verts[i + 1]);
      break;
    }
    case RandomGraphClass::Path: {
      int v = 0;
      for (int size : random_partition(rng, n, 1)) {
        for (int i = 1; i < size; ++i) g.add_edge(v + i - 1, v + i);
        v += size;
      }
      break;
    }
    case RandomGraphClass::Cycle: {
      if (n < 3) throw std::invalid_argument("cycle graph needs at least 3 vertices");
      int v = 0;
      for (int size : random_partition(rng, n, 3)) {
        for (int i = 1; i < size; ++i) g.add_edge(v + i - 1, v + i);
        g.add_edge(v, v + size - 1);
        v += size;
      }
      break;
    }
    case RandomGraphClass::StarMix: {
      if (n < 2) throw std::invalid_argument("star mix needs at least 2 vertices");
      int v = 0;
      for (int size : random_partition(rng, n, 2)) {
        for (int i = 1; i < size; ++i) g.add_edge(v, v + i);
        v += size;
      }
      break;
    }
    case RandomGraphClass::Cluster: {
      int v = 0;
      for (int size : random_partition(rng, n, 1)) {
        for (int i = 0; i < size; ++i)
          for (int j = i + 1; j < size; ++j) g.add_edge(v + i, v + j);
        v += size;
      }
      break;
    }
    case RandomGraphClass::Arbitrary: {
      std::bernoulli_distribution flip(0.4);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (flip(rng)) g.add_edge(i, j);
      break;
    }
  }

  ValuationMatrix vals(n);
  std::optional<Positions> positions;
  auto random_value = [&](int lo, int hi) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 3);
    return Rational(num(rng), den(rng));
  };
  switch (params.preference_class) {
    case RandomPreferenceClass::Arbitrary:
      for (AgentId p = 0; p < n; ++p)
        for (AgentId q = 0; q < n; ++q)
          if (p != q) vals.set_value(p, q, random_value(-6, 12));
      break;
    case RandomPreferenceClass::Positive:
      for (AgentId p = 0; p < n; ++p)
        for (AgentId q = 0; q < n; ++q)
          if (p != q) vals.set_value(p, q, random_value(1, 12));
      break;
    case RandomPreferenceClass::Symmetric:
      for (AgentId p = 0; p < n; ++p)
        for (AgentId q = p + 1; q < n; ++q) vals.set_symmetric(p, q, random_value(-6, 12));
      break;
    case RandomPreferenceClass::BinarySymmetric: {
      std::bernoulli_distribution flip(0.5);
      for (AgentId p = 0; p < n; ++p)
        for (AgentId q = p + 1; q < n; ++q)
          vals.set_symmetric(p, q, Rational(flip(rng) ? 1 : 0));
      break;
    }
    case RandomPreferenceClass::StrictSymmetric: {
      // Distinct pair scores give strictness for free.
      long pairs = static_cast<long>(n) * (n - 1) / 2;
      std::vector<long> scores(pairs);
      std::iota(scores.begin(), scores.end(), 1);
      std::shuffle(scores.begin(), scores.end(), rng);
      size_t idx = 0;
      for (AgentId p = 0; p < n; ++p)
        for (AgentId q = p + 1; q < n; ++q) vals.set_symmetric(p, q, Rational(scores[idx++]));
      break;
    }
    case RandomPreferenceClass::OneDimensional: {
      std::vector<long> coords(4L * n);
      std::iota(coords.begin(), coords.end(), 0);
      std::shuffle(coords.begin(), coords.end(), rng);
      Positions pos;
      for (int i = 0; i < n; ++i) pos.location.push_back(Rational(coords[i]));
      vals = valuations_from_positions(pos);
      positions = std::move(pos);
      break;
    }
  }

  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  return Instance{std::move(names), std::move(vals), std::move(g), params.utility,
                  std::move(positions)};
}

}  // namespace seatplan
