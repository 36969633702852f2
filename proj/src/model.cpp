#include "seatplan/model.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace seatplan {

std::string utility_type_name(UtilityType u) {
  switch (u) {
    case UtilityType::B: return "B";
    case UtilityType::S: return "S";
    case UtilityType::W: return "W";
  }
  throw std::logic_error("bad utility type");
}

UtilityType utility_type_from_name(const std::string& name) {
  if (name == "B") return UtilityType::B;
  if (name == "S") return UtilityType::S;
  if (name == "W") return UtilityType::W;
  throw std::invalid_argument("unknown utility type: " + name);
}

void ValuationMatrix::check_pair(AgentId p, AgentId q) const {
  if (p < 0 || p >= n_ || q < 0 || q >= n_)
    throw std::out_of_range("agent index out of range");
  if (p == q) throw std::invalid_argument("valuation of an agent for itself is undefined");
}

SeatGraph::SeatGraph(int n, const std::vector<std::pair<VertexId, VertexId>>& edges)
    : SeatGraph(n) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void SeatGraph::add_edge(VertexId u, VertexId v) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) throw std::out_of_range("vertex out of range");
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (u > v) std::swap(u, v);
  if (has_edge(u, v)) throw std::invalid_argument("parallel edges are not allowed");
  auto pos = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
  edges_.insert(pos, {u, v});
  adjacency_[u].insert(std::lower_bound(adjacency_[u].begin(), adjacency_[u].end(), v), v);
  adjacency_[v].insert(std::lower_bound(adjacency_[v].begin(), adjacency_[v].end(), u), u);
}

bool SeatGraph::has_edge(VertexId u, VertexId v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

std::vector<std::vector<VertexId>> SeatGraph::components() const {
  std::vector<int> comp(n_, -1);
  std::vector<std::vector<VertexId>> out;
  for (VertexId start = 0; start < n_; ++start) {
    if (comp[start] != -1) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<VertexId> stack{start};
    comp[start] = id;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (VertexId w : adjacency_[v]) {
        if (comp[w] == -1) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

std::string component_type_name(ComponentType t) {
  switch (t) {
    case ComponentType::K2: return "K2";
    case ComponentType::Path: return "path";
    case ComponentType::Cycle: return "cycle";
    case ComponentType::Star: return "star";
    case ComponentType::Clique: return "clique";
    case ComponentType::Other: return "other";
  }
  throw std::logic_error("bad component type");
}

Rational Positions::span() const {
  if (location.empty()) return Rational(0);
  auto [mn, mx] = std::minmax_element(location.begin(), location.end());
  return *mx - *mn;
}

bool Positions::unique() const {
  std::vector<Rational> sorted = location;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

Arrangement::Arrangement(std::vector<VertexId> seat_of) : seat_of_(std::move(seat_of)) {
  int n = static_cast<int>(seat_of_.size());
  agent_at_.assign(n, -1);
  for (AgentId p = 0; p < n; ++p) {
    VertexId v = seat_of_[p];
    if (v < 0 || v >= n) throw std::invalid_argument("seat index out of range");
    if (agent_at_[v] != -1) throw std::invalid_argument("arrangement is not a bijection");
    agent_at_[v] = p;
  }
}

Arrangement Arrangement::identity(int n) {
  std::vector<VertexId> seats(n);
  std::iota(seats.begin(), seats.end(), 0);
  return Arrangement(std::move(seats));
}

Arrangement swap(const Arrangement& arr, AgentId p, AgentId q) {
  if (p == q) throw std::invalid_argument("cannot swap an agent with itself");
  std::vector<VertexId> seats = arr.seats();
  std::swap(seats[p], seats[q]);
  return Arrangement(std::move(seats));
}

ValuationMatrix valuations_from_positions(const Positions& pos) {
  int n = static_cast<int>(pos.location.size());
  if (n < 2) throw std::invalid_argument("positions require at least 2 agents");
  Rational span = pos.span();
  ValuationMatrix m(n);
  for (AgentId p = 0; p < n; ++p) {
    for (AgentId q = p + 1; q < n; ++q) {
      Rational d = pos.location[p] - pos.location[q];
      if (d < 0) d = -d;
      m.set_symmetric(p, q, span - d + 1);
    }
  }
  return m;
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  int n = inst.agent_count();
  if (n != inst.valuations.size())
    report.violations.push_back("agent/valuation matrix size mismatch");
  if (n != inst.seats.vertex_count())
    report.violations.push_back("agent/vertex count mismatch");
  if (inst.positions) {
    if (static_cast<int>(inst.positions->location.size()) != n) {
      report.violations.push_back("positions/agent count mismatch");
    } else if (n >= 2 && n == inst.valuations.size()) {
      ValuationMatrix derived = valuations_from_positions(*inst.positions);
      for (AgentId p = 0; p < n; ++p)
        for (AgentId q = 0; q < n; ++q)
          if (p != q && derived.value(p, q) != inst.valuations.value(p, q)) {
            report.violations.push_back(
                "valuations inconsistent with positions at pair (" + std::to_string(p) +
                "," + std::to_string(q) + ")");
            return report;
          }
    } else if (n < 2) {
      report.violations.push_back("positions require at least 2 agents");
    }
  }
  return report;
}

std::vector<VertexId> path_or_cycle_traversal(const SeatGraph& g,
                                              const std::vector<VertexId>& component) {
  if (component.size() <= 1) return component;
  VertexId start = -1;
  for (VertexId v : component)
    if (g.degree(v) <= 1) {
      start = v;
      break;
    }
  if (start == -1) start = component.front();  // cycle
  std::vector<VertexId> order{start};
  VertexId prev = -1, cur = start;
  while (order.size() < component.size()) {
    VertexId next = -1;
    for (VertexId w : g.neighbours(cur))
      if (w != prev) {
        next = w;
        break;
      }
    prev = cur;
    cur = next;
    order.push_back(cur);
  }
  return order;
}

PreferenceClass classify_preferences(const Instance& inst) {
  PreferenceClass c;
  int n = inst.agent_count();
  c.nonnegative = true;
  c.positive = true;
  c.binary = true;
  c.symmetric = true;
  c.strict = true;
  for (AgentId p = 0; p < n; ++p) {
    for (AgentId q = 0; q < n; ++q) {
      if (p == q) continue;
      const Rational& v = inst.valuations.value(p, q);
      if (v < 0) c.nonnegative = false;
      if (v <= 0) c.positive = false;
      if (v != 0 && v != 1) c.binary = false;
      if (q > p && v != inst.valuations.value(q, p)) c.symmetric = false;
      for (AgentId r = q + 1; r < n; ++r)
        if (r != p && v == inst.valuations.value(p, r)) c.strict = false;
    }
  }
  c.one_dimensional = false;
  if (inst.positions && n >= 2) {
    ValuationMatrix derived = valuations_from_positions(*inst.positions);
    c.one_dimensional = true;
    for (AgentId p = 0; p < n && c.one_dimensional; ++p)
      for (AgentId q = 0; q < n; ++q)
        if (p != q && derived.value(p, q) != inst.valuations.value(p, q)) {
          c.one_dimensional = false;
          break;
        }
  }
  return c;
}

namespace {

ComponentType classify_component(const SeatGraph& g, const std::vector<VertexId>& verts) {
  int k = static_cast<int>(verts.size());
  int edge_count = 0;
  int max_deg = 0, deg1 = 0, deg2 = 0;
  for (VertexId v : verts) {
    int d = g.degree(v);
    edge_count += d;
    max_deg = std::max(max_deg, d);
    if (d == 1) ++deg1;
    if (d == 2) ++deg2;
  }
  edge_count /= 2;
  if (k == 2 && edge_count == 1) return ComponentType::K2;
  if (k == 1) return ComponentType::Path;  // trivial path
  if (edge_count == k && max_deg == 2 && deg2 == k && k >= 3) return ComponentType::Cycle;
  if (edge_count == k - 1 && max_deg <= 2) return ComponentType::Path;
  if (edge_count == k - 1 && deg1 == k - 1 && max_deg == k - 1 && k >= 3)
    return ComponentType::Star;
  if (edge_count == k * (k - 1) / 2) return ComponentType::Clique;
  return ComponentType::Other;
}

}  // namespace

GraphClass classify_seat_graph(const SeatGraph& g) {
  GraphClass gc;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    gc.max_degree = std::max(gc.max_degree, g.degree(v));
  gc.is_matching = g.vertex_count() > 0;
  gc.is_path_graph = g.vertex_count() > 0;
  gc.is_cycle_graph = g.vertex_count() > 0;
  gc.is_cluster_graph = g.vertex_count() > 0;
  for (const auto& verts : g.components()) {
    ComponentSummary cs;
    cs.vertices = verts;
    cs.size = static_cast<int>(verts.size());
    cs.type = classify_component(g, verts);
    // Flags follow the definitions directly; the enum picks one precedence
    // (K3 counts as a cycle but still satisfies the cluster-graph flag).
    int edge_count = 0;
    for (VertexId v : verts) edge_count += g.degree(v);
    edge_count /= 2;
    if (cs.type != ComponentType::K2) gc.is_matching = false;
    if (!(cs.type == ComponentType::Path || cs.type == ComponentType::K2))
      gc.is_path_graph = false;
    if (cs.type != ComponentType::Cycle) gc.is_cycle_graph = false;
    if (edge_count != cs.size * (cs.size - 1) / 2) gc.is_cluster_graph = false;
    gc.components.push_back(std::move(cs));
  }
  return gc;
}

}  // namespace seatplan
