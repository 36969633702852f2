#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seatplan/rational.hpp"

namespace seatplan {

// Agents are dense indices in [0, n). Names live only at the I/O boundary.
using AgentId = int;
using VertexId = int;

enum class UtilityType { B, S, W };

std::string utility_type_name(UtilityType u);
UtilityType utility_type_from_name(const std::string& name);

// Dense n x n matrix of exact rationals. The diagonal is outside the domain:
// reading or writing value(p, p) throws.
class ValuationMatrix {
 public:
  explicit ValuationMatrix(int n) : n_(n), values_(static_cast<size_t>(n) * n) {}

  int size() const { return n_; }

  const Rational& value(AgentId p, AgentId q) const {
    check_pair(p, q);
    return values_[static_cast<size_t>(p) * n_ + q];
  }

  void set_value(AgentId p, AgentId q, Rational v) {
    check_pair(p, q);
    values_[static_cast<size_t>(p) * n_ + q] = std::move(v);
  }

  void set_symmetric(AgentId p, AgentId q, const Rational& v) {
    set_value(p, q, v);
    set_value(q, p, v);
  }

 private:
  void check_pair(AgentId p, AgentId q) const;

  int n_;
  std::vector<Rational> values_;
};

// Undirected simple graph. Edges are stored normalized (u < v) and sorted.
class SeatGraph {
 public:
  explicit SeatGraph(int n) : n_(n), adjacency_(n) {}
  SeatGraph(int n, const std::vector<std::pair<VertexId, VertexId>>& edges);

  int vertex_count() const { return n_; }
  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }
  const std::vector<VertexId>& neighbours(VertexId v) const { return adjacency_[v]; }
  int degree(VertexId v) const { return static_cast<int>(adjacency_[v].size()); }
  bool has_edge(VertexId u, VertexId v) const;

  void add_edge(VertexId u, VertexId v);

  // Connected components, each a sorted vertex list, ordered by smallest vertex.
  std::vector<std::vector<VertexId>> components() const;

 private:
  int n_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::vector<VertexId>> adjacency_;
};

enum class ComponentType { K2, Path, Cycle, Star, Clique, Other };

std::string component_type_name(ComponentType t);

struct ComponentSummary {
  ComponentType type;
  int size;
  std::vector<VertexId> vertices;  // sorted
};

struct GraphClass {
  bool is_matching = false;
  bool is_path_graph = false;
  bool is_cycle_graph = false;
  bool is_cluster_graph = false;
  int max_degree = 0;
  std::vector<ComponentSummary> components;
};

// Agent locations on the real line. D is the span (max - min).
struct Positions {
  std::vector<Rational> location;  // one per agent

  Rational span() const;
  bool unique() const;
};

struct PreferenceClass {
  bool nonnegative = false;
  bool positive = false;
  bool binary = false;
  bool symmetric = false;
  bool strict = false;
  bool one_dimensional = false;
};

struct Instance {
  std::vector<std::string> agent_names;  // size n
  ValuationMatrix valuations;
  SeatGraph seats;
  UtilityType utility;
  std::optional<Positions> positions;

  int agent_count() const { return static_cast<int>(agent_names.size()); }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Bijection agent <-> vertex.
class Arrangement {
 public:
  explicit Arrangement(std::vector<VertexId> seat_of);

  // Identity arrangement: agent i at vertex i.
  static Arrangement identity(int n);

  int size() const { return static_cast<int>(seat_of_.size()); }
  VertexId seat_of(AgentId p) const { return seat_of_[p]; }
  AgentId agent_at(VertexId v) const { return agent_at_[v]; }
  const std::vector<VertexId>& seats() const { return seat_of_; }

  bool operator==(const Arrangement& other) const { return seat_of_ == other.seat_of_; }

 private:
  std::vector<VertexId> seat_of_;
  std::vector<AgentId> agent_at_;
};

ValidationReport validate_instance(const Instance& inst);

// Deterministic vertex order along a path or cycle component: paths start at
// the smallest-indexed endpoint, cycles at the smallest vertex heading to its
// smaller neighbour first.
std::vector<VertexId> path_or_cycle_traversal(const SeatGraph& g,
                                              const std::vector<VertexId>& component);
ValuationMatrix valuations_from_positions(const Positions& pos);
PreferenceClass classify_preferences(const Instance& inst);
GraphClass classify_seat_graph(const SeatGraph& g);
Arrangement swap(const Arrangement& arr, AgentId p, AgentId q);

}  // namespace seatplan
