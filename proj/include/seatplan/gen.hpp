#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seatplan/model.hpp"

namespace seatplan {

// Partition Into Triangles source instance.
struct PitInstance {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<std::vector<int>> adjacency() const;
  int min_degree() const;
  int max_degree() const;
};

struct BinPackingInstance {
  std::vector<long> sizes;
  long capacity = 0;
  long bins = 0;
};

using TrianglePartition = std::vector<std::array<int, 3>>;
using Packing = std::vector<int>;  // bin index per item

using ReductionSource = std::variant<PitInstance, BinPackingInstance>;

struct GeneratedInstance {
  Instance instance;
  ReductionSource source;
  std::vector<std::string> roles;  // one annotation per agent
};

struct PerturbationSpec {
  Rational delta;  // pair i (1-based, lexicographic) receives epsilon_i = i * delta
};

// Largest delta such that delta * (#pairs) stays below half the minimum gap
// between distinct base valuations (and positive even for all-tied matrices).
PerturbationSpec make_perturbation_spec(const Instance& inst);

GeneratedInstance gen_pit_to_efa_b(const PitInstance& pit);
GeneratedInstance gen_pit_to_efa_w_binary(const PitInstance& pit);
GeneratedInstance gen_pit_to_efa_w_strict(const PitInstance& pit);
GeneratedInstance gen_binpacking_to_1d_b(const BinPackingInstance& bp, const Rational& epsilon);

// Default epsilon for the Bin Packing reduction: 1 / (4 n^2) where n is the
// agent count after preprocessing.
Rational default_binpacking_epsilon(const BinPackingInstance& bp);

Instance perturb_strict(const Instance& inst, const PerturbationSpec& spec);

std::optional<TrianglePartition> solve_pit_bruteforce(const PitInstance& pit);
std::optional<Packing> solve_binpacking_bruteforce(const BinPackingInstance& bp);

Arrangement arrangement_from_triangle_partition(const GeneratedInstance& gi,
                                                const TrianglePartition& part);
Arrangement arrangement_from_packing(const GeneratedInstance& gi, const Packing& pack);

enum class RandomGraphClass { Matching, Path, Cycle, StarMix, Cluster, Arbitrary };
enum class RandomPreferenceClass {
  Arbitrary,
  Symmetric,
  BinarySymmetric,
  StrictSymmetric,
  OneDimensional,  // unique positions
  Positive,
};

struct RandomParams {
  int n = 0;
  RandomGraphClass graph_class = RandomGraphClass::Arbitrary;
  RandomPreferenceClass preference_class = RandomPreferenceClass::Arbitrary;
  UtilityType utility = UtilityType::S;
  std::uint64_t seed = 0;
};

Instance gen_random(const RandomParams& params);

}  // namespace seatplan
