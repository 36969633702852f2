// Compares the serial and the OpenMP threshold searches on generated
// families of growing size and checks they agree.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "seatplan/exact.hpp"
#include "seatplan/gen.hpp"

using namespace seatplan;

namespace {

double time_run(const Instance& inst, const Rational& threshold, bool parallel,
                ExactResult& out) {
  auto start = std::chrono::steady_clock::now();
  out = parallel ? find_min_utility_at_least_parallel(inst, threshold, SearchBudget::unlimited())
                 : find_min_utility_at_least(inst, threshold, SearchBudget::unlimited());
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

PitInstance triangle_chain(int triangles) {
  // Disjoint triangles: degrees stay at 2 and a partition always exists.
  PitInstance pit;
  pit.vertices = 3 * triangles;
  for (int t = 0; t < triangles; ++t) {
    pit.edges.push_back({3 * t, 3 * t + 1});
    pit.edges.push_back({3 * t + 1, 3 * t + 2});
    pit.edges.push_back({3 * t, 3 * t + 2});
  }
  return pit;
}

}  // namespace

int main() {
  std::printf("%-28s %8s %12s %12s %8s\n", "instance", "agents", "serial_s", "parallel_s",
              "speedup");
  for (int triangles : {1, 2, 3}) {
    GeneratedInstance gi = gen_pit_to_efa_w_binary(triangle_chain(triangles));
    ExactResult serial, parallel;
    double ts = time_run(gi.instance, Rational(1), false, serial);
    double tp = time_run(gi.instance, Rational(1), true, parallel);
    if (serial.status != parallel.status) {
      std::fprintf(stderr, "serial/parallel disagreement\n");
      return 1;
    }
    std::printf("%-28s %8d %12.4f %12.4f %8.2f\n",
                ("w-binary/" + std::to_string(triangles) + "-triangles").c_str(),
                gi.instance.agent_count(), ts, tp, tp > 0 ? ts / tp : 0.0);
  }
  for (int n : {8, 10, 12}) {
    RandomParams params;
    params.n = n;
    params.graph_class = RandomGraphClass::Cycle;
    params.preference_class = RandomPreferenceClass::BinarySymmetric;
    params.utility = UtilityType::W;
    params.seed = 7;
    Instance inst = gen_random(params);
    ExactResult serial, parallel;
    double ts = time_run(inst, Rational(1), false, serial);
    double tp = time_run(inst, Rational(1), true, parallel);
    if (serial.status != parallel.status) {
      std::fprintf(stderr, "serial/parallel disagreement\n");
      return 1;
    }
    std::printf("%-28s %8d %12.4f %12.4f %8.2f\n",
                ("random-cycle/n=" + std::to_string(n)).c_str(), n, ts, tp,
                tp > 0 ? ts / tp : 0.0);
  }
  // Cluster graphs with binary symmetric scores produce infeasible thresholds
  // whose refutation needs an exhaustive search, so both sides do real work.
  for (int n : {16, 18, 20, 22}) {
    RandomParams params;
    params.n = n;
    params.graph_class = RandomGraphClass::Cluster;
    params.preference_class = RandomPreferenceClass::BinarySymmetric;
    params.utility = UtilityType::W;
    params.seed = 11;
    Instance inst = gen_random(params);
    ExactResult serial, parallel;
    double ts = time_run(inst, Rational(1), false, serial);
    double tp = time_run(inst, Rational(1), true, parallel);
    if (serial.status != parallel.status) {
      std::fprintf(stderr, "serial/parallel disagreement\n");
      return 1;
    }
    std::printf("%-28s %8d %12.4f %12.4f %8.2f\n",
                ("random-cluster/n=" + std::to_string(n)).c_str(), n, ts, tp,
                tp > 0 ? ts / tp : 0.0);
  }
  return 0;
}
