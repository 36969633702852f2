#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "seatplan/construct.hpp"
#include "seatplan/dynamics.hpp"
#include "seatplan/eval.hpp"
#include "seatplan/exact.hpp"
#include "seatplan/gen.hpp"
#include "seatplan/json_io.hpp"
#include "seatplan/model.hpp"

namespace {

using nlohmann::json;
using namespace seatplan;

constexpr int kExitFound = 0;
constexpr int kExitNoneExists = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;
constexpr int kExitBadInput = 65;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return j;
}

Instance load_instance_checked(const std::string& path) {
  try {
    Instance inst = instance_from_json(load_json_file(path));
    ValidationReport report = validate_instance(inst);
    if (!report.ok()) throw InputError(path + ": " + report.violations.front());
    return inst;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

Arrangement load_arrangement_checked(const std::string& path, const Instance& inst) {
  try {
    Arrangement arr = arrangement_from_json(load_json_file(path));
    if (arr.size() != inst.agent_count()) throw InputError(path + ": wrong arrangement size");
    return arr;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

json make_report(const std::string& command, const Instance& inst, json result, double seconds) {
  return json{{"command", command},
              {"instance_digest", instance_digest(inst)},
              {"result", std::move(result)},
              {"elapsed_seconds", seconds}};
}

void emit(const json& report) { std::cout << canonical_dump(report); }

// --output saves the loadable artifact (instance or arrangement); the report
// always goes to stdout.
void save_artifact(const std::string& out_path, const json& j) {
  if (!out_path.empty()) save_json(out_path, j);
}

PitInstance pit_from_json(const json& j) {
  PitInstance pit;
  pit.vertices = j.at("vertices").get<int>();
  for (const auto& e : j.at("edges"))
    pit.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  return pit;
}

BinPackingInstance binpacking_from_json(const json& j) {
  BinPackingInstance bp;
  bp.sizes = j.at("sizes").get<std::vector<long>>();
  bp.capacity = j.at("capacity").get<long>();
  bp.bins = j.at("bins").get<long>();
  return bp;
}

json score_vector_to_json(const ScoreVector& sv) {
  json levels = json::array();
  for (const auto& l : sv.levels) levels.push_back(rational_to_json(l));
  return json{{"levels", levels}, {"counts", sv.counts}};
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

int run_generate(const std::string& reduction, const std::string& source_path,
                 const std::string& out_path, int n, const std::string& graph_class,
                 const std::string& pref_class, const std::string& utility, std::uint64_t seed,
                 const std::string& epsilon_text) {
  Timer timer;
  json result;
  Instance* inst_ptr = nullptr;
  std::optional<Instance> inst;
  std::optional<GeneratedInstance> gi;

  if (reduction == "random") {
    RandomParams params;
    params.n = n;
    params.seed = seed;
    params.utility = utility_type_from_name(utility);
    if (graph_class == "matching") params.graph_class = RandomGraphClass::Matching;
    else if (graph_class == "path") params.graph_class = RandomGraphClass::Path;
    else if (graph_class == "cycle") params.graph_class = RandomGraphClass::Cycle;
    else if (graph_class == "star") params.graph_class = RandomGraphClass::StarMix;
    else if (graph_class == "cluster") params.graph_class = RandomGraphClass::Cluster;
    else if (graph_class == "arbitrary") params.graph_class = RandomGraphClass::Arbitrary;
    else throw CLI::ValidationError("--graph-class", "unknown graph class " + graph_class);
    if (pref_class == "arbitrary") params.preference_class = RandomPreferenceClass::Arbitrary;
    else if (pref_class == "symmetric") params.preference_class = RandomPreferenceClass::Symmetric;
    else if (pref_class == "binary-symmetric")
      params.preference_class = RandomPreferenceClass::BinarySymmetric;
    else if (pref_class == "strict-symmetric")
      params.preference_class = RandomPreferenceClass::StrictSymmetric;
    else if (pref_class == "one-dimensional")
      params.preference_class = RandomPreferenceClass::OneDimensional;
    else if (pref_class == "positive") params.preference_class = RandomPreferenceClass::Positive;
    else throw CLI::ValidationError("--pref-class", "unknown preference class " + pref_class);
    inst = gen_random(params);
    inst_ptr = &*inst;
  } else {
    if (source_path.empty()) throw CLI::ValidationError("--source", "required for reductions");
    json src = load_json_file(source_path);
    try {
      if (reduction == "pit-b") gi = gen_pit_to_efa_b(pit_from_json(src));
      else if (reduction == "pit-w-binary") gi = gen_pit_to_efa_w_binary(pit_from_json(src));
      else if (reduction == "pit-w-strict") gi = gen_pit_to_efa_w_strict(pit_from_json(src));
      else if (reduction == "binpack-1d") {
        BinPackingInstance bp = binpacking_from_json(src);
        Rational eps =
            epsilon_text.empty() ? default_binpacking_epsilon(bp) : parse_rational(epsilon_text);
        gi = gen_binpacking_to_1d_b(bp, eps);
      } else {
        throw CLI::ValidationError("--reduction", "unknown reduction " + reduction);
      }
    } catch (const std::invalid_argument& e) {
      throw InputError(source_path + ": " + e.what());
    }
    inst_ptr = &gi->instance;
    result["roles"] = gi->roles;
  }

  result["instance"] = instance_to_json(*inst_ptr);
  save_artifact(out_path, result["instance"]);
  emit(make_report("generate", *inst_ptr, std::move(result), timer.seconds()));
  return kExitFound;
}

int run_solve(const std::string& instance_path, const std::string& method,
              const std::string& out_path) {
  Timer timer;
  Instance inst = load_instance_checked(instance_path);
  Arrangement arr = [&] {
    try {
      if (method == "algorithm1") return algorithm1(inst);
      if (method == "consecutive") return oned_consecutive(inst);
      throw CLI::ValidationError("--method", "unknown method " + method);
    } catch (const std::invalid_argument& e) {
      throw InputError(instance_path + ": " + e.what());
    }
  }();
  json result{{"arrangement", arrangement_to_json(arr)},
              {"welfare", rational_to_json(welfare(inst, arr))},
              {"min_utility", rational_to_json(min_utility(inst, arr))}};
  save_artifact(out_path, result["arrangement"]);
  emit(make_report("solve", inst, std::move(result), timer.seconds()));
  return kExitFound;
}

int run_exact(const std::string& instance_path, const std::string& problem,
              const std::string& threshold_text, long max_nodes, double time_limit, bool dedup,
              bool force, bool parallel, const std::string& out_path) {
  Timer timer;
  Instance inst = load_instance_checked(instance_path);
  SearchBudget budget;
  budget.max_nodes = max_nodes;
  budget.time_limit_seconds = time_limit;

  ExactResult res;
  try {
    if (problem == "mwa") res = solve_mwa_exact(inst, budget, dedup, force);
    else if (problem == "mua") res = solve_mua_exact(inst, budget, dedup, force);
    else if (problem == "efa") res = find_envy_free_exact(inst, budget, dedup, force);
    else if (problem == "sta") res = find_exchange_stable_exact(inst, budget, dedup, force);
    else if (problem == "threshold") {
      if (threshold_text.empty()) throw CLI::ValidationError("--threshold", "required");
      Rational t = parse_rational(threshold_text);
      res = parallel ? find_min_utility_at_least_parallel(inst, t, budget)
                     : find_min_utility_at_least(inst, t, budget);
    } else {
      throw CLI::ValidationError("--problem", "unknown problem " + problem);
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(instance_path + ": " + e.what());
  }

  json result{{"status", exact_status_name(res.status)}, {"nodes_explored", res.nodes_explored}};
  if (res.witness) {
    result["arrangement"] = arrangement_to_json(*res.witness);
    save_artifact(out_path, result["arrangement"]);
  }
  if (res.objective) result["objective"] = rational_to_json(*res.objective);
  emit(make_report("exact", inst, std::move(result), timer.seconds()));
  switch (res.status) {
    case ExactStatus::Found: return kExitFound;
    case ExactStatus::NoneExists: return kExitNoneExists;
    case ExactStatus::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

int run_dynamics(const std::string& instance_path, const std::string& arrangement_path,
                 const std::string& policy_name, std::uint64_t seed, long max_steps,
                 const std::string& out_path) {
  Timer timer;
  Instance inst = load_instance_checked(instance_path);
  Arrangement start = arrangement_path.empty() ? Arrangement::identity(inst.agent_count())
                                               : load_arrangement_checked(arrangement_path, inst);
  PairSelectionPolicy policy;
  if (policy_name == "first") policy = PairSelectionPolicy::first_by_index();
  else if (policy_name == "best") policy = PairSelectionPolicy::best_improvement();
  else if (policy_name == "random") policy = PairSelectionPolicy::random(seed);
  else throw CLI::ValidationError("--policy", "unknown policy " + policy_name);
  if (max_steps < 0) max_steps = default_max_steps(inst.agent_count());

  Trace trace = run_swap_dynamics(inst, start, policy, max_steps);
  // One JSON line per step, then the summary report.
  for (const auto& step : trace.steps) {
    json line{{"swap", {step.swapped.p, step.swapped.q}}};
    if (step.potential_after) {
      if (const auto* r = std::get_if<Rational>(&*step.potential_after))
        line["welfare"] = rational_to_json(*r);
      else
        line["score_vector"] = score_vector_to_json(std::get<ScoreVector>(*step.potential_after));
    }
    std::cout << line.dump() << "\n";
  }
  json result{{"terminated", trace.terminated},
              {"steps", trace.step_count},
              {"final", arrangement_to_json(trace.final)}};
  save_artifact(out_path, result["final"]);
  emit(make_report("dynamics", inst, std::move(result), timer.seconds()));
  return trace.terminated ? kExitFound : kExitNoneExists;
}

int run_check(const std::string& instance_path, const std::string& arrangement_path,
              const std::string& property) {
  Timer timer;
  Instance inst = load_instance_checked(instance_path);
  Arrangement arr = load_arrangement_checked(arrangement_path, inst);

  bool holds = false;
  json result;
  if (property == "envy-free") holds = is_envy_free(inst, arr);
  else if (property == "exchange-stable") holds = is_exchange_stable(inst, arr);
  else throw CLI::ValidationError("--property", "unknown property " + property);

  result["property"] = property;
  result["holds"] = holds;
  result["welfare"] = rational_to_json(welfare(inst, arr));
  result["min_utility"] = rational_to_json(min_utility(inst, arr));
  auto blocking = find_blocking_pairs(inst, arr, PairSearchMode::First);
  if (!blocking.empty()) result["blocking_pair"] = {blocking.front().p, blocking.front().q};
  emit(make_report("check", inst, std::move(result), timer.seconds()));
  return holds ? kExitFound : kExitNoneExists;
}

int run_info(const std::string& instance_path) {
  Timer timer;
  Instance inst = load_instance_checked(instance_path);
  PreferenceClass pc = classify_preferences(inst);
  GraphClass gc = classify_seat_graph(inst.seats);
  json comps = json::array();
  for (const auto& c : gc.components)
    comps.push_back({{"type", component_type_name(c.type)}, {"size", c.size}});
  json result{{"agents", inst.agent_count()},
              {"utility", utility_type_name(inst.utility)},
              {"preferences",
               {{"nonnegative", pc.nonnegative},
                {"positive", pc.positive},
                {"binary", pc.binary},
                {"symmetric", pc.symmetric},
                {"strict", pc.strict},
                {"one_dimensional", pc.one_dimensional}}},
              {"graph",
               {{"is_matching", gc.is_matching},
                {"is_path_graph", gc.is_path_graph},
                {"is_cycle_graph", gc.is_cycle_graph},
                {"is_cluster_graph", gc.is_cluster_graph},
                {"max_degree", gc.max_degree},
                {"components", comps}}}};
  emit(make_report("info", inst, std::move(result), timer.seconds()));
  return kExitFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seat arrangement toolkit: generators, solvers and verifiers"};
  app.require_subcommand(1);

  std::string instance_path, arrangement_path, out_path, source_path;
  std::string reduction, method = "algorithm1", problem, threshold_text, policy = "first";
  std::string property = "envy-free", graph_class = "arbitrary", pref_class = "arbitrary";
  std::string utility = "S", epsilon_text;
  std::uint64_t seed = 0;
  long max_nodes = 50'000'000, max_steps = -1;
  double time_limit = 0;
  int n = 8;
  bool dedup = false, force = false, parallel = false;

  auto* gen = app.add_subcommand("generate", "Generate an instance");
  gen->add_option("--reduction", reduction,
                  "pit-b | pit-w-binary | pit-w-strict | binpack-1d | random")
      ->required();
  gen->add_option("--source", source_path, "source problem file (PIT or Bin Packing JSON)");
  gen->add_option("--seed", seed, "random seed (default 0)");
  gen->add_option("--n", n, "agent count for random instances");
  gen->add_option("--graph-class", graph_class,
                  "matching | path | cycle | star | cluster | arbitrary");
  gen->add_option("--pref-class", pref_class,
                  "arbitrary | symmetric | binary-symmetric | strict-symmetric | "
                  "one-dimensional | positive");
  gen->add_option("--utility", utility, "B | S | W");
  gen->add_option("--epsilon", epsilon_text, "gap epsilon for binpack-1d (rational)");
  gen->add_option("--output", out_path, "write the generated instance to a file");

  auto* solve = app.add_subcommand("solve", "Run a polynomial-time constructor");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--method", method, "algorithm1 | consecutive");
  solve->add_option("--output", out_path, "write the arrangement to a file");

  auto* exact = app.add_subcommand("exact", "Exact search over arrangements");
  exact->add_option("--instance", instance_path)->required();
  exact->add_option("--problem", problem, "mwa | mua | efa | sta | threshold")->required();
  exact->add_option("--threshold", threshold_text, "rational threshold for --problem threshold");
  exact->add_option("--max-nodes", max_nodes, "search node budget");
  exact->add_option("--time-limit", time_limit, "seconds, 0 = unlimited");
  exact->add_flag("--dedup", dedup, "deduplicate symmetric arrangements");
  exact->add_flag("--force-enumeration", force,
                  "lift the enumeration size guard (mwa/mua/efa/sta)");
  exact->add_flag("--parallel", parallel, "parallel threshold search");
  exact->add_option("--output", out_path, "write the witness arrangement to a file");

  auto* dyn = app.add_subcommand("dynamics", "Run swap dynamics from an arrangement");
  dyn->add_option("--instance", instance_path)->required();
  dyn->add_option("--arrangement", arrangement_path, "start (default: identity)");
  dyn->add_option("--policy", policy, "first | best | random");
  dyn->add_option("--seed", seed, "random seed (default 0)");
  dyn->add_option("--max-steps", max_steps, "default n^4");
  dyn->add_option("--output", out_path, "write the final arrangement to a file");

  auto* check = app.add_subcommand("check", "Verify a property of an arrangement");
  check->add_option("--instance", instance_path)->required();
  check->add_option("--arrangement", arrangement_path)->required();
  check->add_option("--property", property, "envy-free | exchange-stable");

  auto* info = app.add_subcommand("info", "Classify an instance");
  info->add_option("--instance", instance_path)->required();

  try {
    app.parse(argc, argv);
    if (gen->parsed())
      return run_generate(reduction, source_path, out_path, n, graph_class, pref_class, utility,
                          seed, epsilon_text);
    if (solve->parsed()) return run_solve(instance_path, method, out_path);
    if (exact->parsed())
      return run_exact(instance_path, problem, threshold_text, max_nodes, time_limit, dedup,
                       force, parallel, out_path);
    if (dyn->parsed())
      return run_dynamics(instance_path, arrangement_path, policy, seed, max_steps, out_path);
    if (check->parsed()) return run_check(instance_path, arrangement_path, property);
    if (info->parsed()) return run_info(instance_path);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
