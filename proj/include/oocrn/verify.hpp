#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oocrn/crn.hpp"
#include "oocrn/funcspec.hpp"
#include "oocrn/synth.hpp"

namespace oocrn {

struct reachability_graph {
  std::vector<configuration> nodes;  // nodes[0] is the root
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges;  // (reaction, dst)
  std::vector<std::uint32_t> parent;      // BFS tree, parent[0] = 0
  std::vector<std::uint32_t> parent_rxn;
  bool bounded = false;
  std::size_t edge_count = 0;
};

// Breadth-first closure of the initial configuration under all applicable
// reactions, deduplicated by configuration. Stops and marks `bounded` once
// max_configs nodes have been discovered.
reachability_graph explore(const crn& net, nat2 n, std::size_t max_configs);
reachability_graph explore_from(const crn& net, const configuration& root,
                                std::size_t max_configs);

// Node indices whose entire reachable set keeps the output counts fixed.
// Sound and complete on closed graphs; throws errc::not_closed otherwise.
std::vector<std::uint32_t> stable_set(const reachability_graph& g,
                                      const std::vector<species_id>& outputs);

enum class outcome { pass, fail, inconclusive };

struct verdict {
  nat2 input;
  std::uint64_t expected = 0;
  outcome result = outcome::inconclusive;
  std::string reason;
  // Counterexample path from the root: (reaction fired, configuration reached).
  std::vector<std::pair<std::uint32_t, configuration>> witness;
  std::size_t nodes = 0, edges = 0, stable = 0;
};

// PASS iff every reachable configuration can still reach a stable
// configuration with output exactly `expected`, and no other stable output
// is reachable.
verdict check_stable_computation(const crn& net, nat2 n, std::uint64_t expected,
                                 std::size_t max_configs);

// Seeded uniformly-random scheduling until quiescence or max_steps.
// Identical (net, n, seed) gives an identical trace.
execution simulate(const crn& net, nat2 n, std::uint64_t seed, std::size_t max_steps);

bool monitor_monotonic(const execution& e, const crn& net);

struct fissure_violation {
  std::size_t step;  // 0 = initial configuration
  std::string what;
};

// Replays an execution of a synthesized fissure core against the tracked
// state invariant: l_z follows the consumed-Z line, d equals the exact
// deficit, both stay in range, l_x tracks the consumed-input line mod 2K-1,
// and stalls carry a nonnegative deficit matching f at the input.
std::vector<fissure_violation> monitor_fissure_invariant(const fissure_meta& meta,
                                                         const partial_fissure& fs,
                                                         const execution& e, const crn& net);

enum class sweep_mode { exhaustive, random };

struct sweep_budget {
  sweep_mode mode = sweep_mode::exhaustive;
  std::size_t max_configs = 1000000;
  std::size_t runs = 100;
  std::size_t max_steps = 1000000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

// One verdict per input of [0,box.n1] x [0,box.n2], row-major, each checked
// against eval(spec, n). Inputs may be verified in parallel; the returned
// order is by input regardless.
std::vector<verdict> sweep(const crn& net, const function_spec& spec, nat2 box,
                           const sweep_budget& budget);

std::string verdict_line(const verdict& v);

}  // namespace oocrn
