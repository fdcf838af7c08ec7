#include "oocrn/verify.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "oocrn/prng.hpp"

namespace oocrn {

reachability_graph explore_from(const crn& net, const configuration& root,
                                std::size_t max_configs) {
  reachability_graph g;
  std::unordered_map<configuration, std::uint32_t, configuration_hash> index;
  g.nodes.push_back(root);
  g.edges.emplace_back();
  g.parent.push_back(0);
  g.parent_rxn.push_back(0);
  index.emplace(root, 0);

  for (std::uint32_t head = 0; head < g.nodes.size(); ++head) {
    const configuration c = g.nodes[head];  // copy: nodes may reallocate below
    for (std::size_t ri = 0; ri < net.reactions.size(); ++ri) {
      const reaction& r = net.reactions[ri];
      if (!is_applicable(c, r)) continue;
      configuration succ = apply(c, r);
      auto [it, inserted] = index.try_emplace(std::move(succ), 0);
      if (inserted) {
        if (g.nodes.size() >= max_configs) {
          g.bounded = true;
          index.erase(it);
          continue;
        }
        it->second = static_cast<std::uint32_t>(g.nodes.size());
        g.nodes.push_back(it->first);
        g.edges.emplace_back();
        g.parent.push_back(head);
        g.parent_rxn.push_back(static_cast<std::uint32_t>(ri));
      }
      g.edges[head].push_back({static_cast<std::uint32_t>(ri), it->second});
      ++g.edge_count;
    }
  }
  return g;
}

reachability_graph explore(const crn& net, nat2 n, std::size_t max_configs) {
  return explore_from(net, initial_configuration(net, n), max_configs);
}

namespace {

// Tarjan SCC, iterative. Component ids come out in reverse topological
// order: every component reachable from component s has id < s.
std::vector<std::uint32_t> scc_of(const reachability_graph& g, std::uint32_t& scc_count) {
  const std::uint32_t n = static_cast<std::uint32_t>(g.nodes.size());
  constexpr std::uint32_t none = 0xffffffffu;
  std::vector<std::uint32_t> comp(n, none), low(n, 0), num(n, none), stack;
  std::vector<bool> on_stack(n, false);
  std::uint32_t counter = 0;
  scc_count = 0;

  struct frame {
    std::uint32_t v;
    std::size_t edge;
  };
  std::vector<frame> call;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (num[s] != none) continue;
    call.push_back({s, 0});
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei == 0) {
        num[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (ei < g.edges[v].size()) {
        const std::uint32_t w = g.edges[v][ei].second;
        ++ei;
        if (num[w] == none) {
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        if (low[v] == num[v]) {
          while (true) {
            const std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = scc_count;
            if (w == v) break;
          }
          ++scc_count;
        }
        const std::uint32_t child = v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[child]);
      }
    }
  }
  return comp;
}

std::vector<std::uint32_t> output_counts(const configuration& c,
                                         const std::vector<species_id>& outputs) {
  std::vector<std::uint32_t> v;
  v.reserve(outputs.size());
  for (const species_id y : outputs) v.push_back(c.count(y));
  return v;
}

struct stability {
  std::vector<std::uint32_t> comp;
  std::uint32_t comp_count = 0;
  std::vector<bool> comp_uniform;                    // per component
  std::vector<std::vector<std::uint32_t>> comp_out;  // representative output counts
  std::vector<std::vector<std::uint32_t>> members;   // nodes per component
};

stability analyze_stability(const reachability_graph& g, const std::vector<species_id>& outputs) {
  stability st;
  st.comp = scc_of(g, st.comp_count);
  st.comp_uniform.assign(st.comp_count, true);
  st.comp_out.assign(st.comp_count, {});
  st.members.assign(st.comp_count, {});
  for (std::uint32_t v = 0; v < g.nodes.size(); ++v) {
    st.members[st.comp[v]].push_back(v);
    auto out = output_counts(g.nodes[v], outputs);
    auto& rep = st.comp_out[st.comp[v]];
    if (rep.empty())
      rep = std::move(out);
    else if (rep != out)
      st.comp_uniform[st.comp[v]] = false;
  }
  // Cross edges always point at lower component ids (sinks-first numbering),
  // so one ascending pass propagates non-uniformity transitively.
  for (std::uint32_t s = 0; s < st.comp_count; ++s) {
    for (const std::uint32_t u : st.members[s]) {
      if (!st.comp_uniform[s]) break;
      for (const auto& [ri, w] : g.edges[u]) {
        (void)ri;
        const std::uint32_t t = st.comp[w];
        if (t == s) continue;
        if (!st.comp_uniform[t] || st.comp_out[t] != st.comp_out[s]) {
          st.comp_uniform[s] = false;
          break;
        }
      }
    }
  }
  return st;
}

std::vector<std::pair<std::uint32_t, configuration>> path_to(const reachability_graph& g,
                                                             std::uint32_t node) {
  std::vector<std::pair<std::uint32_t, configuration>> path;
  for (std::uint32_t v = node; v != 0; v = g.parent[v])
    path.push_back({g.parent_rxn[v], g.nodes[v]});
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<std::uint32_t> stable_set(const reachability_graph& g,
                                      const std::vector<species_id>& outputs) {
  if (g.bounded) fail(errc::not_closed, "reachability graph was cut off by the config bound");
  const stability st = analyze_stability(g, outputs);
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < g.nodes.size(); ++v)
    if (st.comp_uniform[st.comp[v]]) out.push_back(v);
  return out;
}

verdict check_stable_computation(const crn& net, nat2 n, std::uint64_t expected,
                                 std::size_t max_configs) {
  verdict v;
  v.input = n;
  v.expected = expected;
  const reachability_graph g = explore(net, n, max_configs);
  v.nodes = g.nodes.size();
  v.edges = g.edge_count;
  if (g.bounded) {
    v.result = outcome::inconclusive;
    v.reason = "config bound of " + std::to_string(max_configs) + " hit before closure";
    return v;
  }

  const stability st = analyze_stability(g, net.outputs);
  const std::vector<std::uint32_t> want = {static_cast<std::uint32_t>(expected)};

  v.stable = 0;
  for (std::uint32_t u = 0; u < g.nodes.size(); ++u)
    if (st.comp_uniform[st.comp[u]]) ++v.stable;

  for (std::uint32_t u = 0; u < g.nodes.size(); ++u) {
    const std::uint32_t s = st.comp[u];
    if (st.comp_uniform[s] && st.comp_out[s] != want) {
      v.result = outcome::fail;
      v.reason = "stable configuration with output " +
                 std::to_string(output_counts(g.nodes[u], net.outputs).front()) +
                 " instead of " + std::to_string(expected);
      v.witness = path_to(g, u);
      return v;
    }
  }

  // good[s]: some stable configuration with the expected output is reachable
  // from component s. Components are numbered sinks-first, so one ascending
  // pass settles the whole DAG.
  std::vector<bool> good(st.comp_count, false);
  for (std::uint32_t s = 0; s < st.comp_count; ++s) {
    if (st.comp_uniform[s] && st.comp_out[s] == want) {
      good[s] = true;
      continue;
    }
    for (const std::uint32_t u : st.members[s]) {
      for (const auto& [ri, w] : g.edges[u]) {
        (void)ri;
        if (st.comp[w] != s && good[st.comp[w]]) {
          good[s] = true;
          break;
        }
      }
      if (good[s]) break;
    }
  }

  for (std::uint32_t u = 0; u < g.nodes.size(); ++u) {
    if (!good[st.comp[u]]) {
      v.result = outcome::fail;
      v.reason = "configuration from which no stable configuration with output " +
                 std::to_string(expected) + " is reachable";
      v.witness = path_to(g, u);
      return v;
    }
  }

  v.result = outcome::pass;
  return v;
}

execution simulate(const crn& net, nat2 n, std::uint64_t seed, std::size_t max_steps) {
  execution e;
  e.initial = initial_configuration(net, n);
  e.seed = seed;
  prng rng(seed);
  configuration c = e.initial;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const auto apps = applicable_reactions(net, c);
    if (apps.empty()) return e;
    const std::size_t pick = apps[rng.below(apps.size())];
    c = apply(c, net.reactions[pick]);
    e.steps.push_back({pick, c});
  }
  if (!applicable_reactions(net, c).empty()) e.step_budget_exceeded = true;
  return e;
}

bool monitor_monotonic(const execution& e, const crn& net) {
  auto prev = output_counts(e.initial, net.outputs);
  for (const auto& [ri, c] : e.steps) {
    (void)ri;
    const auto cur = output_counts(c, net.outputs);
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (cur[i] < prev[i]) return false;
    prev = cur;
  }
  return true;
}

std::vector<fissure_violation> monitor_fissure_invariant(const fissure_meta& meta,
                                                         const partial_fissure& fs,
                                                         const execution& e, const crn& net) {
  std::vector<fissure_violation> out;
  const auto flag = [&](std::size_t step, std::string what) {
    out.push_back({step, std::move(what)});
  };

  // Reactions that consume a Z net of production; a stall is a state where
  // none of them is applicable and no input remains.
  std::vector<std::size_t> z_consumers;
  for (std::size_t ri = 0; ri < net.reactions.size(); ++ri) {
    const reaction& r = net.reactions[ri];
    for (const species_id z : {meta.z1, meta.z2}) {
      if (static_cast<std::int64_t>(stoich_count(r.reactants, z)) -
              static_cast<std::int64_t>(stoich_count(r.products, z)) >
          0) {
        z_consumers.push_back(ri);
        break;
      }
    }
  }

  const nat2 input{e.initial.count(meta.x1), e.initial.count(meta.x2)};
  std::int64_t z1c = 0, z2c = 0;  // consumed Z counts
  std::int64_t m1 = 0, m2 = 0;    // consumed grid steps
  configuration cur = e.initial;

  // For a standalone core the execution's initial input counts are the grid
  // point itself; off-grid starts skip the stall-value comparison.
  std::uint64_t expected = 0;
  bool have_expected = false;
  try {
    expected = eval_partial_fissure(fs, input);
    have_expected = true;
  } catch (const error&) {
    have_expected = false;
  }

  for (std::size_t step = 0; step < e.steps.size(); ++step) {
    const auto& [ri, next] = e.steps[step];
    const reaction& r = net.reactions[ri];
    const auto consumed = [&](species_id sp) {
      return static_cast<std::int64_t>(stoich_count(r.reactants, sp)) -
             static_cast<std::int64_t>(stoich_count(r.products, sp));
    };
    z1c += std::max<std::int64_t>(0, consumed(meta.z1));
    z2c += std::max<std::int64_t>(0, consumed(meta.z2));
    bool st_reactant = false;
    for (const auto& [sp, cnum] : r.reactants) {
      (void)cnum;
      if (meta.state_of.count(sp)) st_reactant = true;
    }
    if (st_reactant) {
      const std::int64_t cx1 = consumed(meta.x1);
      const std::int64_t cx2 = consumed(meta.x2);
      if (cx1 > 0) m1 += cx1 / meta.x_multiplicity;
      if (cx2 > 0) m2 += cx2 / meta.x_multiplicity;
    }
    cur = next;

    // Exactly one leader-state molecule at all times.
    std::int64_t machine = cur.count(meta.leader) + cur.count(meta.primed);
    const state_triple* state = nullptr;
    std::int64_t state_count = 0;
    for (const auto& [sp, cnt] : cur.entries()) {
      const auto it = meta.state_of.find(sp);
      if (it == meta.state_of.end()) continue;
      machine += cnt;
      state_count += cnt;
      state = &it->second;
    }
    if (machine != 1) {
      flag(step + 1, "leader-state molecule count is " + std::to_string(machine));
      continue;
    }
    if (state == nullptr || state_count != 1) continue;  // still in the L/L' phase

    const std::int64_t lx = state->lx, lz = state->lz, d = state->d;
    const std::int64_t y = cur.count(meta.output);
    const std::int64_t fz = std::min(z1c, z2c) - meta.dip(z1c - z2c);

    if (lz != z1c - z2c)
      flag(step + 1, "l_z = " + std::to_string(lz) + " but consumed-Z line is " +
                         std::to_string(z1c - z2c));
    if (lz < -meta.lz_bound || lz > meta.lz_bound)
      flag(step + 1, "l_z = " + std::to_string(lz) + " out of range");
    if (d != fz - y)
      flag(step + 1, "deficit " + std::to_string(d) + " != f(M^-1(z)) - y = " +
                         std::to_string(fz - y));
    if (d < -meta.d_max || d > meta.d_hi)
      flag(step + 1, "deficit " + std::to_string(d) + " out of range");
    const std::int64_t line_x = (meta.a1 - meta.b1) * m1 + (meta.a2 - meta.b2) * m2 +
                                (meta.a0 - meta.b0);
    if (((lx - line_x) % meta.modulus + meta.modulus) % meta.modulus != 0)
      flag(step + 1, "l_x = " + std::to_string(lx) + " not congruent to input line " +
                         std::to_string(line_x));

    const bool inputs_left = cur.count(meta.x1) > 0 || cur.count(meta.x2) > 0 ||
                             cur.count(meta.leader) > 0;
    // A pending spill (d > d_max) re-enables Z-consumption once it fires,
    // so only d <= d_max states can be true stalls.
    if (!inputs_left && d <= meta.d_max) {
      bool can_consume = false;
      for (const std::size_t zi : z_consumers)
        if (is_applicable(cur, net.reactions[zi])) {
          can_consume = true;
          break;
        }
      if (!can_consume) {
        if (d < 0) flag(step + 1, "negative deficit " + std::to_string(d) + " at a stall");
        if (have_expected && fz != static_cast<std::int64_t>(expected))
          flag(step + 1, "stalled f(M^-1(z)) = " + std::to_string(fz) + " but f(n) = " +
                             std::to_string(expected));
      }
    }
  }
  return out;
}

std::vector<verdict> sweep(const crn& net, const function_spec& spec, nat2 box,
                           const sweep_budget& budget) {
  const std::size_t width = box.n2 + 1;
  const std::size_t total = (box.n1 + 1) * width;
  std::vector<verdict> verdicts(total);

  const auto run_one = [&](std::size_t flat) {
    const nat2 n{flat / width, flat % width};
    const std::uint64_t expected = eval(spec, n);
    if (budget.mode == sweep_mode::exhaustive) {
      verdicts[flat] = check_stable_computation(net, n, expected, budget.max_configs);
      return;
    }
    verdict v;
    v.input = n;
    v.expected = expected;
    v.result = outcome::pass;
    for (std::size_t run = 0; run < budget.runs; ++run) {
      prng mix(budget.seed);
      const std::uint64_t seed = mix.next() ^ (n.n1 * 0x9e3779b97f4a7c15ULL) ^
                                 (n.n2 * 0xc2b2ae3d27d4eb4fULL) ^ run;
      const execution e = simulate(net, n, seed, budget.max_steps);
      if (e.step_budget_exceeded) {
        v.result = outcome::inconclusive;
        v.reason = "step budget hit on seed " + std::to_string(seed);
        break;
      }
      if (!monitor_monotonic(e, net)) {
        v.result = outcome::fail;
        v.reason = "output count decreased on seed " + std::to_string(seed);
        break;
      }
      const std::uint64_t got = e.final_config().count(net.outputs.front());
      if (got != expected) {
        v.result = outcome::fail;
        v.reason = "quiescent output " + std::to_string(got) + " on seed " +
                   std::to_string(seed);
        break;
      }
    }
    verdicts[flat] = std::move(v);
  };

  const unsigned jobs = std::max(1u, budget.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < total; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= total) return;
          run_one(i);
        }
      });
    for (auto& th : pool) th.join();
  }
  return verdicts;
}

std::string verdict_line(const verdict& v) {
  std::ostringstream os;
  os << "n=(" << v.input.n1 << "," << v.input.n2 << ") expected=" << v.expected << " outcome=";
  switch (v.result) {
    case outcome::pass: os << "PASS"; break;
    case outcome::fail: os << "FAIL"; break;
    case outcome::inconclusive: os << "INCONCLUSIVE"; break;
  }
  if (v.nodes > 0) os << " nodes=" << v.nodes << " edges=" << v.edges << " stable=" << v.stable;
  if (!v.reason.empty()) os << " reason=\"" << v.reason << "\"";
  return os.str();
}

}  // namespace oocrn
