#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "oocrn/error.hpp"

namespace oocrn {

using species_id = std::uint32_t;

// Sorted sparse stoichiometry vector: (species, coefficient) with
// coefficient > 0, strictly increasing species ids.
using stoich = std::vector<std::pair<species_id, std::uint32_t>>;

stoich make_stoich(std::vector<std::pair<species_id, std::uint32_t>> terms);
std::uint32_t stoich_count(const stoich& s, species_id sp);

struct reaction {
  stoich reactants;
  stoich products;
};

// Species counts, stored sparsely: only nonzero entries, sorted by species
// id. Absent species read as zero. The sorted form doubles as the canonical
// hash key during reachability exploration.
class configuration {
public:
  configuration() = default;

  std::uint32_t count(species_id sp) const;
  void set(species_id sp, std::uint32_t c);
  void add(species_id sp, std::int64_t delta);

  const std::vector<std::pair<species_id, std::uint32_t>>& entries() const { return counts_; }
  bool empty() const { return counts_.empty(); }

  friend bool operator==(const configuration& a, const configuration& b) {
    return a.counts_ == b.counts_;
  }

private:
  std::vector<std::pair<species_id, std::uint32_t>> counts_;
};

struct configuration_hash {
  std::size_t operator()(const configuration& c) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& [sp, n] : c.entries()) {
      h = (h ^ sp) * 0x100000001b3ULL;
      h = (h ^ n) * 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// A CRN with designated roles. Species are interned: a species is its index
// into `species`. Values are treated as immutable once built and are safe to
// share across verification workers.
struct crn {
  std::vector<std::string> species;
  std::vector<reaction> reactions;
  std::vector<species_id> inputs;   // [X1] or [X1, X2]
  std::vector<species_id> outputs;  // [Y]
  species_id leader = 0;

  species_id intern(const std::string& name);
  species_id find(const std::string& name) const;  // throws errc::domain if absent
  const std::string& name(species_id sp) const { return species.at(sp); }

  void add_reaction(std::vector<std::pair<species_id, std::uint32_t>> reactants,
                    std::vector<std::pair<species_id, std::uint32_t>> products);

private:
  std::unordered_map<std::string, species_id> index_;
};

// One randomized run: the initial configuration, then for each step the
// reaction fired and the configuration it produced.
struct execution {
  configuration initial;
  std::vector<std::pair<std::size_t, configuration>> steps;
  std::uint64_t seed = 0;
  bool step_budget_exceeded = false;

  const configuration& final_config() const { return steps.empty() ? initial : steps.back().second; }
};

struct nat2 {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  friend bool operator==(const nat2&, const nat2&) = default;
};

// Valid initial configuration: one leader, the input counts, nothing else.
configuration initial_configuration(const crn& net, nat2 n);

bool is_applicable(const configuration& c, const reaction& r);

// c - reactants + products; throws errc::not_applicable when short.
configuration apply(const configuration& c, const reaction& r);

// Indices of applicable reactions, in definition order (kept stable so that
// seeded runs are reproducible).
std::vector<std::size_t> applicable_reactions(const crn& net, const configuration& c);

struct oo_violation {
  std::size_t reaction;
  species_id species;
};

// Empty iff no output species ever appears on a reactant side, catalytic
// use included.
std::vector<oo_violation> check_output_oblivious(const crn& net);

std::vector<diagnostic> validate_crn(const crn& net);

std::string reaction_str(const crn& net, const reaction& r);

}  // namespace oocrn
