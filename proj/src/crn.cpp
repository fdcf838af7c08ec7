#include "oocrn/crn.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace oocrn {

stoich make_stoich(std::vector<std::pair<species_id, std::uint32_t>> terms) {
  std::map<species_id, std::uint64_t> merged;
  for (const auto& [sp, c] : terms) merged[sp] += c;
  stoich out;
  out.reserve(merged.size());
  for (const auto& [sp, c] : merged) {
    if (c == 0) continue;
    out.emplace_back(sp, static_cast<std::uint32_t>(c));
  }
  return out;
}

std::uint32_t stoich_count(const stoich& s, species_id sp) {
  const auto it = std::lower_bound(s.begin(), s.end(), sp,
                                   [](const auto& e, species_id v) { return e.first < v; });
  return (it != s.end() && it->first == sp) ? it->second : 0;
}

std::uint32_t configuration::count(species_id sp) const {
  const auto it = std::lower_bound(counts_.begin(), counts_.end(), sp,
                                   [](const auto& e, species_id v) { return e.first < v; });
  return (it != counts_.end() && it->first == sp) ? it->second : 0;
}

void configuration::set(species_id sp, std::uint32_t c) {
  const auto it = std::lower_bound(counts_.begin(), counts_.end(), sp,
                                   [](const auto& e, species_id v) { return e.first < v; });
  if (it != counts_.end() && it->first == sp) {
    if (c == 0)
      counts_.erase(it);
    else
      it->second = c;
  } else if (c != 0) {
    counts_.insert(it, {sp, c});
  }
}

void configuration::add(species_id sp, std::int64_t delta) {
  const std::int64_t next = static_cast<std::int64_t>(count(sp)) + delta;
  if (next < 0) fail(errc::not_applicable, "species count would go negative");
  set(sp, static_cast<std::uint32_t>(next));
}

species_id crn::intern(const std::string& name) {
  const auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  const species_id id = static_cast<species_id>(species.size());
  species.push_back(name);
  index_.emplace(name, id);
  return id;
}

species_id crn::find(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) fail(errc::domain, "unknown species: " + name);
  return it->second;
}

void crn::add_reaction(std::vector<std::pair<species_id, std::uint32_t>> reactants,
                       std::vector<std::pair<species_id, std::uint32_t>> products) {
  reactions.push_back({make_stoich(std::move(reactants)), make_stoich(std::move(products))});
}

configuration initial_configuration(const crn& net, nat2 n) {
  if (net.inputs.size() < 2 && n.n2 != 0)
    fail(errc::domain, "CRN has a single input species but n2 != 0");
  configuration c;
  c.set(net.leader, 1);
  if (!net.inputs.empty()) c.add(net.inputs[0], static_cast<std::int64_t>(n.n1));
  if (net.inputs.size() > 1) c.add(net.inputs[1], static_cast<std::int64_t>(n.n2));
  return c;
}

bool is_applicable(const configuration& c, const reaction& r) {
  auto it = c.entries().begin();
  const auto end = c.entries().end();
  for (const auto& [sp, need] : r.reactants) {
    while (it != end && it->first < sp) ++it;
    if (it == end || it->first != sp || it->second < need) return false;
  }
  return true;
}

configuration apply(const configuration& c, const reaction& r) {
  if (!is_applicable(c, r)) fail(errc::not_applicable, "reaction not applicable");
  configuration out = c;
  for (const auto& [sp, need] : r.reactants) out.add(sp, -static_cast<std::int64_t>(need));
  for (const auto& [sp, made] : r.products) out.add(sp, static_cast<std::int64_t>(made));
  return out;
}

std::vector<std::size_t> applicable_reactions(const crn& net, const configuration& c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < net.reactions.size(); ++i)
    if (is_applicable(c, net.reactions[i])) out.push_back(i);
  return out;
}

std::vector<oo_violation> check_output_oblivious(const crn& net) {
  std::vector<oo_violation> out;
  for (std::size_t i = 0; i < net.reactions.size(); ++i)
    for (const auto& [sp, coeff] : net.reactions[i].reactants)
      for (const species_id y : net.outputs)
        if (sp == y && coeff > 0) out.push_back({i, sp});
  return out;
}

std::vector<diagnostic> validate_crn(const crn& net) {
  std::vector<diagnostic> out;

  std::set<std::string> seen;
  for (const auto& name : net.species) {
    if (name.empty()) out.push_back({"empty-species-id", "species with empty identifier", {}, {}});
    if (!seen.insert(name).second)
      out.push_back({"duplicate-species-id", "duplicate species identifier: " + name, {}, name});
  }

  const auto declared = [&](species_id sp) { return static_cast<std::size_t>(sp) < net.species.size(); };

  for (std::size_t i = 0; i < net.reactions.size(); ++i) {
    const reaction& r = net.reactions[i];
    if (r.reactants == r.products)
      out.push_back({"null-reaction", "reaction " + std::to_string(i) + " has s = t", i, {}});
    for (const auto side : {&r.reactants, &r.products})
      for (const auto& [sp, coeff] : *side) {
        (void)coeff;
        if (!declared(sp))
          out.push_back({"undeclared-species",
                         "reaction " + std::to_string(i) + " uses an undeclared species", i, {}});
      }
  }

  for (const species_id x : net.inputs)
    if (net.leader == x)
      out.push_back({"leader-is-input", "leader declared as an input species", {}, net.species.at(x)});
  for (const species_id y : net.outputs) {
    if (net.leader == y)
      out.push_back({"leader-is-output", "leader declared as an output species", {}, net.species.at(y)});
    for (const species_id x : net.inputs)
      if (x == y)
        out.push_back({"output-is-input", "output declared as an input species", {}, net.species.at(y)});
  }
  if (!declared(net.leader)) out.push_back({"undeclared-species", "leader not declared", {}, {}});
  for (const species_id sp : net.inputs)
    if (!declared(sp)) out.push_back({"undeclared-species", "input not declared", {}, {}});
  for (const species_id sp : net.outputs)
    if (!declared(sp)) out.push_back({"undeclared-species", "output not declared", {}, {}});

  return out;
}

std::string reaction_str(const crn& net, const reaction& r) {
  const auto side = [&](const stoich& s) {
    if (s.empty()) return std::string("0");
    std::ostringstream os;
    bool first = true;
    for (const auto& [sp, coeff] : s) {
      if (!first) os << " + ";
      first = false;
      if (coeff != 1) os << coeff << ' ';
      os << net.name(sp);
    }
    return os.str();
  };
  return side(r.reactants) + " -> " + side(r.products);
}

}  // namespace oocrn
