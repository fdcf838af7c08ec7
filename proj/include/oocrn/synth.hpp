#pragma once

#include <map>
#include <string>
#include <vector>

#include "oocrn/crn.hpp"
#include "oocrn/funcspec.hpp"

namespace oocrn {

enum class reaction_family {
  start,             // leader split / lockstep machine start
  input_machine,     // lockstep counter transition consuming a raw input
  z_producing,       // base L -> L' + A0 Z1 + B0 Z2 and the X-consuming Z emitters
  z_consuming_base,  // L' + A0 Z1 + B0 Z2 -> st(...)
  z_consuming,       // st + Z -> st'
  y_overflow,        // deficit spill when d > d_max
  y_fissure,         // deficit clear on a shared fissure line
  y_lower,           // deficit clear on a lower boundary line (Z1 catalysts)
  y_upper,           // deficit clear on an upper boundary line (Z2 catalysts)
  affine,            // base / periodic emitters of an affine-on-grid core
  adapter,           // standalone ceil / penalty counter transition
  min_cascade,
};

const char* family_name(reaction_family f);

struct state_triple {
  std::int64_t lx = 0;
  std::int64_t lz = 0;
  std::int64_t d = 0;
};

// Bookkeeping for one synthesized partial-fissure branch: integerized
// per-grid-step coefficients, the dip/step/congruence tables, and the
// species map the runtime invariant monitor uses to read states back out
// of configurations.
struct fissure_meta {
  std::uint32_t k = 1;
  std::int64_t d_max = 0;
  std::int64_t K = 1;         // k + d_max
  std::int64_t modulus = 1;   // 2K - 1, the l_x congruence ring
  std::int64_t lz_bound = 0;  // max(k, K-1); l_z stays within [-lz_bound, lz_bound]
  std::int64_t d_hi = 1;      // max(2 d_max + 1, base deficit)

  // phi'_A(m) = a0 + a1 m1 + a2 m2 in grid-step coordinates n = o + p*m,
  // so a1 = A1*p etc. are naturals.
  std::int64_t a0 = 0, a1 = 0, a2 = 0;
  std::int64_t b0 = 0, b1 = 0, b2 = 0;
  std::uint32_t period = 1;
  nat2 offset;
  std::map<std::int64_t, std::uint32_t> dips;

  species_id leader = 0, primed = 0;
  species_id x1 = 0, x2 = 0;  // what the core consumes: raw inputs or branch tokens
  species_id z1 = 0, z2 = 0;
  species_id output = 0;
  std::uint32_t x_multiplicity = 1;  // raw copies consumed per grid step
  std::map<species_id, state_triple> state_of;

  std::int64_t dip(std::int64_t i) const {
    const auto it = dips.find(i);
    return it == dips.end() ? 0 : static_cast<std::int64_t>(it->second);
  }
  // Deficit deltas for consuming one Z1 (l_z rises) or one Z2 (l_z falls).
  // The +1 appears exactly when the consumed coordinate is the strict min.
  std::int64_t d_plus(std::int64_t lz) const { return dip(lz) - dip(lz + 1) + (lz < 0 ? 1 : 0); }
  std::int64_t d_minus(std::int64_t lz) const { return dip(lz) - dip(lz - 1) + (lz > 0 ? 1 : 0); }
  std::int64_t r1(std::int64_t lx, std::int64_t lz) const {
    return ((lx - lz) % modulus + modulus) % modulus;
  }
  std::int64_t r2(std::int64_t lx, std::int64_t lz) const {
    return ((lz - lx) % modulus + modulus) % modulus;
  }
  std::int64_t base_lz() const { return a0 - b0; }
  std::int64_t base_deficit() const { return std::min(a0, b0) - dip(a0 - b0); }
};

struct synth_report {
  crn net;
  std::vector<reaction_family> family;  // aligned with net.reactions
  std::vector<fissure_meta> fissures;   // one per fissure branch
  std::uint64_t c_max = 0;              // penalty slope, when point/line pieces exist

  std::map<std::string, std::size_t> reactions_by_family() const;
};

// Lemma-4 style core for one affine piece: base reaction consuming the
// offset, plus one catalytic emitter per infinite axis.
crn synth_affine_on_grid(const affine_piece& piece);

// The fissure core for one partial fissure, consuming raw inputs p at a
// time. Grid offsets are folded into the base reaction.
synth_report synth_partial_fissure(const partial_fissure& fs);

// Standalone branch fragment: a leader counter that consumes branch inputs
// one at a time and emits `base` up front plus slopes.first/.second per
// completed period block, so the emitted total is always
// f(grid_ceil(g, x)) for the affine f with those increments.
crn synth_ceil_adapter(const grid& g, std::uint32_t branch,
                       std::pair<std::uint64_t, std::uint64_t> slopes, std::uint64_t base);

// Standalone branch fragment for a point domain: emits `value` up front,
// nothing while counting up to the offset, and c_max per extra copy, so the
// branch output is value + c_max * sum_i max(0, x_i - o_i).
crn synth_point_penalty(nat2 o, std::uint64_t value, std::uint64_t c_max);

// Left-fold binary cascade; the stable count of `final_output` is the
// minimum of the branch totals.
crn synth_min(const std::vector<std::string>& branch_outputs, const std::string& final_output);

// X_i -> X_i.b0 + ... + X_i.b(m-1) for i = 1, 2.
crn synth_fanout(std::size_t m);

// Full pipeline. Multi-branch specs get a single lockstep input machine
// that implements every branch's grid-ceiling counter in product form and
// multicasts per-branch emissions, followed by the min cascade.
synth_report synthesize(const function_spec& spec);

std::string serialize_synth_report(const synth_report& report);

}  // namespace oocrn
