#include "oocrn/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>

namespace oocrn {

const char* family_name(reaction_family f) {
  switch (f) {
    case reaction_family::start: return "start";
    case reaction_family::input_machine: return "input_machine";
    case reaction_family::z_producing: return "z_producing";
    case reaction_family::z_consuming_base: return "z_consuming_base";
    case reaction_family::z_consuming: return "z_consuming";
    case reaction_family::y_overflow: return "y_overflow";
    case reaction_family::y_fissure: return "y_fissure";
    case reaction_family::y_lower: return "y_lower";
    case reaction_family::y_upper: return "y_upper";
    case reaction_family::affine: return "affine";
    case reaction_family::adapter: return "adapter";
    case reaction_family::min_cascade: return "min_cascade";
  }
  return "?";
}

std::map<std::string, std::size_t> synth_report::reactions_by_family() const {
  std::map<std::string, std::size_t> out;
  for (const reaction_family f : family) ++out[family_name(f)];
  return out;
}

namespace {

std::string enc(std::int64_t v) { return v < 0 ? "m" + std::to_string(-v) : std::to_string(v); }

std::uint32_t u32(std::int64_t v, const char* what) {
  if (v < 0 || v > 0xffffffffLL) fail(errc::range, std::string(what) + " out of range");
  return static_cast<std::uint32_t>(v);
}

std::int64_t nat_coeff(const rational& r, const std::string& what) {
  if (!r.is_integer() || r.num() < 0)
    fail(errc::integrality, what + " = " + r.str() + " is not a natural");
  return r.num();
}

using term_list = std::vector<std::pair<species_id, std::uint32_t>>;

// Shared plumbing for emitting the fissure core of one branch into `net`.
// `x1`/`x2` are what the core consumes: raw inputs (x_mult = p copies per
// grid step, offset folded into the base reaction) for a standalone core,
// or per-branch tokens (x_mult = 1) behind a lockstep input machine.
struct core_io {
  species_id leader = 0;
  species_id x1 = 0, x2 = 0;
  std::uint32_t x_mult = 1;
  bool offset_in_base = false;
  std::string suffix;  // "" or ".b<j>"
  species_id output = 0;
};

fissure_meta build_fissure_core(crn& net, std::vector<reaction_family>& fam,
                                const partial_fissure& fs, const core_io& io) {
  fissure_meta meta;
  const std::int64_t p = static_cast<std::int64_t>(fs.dom.p);
  meta.k = fs.k;
  meta.period = fs.dom.p;
  meta.offset = fs.dom.offset;
  meta.dips = fs.dips;
  meta.a0 = nat_coeff(fs.phi_a(fs.dom.offset), "phi_A at the offset");
  meta.b0 = nat_coeff(fs.phi_b(fs.dom.offset), "phi_B at the offset");
  meta.a1 = nat_coeff(fs.A1 * p, "A1*p");
  meta.a2 = nat_coeff(fs.A2 * p, "A2*p");
  meta.b1 = nat_coeff(fs.B1 * p, "B1*p");
  meta.b2 = nat_coeff(fs.B2 * p, "B2*p");
  meta.d_max = 0;
  for (const auto& [i, d] : fs.dips) {
    (void)i;
    meta.d_max = std::max<std::int64_t>(meta.d_max, d);
  }
  meta.K = static_cast<std::int64_t>(fs.k) + meta.d_max;
  meta.modulus = 2 * meta.K - 1;
  meta.lz_bound = std::max<std::int64_t>(fs.k, meta.K - 1);
  if (std::abs(meta.base_lz()) >= meta.K)
    fail(errc::range, "base state |A0-B0| = " + std::to_string(std::abs(meta.base_lz())) +
                          " >= K = " + std::to_string(meta.K));
  if (meta.base_deficit() < 0)
    fail(errc::range, "base deficit is negative (value at the offset below zero)");
  meta.d_hi = std::max(2 * meta.d_max + 1, meta.base_deficit());

  meta.leader = io.leader;
  meta.x1 = io.x1;
  meta.x2 = io.x2;
  meta.x_multiplicity = io.x_mult;
  meta.output = io.output;
  meta.primed = net.intern("Lp" + io.suffix);
  meta.z1 = net.intern("Z1" + io.suffix);
  meta.z2 = net.intern("Z2" + io.suffix);

  const std::int64_t k = static_cast<std::int64_t>(fs.k);
  const std::int64_t d_lo = -meta.d_max;
  const auto wrap = [&](std::int64_t v) {
    std::int64_t r = ((v % meta.modulus) + meta.modulus) % meta.modulus;
    if (r > meta.K - 1) r -= meta.modulus;
    return r;
  };

  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, species_id> st;
  for (std::int64_t lx = -meta.K + 1; lx <= meta.K - 1; ++lx)
    for (std::int64_t lz = -meta.lz_bound; lz <= meta.lz_bound; ++lz)
      for (std::int64_t d = d_lo; d <= meta.d_hi; ++d) {
        const species_id id = net.intern("st" + io.suffix + "." + enc(lx) + "." + enc(lz) + "." +
                                         enc(d));
        st[{lx, lz, d}] = id;
        meta.state_of[id] = {lx, lz, d};
      }
  const auto st_at = [&](std::int64_t lx, std::int64_t lz, std::int64_t d) {
    return st.at({lx, lz, d});
  };

  const auto emit = [&](term_list lhs, term_list rhs, reaction_family f) {
    net.add_reaction(std::move(lhs), std::move(rhs));
    fam.push_back(f);
  };

  // Z-producing base: L (+ the grid offset when consumed here) -> L' + A0 Z1 + B0 Z2.
  {
    term_list lhs{{io.leader, 1}};
    if (io.offset_in_base) {
      lhs.push_back({io.x1, u32(static_cast<std::int64_t>(fs.dom.offset.n1), "offset")});
      lhs.push_back({io.x2, u32(static_cast<std::int64_t>(fs.dom.offset.n2), "offset")});
    }
    emit(std::move(lhs),
         {{meta.primed, 1}, {meta.z1, u32(meta.a0, "A0")}, {meta.z2, u32(meta.b0, "B0")}},
         reaction_family::z_producing);
  }
  // Z-consuming base: L' + A0 Z1 + B0 Z2 -> st(A0-B0, A0-B0, min{A0,B0} - d_(A0-B0)).
  emit({{meta.primed, 1}, {meta.z1, u32(meta.a0, "A0")}, {meta.z2, u32(meta.b0, "B0")}},
       {{st_at(meta.base_lz(), meta.base_lz(), meta.base_deficit()), 1}},
       reaction_family::z_consuming_base);

  // X-consuming Z producers: one grid step per firing, l_x advances mod 2K-1.
  for (int dim = 0; dim < 2; ++dim) {
    const species_id x = dim == 0 ? io.x1 : io.x2;
    const std::int64_t za = dim == 0 ? meta.a1 : meta.a2;
    const std::int64_t zb = dim == 0 ? meta.b1 : meta.b2;
    const std::int64_t delta = za - zb;
    for (std::int64_t lx = -meta.K + 1; lx <= meta.K - 1; ++lx)
      for (std::int64_t lz = -meta.lz_bound; lz <= meta.lz_bound; ++lz)
        for (std::int64_t d = d_lo; d <= meta.d_hi; ++d)
          emit({{st_at(lx, lz, d), 1}, {x, io.x_mult}},
               {{st_at(wrap(lx + delta), lz, d), 1},
                {meta.z1, u32(za, "Z1 coefficient")},
                {meta.z2, u32(zb, "Z2 coefficient")}},
               reaction_family::z_producing);
  }

  // Z-consuming: move l_z one line and adjust the deficit. Allowed only up
  // to the near edge of the opposite boundary band and while d <= d_max.
  for (std::int64_t lx = -meta.K + 1; lx <= meta.K - 1; ++lx)
    for (std::int64_t lz = -meta.lz_bound; lz <= meta.lz_bound; ++lz)
      for (std::int64_t d = d_lo; d <= meta.d_max; ++d) {
        if (lz < k) {
          const std::int64_t t = d + meta.d_plus(lz);
          if (t >= d_lo && t <= meta.d_hi)
            emit({{st_at(lx, lz, d), 1}, {meta.z1, 1}}, {{st_at(lx, lz + 1, t), 1}},
                 reaction_family::z_consuming);
        }
        if (lz > -k) {
          const std::int64_t t = d + meta.d_minus(lz);
          if (t >= d_lo && t <= meta.d_hi)
            emit({{st_at(lx, lz, d), 1}, {meta.z2, 1}}, {{st_at(lx, lz - 1, t), 1}},
                 reaction_family::z_consuming);
        }
      }

  // Deficit spill: d above d_max always pays out immediately.
  for (std::int64_t lx = -meta.K + 1; lx <= meta.K - 1; ++lx)
    for (std::int64_t lz = -meta.lz_bound; lz <= meta.lz_bound; ++lz)
      for (std::int64_t d = meta.d_max + 1; d <= meta.d_hi; ++d)
        emit({{st_at(lx, lz, d), 1}},
             {{st_at(lx, lz, meta.d_max), 1}, {io.output, u32(d - meta.d_max, "spill")}},
             reaction_family::y_overflow);

  // Deficit clear on a shared fissure line: input and consumed-Z lines agree.
  for (std::int64_t l = -k + 1; l <= k - 1; ++l)
    for (std::int64_t d = 1; d <= meta.d_max; ++d)
      emit({{st_at(l, l, d), 1}}, {{st_at(l, l, 0), 1}, {io.output, u32(d, "deficit")}},
           reaction_family::y_fissure);

  // Deficit clear on boundary lines: r surplus Z certify that the input line
  // is r consumptions away (r = 0 means the lines already agree).
  for (std::int64_t lx = -meta.K + 1; lx <= meta.K - 1; ++lx)
    for (std::int64_t d = 1; d <= meta.d_max; ++d) {
      for (std::int64_t lz = k; lz <= meta.lz_bound; ++lz) {
        const std::uint32_t r = u32(meta.r1(lx, lz), "r1");
        emit({{st_at(lx, lz, d), 1}, {meta.z1, r}},
             {{st_at(lx, lz, 0), 1}, {meta.z1, r}, {io.output, u32(d, "deficit")}},
             reaction_family::y_lower);
      }
      for (std::int64_t lz = -meta.lz_bound; lz <= -k; ++lz) {
        const std::uint32_t r = u32(meta.r2(lx, lz), "r2");
        emit({{st_at(lx, lz, d), 1}, {meta.z2, r}},
             {{st_at(lx, lz, 0), 1}, {meta.z2, r}, {io.output, u32(d, "deficit")}},
             reaction_family::y_upper);
      }
    }

  return meta;
}

// succ/emission logic for the ceiling counters. Classes 0..W with
// wrap W -> W-p+1 track a consumed count exactly below the largest offset
// and modulo p beyond it; x_hat = c+1 is the (mod-p faithful) count after
// one more consumption.
struct dim_classes {
  std::uint64_t W = 0;
  std::uint32_t p = 1;
  bool absorbing = false;  // point-penalty counters stop at W instead of wrapping

  std::uint64_t succ(std::uint64_t c) const {
    if (c < W) return c + 1;
    return absorbing ? W : W - (p - 1);
  }
};

bool block_entry(std::uint64_t x_hat, std::uint64_t off, std::uint32_t p) {
  return x_hat > off && (x_hat - off - 1) % p == 0;
}

void append_min_cascade(crn& net, std::vector<reaction_family>& fam,
                        const std::vector<species_id>& outs, species_id final_out) {
  species_id acc = outs.at(0);
  for (std::size_t i = 1; i < outs.size(); ++i) {
    const species_id next =
        (i + 1 == outs.size()) ? final_out : net.intern("min." + std::to_string(i));
    net.add_reaction({{acc, 1}, {outs[i], 1}}, {{next, 1}});
    fam.push_back(reaction_family::min_cascade);
    acc = next;
  }
}

}  // namespace

crn synth_affine_on_grid(const affine_piece& piece) {
  crn net;
  const species_id L = net.intern("L");
  const species_id X1 = net.intern("X1");
  const species_id X2 = net.intern("X2");
  const species_id Y = net.intern("Y");
  const species_id Lp = net.intern("Lp");
  net.inputs = {X1, X2};
  net.outputs = {Y};
  net.leader = L;

  const grid& g = piece.domain;
  const std::int64_t at_offset = nat_coeff(piece.value(g.offset), "value at the offset");
  net.add_reaction({{L, 1},
                    {X1, u32(static_cast<std::int64_t>(g.offset.n1), "offset")},
                    {X2, u32(static_cast<std::int64_t>(g.offset.n2), "offset")}},
                   {{Lp, 1}, {Y, u32(at_offset, "base output")}});
  if (g.p > 0) {
    const std::int64_t step = nat_coeff(piece.a1 * static_cast<std::int64_t>(g.p), "a1*p");
    net.add_reaction({{Lp, 1}, {X1, g.p}}, {{Lp, 1}, {Y, u32(step, "a1*p")}});
  }
  if (g.q > 0) {
    const std::int64_t step = nat_coeff(piece.a2 * static_cast<std::int64_t>(g.q), "a2*q");
    net.add_reaction({{Lp, 1}, {X2, g.q}}, {{Lp, 1}, {Y, u32(step, "a2*q")}});
  }
  return net;
}

synth_report synth_partial_fissure(const partial_fissure& fs) {
  synth_report rep;
  crn& net = rep.net;
  const species_id L = net.intern("L");
  const species_id X1 = net.intern("X1");
  const species_id X2 = net.intern("X2");
  const species_id Y = net.intern("Y");
  net.inputs = {X1, X2};
  net.outputs = {Y};
  net.leader = L;

  core_io io;
  io.leader = L;
  io.x1 = X1;
  io.x2 = X2;
  io.x_mult = fs.dom.p;
  io.offset_in_base = true;
  io.output = Y;
  rep.fissures.push_back(build_fissure_core(net, rep.family, fs, io));
  return rep;
}

crn synth_ceil_adapter(const grid& g, std::uint32_t branch,
                       std::pair<std::uint64_t, std::uint64_t> slopes, std::uint64_t base) {
  if (!g.is_two_way()) fail(errc::domain, "ceil adapter requires a two-way-infinite grid");
  const std::string b = ".b" + std::to_string(branch);
  crn net;
  const species_id L = net.intern("L" + b);
  const species_id X1 = net.intern("X1" + b);
  const species_id X2 = net.intern("X2" + b);
  const species_id Y = net.intern("Y" + b);
  net.inputs = {X1, X2};
  net.outputs = {Y};
  net.leader = L;

  const dim_classes d1{g.offset.n1 + g.p - 1, g.p, false};
  const dim_classes d2{g.offset.n2 + g.q - 1, g.q, false};
  std::vector<std::vector<species_id>> cnt(d1.W + 1, std::vector<species_id>(d2.W + 1));
  for (std::uint64_t c1 = 0; c1 <= d1.W; ++c1)
    for (std::uint64_t c2 = 0; c2 <= d2.W; ++c2)
      cnt[c1][c2] = net.intern("cnt." + std::to_string(c1) + "." + std::to_string(c2));

  net.add_reaction({{L, 1}}, {{cnt[0][0], 1}, {Y, u32(static_cast<std::int64_t>(base), "base")}});
  for (std::uint64_t c1 = 0; c1 <= d1.W; ++c1)
    for (std::uint64_t c2 = 0; c2 <= d2.W; ++c2) {
      term_list rhs1{{cnt[d1.succ(c1)][c2], 1}};
      if (block_entry(c1 + 1, g.offset.n1, g.p) && slopes.first > 0)
        rhs1.push_back({Y, u32(static_cast<std::int64_t>(slopes.first), "slope")});
      net.add_reaction({{cnt[c1][c2], 1}, {X1, 1}}, std::move(rhs1));
      term_list rhs2{{cnt[c1][d2.succ(c2)], 1}};
      if (block_entry(c2 + 1, g.offset.n2, g.q) && slopes.second > 0)
        rhs2.push_back({Y, u32(static_cast<std::int64_t>(slopes.second), "slope")});
      net.add_reaction({{cnt[c1][c2], 1}, {X2, 1}}, std::move(rhs2));
    }
  return net;
}

crn synth_point_penalty(nat2 o, std::uint64_t value, std::uint64_t c_max) {
  crn net;
  const species_id L = net.intern("L");
  const species_id X1 = net.intern("X1");
  const species_id X2 = net.intern("X2");
  const species_id Y = net.intern("Y");
  net.inputs = {X1, X2};
  net.outputs = {Y};
  net.leader = L;

  const dim_classes d1{o.n1, 1, true};
  const dim_classes d2{o.n2, 1, true};
  std::vector<std::vector<species_id>> pt(d1.W + 1, std::vector<species_id>(d2.W + 1));
  for (std::uint64_t c1 = 0; c1 <= d1.W; ++c1)
    for (std::uint64_t c2 = 0; c2 <= d2.W; ++c2)
      pt[c1][c2] = net.intern("pt." + std::to_string(c1) + "." + std::to_string(c2));

  net.add_reaction({{L, 1}}, {{pt[0][0], 1}, {Y, u32(static_cast<std::int64_t>(value), "value")}});
  for (std::uint64_t c1 = 0; c1 <= d1.W; ++c1)
    for (std::uint64_t c2 = 0; c2 <= d2.W; ++c2) {
      term_list rhs1{{pt[d1.succ(c1)][c2], 1}};
      if (c1 + 1 > o.n1) rhs1.push_back({Y, u32(static_cast<std::int64_t>(c_max), "c_max")});
      net.add_reaction({{pt[c1][c2], 1}, {X1, 1}}, std::move(rhs1));
      term_list rhs2{{pt[c1][d2.succ(c2)], 1}};
      if (c2 + 1 > o.n2) rhs2.push_back({Y, u32(static_cast<std::int64_t>(c_max), "c_max")});
      net.add_reaction({{pt[c1][c2], 1}, {X2, 1}}, std::move(rhs2));
    }
  return net;
}

crn synth_min(const std::vector<std::string>& branch_outputs, const std::string& final_output) {
  if (branch_outputs.size() < 2) fail(errc::domain, "min cascade needs at least two branches");
  crn net;
  net.leader = net.intern("L");
  std::vector<species_id> outs;
  for (const auto& name : branch_outputs) outs.push_back(net.intern(name));
  const species_id fin = net.intern(final_output);
  net.outputs = {fin};
  std::vector<reaction_family> fam;
  append_min_cascade(net, fam, outs, fin);
  return net;
}

crn synth_fanout(std::size_t m) {
  if (m < 1) fail(errc::domain, "fanout needs m >= 1");
  crn net;
  net.leader = net.intern("L");
  const species_id X1 = net.intern("X1");
  const species_id X2 = net.intern("X2");
  net.inputs = {X1, X2};
  for (int dim = 0; dim < 2; ++dim) {
    term_list rhs;
    for (std::size_t j = 0; j < m; ++j)
      rhs.push_back({net.intern((dim == 0 ? "X1.b" : "X2.b") + std::to_string(j)), 1});
    net.add_reaction({{dim == 0 ? X1 : X2, 1}}, std::move(rhs));
  }
  return net;
}

namespace {

// One branch of the lockstep machine: what to emit, per dimension, when the
// global consumed count crosses into a new period block (mode block) or past
// the offset (mode penalty).
struct dim_rule {
  enum class mode { block, penalty } mode = mode::block;
  std::uint64_t offset = 0;
  std::uint64_t amount = 0;    // per block entry, or per step beyond the offset
};

struct branch_rules {
  dim_rule dim[2];
  species_id target[2] = {0, 0};  // emitted species per dimension
};

std::uint64_t emission(const dim_rule& r, std::uint64_t x_hat, std::uint32_t p) {
  switch (r.mode) {
    case dim_rule::mode::block: return block_entry(x_hat, r.offset, p) ? r.amount : 0;
    case dim_rule::mode::penalty: return x_hat > r.offset ? r.amount : 0;
  }
  return 0;
}

// Max one-step growth of the spec value over the audit box; the penalty
// slope that makes point/line branches dominate everywhere.
std::uint64_t penalty_slope(const function_spec& spec) {
  const std::uint64_t side = audit_box_side(spec);
  std::uint64_t c = 1;
  for (std::uint64_t a = 0; a <= side; ++a)
    for (std::uint64_t b = 0; b <= side; ++b) {
      const std::uint64_t v = eval(spec, {a, b});
      if (a < side) c = std::max(c, eval(spec, {a + 1, b}) - v);
      if (b < side) c = std::max(c, eval(spec, {a, b + 1}) - v);
    }
  return c;
}

}  // namespace

synth_report synthesize(const function_spec& spec) {
  {
    const auto diags = validate_spec(spec);
    if (!diags.empty())
      fail(errc::domain, "spec failed validation: " + diags.front().code + ": " +
                             diags.front().message);
  }

  synth_report rep;
  crn& net = rep.net;
  const std::uint32_t p = spec_period(spec);

  if (const auto* ga = std::get_if<grid_affine_spec>(&spec)) {
    if (ga->pieces.size() == 1) {
      // A single piece can only cover N^2, so the Lemma-4 core is the whole CRN.
      rep.net = synth_affine_on_grid(ga->pieces.front());
      rep.family.assign(rep.net.reactions.size(), reaction_family::affine);
      return rep;
    }

    const species_id L = net.intern("L");
    const species_id X1 = net.intern("X1");
    const species_id X2 = net.intern("X2");
    const species_id Y = net.intern("Y");
    net.inputs = {X1, X2};
    net.outputs = {Y};
    net.leader = L;

    const bool has_penalty = std::any_of(ga->pieces.begin(), ga->pieces.end(),
                                         [](const affine_piece& q) { return !q.domain.is_two_way(); });
    if (has_penalty) rep.c_max = penalty_slope(spec);

    std::vector<branch_rules> rules;
    std::vector<species_id> branch_out;
    term_list start_rhs;
    std::uint64_t max_off1 = 0, max_off2 = 0;
    for (std::size_t j = 0; j < ga->pieces.size(); ++j) {
      const affine_piece& piece = ga->pieces[j];
      const grid& g = piece.domain;
      max_off1 = std::max(max_off1, g.offset.n1);
      max_off2 = std::max(max_off2, g.offset.n2);
      const species_id yb = net.intern("Y.b" + std::to_string(j));
      branch_out.push_back(yb);

      branch_rules br;
      br.target[0] = br.target[1] = yb;
      br.dim[0].offset = g.offset.n1;
      br.dim[1].offset = g.offset.n2;
      if (g.p > 0) {
        br.dim[0].mode = dim_rule::mode::block;
        br.dim[0].amount =
            static_cast<std::uint64_t>(nat_coeff(piece.a1 * static_cast<std::int64_t>(g.p), "a1*p"));
      } else {
        br.dim[0].mode = dim_rule::mode::penalty;
        br.dim[0].amount = rep.c_max;
      }
      if (g.q > 0) {
        br.dim[1].mode = dim_rule::mode::block;
        br.dim[1].amount =
            static_cast<std::uint64_t>(nat_coeff(piece.a2 * static_cast<std::int64_t>(g.q), "a2*q"));
      } else {
        br.dim[1].mode = dim_rule::mode::penalty;
        br.dim[1].amount = rep.c_max;
      }
      rules.push_back(br);

      const std::int64_t base = nat_coeff(piece.value(g.offset), "value at the offset");
      if (base > 0) start_rhs.push_back({yb, u32(base, "base")});
    }

    const dim_classes d1{max_off1 + p - 1, p, false};
    const dim_classes d2{max_off2 + p - 1, p, false};
    std::vector<std::vector<species_id>> cnt(d1.W + 1, std::vector<species_id>(d2.W + 1));
    for (std::uint64_t c1 = 0; c1 <= d1.W; ++c1)
      for (std::uint64_t c2 = 0; c2 <= d2.W; ++c2)
        cnt[c1][c2] = net.intern("cnt." + std::to_string(c1) + "." + std::to_string(c2));

    start_rhs.insert(start_rhs.begin(), {cnt[0][0], 1});
    net.add_reaction({{L, 1}}, std::move(start_rhs));
    rep.family.push_back(reaction_family::start);

    for (int dim = 0; dim < 2; ++dim)
      for (std::uint64_t c1 = 0; c1 <= d1.W; ++c1)
        for (std::uint64_t c2 = 0; c2 <= d2.W; ++c2) {
          const std::uint64_t x_hat = (dim == 0 ? c1 : c2) + 1;
          term_list rhs{{dim == 0 ? cnt[d1.succ(c1)][c2] : cnt[c1][d2.succ(c2)], 1}};
          for (const branch_rules& br : rules) {
            const std::uint64_t amt = emission(br.dim[dim], x_hat, p);
            if (amt > 0) rhs.push_back({br.target[dim], u32(static_cast<std::int64_t>(amt), "emission")});
          }
          net.add_reaction({{cnt[c1][c2], 1}, {dim == 0 ? X1 : X2, 1}}, std::move(rhs));
          rep.family.push_back(reaction_family::input_machine);
        }

    append_min_cascade(net, rep.family, branch_out, Y);
    return rep;
  }

  const auto& mf = std::get<min_of_fissures_spec>(spec);
  std::vector<const partial_fissure*> branches;
  for (const complete_fissure& f : mf.fissures)
    for (const partial_fissure& fs : f.partials) branches.push_back(&fs);

  if (branches.size() == 1) {
    rep = synth_partial_fissure(*branches.front());
    return rep;
  }

  const species_id L = net.intern("L");
  const species_id X1 = net.intern("X1");
  const species_id X2 = net.intern("X2");
  const species_id Y = net.intern("Y");
  net.inputs = {X1, X2};
  net.outputs = {Y};
  net.leader = L;

  std::vector<branch_rules> rules;
  std::vector<species_id> branch_leaders, branch_out;
  std::vector<std::pair<species_id, species_id>> branch_tokens;
  std::uint64_t max_off1 = 0, max_off2 = 0;
  for (std::size_t j = 0; j < branches.size(); ++j) {
    const grid& g = branches[j]->dom;
    max_off1 = std::max(max_off1, g.offset.n1);
    max_off2 = std::max(max_off2, g.offset.n2);
    const std::string b = ".b" + std::to_string(j);
    branch_leaders.push_back(net.intern("L" + b));
    branch_tokens.push_back({net.intern("X1" + b), net.intern("X2" + b)});
    branch_out.push_back(net.intern("Y" + b));
    branch_rules br;
    br.dim[0] = {dim_rule::mode::block, g.offset.n1, 1};
    br.dim[1] = {dim_rule::mode::block, g.offset.n2, 1};
    br.target[0] = branch_tokens[j].first;
    br.target[1] = branch_tokens[j].second;
    rules.push_back(br);
  }

  const dim_classes d1{max_off1 + p - 1, p, false};
  const dim_classes d2{max_off2 + p - 1, p, false};
  std::vector<std::vector<species_id>> cnt(d1.W + 1, std::vector<species_id>(d2.W + 1));
  for (std::uint64_t c1 = 0; c1 <= d1.W; ++c1)
    for (std::uint64_t c2 = 0; c2 <= d2.W; ++c2)
      cnt[c1][c2] = net.intern("cnt." + std::to_string(c1) + "." + std::to_string(c2));

  term_list start_rhs{{cnt[0][0], 1}};
  for (const species_id lb : branch_leaders) start_rhs.push_back({lb, 1});
  net.add_reaction({{L, 1}}, std::move(start_rhs));
  rep.family.push_back(reaction_family::start);

  for (int dim = 0; dim < 2; ++dim)
    for (std::uint64_t c1 = 0; c1 <= d1.W; ++c1)
      for (std::uint64_t c2 = 0; c2 <= d2.W; ++c2) {
        const std::uint64_t x_hat = (dim == 0 ? c1 : c2) + 1;
        term_list rhs{{dim == 0 ? cnt[d1.succ(c1)][c2] : cnt[c1][d2.succ(c2)], 1}};
        for (const branch_rules& br : rules)
          if (emission(br.dim[dim], x_hat, p) > 0) rhs.push_back({br.target[dim], 1});
        net.add_reaction({{cnt[c1][c2], 1}, {dim == 0 ? X1 : X2, 1}}, std::move(rhs));
        rep.family.push_back(reaction_family::input_machine);
      }

  for (std::size_t j = 0; j < branches.size(); ++j) {
    core_io io;
    io.leader = branch_leaders[j];
    io.x1 = branch_tokens[j].first;
    io.x2 = branch_tokens[j].second;
    io.x_mult = 1;
    io.offset_in_base = false;
    io.suffix = ".b" + std::to_string(j);
    io.output = branch_out[j];
    rep.fissures.push_back(build_fissure_core(net, rep.family, *branches[j], io));
  }

  append_min_cascade(net, rep.family, branch_out, Y);
  return rep;
}

std::string serialize_synth_report(const synth_report& report) {
  using nlohmann::json;
  json j;
  j["species"]["total"] = report.net.species.size();
  std::size_t n_state = 0, n_z = 0, n_adapter = 0, n_min = 0;
  for (const std::string& name : report.net.species) {
    if (name.starts_with("st.")) ++n_state;
    else if (name.starts_with("Z1") || name.starts_with("Z2")) ++n_z;
    else if (name.starts_with("cnt.") || name.starts_with("pt.")) ++n_adapter;
    else if (name.starts_with("min.")) ++n_min;
  }
  j["species"]["state"] = n_state;
  j["species"]["z"] = n_z;
  j["species"]["adapter"] = n_adapter;
  j["species"]["min"] = n_min;
  j["reactions"]["total"] = report.net.reactions.size();
  for (const auto& [name, count] : report.reactions_by_family()) j["reactions"][name] = count;
  if (report.c_max > 0) j["c_max"] = report.c_max;

  j["fissures"] = json::array();
  for (const fissure_meta& meta : report.fissures) {
    json fj{{"k", meta.k},       {"d_max", meta.d_max},   {"K", meta.K},
            {"modulus", meta.modulus}, {"lz_bound", meta.lz_bound},
            {"period", meta.period},   {"offset", {meta.offset.n1, meta.offset.n2}},
            {"phiA", {meta.a0, meta.a1, meta.a2}},
            {"phiB", {meta.b0, meta.b1, meta.b2}}};
    json dips = json::object(), dplus = json::object(), dminus = json::object();
    for (const auto& [i, d] : meta.dips) dips[std::to_string(i)] = d;
    for (std::int64_t lz = -meta.lz_bound; lz <= meta.lz_bound; ++lz) {
      dplus[std::to_string(lz)] = meta.d_plus(lz);
      dminus[std::to_string(lz)] = meta.d_minus(lz);
    }
    fj["dips"] = dips;
    fj["d_plus"] = dplus;
    fj["d_minus"] = dminus;
    json r1 = json::object(), r2 = json::object();
    for (std::int64_t lx = -meta.K + 1; lx <= meta.K - 1; ++lx) {
      json row1 = json::object(), row2 = json::object();
      for (std::int64_t lz = -meta.lz_bound; lz <= meta.lz_bound; ++lz) {
        row1[std::to_string(lz)] = meta.r1(lx, lz);
        row2[std::to_string(lz)] = meta.r2(lx, lz);
      }
      r1[std::to_string(lx)] = row1;
      r2[std::to_string(lx)] = row2;
    }
    fj["r1"] = r1;
    fj["r2"] = r2;
    j["fissures"].push_back(std::move(fj));
  }
  return j.dump(2) + "\n";
}

}  // namespace oocrn
