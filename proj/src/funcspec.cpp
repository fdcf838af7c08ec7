#include "oocrn/funcspec.hpp"

#include <algorithm>
#include <string>

namespace oocrn {

namespace {

bool axis_member(std::uint32_t period, std::uint64_t off, std::uint64_t v) {
  if (period == 0) return v == off;
  return v >= off && (v - off) % period == 0;
}

std::uint64_t axis_ceil(std::uint32_t period, std::uint64_t off, std::uint64_t v) {
  if (v <= off) return off;
  return off + ((v - off + period - 1) / period) * period;
}

std::string point_str(nat2 n) {
  return "(" + std::to_string(n.n1) + "," + std::to_string(n.n2) + ")";
}

}  // namespace

bool grid::contains(nat2 n) const {
  return axis_member(p, offset.n1, n.n1) && axis_member(q, offset.n2, n.n2);
}

nat2 grid_ceil(const grid& g, nat2 n) {
  if (!g.is_two_way()) fail(errc::domain, "grid_ceil requires a two-way-infinite grid");
  return {axis_ceil(g.p, g.offset.n1, n.n1), axis_ceil(g.q, g.offset.n2, n.n2)};
}

std::uint64_t eval_affine(const affine_piece& piece, nat2 n) {
  if (!piece.domain.contains(n)) fail(errc::domain, "point " + point_str(n) + " not on the grid");
  const std::int64_t v = piece.value(n).as_integer("affine value at " + point_str(n));
  if (v < 0) fail(errc::integrality, "affine value at " + point_str(n) + " is negative");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t eval_partial_fissure(const partial_fissure& fs, nat2 n) {
  if (!fs.dom.contains(n)) fail(errc::domain, "point " + point_str(n) + " not on the grid");
  const std::int64_t pa = fs.phi_a(n).as_integer("phi_A at " + point_str(n));
  const std::int64_t pb = fs.phi_b(n).as_integer("phi_B at " + point_str(n));
  const std::int64_t i = pa - pb;
  const std::int64_t k = static_cast<std::int64_t>(fs.k);
  std::int64_t v;
  if (i <= -k)
    v = pa;
  else if (i < 0)
    v = pa - fs.dip(i);
  else if (i < k)
    v = pb - fs.dip(i);
  else
    v = pb;
  if (v < 0) fail(errc::integrality, "fissure value at " + point_str(n) + " is negative");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t eval_complete_fissure(const complete_fissure& f, nat2 n) {
  for (const partial_fissure& fs : f.partials)
    if (fs.dom.contains(n)) return eval_partial_fissure(fs, n);
  fail(errc::cover, "no partial fissure contains " + point_str(n));
}

std::uint64_t eval(const function_spec& spec, nat2 n) {
  if (const auto* ga = std::get_if<grid_affine_spec>(&spec)) {
    for (const affine_piece& piece : ga->pieces)
      if (piece.domain.contains(n)) return eval_affine(piece, n);
    fail(errc::cover, "no affine piece contains " + point_str(n));
  }
  const auto& mf = std::get<min_of_fissures_spec>(spec);
  if (mf.fissures.empty()) fail(errc::cover, "spec has no fissure functions");
  std::uint64_t best = 0;
  bool first = true;
  for (const complete_fissure& f : mf.fissures) {
    const std::uint64_t v = eval_complete_fissure(f, n);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

std::vector<std::pair<nat2, nat2>> check_increasing(const function_spec& spec, nat2 box) {
  std::vector<std::pair<nat2, nat2>> bad;
  for (std::uint64_t a = 0; a <= box.n1; ++a) {
    for (std::uint64_t b = 0; b <= box.n2; ++b) {
      const nat2 n{a, b};
      const std::uint64_t v = eval(spec, n);
      if (a + 1 <= box.n1 && eval(spec, {a + 1, b}) < v) bad.push_back({n, {a + 1, b}});
      if (b + 1 <= box.n2 && eval(spec, {a, b + 1}) < v) bad.push_back({n, {a, b + 1}});
    }
  }
  return bad;
}

std::uint32_t spec_period(const function_spec& spec) {
  if (const auto* ga = std::get_if<grid_affine_spec>(&spec)) return ga->period;
  return std::get<min_of_fissures_spec>(spec).period;
}

std::uint64_t audit_box_side(const function_spec& spec) {
  std::uint64_t max_off = 0;
  const auto see = [&](const grid& g) {
    max_off = std::max({max_off, g.offset.n1, g.offset.n2});
  };
  if (const auto* ga = std::get_if<grid_affine_spec>(&spec)) {
    for (const auto& piece : ga->pieces) see(piece.domain);
  } else {
    for (const auto& f : std::get<min_of_fissures_spec>(spec).fissures)
      for (const auto& fs : f.partials) see(fs.dom);
  }
  return std::max<std::uint64_t>(3ull * spec_period(spec) + max_off, 8);
}

namespace {

void push(std::vector<diagnostic>& out, std::string code, std::string message) {
  out.push_back({std::move(code), std::move(message), {}, {}});
}

// Shared guts of the grid sanity checks. `period` is the spec-wide period
// every periodic dimension must use.
void validate_grid(std::vector<diagnostic>& out, const grid& g, std::uint32_t period,
                   const std::string& where) {
  if (g.p > 0 && g.q > 0 && g.p != g.q)
    push(out, "grid-not-square", where + ": two-way grid must have p = q");
  if (g.p > 0 && g.p != period)
    push(out, "grid-period-mismatch",
         where + ": p = " + std::to_string(g.p) + " differs from spec period " +
             std::to_string(period));
  if (g.q > 0 && g.q != period)
    push(out, "grid-period-mismatch",
         where + ": q = " + std::to_string(g.q) + " differs from spec period " +
             std::to_string(period));
}

void validate_pieces(std::vector<diagnostic>& out, const grid_affine_spec& ga) {
  for (std::size_t i = 0; i < ga.pieces.size(); ++i) {
    const affine_piece& piece = ga.pieces[i];
    const std::string where = "piece " + std::to_string(i);
    validate_grid(out, piece.domain, ga.period, where);

    const rational at_offset = piece.value(piece.domain.offset);
    if (!at_offset.is_integer() || at_offset.num() < 0)
      push(out, "offset-not-natural",
           where + ": value " + at_offset.str() + " at the offset is not a natural");
    if (piece.domain.p > 0) {
      const rational step = piece.a1 * static_cast<std::int64_t>(piece.domain.p);
      if (!step.is_integer() || step.num() < 0)
        push(out, "step-not-natural", where + ": a1*p = " + step.str() + " is not a natural");
    }
    if (piece.domain.q > 0) {
      const rational step = piece.a2 * static_cast<std::int64_t>(piece.domain.q);
      if (!step.is_integer() || step.num() < 0)
        push(out, "step-not-natural", where + ": a2*q = " + step.str() + " is not a natural");
    }
    if (piece.domain.is_two_way()) {
      if (!piece.a1.is_nonnegative() || !piece.a2.is_nonnegative())
        push(out, "slope-negative", where + ": two-way piece needs a1, a2 >= 0");
    }
  }
}

void validate_one_fissure(std::vector<diagnostic>& out, const partial_fissure& fs,
                          std::uint32_t period, std::uint64_t side, const std::string& where) {
  validate_grid(out, fs.dom, period, where);
  if (!fs.dom.is_two_way()) push(out, "fissure-grid-finite", where + ": grid must be two-way-infinite");
  if (fs.k == 0) push(out, "fissure-k-zero", where + ": k must be >= 1");
  if (!(fs.A1 > fs.B1)) push(out, "fissure-A1-B1", where + ": A1 > B1 violated");
  if (!(fs.B2 > fs.A2)) push(out, "fissure-B2-A2", where + ": B2 > A2 violated");
  for (const rational* r : {&fs.A1, &fs.A2, &fs.B1, &fs.B2})
    if (!r->is_nonnegative()) push(out, "fissure-slope-negative", where + ": slopes must be >= 0");
  for (const auto& [i, d] : fs.dips) {
    (void)d;
    if (i <= -static_cast<std::int64_t>(fs.k) || i >= static_cast<std::int64_t>(fs.k))
      push(out, "dip-out-of-range", where + ": dip index " + std::to_string(i) + " not in (-k,k)");
  }
  const std::int64_t p = static_cast<std::int64_t>(fs.dom.p);
  for (const auto& [label, r] :
       std::initializer_list<std::pair<const char*, rational>>{
           {"A1*p", fs.A1 * p}, {"A2*p", fs.A2 * p}, {"B1*p", fs.B1 * p}, {"B2*p", fs.B2 * p}})
    if (!r.is_integer() || r.num() < 0)
      push(out, "step-not-natural", where + ": " + std::string(label) + " = " + r.str() +
                                        " is not a natural");

  if (!fs.dom.is_two_way() || fs.k == 0) return;

  // Lemma-3 style check: phi_A, phi_B and the induced value must be natural
  // on every grid point of the audit box. Only when that holds is the
  // increasing scan along grid steps safe to run.
  const std::uint32_t p32 = fs.dom.p;
  for (std::uint64_t a = fs.dom.offset.n1; a <= side; a += p32) {
    for (std::uint64_t b = fs.dom.offset.n2; b <= side; b += p32) {
      const nat2 n{a, b};
      const rational pa = fs.phi_a(n), pb = fs.phi_b(n);
      if (!pa.is_integer() || pa.num() < 0) {
        push(out, "phi-not-natural", where + ": phi_A" + point_str(n) + " = " + pa.str());
        return;
      }
      if (!pb.is_integer() || pb.num() < 0) {
        push(out, "phi-not-natural", where + ": phi_B" + point_str(n) + " = " + pb.str());
        return;
      }
      try {
        (void)eval_partial_fissure(fs, n);
      } catch (const error& e) {
        push(out, "value-not-natural", where + ": " + e.what());
        return;
      }
    }
  }
  for (std::uint64_t a = fs.dom.offset.n1; a <= side; a += p32) {
    for (std::uint64_t b = fs.dom.offset.n2; b <= side; b += p32) {
      const std::uint64_t v = eval_partial_fissure(fs, {a, b});
      for (const nat2 next : {nat2{a + p32, b}, nat2{a, b + p32}}) {
        if (next.n1 > side || next.n2 > side) continue;
        if (eval_partial_fissure(fs, next) < v) {
          push(out, "not-increasing", where + ": value decreases from " + point_str({a, b}) +
                                          " to " + point_str(next));
          return;
        }
      }
    }
  }
}

// Every point of the audit box must lie in exactly one of the given grids.
template <typename GridOf>
void validate_partition(std::vector<diagnostic>& out, std::size_t count, GridOf&& grid_of,
                        std::uint64_t side, const std::string& what) {
  for (std::uint64_t a = 0; a <= side; ++a) {
    for (std::uint64_t b = 0; b <= side; ++b) {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < count; ++i)
        if (grid_of(i).contains({a, b})) ++hits;
      if (hits == 0) {
        push(out, "cover-gap", what + ": no domain contains " + point_str({a, b}));
        return;
      }
      if (hits > 1) {
        push(out, "cover-overlap",
             what + ": " + std::to_string(hits) + " domains contain " + point_str({a, b}));
        return;
      }
    }
  }
}

}  // namespace

std::vector<diagnostic> validate_spec(const function_spec& spec) {
  std::vector<diagnostic> out;
  const std::uint64_t side = audit_box_side(spec);

  if (spec_period(spec) == 0) {
    push(out, "period-zero", "spec period must be >= 1");
    return out;
  }

  if (const auto* ga = std::get_if<grid_affine_spec>(&spec)) {
    if (ga->pieces.empty()) {
      push(out, "empty-spec", "grid-affine spec has no pieces");
      return out;
    }
    validate_pieces(out, *ga);
    validate_partition(
        out, ga->pieces.size(), [&](std::size_t i) -> const grid& { return ga->pieces[i].domain; },
        side, "pieces");
  } else {
    const auto& mf = std::get<min_of_fissures_spec>(spec);
    if (mf.fissures.empty()) {
      push(out, "empty-spec", "min-of-fissures spec has no fissure functions");
      return out;
    }
    for (std::size_t fi = 0; fi < mf.fissures.size(); ++fi) {
      const complete_fissure& f = mf.fissures[fi];
      if (f.partials.empty()) {
        push(out, "empty-spec", "fissure " + std::to_string(fi) + " has no partials");
        continue;
      }
      for (std::size_t pi = 0; pi < f.partials.size(); ++pi)
        validate_one_fissure(out, f.partials[pi], mf.period, side,
                             "fissure " + std::to_string(fi) + " partial " + std::to_string(pi));
      validate_partition(
          out, f.partials.size(),
          [&](std::size_t i) -> const grid& { return f.partials[i].dom; }, side,
          "fissure " + std::to_string(fi));
    }
  }

  if (out.empty()) {
    // Whole-spec monotonicity scan, plus one scan per complete fissure:
    // stitching relies on each complete function being increasing, not just
    // the min.
    const auto bad = check_increasing(spec, {side, side});
    if (!bad.empty())
      push(out, "not-increasing", "value decreases from " + point_str(bad.front().first) +
                                      " to " + point_str(bad.front().second));
    if (const auto* mf = std::get_if<min_of_fissures_spec>(&spec)) {
      for (std::size_t fi = 0; fi < mf->fissures.size(); ++fi) {
        const complete_fissure& f = mf->fissures[fi];
        for (std::uint64_t a = 0; a <= side; ++a)
          for (std::uint64_t b = 0; b <= side; ++b) {
            const std::uint64_t v = eval_complete_fissure(f, {a, b});
            if ((a < side && eval_complete_fissure(f, {a + 1, b}) < v) ||
                (b < side && eval_complete_fissure(f, {a, b + 1}) < v)) {
              push(out, "not-increasing",
                   "fissure " + std::to_string(fi) + " decreases near " + point_str({a, b}));
              a = side;
              break;
            }
          }
      }
    }
  }

  return out;
}

}  // namespace oocrn
