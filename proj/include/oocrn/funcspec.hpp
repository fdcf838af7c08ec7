#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "oocrn/crn.hpp"
#include "oocrn/rational.hpp"

namespace oocrn {

// {(p*a1 + o1, q*a2 + o2) : a1, a2 in N}. p = q = 0 is the single point o,
// exactly one of p, q zero is a one-way-infinite line, p = q > 0 a periodic
// grid of period p.
struct grid {
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  nat2 offset;

  bool is_point() const { return p == 0 && q == 0; }
  bool is_line() const { return (p == 0) != (q == 0); }
  bool is_two_way() const { return p > 0 && q > 0; }

  bool contains(nat2 n) const;
};

inline bool grid_member(const grid& g, nat2 n) { return g.contains(n); }

// Componentwise-smallest grid point >= n. Two-way grids only; point and
// line domains are handled by the penalty adapters in synth instead.
nat2 grid_ceil(const grid& g, nat2 n);

// f(n) = a1*n1 + a2*n2 + a0 on `domain`.
struct affine_piece {
  rational a0, a1, a2;
  grid domain;

  rational value(nat2 n) const { return a1 * static_cast<std::int64_t>(n.n1) +
                                        a2 * static_cast<std::int64_t>(n.n2) + a0; }
};

// One fissure on a two-way grid: phi_A = A0 + A1 n1 + A2 n2 applies far
// above the fissure lines, phi_B far below, with dips d_i on the lines
// phi_A - phi_B = i for |i| < k. Requires A1 > B1 and B2 > A2.
struct partial_fissure {
  grid dom;
  std::int64_t A0 = 0;
  rational A1, A2;
  std::int64_t B0 = 0;
  rational B1, B2;
  std::uint32_t k = 1;
  std::map<std::int64_t, std::uint32_t> dips;  // keyed by line index i, |i| < k

  rational phi_a(nat2 n) const { return A1 * static_cast<std::int64_t>(n.n1) +
                                        A2 * static_cast<std::int64_t>(n.n2) + rational(A0); }
  rational phi_b(nat2 n) const { return B1 * static_cast<std::int64_t>(n.n1) +
                                        B2 * static_cast<std::int64_t>(n.n2) + rational(B0); }

  // Extended dip table: declared value on fissure lines, 0 elsewhere.
  std::int64_t dip(std::int64_t i) const {
    const auto it = dips.find(i);
    return it == dips.end() ? 0 : static_cast<std::int64_t>(it->second);
  }
};

struct grid_affine_spec {
  std::uint32_t period = 1;
  std::vector<affine_piece> pieces;
};

// A complete fissure function: partial fissures whose grids partition N^2.
struct complete_fissure {
  std::vector<partial_fissure> partials;
};

struct min_of_fissures_spec {
  std::uint32_t period = 1;
  std::vector<complete_fissure> fissures;
};

using function_spec = std::variant<grid_affine_spec, min_of_fissures_spec>;

std::uint64_t eval_affine(const affine_piece& piece, nat2 n);
std::uint64_t eval_partial_fissure(const partial_fissure& fs, nat2 n);
std::uint64_t eval_complete_fissure(const complete_fissure& f, nat2 n);
std::uint64_t eval(const function_spec& spec, nat2 n);

// All adjacent-step violations (n, n') with n <= n' and eval(n) > eval(n')
// inside [0,box.n1] x [0,box.n2]. Checking the two unit steps suffices.
std::vector<std::pair<nat2, nat2>> check_increasing(const function_spec& spec, nat2 box);

std::vector<diagnostic> validate_spec(const function_spec& spec);

// Side of the finite audit box used by the validation scans.
std::uint64_t audit_box_side(const function_spec& spec);

std::uint32_t spec_period(const function_spec& spec);

}  // namespace oocrn
