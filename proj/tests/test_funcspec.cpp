#include <doctest.h>

#include <algorithm>

#include "oocrn/funcspec.hpp"
#include "oocrn/funcspec_io.hpp"

using namespace oocrn;

namespace {

function_spec load_fixture(const char* name) {
  return load_spec_file(std::string(FIXTURE_DIR) + "/" + name);
}

partial_fissure first_fissure(const function_spec& spec) {
  return std::get<min_of_fissures_spec>(spec).fissures.at(0).partials.at(0);
}

// Closed forms from the worked examples, written independently of eval.
std::uint64_t fig2_value(std::uint64_t n1, std::uint64_t n2) {
  if (n1 == n2) return n1;
  return std::min(n1, n2) + 1;
}

std::uint64_t hard_fissure_value(std::uint64_t n1, std::uint64_t n2) {
  if (n1 > n2) return 2 * n1 + 3 * n2 + 2;
  if (n1 < n2) return 3 * n1 + 2 * n2 + 2;
  return 5 * n1;
}

std::uint64_t parity_value(std::uint64_t n1, std::uint64_t n2) {
  return 2 * n1 + 3 * n2 + ((n1 + n2) % 2 == 0 ? 1 : 0);
}

}  // namespace

TEST_CASE("grid membership") {
  CHECK(grid_member(grid{2, 2, {0, 0}}, {4, 6}));
  CHECK_FALSE(grid_member(grid{2, 2, {1, 1}}, {4, 6}));
  CHECK(grid_member(grid{0, 0, {3, 5}}, {3, 5}));
  CHECK_FALSE(grid_member(grid{0, 0, {3, 5}}, {3, 6}));
  CHECK(grid_member(grid{1, 0, {1, 0}}, {4, 0}));
  CHECK_FALSE(grid_member(grid{1, 0, {1, 0}}, {4, 1}));
  CHECK_FALSE(grid_member(grid{1, 0, {1, 0}}, {0, 0}));
}

TEST_CASE("grid_ceil rounds up componentwise") {
  CHECK(grid_ceil(grid{2, 2, {0, 0}}, {3, 4}) == nat2{4, 4});
  CHECK(grid_ceil(grid{2, 2, {1, 1}}, {1, 1}) == nat2{1, 1});
  CHECK(grid_ceil(grid{3, 3, {1, 2}}, {0, 0}) == nat2{1, 2});
  CHECK_THROWS_AS((void)grid_ceil(grid{0, 0, {1, 1}}, {0, 0}), error);
  CHECK_THROWS_AS((void)grid_ceil(grid{1, 0, {0, 0}}, {0, 0}), error);

  const grid g{3, 3, {2, 1}};
  for (std::uint64_t a = 0; a <= 9; ++a)
    for (std::uint64_t b = 0; b <= 9; ++b) {
      const nat2 n{a, b};
      const nat2 m = grid_ceil(g, n);
      CHECK(m.n1 >= n.n1);
      CHECK(m.n2 >= n.n2);
      CHECK(grid_member(g, m));
      CHECK(grid_ceil(g, m) == m);
      CHECK(grid_member(g, n) == (m == n));
    }
}

TEST_CASE("affine evaluation is exact and guarded") {
  const affine_piece fix_a{rational(1), rational(2), rational(3), grid{1, 1, {0, 0}}};
  CHECK(eval_affine(fix_a, {3, 2}) == 13);
  CHECK(eval_affine(fix_a, {0, 0}) == 1);

  const affine_piece half{rational(0), rational(1, 2), rational(0), grid{2, 2, {0, 0}}};
  CHECK(eval_affine(half, {4, 0}) == 2);
  CHECK_THROWS_AS((void)eval_affine(half, {3, 0}), error);  // off the grid

  const affine_piece bad{rational(0), rational(1, 2), rational(0), grid{1, 1, {0, 0}}};
  try {
    (void)eval_affine(bad, {1, 0});
    FAIL("expected integrality error");
  } catch (const error& e) {
    CHECK(e.code() == errc::integrality);
  }
}

TEST_CASE("partial fissure evaluation matches the worked examples") {
  const auto fix_b = load_fixture("fix_b.json");
  const partial_fissure fb = first_fissure(fix_b);
  CHECK(eval_partial_fissure(fb, {2, 2}) == 2);
  CHECK(eval_partial_fissure(fb, {1, 3}) == 2);
  for (std::uint64_t a = 0; a <= 8; ++a)
    for (std::uint64_t b = 0; b <= 8; ++b) CHECK(eval_partial_fissure(fb, {a, b}) == fig2_value(a, b));

  const auto fix_c = load_fixture("fix_c.json");
  const partial_fissure fc = first_fissure(fix_c);
  CHECK(eval_partial_fissure(fc, {2, 2}) == 10);
  for (std::uint64_t a = 0; a <= 8; ++a)
    for (std::uint64_t b = 0; b <= 8; ++b)
      CHECK(eval_partial_fissure(fc, {a, b}) == hard_fissure_value(a, b));
}

TEST_CASE("grid-affine eval picks the unique covering piece") {
  const auto fix_e = load_fixture("fix_e.json");
  CHECK(eval(fix_e, {1, 1}) == 6);
  CHECK(eval(fix_e, {1, 0}) == 2);
  for (std::uint64_t a = 0; a <= 8; ++a)
    for (std::uint64_t b = 0; b <= 8; ++b) CHECK(eval(fix_e, {a, b}) == parity_value(a, b));

  grid_affine_spec gap;
  gap.period = 1;
  gap.pieces.push_back({rational(0), rational(1), rational(1), grid{0, 0, {0, 0}}});
  CHECK_THROWS_AS((void)eval(function_spec{gap}, {1, 0}), error);
}

TEST_CASE("min of fissures takes the branchwise minimum") {
  // min(n1, n2) + 5 against 3*min(n1, n2): each wins on part of the box.
  min_of_fissures_spec mf;
  mf.period = 1;
  partial_fissure slow;
  slow.dom = {1, 1, {0, 0}};
  slow.A0 = 5;
  slow.A1 = rational(1);
  slow.A2 = rational(0);
  slow.B0 = 5;
  slow.B1 = rational(0);
  slow.B2 = rational(1);
  slow.k = 1;
  partial_fissure fast = slow;
  fast.A0 = 0;
  fast.B0 = 0;
  fast.A1 = rational(3);
  fast.B2 = rational(3);
  mf.fissures.push_back({{slow}});
  mf.fissures.push_back({{fast}});
  const function_spec spec{mf};
  REQUIRE(validate_spec(spec).empty());
  for (std::uint64_t a = 0; a <= 8; ++a)
    for (std::uint64_t b = 0; b <= 8; ++b) {
      const std::uint64_t m = std::min(a, b);
      CHECK(eval(spec, {a, b}) == std::min(m + 5, 3 * m));
    }
  CHECK(eval(spec, {1, 1}) == 3);
  CHECK(eval(spec, {4, 7}) == 9);
}

TEST_CASE("check_increasing scans adjacent steps") {
  const auto fix_b = load_fixture("fix_b.json");
  CHECK(check_increasing(fix_b, {6, 6}).empty());

  // Shift the Figure-2 function up by 2 so a dip of 3 stays natural but
  // drops below the neighboring off-diagonal values.
  auto deep = std::get<min_of_fissures_spec>(load_fixture("fix_b.json"));
  partial_fissure& fs = deep.fissures[0].partials[0];
  fs.A0 = 3;
  fs.B0 = 3;
  fs.dips[0] = 3;
  const auto bad = check_increasing(function_spec{deep}, {6, 6});
  CHECK_FALSE(bad.empty());

  grid_affine_spec one;
  one.period = 1;
  one.pieces.push_back({rational(2), rational(1), rational(0), grid{1, 1, {0, 0}}});
  CHECK(check_increasing(function_spec{one}, {6, 6}).empty());
}

TEST_CASE("validate_spec catches the named defect classes") {
  for (const char* name : {"fix_a.json", "fix_b.json", "fix_c.json", "fix_e.json",
                           "intro_2n_minus_1.json"})
    CHECK(validate_spec(load_fixture(name)).empty());

  auto swapped = std::get<min_of_fissures_spec>(load_fixture("fix_c.json"));
  std::swap(swapped.fissures[0].partials[0].A1, swapped.fissures[0].partials[0].B1);
  std::swap(swapped.fissures[0].partials[0].A2, swapped.fissures[0].partials[0].B2);
  bool saw_a1b1 = false;
  for (const auto& d : validate_spec(function_spec{swapped})) saw_a1b1 |= d.code == "fissure-A1-B1";
  CHECK(saw_a1b1);

  auto gap = std::get<grid_affine_spec>(load_fixture("fix_e.json"));
  gap.pieces.erase(gap.pieces.begin() + 2);  // drop the (1,0)-offset piece
  bool saw_gap = false;
  for (const auto& d : validate_spec(function_spec{gap}))
    saw_gap |= d.code == "cover-gap" && d.message.find("(1,0)") != std::string::npos;
  CHECK(saw_gap);

  auto overlap = std::get<grid_affine_spec>(load_fixture("fix_e.json"));
  overlap.pieces.push_back(overlap.pieces.front());
  bool saw_overlap = false;
  for (const auto& d : validate_spec(function_spec{overlap})) saw_overlap |= d.code == "cover-overlap";
  CHECK(saw_overlap);

  auto deep = std::get<min_of_fissures_spec>(load_fixture("fix_b.json"));
  deep.fissures[0].partials[0].A0 = 3;
  deep.fissures[0].partials[0].B0 = 3;
  deep.fissures[0].partials[0].dips[0] = 3;
  bool saw_decreasing = false;
  for (const auto& d : validate_spec(function_spec{deep})) saw_decreasing |= d.code == "not-increasing";
  CHECK(saw_decreasing);

  auto negative = std::get<min_of_fissures_spec>(load_fixture("fix_b.json"));
  negative.fissures[0].partials[0].dips[0] = 3;  // f(0,0) = 1 - 3 < 0
  bool saw_negative = false;
  for (const auto& d : validate_spec(function_spec{negative}))
    saw_negative |= d.code == "value-not-natural";
  CHECK(saw_negative);

  auto bad_dip = std::get<min_of_fissures_spec>(load_fixture("fix_b.json"));
  bad_dip.fissures[0].partials[0].dips[2] = 1;  // |i| >= k
  bool saw_dip = false;
  for (const auto& d : validate_spec(function_spec{bad_dip})) saw_dip |= d.code == "dip-out-of-range";
  CHECK(saw_dip);

  auto frac = std::get<grid_affine_spec>(load_fixture("fix_a.json"));
  frac.pieces[0].a1 = rational(1, 2);  // a1*p = 1/2 on a period-1 grid
  bool saw_step = false;
  for (const auto& d : validate_spec(function_spec{frac})) saw_step |= d.code == "step-not-natural";
  CHECK(saw_step);

  auto neg = std::get<grid_affine_spec>(load_fixture("fix_a.json"));
  neg.pieces[0].a0 = rational(-1);  // value at the offset drops below zero
  bool saw_offset = false;
  for (const auto& d : validate_spec(function_spec{neg})) saw_offset |= d.code == "offset-not-natural";
  CHECK(saw_offset);
}

TEST_CASE("phi naturality is checked on the audit box (Lemma 3 hypothesis)") {
  auto mf = std::get<min_of_fissures_spec>(load_fixture("fix_b.json"));
  mf.fissures[0].partials[0].A1 = rational(3, 2);
  // A1*p = 3/2 is already not a natural; phi_A(1,0) = 5/2 would also fail.
  bool saw = false;
  for (const auto& d : validate_spec(function_spec{mf}))
    saw |= d.code == "step-not-natural" || d.code == "phi-not-natural";
  CHECK(saw);
}

TEST_CASE("spec JSON round-trips") {
  for (const char* name : {"fix_a.json", "fix_b.json", "fix_c.json", "fix_e.json",
                           "intro_2n_minus_1.json"}) {
    const function_spec spec = load_fixture(name);
    const std::string text = serialize_spec(spec);
    const function_spec again = parse_spec(text);
    CHECK(serialize_spec(again) == text);
    for (std::uint64_t a = 0; a <= 6; ++a)
      for (std::uint64_t b = 0; b <= 6; ++b) CHECK(eval(again, {a, b}) == eval(spec, {a, b}));
  }
}

TEST_CASE("spec parser rejects malformed documents") {
  CHECK_THROWS_AS((void)parse_spec("{"), error);
  CHECK_THROWS_AS((void)parse_spec(R"({"kind": "nope"})"), error);
  CHECK_THROWS_AS((void)parse_spec(R"({"kind": "grid_affine"})"), error);
  const char* zero_den = R"({"kind": "grid_affine", "period": 1, "pieces": [
    {"a0": "2/0", "a1": "1", "a2": "1", "domain": {"p": 1, "q": 1, "offset": [0, 0]}}]})";
  try {
    (void)parse_spec(zero_den);
    FAIL("expected parse error");
  } catch (const error& e) {
    CHECK(e.code() == errc::parse);
  }
}

TEST_CASE("monotone property holds for every validated fixture on the audit box") {
  for (const char* name : {"fix_a.json", "fix_b.json", "fix_c.json", "fix_e.json",
                           "intro_2n_minus_1.json"}) {
    const function_spec spec = load_fixture(name);
    const std::uint64_t side = audit_box_side(spec);
    CHECK(check_increasing(spec, {side, side}).empty());
  }
}

TEST_CASE("fissure dip property: min of phis minus eval is a declared dip or zero") {
  const auto fix_c = load_fixture("fix_c.json");
  const partial_fissure fc = first_fissure(fix_c);
  for (std::uint64_t a = 0; a <= 8; ++a)
    for (std::uint64_t b = 0; b <= 8; ++b) {
      const std::int64_t pa = fc.phi_a({a, b}).as_integer();
      const std::int64_t pb = fc.phi_b({a, b}).as_integer();
      CHECK(pa >= 0);
      CHECK(pb >= 0);
      const std::int64_t gap = std::min(pa, pb) -
                               static_cast<std::int64_t>(eval_partial_fissure(fc, {a, b}));
      const std::int64_t line = pa - pb;
      if (std::abs(line) < fc.k)
        CHECK(gap == fc.dip(line));
      else
        CHECK(gap == 0);
    }
}
