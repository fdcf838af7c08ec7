#include <doctest.h>

#include <algorithm>

#include "oocrn/crn_io.hpp"
#include "oocrn/funcspec_io.hpp"
#include "oocrn/synth.hpp"
#include "oocrn/verify.hpp"

using namespace oocrn;

namespace {

function_spec load_fixture(const char* name) {
  return load_spec_file(std::string(FIXTURE_DIR) + "/" + name);
}

partial_fissure first_fissure(const function_spec& spec) {
  return std::get<min_of_fissures_spec>(spec).fissures.at(0).partials.at(0);
}

// Exhaustive stable-computation check of `net` against the spec oracle.
void verify_box(const crn& net, const function_spec& spec, nat2 box,
                std::size_t max_configs = 2000000) {
  for (std::uint64_t a = 0; a <= box.n1; ++a)
    for (std::uint64_t b = 0; b <= box.n2; ++b) {
      const verdict v = check_stable_computation(net, {a, b}, eval(spec, {a, b}), max_configs);
      CAPTURE(a);
      CAPTURE(b);
      CAPTURE(v.reason);
      CHECK(v.result == outcome::pass);
    }
}

}  // namespace

TEST_CASE("affine core: two-way grid gives base plus two catalytic emitters") {
  const auto spec = std::get<grid_affine_spec>(load_fixture("fix_a.json"));
  const crn net = synth_affine_on_grid(spec.pieces[0]);
  REQUIRE(net.reactions.size() == 3);
  CHECK(reaction_str(net, net.reactions[0]) == "L -> Y + Lp");
  CHECK(reaction_str(net, net.reactions[1]) == "X1 + Lp -> 2 Y + Lp");
  CHECK(reaction_str(net, net.reactions[2]) == "X2 + Lp -> 3 Y + Lp");
  CHECK(check_output_oblivious(net).empty());
  CHECK(validate_crn(net).empty());
}

TEST_CASE("affine core: point and line grids") {
  const affine_piece point{rational(7), rational(0), rational(0), grid{0, 0, {3, 5}}};
  const crn pnet = synth_affine_on_grid(point);
  REQUIRE(pnet.reactions.size() == 1);
  CHECK(reaction_str(pnet, pnet.reactions[0]) == "L + 3 X1 + 5 X2 -> 7 Y + Lp");

  const affine_piece half{rational(0), rational(1, 2), rational(0), grid{2, 2, {0, 0}}};
  const crn hnet = synth_affine_on_grid(half);
  REQUIRE(hnet.reactions.size() == 3);
  CHECK(reaction_str(hnet, hnet.reactions[0]) == "L -> Lp");
  CHECK(reaction_str(hnet, hnet.reactions[1]) == "2 X1 + Lp -> Y + Lp");

  const affine_piece line{rational(-1), rational(2), rational(0), grid{1, 0, {1, 0}}};
  const crn lnet = synth_affine_on_grid(line);
  REQUIRE(lnet.reactions.size() == 2);  // base plus the one infinite axis
  CHECK(reaction_str(lnet, lnet.reactions[0]) == "L + X1 -> Y + Lp");
  CHECK(reaction_str(lnet, lnet.reactions[1]) == "X1 + Lp -> 2 Y + Lp");

  const affine_piece bad{rational(0), rational(1, 3), rational(0), grid{1, 1, {0, 0}}};
  CHECK_THROWS_AS((void)synth_affine_on_grid(bad), error);
}

TEST_CASE("fissure meta tables for the Figure-2 fixture") {
  const auto rep = synth_partial_fissure(first_fissure(load_fixture("fix_b.json")));
  const fissure_meta& m = rep.fissures.at(0);
  CHECK(m.k == 1);
  CHECK(m.d_max == 1);
  CHECK(m.K == 2);
  CHECK(m.modulus == 3);
  CHECK(m.lz_bound == 1);
  CHECK(m.base_lz() == 0);
  CHECK(m.base_deficit() == 0);
  CHECK(m.d_plus(-1) == 0);
  CHECK(m.d_plus(0) == 1);
  CHECK(m.d_minus(0) == 1);
  CHECK(m.d_minus(1) == 0);
  CHECK(m.r1(1, 1) == 0);
  CHECK(m.r1(0, 1) == 2);
  CHECK(m.r1(-1, 1) == 1);
  CHECK(m.r2(1, -1) == 1);
  CHECK(m.r2(0, -1) == 2);
  CHECK(m.r2(-1, -1) == 0);
}

TEST_CASE("fissure meta tables for the hard fixture") {
  const auto rep = synth_partial_fissure(first_fissure(load_fixture("fix_c.json")));
  const fissure_meta& m = rep.fissures.at(0);
  CHECK(m.d_max == 2);
  CHECK(m.K == 3);
  CHECK(m.modulus == 5);
  CHECK(m.lz_bound == 2);
  CHECK(m.d_plus(0) == 2);
  CHECK(m.d_plus(-1) == -1);
  CHECK(m.d_plus(-2) == 1);
  CHECK(m.d_minus(0) == 2);
  CHECK(m.d_minus(1) == -1);
  CHECK(m.d_minus(2) == 1);
  CHECK(m.a1 == 3);
  CHECK(m.b1 == 2);
}

TEST_CASE("fissure core verifies against the oracle") {
  for (const char* name : {"fix_b.json", "fix_c.json"}) {
    const auto spec = load_fixture(name);
    const auto rep = synth_partial_fissure(first_fissure(spec));
    CHECK(check_output_oblivious(rep.net).empty());
    CHECK(validate_crn(rep.net).empty());
    verify_box(rep.net, spec, {3, 3});
  }
}

TEST_CASE("fissure core with k = 2 and asymmetric dips") {
  min_of_fissures_spec mf;
  mf.period = 1;
  partial_fissure fs;
  fs.dom = {1, 1, {0, 0}};
  fs.A0 = 3;
  fs.A1 = rational(2);
  fs.A2 = rational(1);
  fs.B0 = 3;
  fs.B1 = rational(1);
  fs.B2 = rational(2);
  fs.k = 2;
  fs.dips = {{-1, 1}, {0, 2}, {1, 1}};
  mf.fissures.push_back({{fs}});
  const function_spec spec{mf};
  REQUIRE(validate_spec(spec).empty());

  const auto rep = synth_partial_fissure(fs);
  const fissure_meta& m = rep.fissures.at(0);
  CHECK(m.K == 4);
  CHECK(m.modulus == 7);
  CHECK(check_output_oblivious(rep.net).empty());
  verify_box(rep.net, spec, {3, 3});
}

TEST_CASE("fissure core handles a dipless min") {
  // min(n1, n2): k = 1, no dips, so K = k and the l_z band widens to +-k.
  min_of_fissures_spec mf;
  mf.period = 1;
  partial_fissure fs;
  fs.dom = {1, 1, {0, 0}};
  fs.A1 = rational(1);
  fs.B2 = rational(1);
  fs.k = 1;
  mf.fissures.push_back({{fs}});
  const function_spec spec{mf};
  REQUIRE(validate_spec(spec).empty());
  const auto rep = synth_partial_fissure(fs);
  CHECK(rep.fissures[0].lz_bound == 1);
  verify_box(rep.net, spec, {4, 4});
}

TEST_CASE("fissure core rejects a base state outside the tracked band") {
  partial_fissure fs;
  fs.dom = {1, 1, {0, 0}};
  fs.A0 = 9;  // |A0 - B0| = 9 >= K = 2
  fs.A1 = rational(1);
  fs.B0 = 0;
  fs.B2 = rational(1);
  fs.k = 1;
  fs.dips = {{0, 1}};
  try {
    (void)synth_partial_fissure(fs);
    FAIL("expected range error");
  } catch (const error& e) {
    CHECK(e.code() == errc::range);
  }
}

TEST_CASE("ceil adapter emits f(grid_ceil(x)) for every consumption order") {
  const grid g{2, 2, {0, 0}};
  const affine_piece piece{rational(1), rational(1), rational(1), g};
  const crn net = synth_ceil_adapter(g, 0, {2, 2}, 1);
  CHECK(check_output_oblivious(net).empty());
  for (std::uint64_t a = 0; a <= 6; ++a)
    for (std::uint64_t b = 0; b <= 6; ++b) {
      const std::uint64_t want = eval_affine(piece, grid_ceil(g, {a, b}));
      const verdict v = check_stable_computation(net, {a, b}, want, 100000);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(v.result == outcome::pass);
      if (grid_member(g, {a, b})) CHECK(want == eval_affine(piece, {a, b}));
    }

  const grid off{2, 2, {1, 1}};
  const affine_piece shifted{rational(1), rational(2), rational(3), off};
  const std::uint64_t base = eval_affine(shifted, off.offset);
  const crn onet = synth_ceil_adapter(off, 3, {4, 6}, base);
  for (std::uint64_t a = 0; a <= 5; ++a)
    for (std::uint64_t b = 0; b <= 5; ++b) {
      const std::uint64_t want = eval_affine(shifted, grid_ceil(off, {a, b}));
      CHECK(check_stable_computation(onet, {a, b}, want, 100000).result == outcome::pass);
    }
  CHECK_THROWS_AS((void)synth_ceil_adapter(grid{0, 0, {1, 1}}, 0, {1, 1}, 0), error);
}

TEST_CASE("point penalty dominates off its point and is exact on it") {
  const crn origin = synth_point_penalty({0, 0}, 2, 5);
  CHECK(check_stable_computation(origin, {0, 0}, 2, 10000).result == outcome::pass);
  CHECK(check_stable_computation(origin, {1, 0}, 7, 10000).result == outcome::pass);

  const crn net = synth_point_penalty({2, 2}, 9, 5);
  const auto branch_value = [](nat2 n) {
    const std::uint64_t e1 = n.n1 > 2 ? n.n1 - 2 : 0;
    const std::uint64_t e2 = n.n2 > 2 ? n.n2 - 2 : 0;
    return 9 + 5 * (e1 + e2);
  };
  for (std::uint64_t a = 0; a <= 4; ++a)
    for (std::uint64_t b = 0; b <= 4; ++b) {
      const verdict v = check_stable_computation(net, {a, b}, branch_value({a, b}), 10000);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(v.result == outcome::pass);
    }
  // Domination: the branch value is >= 9 = f(o) everywhere, including below
  // and incomparable inputs, so a min cascade can never be dragged under f.
  CHECK(branch_value({1, 1}) == 9);
  CHECK(branch_value({4, 0}) == 19);
}

TEST_CASE("min cascade computes the minimum of branch totals") {
  const crn pair = synth_min({"Ya", "Yb"}, "Y");
  REQUIRE(pair.reactions.size() == 1);
  const crn net = synth_min({"Ya", "Yb", "Yc"}, "Y");
  REQUIRE(net.reactions.size() == 2);

  const auto run = [&](std::vector<std::uint32_t> totals, std::uint64_t want) {
    configuration root;
    root.set(net.find("Ya"), totals[0]);
    root.set(net.find("Yb"), totals[1]);
    root.set(net.find("Yc"), totals[2]);
    const auto g = explore_from(net, root, 100000);
    REQUIRE_FALSE(g.bounded);
    for (const std::uint32_t v : stable_set(g, net.outputs))
      CHECK(g.nodes[v].count(net.outputs[0]) == want);
  };
  run({3, 5, 9}, 3);
  run({0, 7, 7}, 0);
  run({4, 4, 2}, 2);
}

TEST_CASE("fanout duplicates inputs per branch") {
  const crn net = synth_fanout(3);
  configuration c;
  c.set(net.find("X1"), 2);
  c.set(net.find("X2"), 1);
  const auto g = explore_from(net, c, 10000);
  bool saw_terminal = false;
  for (std::uint32_t v = 0; v < g.nodes.size(); ++v) {
    if (!g.edges[v].empty()) continue;
    saw_terminal = true;
    for (int j = 0; j < 3; ++j) {
      CHECK(g.nodes[v].count(net.find("X1.b" + std::to_string(j))) == 2);
      CHECK(g.nodes[v].count(net.find("X2.b" + std::to_string(j))) == 1);
    }
  }
  CHECK(saw_terminal);

  const crn rename = synth_fanout(1);
  REQUIRE(rename.reactions.size() == 2);
  CHECK(reaction_str(rename, rename.reactions[0]) == "X1 -> X1.b0");
}

TEST_CASE("synthesize: single-piece grid-affine is the bare core") {
  const auto rep = synthesize(load_fixture("fix_a.json"));
  CHECK(rep.net.reactions.size() == 3);
  CHECK(rep.fissures.empty());
  verify_box(rep.net, load_fixture("fix_a.json"), {4, 4});
}

TEST_CASE("synthesize: parity stitching uses one lockstep machine and a cascade") {
  const auto spec = load_fixture("fix_e.json");
  const auto rep = synthesize(spec);
  CHECK(check_output_oblivious(rep.net).empty());
  CHECK(validate_crn(rep.net).empty());
  const auto fam = rep.reactions_by_family();
  CHECK(fam.at("start") == 1);
  CHECK(fam.at("input_machine") == 18);  // 3x3 classes, two dimensions
  CHECK(fam.at("min_cascade") == 3);
  verify_box(rep.net, spec, {4, 4});
}

TEST_CASE("synthesize: min of two complete fissures") {
  // min(min(n1,n2) + 2, 2*min(n1,n2)): branches cross at min = 2.
  min_of_fissures_spec mf;
  mf.period = 1;
  partial_fissure slow;
  slow.dom = {1, 1, {0, 0}};
  slow.A0 = 2;
  slow.A1 = rational(1);
  slow.A2 = rational(0);
  slow.B0 = 2;
  slow.B1 = rational(0);
  slow.B2 = rational(1);
  slow.k = 1;
  partial_fissure fast = slow;
  fast.A0 = 0;
  fast.B0 = 0;
  fast.A1 = rational(2);
  fast.B2 = rational(2);
  mf.fissures.push_back({{slow}});
  mf.fissures.push_back({{fast}});
  const function_spec spec{mf};
  REQUIRE(validate_spec(spec).empty());

  const auto rep = synthesize(spec);
  CHECK(rep.fissures.size() == 2);
  CHECK(check_output_oblivious(rep.net).empty());
  verify_box(rep.net, spec, {3, 3});
}

TEST_CASE("synthesize rejects invalid specs") {
  auto gap = std::get<grid_affine_spec>(load_fixture("fix_e.json"));
  gap.pieces.pop_back();
  CHECK_THROWS_AS((void)synthesize(function_spec{gap}), error);
}

TEST_CASE("synthesis is deterministic") {
  for (const char* name : {"fix_b.json", "fix_e.json"}) {
    const auto spec = load_fixture(name);
    CHECK(serialize_crn(synthesize(spec).net) == serialize_crn(synthesize(spec).net));
  }
}

TEST_CASE("synth report serialization carries the family counts and tables") {
  const auto rep = synth_partial_fissure(first_fissure(load_fixture("fix_b.json")));
  const std::string json = serialize_synth_report(rep);
  CHECK(json.find("\"z_consuming\"") != std::string::npos);
  CHECK(json.find("\"d_plus\"") != std::string::npos);
  CHECK(json.find("\"modulus\": 3") != std::string::npos);
}
